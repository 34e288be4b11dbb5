"""Seeded random generators for property tests and the self-check corpus."""

from __future__ import annotations

import random
from typing import Optional

from .catalog import bing
from .links import LinkPresentation, core_link
from .trees import FCellTree, Handle, MarkedNode, Node, SurfaceNode
from .words import Word, meridian_alphabet, reduce


def random_word(rng: random.Random, alphabet, max_len: int = 6) -> Word:
    letters = [
        (rng.randrange(len(alphabet)), rng.choice((1, -1)))
        for _ in range(rng.randint(0, max_len))
    ]
    return reduce(alphabet, letters)


def random_link(rng: random.Random, n: int, max_len: int = 6) -> LinkPresentation:
    """Random presentation with untwisted longitudes."""
    ab = meridian_alphabet(n)
    longitudes = []
    for j in range(1, n + 1):
        w = random_word(rng, ab, max_len)
        e = w.exponent_sum("m%d" % j)
        w = w * ab.gen("m%d" % j, -1 if e > 0 else 1) ** abs(e)
        longitudes.append(w)
    return LinkPresentation(longitudes)


def random_tree(
    rng: random.Random,
    max_leaves: int = 12,
    max_height: int = 2,
    min_bottom_children: int = 1,
) -> FCellTree:
    """A valid tree built from the cached core and doubled-core patterns."""
    counter = [0]

    def new_handle() -> Handle:
        counter[0] += 1
        return Handle("x%d" % counter[0])

    def component_subtree(budget: int, height_left: int) -> tuple[Node, int]:
        # a child of a marked vertex: handle, or a deeper surface stage
        if height_left >= 1 and budget >= 2 and rng.random() < 0.45:
            node, used = gen_surface(budget, height_left, 1)
            return node, used
        return new_handle(), 1

    def gen_branch(budget: int, height_left: int) -> tuple[Node, int]:
        # a child of a surface vertex: handle or marked vertex
        if height_left == 0 or budget < 1 or rng.random() < 0.25:
            return new_handle(), 1
        choices = [core_link()]
        if budget >= 2:
            choices.append(bing(1))
        if budget >= 4 and rng.random() < 0.15:
            choices.append(bing(2))
        link = rng.choice(choices)
        children = []
        used = 0
        remaining = budget
        for i in range(link.n):
            slots_after = link.n - i - 1
            child_budget = max(1, remaining - slots_after)
            child, child_used = component_subtree(child_budget, height_left - 1)
            children.append(child)
            used += child_used
            remaining -= child_used
        return MarkedNode(link, tuple(children)), used

    def gen_surface(budget: int, height_left: int, min_children: int) -> tuple[SurfaceNode, int]:
        width = rng.randint(min_children, max(min_children, min(3, budget)))
        children = []
        used = 0
        remaining = budget
        for i in range(width):
            slots_after = width - i - 1
            child_budget = max(1, remaining - slots_after)
            child, child_used = gen_branch(child_budget, height_left)
            children.append(child)
            used += child_used
            remaining -= child_used
        return SurfaceNode(tuple(children)), used

    surface, _ = gen_surface(max(max_leaves, 1), max_height, min_bottom_children)
    return FCellTree(surface)
