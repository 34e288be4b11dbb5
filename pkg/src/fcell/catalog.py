"""Built-in example corpus: named links, solid-torus patterns, and trees.

Objects are cached, so admissibility checks on a shared pattern run once per
process.  Names accept both ``bing:2`` and ``bing(2)`` spellings for the
parametrized families.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .links import (
    LinkError,
    LinkPresentation,
    SolidTorusLink,
    core_link,
    iterated_bing,
)
from .trees import FCellTree, Handle, MarkedNode, SurfaceNode
from .words import commutator, conjugate, meridian_alphabet

LINK_NAMES = ("unlink", "hopf", "borromean", "whitehead-longitude-demo")
TORUS_NAMES = ("core", "bing")
TREE_NAMES = ("fig1-cell", "fig2-cell")


@lru_cache(maxsize=None)
def unlink(n: int) -> LinkPresentation:
    if n < 1:
        raise LinkError("unlink needs at least one component")
    return LinkPresentation.from_texts(["1"] * n)


@lru_cache(maxsize=1)
def hopf() -> LinkPresentation:
    return LinkPresentation.from_texts(["m2", "m1"])


@lru_cache(maxsize=1)
def borromean() -> LinkPresentation:
    """Each longitude is the commutator of the other two meridians."""
    ab = meridian_alphabet(3)
    return LinkPresentation(
        [
            commutator(ab.gen("m2"), ab.gen("m3")),
            commutator(ab.gen("m3"), ab.gen("m1")),
            commutator(ab.gen("m1"), ab.gen("m2")),
        ]
    )


@lru_cache(maxsize=1)
def whitehead_longitude_demo() -> LinkPresentation:
    """Homotopically trivial two-component link with nontrivial longitudes.

    Each longitude is the commutator of the other meridian with a conjugate
    of itself, so all non-repeating coefficients vanish while the reduced
    expansion still shows the repeated-variable structure.
    """
    ab = meridian_alphabet(2)
    w1 = commutator(ab.gen("m2"), conjugate(ab.gen("m2"), ab.gen("m1")))
    w2 = commutator(ab.gen("m1"), conjugate(ab.gen("m1"), ab.gen("m2")))
    return LinkPresentation([w1, w2])


@lru_cache(maxsize=None)
def bing(depth: int) -> SolidTorusLink:
    """Iterated doubling of the core; depth 0 is the core itself."""
    return iterated_bing(depth)


def _handles(*vars_: str) -> tuple[Handle, ...]:
    return tuple(Handle(v) for v in vars_)


@lru_cache(maxsize=1)
def fig1_cell() -> FCellTree:
    """Height 1: pair of pants with a doubled core on each cuff."""
    pattern = bing(1)
    surface = SurfaceNode(
        (
            MarkedNode(pattern, _handles("x1", "x2")),
            MarkedNode(pattern, _handles("x3", "x4")),
        )
    )
    return FCellTree(surface)


@lru_cache(maxsize=1)
def fig2_cell() -> FCellTree:
    """Height 2: a doubled core whose first component carries the height-1
    cell of fig1 and whose second is a bare handle."""
    pattern = bing(1)
    inner = SurfaceNode(
        (
            MarkedNode(pattern, _handles("x1", "x2")),
            MarkedNode(pattern, _handles("x3", "x4")),
        )
    )
    top = MarkedNode(pattern, (inner, Handle("x5")))
    return FCellTree(SurfaceNode((top,)))


@lru_cache(maxsize=1)
def single_handle() -> FCellTree:
    """The standard 2-handle: root, one surface, one handle; height 0."""
    return FCellTree(SurfaceNode((Handle("x1"),)))


_PARAM = re.compile(r"^([a-z-]+)[:(](\d+)\)?$")


def builtin(name: str) -> LinkPresentation | SolidTorusLink | FCellTree:
    """Look up a built-in object by name.

    Plain names: hopf, borromean, whitehead-longitude-demo, core, fig1-cell,
    fig2-cell, handle.  Parametrized: unlink(n), bing(depth), also spelled
    unlink:n, bing:depth.
    """
    name = name.strip()
    match = _PARAM.match(name)
    if match:
        family, arg = match.group(1), int(match.group(2))
        if family == "unlink":
            return unlink(arg)
        if family == "bing":
            return bing(arg)
        raise LinkError("unknown parametrized builtin %r" % name)
    table = {
        "hopf": hopf,
        "borromean": borromean,
        "whitehead-longitude-demo": whitehead_longitude_demo,
        "core": core_link,
        "fig1-cell": fig1_cell,
        "fig2-cell": fig2_cell,
        "handle": single_handle,
    }
    if name in table:
        return table[name]()
    raise LinkError("unknown builtin %r" % name)


def builtin_names() -> tuple[str, ...]:
    return (
        "unlink(n)",
        "hopf",
        "borromean",
        "whitehead-longitude-demo",
        "core",
        "bing(depth)",
        "fig1-cell",
        "fig2-cell",
        "handle",
    )
