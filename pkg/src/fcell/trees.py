"""Flexible-cell trees and the graded quotient ring they define.

A tree alternates unmarked body-surface vertices with marked vertices that
carry an admissible solid-torus link; leaves are handles, one series variable
each.  The implicit root is unmarked with a single surface child.  A marked
vertex's ordered children realize the link's components in preferred order.

The tree grades monomials over the leaf variables: a monomial survives in the
quotient ring iff it has no repeated variable and every pair of its variables
meets first at a marked vertex.  On top of that sit, per vertex, the
all-embeddings basis (one branch kept at every unmarked vertex, children of
marked vertices read in every order), the fixed-embedding basis (stored order
only), and the membership test for series of the shape 1 + basis + terms
scattering a basis monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional, Sequence, Union

from .links import SolidTorusLink, core_link, is_admissible, wedge_mu
from .series import TruncatedSeries
from .words import Alphabet

Monomial = tuple[str, ...]


class TreeError(ValueError):
    """Raised for malformed trees or queries against missing leaves."""


@dataclass(frozen=True)
class Handle:
    """A leaf: one handle with its series variable."""

    var: str


@dataclass(frozen=True)
class MarkedNode:
    """An attaching link; children realize its components in preferred order."""

    link: SolidTorusLink
    children: tuple["SurfaceNode | Handle", ...]

    def child_for_component(self, j: int) -> "SurfaceNode | Handle":
        position = self.link.preferred_order.index(j)
        return self.children[position]


@dataclass(frozen=True)
class SurfaceNode:
    """A body surface; each child is one branch (a marked vertex or a handle)."""

    children: tuple[Union[MarkedNode, Handle], ...]


Node = Union[Handle, MarkedNode, SurfaceNode]


class FCellTree:
    """A validated tree.  Invalid data is unrepresentable downstream."""

    def __init__(self, root_child: SurfaceNode):
        if not isinstance(root_child, SurfaceNode):
            raise TreeError("the root's single child must be a surface vertex")
        self.root_child = root_child
        self._parents: dict[int, Optional[Node]] = {}
        self._leaves: list[Handle] = []
        self._validate(root_child, None)
        vars_seen = [h.var for h in self._leaves]
        if len(set(vars_seen)) != len(vars_seen):
            raise TreeError("leaf variables must be distinct: %r" % (vars_seen,))
        self.leaf_vars: tuple[str, ...] = tuple(vars_seen)
        self._var_index = {v: i for i, v in enumerate(self.leaf_vars)}
        self._pair_marked = self._pairwise_marked()

    def _validate(self, node: Node, parent: Optional[Node]) -> None:
        self._parents[id(node)] = parent
        if isinstance(node, Handle):
            self._leaves.append(node)
            return
        if isinstance(node, SurfaceNode):
            if not node.children:
                raise TreeError("surface vertex with no branches")
            for child in node.children:
                if not isinstance(child, (MarkedNode, Handle)):
                    raise TreeError("surface children must be marked vertices or handles")
                self._validate(child, node)
            return
        if isinstance(node, MarkedNode):
            if len(node.children) != node.link.n:
                raise TreeError(
                    "marked vertex has %d children for a %d-component link"
                    % (len(node.children), node.link.n)
                )
            report = is_admissible(node.link)
            if not report:
                raise TreeError("marked vertex carries an inadmissible link: %s" % report.detail)
            wedge_mu(node.link)
            for child in node.children:
                if not isinstance(child, (SurfaceNode, Handle)):
                    raise TreeError("marked children must be surface vertices or handles")
                self._validate(child, node)
            return
        raise TreeError("unknown node type %r" % (node,))

    def __eq__(self, other) -> bool:
        return isinstance(other, FCellTree) and self.root_child == other.root_child

    __hash__ = None

    def __repr__(self) -> str:
        return "FCellTree(leaves=%s)" % ",".join(self.leaf_vars)

    # -- structure queries -----------------------------------------------------

    def leaves(self) -> tuple[Handle, ...]:
        return tuple(self._leaves)

    def handle_alphabet(self) -> Alphabet:
        """Handle meridians m1..mK, positionally matching leaf_vars."""
        return Alphabet("m%d" % (i + 1) for i in range(len(self.leaf_vars)))

    def meridian_to_var(self) -> dict[str, str]:
        return {
            "m%d" % (i + 1): v for i, v in enumerate(self.leaf_vars)
        }

    def _leaf(self, var: str) -> Handle:
        for h in self._leaves:
            if h.var == var:
                return h
        raise TreeError("no handle with variable %r" % var)

    def _path(self, node: Node) -> list[Node]:
        path = [node]
        while True:
            parent = self._parents[id(path[-1])]
            if parent is None:
                break
            path.append(parent)
        path.reverse()
        return path

    def _pairwise_marked(self) -> dict[tuple[int, int], bool]:
        table = {}
        for i in range(len(self.leaf_vars)):
            for j in range(i + 1, len(self.leaf_vars)):
                node, marked = self.first_common_ancestor(
                    self.leaf_vars[i], self.leaf_vars[j]
                )
                table[(i, j)] = marked
        return table

    def first_common_ancestor(self, var_a: str, var_b: str) -> tuple[Node, bool]:
        """The deepest shared vertex of two handles and whether it is marked."""
        if var_a == var_b:
            raise TreeError("first common ancestor needs two distinct handles")
        path_a = self._path(self._leaf(var_a))
        path_b = self._path(self._leaf(var_b))
        common = None
        for x, y in zip(path_a, path_b):
            if x is y:
                common = x
            else:
                break
        return common, isinstance(common, MarkedNode)


def height(tree: FCellTree) -> int:
    """Maximal number of marked vertices along a root-to-leaf geodesic."""

    def walk(node: Node) -> int:
        if isinstance(node, Handle):
            return 0
        bump = 1 if isinstance(node, MarkedNode) else 0
        return bump + max(walk(c) for c in node.children)

    return walk(tree.root_child)


def first_common_ancestor(tree: FCellTree, var_a: str, var_b: str) -> tuple[Node, bool]:
    return tree.first_common_ancestor(var_a, var_b)


def may_intersect(tree: FCellTree, var_a: str, var_b: str) -> bool:
    """Handles may intersect iff their first common ancestor is unmarked."""
    _, marked = tree.first_common_ancestor(var_a, var_b)
    return not marked


# -- uniformization ----------------------------------------------------------------


def _grow_below_surface(leaf: Handle, stages: int) -> MarkedNode:
    inner: Node = leaf if stages == 1 else _grow_below_marked(leaf, stages - 1)
    return MarkedNode(core_link(), (inner,))


def _grow_below_marked(leaf: Handle, stages: int) -> SurfaceNode:
    return SurfaceNode((_grow_below_surface(leaf, stages),))


def uniformize(tree: FCellTree, target_height: int | None = None) -> FCellTree:
    """Pad every leaf to the same marked depth with single-component stages.

    Insertion uses the core link, whose single tensor factor changes no basis
    monomial; only the marked counts along paths grow.
    """
    h = height(tree)
    if target_height is None:
        target_height = h
    if target_height < h:
        raise TreeError("target height %d below actual height %d" % (target_height, h))

    def rebuild(node: Node, depth: int, under_marked: bool) -> Node:
        if isinstance(node, Handle):
            need = target_height - depth
            if need == 0:
                return node
            if under_marked:
                return _grow_below_marked(node, need)
            return _grow_below_surface(node, need)
        if isinstance(node, SurfaceNode):
            return SurfaceNode(tuple(rebuild(c, depth, False) for c in node.children))
        return MarkedNode(
            node.link, tuple(rebuild(c, depth + 1, True) for c in node.children)
        )

    return FCellTree(rebuild(tree.root_child, 0, False))


# -- the quotient ring --------------------------------------------------------------


def is_admissible_monomial(tree: FCellTree, mono: Sequence[str]) -> bool:
    """No repeated variable, and every pair meets first at a marked vertex."""
    try:
        idx = [tree._var_index[v] for v in mono]
    except KeyError as exc:
        raise TreeError("monomial uses a variable outside the tree: %s" % exc) from None
    if len(set(idx)) != len(idx):
        return False
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            i, j = idx[a], idx[b]
            if not tree._pair_marked[(i, j) if i < j else (j, i)]:
                return False
    return True


def rc_projector(tree: FCellTree):
    """A reusable projection onto the tree's quotient ring.

    The returned callable filters a TruncatedSeries over the tree's leaf
    variables; it is a ring quotient map, so it may be applied after every
    multiplication step without changing the projected result.
    """
    pair_ok = tree._pair_marked

    def keep(mono: tuple[int, ...]) -> bool:
        if len(set(mono)) != len(mono):
            return False
        for a in range(len(mono)):
            for b in range(a + 1, len(mono)):
                i, j = mono[a], mono[b]
                if not pair_ok[(i, j) if i < j else (j, i)]:
                    return False
        return True

    def project(s: TruncatedSeries) -> TruncatedSeries:
        if s.variables != tree.leaf_vars:
            raise TreeError(
                "series variables %r do not match tree leaves %r"
                % (s.variables, tree.leaf_vars)
            )
        return s.filter(keep)

    return project


def rc_project(s: TruncatedSeries, tree: FCellTree) -> TruncatedSeries:
    """Drop every monomial that dies in the tree's quotient ring."""
    return rc_projector(tree)(s)


# -- subspace bases -----------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceBasis:
    vertex: Node
    kind: str  # "rtilde" or "q"
    monomials: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)


def _sort_key(tree: FCellTree):
    index = tree._var_index
    return lambda mono: (len(mono), tuple(index[v] for v in mono))


def _concat_product(groups: Sequence[Iterable[Monomial]]) -> list[Monomial]:
    out: list[Monomial] = [()]
    for group in groups:
        group = list(group)
        out = [m + g for m in out for g in group]
    return out


def _rtilde_monomials(node: Node) -> set[Monomial]:
    if isinstance(node, Handle):
        return {(node.var,)}
    if isinstance(node, SurfaceNode):
        acc: set[Monomial] = set()
        for child in node.children:
            acc |= _rtilde_monomials(child)
        return acc
    acc = set()
    child_sets = [sorted(_rtilde_monomials(c)) for c in node.children]
    for order in permutations(range(len(child_sets))):
        acc.update(_concat_product([child_sets[i] for i in order]))
    return acc


def _q_monomials(node: Node) -> list[Monomial]:
    if isinstance(node, Handle):
        return [(node.var,)]
    if isinstance(node, SurfaceNode):
        out: list[Monomial] = []
        for child in node.children:
            out.extend(_q_monomials(child))
        return out
    return _concat_product([_q_monomials(c) for c in node.children])


def rtilde_basis(tree: FCellTree, vertex: Node | None = None) -> SubspaceBasis:
    """All-embeddings basis: one branch per unmarked vertex, children of
    marked vertices read in every order; deduplicated, length-lex sorted."""
    if vertex is None:
        vertex = tree.root_child
    monos = sorted(_rtilde_monomials(vertex), key=_sort_key(tree))
    return SubspaceBasis(vertex, "rtilde", tuple(monos))


def q_basis(tree: FCellTree, vertex: Node | None = None) -> SubspaceBasis:
    """Fixed-embedding basis: only the stored child order is read."""
    if vertex is None:
        vertex = tree.root_child
    monos = sorted(set(_q_monomials(vertex)), key=_sort_key(tree))
    return SubspaceBasis(vertex, "q", tuple(monos))


# -- membership and the two projections ----------------------------------------------


class MembershipError(ValueError):
    """A series fed to p1 is not of the 1 + basis + higher-order shape."""


@dataclass(frozen=True)
class MembershipReport:
    ok: bool
    offending: Optional[Monomial]

    def __bool__(self) -> bool:
        return self.ok


def _scattered_subsequence(needle: Monomial, haystack: Monomial) -> bool:
    it = iter(haystack)
    return all(x in it for x in needle)


def _check_vars(s: TruncatedSeries, tree: FCellTree) -> None:
    if s.variables != tree.leaf_vars:
        raise TreeError(
            "series variables %r do not match tree leaves %r"
            % (s.variables, tree.leaf_vars)
        )


def s_membership(
    s: TruncatedSeries, tree: FCellTree, vertex: Node | None = None
) -> MembershipReport:
    """Is s equal to 1 plus basis monomials plus higher-order terms?

    Higher-order terms must strictly contain some basis monomial of the
    vertex as a possibly scattered subsequence.  The first failing term (in
    length-lex order) is reported.
    """
    _check_vars(s, tree)
    basis = set(rtilde_basis(tree, vertex).monomials)
    if s.constant_term != 1:
        return MembershipReport(False, ())
    for mono in s.monomials():
        if not mono or mono in basis:
            continue
        if any(len(b) < len(mono) and _scattered_subsequence(b, mono) for b in basis):
            continue
        return MembershipReport(False, mono)
    return MembershipReport(True, None)


def p1(
    s: TruncatedSeries, tree: FCellTree, vertex: Node | None = None
) -> TruncatedSeries:
    """Quotient by higher-order terms: keep 1 and the basis monomials.

    Contract: the input must pass s_membership for the same vertex.
    """
    report = s_membership(s, tree, vertex)
    if not report:
        raise MembershipError(
            "series is not 1 + basis + higher-order terms; offending term %s"
            % ".".join(report.offending or ("1",))
        )
    basis = set(rtilde_basis(tree, vertex).monomials)
    names = tree.leaf_vars

    def keep(mono: tuple[int, ...]) -> bool:
        return mono == () or tuple(names[i] for i in mono) in basis

    return s.filter(keep)


def p2(
    s: TruncatedSeries, tree: FCellTree, vertex: Node | None = None
) -> TruncatedSeries:
    """Restrict further to the fixed-embedding basis monomials."""
    _check_vars(s, tree)
    basis = set(q_basis(tree, vertex).monomials)
    names = tree.leaf_vars

    def keep(mono: tuple[int, ...]) -> bool:
        return mono == () or tuple(names[i] for i in mono) in basis

    return s.filter(keep)


def max_branch_length(tree: FCellTree) -> int:
    """Length of the longest fixed-embedding basis monomial at the root."""
    return max(len(m) for m in q_basis(tree).monomials)
