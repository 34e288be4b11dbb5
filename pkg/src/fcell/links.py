"""Milnor invariants of links given by longitude words.

A link with n components is presented by one word per component: the
untwisted longitude written in the meridian generators m1..mn.  From these
the Magnus coefficients mu(I, j), their gcd indeterminacy Delta(I), and the
residues mu-bar are computed, along with the homotopy-triviality and
almost-triviality tests they support.

Links in the solid torus carry three pieces of data: the word of the wedge
curve (the meridian disk boundary) in generators z1..zn and y, and two
companion presentations in the sphere -- the link together with the wedge
curve, and together with both parallel wedge curves.  These drive the
admissibility test, the leading wedge coefficient, Bing doubling, and link
composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import gcd
from typing import Iterable, Optional, Sequence

from .series import TruncatedSeries, magnus_expand, drop_repeating
from .words import (
    Alphabet,
    Word,
    WordError,
    commutator,
    meridian_alphabet,
    substitute,
)


class LinkError(ValueError):
    """Raised on inconsistent presentation data or out-of-range queries."""


@dataclass(frozen=True)
class MuResidue:
    """An integer residue; modulus 0 means the value lives in the integers."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 0:
            raise LinkError("modulus must be nonnegative")
        if self.modulus > 0 and not 0 <= self.value < self.modulus:
            raise LinkError("value %d not normalized mod %d" % (self.value, self.modulus))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return "%d (mod %d)" % (self.value, self.modulus)


@dataclass(frozen=True)
class TrivialityReport:
    trivial: bool
    witness: Optional[tuple[int, ...]]  # full multiindex, longitude index last

    def __bool__(self) -> bool:
        return self.trivial


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    failed_clause: Optional[str]
    detail: str

    def __bool__(self) -> bool:
        return self.admissible


@dataclass(frozen=True)
class Presentation:
    """Nilpotent-quotient presentation: commutator relators plus a class bound.

    The family of weight-q commutators is recorded symbolically in `q`, not
    enumerated.
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    q: int


class LinkPresentation:
    """n longitude words over the meridian alphabet m1..mn."""

    def __init__(self, longitudes: Sequence[Word]):
        n = len(longitudes)
        if n < 1:
            raise LinkError("a link needs at least one component")
        alphabet = meridian_alphabet(n)
        for j, w in enumerate(longitudes, start=1):
            if w.alphabet != alphabet:
                raise LinkError(
                    "longitude %d is over %r, expected %r" % (j, w.alphabet, alphabet)
                )
            if w.exponent_sum("m%d" % j) != 0:
                raise LinkError(
                    "longitude %d has nonzero exponent of its own meridian "
                    "(longitudes must be untwisted)" % j
                )
        self.n = n
        self.alphabet = alphabet
        self.longitudes = tuple(longitudes)
        self._series_cache: dict[tuple[int, int], TruncatedSeries] = {}

    @classmethod
    def from_texts(cls, texts: Sequence[str]) -> "LinkPresentation":
        alphabet = meridian_alphabet(len(texts))
        return cls([alphabet.word(t) for t in texts])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinkPresentation)
            and self.n == other.n
            and self.longitudes == other.longitudes
        )

    __hash__ = None

    def __repr__(self) -> str:
        return "LinkPresentation(%s)" % ", ".join(w.to_text() for w in self.longitudes)

    def longitude(self, j: int) -> Word:
        """1-based component access."""
        if not 1 <= j <= self.n:
            raise LinkError("component index %d outside 1..%d" % (j, self.n))
        return self.longitudes[j - 1]

    def expansion(self, j: int, q: int) -> TruncatedSeries:
        """Magnus expansion of longitude j at degree q, cached."""
        key = (j, q)
        s = self._series_cache.get(key)
        if s is None:
            s = magnus_expand(self.longitude(j), q)
            self._series_cache[key] = s
        return s

    def delete_components(self, remove: Iterable[int]) -> "LinkPresentation":
        """Sublink after deleting components: erase their meridians, renumber.

        Deletion substitutes the removed meridians by the identity in the
        remaining longitude words (the image in the sublink complement's
        group); this is a modeling assumption on the input data.
        """
        remove = set(remove)
        keep = [j for j in range(1, self.n + 1) if j not in remove]
        if not keep:
            raise LinkError("cannot delete every component")
        target = meridian_alphabet(len(keep))
        images = {}
        for j in range(1, self.n + 1):
            if j in remove:
                images["m%d" % j] = target.identity()
            else:
                images["m%d" % j] = target.gen("m%d" % (keep.index(j) + 1))
        return LinkPresentation([substitute(self.longitudes[j - 1], images) for j in keep])


def _meridian_monomial(index: Sequence[int]) -> tuple[str, ...]:
    return tuple("m%d" % i for i in index)


def mu(link: LinkPresentation, index: Sequence[int], j: int, q: int | None = None) -> int:
    """Coefficient of x_{i1}..x_{ik} in the expansion of longitude j.

    The coefficient of a degree-d monomial does not depend on the truncation
    level as long as it is >= d, so the expansion is computed at exactly that
    degree; an explicit q only bounds what the caller may ask for.
    """
    index = tuple(index)
    if not index:
        raise LinkError("multiindex must be nonempty")
    for i in index:
        if not 1 <= i <= link.n:
            raise LinkError("multiindex entry %d outside 1..%d" % (i, link.n))
    if q is not None and len(index) > q:
        raise LinkError("multiindex degree %d exceeds bound q=%d" % (len(index), q))
    s = link.expansion(j, len(index))
    return s.coefficient(_meridian_monomial(index))


def delta(link: LinkPresentation, full_index: Sequence[int], q: int | None = None) -> int:
    """gcd indeterminacy: mu over all shorter subsequences, cyclically permuted.

    Subsequences arise by cancelling at least one entry of the multiindex and
    cyclically permuting what remains; only lengths 2..len-1 contribute.  The
    gcd over the empty set is 0.
    """
    full_index = tuple(full_index)
    if len(full_index) < 1:
        raise LinkError("multiindex must be nonempty")
    k = len(full_index)
    sequences: set[tuple[int, ...]] = set()
    for mask in range(1, 2**k - 1):
        kept = tuple(full_index[i] for i in range(k) if not (mask >> i) & 1)
        if not 2 <= len(kept) <= k - 1:
            continue
        for r in range(len(kept)):
            sequences.add(kept[r:] + kept[:r])
    value = 0
    for seq in sorted(sequences):
        value = gcd(value, abs(mu(link, seq[:-1], seq[-1], q)))
    return value


def mu_bar(
    link: LinkPresentation, index: Sequence[int], j: int, q: int | None = None
) -> MuResidue:
    """Residue of mu(index, j) modulo the indeterminacy of (index, j)."""
    raw = mu(link, index, j, q)
    modulus = delta(link, tuple(index) + (j,), q)
    if modulus > 0:
        raw %= modulus
    return MuResidue(raw, modulus)


def _nonrepeating_full_indices(n: int) -> Iterable[tuple[int, ...]]:
    """All multiindices with distinct entries, lengths 2..n, in length-lex order."""
    for length in range(2, n + 1):
        for seq in sorted(permutations(range(1, n + 1), length)):
            yield seq


def is_homotopically_trivial(
    link: LinkPresentation, q: int | None = None
) -> TrivialityReport:
    """True iff every mu-bar residue with non-repeating multiindex vanishes.

    Requires q >= n+1 so every non-repeating length is visible; the default
    is exactly n+1.  On failure the witness is the first (length-lex)
    full multiindex with a nonzero residue.
    """
    n = link.n
    if q is None:
        q = n + 1
    if q < n + 1:
        raise LinkError("q=%d too small for %d components (need >= %d)" % (q, n, n + 1))
    for seq in _nonrepeating_full_indices(n):
        if not mu_bar(link, seq[:-1], seq[-1], q).is_zero():
            return TrivialityReport(False, seq)
    return TrivialityReport(True, None)


def is_almost_trivial(link: LinkPresentation, q: int | None = None) -> bool:
    """True iff every sublink with one component deleted is trivial."""
    if link.n == 1:
        return True
    for j in range(1, link.n + 1):
        sub = link.delete_components([j])
        if not is_homotopically_trivial(sub, None if q is None else q - 1):
            return False
    return True


def reduced_magnus(w: Word, q: int | None = None) -> TruncatedSeries:
    """Magnus expansion followed by killing monomials with repeated variables."""
    return magnus_expand(w, q, postprocess=drop_repeating)


# -- links in the solid torus ----------------------------------------------------


def wedge_alphabet(n: int) -> Alphabet:
    """Generators z1..zn for the component meridians plus y for the longitude."""
    return Alphabet(["z%d" % (i + 1) for i in range(n)] + ["y"])


class SolidTorusLink:
    """A link in the solid torus with its companion sphere presentations.

    wedge_word: the wedge curve in z1..zn, y.
    lhat: the link plus the wedge curve (n+1 components, wedge last).
    lplus: the link plus both parallel wedge curves (n+2 components; wedge
    at position n+1, its parallel copy at n+2).
    preferred_order: the component ordering whose leading wedge coefficient
    is checked by wedge_mu.
    """

    def __init__(
        self,
        n: int,
        wedge_word: Word,
        lhat: LinkPresentation,
        lplus: LinkPresentation,
        preferred_order: Sequence[int] | None = None,
    ):
        if n < 1:
            raise LinkError("solid-torus link needs at least one component")
        if wedge_word.alphabet != wedge_alphabet(n):
            raise LinkError("wedge word must be over z1..z%d, y" % n)
        if lhat.n != n + 1:
            raise LinkError("lhat must have %d components, got %d" % (n + 1, lhat.n))
        if lplus.n != n + 2:
            raise LinkError("lplus must have %d components, got %d" % (n + 2, lplus.n))
        if preferred_order is None:
            preferred_order = tuple(range(1, n + 1))
        preferred_order = tuple(preferred_order)
        if sorted(preferred_order) != list(range(1, n + 1)):
            raise LinkError("preferred_order must be a permutation of 1..%d" % n)
        self.n = n
        self.wedge_word = wedge_word
        self.lhat = lhat
        self.lplus = lplus
        self.preferred_order = preferred_order
        self._admissibility: dict[int, AdmissibilityReport] = {}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SolidTorusLink)
            and self.n == other.n
            and self.wedge_word == other.wedge_word
            and self.lhat == other.lhat
            and self.lplus == other.lplus
            and self.preferred_order == other.preferred_order
        )

    __hash__ = None

    def __repr__(self) -> str:
        return "SolidTorusLink(n=%d, wedge=%s)" % (self.n, self.wedge_word.to_text())

    def internal_longitude(self, j: int) -> Word:
        """Longitude of component j inside the solid torus, in z1..zn, y.

        Obtained from the two-wedge presentation by erasing the wedge curve
        and renaming: meridians to z's, the parallel wedge meridian to y.
        """
        if not 1 <= j <= self.n:
            raise LinkError("component index %d outside 1..%d" % (j, self.n))
        target = wedge_alphabet(self.n)
        images = {"m%d" % i: target.gen("z%d" % i) for i in range(1, self.n + 1)}
        images["m%d" % (self.n + 1)] = target.identity()
        images["m%d" % (self.n + 2)] = target.gen("y")
        return substitute(self.lplus.longitude(j), images)


def wedge_mu(torus_link: SolidTorusLink, q: int | None = None) -> int:
    """Leading coefficient of the wedge word in the preferred component order.

    The coefficient of z_{s(1)}..z_{s(n)} in the expansion of the wedge word;
    a zero value means the stored preferred order is invalid and raises.
    """
    n = torus_link.n
    if q is None:
        q = n
    if q < n:
        raise LinkError("q=%d cannot see the degree-%d leading term" % (q, n))
    s = magnus_expand(torus_link.wedge_word, q)
    mono = tuple("z%d" % i for i in torus_link.preferred_order)
    value = s.coefficient(mono)
    if value == 0:
        raise LinkError(
            "wedge word %r has zero coefficient on %s: invalid preferred order"
            % (torus_link.wedge_word.to_text(), ".".join(mono))
        )
    return value


def is_admissible(torus_link: SolidTorusLink, q: int | None = None) -> AdmissibilityReport:
    """Essential and (almost trivial)+, computed from the companion data.

    Clause (a): the link together with its wedge curve is homotopically
    essential.  Clause (b): deleting any single link component from the
    two-wedge presentation leaves a homotopically trivial link.  Results are
    cached per (object, q).
    """
    key = q if q is not None else -1
    cached = torus_link._admissibility.get(key)
    if cached is not None:
        return cached
    report = _admissibility(torus_link, q)
    torus_link._admissibility[key] = report
    return report


def _admissibility(torus_link: SolidTorusLink, q: int | None) -> AdmissibilityReport:
    lhat_q = q if q is not None else torus_link.lhat.n + 1
    if is_homotopically_trivial(torus_link.lhat, lhat_q):
        return AdmissibilityReport(
            False, "essential", "link plus wedge curve is homotopically trivial"
        )
    for i in range(1, torus_link.n + 1):
        sub = torus_link.lplus.delete_components([i])
        sub_q = q if q is not None else sub.n + 1
        report = is_homotopically_trivial(sub, sub_q)
        if not report:
            return AdmissibilityReport(
                False,
                "almost-trivial+:%d" % i,
                "deleting component %d leaves an essential link (witness %s)"
                % (i, ",".join(map(str, report.witness))),
            )
    return AdmissibilityReport(True, None, "essential and (almost trivial)+")


# -- built-in solid-torus templates and doubling ----------------------------------


@lru_cache(maxsize=1)
def core_link() -> SolidTorusLink:
    """The core circle: wedge word z1, companions the Hopf and chain links.

    Cached so admissibility checks on the shared instance run once.
    """
    lhat = LinkPresentation.from_texts(["m2", "m1"])
    lplus = LinkPresentation.from_texts(["m2 m3", "m1", "m1"])
    return SolidTorusLink(1, wedge_alphabet(1).word("z1"), lhat, lplus, (1,))


def bing_double(torus_link: SolidTorusLink) -> SolidTorusLink:
    """Replace every component by a clasped pair; meridians become commutators.

    Old component i becomes the pair (2i-1, 2i).  In every companion word the
    old meridian is replaced by the commutator of the two new meridians; the
    pair's own longitudes are commutators of the sibling meridian with the
    image of the old longitude.  The output is checked against the
    admissibility and nonzero-leading-coefficient postconditions; a failure
    signals a template bug, not bad input.
    """
    n = torus_link.n
    new_n = 2 * n

    wedge_target = wedge_alphabet(new_n)
    wedge_images = {
        "z%d" % i: commutator(wedge_target.gen("z%d" % (2 * i - 1)), wedge_target.gen("z%d" % (2 * i)))
        for i in range(1, n + 1)
    }
    wedge_images["y"] = wedge_target.gen("y")
    new_wedge = substitute(torus_link.wedge_word, wedge_images)

    lplus_target = meridian_alphabet(new_n + 2)
    phi = {
        "m%d" % i: commutator(lplus_target.gen("m%d" % (2 * i - 1)), lplus_target.gen("m%d" % (2 * i)))
        for i in range(1, n + 1)
    }
    phi["m%d" % (n + 1)] = lplus_target.gen("m%d" % (new_n + 1))
    phi["m%d" % (n + 2)] = lplus_target.gen("m%d" % (new_n + 2))

    new_longitudes = []
    for i in range(1, n + 1):
        old_image = substitute(torus_link.lplus.longitude(i), phi)
        a = lplus_target.gen("m%d" % (2 * i - 1))
        b = lplus_target.gen("m%d" % (2 * i))
        new_longitudes.append(commutator(b, old_image))
        new_longitudes.append(commutator(old_image, a))
    new_longitudes.append(substitute(torus_link.lplus.longitude(n + 1), phi))
    new_longitudes.append(substitute(torus_link.lplus.longitude(n + 2), phi))
    new_lplus = LinkPresentation(new_longitudes)
    new_lhat = new_lplus.delete_components([new_n + 2])

    order = []
    for i in torus_link.preferred_order:
        order.extend((2 * i - 1, 2 * i))
    doubled = SolidTorusLink(new_n, new_wedge, new_lhat, new_lplus, tuple(order))

    report = is_admissible(doubled)
    if not report:
        raise LinkError("doubled link failed admissibility (%s)" % report.detail)
    wedge_mu(doubled)
    return doubled


def iterated_bing(depth: int) -> SolidTorusLink:
    """Iterated doubling of the core; depth 0 is the core itself."""
    if depth < 0:
        raise LinkError("depth must be >= 0")
    link = core_link()
    for _ in range(depth):
        link = bing_double(link)
    return link


# -- presentation export and composition ------------------------------------------


def nilpotent_presentation(link: LinkPresentation, q: int) -> Presentation:
    """Generators m1..mn with one meridian-longitude commutator per component
    short of the last; the class-q commutator family stays symbolic."""
    if q < 2:
        raise LinkError("nilpotency class must be >= 2")
    relators = tuple(
        commutator(link.alphabet.gen("m%d" % j), link.longitude(j))
        for j in range(1, link.n)
    )
    return Presentation(link.alphabet.names, relators, q)


def compose(link: LinkPresentation, pattern: SolidTorusLink) -> LinkPresentation:
    """Replace the last component of the link by a solid-torus pattern.

    The result has k+m components (k = all but the last of the link, m = the
    pattern's).  Every occurrence of the last meridian in the surviving
    longitudes becomes the pattern's wedge word in the new meridians; the new
    components' longitudes are the pattern's internal longitudes with y sent
    to the old longitude of the replaced component.  Occurrences of the last
    meridian inside its own longitude are erased first (their net exponent is
    zero for untwisted data).
    """
    k = link.n - 1
    m = pattern.n
    target = meridian_alphabet(k + m)

    keep = {"m%d" % i: target.gen("m%d" % i) for i in range(1, k + 1)}
    y_image = substitute(
        link.longitude(k + 1), {**keep, "m%d" % (k + 1): target.identity()}
    )

    pattern_images = {"z%d" % j: target.gen("m%d" % (k + j)) for j in range(1, m + 1)}
    pattern_images["y"] = y_image
    wedge_image = substitute(pattern.wedge_word, pattern_images)

    surviving = {**keep, "m%d" % (k + 1): wedge_image}
    longitudes = [substitute(link.longitude(i), surviving) for i in range(1, k + 1)]
    for j in range(1, m + 1):
        longitudes.append(substitute(pattern.internal_longitude(j), pattern_images))
    return LinkPresentation(longitudes)
