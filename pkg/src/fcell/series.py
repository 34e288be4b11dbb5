"""Degree-truncated noncommutative power series over the integers.

A TruncatedSeries is a sparse integer polynomial in noncommuting variables,
holding only monomials of degree <= q; products of monomials that would
exceed q are discarded.  Coefficients are Python ints, so iterated
commutator coefficients never overflow.

The Magnus expansion sends a free-group generator g to 1 + x_g and g^-1 to
the truncated geometric series 1 - x_g + x_g^2 - ...  It is a homomorphism
into the truncated ring.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

from .words import Word

Monomial = tuple[str, ...]


class SeriesError(ValueError):
    """Raised on alphabet/degree-bound mismatches or bad monomials."""


class TruncatedSeries:
    """Sparse series: dict from index tuples to nonzero integers.

    Internally monomials are tuples of variable indices; the public surface
    (coefficient, monomials, to_text) speaks variable names.
    """

    __slots__ = ("variables", "q", "terms", "_index")

    def __init__(
        self,
        variables: Sequence[str],
        q: int,
        terms: Mapping[tuple[int, ...], int] | None = None,
    ):
        if q < 1:
            raise SeriesError("degree bound must be >= 1, got %r" % q)
        self.variables = tuple(variables)
        self._index = {name: i for i, name in enumerate(self.variables)}
        if len(self._index) != len(self.variables):
            raise SeriesError("duplicate variable names: %r" % (self.variables,))
        self.q = q
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) > q:
                    raise SeriesError("monomial of degree %d exceeds bound %d" % (len(mono), q))
                if coeff != 0:
                    clean[tuple(mono)] = coeff
        self.terms = clean

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str], q: int) -> "TruncatedSeries":
        return cls(variables, q)

    @classmethod
    def one(cls, variables: Sequence[str], q: int) -> "TruncatedSeries":
        return cls(variables, q, {(): 1})

    @classmethod
    def variable(cls, variables: Sequence[str], q: int, name: str) -> "TruncatedSeries":
        s = cls(variables, q)
        s.terms[(s._index_of(name),)] = 1
        return s

    def _index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SeriesError("unknown variable %r" % name) from None

    def _mono_indices(self, mono: Sequence[str]) -> tuple[int, ...]:
        return tuple(self._index_of(v) for v in mono)

    def _names(self, mono: tuple[int, ...]) -> Monomial:
        return tuple(self.variables[i] for i in mono)

    # -- ring structure --------------------------------------------------------

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if self.variables != other.variables:
            raise SeriesError(
                "variable set mismatch: %r vs %r" % (self.variables, other.variables)
            )
        if self.q != other.q:
            raise SeriesError("degree bound mismatch: %d vs %d" % (self.q, other.q))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.variables == other.variables
            and self.q == other.q
            and self.terms == other.terms
        )

    __hash__ = None

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = out.get(mono, 0) + coeff
            if c == 0:
                out.pop(mono, None)
            else:
                out[mono] = c
        return self._wrap(out)

    def __neg__(self) -> "TruncatedSeries":
        return self._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, int):
            if other == 0:
                return self._wrap({})
            return self._wrap({m: c * other for m, c in self.terms.items()})
        self._check_compatible(other)
        q = self.q
        by_degree: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(q + 1)]
        for mono, coeff in other.terms.items():
            by_degree[len(mono)].append((mono, coeff))
        out: dict[tuple[int, ...], int] = {}
        for mono_a, ca in self.terms.items():
            room = q - len(mono_a)
            for d in range(room + 1):
                for mono_b, cb in by_degree[d]:
                    mono = mono_a + mono_b
                    c = out.get(mono, 0) + ca * cb
                    if c == 0:
                        del out[mono]
                    else:
                        out[mono] = c
        return self._wrap(out)

    def __rmul__(self, other) -> "TruncatedSeries":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def _wrap(self, terms: dict[tuple[int, ...], int]) -> "TruncatedSeries":
        s = TruncatedSeries.__new__(TruncatedSeries)
        s.variables = self.variables
        s._index = self._index
        s.q = self.q
        s.terms = terms
        return s

    # -- queries ---------------------------------------------------------------

    def coefficient(self, mono: Sequence[str]) -> int:
        """Stored coefficient of a monomial (given by variable names), or 0."""
        if len(mono) > self.q:
            raise SeriesError("monomial of degree %d exceeds bound %d" % (len(mono), self.q))
        return self.terms.get(self._mono_indices(mono), 0)

    @property
    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def max_degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def degree_part(self, d: int) -> dict[Monomial, int]:
        return {self._names(m): c for m, c in self.terms.items() if len(m) == d}

    def monomials(self) -> list[Monomial]:
        """Monomials with nonzero coefficient, in length-lex order."""
        return [self._names(m) for m in sorted(self.terms, key=lambda m: (len(m), m))]

    def items(self) -> list[tuple[Monomial, int]]:
        return [(self._names(m), self.terms[m]) for m in sorted(self.terms, key=lambda m: (len(m), m))]

    def filter(self, keep: Callable[[tuple[int, ...]], bool]) -> "TruncatedSeries":
        return self._wrap({m: c for m, c in self.terms.items() if keep(m)})

    def to_text(self) -> str:
        """Canonical rendering: terms in length-lex order joined by ' + '."""
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            coeff = self.terms[mono]
            if mono == ():
                parts.append(str(coeff))
            else:
                parts.append("%d * %s" % (coeff, ".".join(self._names(mono))))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return "TruncatedSeries(q=%d, %s)" % (self.q, self.to_text())


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def coefficient(s: TruncatedSeries, mono: Sequence[str]) -> int:
    return s.coefficient(mono)


def default_degree(n_variables: int) -> int:
    """Default truncation: one beyond the variable count (nilpotency bound)."""
    return n_variables + 1


def magnus_expand(
    w: Word,
    q: int | None = None,
    variables: Mapping[str, str] | None = None,
    postprocess: Callable[[TruncatedSeries], TruncatedSeries] | None = None,
) -> TruncatedSeries:
    """Magnus expansion of a word, truncated at degree q.

    Each generator gets one series variable; by default the variable is named
    after the generator, and `variables` may rename (generator -> variable).
    `postprocess`, when given, is applied after every letter multiplication;
    passing a quotient-ring projection keeps intermediate series small without
    changing the projected result.
    """
    names = w.alphabet.names
    if variables is not None:
        var_names = tuple(variables[g] for g in names)
    else:
        var_names = names
    if q is None:
        q = default_degree(len(var_names))
    if q < 1:
        raise SeriesError("degree bound must be >= 1, got %r" % q)
    out = TruncatedSeries.one(var_names, q)
    pos_cache: dict[int, TruncatedSeries] = {}
    neg_cache: dict[int, TruncatedSeries] = {}
    for idx, sign in w.letters:
        cache = pos_cache if sign == 1 else neg_cache
        letter = cache.get(idx)
        if letter is None:
            terms: dict[tuple[int, ...], int] = {(): 1}
            if sign == 1:
                terms[(idx,)] = 1
            else:
                coeff = 1
                for d in range(1, q + 1):
                    coeff = -coeff
                    terms[(idx,) * d] = coeff
            letter = TruncatedSeries(var_names, q, terms)
            cache[idx] = letter
        out = out * letter
        if postprocess is not None:
            out = postprocess(out)
    return out


def abelianization(w: Word) -> dict[str, int]:
    """Exponent vector of a word; equals the degree-1 part of its expansion."""
    return {name: w.exponent_sum(name) for name in w.alphabet.names}


def drop_repeating(s: TruncatedSeries) -> TruncatedSeries:
    """Kill every monomial in which some variable occurs at least twice."""
    return s.filter(lambda mono: len(set(mono)) == len(mono))
