"""Symbolic link-homotopy toolkit.

Reduced free-group words, truncated Magnus expansions, Milnor mu-bar
invariants, solid-torus admissibility, flexible-cell trees with their graded
quotient ring, and the integer obstruction certificate for bounding disjoint
flexible cells.
"""

from .words import (
    Alphabet,
    Word,
    WordError,
    commutator,
    conjugate,
    inverse,
    meridian_alphabet,
    multiply,
    reduce,
    substitute,
)
from .series import (
    SeriesError,
    TruncatedSeries,
    coefficient,
    magnus_expand,
    series_add,
    series_mul,
)

__version__ = "0.1.0"
