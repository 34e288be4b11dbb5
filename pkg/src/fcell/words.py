"""Reduced words in finitely generated free groups.

An Alphabet is an ordered set of generator names; a Word is a freely reduced
sequence of (generator, +-1) letters over one alphabet.  Exponents are stored
letter by letter (no run-length packing).  All values are immutable and safe
to share.

Text grammar, used by every file format in the package: words are
whitespace-separated tokens, each ``name`` or ``name^-1``; ``1`` or the empty
string denotes the identity.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


class WordError(ValueError):
    """Raised on alphabet mismatches, unknown generators, or bad word text."""


_FORBIDDEN = set(" \t\n^.")


class Alphabet:
    """An ordered set of unique generator names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise WordError("duplicate generator names: %r" % (names,))
        for name in names:
            if not name or name == "1" or any(c in _FORBIDDEN for c in name):
                raise WordError("invalid generator name: %r" % name)
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return "Alphabet(%s)" % ", ".join(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordError("unknown generator name: %r" % name) from None

    def identity(self) -> "Word":
        return Word(self, ())

    def gen(self, name: str, sign: int = 1) -> "Word":
        """Single-letter word."""
        return Word(self, ((self.index(name), sign),))

    def word(self, text: str) -> "Word":
        """Parse the textual word grammar."""
        text = text.strip()
        if text in ("", "1"):
            return self.identity()
        letters = []
        for token in text.split():
            if token.endswith("^-1"):
                name, sign = token[:-3], -1
            elif "^" in token:
                raise WordError("bad exponent in token %r (only ^-1 allowed)" % token)
            else:
                name, sign = token, 1
            letters.append((self.index(name), sign))
        return Word(self, letters)


class Word:
    """A freely reduced word.  Construction reduces its letter sequence."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: Alphabet, letters: Iterable[tuple[int, int]]):
        stack: list[tuple[int, int]] = []
        for idx, sign in letters:
            if sign not in (1, -1):
                raise WordError("letter exponent must be +1 or -1, got %r" % sign)
            if not 0 <= idx < len(alphabet):
                raise WordError("letter index %d outside alphabet" % idx)
            if stack and stack[-1][0] == idx and stack[-1][1] == -sign:
                stack.pop()
            else:
                stack.append((idx, sign))
        self.alphabet = alphabet
        self.letters = tuple(stack)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self.alphabet == other.alphabet
            and self.letters == other.letters
        )

    __hash__ = None

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __repr__(self) -> str:
        return "Word(%s)" % self.to_text()

    def __mul__(self, other: "Word") -> "Word":
        _check_same_alphabet(self, other)
        return Word(self.alphabet, self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.alphabet.identity()
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "Word":
        return Word(
            self.alphabet, tuple((i, -s) for i, s in reversed(self.letters))
        )

    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sum(self, name: str) -> int:
        """Net exponent of one generator (the abelianization coordinate)."""
        idx = self.alphabet.index(name)
        return sum(s for i, s in self.letters if i == idx)

    def letter_names(self) -> tuple[tuple[str, int], ...]:
        return tuple((self.alphabet.names[i], s) for i, s in self.letters)

    def to_text(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for idx, sign in self.letters:
            name = self.alphabet.names[idx]
            parts.append(name if sign == 1 else name + "^-1")
        return " ".join(parts)


def _check_same_alphabet(a: Word, b: Word) -> None:
    if a.alphabet != b.alphabet:
        raise WordError(
            "alphabet mismatch: %r vs %r" % (a.alphabet, b.alphabet)
        )


def reduce(alphabet: Alphabet, letters: Iterable[tuple[int, int]]) -> Word:
    """Freely reduce a raw letter sequence.  Idempotent."""
    return Word(alphabet, letters)


def multiply(a: Word, b: Word) -> Word:
    return a * b


def inverse(a: Word) -> Word:
    return a.inverse()


def conjugate(a: Word, h: Word) -> Word:
    """h^-1 a h."""
    _check_same_alphabet(a, h)
    return h.inverse() * a * h


def commutator(a: Word, b: Word) -> Word:
    """a^-1 b^-1 a b."""
    _check_same_alphabet(a, b)
    return a.inverse() * b.inverse() * a * b


def substitute(w: Word, images: Mapping[str, Word]) -> Word:
    """Apply the homomorphism sending each generator to its image word.

    Every generator occurring in w must have an image; all images must share
    one target alphabet.
    """
    target: Alphabet | None = None
    for img in images.values():
        if target is None:
            target = img.alphabet
        elif img.alphabet != target:
            raise WordError("substitution images use mixed alphabets")
    letters: list[tuple[int, int]] = []
    for idx, sign in w.letters:
        name = w.alphabet.names[idx]
        if name not in images:
            raise WordError("no image for generator %r" % name)
        img = images[name]
        if sign == 1:
            letters.extend(img.letters)
        else:
            letters.extend((i, -s) for i, s in reversed(img.letters))
    if target is None:
        target = w.alphabet
    return Word(target, letters)


def identity_map(alphabet: Alphabet) -> dict[str, Word]:
    return {name: alphabet.gen(name) for name in alphabet.names}


def meridian_alphabet(n: int) -> Alphabet:
    """The standard link alphabet m1..mn."""
    return Alphabet("m%d" % (i + 1) for i in range(n))
