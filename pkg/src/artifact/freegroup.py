"""Exact word arithmetic in finitely generated free groups.

Words are stored as tuples of nonzero integers: generator ``i`` is the
integer ``i + 1`` and its inverse is ``-(i + 1)``.  In text, generators are
written ``a, b, c, ...`` and their inverses ``A, B, C, ...``; the empty
string is the identity.

Every constructor returns a freely reduced word, so the reduction invariant
can be relied upon everywhere else in the package.

Composition of endomorphisms follows the usual right-to-left convention:
``compose(f, g)(x) == f(g(x))``, i.e. ``g`` is applied first.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "RankMismatch",
    "NotCyclicallyReduced",
    "Word",
    "Endomorphism",
    "parse_word",
    "format_word",
    "concat_reduce",
    "invert",
    "power",
    "is_cyclically_reduced",
    "cyclically_reduce",
    "cyclic_rotations",
    "canonical_rotation",
    "is_conjugate_cyclic",
    "are_conjugate",
    "apply_endo",
    "compose",
    "identity",
    "exponent_vector",
    "letter_count_vector",
    "abelianization",
    "LAMBDA",
    "RHO",
    "IOTA",
    "SIGMA",
    "PSI",
]


class RankMismatch(ValueError):
    """Raised when words or maps of different rank are combined."""


class NotCyclicallyReduced(ValueError):
    """Raised when an operation needs cyclically reduced input."""


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word in the free group of the given rank.

    Parameters
    ----------
    rank : int
        Number of free generators.
    letters : tuple of int
        Signed generator indices (``+/-(i + 1)``).  The tuple is reduced on
        construction.
    """

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError("rank must be positive")
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise ValueError(f"letter {x} out of range for rank {self.rank}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat_reduce(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({self.rank}, {format_word(self)!r})"

    def is_identity(self) -> bool:
        return not self.letters

    def pairs(self) -> list[tuple[int, int]]:
        """Letters as ``(generator_index, sign)`` pairs."""
        return [(abs(x) - 1, 1 if x > 0 else -1) for x in self.letters]


def _letter_char(x: int) -> str:
    c = string.ascii_lowercase[abs(x) - 1]
    return c if x > 0 else c.upper()


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse a word such as ``"abAB"``.

    If ``rank`` is omitted, the smallest rank containing every letter
    (and at least 2) is used.
    """
    letters = []
    for ch in text.strip():
        if ch in "1 ":
            continue
        if ch.islower():
            letters.append(ord(ch) - ord("a") + 1)
        elif ch.isupper():
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise ValueError(f"bad letter {ch!r} in word {text!r}")
    if rank is None:
        rank = max([2] + [abs(x) for x in letters])
    return Word(rank, tuple(letters))


def format_word(w: Word) -> str:
    return "".join(_letter_char(x) for x in w.letters)


def _check_rank(*ws: Word) -> int:
    ranks = {w.rank for w in ws}
    if len(ranks) != 1:
        raise RankMismatch(f"ranks differ: {sorted(ranks)}")
    return ranks.pop()


def concat_reduce(u: Word, v: Word) -> Word:
    """Product ``u * v`` in the free group."""
    return Word(_check_rank(u, v), u.letters + v.letters)


def invert(w: Word) -> Word:
    return Word(w.rank, tuple(-x for x in reversed(w.letters)))


def power(w: Word, k: int) -> Word:
    if k < 0:
        return power(invert(w), -k)
    return Word(w.rank, w.letters * k)


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) < 2 or w.letters[0] != -w.letters[-1]


def cyclically_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1``.

    Returns
    -------
    core, conjugator : Word
        ``core`` is cyclically reduced.
    """
    xs = w.letters
    i, j = 0, len(xs) - 1
    while i < j and xs[i] == -xs[j]:
        i += 1
        j -= 1
    return Word(w.rank, xs[i : j + 1]), Word(w.rank, xs[:i])


def cyclic_rotations(w: Word) -> list[Word]:
    xs = w.letters
    if not xs:
        return [w]
    return [Word(w.rank, xs[k:] + xs[:k]) for k in range(len(xs))]


def _letter_key(x: int) -> tuple[int, int]:
    # a < A < b < B < ...
    return (abs(x), 0 if x > 0 else 1)


def canonical_rotation(w: Word) -> Word:
    """Lexicographically least cyclic rotation of a cyclically reduced word."""
    if not is_cyclically_reduced(w):
        raise NotCyclicallyReduced(str(w))
    return min(cyclic_rotations(w), key=lambda r: [_letter_key(x) for x in r.letters])


def is_conjugate_cyclic(u: Word, v: Word) -> bool:
    """True iff ``v`` is a cyclic rotation of ``u``.

    Both inputs must be cyclically reduced, in which case this decides
    conjugacy in the free group.
    """
    _check_rank(u, v)
    if not (is_cyclically_reduced(u) and is_cyclically_reduced(v)):
        raise NotCyclicallyReduced(f"{u}, {v}")
    if len(u) != len(v):
        return False
    if not u.letters:
        return True
    doubled = u.letters + u.letters
    n = len(u)
    return any(doubled[k : k + n] == v.letters for k in range(n))


def are_conjugate(u: Word, v: Word) -> bool:
    """Conjugacy test for arbitrary reduced words."""
    return is_conjugate_cyclic(cyclically_reduce(u)[0], cyclically_reduce(v)[0])


@dataclass(frozen=True)
class Endomorphism:
    """An endomorphism of a free group given by generator images.

    ``images[i]`` is the image of generator ``i``.  Whether the map is an
    automorphism is computed by :attr:`is_automorphism`, never assumed.
    """

    rank: int
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.rank:
            raise ValueError("need one image per generator")
        for im in self.images:
            if im.rank != self.rank:
                raise RankMismatch("image rank differs from map rank")

    @classmethod
    def from_strings(cls, images: Sequence[str], rank: int | None = None) -> "Endomorphism":
        rank = len(images) if rank is None else rank
        return cls(rank, tuple(parse_word(s, rank) for s in images))

    @classmethod
    def from_json(cls, data: str | dict) -> "Endomorphism":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_strings(data["images"], int(data["rank"]))

    def to_json(self) -> dict:
        return {"rank": self.rank, "images": [format_word(w) for w in self.images]}

    def __call__(self, w: Word) -> Word:
        return apply_endo(self, w)

    def __str__(self) -> str:
        gens = string.ascii_lowercase
        return ", ".join(f"{gens[i]}->{format_word(w) or '1'}" for i, w in enumerate(self.images))

    @property
    def is_automorphism(self) -> bool:
        from .endo import stallings_surjectivity

        # surjective endomorphisms of free groups of finite rank are injective
        return stallings_surjectivity(self)


def apply_endo(theta: Endomorphism, w: Word) -> Word:
    """Image of ``w``: substitute each letter and reduce."""
    if theta.rank != w.rank:
        raise RankMismatch("word and map have different rank")
    out: list[int] = []
    for x in w.letters:
        im = theta.images[abs(x) - 1].letters
        out.extend(im if x > 0 else (-y for y in reversed(im)))
    return Word(theta.rank, _reduce(out))


def compose(theta1: Endomorphism, theta2: Endomorphism) -> Endomorphism:
    """The map ``x -> theta1(theta2(x))`` (``theta2`` acts first)."""
    if theta1.rank != theta2.rank:
        raise RankMismatch("cannot compose maps of different rank")
    return Endomorphism(theta1.rank, tuple(apply_endo(theta1, im) for im in theta2.images))


def identity(rank: int = 2) -> Endomorphism:
    return Endomorphism(rank, tuple(Word(rank, (i + 1,)) for i in range(rank)))


def exponent_vector(w: Word) -> tuple[int, ...]:
    v = [0] * w.rank
    for x in w.letters:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def letter_count_vector(w: Word) -> tuple[int, ...]:
    v = [0] * w.rank
    for x in w.letters:
        v[abs(x) - 1] += 1
    return tuple(v)


def abelianization(theta: Endomorphism) -> tuple[tuple[int, ...], ...]:
    """Integer matrix whose column ``j`` is the exponent vector of image ``j``."""
    cols = [exponent_vector(im) for im in theta.images]
    return tuple(tuple(cols[j][i] for j in range(theta.rank)) for i in range(theta.rank))


# The rank-2 automorphisms used to build mapping tori.
LAMBDA = Endomorphism.from_strings(["ba", "b"])
RHO = Endomorphism.from_strings(["a", "ab"])
IOTA = Endomorphism.from_strings(["A", "B"])
SIGMA = Endomorphism.from_strings(["b", "a"])
PSI = {
    1: identity(2),
    2: IOTA,
    3: SIGMA,
    4: Endomorphism.from_strings(["B", "A"]),
}
