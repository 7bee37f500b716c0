"""Decomposition of GL(2, Z) matrices into the semigroup generated by
``-I``, ``F``, ``L`` and ``R``, up to conjugacy.

Pipeline::

    g  --normalize_to_nonneg-->  N >= 0  --row subtractions-->  I or F

The normalisation follows the classical case analysis (move the largest
entry to the top left, fix signs, conjugate by ``R^-1``), recording every
move so the identity ``C (eps F^delta g) C^-1 = N`` can be replayed exactly.
Row subtractions peel ``N = X_1 X_2 ... X_k T`` with ``X_i`` in ``{L, R}``
and ``T`` in ``{I, F}``.

:class:`AutWord` is the automorphism normal form
``eta_0 ... eta_{n-1} theta`` with ``eta_i`` in ``{lambda, rho}`` and
``theta`` one of the four finite-order maps ``psi_1 .. psi_4``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import reduce

from .freegroup import LAMBDA, PSI, RHO, Endomorphism, abelianization, compose

__all__ = [
    "FiniteOrder",
    "NoStep",
    "Mat2Z",
    "I",
    "NEG_I",
    "F",
    "L",
    "R",
    "D",
    "is_finite_order",
    "Normalization",
    "normalize_to_nonneg",
    "row_subtraction_step",
    "MatrixDecomposition",
    "decompose",
    "AutWord",
    "parse_autword",
    "to_aut_word",
    "TAIL_MATRIX",
]


class FiniteOrder(ValueError):
    """The matrix has finite order, so no decomposition exists."""


class NoStep(ValueError):
    """No row subtraction applies (the matrix is I or F)."""


@dataclass(frozen=True)
class Mat2Z:
    """2x2 integer matrix ``[[a, b], [c, d]]`` with determinant +-1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if abs(self.det) != 1:
            raise ValueError(f"determinant {self.det} is not +-1")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: "Mat2Z") -> "Mat2Z":
        return Mat2Z(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "Mat2Z":
        return Mat2Z(-self.a, -self.b, -self.c, -self.d)

    def scale(self, eps: int) -> "Mat2Z":
        return self if eps == 1 else -self

    def inverse(self) -> "Mat2Z":
        e = self.det
        return Mat2Z(e * self.d, -e * self.b, -e * self.c, e * self.a)

    def conj(self, x: "Mat2Z") -> "Mat2Z":
        """``x self x^-1``."""
        return x @ self @ x.inverse()

    def power(self, k: int) -> "Mat2Z":
        base = self if k >= 0 else self.inverse()
        out = I
        for _ in range(abs(k)):
            out = out @ base
        return out

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def entry_sum(self) -> int:
        return self.a + self.b + self.c + self.d

    def is_nonneg(self) -> bool:
        return min(self.entries) >= 0

    def to_list(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    @classmethod
    def from_list(cls, rows) -> "Mat2Z":
        if isinstance(rows, str):
            rows = json.loads(rows)
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def from_rows(cls, rows) -> "Mat2Z":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


I = Mat2Z(1, 0, 0, 1)
NEG_I = Mat2Z(-1, 0, 0, -1)
F = Mat2Z(0, 1, 1, 0)
L = Mat2Z(1, 0, 1, 1)
R = Mat2Z(1, 1, 0, 1)
D = Mat2Z(-1, 0, 0, 1)
_NAMED = {"I": I, "F": F, "L": L, "R": R, "D": D, "R^-1": R.inverse(), "L^-1": L.inverse()}


def is_finite_order(g: Mat2Z) -> tuple[bool, int | None]:
    """Return ``(True, order)`` if ``g`` has finite order, else ``(False, None)``.

    Orders of torsion elements of GL(2, Z) divide 12, so ``g^12 = I`` decides.
    """
    if g.power(12) != I:
        return False, None
    p = I
    for k in range(1, 13):
        p = p @ g
        if p == I:
            return True, k
    raise AssertionError("unreachable: g^12 = I but no smaller order found")


@dataclass(frozen=True)
class Normalization:
    """Result of :func:`normalize_to_nonneg`.

    ``C @ (eps * F^delta @ g) @ C^-1 == N`` holds exactly.  ``moves`` lists
    the conjugating matrices in the order applied (first move first), so
    ``C`` is their product with the last move on the left.
    """

    C: Mat2Z
    eps: int
    delta: int
    N: Mat2Z
    moves: tuple[str, ...] = ()

    def check(self, g: Mat2Z) -> bool:
        return self.C @ (F.power(self.delta) @ g).scale(self.eps) @ self.C.inverse() == self.N


_ELEMENTARY = ("R^-1", "R", "L^-1", "L")
_GAP_CONJUGATORS = [(x,) for x in _ELEMENTARY] + [(x, y) for x in _ELEMENTARY for y in _ELEMENTARY]


def _general_ready(h: Mat2Z) -> bool:
    # usable by the case analysis below without multiplying by F
    if 0 in h.entries:
        return (h.b == 0 or h.c == 0) and h.a == h.d
    top = max(abs(x) for x in h.entries)
    return top in (abs(h.a), abs(h.d))


def normalize_to_nonneg(g: Mat2Z) -> Normalization:
    """Conjugate one of ``g, -g, Fg, -Fg`` to a non-negative matrix.

    Raises
    ------
    FiniteOrder
        If ``g`` has finite order (this includes the triangular case with
        diagonal ``(1, -1)``, which has order 2).
    """
    finite, order = is_finite_order(g)
    if finite:
        raise FiniteOrder(f"{g} has finite order {order}")

    moves: list[str] = []
    C = I
    delta = 0

    def conj(h: Mat2Z, name: str) -> Mat2Z:
        nonlocal C
        x = _NAMED[name]
        moves.append(name)
        C = x @ C
        return h.conj(x)

    h = g
    if 0 in g.entries and g.b != 0 and g.c != 0 and g.det == 1:
        # Zero on the diagonal with det 1: Fg is triangular with diagonal
        # +-(1, -1), hence of order 2, although g is not.  A single elementary
        # conjugation clears the zeros and puts the largest entry on the
        # diagonal, after which the general branch applies with delta = 0.
        for names in _GAP_CONJUGATORS:
            k = h
            for name in names:
                k = k.conj(_NAMED[name])
            if _general_ready(k):
                for name in names:
                    h = conj(h, name)
                break
        else:
            raise AssertionError(f"no elementary conjugation normalises {g}")
    if 0 in h.entries:
        # g or Fg is triangular
        if h.b != 0 and h.c != 0:
            delta = 1
            h = F @ h
        if h.c != 0:
            h = conj(h, "F")
        assert h.c == 0
        eps = 1 if h.a > 0 else -1
        h = h.scale(eps)
        assert h.a == 1 and h.d == 1, "order-2 triangular case should have been rejected"
        if h.b < 0:
            h = conj(h, "D")
    else:
        absd = [abs(x) for x in h.entries]
        top = max(absd)
        # 0:a 1:b 2:c 3:d; prefer positions reachable by conjugation alone
        pos = next(k for k in (0, 3, 2, 1) if absd[k] == top)
        if pos in (1, 2):
            assert not moves, "F multiplication must precede conjugation"
            delta = 1
            h = F @ h
        if pos in (1, 3):
            h = conj(h, "F")
        assert abs(h.a) == top
        eps = 1 if h.a > 0 else -1
        h = h.scale(eps)
        if h.c < 0:
            h = conj(h, "D")
        assert h.a > 0 and h.c > 0
        assert (h.b > 0) == (h.d > 0), "a max-modulus matrix of det +-1 has no single negative entry"
        limit = 64 * sum(absd)
        steps = 0
        while not h.is_nonneg():
            h = conj(h, "R^-1")
            steps += 1
            if steps > limit:
                raise AssertionError(f"R^-1 conjugation loop did not terminate for {g}")
    out = Normalization(C, eps, delta, h, tuple(moves))
    assert out.check(g)
    return out


def row_subtraction_step(N: Mat2Z) -> tuple[str, Mat2Z]:
    """Write ``N = X @ N'`` with ``X`` in ``{L, R}`` and ``N' >= 0``.

    The step subtracts one row from the other; exactly one choice keeps the
    result non-negative, and it lowers the entry sum.
    """
    if not N.is_nonneg():
        raise ValueError(f"{N} has a negative entry")
    if N in (I, F) or (N.b == 0 and N.c == 0) or (N.a == 0 and N.d == 0):
        raise NoStep(f"{N} is diagonal or anti-diagonal")
    top_ge = N.a >= N.c and N.b >= N.d
    bot_ge = N.c >= N.a and N.d >= N.b
    if top_ge and not bot_ge:
        return "R", Mat2Z(N.a - N.c, N.b - N.d, N.c, N.d)
    if bot_ge and not top_ge:
        return "L", Mat2Z(N.a, N.b, N.c - N.a, N.d - N.b)
    raise NoStep(f"no unique row subtraction for {N}")


@dataclass(frozen=True)
class MatrixDecomposition:
    """``C @ (eps * F^delta @ g) @ C^-1 == prod(lr_word) @ terminal``."""

    eps: int
    delta: int
    C: Mat2Z
    lr_word: tuple[str, ...]
    terminal: str  # "I" or "F"
    source: Mat2Z | None = None
    moves: tuple[str, ...] = field(default=(), compare=False)

    def product(self) -> Mat2Z:
        return reduce(lambda x, y: x @ y, (_NAMED[s] for s in self.lr_word), I) @ _NAMED[self.terminal]

    def check(self, g: Mat2Z | None = None) -> bool:
        g = self.source if g is None else g
        lhs = self.C @ (F.power(self.delta) @ g).scale(self.eps) @ self.C.inverse()
        return lhs == self.product()

    def to_json(self) -> dict:
        out = {
            "eps": self.eps,
            "delta": self.delta,
            "C": self.C.to_list(),
            "lr_word": list(self.lr_word),
            "terminal": self.terminal,
            "product": self.product().to_list(),
            "moves": list(self.moves),
        }
        if self.source is not None:
            out["input"] = self.source.to_list()
            out["verified"] = self.check()
        return out


def decompose(g: Mat2Z) -> MatrixDecomposition:
    """Full decomposition of an infinite-order matrix."""
    norm = normalize_to_nonneg(g)
    N = norm.N
    word = []
    while N not in (I, F):
        letter, N2 = row_subtraction_step(N)
        assert N2.entry_sum < N.entry_sum
        word.append(letter)
        N = N2
    out = MatrixDecomposition(norm.eps, norm.delta, norm.C, tuple(word), "I" if N == I else "F", g, norm.moves)
    assert word and out.check()
    return out


TAIL_MATRIX = {1: I, 2: NEG_I, 3: F, 4: -F}
_TAIL_OF = {(1, "I"): 1, (-1, "I"): 2, (1, "F"): 3, (-1, "F"): 4}
_BODY_CHARS = {"l": "l", "L": "l", "λ": "l", "r": "r", "R": "r", "ρ": "r"}
_SUBSCRIPTS = str.maketrans("₁₂₃₄", "1234")


@dataclass(frozen=True)
class AutWord:
    """Normal form ``eta_0 ... eta_{n-1} theta``.

    ``body`` is a string over ``"l"`` (lambda: a->ba, b->b) and ``"r"``
    (rho: a->a, b->ab); ``tail`` is 1..4 for ``psi_1 .. psi_4``.  The
    realised automorphism is ``eta_0 o ... o eta_{n-1} o theta``, so the
    tail acts first.
    """

    body: str
    tail: int = 1

    def __post_init__(self) -> None:
        if not self.body:
            raise ValueError(
                "empty body: finite-order automorphisms are handled by the graph x circle "
                "construction (finitely covered by Gamma x S^1), not by this builder"
            )
        if set(self.body) - {"l", "r"}:
            raise ValueError(f"body must be over 'l'/'r', got {self.body!r}")
        if self.tail not in (1, 2, 3, 4):
            raise ValueError("tail must be 1..4")

    def __len__(self) -> int:
        return len(self.body)

    def __str__(self) -> str:
        return f"{self.body}.psi{self.tail}"

    def pretty(self) -> str:
        return "".join("λ" if c == "l" else "ρ" for c in self.body) + "·ψ" + "₁₂₃₄"[self.tail - 1]

    def realize(self) -> Endomorphism:
        maps = [LAMBDA if c == "l" else RHO for c in self.body] + [PSI[self.tail]]
        return reduce(compose, maps)

    def matrix(self) -> Mat2Z:
        m = reduce(lambda x, y: x @ y, (L if c == "l" else R for c in self.body), I)
        return m @ TAIL_MATRIX[self.tail]

    def realized_matrix(self) -> Mat2Z:
        """Abelianization of :meth:`realize`, computed from the words."""
        return Mat2Z.from_rows(abelianization(self.realize()))


def parse_autword(text: str) -> AutWord:
    """Parse ``"llr.psi2"``, ``"λλρ·ψ₂"``, ``"llr:2"`` or ``"llr"`` (tail psi1)."""
    s = text.strip().translate(_SUBSCRIPTS)
    m = re.fullmatch(r"([lrLRλρ]*)\s*(?:[.·:*,\s]\s*(?:psi|ψ|p)?\s*([1-4]))?", s)
    if not m or not m.group(1):
        raise ValueError(f"cannot parse automorphism word {text!r}")
    body = "".join(_BODY_CHARS[c] for c in m.group(1))
    return AutWord(body, int(m.group(2) or 1))


def to_aut_word(d: MatrixDecomposition) -> AutWord:
    """Translate a decomposition into the automorphism normal form.

    ``L -> lambda``, ``R -> rho``; the pair ``(eps, terminal)`` picks the tail:
    ``(+,I) -> psi_1``, ``(-,I) -> psi_2``, ``(+,F) -> psi_3``, ``(-,F) -> psi_4``.
    The realised automorphism abelianizes to ``eps * prod(lr_word) @ terminal``,
    which equals ``C @ F^delta @ g @ C^-1``.
    """
    body = "".join("l" if x == "L" else "r" for x in d.lr_word)
    return AutWord(body, _TAIL_OF[(d.eps, d.terminal)])
