"""Piecewise-Euclidean and square 2-complexes for mapping tori of F_2.

For ``phi = eta_0 ... eta_{n-1} theta`` (see :class:`~artifact.matdecomp.AutWord`)
the complex has one vertex ``P_i`` per time ``i``, two time edges ``t_i`` and
``d_i`` from ``P_i`` to ``P_{i+1}`` and two generator loops ``a_i``, ``b_i``
at ``P_i``.  Time ``n`` is time ``0`` seen through ``theta``.

Each ``eta_i`` contributes one building block.  Write ``m`` for the
generator that ``eta_i`` moves (``a`` for lambda, ``b`` for rho) and ``f``
for the one it fixes.  The block is

* ``Q_i = d_i m_{i+1} t_i^-1 m_i^-1``, a ``1 x sqrt2`` rectangle,
* ``T_i = f_i d_i t_i^-1`` and ``T'_i = d_i f_{i+1} t_i^-1``, right
  isosceles triangles with legs ``t_i``, ``d_i`` and hypotenuse ``f``.

Reading off the cells gives ``t m_{i+1} t^-1 = f_i m_i`` and
``t f_{i+1} t^-1 = f_i``, which is the relation of ``eta_i``.  Cutting the
obvious pentagon along ``d_i`` into ``Q_i`` and ``T_i`` removes the repeated
corner that would otherwise block non-positive curvature.

For the square complex, blocks meet at time ``i`` in one of two ways: the
fixed generator of block ``i-1`` at time ``i`` either is (``same``) or is not
(``mixed``) the fixed generator of block ``i``.

* If every meeting is ``same`` the triangles ``T'_{i-1}`` and ``T_i`` are
  glued along their common hypotenuse into one unit square.
* Otherwise every triangle is flattened: its hypotenuse becomes the path of
  its two legs.  At a ``same`` meeting this leaves a degenerate square of
  width zero between the two paths; it is recorded as a cell and resolved
  by identifying the two paths before links or invariants are computed.

Rectangles are then cut into unit squares along their midlines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .matdecomp import AutWord, Mat2Z

__all__ = [
    "DegenerateCylinder",
    "Length",
    "Edge",
    "Cell",
    "PE2Complex",
    "classify_case",
    "meeting_types",
    "build_pe_complex",
    "build_square_complex",
    "euler_characteristic",
    "homology_h1",
    "H1",
    "expected_h1",
    "smith_invariants",
    "presentation",
    "cells_by_shape",
    "iter_autwords",
]

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

FIXED = {"l": "b", "r": "a"}
MOVING = {"l": "a", "r": "b"}
# theta acting on generators at time n: x -> (generator at time 0, sign)
_THETA = {
    1: {"a": ("a", 1), "b": ("b", 1)},
    2: {"a": ("a", -1), "b": ("b", -1)},
    3: {"a": ("b", 1), "b": ("a", 1)},
    4: {"a": ("b", -1), "b": ("a", -1)},
}


class DegenerateCylinder(AssertionError):
    """Identifying degenerate squares would change the topology.

    Raised when the degenerate squares of a flattened complex chain up into
    a closed cylinder, so that collapsing them is no longer a homotopy
    equivalence.
    """


@dataclass(frozen=True)
class Length:
    """Exact length ``coef * sqrt(radicand)``."""

    coef: Fraction
    radicand: int = 1

    def __float__(self) -> float:
        return float(self.coef) * self.radicand**0.5

    def __str__(self) -> str:
        if self.radicand == 1:
            return str(self.coef)
        c = "" if self.coef == 1 else f"{self.coef}*"
        return f"{c}sqrt{self.radicand}"

    def to_json(self) -> dict:
        return {"coef": str(self.coef), "sqrt": self.radicand}

    @classmethod
    def from_json(cls, d: dict) -> "Length":
        return cls(Fraction(d["coef"]), int(d.get("sqrt", 1)))


ZERO = Length(Fraction(0))
ONE = Length(Fraction(1))
TWO = Length(Fraction(2))
SQRT2 = Length(Fraction(1), 2)


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    length: Length
    label: str


@dataclass(frozen=True)
class Cell:
    """A 2-cell.

    ``boundary`` is a cyclic sequence of ``(edge_index, sign)``; ``angles[k]``
    is the corner angle (in units of pi) at the start of ``boundary[k]``.
    ``zero_sides`` lists the corners of a degenerate cell at which its width
    vanishes.
    """

    boundary: tuple[tuple[int, int], ...]
    angles: tuple[Fraction, ...]
    shape: str
    label: str = ""
    zero_sides: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        k = len(self.boundary)
        if len(self.angles) != k:
            raise ValueError("one angle per corner")
        if sum(self.angles) != k - 2:
            raise ValueError(f"angles of a {k}-gon must sum to {k - 2} pi")


@dataclass(frozen=True)
class PE2Complex:
    """A piecewise-Euclidean 2-complex with exact metric data."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    cells: tuple[Cell, ...]
    word: AutWord | None = None
    kind: str = "pe"
    meta: dict = field(default_factory=dict, compare=False)

    # --- combinatorics -------------------------------------------------
    def edge_start(self, oe: tuple[int, int]) -> int:
        e, s = oe
        return self.edges[e].tail if s == 1 else self.edges[e].head

    def edge_end(self, oe: tuple[int, int]) -> int:
        e, s = oe
        return self.edges[e].head if s == 1 else self.edges[e].tail

    def validate(self) -> None:
        for c in self.cells:
            bd = c.boundary
            for k in range(len(bd)):
                if self.edge_end(bd[k - 1]) != self.edge_start(bd[k]):
                    raise ValueError(f"cell {c.label} boundary is not a closed path")
        for c in self.cells:
            if c.shape == "square":
                if any(self.edges[e].length != ONE for e, _ in c.boundary):
                    raise ValueError(f"square {c.label} has a side of length != 1")
                if any(a != HALF for a in c.angles):
                    raise ValueError(f"square {c.label} has a corner != pi/2")

    @property
    def degenerate_cells(self) -> list[Cell]:
        return [c for c in self.cells if c.shape == "degenerate"]

    def vertex_index(self, name: str) -> int:
        return self.vertices.index(name)

    def collapse_degenerate(self) -> "PE2Complex":
        """Identify the two long sides of every degenerate cell.

        Raises :class:`DegenerateCylinder` if the identifications close up,
        i.e. if collapsing is not a homotopy equivalence.
        """
        deg = self.degenerate_cells
        if not deg:
            return self
        return _collapse(self, deg)

    # --- serialisation -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "word": str(self.word) if self.word else None,
            "kind": self.kind,
            "meta": self.meta,
            "vertices": list(self.vertices),
            "edges": [
                {"label": e.label, "tail": e.tail, "head": e.head, "length": e.length.to_json()} for e in self.edges
            ],
            "cells": [
                {
                    "label": c.label,
                    "shape": c.shape,
                    "boundary": [[e, s] for e, s in c.boundary],
                    "angles": [{"num": a.numerator, "den": a.denominator} for a in c.angles],
                    "zero_sides": list(c.zero_sides),
                }
                for c in self.cells
            ],
        }

    @classmethod
    def from_json(cls, data: str | dict) -> "PE2Complex":
        from .matdecomp import parse_autword

        if isinstance(data, str):
            data = json.loads(data)
        edges = tuple(Edge(e["tail"], e["head"], Length.from_json(e["length"]), e["label"]) for e in data["edges"])
        cells = tuple(
            Cell(
                tuple((int(e), int(s)) for e, s in c["boundary"]),
                tuple(Fraction(a["num"], a["den"]) for a in c["angles"]),
                c["shape"],
                c.get("label", ""),
                tuple(c.get("zero_sides", ())),
            )
            for c in data["cells"]
        )
        word = parse_autword(data["word"]) if data.get("word") else None
        return cls(tuple(data["vertices"]), edges, cells, word, data.get("kind", "pe"), data.get("meta", {}))

    def to_dot(self) -> str:
        """Graphviz source of the 1-skeleton."""
        lines = ["digraph skeleton {"]
        for k, v in enumerate(self.vertices):
            lines.append(f'  v{k} [label="{v}"];')
        for e in self.edges:
            lines.append(f'  v{e.tail} -> v{e.head} [label="{e.label} ({e.length})"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self) -> None:
        self.vertices: list[str] = []
        self.vidx: dict[str, int] = {}
        self.edges: list[Edge] = []
        self.eidx: dict[str, int] = {}
        self.cells: list[Cell] = []

    def vertex(self, name: str) -> int:
        if name not in self.vidx:
            self.vidx[name] = len(self.vertices)
            self.vertices.append(name)
        return self.vidx[name]

    def edge(self, label: str, tail: str, head: str, length: Length) -> int:
        if label not in self.eidx:
            self.eidx[label] = len(self.edges)
            self.edges.append(Edge(self.vertex(tail), self.vertex(head), length, label))
        return self.eidx[label]

    def oe(self, label: str, sign: int = 1) -> tuple[int, int]:
        return (self.eidx[label], sign)

    def cell(self, boundary, angles, shape: str, label: str, zero_sides=()) -> None:
        self.cells.append(Cell(tuple(boundary), tuple(Fraction(a) for a in angles), shape, label, tuple(zero_sides)))

    def done(self, word: AutWord, kind: str, meta: dict) -> PE2Complex:
        X = PE2Complex(tuple(self.vertices), tuple(self.edges), tuple(self.cells), word, kind, meta)
        X.validate()
        return X


def _inv(oe: tuple[int, int]) -> tuple[int, int]:
    return (oe[0], -oe[1])


def _inv_path(p: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    return [_inv(x) for x in reversed(p)]


def _generator(w: AutWord, x: str, j: int) -> tuple[str, int]:
    """Name and sign of generator ``x`` at time ``j`` (time n seen through theta)."""
    n = len(w)
    if j == n:
        y, s = _THETA[w.tail][x]
        return f"{y}0", s
    return f"{x}{j}", 1


def meeting_types(w: AutWord) -> list[str]:
    """``"same"`` or ``"mixed"`` for each time ``i`` (blocks ``i-1`` and ``i``)."""
    n = len(w)
    out = []
    for i in range(n):
        prev = w.body[i - 1]
        fp = _generator(w, FIXED[prev], i if i else n)[0]
        f = _generator(w, FIXED[w.body[i]], i)[0]
        out.append("same" if fp == f else "mixed")
    return out


def classify_case(w: AutWord) -> str:
    """Which square-complex recipe applies to ``w``.

    * ``case1``: ``rho^n`` or ``lambda^n`` (the central tail ``psi_2`` is allowed),
    * ``case2``: ``(rho lambda)^k`` or ``(lambda rho)^k`` with tail ``psi_1``, or
      an odd alternating body with tail ``psi_3``/``psi_4``,
    * ``case3``: everything else.
    """
    body = w.body
    if len(set(body)) == 1 and w.tail in (1, 2):
        return "case1"
    alternating = all(body[k] != body[k + 1] for k in range(len(body) - 1))
    if alternating:
        if len(body) % 2 == 0 and w.tail == 1:
            return "case2"
        if len(body) % 2 == 1 and w.tail in (3, 4):
            return "case2"
    return "case3"


def _skeleton(b: _Builder, w: AutWord, gen_length: Length, with_generators: bool) -> None:
    n = len(w)
    for i in range(n):
        b.vertex(f"P{i}")
    for i in range(n):
        b.edge(f"t{i}", f"P{i}", f"P{(i + 1) % n}", ONE)
        b.edge(f"d{i}", f"P{i}", f"P{(i + 1) % n}", ONE)
    if with_generators:
        for i in range(n):
            for x in "ab":
                b.edge(f"{x}{i}", f"P{i}", f"P{i}", gen_length)


def build_pe_complex(w: AutWord) -> PE2Complex:
    """The complex built from rectangles and right isosceles triangles."""
    b = _Builder()
    _skeleton(b, w, SQRT2, with_generators=True)
    for i, eta in enumerate(w.body):
        t, d = b.oe(f"t{i}"), b.oe(f"d{i}")
        m = b.oe(*_generator(w, MOVING[eta], i))
        mp = b.oe(*_generator(w, MOVING[eta], i + 1))
        f = b.oe(*_generator(w, FIXED[eta], i))
        fp = b.oe(*_generator(w, FIXED[eta], i + 1))
        b.cell([d, mp, _inv(t), _inv(m)], [HALF] * 4, "rectangle", f"Q{i}")
        b.cell([f, d, _inv(t)], [QUARTER, QUARTER, HALF], "triangle", f"T{i}")
        b.cell([d, fp, _inv(t)], [HALF, QUARTER, QUARTER], "triangle", f"T'{i}")
    return b.done(w, "pe", {"case": classify_case(w), "meetings": meeting_types(w)})


def build_square_complex(w: AutWord) -> PE2Complex:
    """The square complex, with degenerate squares kept as cells.

    Links, Euler characteristic and homology are computed after the
    degenerate squares are collapsed (see :meth:`PE2Complex.collapse_degenerate`).

    Raises
    ------
    DegenerateCylinder
        If the degenerate squares close up into a cylinder.
    """
    n = len(w)
    meetings = meeting_types(w)
    case = classify_case(w)
    merge = all(m == "same" for m in meetings)
    assert merge == (case == "case1")
    b = _Builder()
    _skeleton(b, w, TWO, with_generators=False)

    paths: dict[str, list[tuple[int, int]]] = {}
    degenerate: list[tuple[list[tuple[int, int]], int]] = []

    def set_path(name: str, sign: int, p: list[tuple[int, int]]) -> None:
        paths[name] = p if sign == 1 else _inv_path(p)

    for i in range(n):
        ip = (i - 1) % n
        fp_name, fp_sign = _generator(w, FIXED[w.body[ip]], i if i else n)
        f_name, f_sign = _generator(w, FIXED[w.body[i]], i)
        tp, dp = b.oe(f"t{ip}"), b.oe(f"d{ip}")
        ti, di = b.oe(f"t{i}"), b.oe(f"d{i}")
        # T'_{i-1} flattened: f_i = d_{i-1}^-1 t_{i-1};  T_i flattened: f_i = t_i d_i^-1
        if merge:
            other = [ti, _inv(di)] if fp_sign != f_sign else [di, _inv(ti)]
            b.cell([_inv(dp), tp] + other, [HALF] * 4, "square", f"S{i}")
        else:
            set_path(fp_name, fp_sign, [_inv(dp), tp])
            if meetings[i] == "mixed":
                set_path(f_name, f_sign, [ti, _inv(di)])
            else:
                long_side = [_inv(dp), tp] if fp_sign == f_sign else [_inv(tp), dp]
                degenerate.append((long_side + [di, _inv(ti)], i))

    def path_of(name: str, sign: int) -> list[tuple[int, int]]:
        if name not in paths:
            base = f"P{int(name[1:])}"
            mid = f"M{name}"
            b.edge(f"{name}'", base, mid, ONE)
            b.edge(f"{name}''", mid, base, ONE)
            paths[name] = [b.oe(f"{name}'"), b.oe(f"{name}''")]
        p = paths[name]
        return p if sign == 1 else _inv_path(p)

    for i, eta in enumerate(w.body):
        t, d = b.oe(f"t{i}"), b.oe(f"d{i}")
        lo = path_of(*_generator(w, MOVING[eta], i))
        hi = path_of(*_generator(w, MOVING[eta], i + 1))
        mid_lo = b.edges[lo[0][0]].head if lo[0][1] == 1 else b.edges[lo[0][0]].tail
        mid_hi = b.edges[hi[0][0]].head if hi[0][1] == 1 else b.edges[hi[0][0]].tail
        h = b.edge(f"h{i}", b.vertices[mid_lo], b.vertices[mid_hi], ONE)
        b.cell([d, hi[0], (h, -1), _inv(lo[0])], [HALF] * 4, "square", f"Q{i}.0")
        b.cell([(h, 1), hi[1], _inv(t), _inv(lo[1])], [HALF] * 4, "square", f"Q{i}.1")

    for cyc, i in degenerate:
        # width vanishes at corners 0 and 2; the long sides meet at the far corners
        b.cell(cyc, [0, 1, 0, 1], "degenerate", f"D{i}", zero_sides=(0, 2))

    X = b.done(
        w,
        "square",
        {"case": case, "meetings": meetings, "degenerate": len(degenerate), "construction": "merge" if merge else "flatten"},
    )
    X.collapse_degenerate()  # raises DegenerateCylinder early
    return X


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, (x, 1))
        p, s = self.parent[x]
        if p == x:
            return x, 1
        r, s2 = self.find(p)
        self.parent[x] = (r, s * s2)
        return r, s * s2

    def union(self, x, y, sign: int = 1) -> bool:
        """Record ``x = sign * y``; return False if they were already related."""
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        if rx == ry:
            if sx != sign * sy:
                raise DegenerateCylinder("orientation-reversing identification")
            return False
        self.parent[ry] = (rx, sx * sign * sy)
        return True


def _collapse(X: PE2Complex, deg: list[Cell]) -> PE2Complex:
    edges_uf = _UnionFind()
    verts_uf = _UnionFind()
    for c in deg:
        e0, e1, e2, e3 = c.boundary
        # long sides (e0 e1) and (e3^-1 e2^-1) run between the zero-width corners
        if not verts_uf.union(X.edge_end(e0), X.edge_end(_inv(e3))):
            raise DegenerateCylinder(f"degenerate squares close up into a cylinder at {c.label}")
        for a, bb in ((e0, _inv(e3)), (e1, _inv(e2))):
            if not edges_uf.union(a[0], bb[0], a[1] * bb[1]):
                raise DegenerateCylinder(f"degenerate squares close up into a cylinder at {c.label}")
    # endpoints of identified edges agree once the midpoints are identified
    for e in range(len(X.edges)):
        r, s = edges_uf.find(e)
        if r != e:
            for a, bb in ((X.edge_start((e, 1)), X.edge_start((r, s))), (X.edge_end((e, 1)), X.edge_end((r, s)))):
                if verts_uf.find(a)[0] != verts_uf.find(bb)[0]:
                    raise DegenerateCylinder("identified edges have unidentified endpoints")
    vroots = sorted({verts_uf.find(v)[0] for v in range(len(X.vertices))})
    vmap = {r: k for k, r in enumerate(vroots)}
    names = {r: [] for r in vroots}
    for v, name in enumerate(X.vertices):
        names[verts_uf.find(v)[0]].append(name)
    eroots = sorted({edges_uf.find(e)[0] for e in range(len(X.edges))})
    emap = {r: k for k, r in enumerate(eroots)}
    new_edges = tuple(
        replace(X.edges[r], tail=vmap[verts_uf.find(X.edges[r].tail)[0]], head=vmap[verts_uf.find(X.edges[r].head)[0]])
        for r in eroots
    )
    new_cells = []
    for c in X.cells:
        if c.shape == "degenerate":
            continue
        bd = []
        for e, s in c.boundary:
            r, s2 = edges_uf.find(e)
            bd.append((emap[r], s * s2))
        new_cells.append(replace(c, boundary=tuple(bd)))
    out = PE2Complex(
        tuple("=".join(names[r]) for r in vroots), new_edges, tuple(new_cells), X.word, X.kind, dict(X.meta, collapsed=True)
    )
    out.validate()
    return out


# --- invariants -----------------------------------------------------------


def euler_characteristic(X: PE2Complex) -> int:
    """``V - E + F`` after degenerate squares are identified."""
    X = X.collapse_degenerate()
    return len(X.vertices) - len(X.edges) + len(X.cells)


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (positive, dividing chain)."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    out: list[int] = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero entry in the remaining block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[t]
                if A[t][j]:
                    done = False
            if done:
                # enforce divisibility by the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]] + [
                (abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]
            ]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            for r in A:
                r[t], r[j] = r[j], r[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


@dataclass(frozen=True)
class H1:
    """``Z^free_rank + sum Z/torsion[k]``."""

    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{k}" for k in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


def _h1_from_boundaries(nv: int, ne: int, d1: list[list[int]], d2: list[list[int]]) -> H1:
    r1 = len(smith_invariants(d1)) if ne else 0
    inv2 = smith_invariants(d2) if d2 and d2[0] else []
    free = ne - r1 - len(inv2)
    return H1(free, tuple(sorted(x for x in inv2 if x != 1)))


def homology_h1(X: PE2Complex) -> H1:
    """First integral homology from the cellular chain complex."""
    X = X.collapse_degenerate()
    nv, ne, nf = len(X.vertices), len(X.edges), len(X.cells)
    d1 = [[0] * ne for _ in range(nv)]
    for k, e in enumerate(X.edges):
        d1[e.head][k] += 1
        d1[e.tail][k] -= 1
    d2 = [[0] * nf for _ in range(ne)]
    for k, c in enumerate(X.cells):
        for e, s in c.boundary:
            d2[e][k] += s
    return _h1_from_boundaries(nv, ne, d1, d2)


def expected_h1(w: AutWord | Mat2Z) -> H1:
    """``Z + coker(M - I)`` for the abelianization ``M`` of the automorphism."""
    M = w.matrix() if isinstance(w, AutWord) else w
    A = [[M.a - 1, M.b], [M.c, M.d - 1]]
    inv = smith_invariants(A)
    return H1(1 + 2 - len(inv), tuple(sorted(x for x in inv if x != 1)))


def presentation(X: PE2Complex) -> tuple[list[str], list[list[tuple[str, int]]]]:
    """Fundamental group presentation read off the cells.

    Generators are the edges outside a spanning tree of the 1-skeleton;
    each cell boundary gives one relator.
    """
    X = X.collapse_degenerate()
    nv = len(X.vertices)
    seen = {0}
    tree: set[int] = set()
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for k, e in enumerate(X.edges):
            for a, bb in ((e.tail, e.head), (e.head, e.tail)):
                if a == v and bb not in seen:
                    seen.add(bb)
                    tree.add(k)
                    frontier.append(bb)
    if len(seen) != nv:
        raise ValueError("complex is not connected")
    gens = [e.label for k, e in enumerate(X.edges) if k not in tree]
    rels = [[(X.edges[e].label, s) for e, s in c.boundary if e not in tree] for c in X.cells]
    return gens, rels


def cells_by_shape(X: PE2Complex) -> dict[str, int]:
    out: dict[str, int] = {}
    for c in X.cells:
        out[c.shape] = out.get(c.shape, 0) + 1
    return out


def iter_autwords(max_len: int, min_len: int = 1) -> Iterable[AutWord]:
    """All normal forms with body length in ``[min_len, max_len]``."""
    from itertools import product

    for n in range(min_len, max_len + 1):
        for body in product("lr", repeat=n):
            for tail in (1, 2, 3, 4):
                yield AutWord("".join(body), tail)
