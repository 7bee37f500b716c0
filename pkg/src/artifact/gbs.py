"""Generalized Baumslag-Solitar groups as labelled graphs.

A GBS graph is a finite connected multigraph (loops allowed) with a
nonzero integer at each end of each edge.  The vertex groups are infinite
cyclic, ``<h_v>``, and an edge ``(u, v, lu, lv)`` glues ``h_u^lu`` to
``h_v^lv``.

:func:`classify` decides between the three possible outcomes for such a
group: infinite cyclic, soluble ``BS(1, j)``, or SQ-universal.  Every
SQ-universal verdict comes with a witness:

* ``FreeRankTwo``: at least two independent cycles, so the group maps onto
  a free group of rank 2;
* ``TreeCase``: a tree of groups with an edge, virtually ``F_k x Z`` with
  ``k >= 2``;
* ``BSQuotient(i, j)``: a cycle edge is cut, the remaining tree maps to
  ``Z`` injectively on vertex groups (the :class:`ThetaMap`), and the
  group surjects onto ``BS(i, j)`` with ``|i|, |j| >= 2``;
* ``SelfLoopZp(p, edge)``: a lone loop with a unit end plus more graph;
  the group maps onto ``Z * Z/p``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

__all__ = [
    "Disconnected",
    "NotCollapsible",
    "NotATree",
    "GbsEdge",
    "GbsGraph",
    "ThetaMap",
    "Classification",
    "elementary_collapse",
    "collapsible_edges",
    "normal_form",
    "cycle_rank",
    "deficiency_one_map",
    "classify",
    "smallest_prime_factor",
    "enumerate_graphs",
]


class Disconnected(ValueError):
    pass


class NotCollapsible(ValueError):
    pass


class NotATree(ValueError):
    pass


@dataclass(frozen=True)
class GbsEdge:
    u: int
    v: int
    lu: int
    lv: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def flipped(self) -> "GbsEdge":
        return GbsEdge(self.v, self.u, self.lv, self.lu)


@dataclass(frozen=True)
class GbsGraph:
    n_vertices: int
    edges: tuple[GbsEdge, ...]

    def __post_init__(self) -> None:
        if self.n_vertices < 1:
            raise ValueError("need at least one vertex")
        for e in self.edges:
            if not (0 <= e.u < self.n_vertices and 0 <= e.v < self.n_vertices):
                raise ValueError(f"edge {e} has an endpoint out of range")
            if e.lu == 0 or e.lv == 0:
                raise ValueError("edge labels must be nonzero")

    @classmethod
    def make(cls, n: int, edges: Iterable[tuple[int, int, int, int]]) -> "GbsGraph":
        return cls(n, tuple(GbsEdge(*e) for e in edges))

    @classmethod
    def from_json(cls, data: str | dict) -> "GbsGraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["vertices"]), tuple(GbsEdge(e["u"], e["v"], e["lu"], e["lv"]) for e in data["edges"]))

    def to_json(self) -> dict:
        return {
            "vertices": self.n_vertices,
            "edges": [{"u": e.u, "v": e.v, "lu": e.lu, "lv": e.lv} for e in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["graph gbs {"]
        for v in range(self.n_vertices):
            lines.append(f"  v{v};")
        for k, e in enumerate(self.edges):
            lines.append(f'  v{e.u} -- v{e.v} [label="e{k}", taillabel="{e.lu}", headlabel="{e.lv}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for e in self.edges:
                for a, b in ((e.u, e.v), (e.v, e.u)):
                    if a == x and b not in seen:
                        seen.add(b)
                        stack.append(b)
        return len(seen) == self.n_vertices


def cycle_rank(g: GbsGraph) -> int:
    """First Betti number ``E - V + 1`` of a connected graph."""
    return len(g.edges) - g.n_vertices + 1


def collapsible_edges(g: GbsGraph) -> list[int]:
    return [k for k, e in enumerate(g.edges) if not e.is_loop and (abs(e.lu) == 1 or abs(e.lv) == 1)]


def elementary_collapse(g: GbsGraph, k: int) -> GbsGraph:
    """Contract edge ``k`` into the vertex at its non-unit end.

    The vertex ``w`` at the ``+-1`` end is absorbed: ``h_w = h_x^(l/eps)``
    where ``l`` is the label at the other end ``x`` and ``eps = +-1``, so
    every other label next to ``w`` is multiplied by ``l/eps``.  When both
    ends are units the ``u`` end is absorbed.
    """
    e = g.edges[k]
    if e.is_loop:
        raise NotCollapsible("cannot collapse a self-loop")
    if abs(e.lu) == 1:
        w, x, factor = e.u, e.v, e.lv * e.lu
    elif abs(e.lv) == 1:
        w, x, factor = e.v, e.u, e.lu * e.lv
    else:
        raise NotCollapsible(f"edge {k} has no end labelled +-1")

    def rename(y: int) -> int:
        y = x if y == w else y
        return y - (y > w)

    out = []
    for j, f in enumerate(g.edges):
        if j == k:
            continue
        lu = f.lu * factor if f.u == w else f.lu
        lv = f.lv * factor if f.v == w else f.lv
        out.append(GbsEdge(rename(f.u), rename(f.v), lu, lv))
    return GbsGraph(g.n_vertices - 1, tuple(out))


def normal_form(g: GbsGraph) -> GbsGraph:
    """Collapse until every edge with a unit end is a self-loop.

    The lowest-index collapsible edge is collapsed first.
    """
    while True:
        ks = collapsible_edges(g)
        if not ks:
            return g
        g = elementary_collapse(g, ks[0])


@dataclass(frozen=True)
class ThetaMap:
    """Values ``theta(h_v)`` of a map to ``Z`` that is injective on vertex groups."""

    values: tuple[int, ...]

    def check(self, g: GbsGraph, skip: Iterable[int] = ()) -> bool:
        skip = set(skip)
        if any(x == 0 for x in self.values) or math.gcd(*self.values) != 1:
            return False
        return all(
            self.values[e.u] * e.lu == self.values[e.v] * e.lv for k, e in enumerate(g.edges) if k not in skip
        )

    def to_json(self) -> list[int]:
        return list(self.values)


def deficiency_one_map(g: GbsGraph, skip: Iterable[int] = ()) -> ThetaMap:
    """Propagate ``theta(h_v) * lv = theta(h_u) * lu`` from vertex 0.

    ``skip`` lists edges to ignore; the remaining edges must form a spanning
    tree.  Values are scaled to coprime integers with ``theta(h_0) > 0``.
    """
    skip = set(skip)
    tree = [e for k, e in enumerate(g.edges) if k not in skip]
    if len(tree) != g.n_vertices - 1 or any(e.is_loop for e in tree):
        raise NotATree("edges left after skipping do not form a tree")
    val: dict[int, Fraction] = {0: Fraction(1)}
    stack = [0]
    while stack:
        x = stack.pop()
        for e in tree:
            for a, b, la, lb in ((e.u, e.v, e.lu, e.lv), (e.v, e.u, e.lv, e.lu)):
                if a == x and b not in val:
                    val[b] = val[a] * la / lb
                    stack.append(b)
    if len(val) != g.n_vertices:
        raise NotATree("edges left after skipping do not span the graph")
    den = math.lcm(*(v.denominator for v in val.values()))
    ints = [int(val[v] * den) for v in range(g.n_vertices)]
    common = math.gcd(*ints)
    theta = ThetaMap(tuple(x // common for x in ints))
    assert theta.check(g, skip)
    return theta


def smallest_prime_factor(n: int) -> int:
    n = abs(n)
    if n < 2:
        raise ValueError(f"{n} has no prime factor")
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


@dataclass(frozen=True)
class Classification:
    """Verdict plus witness.

    ``verdict`` is ``"InfiniteCyclic"``, ``"SolubleBS"`` or ``"SQUniversal"``;
    ``witness`` is ``None``, ``"FreeRankTwo"``, ``"TreeCase"``,
    ``"BSQuotient"`` or ``"SelfLoopZp"``.  Edge indices in the data refer to
    the normal form, which is included.
    """

    verdict: str
    witness: str | None
    data: dict = field(default_factory=dict)
    normal_form: GbsGraph | None = None

    @property
    def kind(self) -> str:
        return self.witness or self.verdict

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "witness": self.witness, **self.data}
        if self.normal_form is not None:
            out["normal_form"] = self.normal_form.to_json()
        return out

    def __str__(self) -> str:
        if self.verdict == "SolubleBS":
            return f"SolubleBS({self.data['j']})"
        if self.witness == "BSQuotient":
            return f"SQUniversal(BSQuotient({self.data['i']},{self.data['j']}))"
        if self.witness == "SelfLoopZp":
            return f"SQUniversal(SelfLoopZp({self.data['p']}, e{self.data['edge']}))"
        if self.witness:
            return f"SQUniversal({self.witness})"
        return self.verdict


def _cycle_edges(g: GbsGraph) -> list[int]:
    # edges on the unique cycle of a graph with cycle rank 1: prune leaves
    alive = set(range(len(g.edges)))
    while True:
        deg = [0] * g.n_vertices
        for k in alive:
            e = g.edges[k]
            deg[e.u] += 1
            deg[e.v] += 1
        leaves = {k for k in alive if deg[g.edges[k].u] == 1 or deg[g.edges[k].v] == 1}
        if not leaves:
            return sorted(alive)
        alive -= leaves


_SOLUBLE_NOTES = {1: "BS(1,1) is Z^2", -1: "BS(1,-1) is the Klein bottle group"}


def classify(g: GbsGraph, cut_edge: int | None = None) -> Classification:
    """Decide whether the GBS group of ``g`` is Z, BS(1, j) or SQ-universal.

    ``cut_edge`` overrides which cycle edge (an index into the normal form)
    is removed when a non-loop cycle is present; by default it is the lowest
    index on the cycle.
    """
    if not g.is_connected():
        raise Disconnected("GBS graph must be connected")
    nf = normal_form(g)
    r = cycle_rank(nf)
    if r >= 2:
        return Classification("SQUniversal", "FreeRankTwo", {"cycle_rank": r}, nf)
    if r == 0:
        if not nf.edges:
            return Classification("InfiniteCyclic", None, {}, nf)
        theta = deficiency_one_map(nf)
        return Classification("SQUniversal", "TreeCase", {"theta": theta.to_json()}, nf)

    loops = [k for k, e in enumerate(nf.edges) if e.is_loop]
    if not loops:
        cyc = _cycle_edges(nf)
        if cut_edge is not None and cut_edge not in cyc:
            raise ValueError(f"edge {cut_edge} is not on the cycle {cyc}")
        k = cyc[0] if cut_edge is None else cut_edge
        e = nf.edges[k]
        theta = deficiency_one_map(nf, skip=[k])
        i, j = theta.values[e.u] * e.lu, theta.values[e.v] * e.lv
        assert abs(i) >= 2 and abs(j) >= 2, "normal form leaves no unit label on a cycle edge"
        return Classification(
            "SQUniversal", "BSQuotient", {"i": i, "j": j, "removed_edge": k, "theta": theta.to_json()}, nf
        )

    (k,) = loops
    e = nf.edges[k]
    m, n = e.lu, e.lv
    if len(nf.edges) == 1:
        if abs(m) == 1 or abs(n) == 1:
            j = n * m if abs(m) == 1 else m * n
            data = {"j": j, "loop": [m, n]}
            if j in _SOLUBLE_NOTES:
                data["note"] = _SOLUBLE_NOTES[j]
            return Classification("SolubleBS", None, data, nf)
        return Classification(
            "SQUniversal", "BSQuotient", {"i": m, "j": n, "removed_edge": k, "theta": [1]}, nf
        )

    theta = deficiency_one_map(nf, skip=[k])
    k1 = theta.values[e.u]
    if abs(k1 * m) >= 2 and abs(k1 * n) >= 2:
        return Classification(
            "SQUniversal", "BSQuotient", {"i": k1 * m, "j": k1 * n, "removed_edge": k, "theta": theta.to_json()}, nf
        )
    # |k1| = 1 and the loop has a unit end
    assert abs(k1) == 1
    v1 = e.u
    ei = next(j for j, f in enumerate(nf.edges) if not f.is_loop and v1 in (f.u, f.v))
    f = nf.edges[ei]
    a_i, b_i = (f.lu, f.lv) if f.u == v1 else (f.lv, f.lu)
    if a_i % b_i != 0:
        raise AssertionError(f"far label {b_i} does not divide near label {a_i}; inconsistent theta map")
    p = smallest_prime_factor(b_i)
    return Classification(
        "SQUniversal",
        "SelfLoopZp",
        {"p": p, "edge": ei, "near_label": a_i, "far_label": b_i, "loop_edge": k, "theta": theta.to_json()},
        nf,
    )


def enumerate_graphs(
    max_vertices: int = 3, max_edges: int = 3, labels: Iterable[int] = (1, -1, 2, -2, 3, -3)
) -> Iterable[GbsGraph]:
    """Every connected labelled graph within the bounds.

    Edges are listed as sorted multisets of vertex pairs ``u <= v``, so each
    labelled graph appears once per labelling of its ends.
    """
    labels = tuple(labels)
    for n in range(1, max_vertices + 1):
        pairs = [(u, v) for u in range(n) for v in range(u, n)]
        for m in range(max(0, n - 1), max_edges + 1):
            for shape in itertools.combinations_with_replacement(pairs, m):
                skeleton = GbsGraph(n, tuple(GbsEdge(u, v, 1, 1) for u, v in shape))
                if not skeleton.is_connected():
                    continue
                for labs in itertools.product(labels, repeat=2 * m):
                    yield GbsGraph(
                        n, tuple(GbsEdge(u, v, labs[2 * k], labs[2 * k + 1]) for k, (u, v) in enumerate(shape))
                    )
