"""Vertex links of piecewise-Euclidean 2-complexes and the link condition.

A 2-complex is non-positively curved exactly when no vertex link contains
an essential circuit shorter than ``2*pi``.  Links are weighted multigraphs:
one node per edge-end at the vertex and one edge per cell corner, weighted
by the corner angle.

Angles are measured in units of ``pi``.  When every weight is a
:class:`~fractions.Fraction` the check is exact; otherwise weights are
treated as floats and compared with a tolerance.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

__all__ = [
    "LinkGraph",
    "weighted_girth",
    "vertex_link",
    "all_links",
    "check_npc",
    "NPCReport",
    "VertexReport",
    "suppress_valence_two",
    "link_to_dot",
]

Weight = Fraction | float


@dataclass(frozen=True)
class LinkGraph:
    """Weighted multigraph.  ``edges`` holds ``(u, v, weight)`` triples."""

    nodes: tuple[Hashable, ...]
    edges: tuple[tuple[Hashable, Hashable, Weight], ...]

    def __post_init__(self) -> None:
        known = set(self.nodes)
        for u, v, w in self.edges:
            if u not in known or v not in known:
                raise ValueError(f"edge ({u}, {v}) uses an unknown node")
            if not w > 0:
                raise ValueError("link weights must be positive")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Hashable, Hashable, Weight]]) -> "LinkGraph":
        edges = tuple(edges)
        nodes = tuple(dict.fromkeys(x for u, v, _ in edges for x in (u, v)))
        return cls(nodes, edges)

    def degree(self, x: Hashable) -> int:
        return sum((u == x) + (v == x) for u, v, _ in self.edges)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(w, (Fraction, int)) for _, _, w in self.edges)


def weighted_girth(g: LinkGraph) -> tuple[Weight, list[int]]:
    """Length of the shortest essential circuit and its edge indices.

    For each edge ``(u, v, w)`` the shortest ``u``-``v`` path avoiding that
    edge closes a circuit of length ``w + dist``; loops are circuits on
    their own and a pair of parallel edges is a two-edge circuit.  Returns
    ``(math.inf, [])`` for a forest.
    """
    adj: dict[Hashable, list[tuple[Hashable, Weight, int]]] = {x: [] for x in g.nodes}
    for k, (u, v, w) in enumerate(g.edges):
        adj[u].append((v, w, k))
        if u != v:
            adj[v].append((u, w, k))

    best: Weight = math.inf
    best_cycle: list[int] = []
    for k, (u, v, w) in enumerate(g.edges):
        if w >= best:
            continue
        if u == v:
            best, best_cycle = w, [k]
            continue
        dist, via = _dijkstra(adj, u, skip=k, bound=best - w)
        if v in dist and w + dist[v] < best:
            best = w + dist[v]
            path = []
            x = v
            while x != u:
                e = via[x]
                path.append(e)
                a, b, _ = g.edges[e]
                x = a if b == x else b
            best_cycle = [k] + path[::-1]
    return best, best_cycle


def _dijkstra(adj, src, skip: int, bound):
    dist = {src: 0}
    via: dict[Hashable, int] = {}
    tie = itertools.count()
    heap = [(0, next(tie), src)]
    while heap:
        d, _, x = heapq.heappop(heap)
        if d > dist[x] or d >= bound:
            continue
        for y, w, k in adj[x]:
            if k == skip:
                continue
            nd = d + w
            if y not in dist or nd < dist[y]:
                dist[y] = nd
                via[y] = k
                heapq.heappush(heap, (nd, next(tie), y))
    return dist, via


def _effective(X: Any) -> Any:
    # degenerate cells are resolved by identification before links are read
    collapse = getattr(X, "collapse_degenerate", None)
    return collapse() if collapse is not None else X


def _corners(X: Any):
    """Yield ``(vertex, arriving_end, departing_end, angle)`` for every corner."""
    for cell in X.cells:
        bd = cell.boundary
        for k, (e, s) in enumerate(bd):
            pe, ps = bd[k - 1]
            arrive = (pe, 1) if ps == 1 else (pe, 0)
            depart = (e, 0) if s == 1 else (e, 1)
            edge = X.edges[e]
            v = edge.tail if s == 1 else edge.head
            yield v, arrive, depart, cell.angles[k]


def all_links(X: Any) -> dict[Hashable, LinkGraph]:
    """Links of every vertex.  Nodes are ``(edge_index, end)`` with end 0 = tail."""
    X = _effective(X)
    corner_edges: dict[Hashable, list] = {v: [] for v in range(len(X.vertices))}
    for v, a, b, w in _corners(X):
        corner_edges[v].append((a, b, w))
    out = {}
    for v in corner_edges:
        ends = []
        for k, e in enumerate(X.edges):
            if e.tail == v:
                ends.append((k, 0))
            if e.head == v:
                ends.append((k, 1))
        out[v] = LinkGraph(tuple(ends), tuple(corner_edges[v]))
    return out


def vertex_link(X: Any, v: int) -> LinkGraph:
    return all_links(X)[v]


@dataclass
class VertexReport:
    vertex: int
    name: str
    girth: Weight
    passed: bool
    circuit: list[tuple[Hashable, Hashable, Weight]] = field(default_factory=list)
    borderline: bool = False

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "name": self.name,
            "girth": _fmt_weight(self.girth),
            "passed": self.passed,
            "borderline": self.borderline,
            "circuit": [[list(u), list(v), _fmt_weight(w)] for u, v, w in self.circuit],
        }


@dataclass
class NPCReport:
    passed: bool
    exact: bool
    vertices: list[VertexReport]

    @property
    def failures(self) -> list[VertexReport]:
        return [r for r in self.vertices if not r.passed]

    @property
    def min_girth(self) -> Weight:
        return min((r.girth for r in self.vertices), default=math.inf)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "exact": self.exact,
            "min_girth": _fmt_weight(self.min_girth),
            "vertices": [r.to_json() for r in self.vertices],
        }


def _fmt_weight(w: Weight) -> Any:
    # girths are reported in units of pi
    if w == math.inf:
        return "inf"
    if isinstance(w, Fraction):
        return {"num": w.numerator, "den": w.denominator}
    return float(w)


def check_npc(X: Any, exact: bool | None = None, tol: float = 1e-9) -> NPCReport:
    """Check the link condition at every vertex of ``X``.

    Parameters
    ----------
    X : complex
        Object with ``vertices``, ``edges`` (``tail``/``head``) and ``cells``
        (``boundary``/``angles``), e.g. a ``PE2Complex``.
    exact : bool, optional
        Force exact (Fraction) or float comparison.  By default exact
        arithmetic is used whenever all angles are rational.
    tol : float
        Tolerance in radians for the float mode.  Results within ``tol`` of
        ``2*pi`` are flagged as borderline.
    """
    X = _effective(X)
    links = all_links(X)
    if exact is None:
        exact = all(g.is_exact for g in links.values())
    reports = []
    for v, g in links.items():
        if not exact:
            g = LinkGraph(g.nodes, tuple((a, b, float(w)) for a, b, w in g.edges))
        girth, cyc = weighted_girth(g)
        if exact:
            ok, border = girth >= 2, False
        else:
            gap = (girth - 2) * math.pi if girth != math.inf else math.inf
            ok, border = gap >= -tol, abs(gap) <= tol
        name = X.vertices[v] if hasattr(X, "vertices") else str(v)
        reports.append(VertexReport(v, str(name), girth, ok, [g.edges[k] for k in cyc] if not ok else [], border))
    return NPCReport(all(r.passed for r in reports), exact, reports)


def suppress_valence_two(g: LinkGraph) -> LinkGraph:
    """Merge the two edges at each valence-2 node (for display and shape checks)."""
    edges = list(g.edges)
    nodes = list(g.nodes)
    changed = True
    while changed:
        changed = False
        for x in nodes:
            inc = [k for k, (u, v, _) in enumerate(edges) if x in (u, v)]
            if len(inc) != 2 or any(edges[k][0] == edges[k][1] for k in inc):
                continue
            (u1, v1, w1), (u2, v2, w2) = edges[inc[0]], edges[inc[1]]
            y = u1 if v1 == x else v1
            z = u2 if v2 == x else v2
            edges = [e for k, e in enumerate(edges) if k not in inc] + [(y, z, w1 + w2)]
            nodes.remove(x)
            changed = True
            break
    return LinkGraph(tuple(nodes), tuple(edges))


def link_to_dot(g: LinkGraph, name: str = "link", labels: Sequence[str] | None = None) -> str:
    """Graphviz source for a link with angles (in units of pi) as edge labels."""
    ids = {x: f"n{k}" for k, x in enumerate(g.nodes)}
    lines = [f"graph {_dot_id(name)} {{"]
    for k, x in enumerate(g.nodes):
        label = labels[k] if labels else str(x)
        lines.append(f'  {ids[x]} [label="{label}"];')
    for u, v, w in g.edges:
        lines.append(f'  {ids[u]} -- {ids[v]} [label="{w}pi"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace('"', "'") + '"'
