import itertools
import math
import os
import random
from fractions import Fraction as Fr

import networkx as nx

from artifact.complexbuilder import ONE, Cell, Edge, PE2Complex, build_pe_complex, build_square_complex, iter_autwords
from artifact.linkcheck import (
    LinkGraph,
    all_links,
    check_npc,
    link_to_dot,
    suppress_valence_two,
    vertex_link,
    weighted_girth,
)
from artifact.matdecomp import parse_autword

H = Fr(1, 2)


def brute_girth(g: LinkGraph):
    """Minimum weight over edge sets in which every node has degree 0 or 2 and which are connected."""
    best = math.inf
    E = list(g.edges)
    for r in range(1, len(E) + 1):
        for sub in itertools.combinations(range(len(E)), r):
            deg = {}
            for k in sub:
                u, v, _ = E[k]
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            G = nx.MultiGraph()
            G.add_edges_from((E[k][0], E[k][1]) for k in sub)
            if nx.is_connected(G):
                best = min(best, sum(E[k][2] for k in sub))
    return best


def random_multigraph(rng: random.Random) -> LinkGraph:
    n = rng.randint(1, 8)
    m = rng.randint(0, 12)
    edges = [(rng.randrange(n), rng.randrange(n), Fr(rng.randint(1, 8), rng.randint(1, 4))) for _ in range(m)]
    return LinkGraph(tuple(range(n)), tuple(edges))


def test_girth_examples():
    four = LinkGraph.from_edges([(0, 1, H), (1, 2, H), (2, 3, H), (3, 0, H)])
    assert weighted_girth(four)[0] == 2
    three = LinkGraph.from_edges([(0, 1, H), (1, 2, H), (2, 0, H)])
    assert weighted_girth(three)[0] == Fr(3, 2)
    par = LinkGraph.from_edges([(0, 1, Fr(1)), (0, 1, H)])
    assert weighted_girth(par)[0] == Fr(3, 2) and sorted(weighted_girth(par)[1]) == [0, 1]
    tree = LinkGraph.from_edges([(0, 1, H), (1, 2, H)])
    assert weighted_girth(tree) == (math.inf, [])


def test_girth_against_enumeration():
    rng = random.Random(int(os.environ.get("TOOLKIT_SEED", "0")) + 1)
    for _ in range(150):
        g = random_multigraph(rng)
        length, cyc = weighted_girth(g)
        assert length == brute_girth(g)
        if cyc:
            assert sum(g.edges[k][2] for k in cyc) == length


def test_girth_against_networkx_cycles_on_simple_graphs():
    rng = random.Random(5)
    for _ in range(100):
        G = nx.gnm_random_graph(rng.randint(3, 8), rng.randint(2, 12), seed=rng.randint(0, 10**6))
        for u, v in G.edges:
            G[u][v]["weight"] = Fr(rng.randint(1, 9), 4)
        g = LinkGraph(tuple(G.nodes), tuple((u, v, G[u][v]["weight"]) for u, v in G.edges))
        want = min(
            (sum(G[c[k]][c[(k + 1) % len(c)]]["weight"] for k in range(len(c))) for c in nx.simple_cycles(G)),
            default=math.inf,
        )
        assert weighted_girth(g)[0] == want


def test_subdivision_invariance():
    rng = random.Random(9)
    for _ in range(60):
        g = random_multigraph(rng)
        if not g.edges:
            continue
        k = rng.randrange(len(g.edges))
        u, v, w = g.edges[k]
        if u == v:
            continue
        split = w * Fr(rng.randint(1, 4), 5)
        edges = list(g.edges[:k]) + list(g.edges[k + 1 :]) + [(u, "mid", split), ("mid", v, w - split)]
        assert weighted_girth(LinkGraph(g.nodes + ("mid",), tuple(edges)))[0] == weighted_girth(g)[0]


def single_square() -> PE2Complex:
    edges = tuple(Edge(k, (k + 1) % 4, ONE, f"e{k}") for k in range(4))
    cell = Cell(tuple((k, 1) for k in range(4)), (H,) * 4, "square", "S")
    return PE2Complex(("v0", "v1", "v2", "v3"), edges, (cell,), kind="square")


def squares_around_vertex(n: int) -> PE2Complex:
    # centre 0, spoke ends 1..n, outer corners n+1..2n
    verts = ["c"] + [f"s{k}" for k in range(n)] + [f"o{k}" for k in range(n)]
    edges = [Edge(0, 1 + k, ONE, f"spoke{k}") for k in range(n)]
    edges += [Edge(1 + k, 1 + n + k, ONE, f"r{k}") for k in range(n)]
    edges += [Edge(1 + n + k, 1 + (k + 1) % n, ONE, f"q{k}") for k in range(n)]
    cells = [
        Cell(((k, 1), (n + k, 1), (2 * n + k, 1), ((k + 1) % n, -1)), (H,) * 4, "square", f"S{k}") for k in range(n)
    ]
    return PE2Complex(tuple(verts), tuple(edges), tuple(cells), kind="square")


def test_check_npc_examples():
    rep = check_npc(single_square())
    assert rep.passed and rep.exact
    assert all(g.edges and weighted_girth(g)[0] == math.inf for g in all_links(single_square()).values())
    bad = check_npc(squares_around_vertex(3))
    assert not bad.passed
    (f,) = bad.failures
    assert f.name == "c" and f.girth == Fr(3, 2) and len(f.circuit) == 3
    assert check_npc(squares_around_vertex(4)).passed
    plane = vertex_link(squares_around_vertex(4), 0)
    assert sorted(w for _, _, w in plane.edges) == [H] * 4 and weighted_girth(plane)[0] == 2


def test_float_mode_flags_borderline():
    rep = check_npc(squares_around_vertex(4), exact=False)
    assert rep.passed and not rep.exact
    assert rep.vertices[0].borderline
    assert not check_npc(squares_around_vertex(3), exact=False).passed


def test_relabelling_invariance():
    X = build_square_complex(parse_autword("llr.psi2")).collapse_degenerate()
    rng = random.Random(3)
    perm = list(range(len(X.vertices)))
    rng.shuffle(perm)
    inv = {old: new for new, old in enumerate(perm)}
    eperm = list(range(len(X.edges)))
    rng.shuffle(eperm)
    einv = {old: new for new, old in enumerate(eperm)}
    edges = tuple(
        Edge(inv[X.edges[old].tail], inv[X.edges[old].head], X.edges[old].length, X.edges[old].label) for old in eperm
    )
    cells = tuple(Cell(tuple((einv[e], s) for e, s in c.boundary), c.angles, c.shape, c.label) for c in X.cells)
    Y = PE2Complex(tuple(X.vertices[p] for p in perm), edges, cells, X.word, X.kind)
    a = sorted((r.name, r.girth, r.passed) for r in check_npc(X).vertices)
    b = sorted((r.name, r.girth, r.passed) for r in check_npc(Y).vertices)
    assert a == b


def _nx(g: LinkGraph) -> nx.MultiGraph:
    G = nx.MultiGraph()
    G.add_nodes_from(g.nodes)
    for u, v, w in g.edges:
        G.add_edge(u, v, weight=w)
    return G


def test_time_zero_pe_link_is_tetrahedron():
    K4 = nx.complete_graph(4)
    for w in iter_autwords(6):
        g = suppress_valence_two(vertex_link(build_pe_complex(w), 0))
        assert len(g.nodes) == 4 and len(g.edges) == 6
        assert nx.is_isomorphic(nx.Graph(_nx(g)), K4) and nx.number_of_edges(nx.Graph(_nx(g))) == 6


def test_link_fingerprint_is_time_symmetric():
    # lambda lambda psi_1 is invariant under shifting time, so both vertex links agree
    X = build_square_complex(parse_autword("ll.psi1"))
    links = list(all_links(X).values())
    assert len(links) >= 2
    same_weights = lambda a, b: sorted(x["weight"] for x in a.values()) == sorted(x["weight"] for x in b.values())
    assert nx.is_isomorphic(_nx(links[0]), _nx(links[1]), edge_match=same_weights)
    assert check_npc(X).passed


def test_dot_export():
    g = vertex_link(squares_around_vertex(4), 0)
    dot = link_to_dot(g, "centre")
    assert dot.startswith('graph "centre" {') and dot.count("--") == 4 and "1/2pi" in dot
