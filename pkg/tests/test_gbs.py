import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.gbs import (
    Disconnected,
    GbsGraph,
    NotATree,
    NotCollapsible,
    ThetaMap,
    classify,
    collapsible_edges,
    cycle_rank,
    deficiency_one_map,
    elementary_collapse,
    normal_form,
    smallest_prime_factor,
)

G = GbsGraph.make


def test_collapse_examples():
    assert elementary_collapse(G(2, [(0, 1, 1, 2)]), 0) == G(1, [])
    with pytest.raises(NotCollapsible):
        elementary_collapse(G(1, [(0, 0, 1, 2)]), 0)
    with pytest.raises(NotCollapsible):
        elementary_collapse(G(2, [(0, 1, 2, 3)]), 0)


def test_collapse_multiplies_labels_at_absorbed_vertex():
    # u -(1,2)- v -(1,3)- w: the unit end sits at u, and u has no other labels
    g = G(3, [(0, 1, 1, 2), (1, 2, 1, 3)])
    assert elementary_collapse(g, 0) == G(2, [(0, 1, 1, 3)])
    # absorbing a vertex with another edge: h_v = h_x^2 turns label 5 at v into 10
    g = G(3, [(0, 1, 2, 1), (1, 2, 5, 3)])
    assert elementary_collapse(g, 0) == G(2, [(0, 1, 10, 3)])
    # a -1 end also flips the sign
    g = G(3, [(0, 1, 2, -1), (1, 2, 5, 3)])
    assert elementary_collapse(g, 0) == G(2, [(0, 1, -10, 3)])


def test_normal_form_examples():
    assert normal_form(G(3, [(0, 1, 1, -1), (1, 2, 1, 1)])) == G(1, [])
    assert normal_form(G(1, [(0, 0, 1, 3)])) == G(1, [(0, 0, 1, 3)])
    assert normal_form(G(2, [(0, 1, 2, 3)])) == G(2, [(0, 1, 2, 3)])


def test_cycle_rank():
    assert cycle_rank(G(1, [])) == 0
    assert cycle_rank(G(1, [(0, 0, 1, 2)])) == 1
    assert cycle_rank(G(1, [(0, 0, 1, 2), (0, 0, 2, 3)])) == 2


def test_deficiency_one_map():
    assert deficiency_one_map(G(2, [(0, 1, 2, 3)])) == ThetaMap((3, 2))
    assert deficiency_one_map(G(1, [])) == ThetaMap((1,))
    assert deficiency_one_map(G(3, [(0, 1, 2, 4), (1, 2, 3, 6)])) == ThetaMap((4, 2, 1))
    with pytest.raises(NotATree):
        deficiency_one_map(G(1, [(0, 0, 2, 3)]))


def test_classify_examples():
    c = classify(G(1, [(0, 0, 1, 2)]))
    assert c.verdict == "SolubleBS" and c.data["j"] == 2
    c = classify(G(1, [(0, 0, 2, 3)]))
    assert (c.witness, c.data["i"], c.data["j"]) == ("BSQuotient", 2, 3)
    assert classify(G(1, [(0, 0, 2, 3), (0, 0, 5, 7)])).witness == "FreeRankTwo"
    assert classify(G(2, [(0, 1, 2, 2)])).witness == "TreeCase"
    assert classify(G(1, [])).verdict == "InfiniteCyclic"
    c = classify(G(2, [(0, 0, 1, 3), (0, 1, 4, 2)]))
    assert c.witness == "SelfLoopZp" and c.data["p"] == 2 and c.data["edge"] == 1


def test_two_cycle_cut_choice():
    g = G(2, [(0, 1, 2, 3), (0, 1, 2, 5)])
    # default cuts the lowest-index cycle edge
    c = classify(g)
    assert (c.data["i"], c.data["j"], c.data["removed_edge"]) == (10, 6, 0)
    # cutting the other edge gives the pair (6, 10)
    c = classify(g, cut_edge=1)
    assert (c.data["i"], c.data["j"]) == (6, 10) and c.data["theta"] == [3, 2]


def test_soluble_notes_and_signs():
    assert "Z^2" in classify(G(1, [(0, 0, 1, 1)])).data["note"]
    assert "Klein" in classify(G(1, [(0, 0, 1, -1)])).data["note"]
    # BS(-1, n) is BS(1, -n)
    assert classify(G(1, [(0, 0, -1, 3)])).data["j"] == -3
    assert classify(G(1, [(0, 0, 3, 1)])).data["j"] == 3


def test_disconnected():
    with pytest.raises(Disconnected):
        classify(G(2, []))
    with pytest.raises(ValueError):
        G(2, [(0, 1, 0, 2)])


def test_json_and_dot():
    g = G(2, [(0, 1, 2, 3)])
    assert GbsGraph.from_json(g.to_json()) == g
    assert g.to_json() == {"vertices": 2, "edges": [{"u": 0, "v": 1, "lu": 2, "lv": 3}]}
    assert 'taillabel="2"' in g.to_dot() and 'headlabel="3"' in g.to_dot()


def test_smallest_prime_factor():
    assert [smallest_prime_factor(n) for n in (2, 9, -15, 49, 97)] == [2, 3, 3, 7, 97]


labels = st.sampled_from([1, -1, 2, -2, 3, -3, 4, 6])


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 4))
    edges = [(k + 1, draw(st.integers(0, k)), draw(labels), draw(labels)) for k in range(n - 1)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), labels, labels), max_size=2))
    return G(n, [(u, v, a, b) for u, v, a, b in edges] + extra)


@given(graphs())
def test_properties(g):
    c = classify(g)
    for k in collapsible_edges(g):
        h = elementary_collapse(g, k)
        assert cycle_rank(h) == cycle_rank(g)
        c2 = classify(h)
        assert c2.verdict == c.verdict
        if c.verdict == "SolubleBS":
            assert c2.data["j"] == c.data["j"]
    for k, e in enumerate(g.edges):
        flipped = GbsGraph(g.n_vertices, g.edges[:k] + (e.flipped(),) + g.edges[k + 1 :])
        assert classify(flipped).kind == c.kind
        neg = GbsGraph(g.n_vertices, g.edges[:k] + (type(e)(e.u, e.v, -e.lu, -e.lv),) + g.edges[k + 1 :])
        assert classify(neg).kind == c.kind
    if "theta" in c.data:
        skip = [c.data[key] for key in ("removed_edge", "loop_edge") if key in c.data]
        assert ThetaMap(tuple(c.data["theta"])).check(c.normal_form, skip)
    if c.witness == "BSQuotient":
        assert abs(c.data["i"]) >= 2 and abs(c.data["j"]) >= 2
    if c.witness == "SelfLoopZp":
        assert c.data["far_label"] % c.data["p"] == 0
