import random
from collections import Counter

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from artifact.complexbuilder import (
    H1,
    DegenerateCylinder,
    PE2Complex,
    build_pe_complex,
    build_square_complex,
    cells_by_shape,
    classify_case,
    euler_characteristic,
    expected_h1,
    homology_h1,
    iter_autwords,
    meeting_types,
    presentation,
    smith_invariants,
)
from artifact.linkcheck import check_npc
from artifact.matdecomp import AutWord, Mat2Z, parse_autword

ALL = list(iter_autwords(6))


def sympy_invariants(rows):
    d = smith_normal_form(Matrix(rows), domain=ZZ)
    return sorted(abs(d[k, k]) for k in range(min(d.shape)) if d[k, k] != 0)


def test_word_count():
    # body lengths 1..6 over two letters, four tails
    assert len(ALL) == (2 + 4 + 8 + 16 + 32 + 64) * 4 == 504


def test_smith_against_sympy():
    rng = random.Random(11)
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        assert sorted(smith_invariants(rows)) == sympy_invariants(rows), rows


def test_classify_case():
    assert classify_case(parse_autword("λ·ψ₁")) == "case1"
    assert classify_case(parse_autword("rrr.psi2")) == "case1"
    assert classify_case(parse_autword("lr.psi1")) == "case2"
    assert classify_case(parse_autword("lrl.psi4")) == "case2"
    assert classify_case(parse_autword("rl.psi3")) == "case3"
    assert classify_case(parse_autword("llr.psi2")) == "case3"
    assert classify_case(parse_autword("l.psi3")) == "case2"


def test_meetings_all_same_iff_case1():
    for w in ALL:
        assert (set(meeting_types(w)) == {"same"}) == (classify_case(w) == "case1")


@pytest.mark.parametrize("w", ALL[::7], ids=str)
def test_pe_complex(w):
    X = build_pe_complex(w)
    X.validate()
    assert check_npc(X).passed
    assert euler_characteristic(X) == 0
    assert homology_h1(X) == expected_h1(w.realized_matrix())
    assert cells_by_shape(X) == {"rectangle": len(w), "triangle": 2 * len(w)}


def test_pe_complex_all_words():
    for w in ALL:
        X = build_pe_complex(w)
        assert check_npc(X).passed, w
        assert homology_h1(X) == expected_h1(w.realized_matrix()), w


def test_square_examples():
    X = build_square_complex(parse_autword("λλρ·ψ₂"))
    assert X.meta["case"] == "case3" and X.meta["degenerate"] == 1
    assert check_npc(X).passed
    assert homology_h1(X) == H1(1, (6,))
    Y = build_square_complex(parse_autword("λ·ψ₁"))
    assert Y.meta["case"] == "case1" and euler_characteristic(Y) == 0 and check_npc(Y).passed
    Y.validate()


def test_cylinder_words_raise():
    # the degenerate squares of these words close into a cylinder; see the README
    for text in ("rl.psi3", "ll.psi3", "rr.psi4", "llrr.psi1"):
        with pytest.raises(DegenerateCylinder):
            build_square_complex(parse_autword(text))


def test_square_sweep_counts():
    # frozen from the exhaustive sweep; 88 case-3 words hit a degenerate cylinder
    tally = Counter()
    for w in ALL:
        try:
            X = build_square_complex(w)
        except DegenerateCylinder:
            tally[(classify_case(w), "cylinder")] += 1
            continue
        ok = check_npc(X).passed and euler_characteristic(X) == 0
        ok = ok and homology_h1(X) == expected_h1(w.realized_matrix())
        tally[(classify_case(w), ok)] += 1
    assert tally == {("case1", True): 24, ("case2", True): 18, ("case3", True): 374, ("case3", "cylinder"): 88}


def test_square_cells_are_unit_squares():
    for w in ALL[::5]:
        try:
            X = build_square_complex(w).collapse_degenerate()
        except DegenerateCylinder:
            continue
        X.validate()
        assert set(cells_by_shape(X)) == {"square"}


def test_json_round_trip():
    X = build_square_complex(parse_autword("llr.psi2"))
    Y = PE2Complex.from_json(X.to_json())
    assert Y == X
    assert check_npc(Y).to_json() == check_npc(X).to_json()


def test_presentation_relator_count():
    X = build_pe_complex(AutWord("lr", 3))
    gens, rels = presentation(X)
    # rank of pi_1 generators: E - (V - 1)
    assert len(gens) == len(X.edges) - len(X.vertices) + 1
    assert len(rels) == len(X.cells)


def test_expected_h1_matrix_input():
    assert expected_h1(Mat2Z(2, 1, 1, 1)) == H1(1, ())
    assert expected_h1(Mat2Z(1, 1, 0, 1)) == H1(2, ())


def _weighted(g):
    import networkx as nx

    H = nx.MultiGraph()
    H.add_nodes_from(g.nodes)
    for u, v, wt in g.edges:
        H.add_edge(u, v, weight=wt)
    return H


def test_interior_links_have_two_types():
    import networkx as nx

    from artifact.linkcheck import all_links

    same_weights = lambda a, b: sorted(x["weight"] for x in a.values()) == sorted(x["weight"] for x in b.values())
    reps = {}
    for w in iter_autwords(5, 2):
        links = all_links(build_pe_complex(w))
        for i in range(1, len(w)):
            key = "same" if w.body[i - 1] == w.body[i] else "mixed"
            H = _weighted(links[i])
            reps.setdefault(key, H)
            assert nx.is_isomorphic(reps[key], H, edge_match=same_weights), (w, i)
    assert not nx.is_isomorphic(reps["same"], reps["mixed"], edge_match=same_weights)


def test_square_and_pe_homology_agree():
    for w in ALL[::3]:
        try:
            X = build_square_complex(w)
        except DegenerateCylinder:
            continue
        assert homology_h1(X) == homology_h1(build_pe_complex(w)), w


def test_time_edges_form_one_cycle():
    for w in ALL[::11]:
        X = build_pe_complex(w)
        t = [e for e in X.edges if e.label.startswith("t")]
        assert len(t) == len(w)
        v, seen = 0, []
        for _ in range(len(w)):
            (e,) = [e for e in t if e.tail == v]
            seen.append(e.label)
            v = e.head
        assert v == 0 and len(set(seen)) == len(w)


def test_euler_characteristic_small_complexes():
    from fractions import Fraction

    from artifact.complexbuilder import ONE, Cell, Edge

    h = (Fraction(1, 2),) * 4
    disk = PE2Complex(("a", "b", "c", "d"), tuple(Edge(k, (k + 1) % 4, ONE, f"e{k}") for k in range(4)),
                      (Cell(((0, 1), (1, 1), (2, 1), (3, 1)), h, "square"),))
    assert euler_characteristic(disk) == 1
    torus = PE2Complex(("v",), (Edge(0, 0, ONE, "x"), Edge(0, 0, ONE, "y")),
                       (Cell(((0, 1), (1, 1), (0, -1), (1, -1)), h, "square"),))
    assert euler_characteristic(torus) == 0 and homology_h1(torus) == H1(2, ())
