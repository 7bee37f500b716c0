import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.endo import (
    PeriodicWitness,
    RankNotTwo,
    analyze,
    cyclic_words,
    is_immersion,
    periodic_conjugacy_search,
    sap_certificate,
    stallings_surjectivity,
)
from artifact.freegroup import (
    LAMBDA,
    PSI,
    RHO,
    Endomorphism,
    Word,
    abelianization,
    apply_endo,
    compose,
    cyclically_reduce,
    identity,
    invert,
    parse_word,
    power,
)

E = Endomorphism.from_strings
SAPIR = E(["ab", "ba"])


def all_reduced(rank, maxlen):
    gens = [s * (i + 1) for i in range(rank) for s in (1, -1)]
    for n in range(maxlen + 1):
        for xs in itertools.product(gens, repeat=n):
            if all(xs[k] != -xs[k + 1] for k in range(n - 1)):
                yield Word(rank, xs)


def length2_maps():
    for a, b in itertools.product(itertools.product([1, -1, 2, -2], repeat=2), repeat=2):
        ima, imb = Word(2, a), Word(2, b)
        if len(ima) == 2 and len(imb) == 2:
            yield Endomorphism(2, (ima, imb))


def test_immersion_examples():
    assert is_immersion(SAPIR)
    assert is_immersion(identity(2))
    assert not is_immersion(E(["ab", "Ba"]))
    with pytest.raises(ValueError):
        is_immersion(E(["", "b"]))


def test_surjectivity_examples():
    assert stallings_surjectivity(E(["ab", "b"]))
    assert not stallings_surjectivity(SAPIR)
    assert not stallings_surjectivity(E(["aa", "b"]))
    assert stallings_surjectivity(E(["bab", "ab"]))
    assert stallings_surjectivity(compose(LAMBDA, compose(RHO, PSI[4])))


def _in_subgroup_brute(gens, target, depth):
    # breadth-first products of generators and inverses
    frontier = {Word(2)}
    letters = list(gens) + [invert(g) for g in gens]
    for _ in range(depth):
        if target in frontier:
            return True
        frontier = {w * g for w in frontier for g in letters}
    return target in frontier


def test_surjectivity_against_brute_force():
    # onto iff a and b lie in the image; products of up to 4 generators decide short images
    images = [w for w in all_reduced(2, 2) if len(w)]
    a, b = parse_word("a"), parse_word("b")
    for x, y in itertools.product(images, repeat=2):
        theta = Endomorphism(2, (x, y))
        brute = _in_subgroup_brute((x, y), a, 4) and _in_subgroup_brute((x, y), b, 4)
        if brute:
            assert stallings_surjectivity(theta), theta
        if stallings_surjectivity(theta):
            assert abs(_det(theta)) == 1


def _det(theta):
    (p, q), (r, s) = abelianization(theta)
    return p * s - q * r


def test_periodic_examples():
    assert periodic_conjugacy_search(identity(2), 1, 1) == PeriodicWitness(parse_word("a"), 1, 1)
    assert periodic_conjugacy_search(E(["aa", "bb"]), 1, 1) == PeriodicWitness(parse_word("a"), 1, 2)
    assert periodic_conjugacy_search(SAPIR, 8, 3) is None
    with pytest.raises(ValueError):
        periodic_conjugacy_search(SAPIR, 0, 1)


def _brute_periodic(theta, maxlen, maxpow):
    found = []
    for w in all_reduced(2, maxlen):
        if not len(w) or cyclically_reduce(w)[0] != w:
            continue
        img = w
        for i in range(1, maxpow + 1):
            img = apply_endo(theta, img)
            core = cyclically_reduce(img)[0]
            for j in range(1, len(core) + 1):
                rot = power(w, j)
                if len(rot) == len(core) and any(
                    core.letters == rot.letters[k:] + rot.letters[:k] for k in range(len(rot))
                ):
                    found.append((len(w), i))
    return min(found) if found else None


def test_periodic_against_brute_force():
    for theta in list(length2_maps())[::5]:
        wit = periodic_conjugacy_search(theta, 3, 2)
        brute = _brute_periodic(theta, 3, 2)
        assert (wit is None) == (brute is None), theta
        if wit is not None:
            assert (len(wit.w), wit.i) == brute
            assert wit.verify(theta)


def test_length_forcing_agrees():
    for theta in length2_maps():
        if not is_immersion(theta):
            continue
        a = periodic_conjugacy_search(theta, 4, 2)
        b = periodic_conjugacy_search(theta, 4, 2, force_length=True)
        assert a == b, theta


def test_jobs_do_not_change_output():
    theta = E(["ab", "aB"])
    assert periodic_conjugacy_search(theta, 4, 2, jobs=2) == periodic_conjugacy_search(theta, 4, 2)


def test_cyclic_words_are_canonical_classes():
    for n in range(1, 6):
        classes = {
            frozenset(w.letters[k:] + w.letters[:k] for k in range(n))
            for w in all_reduced(2, n)
            if len(w) == n and cyclically_reduce(w)[0] == w
        }
        ws = cyclic_words(2, n)
        assert len(ws) == len(set(ws)) == len(classes)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=10))
def test_immersion_length_additive(xs):
    w = Word(2, tuple(xs))
    for theta in (SAPIR, E(["aab", "ba"]), E(["a", "b"])):
        assert is_immersion(theta)
        assert len(theta(w)) == sum(len(theta.images[abs(x) - 1]) for x in w.letters)


def test_immersion_closed_under_composition():
    for theta in length2_maps():
        if is_immersion(theta):
            assert is_immersion(compose(theta, theta))


def test_certificates():
    c = sap_certificate(SAPIR)
    assert c.verdict == "WordHyperbolicIrreducibleLinear"
    statuses = [s["status"] for s in c.steps]
    assert statuses.count("assumed-theorem") == 3 and "verified" in statuses
    assert any("appearances" in s["detail"] for s in c.steps)
    c = sap_certificate(E(["aa", "bb"]))
    assert c.verdict == "PeriodicFound" and str(c.witness) == "(a, 1, 2)"
    c = sap_certificate(E(["ab", "b"]))
    assert (c.verdict, c.reasons) == ("NotApplicable", ["surjective"])
    c = sap_certificate(identity(2))
    assert c.verdict == "NotApplicable"
    with pytest.raises(RankNotTwo):
        sap_certificate(identity(3))


def test_certificate_monotone_in_bound():
    for theta in length2_maps():
        small = sap_certificate(theta, 2, 4)
        if small.verdict == "WordHyperbolicIrreducibleLinear":
            assert sap_certificate(theta, 5, 4).verdict == "WordHyperbolicIrreducibleLinear", theta


def test_analysis_report():
    rep = analyze(SAPIR, 4, 2)
    assert rep.is_immersion and rep.uniform_length == 2 and rep.balanced_letter_counts
    assert not rep.is_surjective and rep.injective == "yes"
    assert rep.to_json()["periodic_witness"] is None
