from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from mcturan import atlas
from mcturan.classifier import (
    bounds_report,
    check_odd_partition,
    classify,
    exact_turan,
    find_independent_transversal,
    is_bipartite,
    is_odd,
    odd_obstruction,
    recheck_verdict,
)
from mcturan.hypercore import UniformityMismatch, VertexPartition, complete, construct
from mcturan.morphisms import chromatic_number, contains_copy
import oracles

K3 = complete(2, 3)
C5 = construct(2, 5, [(i, (i + 1) % 5) for i in range(5)])


def test_bipartite_examples():
    P = is_bipartite(complete(3, 4))
    assert P.same_as(VertexPartition(4, ({0, 1}, {2, 3})))
    assert is_bipartite(complete(3, 5)) is None
    assert is_bipartite(atlas.fano()) is None


@pytest.mark.parametrize("seed", range(30))
def test_bipartite_vs_brute(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    es = list(itertools.combinations(range(n), 3))
    rng.shuffle(es)
    H = construct(3, n, es[: rng.randint(1, 12)])
    P = is_bipartite(H)
    assert (P is not None) == bool(oracles.brute_two_colourings(n, H.edges))
    assert (P is not None) == (chromatic_number(H, "weak")[0] <= 2)


def test_odd_examples():
    P = is_odd(atlas.odd_split(4, 8, 2))
    assert P.same_as(atlas.odd_split_partition(8, 2))
    assert is_odd(atlas.extended_triangle(2)) is None
    assert is_odd(complete(4, 5)) is None
    with pytest.raises(Exception):
        is_odd(complete(3, 4))


@pytest.mark.parametrize("seed", range(30))
def test_odd_vs_brute(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 8)
    es = list(itertools.combinations(range(n), 4))
    rng.shuffle(es)
    H = construct(4, n, es[: rng.randint(1, 8)])
    P = is_odd(H)
    assert (P is not None) == bool(oracles.brute_odd_partitions(n, H.edges))
    if P is not None:
        assert check_odd_partition(H, P)
    else:
        cert = odd_obstruction(H)
        assert len(cert) % 2 == 1


def test_transversal():
    S = find_independent_transversal(construct(3, 6, [(0, 1, 2), (3, 4, 5)]))
    assert len(S) == 2 and len({x // 3 for x in S}) == 2
    assert len(find_independent_transversal(construct(3, 3, [(0, 1, 2)]))) == 1
    assert find_independent_transversal(complete(3, 4)) is None
    assert oracles.brute_transversals(4, complete(3, 4).edges) == []


@pytest.mark.parametrize("seed", range(20))
def test_transversal_vs_brute(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    es = list(itertools.combinations(range(n), 3))
    rng.shuffle(es)
    H = construct(3, n, es[: rng.randint(1, 6)])
    S = find_independent_transversal(H)
    assert (S is not None) == bool(oracles.brute_transversals(n, H.edges))


@pytest.mark.parametrize("n", range(2, 7))
def test_turan_triangle_vs_brute(n):
    res = exact_turan(K3, n)
    best, ext = oracles.brute_turan(2, n, oracles.has_triangle)
    assert res.value == best
    classes = {oracles.canonical(n, es) for es in ext}
    assert len(res.extremals) == len(classes)
    assert {oracles.canonical(n, H.edges) for H in res.extremals} == classes


@pytest.mark.parametrize("n", range(3, 7))
def test_turan_c5_vs_brute(n):
    res = exact_turan(C5, n)

    def has_c5(es):
        return bool(oracles.brute_copies(5, C5.edges, n, es)) if n >= 5 else False

    best, ext = oracles.brute_turan(2, n, has_c5)
    assert res.value == best
    assert len(res.extremals) == len({oracles.canonical(n, es) for es in ext})


def test_turan_examples():
    r = exact_turan(K3, 5)
    assert r.value == 6 and len(r.extremals) == 1
    assert sorted(r.extremals[0].degrees) == [2, 2, 2, 3, 3]
    assert exact_turan(K3, 2).value == 1
    assert exact_turan(atlas.near_edge_fan(3, 2), 4).value == 1
    assert [exact_turan(K3, n).value for n in (6, 8, 9, 10)] == [9, 16, 20, 25]


def test_turan_hypergraph_vs_brute():
    G = complete(3, 4)
    for n in (4, 5):
        best, _ = oracles.brute_turan(3, n, lambda es: bool(oracles.brute_copies(4, G.edges, n, es)))
        assert exact_turan(G, n).value == best


def test_turan_labeled():
    r = exact_turan(K3, 4)
    lab = r.labeled_extremals()
    assert len(lab) == 3
    assert all(not contains_copy(K3, H) and H.e == 4 for H in lab)


def test_turan_budget():
    r = exact_turan(complete(3, 4), 7, node_budget=50)
    assert not r.exact and r.lower <= 23 <= r.upper


@pytest.mark.parametrize(
    "F,target,verdict",
    [
        (complete(3, 5), "fano", "fails"),
        (complete(3, 6), "fano", "fails"),
        (complete(3, 4), "book3", "fails"),
        (complete(4, 5), "book4", "fails"),
        (complete(4, 6), "book4", "fails"),
        (complete(3, 4), "fano", "attains"),
        (construct(3, 6, [(0, 1, 2), (3, 4, 5)]), "book3", "attains"),
        (atlas.odd_split(4, 8, 2), "book4", "attains"),
        (atlas.extended_triangle(2), "c3", "fails"),
    ],
)
def test_classify(F, target, verdict):
    v = classify(F, target)
    assert v.verdict == verdict
    assert recheck_verdict(F, v)


def test_classify_uniformity():
    with pytest.raises(UniformityMismatch):
        classify(complete(4, 5), "fano")
    with pytest.raises(UniformityMismatch):
        classify(complete(4, 5), "c3", k=3)
    assert classify(complete(4, 5), "c3", k=2).target == "extendedTriangle(2)"


def test_report_c5_k3():
    r = bounds_report(C5, K3, 5)
    assert r.ex_turan == 6 and r.upper13 == Fraction(6, 5) and r.lower13 == 1
    assert r.exF == 2
    assert all(p <= r.upper13 for p in r.packing_per_extremal)


def test_report_k3_k3():
    r = bounds_report(K3, K3, 3)
    assert r.ex_turan == 2 and r.upper13 == Fraction(2, 3) and r.exF == 1
    assert r.degenerate
    assert any("not binding" in s for s in r.notes)
    assert any("degenerate" in s for s in r.notes)


def test_report_corollary_fields():
    P3 = construct(2, 3, [(0, 1), (1, 2)])
    r = bounds_report(P3, K3, 6, exf_budget=0)
    assert r.corollary["formula"] == "9/2"
    assert r.corollary["chi_G_exceeds_chi_F"]
    assert r.exF is None
