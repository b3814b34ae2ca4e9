from __future__ import annotations

import itertools
from math import comb

import pytest

from mcturan import atlas
from mcturan.hypercore import HypergraphError, construct
from mcturan.morphisms import enumerate_copies, is_isomorphic
from mcturan.rainbow import validate_family


def test_fano():
    F = atlas.fano()
    assert (F.n, F.e, F.k) == (7, 7, 3)
    for a, b in itertools.combinations(F.edges, 2):
        assert len(set(a) & set(b)) == 1
    assert F.degrees == (3,) * 7


def test_extended_triangle():
    T = atlas.extended_triangle(2)
    assert T.edges == ((0, 1, 2, 3), (0, 1, 4, 5), (2, 3, 4, 5))
    T3 = atlas.extended_triangle(3)
    assert (T3.k, T3.n, T3.e) == (6, 9, 3)


def test_book():
    B = atlas.book(3)
    assert (B.n, B.e) == (5, 4)
    assert (2, 3, 4) in B.edge_set
    pages = [e for e in B.edges if e != (2, 3, 4)]
    assert all(e[:2] == (0, 1) for e in pages)
    with pytest.raises(HypergraphError):
        atlas.book(1)


def test_near_edge_fan():
    H = atlas.near_edge_fan(3, 3)
    assert is_isomorphic(H, atlas.tight_triangle(3))
    assert atlas.near_edge_fan(3, 4).e == 4
    with pytest.raises(HypergraphError):
        atlas.near_edge_fan(3, 5)


def test_crossing_split():
    H = atlas.crossing_split(6)
    assert H.e == comb(6, 3) - 2 * comb(3, 3) == 18
    P = atlas.crossing_split_partition(7)
    assert [len(p) for p in P.parts] == [3, 4]


def test_two_thirds():
    assert atlas.two_thirds_split(7, 5).e == comb(5, 2) * 2 == 20
    assert atlas.two_thirds_window(9) == [6]
    with pytest.raises(HypergraphError):
        atlas.two_thirds_split(7, 3)


def brute_odd_count(k, n, xs):
    X = set(range(xs))
    return sum(1 for e in itertools.combinations(range(n), k) if len(X & set(e)) % 2 == 1 and (k - len(X & set(e))) % 2 == 1)


def test_odd_split_default_t():
    H = atlas.odd_split(4, 8)
    assert H.e == 40
    assert atlas.odd_split_best_t(4, 8) == 2
    best = max(range(0, 5), key=lambda t: (brute_odd_count(4, 8, 4 - t), -t))
    assert best == 2
    with pytest.raises(HypergraphError):
        atlas.odd_split(3, 8)


@pytest.mark.parametrize("n,t", [(6, 0), (7, 1), (8, 2), (9, 3)])
def test_odd_split_partition(n, t):
    H = atlas.odd_split(4, n, t)
    X, Y = atlas.odd_split_partition(n, t).parts
    assert H.e == brute_odd_count(4, n, n // 2 - t)
    for e in H.edges:
        assert len(X & set(e)) % 2 == 1 and len(Y & set(e)) % 2 == 1


def test_turan_graph():
    T = atlas.turan_graph(5, 2)
    assert T.e == 6
    assert atlas.turan_graph(9, 2).e == 20


def test_make_named():
    assert atlas.make_named("complete", k=3, s=4).e == 4
    assert atlas.make_named(atlas.NamedConstruction("oddSplit", {"k": 4, "n": 8})).e == 40
    assert atlas.make_named("completeMultipartite", k=2, sizes=[1, 2]).e == 2
    with pytest.raises(HypergraphError):
        atlas.make_named("fano", k=3)
    with pytest.raises(HypergraphError):
        atlas.make_named("book")
    with pytest.raises(HypergraphError):
        atlas.make_named("nope")


def test_deterministic():
    for name, params in [("fano", {}), ("book", {"k": 4}), ("oddSplit", {"k": 4, "n": 9}), ("crossingSplit", {"n": 8})]:
        assert atlas.make_named(name, **params) == atlas.make_named(name, **params)


def test_expansion_single():
    Hs, fam = atlas.expansion(construct(4, 4, [(0, 1, 2, 3)]), 3)
    assert Hs == atlas.complete(3, 4) and len(fam) == 1


def test_expansion_two_blocks():
    H = construct(4, 6, [(0, 1, 2, 3), (0, 1, 4, 5)])
    Hs, fam = atlas.expansion(H, 3)
    assert Hs.e == 8 and len(fam) == 2
    validate_family(fam)
    sub = [set(itertools.combinations(e, 3)) for e in H.edges]
    assert not (sub[0] & sub[1])


def test_expansion_overlap_error():
    H = construct(4, 5, [(0, 1, 2, 3), (0, 1, 2, 4)])
    with pytest.raises(HypergraphError, match=r"\(0, 1, 2, 3\).*\(0, 1, 2, 4\)"):
        atlas.expansion(H, 3)
    with pytest.raises(HypergraphError):
        atlas.expansion(H, 4)


def test_expansion_copies_are_complete():
    H = construct(5, 9, [(0, 1, 2, 3, 4), (0, 5, 6, 7, 8), (1, 5, 2, 6, 3)])
    with pytest.raises(HypergraphError):
        atlas.expansion(H, 2)
    Hs, fam = atlas.expansion(H, 4)
    K = atlas.complete(4, 5)
    for c in fam.copies:
        assert is_isomorphic(c.as_hypergraph(4), K)
    assert len(enumerate_copies(K, Hs)) >= 3
