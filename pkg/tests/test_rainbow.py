from __future__ import annotations

import itertools
import json

import pytest

from mcturan import atlas
from mcturan.hypercore import complete, construct
from mcturan.morphisms import enumerate_copies
from mcturan.rainbow import (
    CopyFamily,
    FamilyError,
    blowup_lower_bound,
    count_non_rainbow_copies,
    count_rainbow_copies,
    exact_multicolor_turan,
    find_rainbow_copy,
    trivial_upper_bound,
    validate_family,
)
import oracles

K3 = complete(2, 3)
C5 = construct(2, 5, [(i, (i + 1) % 5) for i in range(5)])


def three_triangles():
    return CopyFamily(6, K3, (((0, 1), (0, 2), (1, 2)), ((2, 3), (2, 4), (3, 4)), ((0, 4), (0, 5), (4, 5))))


def test_rainbow_triangle_found():
    w = find_rainbow_copy(three_triangles(), K3)
    assert w.copy.edges == ((0, 2), (0, 4), (2, 4))
    assert sorted(w.colors) == [0, 1, 2]
    assert count_non_rainbow_copies(three_triangles(), K3) == 3


def test_no_rainbow_in_single_copy():
    fam = CopyFamily(3, K3, (K3.edges,))
    assert find_rainbow_copy(fam, K3) is None
    assert count_rainbow_copies(fam, K3) == 0


def test_validate_overlap_names_pair():
    fam = CopyFamily(4, K3, (((0, 1), (0, 2), (1, 2)), ((0, 1), (0, 3), (1, 3))))
    with pytest.raises(FamilyError, match=r"copies 0 and 1 overlap on edge \(0, 1\)"):
        validate_family(fam)


def test_validate_pattern():
    fam = CopyFamily(4, K3, (((0, 1), (1, 2), (2, 3)),))
    with pytest.raises(FamilyError, match="not isomorphic"):
        validate_family(fam)


def test_family_roundtrip():
    fam = three_triangles()
    assert CopyFamily.from_dict(json.loads(fam.to_json())) == fam
    with pytest.raises(FamilyError):
        CopyFamily.from_dict({"n": 3})


def test_counts_partition_total():
    fam = three_triangles()
    total = oracles.brute_copies(3, K3.edges, 6, fam.union().edges)
    assert count_rainbow_copies(fam, K3) + count_non_rainbow_copies(fam, K3) == len(total) == 4


@pytest.mark.parametrize("n", range(3, 8))
def test_exact_solver_matches_oracle(n):
    res = exact_multicolor_turan(K3, K3, n)
    assert res.exact and res.value == oracles.triangle_exf(n)
    validate_family(res.witness)
    assert len(res.witness) == res.value
    assert find_rainbow_copy(res.witness, K3) is None


def test_solver_budget_interval():
    res = exact_multicolor_turan(K3, K3, 9, node_budget=1)
    assert not res.exact
    lo, hi = res.interval
    assert lo <= 6 <= hi
    assert hi <= trivial_upper_bound(K3, 9)


def test_solver_threads_same_witness():
    a = exact_multicolor_turan(K3, K3, 7, threads=1)
    b = exact_multicolor_turan(K3, K3, 7, threads=3)
    assert a.value == b.value and a.witness == b.witness


def test_blowup_lower_bound():
    lb = blowup_lower_bound(C5, K3, 25)
    assert lb.t == 5 and lb.value == 25
    assert blowup_lower_bound(C5, K3, 5).value == 1
    assert blowup_lower_bound(C5, K3, 4).value == 0
    with pytest.raises(Exception, match="homomorphically"):
        blowup_lower_bound(K3, K3, 6)


def test_expansion_family_has_no_tight_triangle():
    H = construct(4, 8, [(0, 1, 2, 3), (0, 1, 4, 5), (2, 4, 6, 7)])
    _, fam = atlas.expansion(H, 3)
    assert find_rainbow_copy(fam, atlas.tight_triangle(3)) is None


def test_rainbow_equals_brute():
    fam = CopyFamily(7, K3, (((0, 1), (0, 2), (1, 2)), ((1, 3), (1, 4), (3, 4)), ((2, 3), (2, 5), (3, 5)), ((0, 6), (3, 6), (0, 3))))
    validate_family(fam)
    col = fam.colors()
    brute = 0
    for c in oracles.brute_copies(3, K3.edges, 7, fam.union().edges):
        if len({col[e] for e in c}) == 3:
            brute += 1
    assert count_rainbow_copies(fam, K3) == brute


def test_single_fano_has_no_rainbow_fano():
    F = atlas.fano()
    fam = CopyFamily(7, F, (F.edges,))
    assert find_rainbow_copy(fam, F) is None
    assert count_non_rainbow_copies(fam, F) == 1


def test_two_disjoint_triangles():
    fam = CopyFamily(6, K3, (((0, 1), (0, 2), (1, 2)), ((3, 4), (3, 5), (4, 5))))
    assert count_rainbow_copies(fam, K3) == 0
    assert count_non_rainbow_copies(fam, K3) == 2


def test_fano_union_has_no_tight_triangle():
    F = atlas.fano()
    fam = CopyFamily(7, F, (F.edges,))
    assert count_rainbow_copies(fam, atlas.tight_triangle(3)) == 0
    assert count_non_rainbow_copies(fam, atlas.tight_triangle(3)) == 0


def test_exf_monotone_and_bounded():
    from math import comb

    for F, G, ns in ((K3, K3, range(3, 8)), (C5, K3, range(5, 9))):
        vals = []
        for n in ns:
            v = exact_multicolor_turan(F, G, n).value
            assert v * F.e <= comb(n, 2)
            if F is C5:
                assert v >= blowup_lower_bound(F, G, n).value
            vals.append(v)
        assert vals == sorted(vals)
