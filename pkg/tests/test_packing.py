from __future__ import annotations

from fractions import Fraction

import pytest

from mcturan import atlas
from mcturan.hypercore import blowup, complete, construct
from mcturan.morphisms import enumerate_copies
from mcturan.packing import (
    check_packing,
    fractional_packing,
    integral_packing,
    packing_number_of_complete,
    uniform_count_check,
)
import oracles

K3 = complete(2, 3)
C5 = construct(2, 5, [(i, (i + 1) % 5) for i in range(5)])
P3 = construct(2, 3, [(0, 1), (1, 2)])


def test_k3_in_k4():
    assert integral_packing(K3, complete(2, 4)).value == 1
    assert fractional_packing(K3, complete(2, 4)).value == 2


def test_blowup_packing_and_dual():
    H = blowup(K3, 2)
    sol = integral_packing(K3, H)
    assert sol.value == 4 and check_packing(K3, H, sol.copies)
    frac = fractional_packing(K3, H)
    assert frac.value == 4 and frac.check(K3, H)


@pytest.mark.parametrize(
    "F,H",
    [
        (K3, complete(2, 5)),
        (K3, complete(2, 6)),
        (K3, complete(2, 7)),
        (P3, complete(2, 5)),
        (C5, complete(2, 6)),
        (atlas.tight_triangle(3), complete(3, 5)),
        (complete(3, 4), complete(3, 6)),
        (P3, atlas.turan_graph(5, 2)),
    ],
)
def test_integral_matches_brute(F, H):
    sol = integral_packing(F, H)
    assert check_packing(F, H, sol.copies) and len(sol.copies) == sol.value
    assert sol.value == oracles.max_disjoint(oracles.brute_copies(F.n, F.edges, H.n, H.edges))


def test_known_values():
    assert integral_packing(K3, complete(2, 9)).value == 12
    assert integral_packing(C5, blowup(C5, 5)).value == 25


def test_symmetry_off_agrees():
    H = complete(2, 7)
    assert integral_packing(K3, H, symmetry=False).value == integral_packing(K3, H).value == 7


def test_threads_agree():
    H = complete(2, 8)
    a = integral_packing(K3, H, threads=1)
    b = integral_packing(K3, H, threads=3)
    assert (a.value, a.copies) == (b.value, b.copies)


def test_budget_interval():
    sol = integral_packing(K3, complete(2, 9), node_budget=2)
    assert not sol.exact
    lo, hi = sol.interval
    assert lo <= 12 <= hi


def test_fractional_against_scipy():
    for F, H in [(K3, complete(2, 5)), (P3, atlas.turan_graph(6, 3)), (atlas.tight_triangle(3), complete(3, 6))]:
        frac = fractional_packing(F, H)
        assert frac.check(F, H)
        copies = [c.edges for c in enumerate_copies(F, H)]
        ref = oracles.brute_fractional_lp(copies, H.edges)
        if ref is not None:
            assert abs(float(frac.value) - ref) < 1e-7


def test_fractional_at_least_integral():
    for F, H in [(K3, complete(2, 6)), (C5, complete(2, 7)), (complete(3, 4), complete(3, 6))]:
        assert integral_packing(F, H).value <= fractional_packing(F, H).value


def test_uniform_count():
    assert uniform_count_check(K3, complete(2, 6)) == 4
    assert uniform_count_check(K3, construct(2, 4, [(0, 1), (1, 2), (0, 2), (2, 3)])) is None
    assert uniform_count_check(K3, C5) == 0


def test_p_f():
    assert packing_number_of_complete(K3) == 1
    assert packing_number_of_complete(P3) == 1
    assert packing_number_of_complete(C5) == 2
    F = atlas.fano()
    copies = oracles.brute_copies(7, F.edges, 7, complete(3, 7).edges)
    assert len(copies) == 30
    assert packing_number_of_complete(F) == oracles.max_disjoint(copies) == 2


def test_empty_cases():
    assert integral_packing(K3, C5).value == 0
    assert fractional_packing(K3, C5).value == Fraction(0)


def test_self_packing():
    for F in (K3, C5, atlas.fano(), atlas.tight_triangle(3)):
        assert integral_packing(F, F).value == 1
        assert fractional_packing(F, F).value == 1


def test_uniform_count_on_path():
    path = construct(2, 5, [(i, i + 1) for i in range(4)])
    assert uniform_count_check(K3, path) == 0
