from __future__ import annotations

import random
from fractions import Fraction

import pytest

from mcturan.simplex import maximize


def test_textbook():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
    res = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert res.value == 36 and res.x == [2, 6]
    assert sum(y * b for y, b in zip(res.y, [4, 12, 18])) == 36


def test_sparse_rows():
    res = maximize([1, 1, 1], [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}], [1, 1, 1])
    assert res.value == Fraction(3, 2)


def test_unbounded_and_bad_rhs():
    with pytest.raises(ArithmeticError):
        maximize([1, 1], [[1, -1]], [1])
    with pytest.raises(ValueError):
        maximize([1], [[1]], [-1])


def test_degenerate():
    res = maximize([1, 1], [[1, 1], [1, 0], [0, 1], [1, 1]], [0, 0, 0, 1])
    assert res.value == 0


@pytest.mark.parametrize("seed", range(20))
def test_random_against_scipy(seed):
    linprog = pytest.importorskip("scipy.optimize").linprog
    rng = random.Random(seed)
    n, m = rng.randint(2, 6), rng.randint(2, 6)
    A = [[rng.randint(0, 4) for _ in range(n)] for _ in range(m)]
    A.append([1] * n)
    b = [rng.randint(1, 9) for _ in range(m)] + [10]
    c = [rng.randint(-2, 5) for _ in range(n)]
    res = maximize(c, A, b)
    ref = linprog([-v for v in c], A_ub=A, b_ub=b, method="highs")
    assert abs(float(res.value) + ref.fun) < 1e-7
    # exact duality
    assert all(y >= 0 for y in res.y)
    for j in range(n):
        assert sum(res.y[i] * A[i][j] for i in range(m + 1)) >= c[j]
    assert sum(y * v for y, v in zip(res.y, b)) == res.value
    for i in range(m + 1):
        assert sum(A[i][j] * res.x[j] for j in range(n)) <= b[i]
