"""Exact rational simplex for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

The slack basis is feasible from the start, so there is no phase one. The
entering column follows Dantzig's rule; ties in the ratio test are broken
lexicographically on the rows of the basis inverse, which rules out cycling
on the highly degenerate packing LPs.

Columns may be appended after a solve (column generation): the slack block of
the current tableau is the basis inverse, so a new column is priced and
transformed without refactoring, and the next solve starts from the old basis.

Arithmetic uses gmpy2's mpq when it is installed and Fraction otherwise;
results are always returned as Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction


def _q(v):
    if isinstance(v, Fraction):
        return _Q(v.numerator, v.denominator)
    return _Q(v)


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


@dataclass
class LPResult:
    value: Fraction
    x: list[Fraction]
    y: list[Fraction]
    pivots: int


class Tableau:
    """Dense tableau; columns 0..m-1 are the slacks, structural columns follow."""

    def __init__(self, b: Sequence):
        self.m = len(b)
        if any(Fraction(v) < 0 for v in b):
            raise ValueError("right-hand side must be nonnegative")
        zero, one = _Q(0), _Q(1)
        self.rows = [[one if j == i else zero for j in range(self.m)] for i in range(self.m)]
        self.rhs = [_q(v) for v in b]
        self.obj = [zero] * self.m
        self.value = zero
        self.basis = list(range(self.m))
        self.ncols = 0
        self.pivots = 0

    def add_column(self, entries: Mapping[int, object] | Sequence, cost) -> int:
        """Append a structural column; returns its index among structural columns."""
        items = entries.items() if isinstance(entries, Mapping) else enumerate(entries)
        a = [(r, _q(v)) for r, v in items if v]
        for i, row in enumerate(self.rows):
            t = _Q(0)
            for r, v in a:
                if row[r]:
                    t += row[r] * v
            row.append(t)
        red = -_q(cost)
        for r, v in a:
            if self.obj[r]:
                red += self.obj[r] * v
        self.obj.append(red)
        self.ncols += 1
        return self.ncols - 1

    def solve(self) -> None:
        m = self.m
        rows, rhs, obj, basis = self.rows, self.rhs, self.obj, self.basis
        width = len(obj)
        while True:
            enter, best = None, 0
            for j in range(width):
                if obj[j] < best:
                    enter, best = j, obj[j]
            if enter is None:
                return
            ties, ratio = [], None
            for i in range(m):
                a = rows[i][enter]
                if a > 0:
                    q = rhs[i] / a
                    if ratio is None or q < ratio:
                        ties, ratio = [i], q
                    elif q == ratio:
                        ties.append(i)
            if not ties:
                raise ArithmeticError("LP is unbounded")
            leave = ties[0] if len(ties) == 1 else self._lex_min(ties, enter)
            self._pivot(leave, enter)
            basis[leave] = enter
            self.pivots += 1

    def _lex_min(self, ties: list[int], enter: int) -> int:
        # compare rows of B^-1 scaled by the pivot column; distinct rows never tie
        rows = self.rows
        for c in range(self.m):
            best, keep = None, []
            for i in ties:
                v = rows[i][c] / rows[i][enter]
                if best is None or v < best:
                    best, keep = v, [i]
                elif v == best:
                    keep.append(i)
            ties = keep
            if len(ties) == 1:
                break
        return ties[0]

    def _pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        p = prow[col]
        if p != 1:
            for j, v in enumerate(prow):
                if v:
                    prow[j] = v / p
            self.rhs[r] /= p
        nz = [j for j, v in enumerate(prow) if v]
        pr = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i != r:
                a = row[col]
                if a:
                    for j in nz:
                        row[j] -= a * prow[j]
                    self.rhs[i] -= a * pr
        a = self.obj[col]
        if a:
            obj = self.obj
            for j in nz:
                obj[j] -= a * prow[j]
            self.value -= a * pr

    def duals(self) -> list[Fraction]:
        return [_frac(v) for v in self.obj[: self.m]]

    def primal(self) -> list[Fraction]:
        x = [Fraction(0)] * self.ncols
        for i, j in enumerate(self.basis):
            if j >= self.m:
                x[j - self.m] = _frac(self.rhs[i])
        return x

    def objective(self) -> Fraction:
        return _frac(self.value)


def maximize(c: Sequence, rows: Sequence[Sequence | Mapping[int, object]], b: Sequence) -> LPResult:
    """Solve the LP exactly.

    Each row is either a dense coefficient sequence or a ``{column: coeff}``
    mapping. Returns primal ``x`` and dual ``y`` (row prices); their
    objective values agree.
    """
    cols: list[dict[int, object]] = [dict() for _ in c]
    for i, r in enumerate(rows):
        items = r.items() if isinstance(r, Mapping) else enumerate(r)
        for j, v in items:
            if v:
                cols[j][i] = v
    T = Tableau(b)
    for j, cj in enumerate(c):
        T.add_column(cols[j], cj)
    T.solve()
    return LPResult(T.objective(), T.primal(), T.duals(), T.pivots)
