"""Small dense two-phase simplex over exact rationals.

Sized for the handful of variables that appear in hull separation problems;
Bland's rule guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    pr = tab[row]
    inv = 1 / pr[col]
    if inv != 1:
        tab[row] = pr = [v * inv for v in pr]
    for r, line in enumerate(tab):
        if r != row:
            f = line[col]
            if f:
                tab[r] = [a - f * b for a, b in zip(line, pr)]
    basis[row] = col


def _run(tab, basis, ncols, allowed) -> str:
    # objective row is the last row; minimise, reduced costs stored negated
    obj = tab[-1]
    while True:
        obj = tab[-1]
        col = next((j for j in range(ncols) if allowed[j] and obj[j] > 0), None)
        if col is None:
            return "optimal"
        best = None
        row = None
        for r in range(len(tab) - 1):
            a = tab[r][col]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[row]):
                    best, row = ratio, r
        if row is None:
            return "unbounded"
        _pivot(tab, basis, row, col)


def linprog(c: Sequence[Fraction], *, A_ub: Matrix = (), b_ub: Sequence[Fraction] = (),
            A_eq: Matrix = (), b_eq: Sequence[Fraction] = (), free: Sequence[int] = ()) -> LPResult:
    """Minimise ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``.

    Variables are non-negative except those listed in ``free``.
    """
    n = len(c)
    free = sorted(set(free))
    # split free variables x = x+ - x-
    extra = {j: n + k for k, j in enumerate(free)}
    nv = n + len(free)

    def widen(row):
        row = [Fraction(v) for v in row]
        return row + [-row[j] for j in free]

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    n_slack = len(A_ub)
    for k, (row, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * n_slack
        slack[k] = Fraction(1)
        rows.append(widen(row) + slack)
        rhs.append(Fraction(b))
    for row, b in zip(A_eq, b_eq):
        rows.append(widen(row) + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b))
    m = len(rows)
    width = nv + n_slack
    for r in range(m):
        if rhs[r] < 0:
            rows[r] = [-v for v in rows[r]]
            rhs[r] = -rhs[r]
    # phase 1: one artificial per row
    tab = []
    for r in range(m):
        art = [Fraction(0)] * m
        art[r] = Fraction(1)
        tab.append(rows[r] + art + [rhs[r]])
    total = width + m
    basis = list(range(width, total))
    phase1 = [Fraction(0)] * (total + 1)
    for r in range(m):
        for j in range(width):
            phase1[j] += tab[r][j]
        phase1[-1] += tab[r][-1]
    tab.append(phase1)
    _run(tab, basis, total, [True] * width + [False] * m)
    if tab[-1][-1] > 0:
        return LPResult("infeasible")
    # drive remaining artificials out of the basis
    for r in range(m):
        if basis[r] >= width:
            col = next((j for j in range(width) if tab[r][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, r, col)
    keep = [r for r in range(m) if basis[r] < width]
    tab = [tab[r][:width] + [tab[r][-1]] for r in keep]
    basis = [basis[r] for r in keep]
    cost = [Fraction(v) for v in c] + [-Fraction(c[j]) for j in free] + [Fraction(0)] * n_slack
    obj = [-v for v in cost] + [Fraction(0)]
    for r, bcol in enumerate(basis):
        f = cost[bcol]
        if f:
            obj = [o + f * t for o, t in zip(obj, tab[r])]
    tab.append(obj)
    status = _run(tab, basis, width, [True] * width)
    if status == "unbounded":
        return LPResult("unbounded")
    xs = [Fraction(0)] * width
    for r, bcol in enumerate(basis):
        xs[bcol] = tab[r][-1]
    x = xs[:n]
    for j in free:
        x[j] = xs[j] - xs[extra[j]]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult("optimal", tuple(x), value)
