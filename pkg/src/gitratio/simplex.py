"""Exact-rational phase-I simplex for feasibility of ``A x = b, x >= 0``.

On infeasibility the final simplex multipliers give a Farkas certificate
``y`` with ``y.A >= 0`` componentwise and ``y.b < 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None


def solve_feasibility(a: Sequence[Sequence], b: Sequence) -> LPResult:
    """Decide ``exists x >= 0 : a x = b`` exactly (Bland's rule, so no cycling)."""
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != m:
        raise ValueError("row count of A does not match length of b")
    if m == 0:
        return LPResult(True, x=tuple(Fraction(0) for _ in range(n)))
    sign = [(-1 if Fraction(bi) < 0 else 1) for bi in b]
    # Tableau rows: n structural columns, m artificial columns, rhs.
    rows = []
    for i in range(m):
        s = sign[i]
        row = [Fraction(s * a[i][j]) for j in range(n)]
        row += [Fraction(int(k == i)) for k in range(m)]
        row.append(Fraction(s * b[i]))
        rows.append(row)
    basis = [n + i for i in range(m)]
    width = n + m
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    # Reduced costs relative to the all-artificial basis.
    rc = [cost[j] - sum(rows[i][j] for i in range(m)) for j in range(width)]
    obj = sum(rows[i][width] for i in range(m))

    while True:
        enter = next((j for j in range(width) if rc[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            coef = rows[i][enter]
            if coef > 0:
                ratio = rows[i][width] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # Unbounded below cannot happen: the phase-I objective is >= 0.
            raise ArithmeticError("phase-I objective unbounded")
        prow = rows[leave]
        pv = prow[enter]
        if pv != 1:
            prow = [v / pv for v in prow]
            rows[leave] = prow
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    r = rows[i]
                    rows[i] = [r[j] - f * prow[j] for j in range(width + 1)]
        f = rc[enter]
        rc = [rc[j] - f * prow[j] for j in range(width)]
        obj += f * prow[width]
        basis[leave] = enter

    if obj == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = rows[i][width]
        return LPResult(True, x=tuple(x))
    # Multipliers y_k = cost_k - rc_k on the artificial columns.
    y = [cost[n + k] - rc[n + k] for k in range(m)]
    farkas = tuple(-sign[k] * y[k] for k in range(m))
    return LPResult(False, farkas=farkas)
