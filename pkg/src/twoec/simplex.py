"""Phase-one simplex over the rationals.

Finds ``x >= 0`` with ``A x = b`` or proves there is none.  Pivoting uses
Bland's smallest-index rule, so the method terminates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def phase_one(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """A feasible point of ``{x >= 0 : A x = b}``, or ``None`` if empty."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    zero = Fraction(0)
    tableau = []
    for i in range(rows):
        row = [Fraction(v) for v in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [zero] * rows
        art[i] = Fraction(1)
        tableau.append(row + art + [rhs])
    width = cols + rows
    basis = [cols + i for i in range(rows)]
    # reduced costs of min sum(artificials); the last slot holds -objective
    cost = [zero] * (width + 1)
    for row in tableau:
        for j in range(cols):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(rows):
            coef = tableau[i][enter]
            if coef > 0:
                ratio = tableau[i][width] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen in phase one: the objective is bounded below by 0
            raise ArithmeticError("unbounded phase-one problem")
        _pivot(tableau, cost, leave, enter)
        basis[leave] = enter

    if cost[width] != 0:
        return None
    x = [zero] * cols
    for i, j in enumerate(basis):
        if j < cols:
            x[j] = tableau[i][width]
    return x


def _pivot(tableau: list[list[Fraction]], cost: list[Fraction], r: int, c: int) -> None:
    prow = tableau[r]
    piv = prow[c]
    if piv != 1:
        prow[:] = [v / piv for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(tableau):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    f = cost[c]
    if f:
        for j in nz:
            cost[j] -= f * prow[j]
