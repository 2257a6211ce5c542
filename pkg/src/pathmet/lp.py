"""Exact rational LP used by the metrizability decision.

One feasibility shape is needed: given rows a_i over the edge variables and
right-hand sides b_i, find x maximizing the uniform slack t in

    a_i . x + t <= b_i,    x_e >= 1,    t <= 1.

Substituting x = 1 + s, t = 1 - tau (s, tau >= 0) turns this into

    minimize tau  subject to  a_i . s - tau <= r_i,   r_i = b_i - a_i.1 - 1,

which is solved by a dense tableau simplex over Fraction.  Pricing is by
Dantzig's rule with a switch to Bland's rule if the objective stalls, so the
walk cannot cycle.  The optimal duals of the rows certify infeasibility:
lambda >= 0 with sum(lambda_i a_i) >= 0 componentwise, which is exactly the
shape of the non-positive-edge-weight certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_STALL_LIMIT = 40


@dataclass
class SlackLpResult:
    t: Fraction                  # best uniform slack, capped at 1
    x: list[Fraction]            # edge values, all >= 1
    duals: list[Fraction]        # one multiplier per input row, >= 0


def solve_max_slack(num_vars: int, rows: list[dict[int, int]],
                    rhs: list[Fraction]) -> SlackLpResult:
    k = len(rows)
    tau_col = num_vars            # structural columns: s_0..s_{nv-1}, tau
    ncols = num_vars + 1 + k      # plus one slack per row

    table: list[list[Fraction]] = []
    r: list[Fraction] = []
    for i, row in enumerate(rows):
        line = [ZERO] * ncols
        shift = 0
        for j, coef in row.items():
            line[j] = Fraction(coef)
            shift += coef
        line[tau_col] = Fraction(-1)
        line[num_vars + 1 + i] = ONE
        table.append(line)
        r.append(Fraction(rhs[i]) - shift - 1)

    basis = [num_vars + 1 + i for i in range(k)]
    # reduced-cost row for the objective min tau; objval tracks c_B B^-1 r
    obj = [ZERO] * ncols
    obj[tau_col] = ONE
    objval = ZERO

    def pivot(row_i: int, col: int) -> None:
        nonlocal objval
        line = table[row_i]
        piv = line[col]
        if piv != 1:
            inv = ONE / piv
            for j in range(ncols):
                if line[j]:
                    line[j] *= inv
            r[row_i] *= inv
        support = [j for j in range(ncols) if line[j]]
        for i in range(k):
            if i == row_i:
                continue
            other = table[i]
            factor = other[col]
            if factor:
                for j in support:
                    other[j] -= factor * line[j]
                r[i] -= factor * r[row_i]
        factor = obj[col]
        if factor:
            for j in support:
                obj[j] -= factor * line[j]
            objval += factor * r[row_i]
        basis[row_i] = col

    if k and min(r) < 0:
        # drive tau into the most violated row to restore feasibility
        start = min(range(k), key=lambda i: (r[i], i))
        pivot(start, tau_col)

    stall = 0
    last_val = objval
    while True:
        if stall <= _STALL_LIMIT:
            enter = None
            best = ZERO
            for j in range(ncols):
                if obj[j] < best:
                    best = obj[j]
                    enter = j
        else:   # Bland's rule, guaranteed to terminate
            enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        ratio = None
        for i in range(k):
            a = table[i][enter]
            if a > 0:
                rho = r[i] / a
                if ratio is None or rho < ratio or \
                        (rho == ratio and basis[i] < basis[leave]):
                    ratio, leave = rho, i
        if leave is None:
            raise ArithmeticError("slack LP cannot be unbounded")
        pivot(leave, enter)
        if objval == last_val:
            stall += 1
        else:
            stall = 0
            last_val = objval

    tau = objval
    values = [ZERO] * ncols
    for i, b in enumerate(basis):
        values[b] = r[i]
    x = [values[j] + 1 for j in range(num_vars)]
    duals = [obj[num_vars + 1 + i] for i in range(k)]

    # sanity: dual feasibility and strong duality for this shape
    assert all(l >= 0 for l in duals)
    assert sum(duals, ZERO) <= 1
    for j in range(num_vars):
        combo = sum((duals[i] * rows[i].get(j, 0) for i in range(k)), ZERO)
        assert combo >= 0
    check = -sum((duals[i] * (Fraction(rhs[i]) - sum(rows[i].values()) - 1)
                  for i in range(k)), ZERO)
    assert check == tau
    return SlackLpResult(t=ONE - tau, x=x, duals=duals)
