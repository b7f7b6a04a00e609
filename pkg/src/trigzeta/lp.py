"""Exact rational linear programming: dense two-phase tableau simplex, Bland's rule.

Problems are posed as::

    maximize  c . x
    subject to  row_i . x  (<=|=|>=)  rhs_i
                x >= lower

All data is converted to :class:`fractions.Fraction`; nothing is rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_RELS = ("<=", "=", ">=")


class MalformedProblem(ValueError):
    pass


@dataclass
class LpProblem:
    objective: list
    rows: list = field(default_factory=list)        # list of (coeffs, rel, rhs)
    lower: list | None = None

    def __post_init__(self):
        self.objective = [Fraction(c) for c in self.objective]
        n = len(self.objective)
        rows = []
        for coeffs, rel, rhs in self.rows:
            if rel not in _RELS:
                raise MalformedProblem(f"unknown relation {rel!r}")
            if len(coeffs) != n:
                raise MalformedProblem(f"row has {len(coeffs)} coefficients, expected {n}")
            rows.append(([Fraction(c) for c in coeffs], rel, Fraction(rhs)))
        self.rows = rows
        if self.lower is None:
            self.lower = [Fraction(0)] * n
        elif len(self.lower) != n:
            raise MalformedProblem("lower bounds have the wrong length")
        else:
            self.lower = [Fraction(v) for v in self.lower]

    @property
    def nvars(self) -> int:
        return len(self.objective)

    def add_row(self, coeffs: Sequence, rel: str, rhs) -> None:
        if rel not in _RELS or len(coeffs) != self.nvars:
            raise MalformedProblem("bad row")
        self.rows.append(([Fraction(c) for c in coeffs], rel, Fraction(rhs)))


@dataclass
class LpSolution:
    status: str
    x: list | None = None
    objective: Fraction | None = None
    reduced_costs: list | None = None   # per structural variable; None when basic
    pivots: int = 0
    # every non-basic column (slacks included) has a nonzero reduced cost,
    # which makes the optimal vertex the unique optimum
    unique: bool = False


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    prow = T[r]
    pv = prow[c]
    if pv != 1:
        prow = [v / pv for v in prow]
        T[r] = prow
    nz = [(j, v) for j, v in enumerate(prow) if v]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[c]
        if f:
            for j, v in nz:
                row[j] -= f * v
    basis[r] = c


def _simplex(T: list[list[Fraction]], basis: list[int], allowed: int) -> tuple[str, int]:
    """Maximise with the objective row ``T[-1]`` holding ``z_j - c_j``.

    Only columns ``< allowed`` may enter.  Bland: lowest-index entering column,
    ratio ties broken by lowest basic variable index.
    """
    pivots = 0
    m = len(T) - 1
    while True:
        obj = T[-1]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return OPTIMAL, pivots
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED, pivots
        _pivot(T, basis, best[1], enter)
        pivots += 1


def solve_lp(prob: LpProblem) -> LpSolution:
    n = prob.nvars
    lower = prob.lower
    # shift x = y + lower so that y >= 0
    rows = []
    for coeffs, rel, rhs in prob.rows:
        rhs = rhs - sum(c * l for c, l in zip(coeffs, lower))
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        rows.append((coeffs, rel, rhs))
    m = len(rows)
    n_slack = sum(1 for _, rel, _ in rows if rel != "=")
    n_art = sum(1 for _, rel, _ in rows if rel != "<=")
    width = n + n_slack + n_art
    T: list[list[Fraction]] = []
    basis: list[int] = []
    s = n
    a = n + n_slack
    zero = Fraction(0)
    for coeffs, rel, rhs in rows:
        row = list(coeffs) + [zero] * (n_slack + n_art) + [rhs]
        if rel == "<=":
            row[s] = Fraction(1)
            basis.append(s)
            s += 1
        elif rel == ">=":
            row[s] = Fraction(-1)
            s += 1
            row[a] = Fraction(1)
            basis.append(a)
            a += 1
        else:
            row[a] = Fraction(1)
            basis.append(a)
            a += 1
        T.append(row)

    pivots = 0
    art_start = n + n_slack
    if n_art:
        # phase 1: maximise -sum(artificials)
        obj = [zero] * (width + 1)
        for i, b in enumerate(basis):
            if b >= art_start:
                for j in range(width + 1):
                    obj[j] -= T[i][j]
        for j in range(art_start, width):
            obj[j] = zero
        T.append(obj)
        _, k = _simplex(T, basis, art_start)
        pivots += k
        if T[-1][-1] != 0:
            return LpSolution(INFEASIBLE, pivots=pivots)
        T.pop()
        # drive zero-level artificials out of the basis
        for i in range(m):
            if basis[i] >= art_start:
                col = next((j for j in range(art_start) if T[i][j] != 0), None)
                if col is not None:
                    _pivot(T, basis, i, col)
                    pivots += 1
        keep = [i for i in range(len(T)) if basis[i] < art_start]
        T = [T[i][:art_start] + [T[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
        width = art_start

    obj = [zero] * (width + 1)
    for j in range(n):
        obj[j] = -prob.objective[j]
    for i, b in enumerate(basis):
        cb = prob.objective[b] if b < n else zero
        if cb:
            for j in range(width + 1):
                obj[j] += cb * T[i][j]
    T.append(obj)
    status, k = _simplex(T, basis, width)
    pivots += k
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, pivots=pivots)
    y = [zero] * n
    for i, b in enumerate(basis):
        if b < n:
            y[b] = T[i][-1]
    x = [yi + l for yi, l in zip(y, lower)]
    value = sum(c * xi for c, xi in zip(prob.objective, x))
    basic = set(basis)
    rc = [None if j in basic else T[-1][j] for j in range(n)]
    unique = all(T[-1][j] != 0 for j in range(width) if j not in basic)
    return LpSolution(OPTIMAL, x, value, rc, pivots, unique)
