"""The extremal problem: maximise a_1 over non-negative cosine polynomials with
a_0 = 1 and ``sum |a_n| <= 2 a_1``.

The semi-infinite constraint ``f(theta) >= 0 for all theta`` is handled by
cutting planes over an exact rational LP; each cut is a rational point
``x = cos(theta)`` in ``[-1, 1]``, so every relaxation is a true relaxation
and its optimum is a valid upper bound for the problem.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import lp
from .conditions import check_conditions
from .trigpoly import (
    InputError,
    NonnegCertificate,
    TrigPoly,
    cheb_series,
    cheb_T,
    certify_nonnegative,
    min_on_interval,
    to_algebraic,
)

DEFAULT_TOL = 1e-10
DEFAULT_GRID0 = 64
DEFAULT_MAX_ROUNDS = 50
MAX_DEGREE = 64


class NonConvergenceError(RuntimeError):
    def __init__(self, msg: str, last: TrigPoly | None = None, trace=None):
        super().__init__(msg)
        self.last = last
        self.trace = trace


class InfeasibleError(RuntimeError):
    pass


# --- max sum a_n subject to sum a_n (n^2 - 1) = 1 ----------------------------

@dataclass(frozen=True)
class LemmaResult:
    N: int
    coefficients: tuple      # a_2 .. a_N
    maximum: Fraction
    support: tuple           # indices n with a_n != 0
    unique: bool             # LP optimum is the only optimal vertex
    closed_form: tuple
    constraint_value: Fraction


def lemma_maximize(N: int) -> LemmaResult:
    if not isinstance(N, int) or N < 2:
        raise InputError("lemma needs N >= 2")
    idx = range(2, N + 1)
    prob = lp.LpProblem([1] * (N - 1), [([n * n - 1 for n in idx], "=", 1)])
    sol = lp.solve_lp(prob)
    if sol.status != lp.OPTIMAL:
        raise RuntimeError(f"lemma LP returned {sol.status}")
    closed = tuple([Fraction(1, 3)] + [Fraction(0)] * (N - 2))
    coeffs = tuple(sol.x)
    if coeffs != closed or sol.objective != Fraction(1, 3):
        raise AssertionError(f"LP optimum {coeffs} disagrees with a_2 = 1/3 closed form")
    return LemmaResult(
        N=N,
        coefficients=coeffs,
        maximum=sol.objective,
        support=tuple(n for n, a in zip(idx, coeffs) if a != 0),
        unique=sol.unique,
        closed_form=closed,
        constraint_value=sum(a * (n * n - 1) for n, a in zip(idx, coeffs)),
    )


# --- cutting-plane maximisation of a_1 -------------------------------------------------

@dataclass
class Round:
    index: int
    grid_size: int
    objective: Fraction
    min_value: float
    cut: Fraction | None


@dataclass
class ExtremalResult:
    N: int
    poly: TrigPoly                 # snapped, normalised optimum (a_0 = 1)
    objective: Fraction            # a_1
    ratio: Fraction                # a_0 / a_1
    certificate: NonnegCertificate
    iterations: int
    trace: list = field(default_factory=list)
    presnap: tuple = ()            # last LP iterate (exact rationals)
    presnap_distance: float = 0.0  # L-inf distance, iterate vs snapped
    saturationII: Fraction = Fraction(0)
    g_at_minus1: Fraction = Fraction(0)
    dg_at_minus1: Fraction = Fraction(0)
    upper_bound: Fraction = Fraction(0)  # final LP relaxation value
    enforce_iii: bool = False

    @property
    def effective_degree(self) -> int:
        return self.poly.degree

    @property
    def r(self) -> Fraction:
        return self.objective - 1


def _grid_point(j: int, grid0: int) -> Fraction:
    if j == 0:
        return Fraction(1)
    if j == grid0:
        return Fraction(-1)
    if 2 * j == grid0:
        return Fraction(0)
    return Fraction(math.cos(j * math.pi / grid0)).limit_denominator(10**4)


def _cut_row(x: Fraction, N: int, cols: list[tuple[int, int]]) -> list[Fraction]:
    T = [cheb_T(n, x) for n in range(N + 1)]
    return [sign * T[n] for n, sign in cols]


def _simple_cut(g, x: float, bad: float) -> Fraction:
    """Low-height rational near ``x`` where the candidate is still below ``bad``."""
    for d in (10**2, 10**3, 10**4, 10**5, 10**6, 10**8, 10**10, 10**12):
        c = Fraction(x).limit_denominator(d)
        if -1 <= c <= 1 and g(c) < bad:
            return c
    return Fraction(x)


def _assemble(N: int, x: Sequence[Fraction], cols) -> list[Fraction]:
    a = [Fraction(0)] * (N + 1)
    a[0] = Fraction(1)
    for (n, sign), v in zip(cols, x):
        a[n] += sign * v
    return a


def _endpoint_values(a: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    g = sum(-c if n % 2 else c for n, c in enumerate(a))
    dg = sum(c * n * n if n % 2 else -c * n * n for n, c in enumerate(a))
    return g, dg


def _snap(a: Sequence[Fraction], enforce_iii: bool) -> list[Fraction] | None:
    """Nearest low-height rational point on ``g(-1) = 0, g'(-1) = 0`` that certifies."""
    N = len(a) - 1
    A = [[Fraction((-1) ** n) for n in range(1, N + 1)],
         [Fraction(n * n * (-1) ** (n - 1)) for n in range(1, N + 1)]]
    b = [Fraction(-1), Fraction(0)]
    G = [[sum(u * v for u, v in zip(A[i], A[j])) for j in range(2)] for i in range(2)]
    det = G[0][0] * G[1][1] - G[0][1] * G[1][0]
    for D in (10, 100, 1000, 10**4, 10**6):
        v = [Fraction(c).limit_denominator(D) for c in a[1:]]
        res = [sum(r * c for r, c in zip(A[i], v)) - b[i] for i in range(2)]
        lam = [(G[1][1] * res[0] - G[0][1] * res[1]) / det,
               (G[0][0] * res[1] - G[1][0] * res[0]) / det]
        v = [v[k] - A[0][k] * lam[0] - A[1][k] * lam[1] for k in range(N)]
        cand = TrigPoly([Fraction(1)] + v)
        rep = check_conditions(cand, "exact")
        if rep.condI and rep.condII and rep.nonneg.nonnegative and (rep.condIII or not enforce_iii):
            return [Fraction(1)] + v + [Fraction(0)] * (N - len(v))
    return None


def maximize_a1(N: int, grid0: int = DEFAULT_GRID0, tol: float = DEFAULT_TOL,
                max_rounds: int = DEFAULT_MAX_ROUNDS, enforce_iii: bool = False) -> ExtremalResult:
    """Maximise a_1 subject to a_0 = 1, f >= 0 and Condition II (optionally III)."""
    if not isinstance(N, int) or N < 2:
        raise InputError("degree must be an integer >= 2")
    if N > MAX_DEGREE:
        raise InputError(f"degree above {MAX_DEGREE} is not supported")
    if grid0 <= N:
        raise InputError("grid0 must exceed N so the first relaxation is bounded")
    # columns: (n, +1) for p_n, (n, -1) for q_n; a_n = p_n - q_n
    cols = [(1, 1), (1, -1)]
    for n in range(2, N + 1):
        cols.append((n, 1))
        if not enforce_iii:
            cols.append((n, -1))
    objective = [Fraction(sign) if n == 1 else 0 for n, sign in cols]
    prob = lp.LpProblem(objective)
    # Condition II: 1 + sum(p_n + q_n) <= 2 (p_1 - q_1)
    prob.add_row([(-1 if (n, s) == (1, 1) else 3 if n == 1 else 1) for n, s in cols], "<=", -1)
    grid = []
    for j in range(grid0 + 1):
        x = _grid_point(j, grid0)
        grid.append(x)
        # 1 + sum a_n T_n(x) >= 0
        prob.add_row(_cut_row(x, N, cols), ">=", -1)

    trace: list[Round] = []
    last_obj = None
    a = None
    for k in range(1, max_rounds + 1):
        sol = lp.solve_lp(prob)
        if sol.status == lp.INFEASIBLE:
            # the classical polynomial is always feasible
            raise InfeasibleError("relaxation infeasible; classical polynomial should satisfy it")
        if sol.status != lp.OPTIMAL:
            raise NonConvergenceError(f"relaxation {sol.status}", trace=trace)
        a = _assemble(N, sol.x, cols)
        last_obj = sol.objective
        af = [float(c) for c in a]
        g = to_algebraic(TrigPoly(af))
        res = min_on_interval(g, tol)
        lower = res.value - res.radius
        if lower >= -tol:
            trace.append(Round(k, len(grid), sol.objective, float(res.value), None))
            break
        ga = lambda x: cheb_series(a, x)  # noqa: E731
        cut = _simple_cut(ga, res.x, -tol / 2)
        if cut in grid:
            raise NonConvergenceError("cut point already in grid", TrigPoly(a), trace)
        trace.append(Round(k, len(grid), sol.objective, float(res.value), cut))
        grid.append(cut)
        prob.add_row(_cut_row(cut, N, cols), ">=", -1)
    else:
        raise NonConvergenceError(f"no convergence in {max_rounds} rounds", TrigPoly(a), trace)

    snapped = _snap(a, enforce_iii)
    if snapped is None:
        raise NonConvergenceError("rational snap failed to certify", TrigPoly(a), trace)
    poly = TrigPoly(snapped)
    cert = certify_nonnegative(poly, "exact")
    g1, dg1 = _endpoint_values(snapped)
    a1 = poly[1]
    return ExtremalResult(
        N=N,
        poly=poly,
        objective=a1,
        ratio=poly[0] / a1,
        certificate=cert,
        iterations=len(trace),
        trace=trace,
        presnap=tuple(a),
        presnap_distance=max(abs(float(u - v)) for u, v in zip(a, snapped)),
        saturationII=2 * a1 - sum(abs(c) for c in snapped),
        g_at_minus1=g1,
        dg_at_minus1=dg1,
        upper_bound=last_obj,
        enforce_iii=enforce_iii,
    )


def write_trace(result: ExtremalResult, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["round", "grid_size", "objective"])
        for r in result.trace:
            w.writerow([r.index, r.grid_size, f"{float(r.objective):.15g}"])


# --- verification of the extremal identities --------------------------------------------

@dataclass
class ExtremalCheck:
    r: Fraction
    sum_abs: Fraction                 # sum_{n>=2} |a_n|
    eq_r: bool                        # r == sum |a_n|
    g_minus1: Fraction
    dg_minus1: Fraction
    dg_formula: Fraction              # 1 - sum |a_n| (n^2 - 1)
    sign_pattern: bool                # a_n <= 0 odd n >= 3, a_n >= 0 even n
    odd_vanish: bool                  # a_n == 0 for odd n > 2
    degree_even: bool
    ratio: Fraction | None
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_extremal(poly: TrigPoly) -> ExtremalCheck:
    """Check the identities an optimum must satisfy (requires a_0 = 1)."""
    if poly.coefficients[0] != 1:
        raise InputError("verify_extremal expects a normalised polynomial (a_0 = 1)")
    p = poly.exact()
    a = list(p.coefficients) + [Fraction(0)] * max(0, 2 - p.degree)
    r = a[1] - 1
    tail = a[2:]
    sum_abs = sum((abs(c) for c in tail), Fraction(0))
    g1, dg1 = _endpoint_values(a)
    dg_formula = 1 - sum((abs(c) * (n * n - 1) for n, c in enumerate(a) if n >= 2), Fraction(0))
    sign_ok = all((c <= 0) if n % 2 else (c >= 0) for n, c in enumerate(a) if n >= 2)
    odd_zero = all(c == 0 for n, c in enumerate(a) if n > 2 and n % 2)
    even = p.degree % 2 == 0
    v = []
    if r != sum_abs:
        v.append("r = sum|a_n|")
    if g1 != 0:
        v.append("g(-1) = 0")
    if dg1 < 0:
        v.append("g'(-1) >= 0")
    if sign_ok and dg1 != dg_formula:
        v.append("g'(-1) = 1 - sum|a_n|(n^2-1)")
    if not sign_ok:
        v.append("sign pattern")
    if not odd_zero:
        v.append("odd coefficients vanish")
    if not even:
        v.append("degree even")
    return ExtremalCheck(r, sum_abs, r == sum_abs, g1, dg1, dg_formula, sign_ok, odd_zero, even,
                         (1 / a[1]) if a[1] else None, v)


# --- brute-force oracle ---------------------------------------------------------------

@dataclass
class BruteForceResult:
    N: int
    resolution: int
    best_a1: Fraction
    best: tuple                      # (1, a_1, a_2[, a_3]) at the best point
    feasible_at_best: int
    odd_positive_feasible: int       # feasible points seen with a_3 > 0 (N = 3)


def brute_force_search(N: int, resolution: int) -> BruteForceResult:
    """Exhaustive grid search for the largest feasible a_1 (a_0 = 1).

    Levels of a_1 are scanned from 2 downwards and the first level with a
    point passing Condition II and sampled non-negativity is returned.
    """
    if N not in (2, 3):
        raise InputError("brute force supports N = 2 or 3")
    if not isinstance(resolution, int) or not 1 <= resolution <= 400:
        raise InputError("resolution must be an integer in [1, 400]")
    R = resolution
    theta = np.linspace(0.0, np.pi, 4 * R)
    basis = np.cos(np.outer(np.arange(N + 1), theta))    # (N+1, S)
    floor = -1e-12
    odd_pos = 0
    for k in range(2 * R, R - 1, -1):
        a1 = k / R
        budget = k - R          # Condition II: sum_{n>=2} |a_n| <= a_1 - 1, in grid units
        if N == 2:
            j = np.arange(-budget, budget + 1)
            pts = np.stack([j], axis=1)
        else:
            j2, j3 = np.meshgrid(np.arange(-budget, budget + 1), np.arange(-budget, budget + 1), indexing="ij")
            keep = np.abs(j2) + np.abs(j3) <= budget
            pts = np.stack([j2[keep], j3[keep]], axis=1)
        coef = pts / R
        vals = 1.0 + a1 * basis[1] + coef @ basis[2:]
        ok = np.all(vals >= floor, axis=1)
        if N == 3:
            odd_pos += int(np.sum(ok & (pts[:, 1] > 0)))
        if ok.any():
            i = int(np.flatnonzero(ok)[0])
            best = (Fraction(1), Fraction(k, R)) + tuple(Fraction(int(v), R) for v in pts[i])
            return BruteForceResult(N, R, Fraction(k, R), best, int(ok.sum()), odd_pos)
    raise RuntimeError("no feasible grid point; a_1 = 1 with a_n = 0 should always pass")
