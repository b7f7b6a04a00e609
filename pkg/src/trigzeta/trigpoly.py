"""Cosine polynomials, their Chebyshev images, and non-negativity certificates.

A :class:`TrigPoly` holds ``f(theta) = sum a_n cos(n theta)``.  Substituting
``x = cos(theta)`` gives an ordinary polynomial ``g`` on ``[-1, 1]``
(:class:`AlgebraicPoly`), and ``f >= 0`` everywhere iff ``g >= 0`` on ``[-1, 1]``.

Two scalar regimes are supported: exact rationals (:class:`~fractions.Fraction`)
and binary64 floats.  A polynomial is exact iff every coefficient is rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import NamedTuple, Sequence, Union

import numpy as np

from . import sturm

Scalar = Union[Fraction, float]

DEFAULT_TOL = 1e-9
_EPS = np.finfo(float).eps


class InputError(ValueError):
    """Invalid argument to a polynomial operation."""


class ModeError(ValueError):
    """Exact mode requested on non-rational data."""


def to_scalar(v) -> Scalar:
    """Coerce ``v`` to a Fraction (ints, Fractions, numeric strings) or float."""
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational literal: {v!r}") from exc
    if isinstance(v, bool):
        raise InputError("booleans are not coefficients")
    if isinstance(v, Rational):
        return Fraction(v)
    return float(v)


def _coerce_all(values) -> tuple[Scalar, ...]:
    vals = [to_scalar(v) for v in values]
    if any(isinstance(v, float) for v in vals):
        vals = [float(v) for v in vals]
        if not all(math.isfinite(v) for v in vals):
            raise InputError("coefficients must be finite")
    while len(vals) > 1 and vals[-1] == 0:
        vals.pop()
    if not vals:
        vals = [Fraction(0)]
    return tuple(vals)


@dataclass(frozen=True)
class TrigPoly:
    """``sum_{n=0}^N a_n cos(n theta)``; trailing zero coefficients are trimmed."""

    coefficients: tuple

    def __init__(self, coefficients: Sequence):
        object.__setattr__(self, "coefficients", _coerce_all(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coefficients)

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coefficients[0] == 0

    def __getitem__(self, n: int) -> Scalar:
        if n < len(self.coefficients):
            return self.coefficients[n]
        return self.coefficients[0] * 0

    def __call__(self, theta: float) -> float:
        return evaluate(self, theta)

    def scale(self, c) -> TrigPoly:
        c = to_scalar(c)
        return TrigPoly([a * c for a in self.coefficients])

    def exact(self) -> TrigPoly:
        """Same polynomial with every float replaced by its exact binary value."""
        return TrigPoly([Fraction(a) for a in self.coefficients])

    def __str__(self) -> str:
        return "(" + ", ".join(format_scalar(a) for a in self.coefficients) + ")"


@dataclass(frozen=True)
class AlgebraicPoly:
    """Monomial-basis polynomial ``sum c_k x^k`` (ascending), trimmed."""

    coefficients: tuple

    def __init__(self, coefficients: Sequence):
        object.__setattr__(self, "coefficients", _coerce_all(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coefficients)

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coefficients[0] == 0

    def __call__(self, x):
        acc = self.coefficients[-1] * 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


class NonnegCertificate(NamedTuple):
    verdict: str                 # "nonnegative" | "negative-witness" | "inconclusive"
    method: str                  # "exact-sturm" | "numeric"
    margin: Scalar               # certified lower bound for min f
    theta: float | None = None   # witness angle when negative
    x: Scalar | None = None      # witness cos(theta)
    value: Scalar | None = None  # f(theta) at the witness

    @property
    def nonnegative(self) -> bool:
        return self.verdict == "nonnegative"


class IntervalMin(NamedTuple):
    """Minimum of a polynomial on [-1, 1]: true min lies in value +/- radius."""

    x: Scalar
    value: Scalar
    radius: Scalar


# --- evaluation -----------------------------------------------------------

def cheb_series(coefficients: Sequence, x):
    """Clenshaw evaluation of ``sum a_n T_n(x)``; exact for rational ``x``."""
    b1 = b2 = x * 0
    for a in reversed(coefficients[1:]):
        b1, b2 = a + 2 * x * b1 - b2, b1
    return coefficients[0] + x * b1 - b2


def evaluate(poly: TrigPoly, theta: float) -> float:
    if not math.isfinite(theta):
        raise InputError("theta must be finite")
    coeffs = [float(a) for a in poly.coefficients]
    return float(cheb_series(coeffs, math.cos(theta)))


def evaluate_many(poly: TrigPoly, thetas) -> np.ndarray:
    """Vectorised :func:`evaluate` over an array of angles."""
    x = np.cos(np.asarray(thetas, dtype=float))
    return cheb_series([float(a) for a in poly.coefficients], x)


def _check_order(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise InputError(f"Chebyshev order must be a non-negative integer, got {n!r}")


def cheb_T(n: int, x):
    _check_order(n)
    t0, t1 = x * 0 + 1, x
    if n == 0:
        return t0
    for _ in range(n - 1):
        t0, t1 = t1, 2 * x * t1 - t0
    return t1


def cheb_U(n: int, x):
    _check_order(n)
    u0, u1 = x * 0 + 1, 2 * x
    if n == 0:
        return u0
    for _ in range(n - 1):
        u0, u1 = u1, 2 * x * u1 - u0
    return u1


@lru_cache(maxsize=None)
def _cheb_monomials(n: int) -> tuple[int, ...]:
    """Integer monomial coefficients of T_n, ascending."""
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 1)
    prev, cur = _cheb_monomials(n - 2), _cheb_monomials(n - 1)
    out = [0] * (n + 1)
    for k, c in enumerate(cur):
        out[k + 1] += 2 * c
    for k, c in enumerate(prev):
        out[k] -= c
    return tuple(out)


def to_algebraic(poly: TrigPoly) -> AlgebraicPoly:
    zero = poly.coefficients[0] * 0
    out = [zero] * (poly.degree + 1)
    for n, a in enumerate(poly.coefficients):
        if a == 0:
            continue
        for k, c in enumerate(_cheb_monomials(n)):
            if c:
                out[k] += a * c
    return AlgebraicPoly(out)


def derivative(g: AlgebraicPoly) -> AlgebraicPoly:
    c = g.coefficients
    if len(c) == 1:
        return AlgebraicPoly([c[0] * 0])
    return AlgebraicPoly([k * c[k] for k in range(1, len(c))])


# --- minimisation on [-1, 1] --------------------------------------------------

def min_on_interval(g: AlgebraicPoly, tol: float = DEFAULT_TOL) -> IntervalMin:
    """Global minimum of ``g`` over ``[-1, 1]``.

    Exact polynomials use Sturm isolation of the critical points, with each
    critical value enclosed to width ``tol``; float polynomials use bracketed
    bisection of ``g'`` seeded by companion-matrix roots and a sign scan.
    """
    if not tol > 0:
        raise InputError("tol must be positive")
    if g.is_exact:
        return _min_exact(g, Fraction(tol))
    return _min_numeric(g, float(tol))


def _min_exact(g: AlgebraicPoly, tol: Fraction) -> IntervalMin:
    p = list(g.coefficients)
    one = Fraction(1)
    # (x, lo, hi): candidate point and an enclosure of the critical value
    cands = [(-one, sturm.horner(p, -one), sturm.horner(p, -one)),
             (one, sturm.horner(p, one), sturm.horner(p, one))]
    dp = sturm.deriv(p)
    if sturm.trim(dp):
        iso = sturm.RootIsolation(dp, -1, 1)
        for iv in iso.intervals:
            a, b = iv
            while True:
                if a == b:
                    v = sturm.horner(p, a)
                    lo = hi = v
                    break
                lo, hi = sturm.interval_horner(p, a, b)
                if hi - lo <= tol:
                    break
                a, b = iso.refine((a, b), (b - a) / 4)
            cands.append(((a + b) / 2, lo, hi))
    min_lo = min(c[1] for c in cands)
    best = min(cands, key=lambda c: c[2])
    min_hi = best[2]
    return IntervalMin(best[0], (min_lo + min_hi) / 2, (min_hi - min_lo) / 2)


def _bisect_root(h, a: float, b: float, width: float = 1e-12) -> float:
    fa = h(a)
    while b - a > width:
        m = 0.5 * (a + b)
        fm = h(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _min_numeric(g: AlgebraicPoly, tol: float) -> IntervalMin:
    c = np.array([float(v) for v in g.coefficients])
    gp = np.polynomial.Polynomial(c)
    dgp = gp.deriv()
    points = [-1.0, 1.0]
    if g.degree >= 2:
        # sign-change brackets of g' on a Chebyshev-spaced grid
        grid = np.cos(np.linspace(np.pi, 0.0, 16 * g.degree + 33))
        grid[0], grid[-1] = -1.0, 1.0
        vals = dgp(grid)
        for i in range(len(grid) - 1):
            if vals[i] == 0:
                points.append(float(grid[i]))
            elif vals[i] * vals[i + 1] < 0:
                points.append(_bisect_root(dgp, float(grid[i]), float(grid[i + 1])))
        # companion roots catch close pairs the grid can miss
        for r in dgp.roots():
            if abs(r.imag) <= 1e-7 and -1.0 <= r.real <= 1.0:
                x0 = float(r.real)
                for d in (1e-9, 1e-7, 1e-5):
                    a, b = max(-1.0, x0 - d), min(1.0, x0 + d)
                    if dgp(a) * dgp(b) < 0:
                        x0 = _bisect_root(dgp, a, b)
                        break
                points.append(x0)
    xs = np.array(points)
    vals = gp(xs)
    i = int(np.argmin(vals))
    absum = float(np.sum(np.abs(c)))
    d2 = float(np.sum(np.abs(gp.deriv(2).coef))) if g.degree >= 2 else 0.0
    # Horner rounding plus curvature times squared location error
    radius = 2.0 * (g.degree + 2) * _EPS * absum + 0.5 * d2 * 1e-24
    return IntervalMin(float(xs[i]), float(vals[i]), float(radius))


# --- certification ------------------------------------------------------------

def certify_nonnegative(poly: TrigPoly, mode: str = "exact", tol: float = DEFAULT_TOL) -> NonnegCertificate:
    """Decide whether ``poly(theta) >= 0`` for all real ``theta``."""
    if mode not in ("exact", "numeric"):
        raise InputError(f"unknown mode {mode!r}")
    if mode == "exact":
        if not poly.is_exact:
            raise ModeError("exact certification needs rational coefficients")
        return _certify_exact(poly, Fraction(tol))
    g = to_algebraic(TrigPoly([float(a) for a in poly.coefficients]))
    res = min_on_interval(g, tol)
    if res.value - res.radius >= 0:
        return NonnegCertificate("nonnegative", "numeric", res.value - res.radius)
    if res.value + res.radius < 0:
        theta = math.acos(max(-1.0, min(1.0, res.x)))
        return NonnegCertificate("negative-witness", "numeric", res.value - res.radius,
                                 theta, res.x, evaluate(poly, theta))
    return NonnegCertificate("inconclusive", "numeric", res.value - res.radius)


def _certify_exact(poly: TrigPoly, tol: Fraction) -> NonnegCertificate:
    g = to_algebraic(poly)
    if g.is_zero:
        return NonnegCertificate("nonnegative", "exact-sturm", Fraction(0))
    p = list(g.coefficients)
    one = Fraction(1)
    nonneg = sturm.horner(p, -one) >= 0 and sturm.horner(p, one) >= 0
    dp = sturm.deriv(p)
    if nonneg and sturm.trim(dp):
        iso = sturm.RootIsolation(dp, -1, 1)
        nonneg = all(iso.sign_at(p, iv) >= 0 for iv in iso.intervals)
    res = _min_exact(g, tol)
    if nonneg:
        return NonnegCertificate("nonnegative", "exact-sturm", max(Fraction(0), res.value - res.radius))
    x = res.x
    v = sturm.horner(p, x)
    if v >= 0:
        # enclosure straddles zero; tighten until the witness is strictly negative
        t = tol
        while v >= 0:
            t /= 1024
            res = _min_exact(g, t)
            x, v = res.x, sturm.horner(p, res.x)
    theta = math.acos(max(-1.0, min(1.0, float(x))))
    return NonnegCertificate("negative-witness", "exact-sturm", res.value - res.radius, theta, x, v)


def normalize(poly: TrigPoly) -> tuple[TrigPoly, Scalar]:
    """Rescale so that ``a_0 = 1``; returns ``(poly / a_0, 1 / a_0)``."""
    a0 = poly.coefficients[0]
    if not a0 > 0:
        raise InputError("normalisation needs a_0 > 0")
    factor = 1 / a0
    return poly.scale(factor), factor


# --- text I/O -------------------------------------------------------------------

def format_scalar(v, digits: int = 15) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return f"{float(v):.{digits}g}"


def poly_to_json(poly: TrigPoly) -> dict:
    out = []
    for a in poly.coefficients:
        out.append(str(a) if isinstance(a, Fraction) else float(a))
    return {"coefficients": out}


def poly_from_json(obj) -> TrigPoly:
    if isinstance(obj, dict):
        obj = obj.get("coefficients")
    if not isinstance(obj, list) or not obj:
        raise InputError('polynomial JSON needs a non-empty "coefficients" list')
    return TrigPoly(obj)


CLASSICAL = TrigPoly([3, 4, 1])
