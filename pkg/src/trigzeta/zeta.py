"""zeta(s) for Re(s) > 1 with error radii, and bounds on 1/|zeta(sigma+it)|.

Two inverse bounds are compared:

* the trivial one, ``1/|zeta(s)| <= zeta(sigma) / zeta(2 sigma)``;
* the bound from an admissible non-negative cosine polynomial,
  ``1/|zeta(s)| <= (zeta(sigma)^a0 * prod_{n>=2} |zeta(sigma+int)|^an)^(1/a1)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from .conditions import check_conditions
from .trigpoly import TrigPoly

_EPS = float(np.finfo(float).eps)
_CHUNK = 1 << 20
_2PI = 2.0 * math.pi
_INV_2PI = 1.0 / _2PI
K_DEFAULT = 12
K_MAX = 48
M_MAX = 1 << 31

# |zeta(1+it)| <= 1.731 log t / log log t for t >= 3 (literature value, not derived here)
LITERATURE_1_IT = 1.731


class DomainError(ValueError):
    """Argument outside Re(s) > 1."""


class PrecisionError(ArithmeticError):
    """Requested accuracy is below the floating-point noise floor."""


class ContractError(ValueError):
    """Polynomial is not admissible for the inverse bound."""


class ZetaValue(NamedTuple):
    value: complex
    radius: float
    M: int
    K: int
    truncation: float
    rounding: float


@lru_cache(maxsize=None)
def _em_ratios(kmax: int) -> tuple[float, ...]:
    """``c_k / c_{k-1}`` for ``c_k = B_{2k} / (2k)!``, k = 1..kmax (index 0 unused)."""
    # exact Bernoulli numbers from sum_{j<=m} C(m+1, j) B_j = 0
    B = [Fraction(1)]
    for m in range(1, 2 * kmax + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    c = [B[2 * k] / math.factorial(2 * k) for k in range(kmax + 1)]
    return (0.0,) + tuple(float(c[k] / c[k - 1]) for k in range(1, kmax + 1))


def _dirichlet_sum(s: complex, M: int) -> tuple[complex, float]:
    """``sum_{n<M} n^-s`` and ``sum_{n<M} n^-sigma``."""
    sigma, t = s.real, s.imag
    re = im = absum = 0.0
    for start in range(1, M, _CHUNK):
        n = np.arange(start, min(M, start + _CHUNK), dtype=float)
        ln = np.log(n)
        amp = np.exp(-sigma * ln)
        absum += float(amp.sum())
        if t == 0.0:
            re += float(amp.sum())
            continue
        ph = t * ln
        ph -= np.rint(ph * _INV_2PI) * _2PI   # small arguments keep cos/sin on the fast path
        re += float(np.dot(amp, np.cos(ph)))
        im -= float(np.dot(amp, np.sin(ph)))
    return complex(re, im), absum


def _tail_terms(s: complex, M: int, K: int) -> list[complex]:
    """Euler-Maclaurin correction terms T_1 .. T_{K+1}."""
    ratio = _em_ratios(K_MAX + 1)
    # T_k = c_k s (s+1) ... (s+2k-2) M^(-s-2k+1), built up multiplicatively
    term = s * M ** (-s) / M / 12
    terms = [term]
    for k in range(2, K + 2):
        term = term * ratio[k] * (s + 2 * k - 3) * (s + 2 * k - 2) / (M * M)
        terms.append(term)
    return terms


def _check_sigma(s: complex) -> None:
    if not s.real > 1:
        raise DomainError(f"need Re(s) > 1, got {s.real!r}")


def zeta_em(s, target_err: float = 1e-12, strict: bool = True) -> ZetaValue:
    """Euler-Maclaurin evaluation of zeta(s), Re(s) > 1.

    The truncation error is bounded by ``|s+2K+1|/(sigma+2K+1) |T_{K+1}|``.
    ``radius`` adds a floating-point error estimate for the Dirichlet sum;
    with ``strict`` a radius above ``target_err`` raises :class:`PrecisionError`.
    """
    s = complex(s)
    _check_sigma(s)
    if not target_err > 0:
        raise ValueError("target_err must be positive")
    sigma = s.real
    M = max(20, math.ceil(abs(s) / math.pi) + 10)
    K = K_DEFAULT
    while True:
        terms = _tail_terms(s, M, K)
        trunc = abs(s + 2 * K + 1) / (sigma + 2 * K + 1) * abs(terms[-1])
        if trunc <= 0.5 * target_err:
            break
        if abs(terms[-1]) < abs(terms[-2]) and K < K_MAX:
            K = min(2 * K, K_MAX)
        elif M < M_MAX:
            M *= 2
        else:
            raise PrecisionError(f"cannot reach {target_err:g} at s={s}")
    head, absum = _dirichlet_sum(s, M)
    Ms = M ** (-s)
    rest = M * Ms / (s - 1) + 0.5 * Ms + sum(terms[:-1])
    value = head + rest
    logM = math.log(M)
    rounding = _EPS * absum * (8.0 + 2.0 * abs(s.imag) * logM + 2.0 * sigma * logM + 2.0 * math.log2(M))
    rounding += 16.0 * _EPS * (abs(rest) + abs(value))
    radius = trunc + rounding
    if strict and radius > target_err:
        raise PrecisionError(f"rounding error {rounding:.3g} exceeds target {target_err:g} at s={s}")
    return ZetaValue(value, radius, M, K, trunc, rounding)


def direct_sum_oracle(s, N: int = 10**6) -> tuple[complex, float]:
    """Independent check: ``sum_{n<=N} n^-s - N^-s/2 + N^(1-s)/(s-1)``.

    The tail is the trapezoid rule on ``u^-s``; its error is at most
    ``|s(s+1)|/12 (N^(-sigma-2) + N^(-sigma-1)/(sigma+1))``.
    """
    s = complex(s)
    _check_sigma(s)
    head, absum = _dirichlet_sum(s, N + 1)
    Ns = N ** (-s)
    val = head - 0.5 * Ns + N * Ns / (s - 1)
    sigma = s.real
    err = abs(s * (s + 1)) / 12 * (N ** (-sigma - 2) + N ** (-sigma - 1) / (sigma + 1))
    err += _EPS * absum * (8.0 + 2.0 * abs(s.imag) * math.log(N) + 2.0 * math.log2(N))
    return val, err


# --- prime-sum form ----------------------------------------------------------------

def primes_upto(P: int) -> np.ndarray:
    sieve = np.ones(P + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(P) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve)


def log_abs_zeta_primesum(s, P: int) -> tuple[float, float]:
    """Truncated ``sum_p sum_m cos(m t log p) / (m p^(m sigma))`` and a tail bound.

    The true ``log|zeta(s)|`` lies within ``value +/- tail``.
    """
    s = complex(s)
    _check_sigma(s)
    if P < 2:
        raise ValueError("P must be at least 2")
    sigma, t = s.real, s.imag
    p = primes_upto(int(P)).astype(float)
    lp = np.log(p)
    total = 0.0
    m_tail = 0.0
    m = 1
    active = np.ones(len(p), dtype=bool)
    while active.any():
        pa, la = p[active], lp[active]
        mag = np.exp(-m * sigma * la)
        total += float(np.sum(np.cos(m * t * la) * mag) / m)
        # remainder over m' > m: p^{-(m+1) sigma} / (1 - p^{-sigma})
        rem = np.exp(-(m + 1) * sigma * la) / (1.0 - np.exp(-sigma * la))
        done = rem < 1e-15
        m_tail += float(np.sum(rem[done]))
        idx = np.flatnonzero(active)
        active[idx[done]] = False
        m += 1
    tail = P ** (1.0 - sigma) / (sigma - 1.0) + m_tail + 4 * _EPS * len(p) * 2
    return total, tail


# --- bounds ------------------------------------------------------------------------

class TrivialBounds(NamedTuple):
    upper_abs: float      # zeta(sigma)
    upper_inv: float      # zeta(sigma) / zeta(2 sigma)
    radius_abs: float
    radius_inv: float


def trivial_bounds(sigma: float, target_err: float = 1e-12) -> TrivialBounds:
    sigma = float(sigma)
    if not sigma > 1:
        raise DomainError(f"need sigma > 1, got {sigma!r}")
    z1 = zeta_em(sigma, target_err, strict=False)
    z2 = zeta_em(2 * sigma, target_err, strict=False)
    a, b = z1.value.real, z2.value.real
    inv = a / b
    rinv = inv * (z1.radius / a + z2.radius / b)
    return TrivialBounds(a, inv, z1.radius, rinv)


@dataclass(frozen=True)
class Factor:
    n: int
    exponent: float       # a_n / a_1
    value: float          # zeta(sigma) for n = 0, |zeta(sigma + i n t)| otherwise
    radius: float


@dataclass
class InverseBound:
    bound: float
    radius: float
    factors: list


def _admissible_exponents(poly: TrigPoly) -> list[tuple[int, float]]:
    rep = check_conditions(poly, "exact")
    if not rep.admissible:
        raise ContractError("polynomial not admissible: fails " + ", ".join(rep.failures()))
    a = rep.poly.coefficients
    return [(0, float(a[0] / a[1]))] + [(n, float(a[n] / a[1])) for n in range(2, len(a)) if a[n] != 0]


def _bound_from(exps, sigma: float, t: float, target_err: float) -> InverseBound:
    factors = []
    logb = 0.0
    rel = 0.0
    for n, e in exps:
        z = zeta_em(complex(sigma, n * t), target_err, strict=False)
        v = abs(z.value)
        if v - z.radius <= 0:
            raise PrecisionError(f"|zeta({sigma}+{n * t}i)| not bounded away from 0")
        factors.append(Factor(n, e, v, z.radius))
        logb += e * math.log(v)
        rel += e * z.radius / v
    b = math.exp(logb)
    return InverseBound(b, b * rel, factors)


def trig_inverse_bound(poly: TrigPoly, sigma: float, t: float, target_err: float = 1e-12) -> InverseBound:
    """Right side of the cosine-polynomial inequality for ``1/|zeta(sigma+it)|``."""
    sigma = float(sigma)
    if not sigma > 1:
        raise DomainError(f"need sigma > 1, got {sigma!r}")
    return _bound_from(_admissible_exponents(poly), sigma, float(t), target_err)


def limit_coefficient(target_err: float = 1e-12) -> tuple[float, float]:
    """``zeta(2)^-4 = (6/pi^2)^4``, the sigma -> 1+ factor of zeta(sigma)/zeta(2 sigma)^4."""
    z = zeta_em(2.0, target_err)
    v = z.value.real ** -4
    return v, 4 * v * z.radius / z.value.real


def _is_classical(poly: TrigPoly) -> bool:
    a = poly.exact().coefficients
    return len(a) == 3 and a[1] != 0 and (a[0] / a[1], a[2] / a[1]) == (Fraction(3, 4), Fraction(1, 4))


@dataclass
class BoundReport:
    sigma: float
    t: float
    trivial_inv: float
    trivial_radius: float
    trig_inv: float
    trig_radius: float
    factors: list
    superior: bool | None          # None when the error radii overlap
    limit_coefficient: float
    classical_threshold: float | None = None   # zeta(sigma) / zeta(2 sigma)^4
    classical_factor: float | None = None      # |zeta(sigma + 2it)|
    literature_1_it: float | None = None


def _verdict(trig: float, rt: float, triv: float, rv: float) -> bool | None:
    if trig + rt < triv - rv:
        return True
    if trig - rt > triv + rv:
        return False
    return None


def compare(poly: TrigPoly, sigma: float, t: float, target_err: float = 1e-12,
            _exps=None) -> BoundReport:
    """Trivial versus cosine-polynomial bound on ``1/|zeta(sigma+it)|``."""
    sigma, t = float(sigma), float(t)
    if not sigma > 1:
        raise DomainError(f"need sigma > 1, got {sigma!r}")
    exps = _exps if _exps is not None else _admissible_exponents(poly)
    triv = trivial_bounds(sigma, target_err)
    ib = _bound_from(exps, sigma, t, target_err)
    lim, _ = limit_coefficient()
    rep = BoundReport(sigma, t, triv.upper_inv, triv.radius_inv, ib.bound, ib.radius, ib.factors,
                      _verdict(ib.bound, ib.radius, triv.upper_inv, triv.radius_inv), lim)
    if _is_classical(poly):
        z2 = zeta_em(2 * sigma, target_err, strict=False).value.real
        rep.classical_threshold = triv.upper_abs / z2 ** 4
        rep.classical_factor = next(f.value for f in ib.factors if f.n == 2)
    if t >= 3:
        rep.literature_1_it = LITERATURE_1_IT * math.log(t) / math.log(math.log(t))
    return rep


# --- scans -------------------------------------------------------------------------

def sigma_for(t: float, rule) -> float:
    """``1 + delta(t)`` for rule ``"inv_log"``, ``"loglog_over_log"`` or a fixed float delta."""
    if rule == "inv_log":
        if t < 3:
            raise ValueError("t must be at least 3")
        return 1.0 + 1.0 / math.log(t)
    if rule == "loglog_over_log":
        if t < 3:
            raise ValueError("t must be at least 3 so that log log t > 0")
        return 1.0 + math.log(math.log(t)) / math.log(t)
    delta = float(rule)
    if not delta > 0:
        raise ValueError("fixed delta must be positive")
    return 1.0 + delta


def _scan_row(args):
    poly, exps, t, rule, target_err = args
    return compare(poly, sigma_for(t, rule), t, target_err, _exps=exps)


def scan_curve(poly: TrigPoly, t_list: Sequence[float], delta_rule="inv_log",
               target_err: float = 1e-10, workers: int | None = None) -> list[BoundReport]:
    """One :class:`BoundReport` per ``t`` with ``sigma = 1 + delta(t)``; input order kept."""
    exps = _admissible_exponents(poly)
    for t in t_list:
        sigma_for(t, delta_rule)       # validate every t up front
    jobs = [(poly, exps, float(t), delta_rule, target_err) for t in t_list]
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(_scan_row, jobs))
    return [_scan_row(j) for j in jobs]


def log_t_grid(t_min: float, t_max: float, points: int) -> list[float]:
    if points < 1 or t_min <= 0 or t_max < t_min:
        raise ValueError("need 0 < t_min <= t_max and points >= 1")
    if points == 1:
        return [float(t_min)]
    return [float(v) for v in np.geomspace(t_min, t_max, points)]
