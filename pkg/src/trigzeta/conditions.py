"""Admissibility of a cosine polynomial for bounding ``1/|zeta(sigma+it)|``.

Condition I:   a_1 > 0
Condition II:  sum_n |a_n| <= 2 a_1
Condition III: a_n >= 0 for every n >= 2
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .trigpoly import NonnegCertificate, Scalar, TrigPoly, certify_nonnegative

FLOAT_TOL = 1e-12


class UndefinedRatioError(ValueError):
    """a_1 <= 0, so the exponent ratios a_n / a_1 are meaningless."""


@dataclass(frozen=True)
class ConditionReport:
    poly: TrigPoly
    condI: bool
    condII: bool
    condIII: bool
    nonneg: NonnegCertificate
    ratio: Scalar | None        # a_0 / a_1, only when condI
    exponents: tuple | None     # (a_0/a_1, a_2/a_1, ..., a_N/a_1)
    slackII: Scalar             # 2 a_1 - sum |a_n|
    a0_positive: bool
    zero_free_region: bool      # a_n >= 0 for all n and a_1 > a_0 (informational)

    @property
    def admissible(self) -> bool:
        return self.condI and self.condII and self.condIII and self.nonneg.nonnegative and self.a0_positive

    def failures(self) -> list[str]:
        out = []
        if not self.a0_positive:
            out.append("a0 > 0")
        if not self.condI:
            out.append("I")
        if not self.condII:
            out.append("II")
        if not self.condIII:
            out.append("III")
        if not self.nonneg.nonnegative:
            out.append(f"non-negativity ({self.nonneg.verdict})")
        return out


def check_conditions(poly: TrigPoly, mode: str | None = None, tol: float = FLOAT_TOL) -> ConditionReport:
    """Evaluate Conditions I-III and certify non-negativity.

    ``mode`` defaults to ``"exact"`` for rational input and ``"numeric"``
    otherwise.  In numeric mode the boundaries are decided with slack ``tol``.
    """
    if mode is None:
        mode = "exact" if poly.is_exact else "numeric"
    if mode == "exact" and not poly.is_exact:
        poly = poly.exact()
    a = poly.coefficients
    eps = 0 if mode == "exact" else tol
    a1 = poly[1]
    absum = sum(abs(c) for c in a)
    slack = 2 * a1 - absum
    condI = a1 > eps
    condII = slack >= -eps
    condIII = all(c >= -eps for c in a[2:])
    if mode == "exact":
        cert = certify_nonnegative(poly, "exact")
    else:
        cert = certify_nonnegative(poly, "numeric")
    ratio = exps = None
    if condI:
        ratio = a[0] / a1
        exps = (ratio,) + tuple(c / a1 for c in a[2:])
    return ConditionReport(
        poly=poly,
        condI=condI,
        condII=condII,
        condIII=condIII,
        nonneg=cert,
        ratio=ratio,
        exponents=exps,
        slackII=slack,
        a0_positive=a[0] > 0,
        zero_free_region=all(c >= 0 for c in a) and a1 > a[0],
    )


def exponent_budget(report: ConditionReport) -> Scalar:
    """Total exponent carried by the log-order factors: ``(sum|a_n| - a_1) / a_1``."""
    if not report.condI:
        raise UndefinedRatioError("Condition I fails (a_1 <= 0); budget undefined")
    a = report.poly.coefficients
    a1 = a[1]
    return (sum(abs(c) for c in a) - a1) / a1


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if v is None or isinstance(v, (bool, str)):
        return v
    return float(v)


def certificate_to_json(cert: NonnegCertificate) -> dict:
    return {
        "verdict": cert.verdict,
        "method": cert.method,
        "margin": _jsonable(cert.margin),
        "witness": None if cert.theta is None else {
            "theta": float(cert.theta), "x": _jsonable(cert.x), "value": _jsonable(cert.value)},
    }


def report_to_json(report: ConditionReport) -> dict:
    out = {
        "coefficients": [_jsonable(c) for c in report.poly.coefficients],
        "condI": report.condI,
        "condII": report.condII,
        "condIII": report.condIII,
        "a0_positive": report.a0_positive,
        "nonneg": certificate_to_json(report.nonneg),
        "ratio": _jsonable(report.ratio),
        "exponents": None if report.exponents is None else [_jsonable(e) for e in report.exponents],
        "slackII": _jsonable(report.slackII),
        "exponent_budget": _jsonable(exponent_budget(report)) if report.condI else None,
        "zero_free_region": report.zero_free_region,
        "admissible": report.admissible,
    }
    return out
