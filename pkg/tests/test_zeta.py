import math

import numpy as np
import pytest

from trigzeta import zeta
from trigzeta.trigpoly import CLASSICAL, TrigPoly

from oracles import log_abs_zeta_mp, zeta_mp


@pytest.mark.parametrize("s, exact", [(2, math.pi ** 2 / 6), (4, math.pi ** 4 / 90)])
def test_even_values(s, exact):
    z = zeta.zeta_em(s)
    assert abs(z.value - exact) <= 1e-12
    assert z.radius <= 1e-12


@pytest.mark.parametrize("s", [1.5 + 10j, 1.01, 3 - 50j, 1.1 + 1e3j, 1.2 + 1e5j])
def test_matches_mpmath(s):
    # at large height the rounding estimate alone exceeds 1e-11, hence non-strict
    z = zeta.zeta_em(s, 1e-11, strict=abs(s.imag) < 100)
    assert abs(z.value - zeta_mp(s)) <= z.radius


def test_direct_sum_oracle_agrees():
    s = 1.5 + 10j
    z = zeta.zeta_em(s)
    v, err = zeta.direct_sum_oracle(s)
    assert abs(z.value - v) <= z.radius + err <= 1e-8


@pytest.mark.parametrize("s", [1.0, 0.5 + 3j, -2])
def test_domain_error(s):
    with pytest.raises(zeta.DomainError):
        zeta.zeta_em(s)


def test_precision_error_when_target_unreachable():
    with pytest.raises(zeta.PrecisionError):
        zeta.zeta_em(1.5 + 1e7j, 1e-15)


def test_large_height_non_strict():
    z = zeta.zeta_em(1.1 + 2e6j, 1e-12, strict=False)
    assert abs(z.value - zeta_mp(1.1 + 2e6j)) <= z.radius


def test_prime_sum_consistency():
    rng = np.random.default_rng(2)
    for _ in range(50):
        s = complex(rng.uniform(1.5, 3), rng.uniform(0, 100))
        v, tail = zeta.log_abs_zeta_primesum(s, 10_000)
        ref = math.log(abs(zeta.zeta_em(s).value))
        assert abs(v - ref) <= tail + 1e-9


def test_primes():
    assert list(zeta.primes_upto(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_trivial_bounds_monotone_toward_one():
    sig = np.linspace(2.0, 1.01, 40)
    inv = [zeta.trivial_bounds(s).upper_inv for s in sig]
    assert all(b > a for a, b in zip(inv, inv[1:]))
    tb = zeta.trivial_bounds(2.0)
    assert tb.upper_inv == pytest.approx((math.pi ** 2 / 6) / (math.pi ** 4 / 90), rel=1e-13)


def test_classical_bound_at_t_zero_is_zeta_sigma():
    for sigma in (1.05, 1.3, 2.0):
        b = zeta.trig_inverse_bound(CLASSICAL, sigma, 0.0)
        z = zeta.zeta_em(sigma)
        assert abs(b.bound - z.value.real) <= b.radius + z.radius + 1e-13 * b.bound


def test_bound_rejects_inadmissible():
    with pytest.raises(zeta.ContractError):
        zeta.trig_inverse_bound(TrigPoly([3, 1, 1]), 1.5, 10.0)
    with pytest.raises(zeta.DomainError):
        zeta.trig_inverse_bound(CLASSICAL, 1.0, 10.0)


def test_bound_chain_positivity_property():
    rng = np.random.default_rng(1234)
    for _ in range(100):
        sigma = 1 + rng.uniform(1e-6, 1.0)
        t = rng.uniform(0, 100)
        total = 3 * math.log(zeta.zeta_em(sigma, 1e-10).value.real)
        for n, a in ((1, 4), (2, 1)):
            z = zeta.zeta_em(complex(sigma, n * t), 1e-10)
            assert z.radius <= 1e-10
            total += a * math.log(abs(z.value))
        assert total >= -1e-9


def test_compare_superior_at_large_t():
    sigma = 1 + 1 / math.log(1e6)
    rep = zeta.compare(CLASSICAL, sigma, 1e6)
    assert rep.superior is True
    assert rep.trig_inv + rep.trig_radius < rep.trivial_inv - rep.trivial_radius
    assert rep.classical_factor == pytest.approx(math.exp(log_abs_zeta_mp(complex(sigma, 2e6))), rel=1e-9)
    assert rep.literature_1_it is not None


def test_compare_not_superior_at_t_zero():
    rep = zeta.compare(CLASSICAL, 1.5, 0.0)
    assert rep.superior is False
    assert rep.literature_1_it is None


def test_verdict_is_three_valued():
    assert zeta._verdict(1.0, 0.1, 2.0, 0.1) is True
    assert zeta._verdict(3.0, 0.1, 2.0, 0.1) is False
    assert zeta._verdict(2.0, 0.1, 2.05, 0.1) is None


def test_limit_coefficient():
    v, r = zeta.limit_coefficient()
    assert abs(v - (6 / math.pi ** 2) ** 4) <= r + 1e-15


def test_sigma_rules():
    assert zeta.sigma_for(math.e ** 2, "inv_log") == pytest.approx(1.5)
    assert zeta.sigma_for(100, 0.25) == 1.25
    assert zeta.sigma_for(1e4, "loglog_over_log") == pytest.approx(1 + math.log(math.log(1e4)) / math.log(1e4))
    with pytest.raises(ValueError):
        zeta.sigma_for(2, "inv_log")
    with pytest.raises(ValueError):
        zeta.sigma_for(10, -0.1)


def test_scan_order_and_workers():
    ts = zeta.log_t_grid(1e3, 1e4, 4)
    rows = zeta.scan_curve(CLASSICAL, ts, "inv_log")
    assert [r.t for r in rows] == ts
    par = zeta.scan_curve(CLASSICAL, ts, "inv_log", workers=2)
    assert [r.trig_inv for r in par] == [r.trig_inv for r in rows]
