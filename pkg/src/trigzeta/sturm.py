"""Exact real-root isolation for rational polynomials.

Polynomials here are plain lists of :class:`fractions.Fraction` in ascending
order of degree.  Everything is exact, so sign decisions are unconditional.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

# split points tried in turn when the midpoint happens to be a root
_SPLITS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(2, 5),
           Fraction(3, 5), Fraction(3, 7), Fraction(4, 7), Fraction(5, 11))


def trim(p: Sequence[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def horner(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def deriv(p: Sequence[Fraction]) -> list[Fraction]:
    return [k * p[k] for k in range(1, len(p))]


def primitive(p: Sequence[Fraction]) -> list[Fraction]:
    """Positive rescaling of ``p`` to coprime integer coefficients."""
    p = trim(p)
    if not p:
        return []
    den = lcm(*(Fraction(c).denominator for c in p))
    ints = [Fraction(c).numerator * (den // Fraction(c).denominator) for c in p]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [Fraction(v // g) for v in ints]


def divmod_poly(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        r.pop()
        r = trim(r)
    return q, r


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = primitive(a), primitive(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def squarefree(p: Sequence[Fraction]) -> list[Fraction]:
    """Product of the distinct irreducible factors of ``p`` (same real roots)."""
    p = primitive(p)
    if len(p) <= 2:
        return p
    g = poly_gcd(p, deriv(p))
    if len(g) <= 1:
        return p
    q, r = divmod_poly(p, g)
    assert not r
    return primitive(q)


def sturm_chain(p: Sequence[Fraction]) -> list[list[Fraction]]:
    p = primitive(p)
    chain = [p]
    if len(p) <= 1:
        return chain
    chain.append(primitive(deriv(p)))
    while len(chain[-1]) > 1:
        _, r = divmod_poly(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in primitive(r)])
    return chain


def sign_changes(chain: Sequence[Sequence[Fraction]], x: Fraction) -> int:
    count = 0
    prev = 0
    for q in chain:
        v = horner(q, x)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def count_roots(p: Sequence[Fraction], a: Fraction, b: Fraction) -> int:
    """Distinct roots of ``p`` in the open interval ``(a, b)``; ``p(a), p(b) != 0``."""
    chain = sturm_chain(squarefree(p))
    return sign_changes(chain, a) - sign_changes(chain, b)


def interval_horner(p: Sequence[Fraction], a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of ``p`` over ``[a, b]`` by interval Horner evaluation."""
    lo = hi = Fraction(0)
    for c in reversed(p):
        prods = (lo * a, lo * b, hi * a, hi * b)
        lo, hi = min(prods) + c, max(prods) + c
    return lo, hi


class RootIsolation:
    """Isolating intervals for the distinct real roots of ``p`` on ``[lo, hi]``.

    ``intervals`` is sorted and pairwise disjoint.  An entry ``(x, x)`` is an
    exact rational root; any other ``(a, b)`` holds exactly one root strictly
    inside, and ``self.q`` (the squarefree part of ``p`` with the exact
    endpoint roots divided out) is nonzero at ``a`` and ``b``.
    """

    def __init__(self, p: Sequence[Fraction], lo, hi):
        lo, hi = Fraction(lo), Fraction(hi)
        sf = squarefree(p)
        if not sf:
            raise ValueError("zero polynomial has no isolated roots")
        exact = []
        for e in (lo, hi):
            if len(sf) > 1 and horner(sf, e) == 0:
                exact.append((e, e))
                sf, r = divmod_poly(sf, [-e, Fraction(1)])
                sf = primitive(sf)
        self.q = sf
        self.intervals: list[tuple[Fraction, Fraction]] = sorted(exact + self._bisect(lo, hi))

    def _bisect(self, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
        if len(self.q) <= 1:
            return []
        chain = sturm_chain(self.q)
        out = []
        stack = [(lo, hi, sign_changes(chain, lo), sign_changes(chain, hi))]
        while stack:
            a, b, va, vb = stack.pop()
            n = va - vb
            if n == 0:
                continue
            if n == 1:
                out.append((a, b))
                continue
            for w in _SPLITS:
                m = a + (b - a) * w
                if horner(self.q, m) != 0:
                    break
            vm = sign_changes(chain, m)
            stack.append((a, m, va, vm))
            stack.append((m, b, vm, vb))
        return out

    def refine(self, iv: tuple[Fraction, Fraction], width: Fraction) -> tuple[Fraction, Fraction]:
        a, b = iv
        if a == b:
            return iv
        pos_a = horner(self.q, a) > 0
        while b - a > width:
            m = (a + b) / 2
            vm = horner(self.q, m)
            if vm == 0:
                return (m, m)
            if (vm > 0) == pos_a:
                a = m
            else:
                b = m
        return (a, b)

    def sign_at(self, h: Sequence[Fraction], iv: tuple[Fraction, Fraction]) -> int:
        """Exact sign of ``h`` at the root isolated by ``iv``."""
        a, b = iv
        if a == b:
            v = horner(h, a)
            return (v > 0) - (v < 0)
        h = trim(h)
        if not h:
            return 0
        d = poly_gcd(h, self.q)
        if len(d) > 1 and count_roots(d, a, b) == 1:
            return 0
        # shrink until h has no root in [a, b]; its sign there is then constant
        while True:
            ha, hb = horner(h, a), horner(h, b)
            if ha != 0 and hb != 0 and count_roots(h, a, b) == 0:
                return 1 if ha > 0 else -1
            a, b = self.refine((a, b), (b - a) / 2)
            if a == b:
                v = horner(h, a)
                return (v > 0) - (v < 0)
