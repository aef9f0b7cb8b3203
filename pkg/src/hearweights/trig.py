"""Cotangent sums, four-fold Dedekind sums and the singular heat contribution T.

T collects the contributions of the three cone points to the constant term
of the heat trace.  It is evaluated two independent ways: straight from the
cosecant sums (:func:`T_direct`) and from the expansion
``csc^2 a csc^2 b = 1 + cot^2 a + cot^2 b + cot^2 a cot^2 b``
(:func:`T_closed`), which needs only the cotangent-square identity and one
Dedekind sum per cone point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import NoApproximantError, PoleError
from .exact_arith import (
    DEFAULT_PRECISION,
    BigReal,
    context,
    default_tolerance,
    format_rational,
    rationalize,
)
from .topology import WeightTriple, orbifold_euler_characteristic, symmetric_functions

RECONSTRUCTION_FACTOR = 10**6


@dataclass(frozen=True)
class TrigSumResult:
    value: BigReal
    reconstructed: Optional[Fraction] = None

    @property
    def precision(self) -> int:
        return self.value.precision

    def exact_or_value(self):
        return self.reconstructed if self.reconstructed is not None else self.value

    def to_json(self) -> dict:
        return {
            "decimal": self.value.decimal(),
            "precision": self.precision,
            "rational": None if self.reconstructed is None else format_rational(self.reconstructed),
        }


def _angle(ctx, k: int, n: int):
    # k*pi/n with k reduced mod n; cot and sin^2 both have period pi
    return ctx.pi * (k % n) / n


def cot_sq_sum(N: int) -> Fraction:
    """Sum of cot^2(j pi / N) over j = 1..N-1, in closed form."""
    if N < 1:
        raise ValueError("N must be positive")
    return Fraction((N - 1) * (N - 2), 3)


def cot_sq_sum_direct(N: int, prec: int = DEFAULT_PRECISION) -> BigReal:
    if N < 1:
        raise ValueError("N must be positive")
    ctx = context(prec)
    total = ctx.mpf(0)
    for j in range(1, N):
        total += ctx.cot(_angle(ctx, j, N)) ** 2
    return BigReal(total, prec)


def dedekind4(p0: int, p1: int, p2: int, p3: int, p4: int,
              prec: int = DEFAULT_PRECISION) -> BigReal:
    """Four-fold Dedekind cotangent sum d(p0; p1, p2, p3, p4)."""
    if p0 < 1:
        raise ValueError("p0 must be positive")
    ctx = context(prec)
    if p0 == 1:
        return BigReal(ctx.mpf(0), prec)
    total = ctx.mpf(0)
    for j in range(1, p0):
        term = ctx.mpf(1)
        for a in (p1, p2, p3, p4):
            if (j * a) % p0 == 0:
                raise PoleError(f"cot({j}*{a}*pi/{p0}) has a pole")
            term *= ctx.cot(_angle(ctx, j * a, p0))
        total += term
    return BigReal(total, prec)


def _csc_term(ctx, n: int, a: int, b: int):
    # 1 / (16 sin^2(a pi/n) sin^2(b pi/n))
    sa = ctx.sin(_angle(ctx, a, n))
    sb = ctx.sin(_angle(ctx, b, n))
    return 1 / (16 * sa * sa * sb * sb)


def _cone_point_sum(ctx, n: int, a: int, b: int):
    return ctx.fsum(_csc_term(ctx, n, a * j, b * j) for j in range(1, n))


def _cone_points(w: WeightTriple):
    n1, n2, n3 = w
    return ((n1, n2, n3), (n2, n1, n3), (n3, n1, n2))


def _reconstruct(value: BigReal, w: WeightTriple) -> Optional[Fraction]:
    s = symmetric_functions(w).s
    try:
        return rationalize(value, RECONSTRUCTION_FACTOR * s * s,
                           default_tolerance(value.precision))
    except NoApproximantError:
        return None


def T_direct(w: WeightTriple, prec: int = DEFAULT_PRECISION) -> TrigSumResult:
    """T as the defining sum over the cone points; weight-1 points add nothing."""
    ctx = context(prec)
    total = ctx.mpf(0)
    for n, a, b in _cone_points(w):
        if n > 1:
            total += _cone_point_sum(ctx, n, a, b) / n
    value = BigReal(total, prec)
    return TrigSumResult(value, _reconstruct(value, w))


def T_closed(w: WeightTriple, prec: int = DEFAULT_PRECISION) -> TrigSumResult:
    """T from the cotangent expansion.

    Summing the expansion at a cone point of order n gives
    ``(n-1)(2n-1)/3 + d(n; a, a, b, b)``, so that
    ``16 T = -3 + chi/3 + 2p/3 + sum_i d_i / N_i``.
    """
    chi = orbifold_euler_characteristic(w)
    p = symmetric_functions(w).p
    constant = Fraction(-3) + chi / 3 + Fraction(2 * p, 3)
    ctx = context(prec)
    total = ctx.mpf(constant.numerator) / constant.denominator
    for n, a, b in _cone_points(w):
        if n > 1:
            total += dedekind4(n, a, a, b, b, prec).value / n
    value = BigReal(total / 16, prec)
    return TrigSumResult(value, _reconstruct(value, w))


def donnelly_b0(N: int, m: int, j: int, prec: int = DEFAULT_PRECISION) -> BigReal:
    """Fixed-point weight |det (I - A)^-1| of a rotation by 2j pi/N and 2mj pi/N."""
    if not 1 <= m < N or gcd(m, N) != 1:
        raise ValueError("need 1 <= m < N with gcd(m, N) = 1")
    if j % N == 0:
        raise ValueError("j must not be a multiple of N")
    return BigReal(_csc_term(context(prec), N, j, m * j), prec)
