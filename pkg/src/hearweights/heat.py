"""Heat invariants of the Hodge Laplacian on 0- and 1-forms.

For form degree ``p`` on a 4-dimensional Kahler orbifold the first three
invariants are

    a0 = k vol / (16 pi^2)
    a1 = k0 (int tau) / (96 pi^2),          int tau = 2 pi int c1 ^ omega
    a2 = A (int tau^2) / pi^2 + C c + B b + k T

where ``A, B, C`` come from the Gilkey coefficients after the curvature
terms are rewritten through the Chern-Weil identities for ``b = int c1^2``
and ``c = int c2``.  Inverting the p = 0 and p = 1 equations gives the
extraction helpers at the bottom of this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import InconsistentInputError, NoApproximantError
from .exact_arith import (
    DEFAULT_PRECISION,
    BigReal,
    Number,
    context,
    default_tolerance,
    format_rational,
    rationalize,
    to_mpf,
)
from .topology import WeightTriple, c1_wedge_omega, chern_numbers
from .trig import T_direct

DEFAULT_MAX_DENOMINATOR = 10**8
EXTREMAL_TAU_SQ = 96  # extremal int tau^2 is 96 pi^2 d


def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class FormDegreeCoefficients:
    n: int
    p: int
    k: int
    k0: int
    k1: int
    k2: int
    k3: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.k, self.k0, self.k1, self.k2, self.k3)


def k_coefficients(n: int, p: int) -> FormDegreeCoefficients:
    """Gilkey's weights on vol, tau, |R|^2, |Ric|^2 and tau^2 for p-forms."""
    if n < 2 or n % 2:
        raise ValueError("dimension must be a positive even integer")
    if not 0 <= p <= n:
        raise ValueError("form degree must satisfy 0 <= p <= n")
    c0, c1, c2 = _binom(n, p), _binom(n - 2, p - 1), _binom(n - 4, p - 2)
    return FormDegreeCoefficients(
        n=n,
        p=p,
        k=c0,
        k0=c0 - 6 * c1,
        k1=2 * c0 - 30 * c1 + 180 * c2,
        k2=-2 * c0 + 180 * c1 - 720 * c2,
        k3=5 * c0 - 60 * c1 + 180 * c2,
    )


@dataclass(frozen=True)
class CurvatureCombination:
    """k1 ||R||^2 + k2 |Ric|^2 + k3 tau^2 = c_tau tau^2 + c_rho |rho0|^2 + c_B |B0|^2."""

    c_tau: Fraction
    c_rho: Fraction
    c_B: Fraction


def curvature_combination(fdc: FormDegreeCoefficients) -> CurvatureCombination:
    if fdc.n != 4:
        raise ValueError("curvature decomposition is only implemented in real dimension 4")
    return CurvatureCombination(
        c_tau=Fraction(fdc.k1, 3) + Fraction(fdc.k2, 4) + fdc.k3,
        c_rho=Fraction(2 * (2 * fdc.k1 + fdc.k2)),
        c_B=Fraction(4 * fdc.k1),
    )


@dataclass(frozen=True)
class A2LinearForm:
    """a2 as a linear form in (int tau^2 / pi^2, c, b, T)."""

    tau_sq: Fraction
    c2: Fraction
    c1_sq: Fraction
    trig: int

    def __call__(self, tau_sq_over_pi2, c, b, T):
        return self.tau_sq * tau_sq_over_pi2 + self.c2 * c + self.c1_sq * b + self.trig * T


def a2_linear_form(fdc: FormDegreeCoefficients) -> A2LinearForm:
    """Eliminate |rho0|^2 and |B0|^2 with

        4 pi^2 b = int (tau^2/8 - |rho0|^2)
        8 pi^2 c = int (tau^2/12 - |rho0|^2 + |B0|^2)

    and divide by 360 * 16 pi^2.
    """
    cc = curvature_combination(fdc)
    tau = cc.c_tau + cc.c_rho / 8 + cc.c_B * Fraction(1, 24)
    return A2LinearForm(
        tau_sq=tau / 5760,
        c2=cc.c_B * 8 / 5760,
        c1_sq=-(cc.c_rho + cc.c_B) * 4 / 5760,
        trig=fdc.k,
    )


@dataclass(frozen=True)
class HeatCoefficients:
    p: int
    a0: BigReal
    a1: BigReal
    a2: BigReal
    a2_exact: Optional[Fraction] = None

    @property
    def precision(self) -> int:
        return self.a0.precision

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a0": self.a0.decimal(),
            "a1": self.a1.decimal(),
            "a2": self.a2.decimal(),
            "a2_exact": None if self.a2_exact is None else format_rational(self.a2_exact),
            "precision": self.precision,
        }


def heat_coefficients(
    w: WeightTriple,
    vol: Number,
    p: int = 0,
    tau_sq: Optional[Number] = None,
    prec: int = DEFAULT_PRECISION,
    *,
    tau_sq_pi2: Optional[Fraction] = None,
    trig_sum: Optional[Number] = None,
) -> HeatCoefficients:
    """a0, a1, a2 of the Laplacian on ``p``-forms.

    ``tau_sq`` is the L2 norm squared of the scalar curvature; pass
    ``tau_sq_pi2`` instead to give it exactly as a multiple of pi^2.  With
    neither, the extremal value is used.  ``trig_sum`` overrides T (mainly
    for testing); by default it is computed by :func:`T_direct`.
    """
    if tau_sq is not None and tau_sq_pi2 is not None:
        raise ValueError("give tau_sq or tau_sq_pi2, not both")
    if vol <= 0:
        raise ValueError("vol must be positive")
    fdc = k_coefficients(4, p)
    chern = chern_numbers(w)
    if tau_sq is None and tau_sq_pi2 is None:
        tau_sq_pi2 = EXTREMAL_TAU_SQ * chern.d
    if trig_sum is None:
        T = T_direct(w, prec)
        trig_sum = T.exact_or_value()

    ctx = context(prec)
    pi2 = ctx.pi**2
    a0 = BigReal(fdc.k * to_mpf(vol, ctx) / (16 * pi2), prec)
    # int tau = 2 pi int c1 ^ omega
    a1 = BigReal(fdc.k0 * 2 * ctx.pi * c1_wedge_omega(w, vol, prec).value / (96 * pi2), prec)

    form = a2_linear_form(fdc)
    a2_exact = None
    if tau_sq_pi2 is not None and isinstance(trig_sum, (int, Fraction)):
        a2_exact = form(Fraction(tau_sq_pi2), chern.c, chern.b, Fraction(trig_sum))
        a2 = BigReal.of(a2_exact, prec)
    else:
        ratio = to_mpf(tau_sq_pi2, ctx) if tau_sq_pi2 is not None else to_mpf(tau_sq, ctx) / pi2
        a2 = BigReal(form(ratio, to_mpf(chern.c, ctx), to_mpf(chern.b, ctx),
                          to_mpf(trig_sum, ctx)), prec)
    return HeatCoefficients(p=p, a0=a0, a1=a1, a2=a2, a2_exact=a2_exact)


def _precision_of(*xs) -> int:
    precs = [x.precision for x in xs if isinstance(x, BigReal)]
    return min(precs) if precs else DEFAULT_PRECISION


def _reconstruct(x, max_denominator: int, tol, what: str) -> Fraction:
    try:
        return rationalize(x, max_denominator, tol)
    except NoApproximantError as exc:
        raise InconsistentInputError(f"{what} is not a rational with small denominator") from exc


def extract_b(a0: Number, a1: Number, max_denominator: int = DEFAULT_MAX_DENOMINATOR,
              tol=None) -> Fraction:
    """int c1^2 from the 0-form invariants a0 and a1, via b = 72 a1^2 / a0."""
    prec = _precision_of(a0, a1)
    a0, a1 = BigReal.of(a0, prec), BigReal.of(a1, prec)
    if a0 <= 0 or a1 <= 0:
        raise InconsistentInputError("a0 and a1 must both be positive")
    value = 72 * a1 * a1 / a0
    return _reconstruct(value, max_denominator, tol or default_tolerance(prec), "b")


def extract_c2(a2_0: Number, a2_1: Number, b: Fraction,
               max_denominator: int = DEFAULT_MAX_DENOMINATOR, tol=None) -> Fraction:
    """int c2 from a2 on functions and on 1-forms.

    In a2(1-forms) - 4 a2(functions) both int tau^2 and T drop out.
    """
    if all(isinstance(x, (int, Fraction)) for x in (a2_0, a2_1)):
        return -6 * (Fraction(a2_1) - 4 * Fraction(a2_0) + Fraction(b) / 12)
    prec = _precision_of(a2_0, a2_1)
    value = -6 * (BigReal.of(a2_1, prec) - 4 * BigReal.of(a2_0, prec) + Fraction(b) / 12)
    return _reconstruct(value, max_denominator, tol or default_tolerance(prec), "int c2")


def extract_tau_sq(a2_0: Number, b: Fraction, c: Fraction, T: Number,
                   prec: Optional[int] = None) -> BigReal:
    """int tau^2 heard from a2 on functions: 960 pi^2 (a2_0 - c/90 + b/120 - T)."""
    prec = prec or _precision_of(a2_0, T)
    ctx = context(prec)
    form = a2_linear_form(k_coefficients(4, 0))
    known = to_mpf(form.c2 * Fraction(c) + form.c1_sq * Fraction(b), ctx)
    inner = to_mpf(a2_0, ctx) - known - form.trig * to_mpf(T, ctx)
    value = BigReal(ctx.pi**2 * inner / to_mpf(form.tau_sq, ctx), prec)
    if value < 0:
        raise InconsistentInputError("extracted int tau^2 is negative")
    return value
