"""Scalar curvature of the extremal (Bochner-Kahler) metric and its L2 norm.

The moment polytope of the labeled plane is the triangle P_lam with vertices
(-lam, -lam), (2 lam, -lam), (-lam, 2 lam): x1 >= -lam, x2 >= -lam,
x1 + x2 <= lam.  Its centroid is the origin and its area is 9 lam^2 / 2.
Polynomials are integrated over it exactly through the affine map from the
standard simplex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Mapping, Optional, Sequence

from .errors import RouteMismatchError
from .exact_arith import BigReal, Number, context, format_rational, to_mpf
from .heat import EXTREMAL_TAU_SQ, extract_tau_sq
from .topology import WeightTriple, chern_numbers, symmetric_functions

Monomial = tuple[int, int]
Polynomial = Mapping[Monomial, Fraction]

MAX_MOMENT_DEGREE = 8


def polytope_vertices(lam: Fraction) -> list[tuple[Fraction, Fraction]]:
    lam = Fraction(lam)
    return [(-lam, -lam), (2 * lam, -lam), (-lam, 2 * lam)]


def _standard_moment(a: int, b: int) -> Fraction:
    # integral of s^a t^b over {s, t >= 0, s + t <= 1}
    return Fraction(factorial(a) * factorial(b), factorial(a + b + 2))


def simplex_moment(e1: int, e2: int, lam: Fraction = Fraction(1)) -> Fraction:
    """Exact integral of x1^e1 x2^e2 over P_lam."""
    if e1 < 0 or e2 < 0:
        raise ValueError("exponents must be non-negative")
    if e1 + e2 > MAX_MOMENT_DEGREE:
        raise ValueError(f"total degree above {MAX_MOMENT_DEGREE} is not supported")
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    # x1 = lam (3s - 1), x2 = lam (3t - 1), Jacobian 9 lam^2
    total = Fraction(0)
    for i in range(e1 + 1):
        for j in range(e2 + 1):
            coeff = comb(e1, i) * comb(e2, j) * 3 ** (i + j) * (-1) ** (e1 - i + e2 - j)
            total += coeff * _standard_moment(i, j)
    return 9 * lam ** (2 + e1 + e2) * total


def integrate_polynomial(poly: Polynomial, lam: Fraction = Fraction(1)) -> Fraction:
    return sum((c * simplex_moment(e1, e2, lam) for (e1, e2), c in poly.items()), Fraction(0))


def poly_mul(f: Polynomial, g: Polynomial) -> dict[Monomial, Fraction]:
    out: dict[Monomial, Fraction] = {}
    for (a1, a2), c in f.items():
        for (b1, b2), d in g.items():
            key = (a1 + b1, a2 + b2)
            out[key] = out.get(key, Fraction(0)) + c * d
    return out


def _hat(weights: Sequence[int]) -> list[int]:
    # N-hat_r, the product of all weights except the r-th
    return [prod(w for k, w in enumerate(weights) if k != r) for r in range(len(weights))]


def tau_lambda_affine(weights, m: int, lam: Fraction) -> dict[Monomial, Fraction]:
    """Extremal scalar curvature on P_lam^m as an affine polynomial (m = 2 only)."""
    if m != 2:
        raise ValueError("polynomial form is only available for m = 2")
    n, hats, lam = 2 * m, _hat(list(weights)), Fraction(lam)
    const = Fraction(n, m + 1) * sum(Fraction(1, h) for h in hats) / lam
    slope = Fraction(2 * (m + 2), m + 1) / (lam * lam)
    return {
        (0, 0): const,
        (1, 0): slope * (Fraction(1, hats[m]) - Fraction(1, hats[0])),
        (0, 1): slope * (Fraction(1, hats[m]) - Fraction(1, hats[1])),
    }


def tau_lambda(weights, m: int, lam: Fraction, x: Sequence[Fraction]) -> Fraction:
    """Extremal scalar curvature at a point x of the simplex P_lam^m.

    ``weights`` has m + 1 entries, taken in the given order.
    """
    weights = list(weights)
    if len(weights) != m + 1 or len(x) != m:
        raise ValueError("need m + 1 weights and a point with m coordinates")
    lam = Fraction(lam)
    hats = _hat(weights)
    n = 2 * m
    const = Fraction(n, m + 1) * sum(Fraction(1, h) for h in hats)
    linear = sum(
        (Fraction(1, hats[m]) - Fraction(1, hats[j])) * Fraction(x[j]) / lam for j in range(m)
    )
    return (const + Fraction(2 * (m + 2), m + 1) * linear) / lam


def tau1_m2(w: WeightTriple, x: Sequence[Fraction]) -> Fraction:
    n1, n2, n3 = w
    x1, x2 = Fraction(x[0]), Fraction(x[1])
    return Fraction(4, 3 * n1 * n2 * n3) * (
        (n1 + n2 + n3) + 2 * n3 * (x1 + x2) - 2 * n1 * x1 - 2 * n2 * x2
    )


class Route(enum.Enum):
    CLOSED_FORM = "closed_form"
    POLYTOPE_INTEGRATION = "polytope_integration"


@dataclass(frozen=True)
class TauSqResult:
    """int tau^2 = pi2_coefficient * pi^2."""

    pi2_coefficient: Fraction
    route: Route

    def to_json(self) -> dict:
        return {"pi2_coefficient": format_rational(self.pi2_coefficient),
                "route": self.route.value}


def tau_sq_on_polytope(w: WeightTriple, lam: Fraction = Fraction(1)) -> Fraction:
    """s (2 pi)^2 times the integral of tau_lam^2 over P_lam, as a multiple of pi^2."""
    tau = tau_lambda_affine(w, 2, lam)
    return 4 * symmetric_functions(w).s * integrate_polynomial(poly_mul(tau, tau), lam)


def tau_sq_integral(w: WeightTriple, route: Route = Route.CLOSED_FORM) -> TauSqResult:
    closed = EXTREMAL_TAU_SQ * chern_numbers(w).d
    polytope = tau_sq_on_polytope(w)
    if closed != polytope:
        raise RouteMismatchError(f"int tau^2 routes disagree for {w.as_list()}: "
                                 f"{closed} vs {polytope}")
    return TauSqResult(closed if route is Route.CLOSED_FORM else polytope, route)


@dataclass(frozen=True)
class ExtremalReport:
    extremal: bool
    tau_sq_heard: BigReal
    tau_sq_extremal: BigReal
    relative_error: BigReal

    def __bool__(self):
        return self.extremal

    def to_json(self) -> dict:
        return {
            "extremal": self.extremal,
            "tau_sq_heard": self.tau_sq_heard.decimal(),
            "tau_sq_extremal": self.tau_sq_extremal.decimal(),
            "relative_error": self.relative_error.decimal(),
        }


def check_extremal(w: WeightTriple, a2_0: Number, T: Number,
                   rel_tol: Number = Fraction(1, 10**9),
                   prec: Optional[int] = None) -> ExtremalReport:
    """Decide whether a2 on functions is that of the extremal metric.

    The extremal metric minimizes int tau^2 in its Kahler class, so it is
    detected by comparing the heard int tau^2 with 96 pi^2 d.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    chern = chern_numbers(w)
    heard = extract_tau_sq(a2_0, chern.b, chern.c, T, prec)
    ctx = context(heard.precision)
    target = BigReal(to_mpf(tau_sq_integral(w).pi2_coefficient, ctx) * ctx.pi**2, heard.precision)
    rel = abs(heard / target - 1)
    return ExtremalReport(extremal=rel <= rel_tol, tau_sq_heard=heard,
                          tau_sq_extremal=target, relative_error=rel)
