"""Topological invariants of the weighted projective plane CP^2(N1, N2, N3).

Everything here is a closed form obtained by circle-action localization, so
the Chern numbers come out as exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .errors import InconsistentInputError, InvalidWeightsError
from .exact_arith import DEFAULT_PRECISION, BigReal, Number, format_rational, gcd


@dataclass(frozen=True, init=False)
class WeightTriple:
    """Pairwise coprime positive weights, stored in ascending order."""

    N1: int
    N2: int
    N3: int

    def __init__(self, *weights):
        if len(weights) == 1 and not isinstance(weights[0], int):
            weights = tuple(weights[0])
        if len(weights) != 3:
            raise InvalidWeightsError("exactly three weights are required")
        for w in weights:
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise InvalidWeightsError(f"weights must be positive integers, got {w!r}")
        for a, b in combinations(weights, 2):
            if gcd(a, b) != 1:
                raise InvalidWeightsError("weights not pairwise coprime")
        n1, n2, n3 = sorted(weights)
        object.__setattr__(self, "N1", n1)
        object.__setattr__(self, "N2", n2)
        object.__setattr__(self, "N3", n3)

    def __iter__(self):
        return iter((self.N1, self.N2, self.N3))

    def as_list(self) -> list[int]:
        return [self.N1, self.N2, self.N3]

    @property
    def is_smooth(self) -> bool:
        return self.N3 == 1


@dataclass(frozen=True)
class SymmetricData:
    p: int  # N1 + N2 + N3
    q: int  # N1^2 + N2^2 + N3^2
    r: int  # N1 N2 + N1 N3 + N2 N3
    s: int  # N1 N2 N3

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r, "s": self.s}


@dataclass(frozen=True)
class ChernData:
    b: Fraction  # integral of c1^2
    c: Fraction  # integral of c2, the orbifold Euler characteristic
    d: Fraction  # b - 2c

    def to_json(self) -> dict:
        return {"b": format_rational(self.b), "c": format_rational(self.c),
                "d": format_rational(self.d)}


def symmetric_functions(w: WeightTriple) -> SymmetricData:
    n1, n2, n3 = w
    return SymmetricData(
        p=n1 + n2 + n3,
        q=n1 * n1 + n2 * n2 + n3 * n3,
        r=n1 * n2 + n1 * n3 + n2 * n3,
        s=n1 * n2 * n3,
    )


def chern_numbers(w: WeightTriple) -> ChernData:
    sym = symmetric_functions(w)
    return ChernData(
        b=Fraction(sym.p * sym.p, sym.s),
        c=Fraction(sym.r, sym.s),
        d=Fraction(sym.q, sym.s),
    )


def orbifold_euler_characteristic(w: WeightTriple) -> Fraction:
    return sum((Fraction(1, n) for n in w), Fraction(0))


@dataclass(frozen=True)
class LocalizationRecord:
    """Fixed-point data of the circle action rotating the last coordinate.

    ``y_range`` is the length of the moment-map image.  Values are exact
    Fractions when they can be, BigReal otherwise.
    """

    sigma_degree: Fraction
    y_range: Number
    area_sigma: Number
    volume: Number
    c1_wedge_omega: Number


def localization_suite(
    w: WeightTriple,
    y_range: Optional[Number] = None,
    vol: Optional[Number] = None,
    *,
    precision: int = DEFAULT_PRECISION,
    rel_tol: Fraction = Fraction(1, 10**20),
) -> LocalizationRecord:
    """Area of the minimal orbi-sphere, volume and the pairing of c1 with omega.

    Either the moment-map range or the volume must be given; when both are,
    they must satisfy ``2 vol = b_sigma * y_range**2``.
    """
    if y_range is None and vol is None:
        raise ValueError("need y_range or vol")
    n1, n2, n3 = w
    p = n1 + n2 + n3
    b_sigma = Fraction(n3, n1 * n2)

    if y_range is not None:
        if y_range <= 0:
            raise ValueError("y_range must be positive")
        implied_vol = b_sigma * y_range * y_range / 2
        if vol is not None:
            gap = abs(implied_vol - vol)
            if isinstance(gap, BigReal):
                gap = gap.to_fraction()
            scale = vol.to_fraction() if isinstance(vol, BigReal) else Fraction(vol)
            if gap > rel_tol * max(scale, Fraction(1)):
                raise InconsistentInputError("y_range and vol violate 2 vol = b_sigma * y_range^2")
        return LocalizationRecord(
            sigma_degree=b_sigma,
            y_range=y_range,
            area_sigma=b_sigma * y_range,
            volume=implied_vol,
            c1_wedge_omega=Fraction(p, n1 * n2) * y_range,
        )

    if vol <= 0:
        raise ValueError("vol must be positive")
    vol_big = BigReal.of(vol, precision)
    y = (2 * vol_big / b_sigma).sqrt()
    return LocalizationRecord(
        sigma_degree=b_sigma,
        y_range=y,
        area_sigma=b_sigma * y,
        volume=vol,
        c1_wedge_omega=c1_wedge_omega(w, vol, precision),
    )


def c1_wedge_omega(w: WeightTriple, vol: Number, precision: int = DEFAULT_PRECISION) -> BigReal:
    """Integral of c1 wedge omega for a Kahler class of volume ``vol``."""
    sym = symmetric_functions(w)
    # p * sqrt(2 vol / s)
    return sym.p * (2 * BigReal.of(vol, precision) / sym.s).sqrt()


def coprime_triples(bound: int, ordered: bool = False):
    """Pairwise coprime triples with entries in 1..bound.

    With ``ordered`` every permutation is produced, otherwise only ascending ones.
    """
    for a in range(1, bound + 1):
        for b in range(1 if ordered else a, bound + 1):
            if gcd(a, b) != 1:
                continue
            for c in range(1 if ordered else b, bound + 1):
                if gcd(a, c) == 1 and gcd(b, c) == 1:
                    yield (a, b, c)
