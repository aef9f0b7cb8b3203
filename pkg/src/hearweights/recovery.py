"""Recovering the weights of CP^2(N1, N2, N3) from spectral data.

The chain is: heat invariants -> (b, c, d) -> integers (p, q, r, s) -> the
cubic in u = N1 + N2 -> candidate triples, all of which must coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional

from .errors import AmbiguousRecoveryError, InconsistentInputError, InvalidWeightsError
from .exact_arith import (
    DEFAULT_PRECISION,
    BigReal,
    factorize,
    format_rational,
    integer_cubic_roots,
    is_prime,
    square_decompose,
)
from .heat import DEFAULT_MAX_DENOMINATOR, extract_b, extract_c2
from .topology import SymmetricData, WeightTriple, chern_numbers, symmetric_functions


@dataclass(frozen=True)
class SpectralInput:
    """a0, a1, a2 of the function Laplacian and a2 of the 1-form Laplacian."""

    a0: BigReal
    a1: BigReal
    a2_0: BigReal
    a2_1: BigReal
    max_denominator: int = DEFAULT_MAX_DENOMINATOR

    def __post_init__(self):
        if self.a0 <= 0 or self.a1 <= 0:
            raise InconsistentInputError("a0 and a1 must both be positive")
        if self.max_denominator < 1:
            raise ValueError("max_denominator must be positive")

    @classmethod
    def from_strings(cls, a0: str, a1: str, a2_0: str, a2_1: str,
                     precision: int = DEFAULT_PRECISION,
                     max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> "SpectralInput":
        vals = [BigReal.of(x, precision) for x in (a0, a1, a2_0, a2_1)]
        return cls(*vals, max_denominator=max_denominator)


@dataclass(frozen=True)
class RecoveryReport:
    weights: WeightTriple
    b: Fraction
    c: Fraction
    d: Fraction
    symmetric: SymmetricData
    cubic_roots: list[int] = field(default_factory=list)
    candidates: list[tuple[int, int, int]] = field(default_factory=list)
    degenerate: bool = False

    def to_json(self) -> dict:
        sym = self.symmetric
        return {
            "weights": self.weights.as_list(),
            "b": format_rational(self.b),
            "c": format_rational(self.c),
            "d": format_rational(self.d),
            "p": sym.p,
            "q": sym.q,
            "r": sym.r,
            "s": sym.s,
            "cubic_roots": list(self.cubic_roots),
            "degenerate": self.degenerate,
        }


def _as_positive_integer(x: Fraction, name: str) -> int:
    if x.denominator != 1 or x <= 0:
        raise InconsistentInputError(f"{name} = {x} is not a positive integer")
    return x.numerator


def _candidate(u: int, sym: SymmetricData) -> Optional[tuple[int, int, int]]:
    """Weights for the root u = N1 + N2, or None if the root is spurious."""
    n3 = sym.p - u
    if n3 <= 0 or sym.s % n3:
        return None
    v = sym.s // n3  # N1 N2
    disc = u * u - 4 * v
    if disc < 0:
        return None
    root = isqrt(disc)
    if root * root != disc or (u - root) % 2:
        return None
    n1, n2 = (u - root) // 2, (u + root) // 2
    if n1 <= 0:
        return None
    try:
        w = WeightTriple(n1, n2, n3)
    except InvalidWeightsError:
        return None
    if symmetric_functions(w) != sym:
        return None
    return (w.N1, w.N2, w.N3)


def recover_from_bcd(b: Fraction, c: Fraction, d: Fraction) -> RecoveryReport:
    """Weights from b = int c1^2, c = int c2 and d = b - 2c."""
    b, c, d = Fraction(b), Fraction(c), Fraction(d)
    if b <= 0 or c <= 0 or d <= 0:
        raise InconsistentInputError("b, c and d must be positive")
    if b - 2 * c != d:
        raise InconsistentInputError("b - 2c != d")

    # numerator and denominator of c are coprime, so s is read off directly
    s = c.denominator
    p_sq = _as_positive_integer(s * b, "s*b")
    p = isqrt(p_sq)
    if p * p != p_sq:
        raise InconsistentInputError(f"s*b = {p_sq} is not a perfect square")
    q = _as_positive_integer(s * d, "s*d")
    r = _as_positive_integer(s * c, "s*c")
    if p * p != q + 2 * r:
        raise InconsistentInputError("p^2 != q + 2r")
    sym = SymmetricData(p=p, q=q, r=r, s=s)

    roots = integer_cubic_roots(1, -2 * p, p * p + r, s - p * r)
    candidates = []
    for u in roots:
        if not 0 < u < p:
            continue
        cand = _candidate(u, sym)
        if cand is not None and cand not in candidates:
            candidates.append(cand)
    if not candidates:
        raise InconsistentInputError("no weight triple fits (b, c, d)")
    if len(candidates) > 1:
        raise AmbiguousRecoveryError(f"several weight triples fit: {candidates}")

    weights = WeightTriple(candidates[0])
    degenerate = p * p == 3 * r
    if degenerate and weights.as_list() != [1, 1, 1]:
        raise AmbiguousRecoveryError("p^2 = 3r but the weights are not (1, 1, 1)")
    return RecoveryReport(weights=weights, b=b, c=c, d=d, symmetric=sym,
                          cubic_roots=roots, candidates=candidates, degenerate=degenerate)


def recover_weights(spec: SpectralInput) -> RecoveryReport:
    b = extract_b(spec.a0, spec.a1, spec.max_denominator)
    c = extract_c2(spec.a2_0, spec.a2_1, b, spec.max_denominator)
    return recover_from_bcd(b, c, b - 2 * c)


def recover_with_chi(b: Fraction, chi: Fraction) -> RecoveryReport:
    """Weights from b and a prescribed orbifold Euler characteristic."""
    b, chi = Fraction(b), Fraction(chi)
    if b <= 0 or chi <= 0:
        raise InconsistentInputError("b and chi must be positive")
    return recover_from_bcd(b, chi, b - 2 * chi)


def _primes_of(n: int) -> list[int]:
    return [prime for prime, _ in factorize(n)]


def recover_prime(b: Fraction) -> WeightTriple:
    """Weights from b alone, assuming they are three distinct primes.

    Case split on the primes dividing the reduced denominator D of b.
    """
    b = Fraction(b)
    if b <= 0:
        raise InconsistentInputError("b must be positive")
    D = b.denominator
    known = _primes_of(D)

    if len(known) == 3:
        weights = known
    elif len(known) == 2:
        l = b * D
        if l.denominator != 1:
            raise InconsistentInputError("b*N1*N2 is not an integer")
        _, n3 = square_decompose(l.numerator)
        weights = known + [n3]
    elif len(known) == 1:
        l = b * D
        _, n2n3 = square_decompose(l.numerator)
        weights = known + _primes_of(n2n3)
    elif D == 1:
        _, s = square_decompose(b.numerator)
        weights = _primes_of(s)
    else:
        raise InconsistentInputError("denominator of b has more than three prime factors")

    if len(weights) != 3 or len(set(weights)) != 3 or not all(is_prime(n) for n in weights):
        raise InconsistentInputError(f"b = {b} does not come from three distinct prime weights")
    w = WeightTriple(weights)
    if chern_numbers(w).b != b:
        raise InconsistentInputError(f"b = {b} does not match the candidate weights {w.as_list()}")
    return w
