"""Exact rationals, high-precision reals and small number-theoretic helpers.

Rationals are plain :class:`fractions.Fraction` objects (always in lowest
terms with a positive denominator).  High-precision reals are carried by
:class:`BigReal`, a thin immutable wrapper around an ``mpmath`` float that
remembers its working precision in bits.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import MPContext

from .errors import NoApproximantError

DEFAULT_PRECISION = 128
MIN_PRECISION = 64
FACTOR_LIMIT = 2**64
TRIAL_DIVISION_BOUND = 10**6

_local = threading.local()


def context(prec: int) -> MPContext:
    """Return a thread-local mpmath context running at ``prec`` bits."""
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(prec)
    if ctx is None:
        ctx = MPContext()
        ctx.prec = prec
        cache[prec] = ctx
    return ctx


def to_mpf(x, ctx: MPContext):
    """Convert int, Fraction, str, BigReal or mpf into an mpf of ``ctx``."""
    if isinstance(x, BigReal):
        return ctx.convert(x.value)
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        if "/" in x:
            return to_mpf(Fraction(x), ctx)
        return ctx.mpf(x)
    return ctx.convert(x)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class BigReal:
    """A real number held to a fixed number of mantissa bits."""

    value: object
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise ValueError(f"precision must be at least {MIN_PRECISION} bits")

    @classmethod
    def of(cls, x, precision: int = DEFAULT_PRECISION) -> "BigReal":
        if isinstance(x, BigReal):
            precision = min(precision, x.precision)
        return cls(to_mpf(x, context(precision)), precision)

    @property
    def ctx(self) -> MPContext:
        return context(self.precision)

    def _binary(self, other, op) -> "BigReal":
        prec = self.precision
        if isinstance(other, BigReal):
            prec = min(prec, other.precision)
        ctx = context(prec)
        return BigReal(op(to_mpf(self, ctx), to_mpf(other, ctx)), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __pow__(self, other):
        return self._binary(other, lambda a, b: a**b)

    def __neg__(self):
        return BigReal(-self.value, self.precision)

    def __abs__(self):
        return BigReal(abs(self.value), self.precision)

    def _cmp_value(self, other):
        ctx = context(self.precision if not isinstance(other, BigReal)
                      else max(self.precision, other.precision))
        return to_mpf(self, ctx), to_mpf(other, ctx)

    def __lt__(self, other):
        a, b = self._cmp_value(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_value(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_value(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_value(other)
        return a >= b

    def __float__(self):
        return float(self.value)

    def sqrt(self) -> "BigReal":
        return BigReal(self.ctx.sqrt(self.value), self.precision)

    def to_fraction(self) -> Fraction:
        """The exact binary value as a rational."""
        sign, man, exp, _ = self.ctx.convert(self.value)._mpf_
        man = -int(man) if sign else int(man)
        return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)

    def decimal(self) -> str:
        digits = int(self.precision * math.log10(2)) + 2
        return mpmath.nstr(self.value, digits, strip_zeros=False,
                           min_fixed=-5, max_fixed=digits)

    def to_json(self) -> dict:
        return {"decimal": self.decimal(), "precision": self.precision}

    def __repr__(self):
        return f"BigReal({self.decimal()}, precision={self.precision})"


Number = Union[int, Fraction, BigReal]


def pi(prec: int = DEFAULT_PRECISION) -> BigReal:
    return BigReal(context(prec).pi, prec)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


# deterministic for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a non-trivial factor of the odd composite ``n``."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict, rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``1 <= n <= 2**64`` as sorted (prime, exponent) pairs.

    Trial division up to 10**6, then Pollard-Brent on whatever cofactor is left.
    """
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    if n > FACTOR_LIMIT:
        raise OverflowError(f"{n} exceeds the supported bound 2**64")
    found: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    f, step = 5, 2
    while f * f <= n and f <= TRIAL_DIVISION_BOUND:
        while n % f == 0:
            found[f] = found.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    if n > 1:
        if f * f > n:
            found[n] = found.get(n, 0) + 1
        else:
            _split(n, found, random.Random(n))
    return sorted(found.items())


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n >= 1`` in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def square_decompose(n: int) -> tuple[int, int]:
    """Write ``n = k**2 * f`` with ``f`` squarefree and ``k`` maximal."""
    k = f = 1
    for p, e in factorize(n):
        k *= p ** (e // 2)
        f *= p ** (e % 2)
    return k, f


def continued_fraction(x: Fraction) -> list[int]:
    terms = []
    num, den = x.numerator, x.denominator
    while den:
        a, rem = divmod(num, den)
        terms.append(a)
        num, den = den, rem
    return terms


def convergents(x: Fraction):
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    for a in continued_fraction(x):
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        yield Fraction(h, k)


def rationalize(x, max_denominator: int, tol) -> Fraction:
    """Recover a rational from a (possibly rounded) real.

    Walks the continued-fraction convergents of ``x`` and returns the first,
    i.e. simplest, one whose denominator is at most ``max_denominator`` and
    which lies within ``tol`` of ``x``.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be positive")
    exact = x.to_fraction() if isinstance(x, BigReal) else Fraction(x)
    bound = tol.to_fraction() if isinstance(tol, BigReal) else Fraction(tol)
    if bound <= 0:
        raise ValueError("tolerance must be positive")
    for conv in convergents(exact):
        if conv.denominator > max_denominator:
            break
        if abs(exact - conv) <= bound:
            return conv
    raise NoApproximantError(
        f"no convergent with denominator <= {max_denominator} within {float(bound):.3g}")


def default_tolerance(precision: int) -> Fraction:
    return Fraction(1, 2 ** (precision // 2))


def _eval_poly(coeffs: list[int], u: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * u + c
    return acc


def integer_cubic_roots(a3: int, a2: int, a1: int, a0: int) -> list[int]:
    """All integer roots of ``a3*u**3 + a2*u**2 + a1*u + a0``, sorted, without repeats."""
    if a3 == 0:
        raise ValueError("leading coefficient must be non-zero")
    coeffs = [a3, a2, a1, a0]
    roots = set()
    # strip factors of u so the remaining constant term is non-zero
    while coeffs and coeffs[-1] == 0:
        roots.add(0)
        coeffs.pop()
    if len(coeffs) > 1:
        for d in divisors(abs(coeffs[-1])):
            for u in (d, -d):
                if _eval_poly(coeffs, u) == 0:
                    roots.add(u)
    return sorted(roots)


def primes_up_to(n: int) -> list[int]:
    return [k for k in range(2, n + 1) if is_prime(k)]
