import itertools
import math
import random
from fractions import Fraction

import mpmath
import pytest

from hearweights.errors import PoleError
from hearweights.exact_arith import BigReal
from hearweights.topology import WeightTriple, coprime_triples
from hearweights.trig import (
    T_closed,
    T_direct,
    cot_sq_sum,
    cot_sq_sum_direct,
    dedekind4,
    donnelly_b0,
)


def raw_T(weights, dps=50):
    """The defining cosecant sum, in the order given, with mpmath at fixed dps."""
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for i in range(3):
            n = weights[i]
            a, b = (weights[k] for k in range(3) if k != i)
            for j in range(1, n):
                total += 1 / (16 * mpmath.sin(a * j * mpmath.pi / n) ** 2
                              * mpmath.sin(b * j * mpmath.pi / n) ** 2) / n
        return total


def det_oracle(N, m, j, dps=40):
    """|det (I - A)^-1| for the 4x4 block rotation by 2j pi/N and 2mj pi/N."""
    with mpmath.workdps(dps):
        t1, t2 = 2 * j * mpmath.pi / N, 2 * m * j * mpmath.pi / N
        A = mpmath.matrix(4, 4)
        A[0, 0], A[0, 1], A[1, 0], A[1, 1] = mpmath.cos(t1), -mpmath.sin(t1), mpmath.sin(t1), mpmath.cos(t1)
        A[2, 2], A[2, 3], A[3, 2], A[3, 3] = mpmath.cos(t2), -mpmath.sin(t2), mpmath.sin(t2), mpmath.cos(t2)
        return abs(mpmath.det(mpmath.inverse(mpmath.eye(4) - A)))


@pytest.mark.parametrize("N,expected", [(1, 0), (2, 0), (3, Fraction(2, 3)), (5, 4), (7, 10)])
def test_cot_sq_sum(N, expected):
    assert cot_sq_sum(N) == expected
    assert abs(float(cot_sq_sum_direct(N)) - float(expected)) < 1e-12


def test_cot_sq_sum_direct_precision():
    assert abs((cot_sq_sum_direct(5, 128) - 4).value) < 1e-30
    assert cot_sq_sum_direct(2).value == 0 or abs(cot_sq_sum_direct(2).value) < 1e-35


def test_dedekind4_examples():
    assert dedekind4(1, 1, 1, 1, 1).value == 0
    assert abs(dedekind4(2, 1, 1, 1, 1).value) < 1e-35
    assert abs((dedekind4(3, 1, 1, 2, 2) - Fraction(2, 9)).value) < 1e-35


def test_dedekind4_pole():
    with pytest.raises(PoleError):
        dedekind4(4, 1, 2, 1, 1)


def test_dedekind4_large_multipliers_are_reduced():
    # multiples of p0 added to the p_i must not change the sum
    a = dedekind4(7, 2, 3, 3, 5)
    b = dedekind4(7, 2 + 7 * 10**6, 3, 3 + 7 * 31, 5)
    assert abs((a - b).value) < 1e-33


@pytest.mark.parametrize("N,m,j,expected", [
    (2, 1, 1, Fraction(1, 16)),
    (3, 1, 1, Fraction(1, 9)),
    (3, 2, 1, Fraction(1, 9)),
])
def test_donnelly_b0_examples(N, m, j, expected):
    assert abs((donnelly_b0(N, m, j) - expected).value) < 1e-35
    with mpmath.workdps(40):
        assert abs(det_oracle(N, m, j) - mpmath.mpf(expected.numerator) / expected.denominator) < 1e-30


def test_donnelly_b0_matches_determinant():
    rng = random.Random(7)
    checked = 0
    while checked < 100:
        N = rng.randint(2, 50)
        m = rng.randint(1, N - 1)
        if math.gcd(m, N) != 1:
            continue
        j = rng.randint(1, N - 1)
        assert abs(donnelly_b0(N, m, j).value - det_oracle(N, m, j)) < 1e-25
        checked += 1


def test_donnelly_b0_domain():
    with pytest.raises(ValueError):
        donnelly_b0(5, 1, 5)
    with pytest.raises(ValueError):
        donnelly_b0(6, 2, 1)


@pytest.mark.parametrize("w,expected", [
    ((1, 1, 1), Fraction(0)),
    ((1, 1, 2), Fraction(1, 32)),
    ((1, 2, 3), Fraction(91, 864)),
])
def test_T_examples(w, expected):
    direct = T_direct(WeightTriple(*w))
    closed = T_closed(WeightTriple(*w))
    assert direct.reconstructed == expected
    assert closed.reconstructed == expected
    assert abs(float(raw_T(w)) - float(expected)) < 1e-15
    assert direct.to_json()["rational"] == f"{expected.numerator}/{expected.denominator}"


def test_T_matches_raw_sum_in_any_order():
    for t in [(2, 3, 5), (1, 4, 9), (3, 7, 10), (5, 7, 11)]:
        reference = T_direct(WeightTriple(*t)).value
        for perm in itertools.permutations(t):
            assert abs(raw_T(perm) - reference.value) < 1e-35


def test_T_direct_and_closed_agree_up_to_30():
    bound = BigReal.of(Fraction(1, 2**64))
    for t in coprime_triples(30):
        w = WeightTriple(*t)
        assert abs(T_direct(w).value - T_closed(w).value) < bound


def test_T_reconstruction_round_trips_at_higher_precision():
    for t in coprime_triples(15):
        w = WeightTriple(*t)
        res = T_direct(w, 128)
        assert res.reconstructed is not None
        hi = T_direct(w, 320)
        assert abs((hi.value - res.reconstructed).value) < mpmath.mpf(2) ** -250


def test_T_precision_is_tracked():
    assert T_direct(WeightTriple(2, 3, 5), 200).precision == 200
