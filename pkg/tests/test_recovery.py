from fractions import Fraction
from itertools import combinations

import pytest

from hearweights.errors import AmbiguousRecoveryError, InconsistentInputError
from hearweights.exact_arith import BigReal, pi, primes_up_to
from hearweights.heat import heat_coefficients
from hearweights.recovery import (
    SpectralInput,
    recover_from_bcd,
    recover_prime,
    recover_weights,
    recover_with_chi,
)
from hearweights.topology import WeightTriple, chern_numbers, coprime_triples
from hearweights.trig import T_direct


def brute_force_weights(b, c, bound):
    """Every ascending coprime triple up to ``bound`` with the given (b, c)."""
    hits = []
    for t in coprime_triples(bound):
        chern = chern_numbers(WeightTriple(*t))
        if (chern.b, chern.c) == (b, c):
            hits.append(t)
    return hits


def spectral(w, vol=Fraction(1), tau_sq=None, precision=128):
    w = WeightTriple(*w)
    T = T_direct(w, precision).exact_or_value()
    h = [heat_coefficients(w, vol, p, tau_sq, precision, trig_sum=T) for p in (0, 1)]
    return SpectralInput(h[0].a0, h[0].a1, h[0].a2, h[1].a2)


def test_recover_from_bcd_example():
    report = recover_from_bcd(Fraction(6), Fraction(11, 6), Fraction(7, 3))
    assert report.weights == WeightTriple(1, 2, 3)
    assert report.cubic_roots == [3, 4, 5]
    assert not report.degenerate
    assert report.to_json() == {"weights": [1, 2, 3], "b": "6/1", "c": "11/6", "d": "7/3",
                                "p": 6, "q": 14, "r": 11, "s": 6,
                                "cubic_roots": [3, 4, 5], "degenerate": False}


def test_recover_smooth_plane_is_degenerate():
    report = recover_from_bcd(Fraction(9), Fraction(3), Fraction(3))
    assert report.weights == WeightTriple(1, 1, 1)
    assert report.degenerate
    assert report.cubic_roots == [2]


def test_recover_from_bcd_matches_brute_force():
    for t in coprime_triples(12):
        chern = chern_numbers(WeightTriple(*t))
        assert brute_force_weights(chern.b, chern.c, 14) == [t]
        assert recover_from_bcd(chern.b, chern.c, chern.d).weights.as_list() == list(t)


@pytest.mark.parametrize("b,c,d", [
    (Fraction(6), Fraction(11, 6), Fraction(2)),     # b - 2c != d
    (Fraction(7), Fraction(11, 6), Fraction(10, 3)),  # s b not a square
    (Fraction(-1), Fraction(1), Fraction(-3)),
    (Fraction(25, 6), Fraction(11, 12), Fraction(7, 3)),
])
def test_recover_from_bcd_rejects_inconsistent(b, c, d):
    with pytest.raises(InconsistentInputError):
        recover_from_bcd(b, c, d)


def test_recover_from_bcd_rejects_triple_free_data():
    # p = 5, q = 11, r = 7, s = 5 passes the integrality checks but no triple has it
    with pytest.raises(InconsistentInputError):
        recover_from_bcd(Fraction(5), Fraction(7, 5), Fraction(11, 5))


def test_spectral_recovery_extremal():
    report = recover_weights(spectral((1, 2, 3)))
    assert report.weights == WeightTriple(1, 2, 3)
    assert (report.b, report.c) == (6, Fraction(11, 6))


def test_spectral_recovery_is_metric_independent():
    tau = 224 * pi() ** 2 + 10
    report = recover_weights(spectral((1, 2, 3), tau_sq=tau))
    assert report.weights == WeightTriple(1, 2, 3)
    for factor in (Fraction(11, 10), 2, 10):
        for t in [(1, 1, 1), (2, 3, 5), (5, 7, 11)]:
            w = WeightTriple(*t)
            tau = 96 * chern_numbers(w).d * factor * pi() ** 2
            assert recover_weights(spectral(t, Fraction(3, 2), tau)).to_json() == \
                recover_weights(spectral(t, Fraction(3, 2))).to_json()


def test_spectral_input_from_strings():
    h0 = heat_coefficients(WeightTriple(5, 7, 11), Fraction(2), 0)
    h1 = heat_coefficients(WeightTriple(5, 7, 11), Fraction(2), 1)
    spec = SpectralInput.from_strings(h0.a0.decimal(), h0.a1.decimal(),
                                      h0.a2.decimal(), h1.a2.decimal())
    assert recover_weights(spec).weights == WeightTriple(5, 7, 11)


def test_spectral_input_rejects_negative_a1():
    with pytest.raises(InconsistentInputError):
        SpectralInput.from_strings("0.1", "-0.1", "0.3", "0.4")


def test_corrupted_spectral_data_is_inconsistent():
    spec = spectral((1, 2, 3))
    bad = SpectralInput(spec.a0, spec.a1, spec.a2_0, spec.a2_1 + pi() / 1000)
    with pytest.raises(InconsistentInputError):
        recover_weights(bad)


@pytest.mark.parametrize("w,branch", [((5, 7, 11), 3), ((2, 3, 11), 2), ((2, 3, 5), 1)])
def test_recover_prime_branches(w, branch):
    b = chern_numbers(WeightTriple(*w)).b
    assert len([p for p in primes_up_to(50) if b.denominator % p == 0]) == branch
    assert recover_prime(b) == WeightTriple(*w)


def test_recover_prime_sweep():
    for t in combinations(primes_up_to(50), 3):
        assert recover_prime(chern_numbers(WeightTriple(*t)).b).as_list() == list(t)


def test_recover_prime_rejects_non_prime_data():
    with pytest.raises(InconsistentInputError):
        recover_prime(chern_numbers(WeightTriple(1, 2, 3)).b)
    with pytest.raises(InconsistentInputError):
        recover_prime(chern_numbers(WeightTriple(4, 9, 25)).b)
    with pytest.raises(InconsistentInputError):
        recover_prime(Fraction(-3))


def test_recover_with_chi():
    assert recover_with_chi(Fraction(6), Fraction(11, 6)).weights == WeightTriple(1, 2, 3)
    assert recover_with_chi(Fraction(529, 385), Fraction(167, 385)).weights == WeightTriple(5, 7, 11)
    with pytest.raises(InconsistentInputError):
        recover_with_chi(Fraction(529, 385), Fraction(192, 385))
    with pytest.raises(InconsistentInputError):
        recover_with_chi(Fraction(6), Fraction(0))


def test_ambiguity_error_is_distinct():
    assert not issubclass(AmbiguousRecoveryError, InconsistentInputError)


def test_real_chern_input_round_trip():
    h0 = heat_coefficients(WeightTriple(3, 5, 7), Fraction(1, 2), 0, prec=256)
    h1 = heat_coefficients(WeightTriple(3, 5, 7), Fraction(1, 2), 1, prec=256)
    spec = SpectralInput(h0.a0, h0.a1, h0.a2, h1.a2)
    assert spec.a0.precision == 256
    assert recover_weights(spec).weights == WeightTriple(3, 5, 7)
    assert isinstance(spec.a0, BigReal)
