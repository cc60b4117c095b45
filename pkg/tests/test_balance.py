import math
import random
from fractions import Fraction

import numpy as np
import pytest

from quasiperm.balance import (
    balance_certificate,
    eigenvalue_bound_profile,
    fourier_spectrum,
    fourier_spectrum_direct,
    interval_spectrum_magnitudes,
    max_interval_discrepancy,
    multiple_discrepancy,
    scaled_discrepancy_in,
    sum_statistic,
    translation_statistic,
    translation_statistic_direct,
    translation_statistic_spectral,
)
from quasiperm.core import CyclicInterval, ZnSubset, ZnMultiset

from oracles import brute_interval_max, brute_translation, brute_fourier


def random_subset(n, rng):
    return ZnSubset(n, frozenset(x for x in range(n) if rng.random() < 0.5))


def test_scaled_discrepancy_examples():
    evens = ZnSubset.from_elements(10, range(0, 10, 2))
    assert scaled_discrepancy_in(evens, ZnSubset.from_elements(10, [0, 1])) == 0
    assert scaled_discrepancy_in(evens, ZnSubset.from_elements(10, [0, 2])) == 10


def test_max_interval_discrepancy_examples():
    evens = ZnSubset.from_elements(10, range(0, 10, 2))
    value, witness = max_interval_discrepancy(evens)
    assert value == 5
    assert scaled_discrepancy_in(evens, witness.to_subset()) == 5

    single = ZnSubset.from_elements(4, [0])
    value, witness = max_interval_discrepancy(single)
    assert value == 3
    assert scaled_discrepancy_in(single, witness.to_subset()) == 3


def test_max_interval_discrepancy_matches_brute_force():
    rng = random.Random(11)
    for n in (5, 8, 13, 17, 32):
        for _ in range(20):
            s = random_subset(n, rng)
            value, witness = max_interval_discrepancy(s)
            assert value == brute_interval_max(s)
            assert scaled_discrepancy_in(s, witness.to_subset()) == value


def test_discrepancy_complement_identities():
    rng = random.Random(13)
    for _ in range(50):
        n = rng.randint(2, 20)
        s = random_subset(n, rng)
        t = random_subset(n, rng)
        assert scaled_discrepancy_in(s, t) == scaled_discrepancy_in(s.complement(), t)
        assert scaled_discrepancy_in(s, t) == scaled_discrepancy_in(s, t.complement())


def test_multiple_discrepancy_examples():
    evens = ZnSubset.from_elements(10, range(0, 10, 2))
    # 5S collapses to five copies of 0
    assert multiple_discrepancy(evens, 5) == 45
    # unit multiplier leaves the set unchanged
    assert multiple_discrepancy(evens, 1) == max_interval_discrepancy(evens)[0]
    with pytest.raises(ValueError):
        multiple_discrepancy(evens, 0)


def test_multiset_discrepancy_direct():
    ms = ZnMultiset(4, (5, 0, 0, 0))
    value, _ = max_interval_discrepancy(ms)
    assert value == 15  # J={0}: |4*5 - 5*1|


def test_fourier_fft_matches_direct():
    rng = random.Random(17)
    for n in (2, 3, 7, 16, 31):
        s = random_subset(n, rng)
        fast = fourier_spectrum(s)
        slow = fourier_spectrum_direct(s)
        assert np.allclose(fast.coeffs, slow.coeffs, atol=1e-9)
        for k in (1, n // 2, n - 1):
            assert abs(fast.coeffs[k] - brute_fourier(s, k)) < 1e-9


def test_fourier_zero_coefficient_is_size():
    s = ZnSubset.from_elements(12, [0, 3, 4, 7])
    assert fourier_spectrum(s).coeffs[0] == pytest.approx(4)


def test_eigenvalue_bound_profile_monotone_in_alpha():
    s = ZnSubset.from_elements(16, [0, 1, 2, 5, 9, 11])
    stat_half, k_half = eigenvalue_bound_profile(s, 0.5)
    mags = np.abs(fourier_spectrum(s).coeffs)
    # the witness k attains the reported statistic
    from quasiperm.core import sym_abs
    assert stat_half == pytest.approx(mags[k_half] / sym_abs(k_half, 16) ** 0.5)


def test_sum_statistic_example():
    assert sum_statistic(ZnSubset.from_elements(4, [0])) == pytest.approx(2.25)


def test_interval_spectrum_bound():
    # |J~(k)| <= n / (2|k|) for every proper interval, exhaustive small n
    from quasiperm.core import sym_abs
    for n in (3, 8, 17, 32):
        for length in range(1, n):
            mags = interval_spectrum_magnitudes(n, length)
            for k in range(1, n):
                assert mags[k] <= n / (2 * sym_abs(k, n)) + 1e-9


def test_translation_statistic_example():
    s = ZnSubset.from_elements(4, [0])
    assert translation_statistic(s, CyclicInterval(4, 0, 1)) == pytest.approx(0.75)


def test_translation_paths_agree_and_match_brute_force():
    rng = random.Random(19)
    for n in (4, 9, 16, 25):
        s = random_subset(n, rng)
        for _ in range(8):
            j = CyclicInterval(n, rng.randrange(n), rng.randint(1, n))
            direct = translation_statistic_direct(s, j)
            spectral = translation_statistic_spectral(s, j)
            assert direct == pytest.approx(spectral, rel=1e-6, abs=1e-9)
            assert direct == pytest.approx(brute_translation(s, j), abs=1e-9)
            assert translation_statistic(s, j) == pytest.approx(direct)


def test_translation_dominated_by_sum_statistic():
    rng = random.Random(23)
    for n in (8, 16, 32):
        for _ in range(10):
            s = random_subset(n, rng)
            bound = (n / 4) * sum_statistic(s)
            for length in range(1, n + 1):
                j = CyclicInterval(n, 0, length)
                assert translation_statistic(s, j) <= bound + 1e-9


def test_certificate_example_and_internal_consistency():
    evens = ZnSubset.from_elements(10, range(0, 10, 2))
    cert = balance_certificate(evens)
    assert cert.eps_B == Fraction(1, 20)
    assert cert.eps_PB >= cert.eps_B  # intervals are one-component sets
    assert all(cert.implication_checks.values())


def test_certificate_sampled_policy_deterministic():
    rng = random.Random(29)
    s = random_subset(64, rng)
    a = balance_certificate(s, pb_samples=50, seed=5)
    b = balance_certificate(s, pb_samples=50, seed=5)
    assert a == b
    assert "random subsets" in a.pb_policy


def test_certificate_implications_hold_on_random_sets():
    rng = random.Random(31)
    for n in (24, 40):
        for _ in range(5):
            s = random_subset(n, rng)
            if s.size in (0, n):
                continue
            cert = balance_certificate(s, pb_samples=100)
            assert all(cert.implication_checks.values()), cert.implication_checks
