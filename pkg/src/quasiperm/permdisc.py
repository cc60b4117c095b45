"""Interval-to-interval discrepancy of a permutation and related statistics.

D(sigma) is the maximum over all cyclic intervals I, J of the discrepancy
of sigma(I) in J.  Everything is exact and n-scaled: the integers reported
here are n times the usual quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

import numpy as np

from .core import (
    CyclicInterval,
    ModulusMismatchError,
    Permutation,
    ZnSubset,
    image_of_interval,
)
from .balance import scaled_discrepancy_in
from .patterns import pattern_index, profile, standardize


@dataclass(frozen=True)
class PermDiscrepancyReport:
    """n-scaled discrepancy maxima with the intervals attaining them."""

    n: int
    scaled_D: int
    witness_I: CyclicInterval
    witness_J: CyclicInterval
    scaled_d: int
    witness_d: tuple
    scaled_d_prime: int
    witness_d_prime: tuple


def discrepancy_of_pair(sigma: Permutation, i: CyclicInterval,
                        j: CyclicInterval) -> int:
    """n * D_J(sigma(I)); used to re-check reported witnesses."""
    return scaled_discrepancy_in(image_of_interval(sigma, i), j.to_subset())


def _g_matrix(images: np.ndarray, order: np.ndarray, jj: np.ndarray) -> np.ndarray:
    """g[L-1, j] = n * #{t < L : sigma(order[t]) <= j} - L * (j + 1).

    Row L-1 encodes every interval discrepancy of the image of the first L
    positions of `order`: an interval (a+1..b) has n*D = |g[b] - g[a]|, and
    column n-1 is identically zero so the empty difference is included.
    """
    n = len(images)
    onehot = np.zeros((n, n), dtype=np.int64)
    onehot[np.arange(n), images[order]] = 1
    prefix = np.cumsum(np.cumsum(onehot, axis=0), axis=1)
    return n * prefix - np.outer(np.arange(1, n + 1, dtype=np.int64), jj)


def _row_witness(g_row: np.ndarray, n: int) -> tuple:
    b = int(np.argmax(g_row))
    a = int(np.argmin(g_row))
    value = int(g_row[b] - g_row[a])
    if value == 0:
        return 0, CyclicInterval.empty(n)
    return value, CyclicInterval(n, (a + 1) % n, (b - a) % n)


def perm_discrepancy(sigma: Permutation) -> PermDiscrepancyReport:
    """Exact maximum of n * D_J(sigma(I)) over all cyclic intervals I, J.

    O(n^3): for each interval start the image prefix profile is grown one
    element at a time; wrapping J come for free through the complement
    identity D_J = D_{complement(J)}.
    """
    n = sigma.n
    images = np.asarray(sigma.images, dtype=np.int64)
    jj = np.arange(1, n + 1, dtype=np.int64)
    best = 0
    best_i = CyclicInterval.empty(n)
    best_j = CyclicInterval.empty(n)

    for start in range(n):
        order = (start + np.arange(n)) % n
        g = _g_matrix(images, order, jj)
        per_len = g.max(axis=1) - g.min(axis=1)
        l_best = int(np.argmax(per_len))
        if per_len[l_best] > best:
            value, j_wit = _row_witness(g[l_best], n)
            best = value
            best_i = CyclicInterval(n, start, l_best + 1)
            best_j = j_wit

    d, (wit_di, wit_dj) = _restricted_max(sigma, prefix=True)
    dp, (wit_dpi, wit_dpj) = _restricted_max(sigma, prefix=False)
    return PermDiscrepancyReport(n, best, best_i, best_j,
                                 d, (wit_di, wit_dj), dp, (wit_dpi, wit_dpj))


def _restricted_max(sigma: Permutation, prefix: bool) -> tuple:
    """Max of n * D_J(sigma(I)) with I over initial (or final) intervals.

    The preimage interval is the restricted one; J ranges over everything.
    Restricting J instead would be a different statistic, and only this
    convention satisfies the block-product recursion inequalities.
    """
    n = sigma.n
    images = np.asarray(sigma.images, dtype=np.int64)
    jj = np.arange(1, n + 1, dtype=np.int64)
    if prefix:
        order = np.arange(n)
    else:
        order = np.arange(n - 1, -1, -1)
    g = _g_matrix(images, order, jj)
    per_len = g.max(axis=1) - g.min(axis=1)
    l_best = int(np.argmax(per_len))
    value, j_wit = _row_witness(g[l_best], n)
    if prefix:
        i_wit = CyclicInterval(n, 0, l_best + 1)
    else:
        i_wit = CyclicInterval(n, n - 1 - l_best, l_best + 1)
    if value == 0:
        i_wit = CyclicInterval.empty(n)
    return value, (i_wit, j_wit)


def restricted_discrepancies(sigma: Permutation) -> tuple:
    """(n*d, n*d') with the preimage interval restricted to initial
    respectively final intervals."""
    d, _ = _restricted_max(sigma, prefix=True)
    dp, _ = _restricted_max(sigma, prefix=False)
    return d, dp


def separability_statistic(sigma: Permutation, i: CyclicInterval,
                           j: CyclicInterval, k: CyclicInterval,
                           kp: CyclicInterval) -> int:
    """n-scaled separability defect for the interval quadruple (I, J, K, K').

    |n * sum_{x in K, sigma(x) in K'} I(x) J(sigma(x)) - |I & K| |J & K'||,
    an exact integer.
    """
    n = sigma.n
    for iv in (i, j, k, kp):
        if iv.n != n:
            raise ModulusMismatchError(f"moduli differ: {iv.n} vs {n}")
    joint = sum(1 for x in range(n)
                if x in k and sigma.images[x] in kp
                and x in i and sigma.images[x] in j)
    ik = sum(1 for x in range(n) if x in i and x in k)
    jkp = sum(1 for y in range(n) if y in j and y in kp)
    return abs(n * joint - ik * jkp)


def window_positions(sigma: Permutation, i: CyclicInterval,
                     j: CyclicInterval) -> list:
    """Positions of I whose image lies in J, in natural position order."""
    return [x for x in range(sigma.n) if x in i and sigma.images[x] in j]


def windowed_pattern_count(sigma: Permutation, tau: Permutation,
                           i: CyclicInterval, j: CyclicInterval) -> int:
    """Occurrences of tau in sigma restricted to the window I & sigma^-1(J)."""
    pos = window_positions(sigma, i, j)
    if len(pos) < tau.n:
        return 0
    restricted = Permutation(standardize([sigma.images[x] for x in pos]))
    return profile(restricted, tau.n).counts[pattern_index(tau.images)]


def windowed_pattern_deviation(sigma: Permutation, tau: Permutation,
                               i: CyclicInterval, j: CyclicInterval) -> Fraction:
    """|X^tau(restriction) - C(w, m)/m!| with w the window size; exact."""
    if tau.n < 2:
        raise ValueError("pattern order must be at least 2")
    w = len(window_positions(sigma, i, j))
    count = windowed_pattern_count(sigma, tau, i, j)
    expected = Fraction(comb(w, tau.n), factorial(tau.n))
    return abs(Fraction(count) - expected)


def two_pattern_balance(sigma: Permutation, i: CyclicInterval,
                        j: CyclicInterval) -> int:
    """Ascending minus descending pair count on the window I & sigma^-1(J)."""
    pos = window_positions(sigma, i, j)
    vals = [sigma.images[x] for x in pos]
    w = len(vals)
    asc = sum(1 for a in range(w) for b in range(a + 1, w) if vals[a] < vals[b])
    return asc - (comb(w, 2) - asc)


def ascent_pairs_across(sigma: Permutation, s: ZnSubset, t: ZnSubset) -> int:
    """Pairs x in S, y in T with x < y and sigma(x) < sigma(y)."""
    return sum(1 for x in s.members for y in t.members
               if x < y and sigma.images[x] < sigma.images[y])


def exclusion_lower_bound(n: int, m: int) -> float:
    """Discrepancy floor forced on any permutation that omits some order-m
    pattern entirely: n * C(n,m) / (4 e^(2m) m! n^m)."""
    if not n > m >= 2:
        raise ValueError("need n > m >= 2")
    return n * comb(n, m) / (4 * math.exp(2 * m) * factorial(m) * n ** m)


def sampled_discrepancy_lower_bound(sigma: Permutation, samples: int,
                                    seed: int = 0) -> int:
    """Lower bound on n * D(sigma) from randomly sampled preimage intervals."""
    import random

    n = sigma.n
    rng = random.Random(seed)
    images = np.asarray(sigma.images, dtype=np.int64)
    jj = np.arange(1, n + 1, dtype=np.int64)
    best = 0
    for _ in range(samples):
        start = rng.randrange(n)
        order = (start + np.arange(n)) % n
        g = _g_matrix(images, order, jj)
        per_len = g.max(axis=1) - g.min(axis=1)
        best = max(best, int(per_len.max()))
    return best
