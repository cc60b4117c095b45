"""Product constructions, digit-reversal permutations and random baselines.

The block product glues a size-n and a size-m permutation into one of size
n*m; iterated on the identity it yields the digit-reversal (van der Corput)
permutations, whose discrepancy grows only logarithmically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from statistics import median
from typing import Sequence

import numpy as np

from .core import Permutation
from .permdisc import perm_discrepancy

MAX_PRODUCT_SIZE = 1 << 24


class ProductOverflowError(ValueError):
    """The product size exceeds the supported range."""


def tensor(sigma: Permutation, tau: Permutation) -> Permutation:
    """Block product: x -> tau(x div n) + m * sigma(x mod n)."""
    n, m = sigma.n, tau.n
    if n * m > MAX_PRODUCT_SIZE:
        raise ProductOverflowError(f"product size {n * m} too large")
    images = [tau.images[x // n] + m * sigma.images[x % n] for x in range(n * m)]
    return Permutation(tuple(images))


def tensor_power(sigma: Permutation, k: int) -> Permutation:
    """k-fold block product of sigma with itself (left fold; associative)."""
    if k < 1:
        raise ValueError("power must be >= 1")
    if sigma.n ** k > MAX_PRODUCT_SIZE:
        raise ProductOverflowError(f"product size {sigma.n ** k} too large")
    result = sigma
    for _ in range(k - 1):
        result = tensor(result, sigma)
    return result


def tensor_product(factors: Sequence[Permutation]) -> Permutation:
    if not factors:
        raise ValueError("need at least one factor")
    result = factors[0]
    for f in factors[1:]:
        result = tensor(result, f)
    return result


def digit_reversal(base: int, digits: int) -> Permutation:
    """x -> the number whose base-n expansion is x's read backwards."""
    if base < 2 or digits < 1:
        raise ValueError("need base >= 2 and digits >= 1")
    size = base ** digits
    if size > MAX_PRODUCT_SIZE:
        raise ProductOverflowError(f"size {size} too large")
    images = []
    for x in range(size):
        y = 0
        v = x
        for _ in range(digits):
            y = y * base + v % base
            v //= base
        images.append(y)
    return Permutation(tuple(images))


def product_bound(sizes: Sequence[int]) -> int:
    """Unscaled discrepancy bound n_k + 2 * sum(n_1..n_{k-1}) - 2k + 1 for a
    k-fold block product with the given factor sizes."""
    if not sizes:
        raise ValueError("need at least one size")
    for s in sizes:
        if s < 2:
            raise ValueError("factor sizes must be >= 2")
    k = len(sizes)
    return sizes[-1] + 2 * sum(sizes[:-1]) - 2 * k + 1


def schmidt_floor(n: int) -> float:
    """ln(N)/100 - 1; every permutation's discrepancy strictly exceeds it."""
    if n < 1:
        raise ValueError("size must be positive")
    return math.log(n) / 100.0 - 1.0


def shift_counterexample(half: int) -> Permutation:
    """x -> x + n mod 2n; pairwise balanced yet it never contains (0,2,1)."""
    if half < 1:
        raise ValueError("half-size must be >= 1")
    n2 = 2 * half
    return Permutation(tuple((x + half) % n2 for x in range(n2)))


def random_permutation(n: int, seed: int) -> Permutation:
    """Uniform permutation from a Fisher-Yates shuffle driven by PCG64.

    The generator is fixed by name so identical seeds reproduce identical
    permutations on every platform.
    """
    if n < 1:
        raise ValueError("size must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    images = list(range(n))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        images[i], images[j] = images[j], images[i]
    return Permutation(tuple(images))


@dataclass(frozen=True)
class InversionDistribution:
    """Exact inversion-count distribution over S_n.

    counts[i] is the number of permutations with exactly i inversions: the
    coefficients of the iterated convolution (1)(1+q)...(1+q+...+q^(n-1)).
    """

    n: int
    counts: tuple
    mean: Fraction
    variance: Fraction


def inversion_distribution(n: int) -> InversionDistribution:
    if not 1 <= n <= 200:
        raise ValueError("size must be in 1..200")
    coeffs = [1]
    for i in range(2, n + 1):
        # multiply by 1 + q + ... + q^(i-1) using a sliding window sum
        prev = coeffs
        out_len = len(prev) + i - 1
        window = 0
        out = []
        for j in range(out_len):
            window += prev[j] if j < len(prev) else 0
            if j - i >= 0:
                window -= prev[j - i]
            out.append(window)
        coeffs = out
    total = factorial(n)
    mean = Fraction(sum(i * c for i, c in enumerate(coeffs)), total)
    second = Fraction(sum(i * i * c for i, c in enumerate(coeffs)), total)
    return InversionDistribution(n, tuple(coeffs), mean, second - mean * mean)


@dataclass(frozen=True)
class DiscrepancySample:
    """Exact discrepancies of random permutations, normalized by sqrt(n ln n)."""

    n: int
    trials: int
    seed: int
    scaled_values: tuple
    ratios: tuple
    median_ratio: float
    max_ratio: float


def mc_discrepancy_stats(n: int, trials: int, seed: int,
                         threads: int = 1) -> DiscrepancySample:
    """Draw random permutations and report exact D(sigma) / sqrt(n ln n).

    Each trial derives its own seed (seed xor index), so results are
    independent of how trials are scheduled.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    trial_seeds = [seed ^ t for t in range(trials)]
    if threads > 1 and trials > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            scaled = list(pool.map(_trial_discrepancy,
                                   [(n, s) for s in trial_seeds]))
    else:
        scaled = [_trial_discrepancy((n, s)) for s in trial_seeds]
    norm = math.sqrt(n * math.log(n)) if n > 1 else 1.0
    ratios = tuple((v / n) / norm for v in scaled)
    return DiscrepancySample(n, trials, seed, tuple(scaled), ratios,
                             float(median(ratios)), max(ratios))


def _trial_discrepancy(args: tuple) -> int:
    n, trial_seed = args
    sigma = random_permutation(n, trial_seed)
    return perm_discrepancy(sigma).scaled_D
