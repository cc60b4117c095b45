"""Pattern occurrence counting and the inclusion matrices between orders.

Patterns are permutations of small order m; a pattern occurs in sigma at an
index set A when sigma restricted to A is order-isomorphic to it.  All
counts are exact integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

import numpy as np

from .core import Permutation

MAX_PROFILE_ORDER = 6
MAX_MATRIX_ORDER = 5


class ConvergenceError(RuntimeError):
    """Power iteration failed to settle within the iteration cap."""


def patterns_of_order(m: int) -> list:
    """All patterns of order m in lexicographic one-line order."""
    return [Permutation(p) for p in itertools.permutations(range(m))]


def standardize(values: Sequence[int]) -> tuple:
    """Replace each value by its rank among the values."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, i in enumerate(order):
        ranks[i] = r
    return tuple(ranks)


def pattern_index(images: Sequence[int]) -> int:
    """Lexicographic rank of a one-line pattern among S_m (Lehmer code)."""
    m = len(images)
    idx = 0
    for i, v in enumerate(images):
        smaller = sum(1 for w in images[i + 1:] if w < v)
        idx += smaller * factorial(m - 1 - i)
    return idx


def occurs_at(sigma: Permutation, positions: Iterable[int], tau: Permutation) -> bool:
    """Whether tau occurs in sigma at the given index set."""
    pos = sorted(positions)
    if len(pos) != tau.n:
        raise ValueError(f"index set has size {len(pos)}, pattern has order {tau.n}")
    vals = [sigma.images[x] for x in pos]
    return standardize(vals) == tau.images


def _inversions(values: Sequence[int]) -> int:
    """Number of descending pairs, counted with a Fenwick tree."""
    n = len(values)
    tree = [0] * (n + 1)
    inv = 0
    for v in reversed(values):
        i = v  # count of values already seen that are smaller than v
        while i > 0:
            inv += tree[i]
            i -= i & -i
        i = v + 1
        while i <= n:
            tree[i] += 1
            i += i & -i
    return inv


def count_pattern(sigma: Permutation, tau: Permutation) -> int:
    """Exact number of occurrences of tau in sigma over all index sets."""
    m, n = tau.n, sigma.n
    if m > n:
        raise ValueError(f"pattern order {m} exceeds host size {n}")
    if m == 2:
        inv = _inversions(sigma.images)
        return comb(n, 2) - inv if tau.images == (0, 1) else inv
    return profile(sigma, m).counts[pattern_index(tau.images)]


def count_pattern_enumerated(sigma: Permutation, tau: Permutation) -> int:
    """Plain enumeration over all index subsets; oracle for the fast paths."""
    target = tau.images
    return sum(1 for a in itertools.combinations(range(sigma.n), tau.n)
               if standardize([sigma.images[x] for x in a]) == target)


@dataclass(frozen=True)
class ProfileVector:
    """Occurrence counts of every order-m pattern, lexicographically indexed."""

    m: int
    n: int
    counts: tuple

    def total(self) -> int:
        return sum(self.counts)

    def centered(self) -> tuple:
        """counts - C(n,m)/m! per coordinate, as exact rationals."""
        mean = Fraction(comb(self.n, self.m), factorial(self.m))
        return tuple(Fraction(c) - mean for c in self.counts)

    def centered_norm_sq(self) -> Fraction:
        return sum(x * x for x in self.centered())


def profile(sigma: Permutation, m: int) -> ProfileVector:
    """Counts for all m! patterns in a single pass over the index subsets."""
    n = sigma.n
    if m > n:
        raise ValueError(f"order {m} exceeds host size {n}")
    if m > MAX_PROFILE_ORDER:
        raise ValueError(f"order {m} beyond supported maximum {MAX_PROFILE_ORDER}")
    index = {p: i for i, p in enumerate(itertools.permutations(range(m)))}
    counts = [0] * factorial(m)
    images = sigma.images
    for a in itertools.combinations(range(n), m):
        counts[index[standardize([images[x] for x in a])]] += 1
    return ProfileVector(m, n, tuple(counts))


@dataclass(frozen=True)
class PatternMatrix:
    """The m! x (m+1)! occurrence-count matrix B and its Gram matrix A = B^T B."""

    m: int
    B: np.ndarray
    A: np.ndarray


def build_pattern_matrices(m: int) -> PatternMatrix:
    """Exact integer B_m (entry = count of row pattern in column pattern)."""
    if not 1 <= m <= MAX_MATRIX_ORDER:
        raise ValueError(f"order {m} outside supported range 1..{MAX_MATRIX_ORDER}")
    rows = list(itertools.permutations(range(m)))
    cols = list(itertools.permutations(range(m + 1)))
    row_index = {p: i for i, p in enumerate(rows)}
    b = np.zeros((len(rows), len(cols)), dtype=np.int64)
    subsets = list(itertools.combinations(range(m + 1), m))
    for j, tau_p in enumerate(cols):
        for a in subsets:
            b[row_index[standardize([tau_p[x] for x in a])], j] += 1
    return PatternMatrix(m, b, b.T @ b)


def top_eigenvalue(a, *, tol: float = 1e-12, max_iter: int = 100_000) -> float:
    """Largest eigenvalue of a symmetric nonnegative matrix by power
    iteration with a Rayleigh quotient."""
    a = np.asarray(a, dtype=np.float64)
    rng = np.random.default_rng(12345)
    v = rng.random(a.shape[0]) + 1.0
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = a @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        new_lam = float(v @ (a @ v))
        if abs(new_lam - lam) <= tol * max(1.0, abs(new_lam)):
            return new_lam
        lam = new_lam
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


def rank_of_B(m: int) -> int:
    """Exact rank of B_m by fraction-free elimination over the integers."""
    if m > 4:
        raise ValueError("rank computation supported for m <= 4")
    b = [[int(x) for x in row] for row in build_pattern_matrices(m).B]
    rows, cols = len(b), len(b[0])
    rank = 0
    pivot_col = 0
    for r in range(rows):
        while pivot_col < cols:
            pivot = None
            for i in range(r, rows):
                if b[i][pivot_col]:
                    pivot = i
                    break
            if pivot is None:
                pivot_col += 1
                continue
            b[r], b[pivot] = b[pivot], b[r]
            for i in range(r + 1, rows):
                if b[i][pivot_col]:
                    factor_i = b[i][pivot_col]
                    factor_r = b[r][pivot_col]
                    b[i] = [factor_r * x - factor_i * y
                            for x, y in zip(b[i], b[r])]
            rank += 1
            pivot_col += 1
            break
    return rank


def circ(tau: Permutation) -> Permutation:
    """The order-(m+1) pattern fixing 0 with tau shifted up by one elsewhere."""
    return Permutation((0,) + tuple(v + 1 for v in tau.images))


def occurrence_graph_connected(m: int) -> bool:
    """Connectivity of the bipartite graph on S_m and S_{m+1} whose edges
    join a pattern to the longer patterns containing it."""
    b = build_pattern_matrices(m).B
    n_rows, n_cols = b.shape
    seen_rows = [False] * n_rows
    seen_cols = [False] * n_cols
    stack = [("r", 0)]
    seen_rows[0] = True
    while stack:
        side, i = stack.pop()
        if side == "r":
            for j in np.nonzero(b[i])[0]:
                if not seen_cols[j]:
                    seen_cols[j] = True
                    stack.append(("c", int(j)))
        else:
            for r in np.nonzero(b[:, i])[0]:
                if not seen_rows[r]:
                    seen_rows[r] = True
                    stack.append(("r", int(r)))
    return all(seen_rows) and all(seen_cols)


def lex_first_container(tau: Permutation) -> Permutation:
    """Scan S_{m+1} in lexicographic order for the first pattern containing tau."""
    for images in itertools.permutations(range(tau.n + 1)):
        cand = Permutation(images)
        if count_pattern_enumerated(cand, tau) > 0:
            return cand
    raise RuntimeError("unreachable: every pattern is contained in some extension")
