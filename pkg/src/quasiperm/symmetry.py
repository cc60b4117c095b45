"""Perfect pattern symmetry: testing, divisibility prerequisites, search.

A permutation is perfectly m-symmetric when every order-m pattern occurs
exactly C(n,m)/m! times.  That forces perfect m'-symmetry for all m' <= m,
so m'! must divide C(n,m') for every such m'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Optional

from .core import Permutation
from .patterns import profile

EXHAUSTIVE_SIZE_LIMIT = 10


class SearchBudgetRequired(ValueError):
    """Search space too large without an explicit node budget."""


class SearchCapExceeded(RuntimeError):
    """The documented search cap was reached before an answer was found."""


def divisibility_D(n: int, m: int) -> bool:
    """Whether m! divides C(n, m)."""
    if m > n:
        raise ValueError("need m <= n")
    return comb(n, m) % factorial(m) == 0


def h(m: int, *, cap: int = 1_000_000) -> int:
    """Least n >= m passing the divisibility prerequisite for all orders
    from 2 up to m."""
    if not 2 <= m <= 8:
        raise ValueError("supported orders are 2..8")
    for n in range(m, cap + 1):
        if all(divisibility_D(n, mp) for mp in range(2, m + 1)):
            return n
    raise SearchCapExceeded(f"no admissible n found up to {cap}")


def is_perfect_m_symmetric(sigma: Permutation, m: int) -> bool:
    """Every order-m' pattern count equals C(n, m')/m'! for all m' <= m."""
    n = sigma.n
    if not 2 <= m <= n:
        raise ValueError("need 2 <= m <= n")
    for mp in range(2, m + 1):
        total = comb(n, mp)
        fact = factorial(mp)
        if total % fact:
            return False
        target = total // fact
        if any(c != target for c in profile(sigma, mp).counts):
            return False
    return True


@dataclass
class SymmetrySearchResult:
    n: int
    m: int
    found: list
    nodes_explored: int
    exhaustive: bool


def search_perfect(n: int, m: int, budget: Optional[int] = None) -> SymmetrySearchResult:
    """Backtracking search for all perfectly m-symmetric permutations in S_n.

    Prunes a one-line prefix as soon as any pattern count (for any order
    up to m) exceeds its target, or can no longer reach it with the index
    sets that remain.  Counts only ever grow with the prefix, so both
    prunes are sound.
    """
    if not 2 <= m <= n:
        raise ValueError("need 2 <= m <= n")
    if n > EXHAUSTIVE_SIZE_LIMIT and budget is None:
        raise SearchBudgetRequired(
            f"n={n} exceeds the exhaustive limit {EXHAUSTIVE_SIZE_LIMIT}; "
            "pass an explicit node budget")

    targets = {}
    for mp in range(2, m + 1):
        total = comb(n, mp)
        q, r = divmod(total, factorial(mp))
        if r:
            return SymmetrySearchResult(n, m, [], 0, True)
        targets[mp] = q

    if m == 2:
        searcher = _PairSearch(n, targets[2], budget)
    elif m == 3:
        searcher = _TripleSearch(n, targets[2], targets[3], budget)
    else:
        searcher = _GenericSearch(n, m, targets, budget)
    found, nodes, exhaustive = searcher.run()
    found.sort(key=lambda p: p.images)
    return SymmetrySearchResult(n, m, found, nodes, exhaustive)


class _BudgetExceeded(Exception):
    pass


class _PairSearch:
    """Prefix search constrained by ascending/descending pair counts."""

    def __init__(self, n: int, t2: int, budget: Optional[int]):
        self.n = n
        self.t2 = t2
        self.budget = budget
        self.nodes = 0
        self.found = []
        self.rem_pairs = [comb(n, 2) - comb(L, 2) for L in range(n + 1)]

    def run(self) -> tuple:
        try:
            self._extend([], 0, 0, [False] * self.n)
            return self.found, self.nodes, True
        except _BudgetExceeded:
            return self.found, self.nodes, False

    def _extend(self, values: list, c01: int, c10: int, used: list) -> None:
        n, t2 = self.n, self.t2
        L = len(values)
        if L == n:
            self.found.append(Permutation(tuple(values)))
            return
        floor = t2 - self.rem_pairs[L + 1]
        for v in range(n):
            if used[v]:
                continue
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _BudgetExceeded
            lt = sum(1 for x in values if x < v)
            n01, n10 = c01 + lt, c10 + L - lt
            if n01 > t2 or n10 > t2 or n01 < floor or n10 < floor:
                continue
            used[v] = True
            values.append(v)
            self._extend(values, n01, n10, used)
            values.pop()
            used[v] = False


# order-3 pattern index from the two pair relations and v's rank slot
_TRIPLE_ASC = (0, 1, 3)   # a < b: v above both, between, below both
_TRIPLE_DESC = (2, 4, 5)  # a > b: v above both, between, below both


class _TripleSearch:
    """Prefix search constrained by both pair and triple pattern counts."""

    def __init__(self, n: int, t2: int, t3: int, budget: Optional[int]):
        self.n = n
        self.t2 = t2
        self.t3 = t3
        self.budget = budget
        self.nodes = 0
        self.found = []
        self.rem_pairs = [comb(n, 2) - comb(L, 2) for L in range(n + 1)]
        self.rem_triples = [comb(n, 3) - comb(L, 3) for L in range(n + 1)]

    def run(self) -> tuple:
        try:
            self._extend([], 0, 0, [0] * 6, [False] * self.n)
            return self.found, self.nodes, True
        except _BudgetExceeded:
            return self.found, self.nodes, False

    def _candidate_triple_deltas(self, values: list) -> list:
        """delta[p][v]: new order-3 occurrences of pattern p if value v is
        appended, found by classifying every placed pair against v.

        Built with difference arrays so one pass over
        the pairs serves every candidate value at once.
        """
        n = self.n
        diff = [[0] * (n + 1) for _ in range(6)]
        L = len(values)
        for i in range(L):
            a = values[i]
            for j in range(i + 1, L):
                b = values[j]
                if a < b:
                    hi, mid, lo = _TRIPLE_ASC
                    top, bot = b, a
                else:
                    hi, mid, lo = _TRIPLE_DESC
                    top, bot = a, b
                diff[hi][top + 1] += 1
                diff[mid][bot + 1] += 1
                diff[mid][top] -= 1
                diff[lo][0] += 1
                diff[lo][bot] -= 1
        deltas = []
        for p in range(6):
            acc = 0
            row = []
            d = diff[p]
            for v in range(n):
                acc += d[v]
                row.append(acc)
            deltas.append(row)
        return deltas

    def _extend(self, values: list, c01: int, c10: int, c3: list,
                used: list) -> None:
        n, t2, t3 = self.n, self.t2, self.t3
        L = len(values)
        if L == n:
            self.found.append(Permutation(tuple(values)))
            return
        floor2 = t2 - self.rem_pairs[L + 1]
        floor3 = t3 - self.rem_triples[L + 1]
        deltas = self._candidate_triple_deltas(values)
        for v in range(n):
            if used[v]:
                continue
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _BudgetExceeded
            lt = sum(1 for x in values if x < v)
            n01, n10 = c01 + lt, c10 + L - lt
            if n01 > t2 or n10 > t2 or n01 < floor2 or n10 < floor2:
                continue
            nc3 = [c3[p] + deltas[p][v] for p in range(6)]
            if any(c > t3 or c < floor3 for c in nc3):
                continue
            used[v] = True
            values.append(v)
            self._extend(values, n01, n10, nc3, used)
            values.pop()
            used[v] = False


class _GenericSearch:
    """Fallback for orders above 3: recount profiles at each extension."""

    def __init__(self, n: int, m: int, targets: dict, budget: Optional[int]):
        self.n = n
        self.m = m
        self.targets = targets
        self.budget = budget
        self.nodes = 0
        self.found = []

    def run(self) -> tuple:
        try:
            self._extend([], [False] * self.n)
            return self.found, self.nodes, True
        except _BudgetExceeded:
            return self.found, self.nodes, False

    def _prefix_ok(self, values: list) -> bool:
        from .patterns import standardize

        L = len(values)
        for mp, target in self.targets.items():
            if L < mp:
                continue
            counts = {}
            for a in itertools.combinations(range(L), mp):
                key = standardize([values[x] for x in a])
                counts[key] = counts.get(key, 0) + 1
            remaining = comb(self.n, mp) - comb(L, mp)
            if any(c > target for c in counts.values()):
                return False
            if any(c + remaining < target for c in counts.values()):
                return False
        return True

    def _extend(self, values: list, used: list) -> None:
        if len(values) == self.n:
            self.found.append(Permutation(tuple(values)))
            return
        for v in range(self.n):
            if used[v]:
                continue
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _BudgetExceeded
            values.append(v)
            if self._prefix_ok(values):
                used[v] = True
                self._extend(values, used)
                used[v] = False
            values.pop()
