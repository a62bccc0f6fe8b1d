"""Brute-force reference implementations the fast paths are checked against."""

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import List, Optional, Sequence, Tuple


def brute_sumset(A: Sequence, B: Sequence) -> List[Fraction]:
    """Every a + b, sorted and deduplicated, by double loop."""
    sums = []
    for a in A:
        for b in B:
            s = Fraction(a) + Fraction(b)
            if s not in sums:
                sums.append(s)
    return sorted(sums)


def set_from_diffs(diffs: Sequence[int], start: int = 0) -> List[int]:
    elements = [start]
    for d in diffs:
        elements.append(elements[-1] + d)
    return elements


def brute_sigma(d: Sequence, d2: Sequence) -> Optional[Tuple[int, ...]]:
    """First permutation (1-based) making the pairs (d_i, d2_sigma(i)) distinct."""
    for image in permutations(range(1, len(d) + 1)):
        pairs = {(d[i], d2[s - 1]) for i, s in enumerate(image)}
        if len(pairs) == len(d):
            return image
    return None


@lru_cache(maxsize=None)
def _arrangements(values: Tuple) -> Tuple[Tuple, ...]:
    return tuple(set(permutations(values)))


def brute_sigma_exists(d: Sequence, d2: Sequence) -> bool:
    """Whether some reordering of d2 makes the pairs (d_i, d2_i) distinct."""
    return any(len(set(zip(d, arrangement))) == len(d) for arrangement in _arrangements(tuple(d2)))


def brute_min_convex_sumset(n: int, budget: int) -> int:
    """Minimum |A+A| over every strictly increasing difference vector of
    length n - 1 whose sum is at most budget, by plain recursion."""
    best = None

    def extend(diffs: List[int], total: int):
        nonlocal best
        if len(diffs) == n - 1:
            elements = set_from_diffs(diffs)
            size = len({x + y for x in elements for y in elements})
            if best is None or size < best:
                best = size
            return
        low = diffs[-1] + 1 if diffs else 1
        for d in range(low, budget - total + 1):
            diffs.append(d)
            extend(diffs, total + d)
            diffs.pop()

    extend([], 0)
    return best


def brute_same_block_pairs(A: Sequence, B: Sequence, block_sizes: Sequence[int]) -> int:
    """Count translates' adjacent pairs {a_i + b, a_(i+1) + b} falling in one block."""
    C = brute_sumset(A, B)
    block_of = {}
    position = 0
    for u, size in enumerate(block_sizes):
        for _ in range(size):
            block_of[C[position]] = u
            position += 1

    A = sorted(Fraction(a) for a in A)
    count = 0
    for b in B:
        for low, high in zip(A, A[1:]):
            if block_of[low + b] == block_of[high + b]:
                count += 1
    return count
