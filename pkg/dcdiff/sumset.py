"""Sumsets, pair and quadruple decoding, and block-partition censuses."""

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate, groupby
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import HypothesisError, InvalidBlockCount, InvariantViolation, SizeMismatch, TooSmall
from .models import BlockCensus, QuadCensus
from .sets import SortedSet, consecutive_differences, has_distinct_consecutive_differences, make_set
from .sigma import SigmaMap, verify_sigma
from .utils import binomial2


# Above this many same-block subsets the census switches to run-length counting.
SUBSET_CENSUS_LIMIT = 20_000


@dataclass(frozen=True)
class PairWitness:
    """The pair {a_i + b_j, a_{i+1} + b_j}; indices are 1-based."""

    i: int
    j: int
    low: Fraction
    high: Fraction

    @property
    def pair(self) -> frozenset:
        return frozenset((self.low, self.high))


@dataclass(frozen=True)
class QuadWitness:
    """(a_i+b_j, a_{i+1}+b_j, a'_s+b'_j2, a'_{s+1}+b'_j2) with s = sigma(i); 1-based."""

    i: int
    j: int
    j2: int
    values: Tuple[Fraction, Fraction, Fraction, Fraction]


def sumset(A: SortedSet, B: SortedSet) -> SortedSet:
    """
    The sumset A + B = {a + b}.

    Args:
        A: Nonempty set
        B: Nonempty set

    Returns:
        Sorted, deduplicated sums
    """
    return make_set({a + b for a in A for b in B})


def _require_pair_hypothesis(A: SortedSet):
    if len(A) < 2:
        raise TooSmall(f"Pairs need |A| >= 2, got {len(A)}")
    if not has_distinct_consecutive_differences(A):
        raise HypothesisError(f"{A!r} does not have distinct consecutive differences")


def enumerate_pairs(A: SortedSet, B: SortedSet) -> List[PairWitness]:
    """
    All (k-1)*l pairs {a_i+b_j, a_{i+1}+b_j}, translate by translate.

    Raises:
        TooSmall: If |A| < 2
        HypothesisError: If A does not have distinct consecutive differences
    """
    _require_pair_hypothesis(A)

    witnesses = []
    for j, b in enumerate(B, start=1):
        for i in range(1, len(A)):
            witnesses.append(PairWitness(i=i, j=j, low=A[i - 1] + b, high=A[i] + b))
    return witnesses


def _difference_index(A: SortedSet) -> Dict[Fraction, int]:
    """Map d_i -> i (1-based); only meaningful when the d_i are distinct."""
    return {d: i for i, d in enumerate(consecutive_differences(A), start=1)}


def decode_pair(
    A: SortedSet, c: Fraction, c2: Fraction, B: SortedSet
) -> Optional[Tuple[int, int]]:
    """
    Recover (i, j) from a pair {c, c2} of the sumset, c < c2.

    The difference c2 - c determines i uniquely; then c - a_i must be b_j.

    Returns:
        1-based (i, j), or None when {c, c2} is not a pair
    """
    _require_pair_hypothesis(A)
    return _decode(_difference_index(A), _index_of(B), A, c, c2)


def _index_of(S: SortedSet) -> Dict[Fraction, int]:
    return {x: position for position, x in enumerate(S, start=1)}


def _decode(
    diff_index: Dict[Fraction, int],
    b_index: Dict[Fraction, int],
    A: SortedSet,
    c: Fraction,
    c2: Fraction,
) -> Optional[Tuple[int, int]]:
    if c >= c2:
        return None
    i = diff_index.get(c2 - c)
    if i is None:
        return None
    j = b_index.get(c - A[i - 1])
    if j is None:
        return None
    return i, j


class QuadrupleEnumeration:
    """Lazy stream of the (k-1)*l*l' quadruples; the count needs no materialization."""

    def __init__(self, A: SortedSet, A2: SortedSet, sigma: SigmaMap, B: SortedSet, B2: SortedSet):
        self.A = A
        self.A2 = A2
        self.sigma = sigma
        self.B = B
        self.B2 = B2

    @property
    def count(self) -> int:
        return (len(self.A) - 1) * len(self.B) * len(self.B2)

    def __iter__(self) -> Iterator[QuadWitness]:
        A, A2 = self.A, self.A2
        for i in range(1, len(A)):
            s = self.sigma.image[i - 1]
            for j, b in enumerate(self.B, start=1):
                for j2, b2 in enumerate(self.B2, start=1):
                    yield QuadWitness(
                        i=i,
                        j=j,
                        j2=j2,
                        values=(A[i - 1] + b, A[i] + b, A2[s - 1] + b2, A2[s] + b2),
                    )


def enumerate_quadruples(
    A: SortedSet, A2: SortedSet, sigma: SigmaMap, B: SortedSet, B2: SortedSet
) -> QuadrupleEnumeration:
    """
    The quadruples built from pairs of A+B and A'+B' matched through sigma.

    Raises:
        HypothesisError: If sigma does not make the pairs (d_i, d'_sigma(i)) distinct
    """
    if not verify_sigma(A, A2, sigma):
        raise HypothesisError(f"sigma {list(sigma.image)} does not give distinct difference pairs")
    return QuadrupleEnumeration(A, A2, sigma, B, B2)


def block_sizes(m: int, t: int) -> List[int]:
    """Sizes q+1 (first r blocks) and q (the rest), where m = q*t + r."""
    if t < 1 or t > m:
        raise InvalidBlockCount(f"Block count t={t} outside 1..{m}")
    q, r = divmod(m, t)
    return [q + 1] * r + [q] * (t - r)


def partition_blocks(C: SortedSet, t: int) -> List[range]:
    """
    Split the positions 0..|C|-1 into t consecutive interval blocks.

    Raises:
        InvalidBlockCount: If t is outside 1..|C|
    """
    bounds = [0] + list(accumulate(block_sizes(len(C), t)))
    return [range(start, end) for start, end in zip(bounds, bounds[1:])]


def _block_lookup(C: SortedSet, t: int) -> Tuple[List[int], Dict[Fraction, int]]:
    """Block sizes and a map value -> block number for the sumset C."""
    sizes = block_sizes(len(C), t)
    ends = list(accumulate(sizes))
    return sizes, {c: bisect_right(ends, position) for position, c in enumerate(C)}


def same_block_counts(A: SortedSet, B: SortedSet, C: SortedSet, t: int) -> List[int]:
    """
    For each i in 1..k-1, how many translates j keep {a_i+b_j, a_{i+1}+b_j} in one block.

    The translate a_1+b_j < ... < a_k+b_j is increasing and the blocks are
    intervals, so same-block elements of a translate form runs.
    """
    _, block_of = _block_lookup(C, t)
    counts = [0] * (len(A) - 1)
    for b in B:
        blocks = [block_of[a + b] for a in A]
        for i in range(len(A) - 1):
            if blocks[i] == blocks[i + 1]:
                counts[i] += 1
    return counts


def _runlength_within(A: SortedSet, B: SortedSet, block_of: Dict[Fraction, int]) -> int:
    # sum over j and u of max(k_{j,u} - 1, 0) = k - (number of blocks the translate meets)
    within = 0
    for b in B:
        runs = sum(1 for _ in groupby(block_of[a + b] for a in A))
        within += len(A) - runs
    return within


def brute_force_block_pairs(A: SortedSet, B: SortedSet, t: int) -> int:
    """Decode every same-block two-element subset of A+B and count the pairs."""
    _require_pair_hypothesis(A)
    C = sumset(A, B)
    diff_index = _difference_index(A)
    b_index = _index_of(B)

    within = 0
    for block in partition_blocks(C, t):
        values = [C[p] for p in block]
        for x_pos, x in enumerate(values):
            for y in values[x_pos + 1:]:
                if _decode(diff_index, b_index, A, x, y) is not None:
                    within += 1
    return within


def block_pair_census(
    A: SortedSet, B: SortedSet, t: int, method: str = "auto", strict: bool = True
) -> BlockCensus:
    """
    Count the pairs that land inside one block of the interval partition of A+B.

    Args:
        A: Set with distinct consecutive differences, |A| >= 2
        B: Nonempty set
        t: Number of blocks, 1 <= t <= |A+B|
        method: "runlength", "subsets" (decode oracle) or "auto"
        strict: Raise when the inequality fails instead of returning the census

    Returns:
        BlockCensus with lower bound l(k-t) and upper bound sum C(|C_u|, 2)

    Raises:
        HypothesisError: If A does not have distinct consecutive differences
        InvalidBlockCount: If t is out of range
        InvariantViolation: If the counting inequality fails and strict is set
    """
    _require_pair_hypothesis(A)
    C = sumset(A, B)
    sizes, block_of = _block_lookup(C, t)
    upper = sum(binomial2(size) for size in sizes)

    if method == "auto":
        method = "subsets" if upper <= SUBSET_CENSUS_LIMIT else "runlength"

    if method == "runlength":
        within = _runlength_within(A, B, block_of)
    elif method == "subsets":
        within = brute_force_block_pairs(A, B, t)
    else:
        raise ValueError(f"Unknown census method: {method}")

    census = BlockCensus(
        t=t,
        block_sizes=sizes,
        within_block_pairs=within,
        lower_bound=len(B) * (len(A) - t),
        upper_bound=upper,
    )
    if strict and not census.holds:
        raise InvariantViolation(
            f"Census inequality failed for t={t}: "
            f"{census.lower_bound} <= {within} <= {upper}"
        )
    return census


def quadruple_block_census(
    A: SortedSet,
    A2: SortedSet,
    sigma: SigmaMap,
    B: SortedSet,
    B2: SortedSet,
    t: int,
    t2: int,
    strict: bool = True,
) -> QuadCensus:
    """
    Count quadruples whose first pair lies in a block of A+B and whose last
    pair lies in a block of A'+B'.

    The lower bound is (k - t - t' + 1) * l * l'; the upper bound is
    sum over block pairs of C(|C_u|, 2) * C(|C'_u'|, 2).

    Raises:
        SizeMismatch: If |A| != |A'|
        HypothesisError: If sigma is not valid for A, A'
        InvalidBlockCount: If t or t' is out of range
        InvariantViolation: If the counting inequality fails and strict is set
    """
    if len(A) != len(A2):
        raise SizeMismatch(f"|A| = {len(A)} but |A'| = {len(A2)}")
    if len(A) < 2:
        raise TooSmall(f"Quadruples need |A| >= 2, got {len(A)}")
    enumerate_quadruples(A, A2, sigma, B, B2)

    C = sumset(A, B)
    C2 = sumset(A2, B2)
    sizes = block_sizes(len(C), t)
    sizes2 = block_sizes(len(C2), t2)
    hits = same_block_counts(A, B, C, t)
    hits2 = same_block_counts(A2, B2, C2, t2)

    within = sum(hits[i] * hits2[sigma.image[i] - 1] for i in range(len(A) - 1))
    upper = sum(binomial2(x) for x in sizes) * sum(binomial2(y) for y in sizes2)

    census = QuadCensus(
        t=t,
        t2=t2,
        block_sizes=sizes,
        block_sizes2=sizes2,
        within_block_quadruples=within,
        lower_bound=(len(A) - t - t2 + 1) * len(B) * len(B2),
        upper_bound=upper,
    )
    if strict and not census.holds:
        raise InvariantViolation(
            f"Quadruple census inequality failed for t={t}, t'={t2}: "
            f"{census.lower_bound} <= {within} <= {upper}"
        )
    return census
