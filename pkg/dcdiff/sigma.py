"""Matching consecutive differences of two sets through a permutation sigma.

A valid sigma makes the k-1 ordered pairs (d_i, d'_sigma(i)) pairwise
distinct. Equivalently, no two indices with the same d-value may be sent
into indices with the same d'-value. That is a 0/1 transportation problem
between d-value classes and d'-value classes, solved here as a max-flow
with unit capacities between classes.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from .errors import HypothesisError, InvalidSigma, SizeMismatch, TooSmall
from .models import PointMap
from .sets import SortedSet, apply_map, consecutive_differences


@dataclass(frozen=True)
class SigmaMap:
    """A permutation of 1..k-1 stored as image[i-1] = sigma(i)."""

    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise InvalidSigma(f"{list(image)} is not a permutation of 1..{len(image)}")
        object.__setattr__(self, "image", image)

    def __len__(self) -> int:
        return len(self.image)

    def to_list(self) -> List[int]:
        return list(self.image)

    @classmethod
    def identity(cls, size: int) -> "SigmaMap":
        return cls(tuple(range(1, size + 1)))


def _diffs(S: SortedSet) -> List[Fraction]:
    return list(consecutive_differences(S)) if len(S) >= 2 else []


def _pairs_distinct(d: Sequence[Fraction], d2: Sequence[Fraction], image: Sequence[int]) -> bool:
    pairs = [(d[i], d2[s - 1]) for i, s in enumerate(image)]
    return len(set(pairs)) == len(pairs)


def verify_sigma(A: SortedSet, A2: SortedSet, sigma: SigmaMap) -> bool:
    """
    True iff the ordered pairs (d_i, d'_sigma(i)) are pairwise distinct.

    Raises:
        SizeMismatch: If |A| != |A'|
        InvalidSigma: If sigma has the wrong length
    """
    if len(A) != len(A2):
        raise SizeMismatch(f"|A| = {len(A)} but |A'| = {len(A2)}")
    d, d2 = _diffs(A), _diffs(A2)
    if len(sigma) != len(d):
        raise InvalidSigma(f"sigma has {len(sigma)} entries, expected {len(d)}")
    return _pairs_distinct(d, d2, sigma.image)


def _classes(diffs: Sequence[Fraction]) -> Dict[Fraction, List[int]]:
    """Value -> ascending 1-based indices, ordered by value."""
    grouped = defaultdict(list)
    for index, value in enumerate(diffs, start=1):
        grouped[value].append(index)
    return {value: grouped[value] for value in sorted(grouped)}


def build_class_network(
    rows: Dict[Fraction, List[int]], cols: Dict[Fraction, List[int]]
) -> nx.DiGraph:
    """
    Flow network source -> d-class -> d'-class -> sink.

    Source arcs carry the d-class sizes, sink arcs the d'-class sizes, and
    every class-to-class arc has capacity 1.
    """
    graph = nx.DiGraph()
    graph.add_node("source")
    for value, indices in rows.items():
        graph.add_edge("source", ("d", value), capacity=len(indices))
    for value, indices in rows.items():
        for value2 in cols:
            graph.add_edge(("d", value), ("d2", value2), capacity=1)
    for value2, indices in cols.items():
        graph.add_edge(("d2", value2), "sink", capacity=len(indices))
    return graph


def find_sigma(A: SortedSet, A2: SortedSet) -> Optional[SigmaMap]:
    """
    Find a sigma making (d_i, d'_sigma(i)) distinct, or None if none exists.

    Args:
        A: Set with |A| = k >= 2
        A2: Set with |A'| = k

    Returns:
        A verified SigmaMap, or None when no such bijection exists

    Raises:
        SizeMismatch: If |A| != |A'|
        TooSmall: If k < 2
    """
    if len(A) != len(A2):
        raise SizeMismatch(f"|A| = {len(A)} but |A'| = {len(A2)}")
    if len(A) < 2:
        raise TooSmall(f"sigma needs |A| >= 2, got {len(A)}")

    d, d2 = _diffs(A), _diffs(A2)
    rows, cols = _classes(d), _classes(d2)

    # Any bijection works when one side has no repeated value.
    if len(rows) == len(d) or len(cols) == len(d2):
        return SigmaMap.identity(len(d))

    # A d-class larger than the number of d'-classes cannot be spread out.
    if max(len(indices) for indices in rows.values()) > len(cols):
        return None

    flow_value, flow = nx.maximum_flow(
        build_class_network(rows, cols), "source", "sink", flow_func=edmonds_karp
    )
    if flow_value < len(d):
        return None

    # Within a class, indices are assigned in ascending order.
    remaining = {value2: list(indices) for value2, indices in cols.items()}
    image = [0] * len(d)
    for value, indices in rows.items():
        targets = [
            value2 for value2 in cols if flow[("d", value)].get(("d2", value2), 0) > 0
        ]
        for index, value2 in zip(indices, targets):
            image[index - 1] = remaining[value2].pop(0)

    sigma = SigmaMap(tuple(image))
    if not _pairs_distinct(d, d2, sigma.image):
        raise HypothesisError("Recovered sigma failed verification")
    return sigma


def identity_sigma_for_convex_map(A: SortedSet, F: PointMap) -> SigmaMap:
    """
    Verify that sigma = identity works for A and F(A), and return it.

    Raises:
        HypothesisError: If the identity does not give distinct pairs
            (F is not strictly convex on A, or degenerate)
    """
    image = apply_map(A, F)
    sigma = SigmaMap.identity(max(len(A) - 1, 0))
    if not verify_sigma(A, image, sigma):
        raise HypothesisError(
            f"Identity sigma fails for {A!r} and {F.describe()}: "
            "consecutive difference pairs collide"
        )
    return sigma
