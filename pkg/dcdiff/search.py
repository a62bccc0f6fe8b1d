"""Search for convex integer sets with small |A+A|.

A convex set is stored as its difference vector d_1 < d_2 < ... < d_{n-1}
(translation fixed by a_1 = 0). |A+A| is invariant under dilation, so the
exhaustive search only visits vectors with gcd 1.
"""

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from rich.console import Console

from .errors import BudgetTooSmall, InvalidSeed, InvariantViolation, TooSmall
from .models import SearchRecord
from .sets import is_convex, make_set
from .sumset import sumset


console = Console(stderr=True)

# The incremental objective is compared against a full recount this often.
CROSS_CHECK_INTERVAL = 2 ** 10


def convex_set(diffs: Sequence[int]) -> List[int]:
    """Elements 0, d_1, d_1 + d_2, ... of the set with the given differences."""
    elements = [0]
    for d in diffs:
        elements.append(elements[-1] + d)
    return elements


def self_sumset_size(elements: Sequence[int]) -> int:
    """|A + A| for an integer list."""
    return len({a + elements[j] for i, a in enumerate(elements) for j in range(i, len(elements))})


def minimum_width(n: int) -> int:
    """Smallest total width 1 + 2 + ... + (n-1) of a convex difference vector."""
    return n * (n - 1) // 2


def verify_witness(diffs: Sequence[int], best_size: int):
    """Recheck a search result through the sumset engine."""
    A = make_set(convex_set(diffs))
    if not is_convex(A):
        raise InvariantViolation(f"Witness {list(diffs)} is not convex")
    size = len(sumset(A, A))
    if size != best_size:
        raise InvariantViolation(
            f"Witness {list(diffs)} has |A+A| = {size}, search reported {best_size}"
        )


def convex_difference_vectors(
    length: int, budget: int, first: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """
    Strictly increasing positive vectors of the given length with sum <= budget,
    in lexicographic order.

    Args:
        length: Vector length (n - 1)
        budget: Maximum sum
        first: Fix d_1 to this value
    """
    vector: List[int] = []

    def extend(total: int) -> Iterator[Tuple[int, ...]]:
        if len(vector) == length:
            yield tuple(vector)
            return

        rest = length - len(vector) - 1
        d = vector[-1] + 1 if vector else 1
        if not vector and first is not None:
            d = first
        while True:
            # Cheapest completion: d, then d+1, ..., d+rest.
            if total + d * (rest + 1) + rest * (rest + 1) // 2 > budget:
                break
            vector.append(d)
            yield from extend(total + d)
            vector.pop()
            if not vector and first is not None:
                break
            d += 1

    yield from extend(0)


SubtreeResult = Tuple[Optional[int], Optional[Tuple[int, ...]], Optional[int]]


def _search_subtree(n: int, budget: int, first: int) -> SubtreeResult:
    """Best (size, lexicographically least witness, least width achieving it) for d_1 = first."""
    best_size = None
    witness = None
    width = None
    for diffs in convex_difference_vectors(n - 1, budget, first=first):
        if math.gcd(*diffs) != 1:
            continue
        size = self_sumset_size(convex_set(diffs))
        total = sum(diffs)
        if best_size is None or size < best_size:
            best_size, witness, width = size, diffs, total
        elif size == best_size and total < width:
            width = total
    return best_size, witness, width


def _first_difference_range(n: int, budget: int) -> List[int]:
    rest = n - 2
    firsts = []
    d = 1
    while d * (rest + 1) + rest * (rest + 1) // 2 <= budget:
        firsts.append(d)
        d += 1
    return firsts


def exhaustive_min_sumset(
    n: int, width_budget: int, workers: int = 1, verbose: bool = False
) -> SearchRecord:
    """
    Minimum |A+A| over convex n-element integer sets of width <= width_budget.

    The search splits on d_1; subtrees are reduced by size and then by
    witness order, so serial and parallel runs agree exactly.

    Args:
        n: Set size (at least 2)
        width_budget: Maximum a_n - a_1
        workers: Process count for the d_1 split; 1 runs serially
        verbose: Print progress to standard error

    Returns:
        SearchRecord; complete is True when the minimum is already reached
        at width <= width_budget / 2

    Raises:
        TooSmall: If n < 2
        BudgetTooSmall: If width_budget < n(n-1)/2
    """
    if n < 2:
        raise TooSmall(f"Search needs n >= 2, got {n}")
    if width_budget < minimum_width(n):
        raise BudgetTooSmall(
            f"Width budget {width_budget} is below the minimum {minimum_width(n)} for n={n}"
        )

    firsts = _first_difference_range(n, width_budget)
    if verbose:
        console.print(
            f"[cyan]Exhaustive search:[/cyan] n={n}, budget={width_budget}, "
            f"{len(firsts)} subtree(s), {workers} worker(s)"
        )

    if workers <= 1:
        results = [_search_subtree(n, width_budget, d1) for d1 in firsts]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(
                executor.map(_search_subtree, [n] * len(firsts), [width_budget] * len(firsts), firsts)
            )

    best_size = None
    witness = None
    width = None
    for size, diffs, total in results:
        if size is None:
            continue
        # subtrees arrive in d_1 order, so the first minimal one has the least witness
        if best_size is None or size < best_size:
            best_size, witness, width = size, diffs, total
        elif size == best_size:
            width = min(width, total)

    verify_witness(witness, best_size)
    if verbose:
        console.print(f"[green]✓[/green] n={n}: |A+A| = {best_size} at {list(witness)}")

    return SearchRecord(
        n=n,
        best_size=best_size,
        witness_diffs=list(witness),
        mode="exhaustive",
        width_budget=width_budget,
        complete=2 * width <= width_budget,
        gcd_normalized=True,
    )


def _pair_sums(elements: Sequence[int]) -> Counter:
    """Multiset of a_i + a_j over i <= j."""
    return Counter(
        elements[i] + elements[j] for i in range(len(elements)) for j in range(i, len(elements))
    )


def _shift_tail(sums: Counter, elements: List[int], pivot: int, delta: int):
    """Move elements[pivot+1:] by delta and update the pair-sum multiset in place."""
    size = len(elements)
    for i in range(size):
        for j in range(max(i, pivot + 1), size):
            old = elements[i] + elements[j]
            shift = delta if i <= pivot else 2 * delta
            sums[old] -= 1
            if sums[old] == 0:
                del sums[old]
            sums[old + shift] += 1
    for index in range(pivot + 1, size):
        elements[index] += delta


def _valid_move(diffs: Sequence[int], index: int, new_value: int) -> bool:
    if new_value < 1:
        return False
    if index > 0 and diffs[index - 1] >= new_value:
        return False
    if index < len(diffs) - 1 and new_value >= diffs[index + 1]:
        return False
    return True


def anneal_min_sumset(
    n: int,
    steps: int,
    seed: int,
    start_temperature: float = 2.0,
    end_temperature: float = 0.05,
    verbose: bool = False,
) -> SearchRecord:
    """
    Simulated annealing over convex difference vectors.

    Step 1 evaluates the start vector (1, 2, ..., n-1); each later step
    proposes d_i -> d_i +/- 1, rejecting moves that break positivity or
    strict monotonicity. The temperature cools geometrically and acceptance
    uses the Metropolis rule with a numpy generator seeded by seed.

    The objective is maintained incrementally as a multiset of pair sums and
    recounted from scratch every CROSS_CHECK_INTERVAL steps; on a mismatch
    the search falls back to full recounts for the rest of the run.

    Args:
        n: Set size (at least 2)
        steps: Number of evaluations (at least 1)
        seed: Unsigned 64-bit seed

    Returns:
        SearchRecord with complete = False
    """
    if n < 2:
        raise TooSmall(f"Search needs n >= 2, got {n}")
    if steps < 1:
        raise TooSmall(f"Annealing needs at least 1 step, got {steps}")
    if not 0 <= seed < 2**64:
        raise InvalidSeed(f"Seed must be in 0..2^64-1, got {seed}")

    rng = np.random.default_rng(seed)
    diffs = list(range(1, n))
    elements = convex_set(diffs)
    sums = _pair_sums(elements)
    current = len(sums)
    best_size, best_diffs = current, tuple(diffs)
    incremental = True

    cooling = (end_temperature / start_temperature) ** (1.0 / max(steps - 1, 1))
    temperature = start_temperature

    for step in range(1, steps):
        temperature *= cooling
        index = int(rng.integers(n - 1))
        delta = 1 if rng.random() < 0.5 else -1
        # One acceptance draw per step, valid move or not.
        draw = rng.random()

        if not _valid_move(diffs, index, diffs[index] + delta):
            continue

        diffs[index] += delta
        if incremental:
            _shift_tail(sums, elements, index, delta)
            candidate = len(sums)
        else:
            elements = convex_set(diffs)
            sums = _pair_sums(elements)
            candidate = len(sums)

        change = candidate - current
        if change <= 0 or draw < math.exp(-change / temperature):
            current = candidate
            if current < best_size:
                best_size, best_diffs = current, tuple(diffs)
        else:
            diffs[index] -= delta
            if incremental:
                _shift_tail(sums, elements, index, -delta)
            else:
                elements = convex_set(diffs)
                sums = _pair_sums(elements)

        if incremental and step % CROSS_CHECK_INTERVAL == 0:
            if self_sumset_size(convex_set(diffs)) != current:
                if verbose:
                    console.print(
                        "[yellow]⚠[/yellow] Incremental objective drifted; switching to full recount"
                    )
                incremental = False
                elements = convex_set(diffs)
                sums = _pair_sums(elements)
                current = len(sums)

    verify_witness(best_diffs, best_size)
    if verbose:
        console.print(
            f"[green]✓[/green] anneal n={n}, seed={seed}: |A+A| = {best_size} at {list(best_diffs)}"
        )

    return SearchRecord(
        n=n,
        best_size=best_size,
        witness_diffs=list(best_diffs),
        mode="anneal",
        complete=False,
        seed=seed,
        steps=steps,
    )


def anneal_batch(n: int, steps: int, seeds: Sequence[int], workers: int = 1) -> List[SearchRecord]:
    """Run one annealer per seed; records come back in seed order."""
    if workers <= 1:
        return [anneal_min_sumset(n, steps, seed) for seed in seeds]

    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(
            executor.map(anneal_min_sumset, [n] * len(seeds), [steps] * len(seeds), seeds)
        )
