"""Ruzsa's construction: a set with distinct consecutive differences and small A+[k].

Pipeline: Sidon set S -> Eulerian circuit of the complete graph on S read
as a listing L -> A = {i + L_i : 1 <= i <= k} with k = C(|S|, 2).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from rich.console import Console

from .errors import HypothesisError, InvariantViolation, NeedOddSize, NotPrime, TooSmall
from .models import Check, Empirical, TightnessReport
from .sets import SortedSet, is_sidon, make_set
from .sumset import sumset
from .utils import binomial2, format_rational, is_prime


console = Console(stderr=True)


@dataclass(frozen=True)
class Listing:
    """Elements of S with repetitions whose consecutive differences are distinct."""

    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        steps = [b - a for a, b in zip(self.entries, self.entries[1:])]
        if any(step == 0 for step in steps) or len(set(steps)) != len(steps):
            raise InvariantViolation("Listing has repeated or zero consecutive differences")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_strings(self) -> List[str]:
        return [format_rational(x) for x in self.entries]


@dataclass(frozen=True)
class RuzsaArtifacts:
    """Everything the construction produces for one Sidon set."""

    S: SortedSet
    S_scaled: SortedSet
    L: Listing
    A: SortedSet
    k: int
    sumset_size: int

    def to_dict(self) -> dict:
        return {
            "S": self.S.to_strings(),
            "S_scaled": self.S_scaled.to_strings(),
            "L": self.L.to_strings(),
            "A": self.A.to_strings(),
            "k": self.k,
            "sumset_size": self.sumset_size,
        }


def greedy_sidon(n: int) -> SortedSet:
    """
    First n terms of the greedy Sidon sequence 1, 2, 4, 8, 13, 21, ...

    Each term is the least integer above the previous one that keeps all
    pairwise differences distinct.
    """
    if n < 1:
        raise TooSmall(f"Sidon set size must be at least 1, got {n}")

    terms = [1]
    differences = set()
    candidate = 1
    while len(terms) < n:
        candidate += 1
        new_differences = {candidate - s for s in terms}
        if new_differences.isdisjoint(differences):
            terms.append(candidate)
            differences |= new_differences
    return make_set(terms)


def modular_sidon(p: int) -> SortedSet:
    """
    The Sidon set {2pk + (k^2 mod p) : 0 <= k < p}.

    Raises:
        NotPrime: If p is not prime
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    S = make_set(2 * p * k + (k * k) % p for k in range(p))
    if not is_sidon(S):
        raise InvariantViolation(f"Modular construction for p={p} is not Sidon")
    return S


def _hierholzer(vertices: List[Fraction]) -> List[Fraction]:
    """Eulerian circuit of the complete graph, smallest unused neighbour first."""
    # Descending lists so that pop() yields the smallest neighbour.
    adjacency: Dict[Fraction, List[Fraction]] = {
        u: sorted((v for v in vertices if v != u), reverse=True) for u in vertices
    }

    current_path = [vertices[0]]
    circuit = []
    while current_path:
        current = current_path[-1]
        if adjacency[current]:
            nxt = adjacency[current].pop()
            adjacency[nxt].remove(current)
            current_path.append(nxt)
        else:
            circuit.append(current_path.pop())

    circuit.reverse()
    return circuit


def eulerian_listing(S: SortedSet) -> Listing:
    """
    Walk every edge of the complete graph on S once, starting at min(S).

    The circuit has C(|S|,2)+1 vertices; dropping the closing vertex leaves
    exactly k = C(|S|,2) entries. Distinct edges of a Sidon set have distinct
    signed differences, so consecutive entries differ by distinct amounts.

    Raises:
        TooSmall: If |S| < 3
        NeedOddSize: If |S| is even
        HypothesisError: If S is not a Sidon set
    """
    if len(S) % 2 == 0:
        raise NeedOddSize(f"Eulerian listing needs odd |S|, got {len(S)}")
    if len(S) < 3:
        raise TooSmall(f"Eulerian listing needs |S| >= 3, got {len(S)}")
    if not is_sidon(S):
        raise HypothesisError(f"{S!r} is not a Sidon set")

    circuit = _hierholzer(list(S))
    if len(circuit) != binomial2(len(S)) + 1:
        raise InvariantViolation("Eulerian circuit does not cover every edge")
    return Listing(tuple(circuit[:-1]))


def interval(k: int) -> SortedSet:
    """[k] = {1, 2, ..., k}."""
    return make_set(range(1, k + 1))


def build_ruzsa_set(S: SortedSet, verbose: bool = False) -> RuzsaArtifacts:
    """
    Build A = {i + L_i} from a Sidon set of odd size.

    S is first translated to start at 0 and divided by max+1 so every entry
    of the listing lies in [0, 1); consecutive steps 1 + (L_{i+1} - L_i) are
    then positive and distinct.

    Raises:
        NeedOddSize, TooSmall, HypothesisError: As for eulerian_listing
        InvariantViolation: If the (2k-1)|S| envelope fails
    """
    shifted = S.affine(1, -S[0])
    S_scaled = shifted.affine(Fraction(1, shifted[-1] + 1))
    listing = eulerian_listing(S_scaled)
    k = len(listing)

    if verbose:
        console.print(f"[cyan]Listing:[/cyan] k = {k} entries over |S| = {len(S)}")

    A = SortedSet(tuple(i + entry for i, entry in enumerate(listing, start=1)))
    sumset_size = len(sumset(A, interval(k)))

    if sumset_size > (2 * k - 1) * len(S):
        raise InvariantViolation(
            f"|A+[k]| = {sumset_size} exceeds (2k-1)|S| = {(2 * k - 1) * len(S)}"
        )

    if verbose:
        console.print(f"[green]✓[/green] |A+[{k}]| = {sumset_size}")

    return RuzsaArtifacts(
        S=S, S_scaled=S_scaled, L=listing, A=A, k=k, sumset_size=sumset_size
    )


def tightness_report(artifacts: RuzsaArtifacts) -> TightnessReport:
    """
    Exact comparisons of |A+[k]| against k^(3/2) from both sides.

    The upper check |A+[k]|^2 <= 9k^3 shows the construction is within a
    factor 3 of k^(3/2); the floor 9|A+[k]|^2 >= k^3 is the distinct
    consecutive differences bound with l = k.
    """
    k = artifacts.k
    size = artifacts.sumset_size
    s = len(artifacts.S)

    checks = [
        Check.compare("envelope |A+[k]| <= (2k-1)|S|", size, "<=", (2 * k - 1) * s),
        Check.compare("envelope |A+[k]| <= |S|^3", size, "<=", s ** 3),
        Check.compare("upper |A+[k]|^2 <= 9k^3", size * size, "<=", 9 * k ** 3),
        Check.compare("floor 9|A+[k]|^2 >= k^3", 9 * size * size, ">=", k ** 3),
    ]
    return TightnessReport(
        k=k,
        sidon_size=s,
        sumset_size=size,
        checks=checks,
        ratio=Empirical(num=str(size * size), den=str(k ** 3)),
    )
