"""Exact sets of rationals and the hypothesis predicates on them."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from pydantic import ValidationError

from .errors import DcdiffError, DuplicateElement, EmptySet, IncompleteMap, InvalidMap, TooSmall
from .models import PointMap, PolynomialMap, PowerMap, TableMap
from .utils import format_rational, parse_rational


Number = Union[Fraction, int, str]


def to_rational(value: Number) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise DcdiffError(f"Floating point value {value!r} is not an exact rational")
    return parse_rational(value)


@dataclass(frozen=True)
class SortedSet:
    """Strictly increasing finite sequence of rationals."""

    elements: Tuple[Fraction, ...]
    _members: FrozenSet[Fraction] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple(to_rational(x) for x in self.elements)
        for left, right in zip(elements, elements[1:]):
            if left == right:
                raise DuplicateElement(f"Duplicate value {format_rational(left)} in set")
            if left > right:
                raise DcdiffError("Set elements must be strictly increasing")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_members", frozenset(elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.elements)

    def __getitem__(self, index):
        return self.elements[index]

    def __contains__(self, value) -> bool:
        return value in self._members

    def __repr__(self) -> str:
        return "{" + ", ".join(format_rational(x) for x in self.elements) + "}"

    def affine(self, scale: Number, shift: Number = 0) -> "SortedSet":
        """Image under x -> scale*x + shift (scale must be positive)."""
        u = to_rational(scale)
        v = to_rational(shift)
        if u <= 0:
            raise DcdiffError("Affine scale must be positive")
        return SortedSet(tuple(u * x + v for x in self.elements))

    def to_strings(self) -> List[str]:
        """Elements in set-file form ("p/q" or "n")."""
        return [format_rational(x) for x in self.elements]


@dataclass(frozen=True)
class DiffSeq:
    """Consecutive differences d_i = a_{i+1} - a_i of a sorted set."""

    diffs: Tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.diffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.diffs)

    def __getitem__(self, index):
        return self.diffs[index]

    def to_strings(self) -> List[str]:
        return [format_rational(d) for d in self.diffs]


def make_set(values: Iterable[Number]) -> SortedSet:
    """
    Build a SortedSet from values in any order.

    Args:
        values: Rationals (Fraction, int or "p/q" strings)

    Returns:
        SortedSet of the values in increasing order

    Raises:
        EmptySet: If no values are given
        DuplicateElement: If a value occurs twice
    """
    rationals = [to_rational(v) for v in values]
    if not rationals:
        raise EmptySet("A set needs at least one element")

    rationals.sort()
    return SortedSet(tuple(rationals))


def consecutive_differences(A: SortedSet) -> DiffSeq:
    """
    Consecutive differences of A.

    Raises:
        TooSmall: If |A| < 2
    """
    if len(A) < 2:
        raise TooSmall(f"Consecutive differences need at least 2 elements, got {len(A)}")
    return DiffSeq(tuple(b - a for a, b in zip(A.elements, A.elements[1:])))


def is_convex(A: SortedSet) -> bool:
    """True iff consecutive differences strictly increase (vacuously for |A| <= 2)."""
    if len(A) <= 2:
        return True
    diffs = consecutive_differences(A).diffs
    return all(left < right for left, right in zip(diffs, diffs[1:]))


def has_distinct_consecutive_differences(A: SortedSet) -> bool:
    """True iff a_{i+1} - a_i = a_{j+1} - a_j implies i = j."""
    if len(A) <= 2:
        return True
    diffs = consecutive_differences(A).diffs
    return len(set(diffs)) == len(diffs)


def delta_ratio(A: SortedSet) -> Fraction:
    """
    |D| / |A| where D is the set of distinct consecutive differences.

    This is the largest delta for which |D| >= delta*|A| holds.

    Raises:
        TooSmall: If |A| < 2
    """
    diffs = consecutive_differences(A).diffs
    return Fraction(len(set(diffs)), len(A))


def is_sidon(S: SortedSet) -> bool:
    """True iff all differences s_j - s_i (i < j) are pairwise distinct."""
    seen = set()
    elements = S.elements
    for j in range(1, len(elements)):
        for i in range(j):
            difference = elements[j] - elements[i]
            if difference in seen:
                return False
            seen.add(difference)
    return True


def power_map(exponent: int) -> PowerMap:
    """The map x -> x**exponent (exponent >= 2)."""
    try:
        return PowerMap(kind="power", exponent=exponent)
    except ValidationError as e:
        raise InvalidMap(f"Invalid power map: {e.errors()[0]['msg']}")


def polynomial_map(coefficients: Sequence[Number]) -> PolynomialMap:
    """Polynomial with rational coefficients, constant term first."""
    try:
        return PolynomialMap(
            kind="polynomial",
            coefficients=[format_rational(to_rational(c)) for c in coefficients],
        )
    except ValidationError as e:
        raise InvalidMap(f"Invalid polynomial map: {e.errors()[0]['msg']}")


def _table_key(x: Number) -> str:
    # strings pass through unnormalized so "1/2" and "2/4" are caught as the same point
    return x if isinstance(x, str) else format_rational(to_rational(x))


def table_map(values: Mapping[Number, Number]) -> TableMap:
    """Explicit value table over a finite set of points."""
    try:
        return TableMap(
            kind="table",
            values={
                _table_key(x): format_rational(to_rational(y))
                for x, y in values.items()
            },
        )
    except ValidationError as e:
        raise InvalidMap(f"Invalid table map: {e.errors()[0]['msg']}")


def evaluate_map(F: PointMap, x: Fraction) -> Fraction:
    """Evaluate a point map at a single rational."""
    if isinstance(F, PowerMap):
        return x ** F.exponent

    if isinstance(F, PolynomialMap):
        result = Fraction(0)
        for coefficient in reversed(F.coefficients):
            result = result * x + parse_rational(coefficient)
        return result

    if isinstance(F, TableMap):
        table = F.as_fractions()
        if x not in table:
            raise IncompleteMap(f"Value table has no entry for {format_rational(x)}")
        return table[x]

    raise InvalidMap(f"Unknown point map: {F!r}")


def apply_map(A: SortedSet, F: PointMap) -> SortedSet:
    """
    Image {F(a) : a in A} as a SortedSet.

    Convexity of F is not assumed; hypotheses are checked on the image.

    Raises:
        DuplicateElement: If F is not injective on A
        IncompleteMap: If a value table misses a point of A
    """
    image = [evaluate_map(F, a) for a in A]
    if len(set(image)) != len(image):
        raise DuplicateElement(f"Map {F.describe()} is not injective on {A!r}")
    return make_set(image)
