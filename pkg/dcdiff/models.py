"""Pydantic models for point maps, reports, records and suite configuration."""

from fractions import Fraction
from typing import Annotated, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, PrivateAttr, field_validator, model_validator

from .utils import parse_rational


# --------------------------------------------------------------------------
# Point maps
# --------------------------------------------------------------------------


def _check_rational(v: str) -> str:
    # parse_rational raises a ValueError subclass, which pydantic reports per field
    parse_rational(v)
    return v


class PowerMap(BaseModel):
    """x -> x**exponent."""

    kind: Literal["power"] = "power"
    exponent: int = Field(..., ge=2, description="Integer exponent (at least 2)")

    def describe(self) -> str:
        return f"x^{self.exponent}"


class PolynomialMap(BaseModel):
    """Polynomial with rational coefficients, constant term first."""

    kind: Literal["polynomial"] = "polynomial"
    coefficients: List[str] = Field(
        ..., min_length=1, description="Coefficients as \"p/q\" strings, constant term first"
    )

    @field_validator("coefficients")
    @classmethod
    def validate_coefficients(cls, v: List[str]) -> List[str]:
        return [_check_rational(c) for c in v]

    def describe(self) -> str:
        return "poly(" + ", ".join(self.coefficients) + ")"


class TableMap(BaseModel):
    """Explicit value table {x: F(x)}."""

    kind: Literal["table"] = "table"
    values: Dict[str, str] = Field(..., description="Point -> value, both as \"p/q\" strings")

    _fractions: Optional[Dict[Fraction, Fraction]] = PrivateAttr(default=None)

    @field_validator("values")
    @classmethod
    def validate_points(cls, v: Dict[str, str]) -> Dict[str, str]:
        seen = set()
        for x, y in v.items():
            key = parse_rational(x)
            parse_rational(y)
            if key in seen:
                raise ValueError(f"Point {x} listed twice in value table")
            seen.add(key)
        return v

    def as_fractions(self) -> Dict[Fraction, Fraction]:
        if self._fractions is None:
            self._fractions = {
                parse_rational(x): parse_rational(y) for x, y in self.values.items()
            }
        return self._fractions

    def describe(self) -> str:
        return f"table({len(self.values)} points)"


PointMap = Annotated[Union[PowerMap, PolynomialMap, TableMap], Field(discriminator="kind")]


# --------------------------------------------------------------------------
# Bound reports
# --------------------------------------------------------------------------


_COMPARATORS = {
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
}


class Check(BaseModel):
    """One exact integer inequality lhs <op> rhs."""

    name: str
    lhs: str = Field(..., description="Left-hand side as a decimal string")
    rhs: str = Field(..., description="Right-hand side as a decimal string")
    op: Literal[">=", ">", "<=", "<"]
    passed: bool = Field(..., serialization_alias="pass")

    @classmethod
    def compare(cls, name: str, lhs: int, op: str, rhs: int) -> "Check":
        """Evaluate lhs <op> rhs on Python integers."""
        return cls(name=name, lhs=str(lhs), rhs=str(rhs), op=op, passed=_COMPARATORS[op](lhs, rhs))


class Sizes(BaseModel):
    k: Optional[int] = None
    l: Optional[int] = None
    l2: Optional[int] = None
    m: Optional[int] = None
    m2: Optional[int] = None


class Empirical(BaseModel):
    """An exact ratio num/den kept as two decimal strings."""

    num: str
    den: str


class BoundReport(BaseModel):
    """Outcome of checking one theorem on one instance."""

    theorem: Literal["T1", "T2", "T3", "T4"]
    hypothesis_ok: bool
    sizes: Sizes
    checks: List[Check] = Field(default_factory=list)
    empirical: Optional[Empirical] = None
    delta: Optional[str] = Field(None, description="delta_ratio(A) for Theorem 2")
    sigma: Optional[List[int]] = Field(None, description="sigma found for Theorem 3")
    notes: List[str] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def ok(self) -> bool:
        """Hypothesis holds and every check passes."""
        return self.hypothesis_ok and self.all_passed

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


class TightnessReport(BaseModel):
    """How close |A+[k]| for the constructed A comes to k^(3/2)."""

    k: int
    sidon_size: int
    sumset_size: int
    checks: List[Check] = Field(default_factory=list)
    ratio: Empirical = Field(..., description="(|A+[k]|^2, k^3)")

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json_dict(self) -> dict:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


# --------------------------------------------------------------------------
# Census results
# --------------------------------------------------------------------------


class BlockCensus(BaseModel):
    """Pairs of the sumset falling inside interval blocks."""

    t: int
    block_sizes: List[int]
    within_block_pairs: int
    lower_bound: int
    upper_bound: int

    @property
    def holds(self) -> bool:
        return self.lower_bound <= self.within_block_pairs <= self.upper_bound


class QuadCensus(BaseModel):
    """Quadruples whose both pairs fall inside interval blocks of C and C'."""

    t: int
    t2: int
    block_sizes: List[int]
    block_sizes2: List[int]
    within_block_quadruples: int
    lower_bound: int
    upper_bound: int

    @property
    def holds(self) -> bool:
        return self.lower_bound <= self.within_block_quadruples <= self.upper_bound


# --------------------------------------------------------------------------
# Search records
# --------------------------------------------------------------------------


class SearchRecord(BaseModel):
    """Best |A+A| found for convex n-element integer sets."""

    v: Literal[1] = 1
    n: int = Field(..., ge=2)
    best_size: int = Field(..., ge=1)
    witness_diffs: List[int]
    mode: Literal["exhaustive", "anneal"]
    width_budget: Optional[int] = Field(None, description="Exhaustive width budget")
    complete: bool = False
    gcd_normalized: bool = Field(
        False, description="Exhaustive search only visited difference vectors with gcd 1"
    )
    seed: Optional[int] = Field(None, ge=0, lt=2**64)
    steps: Optional[int] = Field(None, ge=1)
    timestamp: Optional[str] = None

    @model_validator(mode="after")
    def validate_witness(self):
        if len(self.witness_diffs) != self.n - 1:
            raise ValueError(
                f"witness_diffs has {len(self.witness_diffs)} entries, expected {self.n - 1}"
            )
        if any(d <= 0 for d in self.witness_diffs):
            raise ValueError("witness_diffs must be positive")
        if any(a >= b for a, b in zip(self.witness_diffs, self.witness_diffs[1:])):
            raise ValueError("witness_diffs must be strictly increasing")
        return self

    def witness_set(self) -> List[int]:
        """Reconstruct the convex set with first element 0."""
        elements = [0]
        for d in self.witness_diffs:
            elements.append(elements[-1] + d)
        return elements


# --------------------------------------------------------------------------
# Suite configuration
# --------------------------------------------------------------------------


SetSource = Union[List[Union[str, int]], str]


class Job(BaseModel):
    """One verification job in a suite file."""

    theorem: Literal[1, 2, 3, 4]
    name: Optional[str] = Field(None, description="Optional label for documentation")
    A: SetSource
    B: Optional[SetSource] = None
    A2: Optional[SetSource] = Field(None, description="A' (Theorem 3)")
    B2: Optional[SetSource] = Field(None, description="B' (Theorem 3)")
    C: Optional[SetSource] = Field(None, description="C (Theorem 4)")
    map: Optional[PointMap] = Field(None, description="Point map F (Theorem 4)")

    @model_validator(mode="after")
    def validate_required_sets(self):
        required = {
            1: ["B"],
            2: ["B"],
            3: ["A2", "B", "B2"],
            4: ["B", "C", "map"],
        }[self.theorem]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(
                f"Theorem {self.theorem} job needs: {', '.join(missing)}"
            )
        if self.theorem != 4 and ("image" in (self.B, self.C)):
            raise ValueError("'image' is only meaningful for Theorem 4 jobs")
        return self


class Suite(BaseModel):
    """A batch of verification jobs."""

    name: str = Field(..., description="Suite name")
    description: Optional[str] = None
    jobs: List[Job] = Field(..., min_length=1, description="Jobs, run in order")
