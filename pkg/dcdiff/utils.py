"""Utility functions for dcdiff."""

import re
from fractions import Fraction
from typing import List, Union

from .errors import DcdiffError


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(token: Union[str, int]) -> Fraction:
    """
    Parse a rational written as "p/q" or "n".

    Unreduced forms are accepted and stored reduced.

    Args:
        token: String like "3/8", "-2", "4/8", or a plain integer

    Returns:
        Reduced Fraction

    Raises:
        DcdiffError: If the token is malformed or has a zero denominator

    Examples:
        >>> parse_rational("4/8")
        Fraction(1, 2)

        >>> parse_rational("-3")
        Fraction(-3, 1)
    """
    if isinstance(token, bool):
        raise DcdiffError(f"Invalid rational: {token!r}")
    if isinstance(token, int):
        return Fraction(token)
    if not isinstance(token, str):
        raise DcdiffError(f"Invalid rational: {token!r} (expected \"p/q\" or \"n\")")

    match = _RATIONAL_RE.match(token)
    if match is None:
        raise DcdiffError(f"Invalid rational: {token!r} (expected \"p/q\" or \"n\")")

    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise DcdiffError(f"Invalid rational: {token!r} (zero denominator)")

    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Format a Fraction as "p/q", or "n" when it is an integer."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_range_string(range_str: str) -> List[int]:
    """
    Parse range string like "1,3,5-10,20" into a sorted list of integers.

    Supports:
    - Individual numbers: "1,3,5"
    - Ranges: "5-10" (inclusive)
    - Mixed: "1,3,5-10,20"

    Args:
        range_str: Range string to parse

    Returns:
        Sorted list of distinct integers

    Raises:
        DcdiffError: If syntax is invalid

    Examples:
        >>> parse_range_string("1,3,5")
        [1, 3, 5]

        >>> parse_range_string("1-5")
        [1, 2, 3, 4, 5]
    """
    result = set()

    if not range_str.strip():
        return []

    for part in range_str.split(","):
        part = part.strip()

        if "-" in part:
            range_parts = part.split("-")
            if len(range_parts) != 2:
                raise DcdiffError(
                    f"Invalid range syntax: '{part}'. Expected format: 'start-end'"
                )

            try:
                start = int(range_parts[0].strip())
                end = int(range_parts[1].strip())
            except ValueError:
                raise DcdiffError(
                    f"Invalid range syntax: '{part}'. Start and end must be integers"
                )

            if start > end:
                raise DcdiffError(f"Invalid range: {start}-{end}. Start must be <= end")

            result.update(range(start, end + 1))
        else:
            try:
                result.add(int(part))
            except ValueError:
                raise DcdiffError(f"Invalid number: '{part}'")

    return sorted(result)


def binomial2(n: int) -> int:
    """Number of two-element subsets of an n-element set."""
    return n * (n - 1) // 2


def is_prime(n: int) -> bool:
    """Trial-division primality test (inputs here are desk-scale)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    divisor = 3
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 2
    return True
