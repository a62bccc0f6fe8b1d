"""Exact-integer verification of the sumset lower bounds.

Every inequality involving a square root is squared into an integer
comparison before it is evaluated; no floating point is used.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence

from .errors import HypothesisError, SizeMismatch, TooSmall
from .models import BoundReport, Check, Empirical, PointMap, Sizes
from .sets import SortedSet, apply_map, delta_ratio, has_distinct_consecutive_differences
from .sigma import find_sigma, identity_sigma_for_convex_map
from .sumset import quadruple_block_census, sumset
from .utils import format_rational


NOT_GUARANTEED = "hypothesis fails: checks are reported but not guaranteed"
SQUARE_CASE = "l = k: the main check is 9m^2 >= k^3"
SPECIAL_CASE = "B = F(A), C = A: the main check is 8|A+F(A)|^4 >= n^5"


def check_theorem1(A: SortedSet, B: SortedSet) -> BoundReport:
    """
    |A+B| >= k*sqrt(l)/3 for A with distinct consecutive differences.

    Checks:
        - main bound as 9m^2 >= k^2*l
        - trivial floor m >= max(k, l)
        - for k, l >= 3, the sharper (2m + k - 1)^2 > 2l(k-1)^2

    When k = l the main check is the square case 9m^2 >= k^3 and a note
    says so.
    """
    k, l = len(A), len(B)
    m = len(sumset(A, B))
    hypothesis_ok = has_distinct_consecutive_differences(A)

    checks = [
        Check.compare("main 9m^2 >= k^2 l", 9 * m * m, ">=", k * k * l),
        Check.compare("floor m >= max(k, l)", m, ">=", max(k, l)),
    ]
    if k >= 3 and l >= 3:
        checks.append(
            Check.compare(
                "sharp (2m+k-1)^2 > 2l(k-1)^2",
                (2 * m + k - 1) ** 2,
                ">",
                2 * l * (k - 1) ** 2,
            )
        )
    notes = [] if hypothesis_ok else [NOT_GUARANTEED]
    if k == l:
        notes.append(SQUARE_CASE)

    return BoundReport(
        theorem="T1",
        hypothesis_ok=hypothesis_ok,
        sizes=Sizes(k=k, l=l, m=m),
        checks=checks,
        empirical=Empirical(num=str(9 * m * m), den=str(k * k * l)),
        notes=notes,
    )


def check_theorem2(A: SortedSet, B: SortedSet) -> BoundReport:
    """
    Measure delta = |D|/|A| and the empirical constant c^2 = m^2 / (k l^2).

    No constant c(delta) is asserted; the report is a measurement.

    Raises:
        TooSmall: If |A| < 2
    """
    if len(A) < 2:
        raise TooSmall(f"Theorem 2 needs |A| >= 2, got {len(A)}")

    k, l = len(A), len(B)
    m = len(sumset(A, B))
    delta = delta_ratio(A)

    notes = ["measurement only: no constant c(delta) is asserted"]
    if has_distinct_consecutive_differences(A):
        notes.append("A has distinct consecutive differences: Theorem 1 applies")

    return BoundReport(
        theorem="T2",
        hypothesis_ok=True,
        sizes=Sizes(k=k, l=l, m=m),
        checks=[],
        empirical=Empirical(num=str(m * m), den=str(k * l * l)),
        delta=format_rational(delta),
        notes=notes,
    )


def check_theorem3(A: SortedSet, A2: SortedSet, B: SortedSet, B2: SortedSet) -> BoundReport:
    """
    |A+B| * |A'+B'| against (k^3 l l')^(1/2), in the form 8(mm')^2 >= k^3 l l'.

    The hypothesis is the existence of sigma (decided by find_sigma). When
    it holds, the quadruple census with t = t' = max(1, k // 4) is replayed
    as two further checks.

    Raises:
        SizeMismatch: If |A| != |A'|
        TooSmall: If k < 2
    """
    if len(A) != len(A2):
        raise SizeMismatch(f"|A| = {len(A)} but |A'| = {len(A2)}")
    if len(A) < 2:
        raise TooSmall(f"Theorem 3 needs k >= 2, got {len(A)}")

    k, l, l2 = len(A), len(B), len(B2)
    m = len(sumset(A, B))
    m2 = len(sumset(A2, B2))
    sigma = find_sigma(A, A2)
    hypothesis_ok = sigma is not None

    product = m * m2
    checks = [
        Check.compare("main 8(mm')^2 >= k^3 l l'", 8 * product * product, ">=", k ** 3 * l * l2),
    ]

    if sigma is not None:
        t = max(1, k // 4)
        census = quadruple_block_census(A, A2, sigma, B, B2, t, t, strict=False)
        checks.append(
            Check.compare(
                f"census within >= (k-2t+1) l l' (t={t})",
                census.within_block_quadruples,
                ">=",
                census.lower_bound,
            )
        )
        checks.append(
            Check.compare(
                f"census within <= sum C(|C_u|,2) C(|C'_u'|,2) (t={t})",
                census.within_block_quadruples,
                "<=",
                census.upper_bound,
            )
        )

    return BoundReport(
        theorem="T3",
        hypothesis_ok=hypothesis_ok,
        sizes=Sizes(k=k, l=l, l2=l2, m=m, m2=m2),
        checks=checks,
        empirical=Empirical(num=str(8 * product * product), den=str(k ** 3 * l * l2)),
        sigma=sigma.to_list() if sigma is not None else None,
        notes=[] if hypothesis_ok else [NOT_GUARANTEED],
    )


def check_theorem4(A: SortedSet, B: SortedSet, C: SortedSet, F: PointMap) -> BoundReport:
    """
    max(|A+B|, |F(A)+C|) against n^(5/4), in the form 8*max^4 >= n^5.

    The hypothesis is that sigma = identity works for A and F(A). When
    B = F(A) and C = A both sumsets are A+F(A), so the main check is the
    special case 8|A+F(A)|^4 >= n^5 and a note says so.

    Raises:
        SizeMismatch: If |A|, |B|, |C| differ
        DuplicateElement: If F is not injective on A
    """
    n = len(A)
    if len(B) != n or len(C) != n:
        raise SizeMismatch(f"Theorem 4 needs |A| = |B| = |C|, got {n}, {len(B)}, {len(C)}")

    image = apply_map(A, F)
    try:
        identity_sigma_for_convex_map(A, F)
        hypothesis_ok = True
    except HypothesisError:
        hypothesis_ok = False

    m = len(sumset(A, B))
    m2 = len(sumset(image, C))
    largest = max(m, m2)

    checks = [Check.compare("main 8 max(m,m')^4 >= n^5", 8 * largest ** 4, ">=", n ** 5)]
    notes = [f"F = {F.describe()}"]
    if B == image and C == A:
        notes.append(SPECIAL_CASE)
    if not hypothesis_ok:
        notes.append(NOT_GUARANTEED)

    return BoundReport(
        theorem="T4",
        hypothesis_ok=hypothesis_ok,
        sizes=Sizes(k=n, l=n, l2=n, m=m, m2=m2),
        checks=checks,
        empirical=Empirical(num=str(8 * largest ** 4), den=str(n ** 5)),
        notes=notes,
    )


def verify(
    theorem: int,
    A: SortedSet,
    B: Optional[SortedSet] = None,
    A2: Optional[SortedSet] = None,
    B2: Optional[SortedSet] = None,
    C: Optional[SortedSet] = None,
    F: Optional[PointMap] = None,
) -> BoundReport:
    """Dispatch to the checker for one theorem."""
    if theorem == 1:
        return check_theorem1(A, B)
    if theorem == 2:
        return check_theorem2(A, B)
    if theorem == 3:
        return check_theorem3(A, A2, B, B2)
    if theorem == 4:
        return check_theorem4(A, B, C, F)
    raise ValueError(f"Unknown theorem: {theorem}")


def _verify_job(job: Dict) -> BoundReport:
    return verify(**job)


def verify_batch(jobs: Sequence[Dict], workers: int = 1) -> List[BoundReport]:
    """
    Run verify over many jobs; reports come back in input order.

    Args:
        jobs: Keyword-argument dicts for verify
        workers: Process count; 1 runs serially
    """
    if workers <= 1:
        return [_verify_job(job) for job in jobs]

    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_verify_job, jobs))
