"""
Rank and sign distribution of the forms Q_a as a runs over F_{p^m}*.

This module provides:
- CaseInfo / case_of: the parameter split on d = gcd(k, m), s = m/d and 2-adic valuations
- RSetSizes: how many a give each (rank class, sign class)
- expected_rsets: the closed-form sizes
- empirical_rsets: the same sizes by classifying every nonzero a
- trace_histogram: (N_a(beta)) for a single a
- verify_rsets: expected vs empirical for one parameter set
"""

import logging
from dataclasses import asdict, dataclass
from enum import Enum
from math import gcd
from typing import Any, Dict, Optional, Tuple

from src.algebra.gf import FieldCtx, FieldElement, validate_prime
from src.algebra.quadform import classify_by_log, quadratic_trace_table, validate_exponent
from src.errors import ConsistencyError, InvalidParameterError, WorkLimitExceeded
from src.infrastructure.workers import run_partitioned

logger = logging.getLogger('cyclic_weights.specdist')

# Default bound on the number of a-values a full sweep may classify
DEFAULT_SWEEP_LIMIT = 1 << 20


class CaseLabel(str, Enum):
    ODD_S_ODD_M = "ODD_S_ODD_M"
    ODD_S_EVEN_M = "ODD_S_EVEN_M"
    BOUNDARY = "BOUNDARY"
    DEEP = "DEEP"


def v2(n: int) -> int:
    """2-adic valuation of a positive integer."""
    if n <= 0:
        raise InvalidParameterError(f"v2 needs a positive integer, got {n}")
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class CaseInfo:
    p: int
    m: int
    k: int
    d: int
    s: int
    v2m: int
    v2k: int
    label: CaseLabel
    is_semiprimitive_degenerate: bool

    @property
    def s_even(self) -> bool:
        return self.s % 2 == 0


def validate_code_parameters(p: int, m: int, k: int) -> None:
    """Odd prime p and integers m > k >= 1."""
    validate_prime(p)
    for name, value in (("m", m), ("k", k)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    if k < 1:
        raise InvalidParameterError(f"k must be at least 1, got {k}")
    if m <= k:
        raise InvalidParameterError(f"need m > k, got m = {m}, k = {k}")


def case_of(p: int, m: int, k: int) -> CaseInfo:
    """
    Classify (p, m, k).

    s = m / gcd(k, m) is odd exactly when v2(m) <= v2(k). For even s the boundary case
    v2(m) = v2(k) + 1 is separated from the deeper ones; m = 2k always lands on the
    boundary with d = m/2.

    Raises:
        InvalidParameterError: if p is not an odd prime or m <= k
    """
    validate_code_parameters(p, m, k)
    d = gcd(k, m)
    v2m, v2k = v2(m), v2(k)
    if v2m <= v2k:
        label = CaseLabel.ODD_S_ODD_M if m % 2 else CaseLabel.ODD_S_EVEN_M
    elif v2m == v2k + 1:
        label = CaseLabel.BOUNDARY
    else:
        label = CaseLabel.DEEP
    return CaseInfo(
        p=p, m=m, k=k, d=d, s=m // d, v2m=v2m, v2k=v2k, label=label,
        is_semiprimitive_degenerate=(m == 2 * k)
    )


@dataclass(frozen=True)
class RSetSizes:
    """
    Tally of nonzero a by rank class i (rank m - 2di) and sign class eps.
    """
    r0_plus: int = 0
    r0_minus: int = 0
    r1_plus: int = 0
    r1_minus: int = 0

    @property
    def r0(self) -> int:
        return self.r0_plus + self.r0_minus

    @property
    def r1(self) -> int:
        return self.r1_plus + self.r1_minus

    @property
    def total(self) -> int:
        return self.r0 + self.r1

    def merge(self, other: 'RSetSizes') -> 'RSetSizes':
        return RSetSizes(
            r0_plus=self.r0_plus + other.r0_plus,
            r0_minus=self.r0_minus + other.r0_minus,
            r1_plus=self.r1_plus + other.r1_plus,
            r1_minus=self.r1_minus + other.r1_minus,
        )

    __add__ = merge

    def check(self, q: int) -> None:
        """Every nonzero a lands in exactly one class."""
        if self.total != q - 1:
            raise ConsistencyError(f"R-set sizes {self.to_dict()} do not sum to {q - 1}")

    def to_dict(self) -> Dict[str, int]:
        return {"r0": self.r0, "r1": self.r1, **asdict(self)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RSetSizes':
        return cls(
            r0_plus=int(data["r0_plus"]), r0_minus=int(data["r0_minus"]),
            r1_plus=int(data["r1_plus"]), r1_minus=int(data["r1_minus"]),
        )


def exact_div(num: int, den: int, what: str) -> int:
    quotient, rest = divmod(num, den)
    if rest:
        raise ConsistencyError(f"{what}: {num} is not divisible by {den}")
    return quotient


def expected_rsets(p: int, m: int, k: int) -> RSetSizes:
    """
    Closed-form R-set sizes.

    Odd s: every form has full rank and the two sign classes split evenly.
    Boundary: full rank with eps = -1 for p^d(p^m-1)/(p^d+1) values, rank m - 2d with
    eps = +1 for the rest. Deep: the same frequencies with both signs flipped.
    """
    info = case_of(p, m, k)
    total = p ** m - 1
    if not info.s_even:
        half = exact_div(total, 2, "odd-s halves")
        return RSetSizes(r0_plus=half, r0_minus=half)

    pd = p ** info.d
    full = exact_div(pd * total, pd + 1, "full-rank frequency")
    reduced = exact_div(total, pd + 1, "reduced-rank frequency")
    if info.label is CaseLabel.BOUNDARY:
        return RSetSizes(r0_minus=full, r1_plus=reduced)
    return RSetSizes(r0_plus=full, r1_minus=reduced)


def _tally_chunk(ctx: FieldCtx, k: int, start: int, stop: int) -> RSetSizes:
    table = quadratic_trace_table(ctx, k)
    counts = {"r0_plus": 0, "r0_minus": 0, "r1_plus": 0, "r1_minus": 0}
    for a_log in range(start, stop):
        _, eps, i = classify_by_log(ctx, k, a_log, table)
        counts[f"r{i}_{'plus' if eps > 0 else 'minus'}"] += 1
    return RSetSizes(**counts)


def check_work(what: str, work: int, limit: Optional[int], default: int) -> None:
    """Raise WorkLimitExceeded when work exceeds the limit (or its default)."""
    bound = default if limit is None else limit
    if work > bound:
        raise WorkLimitExceeded(what, work, bound)


def empirical_rsets(
    ctx: FieldCtx,
    k: int,
    workers: Optional[int] = 1,
    work_limit: Optional[int] = None
) -> RSetSizes:
    """
    Classify every nonzero a and tally the classes.

    Args:
        ctx: Field context with tables
        k: Exponent parameter, 1 <= k < m
        workers: Process count for the sweep (None for available parallelism)
        work_limit: Maximum number of a-values (default 2^20)

    Raises:
        WorkLimitExceeded: if p^m - 1 exceeds the work limit
        ConsistencyError: from any per-a classification
    """
    validate_exponent(ctx, k)
    ctx.require_tables()
    check_work(f"rank sweep over F_{ctx.p}^{ctx.m}", ctx.order, work_limit, DEFAULT_SWEEP_LIMIT)

    sizes = RSetSizes()
    for part in run_partitioned(_tally_chunk, (ctx, k), ctx.order, workers):
        sizes = sizes.merge(part)
    sizes.check(ctx.q)
    logger.info(f"Rank sweep p={ctx.p} m={ctx.m} k={k}: {sizes.to_dict()}")
    return sizes


@dataclass(frozen=True)
class TraceHistogram:
    """(N_a(beta)) for beta = 0..p-1."""
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, beta: int) -> int:
        return self.counts[beta % len(self.counts)]

    def __len__(self) -> int:
        return len(self.counts)


def trace_histogram(ctx: FieldCtx, k: int, a: FieldElement) -> TraceHistogram:
    """Histogram of Tr(a x^(p^k+1)) over all x; a = 0 gives (p^m, 0, ..., 0)."""
    table = quadratic_trace_table(ctx, k)
    a_log = None if ctx.is_zero(a) else ctx.log(a)
    return TraceHistogram(tuple(int(c) for c in table.histogram(a_log)))


@dataclass(frozen=True)
class RSetReport:
    case: CaseInfo
    expected: RSetSizes
    empirical: RSetSizes

    @property
    def match(self) -> bool:
        return self.expected == self.empirical

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case.label.value,
            "expected": self.expected.to_dict(),
            "empirical": self.empirical.to_dict(),
            "match": self.match,
        }


def verify_rsets(
    ctx: FieldCtx,
    k: int,
    workers: Optional[int] = 1,
    work_limit: Optional[int] = None
) -> RSetReport:
    """Compare the closed-form R-set sizes against a full sweep."""
    case = case_of(ctx.p, ctx.m, k)
    report = RSetReport(
        case=case,
        expected=expected_rsets(ctx.p, ctx.m, k),
        empirical=empirical_rsets(ctx, k, workers=workers, work_limit=work_limit),
    )
    if not report.match:
        logger.warning(
            f"R-set mismatch for p={ctx.p} m={ctx.m} k={k}: "
            f"expected {report.expected.to_dict()}, got {report.empirical.to_dict()}"
        )
    return report
