"""
Closed-form weight distributions of the trace codes C1 and C2.

This module provides:
- params / code_spec: length and dimension of each family
- wd_c1: the C1 distribution for even s (boundary, deep and the degenerate m = 2k case)
- wd_c2: the C2 distribution in every case
- moment_checks: total-count and first-moment identities for any distribution
- distribution_diff: weights on which two distributions disagree

Notation used below, with P = p^m:
    base = (p-1) p^(m-1)       the weight of a nonzero linear trace codeword
    h    = p^((m-2)/2)         small deviation (even m)
    H    = p^((m+2d-2)/2)      large deviation, reduced-rank forms
    F0   = p^d (P-1)/(p^d+1)   number of full-rank a
    F1   = (P-1)/(p^d+1)       number of reduced-rank a

All arithmetic is on Python integers; every division is checked to be exact.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Tuple

from src.algebra.specdist import CaseLabel, case_of, exact_div, validate_code_parameters
from src.codes.types import CodeFamily, CodeSpec, TheoreticalWD, WeightDistribution
from src.errors import ConsistencyError, UnsupportedCaseError

logger = logging.getLogger('cyclic_weights.theory')

FORMULA_C1_BOUNDARY = "c1-boundary"
FORMULA_C1_DEEP = "c1-deep"
FORMULA_C1_DEGENERATE = "c1-degenerate"
FORMULA_C2_ODD_M = "c2-odd-m"
FORMULA_C2_ODD_S_EVEN_M = "c2-odd-s-even-m"
FORMULA_C2_BOUNDARY = "c2-boundary"
FORMULA_C2_DEEP = "c2-deep"
FORMULA_C2_DEGENERATE = "c2-degenerate"


def params(p: int, m: int, k: int, family: Any) -> Tuple[int, int]:
    """
    (n, dimension) of the code.

    n = p^m - 1. C1 has dimension 2m, or 3m/2 when m = 2k. C2 has dimension m + 1,
    or m/2 + 1 when m = 2k.
    """
    validate_code_parameters(p, m, k)
    family = CodeFamily.parse(family)
    degenerate = m == 2 * k
    if family is CodeFamily.C1:
        dimension = 3 * m // 2 if degenerate else 2 * m
    else:
        dimension = m // 2 + 1 if degenerate else m + 1
    return p ** m - 1, dimension


def code_spec(p: int, m: int, k: int, family: Any) -> CodeSpec:
    family = CodeFamily.parse(family)
    n, dimension = params(p, m, k, family)
    return CodeSpec(family=family, p=p, m=m, k=k, n=n, dimension=dimension)


def _merge(terms: Iterable[Tuple[int, int]]) -> Dict[int, int]:
    """Sum counts of coincident weights."""
    merged: Dict[int, int] = defaultdict(int)
    for weight, count in terms:
        if count < 0:
            raise ConsistencyError(f"negative frequency {count} for weight {weight}")
        merged[weight] += count
    return dict(merged)


def _build(
    spec: CodeSpec, terms: List[Tuple[int, int]], case: CaseLabel, formula: str
) -> TheoreticalWD:
    wd = TheoreticalWD(
        spec=spec, counts=_merge([(0, 1)] + terms), case=case.value, formula=formula
    )
    if wd.total != spec.p ** spec.dimension:
        raise ConsistencyError(
            f"{formula} frequencies sum to {wd.total}, expected {spec.p}^{spec.dimension}"
        )
    logger.debug(f"{formula} for p={spec.p} m={spec.m} k={spec.k}: {wd.counts}")
    return wd


def wd_c1(p: int, m: int, k: int) -> TheoreticalWD:
    """
    Closed-form weight distribution of C1.

    Raises:
        InvalidParameterError: for m <= k or a bad p
        UnsupportedCaseError: when s = m / gcd(m, k) is odd
    """
    info = case_of(p, m, k)
    if not info.s_even:
        raise UnsupportedCaseError(
            f"no closed form for C1 with odd s (p={p}, m={m}, k={k}, s={info.s}); "
            f"use --source empirical"
        )
    spec = code_spec(p, m, k, CodeFamily.C1)
    d = info.d
    big = p ** m
    base = (p - 1) * p ** (m - 1)
    h = p ** ((m - 2) // 2)
    top = p ** (m - 1)

    if info.is_semiprimitive_degenerate:
        half = p ** (m // 2) - 1
        terms = [
            (base, big - 1),
            ((p - 1) * (top + h), (top - (p - 1) * h) * half),
            (base - h, (p - 1) * (top + h) * half),
        ]
        return _build(spec, terms, info.label, FORMULA_C1_DEGENERATE)

    pd = p ** d
    full = exact_div(pd * (big - 1), pd + 1, "full-rank frequency")
    reduced = exact_div(big - 1, pd + 1, "reduced-rank frequency")
    large = p ** ((m + 2 * d - 2) // 2)
    g = p ** (m - 2 * d - 1)
    gh = p ** ((m - 2 * d - 2) // 2)
    base_count = (big - 1) * (1 + p ** (m - d) - p ** (m - 2 * d))

    if info.label is CaseLabel.BOUNDARY:
        terms = [
            (base, base_count),
            ((p - 1) * (top + h), (top - (p - 1) * h) * full),
            (base - h, (p - 1) * (top + h) * full),
            ((p - 1) * (top - large), (g + (p - 1) * gh) * reduced),
            (base + large, (p - 1) * (g - gh) * reduced),
        ]
        return _build(spec, terms, info.label, FORMULA_C1_BOUNDARY)

    terms = [
        (base, base_count),
        ((p - 1) * (top - h), (top + (p - 1) * h) * full),
        (base + h, (p - 1) * (top - h) * full),
        ((p - 1) * (top + large), (g - (p - 1) * gh) * reduced),
        (base - large, (p - 1) * (g + gh) * reduced),
    ]
    return _build(spec, terms, info.label, FORMULA_C1_DEEP)


def wd_c2(p: int, m: int, k: int) -> TheoreticalWD:
    """
    Closed-form weight distribution of C2.

    The p - 1 constant codewords always have full weight p^m - 1.
    """
    info = case_of(p, m, k)
    spec = code_spec(p, m, k, CodeFamily.C2)
    d = info.d
    big = p ** m
    base = (p - 1) * p ** (m - 1)
    top = p ** (m - 1)
    constants = (big - 1, p - 1)

    if info.label is CaseLabel.ODD_S_ODD_M:
        dev = p ** ((m - 1) // 2)
        spread = exact_div((p - 1) * (big - 1), 2, "odd-m frequency")
        terms = [constants, (base, big - 1), (base - dev - 1, spread), (base + dev - 1, spread)]
        return _build(spec, terms, info.label, FORMULA_C2_ODD_M)

    h = p ** ((m - 2) // 2)

    if info.label is CaseLabel.ODD_S_EVEN_M:
        spread = exact_div((p - 1) * (big - 1), 2, "odd-s frequency")
        half = exact_div(big - 1, 2, "odd-s frequency")
        terms = [
            constants,
            (base - h - 1, spread),
            (base + h - 1, spread),
            ((p - 1) * (top - h), half),
            ((p - 1) * (top + h), half),
        ]
        return _build(spec, terms, info.label, FORMULA_C2_ODD_S_EVEN_M)

    if info.is_semiprimitive_degenerate:
        half = p ** (m // 2) - 1
        terms = [constants, ((p - 1) * (top + h), half), (base - h - 1, (p - 1) * half)]
        return _build(spec, terms, info.label, FORMULA_C2_DEGENERATE)

    pd = p ** d
    full = exact_div(pd * (big - 1), pd + 1, "full-rank frequency")
    reduced = exact_div(big - 1, pd + 1, "reduced-rank frequency")
    large = p ** ((m + 2 * d - 2) // 2)

    if info.label is CaseLabel.BOUNDARY:
        terms = [
            constants,
            ((p - 1) * (top + h), full),
            (base - h - 1, (p - 1) * full),
            ((p - 1) * (top - large), reduced),
            (base + large - 1, (p - 1) * reduced),
        ]
        return _build(spec, terms, info.label, FORMULA_C2_BOUNDARY)

    terms = [
        constants,
        ((p - 1) * (top - h), full),
        (base + h - 1, (p - 1) * full),
        ((p - 1) * (top + large), reduced),
        (base - large - 1, (p - 1) * reduced),
    ]
    return _build(spec, terms, info.label, FORMULA_C2_DEEP)


def theoretical_wd(p: int, m: int, k: int, family: Any) -> TheoreticalWD:
    family = CodeFamily.parse(family)
    return wd_c1(p, m, k) if family is CodeFamily.C1 else wd_c2(p, m, k)


@dataclass(frozen=True)
class MomentReport:
    """Outcome of the count identities on a weight distribution."""
    total: int
    expected_total: int
    first_moment: int
    expected_first_moment: int
    zero_count: int

    @property
    def total_ok(self) -> bool:
        return self.total == self.expected_total

    @property
    def first_moment_ok(self) -> bool:
        return self.first_moment == self.expected_first_moment

    @property
    def zero_ok(self) -> bool:
        return self.zero_count == 1

    @property
    def passed(self) -> bool:
        return self.total_ok and self.first_moment_ok and self.zero_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "total": self.total_ok,
            "first_moment": self.first_moment_ok,
            "zero_codeword": self.zero_ok,
        }


def moment_checks(wd: WeightDistribution) -> MomentReport:
    """
    Check sum(A_w) = p^dim, sum(w A_w) = n (p-1) p^(dim-1) and A_0 = 1.
    """
    spec = wd.spec
    report = MomentReport(
        total=wd.total,
        expected_total=spec.p ** spec.dimension,
        first_moment=wd.first_moment,
        expected_first_moment=spec.n * (spec.p - 1) * spec.p ** (spec.dimension - 1),
        zero_count=wd.counts.get(0, 0),
    )
    if not report.passed:
        logger.warning(f"Moment identities fail for {spec.to_dict()}: {report.to_dict()}")
    return report


def distribution_diff(
    left: WeightDistribution, right: WeightDistribution
) -> List[Tuple[int, int, int]]:
    """Sorted (weight, left count, right count) for every weight where they differ."""
    weights = sorted(set(left.counts) | set(right.counts))
    return [
        (w, left.counts.get(w, 0), right.counts.get(w, 0))
        for w in weights
        if left.counts.get(w, 0) != right.counts.get(w, 0)
    ]
