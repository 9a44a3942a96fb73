"""
The trace codes C1 and C2.

This module provides:
- weight_c1 / weight_c2: weight of a single codeword from its parameters
- codeword_vector: the explicit codeword in alpha-power coordinate order
- shift_parameters: parameters of the cyclic left shift of a codeword
- degenerate_kernel / distinct_codewords: the parameter redundancy when m = 2k
- empirical_wd_c1 / empirical_wd_c2: exact weight distributions by full enumeration
"""

import logging
from typing import Any, List, Optional, Tuple

import numpy as np

from src.algebra.gf import FieldCtx, FieldElement
from src.algebra.quadform import quadratic_trace_table, validate_exponent
from src.algebra.specdist import check_work, exact_div, trace_histogram
from src.codes.enumeration import STRATEGIES, c1_weight_counts, c2_weight_counts
from src.codes.theory import code_spec, moment_checks
from src.codes.types import CodeFamily, WeightDistribution
from src.errors import ConsistencyError, InvalidParameterError
from src.infrastructure.logging import get_logger, track_performance
from src.infrastructure.workers import run_partitioned

logger = logging.getLogger('cyclic_weights.trace_codes')

# Default bounds on enumerated parameter tuples
DEFAULT_C1_LIMIT = 1 << 32
DEFAULT_C2_LIMIT = 1 << 20
# Explicit codebooks are only built for tiny fields
CODEBOOK_LIMIT = 1 << 16


def _log_or_none(ctx: FieldCtx, x: FieldElement) -> Optional[int]:
    return None if ctx.is_zero(x) else ctx.log(x)


def linear_trace_values(ctx: FieldCtx, b: FieldElement) -> np.ndarray:
    """Tr(b x) for every x in radix order."""
    out = np.zeros(ctx.q, dtype=np.int64)
    b_log = _log_or_none(ctx, b)
    if b_log is not None:
        out[1:] = ctx.trace_exp[(b_log + ctx.log_table[1:]) % ctx.order]
    return out


def weight_c1(ctx: FieldCtx, k: int, a: FieldElement, b: FieldElement) -> int:
    """p^m - #{x in F_{p^m} : Tr(a x^(p^k+1) + b x) = 0}."""
    values = quadratic_trace_table(ctx, k).values(_log_or_none(ctx, a))
    zeros = np.count_nonzero((values + linear_trace_values(ctx, b)) % ctx.p == 0)
    return ctx.q - int(zeros)


def weight_c2(ctx: FieldCtx, k: int, a: FieldElement, lam: int) -> int:
    """Weight of (Tr(a x^(p^k+1)) - lam) over x in F_{p^m}*."""
    lam %= ctx.p
    hist = trace_histogram(ctx, k, a)
    if lam == 0:
        return ctx.q - hist[0]
    return ctx.q - 1 - hist[lam]


def codeword_vector(
    ctx: FieldCtx, k: int, family: Any, a: FieldElement, param: Any
) -> np.ndarray:
    """
    Codeword of length p^m - 1, coordinate i at x = alpha^i.

    Args:
        ctx: Field context with tables
        k: Exponent parameter
        family: C1 (param is b in F_{p^m}) or C2 (param is lam in F_p)
        a: Coefficient of the quadratic term
        param: b or lam

    Returns:
        int64 vector over F_p
    """
    validate_exponent(ctx, k)
    ctx.require_tables()
    family = CodeFamily.parse(family)
    exponents = np.arange(ctx.order, dtype=np.int64)
    vector = np.zeros(ctx.order, dtype=np.int64)

    a_log = _log_or_none(ctx, a)
    if a_log is not None:
        power = (ctx.p ** k + 1) % ctx.order
        vector += ctx.trace_exp[(a_log + power * exponents) % ctx.order]

    if family is CodeFamily.C1:
        b_log = _log_or_none(ctx, param)
        if b_log is not None:
            vector += ctx.trace_exp[(b_log + exponents) % ctx.order]
    else:
        vector -= int(param)
    return vector % ctx.p


def shift_parameters(
    ctx: FieldCtx, k: int, family: Any, a: FieldElement, param: Any
) -> Tuple[FieldElement, Any]:
    """
    Parameters whose codeword is the cyclic left shift of the given one.

    Substituting x -> alpha x gives (a alpha^(p^k+1), b alpha) for C1 and
    (a alpha^(p^k+1), lam) for C2.
    """
    validate_exponent(ctx, k)
    family = CodeFamily.parse(family)
    shifted_a = ctx.mul(a, ctx.exp(ctx.p ** k + 1))
    if family is CodeFamily.C1:
        return shifted_a, ctx.mul(param, ctx.alpha)
    return shifted_a, param


def degenerate_kernel(ctx: FieldCtx, k: int) -> List[FieldElement]:
    """
    K = {x : x^(p^k) + x = 0}.

    Adding any element of K to a leaves every C1 and C2 codeword unchanged when m = 2k;
    |K| = p^(m/2) then, and K = {0} otherwise.
    """
    validate_exponent(ctx, k)
    kernel = []
    for index in range(ctx.q):
        x = ctx.from_int(index)
        if ctx.is_zero(ctx.add(ctx.frobenius(x, k), x)):
            kernel.append(x)
    return kernel


def distinct_codewords(ctx: FieldCtx, k: int, family: Any) -> int:
    """Number of distinct codewords, by building the whole codebook."""
    family = CodeFamily.parse(family)
    second = ctx.q if family is CodeFamily.C1 else ctx.p
    check_work(f"{family.value} codebook", ctx.q * second, None, CODEBOOK_LIMIT)
    seen = set()
    for a_index in range(ctx.q):
        a = ctx.from_int(a_index)
        for j in range(second):
            param = ctx.from_int(j) if family is CodeFamily.C1 else j
            seen.add(codeword_vector(ctx, k, family, a, param).tobytes())
    return len(seen)


def _distribution(
    ctx: FieldCtx, k: int, family: CodeFamily, hist: np.ndarray
) -> WeightDistribution:
    """Turn a raw parameter-tuple histogram into a distribution over distinct codewords."""
    spec = code_spec(ctx.p, ctx.m, k, family)
    counts = {int(w): int(c) for w, c in enumerate(hist) if c}
    if ctx.m == 2 * k:
        multiplicity = ctx.p ** (ctx.m // 2)
        counts = {
            w: exact_div(c, multiplicity, f"weight {w} multiplicity") for w, c in counts.items()
        }
    wd = WeightDistribution(spec=spec, counts=counts)
    if wd.total != ctx.p ** spec.dimension:
        raise ConsistencyError(
            f"{family.value} sweep found {wd.total} codewords, expected {ctx.p}^{spec.dimension}"
        )
    moment_checks(wd)
    return wd


@track_performance("codes", "empirical_wd_c1")
def empirical_wd_c1(
    ctx: FieldCtx,
    k: int,
    strategy: str = "transform",
    workers: Optional[int] = 1,
    work_limit: Optional[int] = None
) -> WeightDistribution:
    """
    Weight distribution of C1 by enumerating every (a, b).

    Args:
        ctx: Field context with tables
        k: Exponent parameter, 1 <= k < m
        strategy: "direct" or "transform"; both give identical results
        workers: Process count (None for available parallelism)
        work_limit: Maximum number of (a, b) pairs (default 2^32)

    Raises:
        WorkLimitExceeded: if p^(2m) exceeds the work limit
        PrecisionError: if the transform output cannot be rounded safely
        ConsistencyError: if m = 2k multiplicities are not divisible by p^(m/2)
    """
    validate_exponent(ctx, k)
    ctx.require_tables()
    if strategy not in STRATEGIES:
        raise InvalidParameterError(f"unknown strategy {strategy!r}; use one of {STRATEGIES}")
    check_work("C1 enumeration", ctx.q * ctx.q, work_limit, DEFAULT_C1_LIMIT)

    hist = sum(run_partitioned(c1_weight_counts, (ctx, k, strategy), ctx.q, workers))
    get_logger().log_metric("pairs_enumerated", ctx.q * ctx.q, labels={"family": "C1"})
    return _distribution(ctx, k, CodeFamily.C1, hist)


@track_performance("codes", "empirical_wd_c2")
def empirical_wd_c2(
    ctx: FieldCtx,
    k: int,
    workers: Optional[int] = 1,
    work_limit: Optional[int] = None
) -> WeightDistribution:
    """
    Weight distribution of C2; one trace histogram per a covers all p values of lam.

    Raises:
        WorkLimitExceeded: if p^m exceeds the work limit (default 2^20)
        ConsistencyError: if m = 2k multiplicities are not divisible by p^(m/2)
    """
    validate_exponent(ctx, k)
    ctx.require_tables()
    check_work("C2 enumeration", ctx.q, work_limit, DEFAULT_C2_LIMIT)

    hist = sum(run_partitioned(c2_weight_counts, (ctx, k), ctx.q, workers))
    get_logger().log_metric("pairs_enumerated", ctx.q * ctx.p, labels={"family": "C2"})
    return _distribution(ctx, k, CodeFamily.C2, hist)


def empirical_wd(
    ctx: FieldCtx,
    k: int,
    family: Any,
    strategy: str = "transform",
    workers: Optional[int] = 1,
    work_limit: Optional[int] = None
) -> WeightDistribution:
    if CodeFamily.parse(family) is CodeFamily.C1:
        return empirical_wd_c1(ctx, k, strategy=strategy, workers=workers, work_limit=work_limit)
    return empirical_wd_c2(ctx, k, workers=workers, work_limit=work_limit)
