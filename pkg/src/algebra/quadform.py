"""
Quadratic forms Q_a(x) = Tr(a * x^(p^k + 1)) over F_p.

This module provides:
- Gram matrices of Q_a with respect to the polynomial basis of a field context
- Rank and congruence diagonalization of symmetric matrices mod p
- Classification of Q_a into (rank, sign class) with a point-count cross-check
- Predicted quadric point counts for a form of given rank and sign class

Every classification derives the sign class twice: once from the diagonal of the
congruent form and once from brute-force point counts. The two must agree.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint

from src.algebra.gf import FieldCtx, FieldElement, quad_char, trace
from src.errors import ConsistencyError, InvalidParameterError

logger = logging.getLogger('cyclic_weights.quadform')


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """A symmetric matrix over F_p, entries reduced to [0, p)."""
    p: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64) % self.p
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidParameterError(f"expected a square matrix, got shape {entries.shape}")
        if not np.array_equal(entries, entries.T):
            raise InvalidParameterError("matrix is not symmetric")
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    @property
    def order(self) -> int:
        return int(self.entries.shape[0])

    @property
    def is_zero(self) -> bool:
        return not self.entries.any()

    def evaluate(self, vector: Sequence[int]) -> int:
        """2^(-1) * X B X^T mod p: the quadratic form whose polar form is this matrix."""
        v = np.asarray(vector, dtype=np.int64) % self.p
        inv2 = (self.p + 1) // 2
        return int((v @ self.entries @ v) % self.p * inv2 % self.p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetricMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"SymmetricMatrix(p={self.p}, entries={self.entries.tolist()})"


@dataclass(frozen=True)
class QuadFormProfile:
    """
    Classification of Q_a.

    Attributes:
        a: The nonzero coefficient
        k: Exponent parameter
        rank: Rank r of Q_a, always m or m - 2d with d = gcd(k, m)
        eps: eta((-1)^(r // 2) * Delta), Delta the discriminant of the nondegenerate part
        i: 0 or 1 with r = m - 2*d*i
    """
    a: FieldElement
    k: int
    rank: int
    eps: int
    i: int

    def to_dict(self, ctx: FieldCtx) -> Dict[str, Any]:
        return {"a_log": ctx.log(self.a), "rank": self.rank, "eps": self.eps, "i": self.i}


class QuadraticTraceTable:
    """
    Vectorised evaluation of x -> Tr(a * x^(p^k + 1)) over the whole field.

    Values come back in radix order of x. Built once per (field, k) and reused for
    every a of a sweep.
    """

    def __init__(self, ctx: FieldCtx, k: int):
        validate_exponent(ctx, k)
        ctx.require_tables()
        self.ctx = ctx
        self.k = k
        self.exponent = ctx.p ** k + 1
        # log(x^(p^k+1)) for every nonzero x in radix order
        self.power_logs = (self.exponent * ctx.log_table[1:]) % ctx.order
        self.power_logs.setflags(write=False)

    def values(self, a_log: Optional[int]) -> np.ndarray:
        """Trace values for a = alpha^a_log; None stands for a = 0."""
        out = np.zeros(self.ctx.q, dtype=np.int64)
        if a_log is not None:
            out[1:] = self.ctx.trace_exp[(a_log + self.power_logs) % self.ctx.order]
        return out

    def values_at(self, a_index: int) -> np.ndarray:
        """Trace values for the element with radix index a_index."""
        if a_index == 0:
            return self.values(None)
        return self.values(int(self.ctx.log_table[a_index]))

    def histogram(self, a_log: Optional[int]) -> np.ndarray:
        """(N_a(beta)) for beta in F_p."""
        return np.bincount(self.values(a_log), minlength=self.ctx.p)


@lru_cache(maxsize=16)
def quadratic_trace_table(ctx: FieldCtx, k: int) -> QuadraticTraceTable:
    """Shared QuadraticTraceTable for (ctx, k)."""
    return QuadraticTraceTable(ctx, k)


def validate_exponent(ctx: FieldCtx, k: int) -> None:
    """Require 1 <= k < m."""
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or not 1 <= k < ctx.m:
        raise InvalidParameterError(f"k must satisfy 1 <= k < m = {ctx.m}, got {k!r}")


def _require_nonzero(ctx: FieldCtx, a: FieldElement) -> None:
    if ctx.is_zero(a):
        raise InvalidParameterError("a = 0 gives the zero form; handle it as a separate case")


# --------------------------------------------------------------------------- gram


def _gram_from_log(ctx: FieldCtx, k: int, a_log: int) -> np.ndarray:
    basis_logs = np.array(
        [ctx.log_table[ctx.p ** u] for u in range(ctx.m)], dtype=np.int64
    )
    pair_logs = (basis_logs[:, None] + basis_logs[None, :] * ctx.p ** k) % ctx.order
    half = ctx.trace_exp[(a_log + pair_logs) % ctx.order]
    return (half + half.T) % ctx.p


def gram_matrix(ctx: FieldCtx, k: int, a: FieldElement) -> SymmetricMatrix:
    """
    Polar matrix B[u][v] = Tr(a(b_u b_v^(p^k) + b_u^(p^k) b_v)) of Q_a.

    The basis b_u = x^u is the polynomial basis of ctx, so Q_a(x) = 2^(-1) X B X^T
    for the coordinate vector X of x.

    Raises:
        InvalidParameterError: if a = 0 or k is out of range
    """
    validate_exponent(ctx, k)
    _require_nonzero(ctx, a)
    if ctx.has_tables:
        return SymmetricMatrix(ctx.p, _gram_from_log(ctx, k, ctx.log(a)))

    basis = [ctx.from_int(ctx.p ** u) for u in range(ctx.m)]
    lifted = [ctx.frobenius(b, k) for b in basis]
    entries = np.zeros((ctx.m, ctx.m), dtype=np.int64)
    for u in range(ctx.m):
        for v in range(u, ctx.m):
            mixed = ctx.add(ctx.mul(basis[u], lifted[v]), ctx.mul(lifted[u], basis[v]))
            entries[u, v] = entries[v, u] = trace(ctx, ctx.mul(a, mixed))
    return SymmetricMatrix(ctx.p, entries)


# --------------------------------------------------------------------- reduction


def form_rank(matrix: SymmetricMatrix) -> int:
    """Rank of a matrix over F_p by Gaussian elimination."""
    p = matrix.p
    work = matrix.entries.copy()
    rows, cols = work.shape
    rank = 0
    for col in range(cols):
        pivots = np.nonzero(work[rank:, col])[0]
        if pivots.size == 0:
            continue
        pivot = rank + int(pivots[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        work[rank] = (work[rank] * pow(int(work[rank, col]), -1, p)) % p
        for r in range(rows):
            if r != rank and work[r, col]:
                work[r] = (work[r] - work[r, col] * work[rank]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def kernel_size(matrix: SymmetricMatrix) -> int:
    """#{X in F_p^m : B X = 0} by enumeration; small orders only."""
    p, t = matrix.p, matrix.order
    grid = (np.arange(p ** t, dtype=np.int64)[:, None] // (p ** np.arange(t))) % p
    images = (grid @ matrix.entries) % p
    return int(np.count_nonzero(~images.any(axis=1)))


def diagonalize(matrix: SymmetricMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """
    Congruence diagonalization M B M^T = diag(d) over F_p, p odd.

    Nonzero diagonal entries come first; there are exactly rank(B) of them.
    When the active block has a zero diagonal but a nonzero entry b_uv, row and
    column v are added to u, which leaves 2*b_uv on the diagonal.

    Returns:
        Tuple (M, d): nonsingular transform and diagonal vector

    Raises:
        ConsistencyError: if the reconstructed product is not diagonal
    """
    p, t = matrix.p, matrix.order
    work = matrix.entries.copy()
    transform = np.eye(t, dtype=np.int64)

    for s in range(t):
        active = work[s:, s:]
        on_diagonal = np.nonzero(active.diagonal())[0]
        if on_diagonal.size:
            pivot = s + int(on_diagonal[0])
        else:
            off_diagonal = np.argwhere(active != 0)
            if off_diagonal.size == 0:
                break
            u, v = (int(i) + s for i in off_diagonal[0])
            work[u] = (work[u] + work[v]) % p
            work[:, u] = (work[:, u] + work[:, v]) % p
            transform[u] = (transform[u] + transform[v]) % p
            pivot = u

        if pivot != s:
            work[[s, pivot]] = work[[pivot, s]]
            work[:, [s, pivot]] = work[:, [pivot, s]]
            transform[[s, pivot]] = transform[[pivot, s]]

        inv = pow(int(work[s, s]), -1, p)
        for r in range(s + 1, t):
            if work[r, s]:
                c = int(work[r, s]) * inv % p
                work[r] = (work[r] - c * work[s]) % p
                work[:, r] = (work[:, r] - c * work[:, s]) % p
                transform[r] = (transform[r] - c * transform[s]) % p

    diag = work.diagonal().copy()
    if not np.array_equal((transform @ matrix.entries @ transform.T) % p, np.diag(diag)):
        raise ConsistencyError("congruence transform did not diagonalize the matrix")
    return transform, diag


# ------------------------------------------------------------------ point counts


def nondegenerate_quadric_count(q: int, rank: int, eps: int, beta_char: int) -> Fraction:
    """
    Number of solutions of f(X) = beta for a nondegenerate form f in `rank` variables over F_q.

    Args:
        q: Odd prime power
        rank: Number of variables l
        eps: eta((-1)^(l // 2) * det f)
        beta_char: eta(beta), zero exactly when beta = 0

    Returns:
        The count as a Fraction (integral for every l >= 1)
    """
    factors = factorint(q)
    if len(factors) != 1 or 2 in factors:
        raise InvalidParameterError(f"q must be an odd prime power, got {q}")
    if eps not in (-1, 1):
        raise InvalidParameterError(f"eps must be +1 or -1, got {eps}")
    q_frac = Fraction(q)
    if rank % 2 == 0:
        upsilon = q - 1 if beta_char == 0 else -1
        return q_frac ** (rank - 1) + upsilon * q_frac ** ((rank - 2) // 2) * eps
    return q_frac ** (rank - 1) + q_frac ** ((rank - 1) // 2) * eps * beta_char


def quadric_count_prediction(p: int, m: int, rank: int, eps: int) -> Tuple[int, ...]:
    """
    Predicted (N(beta)) for a rank-r form on F_p^m with sign class eps.

    The nondegenerate count on the rank-r part is scaled by p^(m - r) for the radical.
    """
    if not 0 <= rank <= m:
        raise InvalidParameterError(f"rank {rank} outside [0, {m}]")
    scale = p ** (m - rank)
    counts = []
    for beta in range(p):
        count = nondegenerate_quadric_count(p, rank, eps, quad_char(p, beta)) * scale
        if count.denominator != 1:
            raise ConsistencyError(f"non-integral quadric count {count} for rank {rank}")
        counts.append(int(count))
    return tuple(counts)


def eps_from_counts(p: int, m: int, rank: int, histogram: Sequence[int]) -> int:
    """Sign class read off the deviation of one point count from p^(m-1)."""
    base = p ** (m - 1)
    deviation = histogram[0] - base if rank % 2 == 0 else histogram[1] - base
    if deviation == 0:
        raise ConsistencyError(f"point counts {list(histogram)} carry no sign for rank {rank}")
    return 1 if deviation > 0 else -1


def count_quadric_points(ctx: FieldCtx, k: int, a: FieldElement, beta: int) -> int:
    """Brute-force N_a(beta) = #{x : Tr(a x^(p^k+1)) = beta}."""
    table = quadratic_trace_table(ctx, k)
    a_log = None if ctx.is_zero(a) else ctx.log(a)
    return int(np.count_nonzero(table.values(a_log) == beta % ctx.p))


# ---------------------------------------------------------------- classification


def classify_by_log(
    ctx: FieldCtx, k: int, a_log: int, table: QuadraticTraceTable
) -> Tuple[int, int, int]:
    """(rank, eps, i) for a = alpha^a_log, with both sign derivations checked."""
    p, m = ctx.p, ctx.m
    matrix = SymmetricMatrix(p, _gram_from_log(ctx, k, a_log))
    rank = form_rank(matrix)
    _, diag = diagonalize(matrix)
    if np.count_nonzero(diag) != rank or diag[rank:].any():
        raise ConsistencyError(f"diagonal {diag.tolist()} disagrees with rank {rank}")

    discriminant = 1
    for entry in diag[:rank]:
        discriminant = discriminant * int(entry) % p
    # Q has matrix B / 2
    discriminant = discriminant * pow((p + 1) // 2, rank, p) % p
    eps = quad_char(p, (-1) ** (rank // 2) * discriminant)

    histogram = tuple(int(c) for c in table.histogram(a_log))
    counted = eps_from_counts(p, m, rank, histogram)
    if counted != eps:
        raise ConsistencyError(
            f"sign class mismatch for a = alpha^{a_log}: "
            f"diagonal gives {eps}, counts give {counted}"
        )
    predicted = quadric_count_prediction(p, m, rank, eps)
    if histogram != predicted:
        raise ConsistencyError(
            f"point counts {histogram} for a = alpha^{a_log} differ from prediction {predicted}"
        )

    d = gcd(k, m)
    i, rest = divmod(m - rank, 2 * d)
    if rest or i not in (0, 1):
        raise ConsistencyError(f"rank {rank} is neither m = {m} nor m - 2d = {m - 2 * d}")
    return rank, eps, i


def classify(ctx: FieldCtx, k: int, a: FieldElement) -> QuadFormProfile:
    """
    Classify Q_a by rank and sign class.

    Args:
        ctx: Field context (with tables)
        k: Exponent parameter, 1 <= k < m
        a: Nonzero coefficient

    Returns:
        QuadFormProfile

    Raises:
        InvalidParameterError: for a = 0 or k out of range
        ConsistencyError: if the diagonal and point-count derivations disagree
    """
    validate_exponent(ctx, k)
    _require_nonzero(ctx, a)
    rank, eps, i = classify_by_log(ctx, k, ctx.log(a), quadratic_trace_table(ctx, k))
    return QuadFormProfile(a=a, k=k, rank=rank, eps=eps, i=i)


def classify_all(ctx: FieldCtx, k: int) -> Tuple[QuadFormProfile, ...]:
    """Profiles for every nonzero a in alpha-power order."""
    validate_exponent(ctx, k)
    table = quadratic_trace_table(ctx, k)
    profiles = []
    for a_log in range(ctx.order):
        rank, eps, i = classify_by_log(ctx, k, a_log, table)
        profiles.append(QuadFormProfile(a=ctx.exp(a_log), k=k, rank=rank, eps=eps, i=i))
    return tuple(profiles)
