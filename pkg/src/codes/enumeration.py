"""
Vectorised zero counting for the C1 and C2 weight sweeps.

For a fixed a, a C1 codeword weight is p^m - N_{a,b}(0) with
N_{a,b}(0) = #{x : Tr(a x^(p^k+1)) + Tr(b x) = 0}. Both engines return the whole
vector (N_{a,b}(0)) over b in radix order for one a:

- DirectZeroCounter compares the quadratic trace values against a precomputed
  table of -Tr(b x) for every (b, x).
- TransformZeroCounter takes an m-dimensional DFT of size p per axis of the phase
  vector zeta^(y Q_a(x)) and reads every b at once.

The chunk functions at the bottom are what the process pool runs.
"""

import logging
from functools import lru_cache

import numpy as np

from src.algebra.gf import FieldCtx
from src.algebra.quadform import quadratic_trace_table
from src.errors import InvalidParameterError, PrecisionError

logger = logging.getLogger('cyclic_weights.enumeration')

STRATEGIES = ("direct", "transform")

# Largest admissible distance from an integer before rounding transform output
ROUNDING_TOLERANCE = 1e-3

# Upper bound on int64 temporaries while building the direct table
_BLOCK_ENTRIES = 1 << 22


def trace_pairing(ctx: FieldCtx) -> np.ndarray:
    """T[u][v] = Tr(b_u b_v) for the polynomial basis b_u = x^u."""
    ctx.require_tables()
    basis_logs = np.array([ctx.log_table[ctx.p ** u] for u in range(ctx.m)], dtype=np.int64)
    return ctx.trace_exp[(basis_logs[:, None] + basis_logs[None, :]) % ctx.order]


def linear_functionals(ctx: FieldCtx) -> np.ndarray:
    """Row b holds the coefficients of x -> Tr(b x) in coordinates of x."""
    return (ctx.coords @ trace_pairing(ctx)) % ctx.p


class DirectZeroCounter:
    """Exact counts from a (p^m x p^m) table of -Tr(b x) mod p."""

    def __init__(self, ctx: FieldCtx):
        ctx.require_tables()
        self.ctx = ctx
        self.dtype = np.min_scalar_type(ctx.p)
        functionals = linear_functionals(ctx)
        coords_t = ctx.coords.T
        table = np.empty((ctx.q, ctx.q), dtype=self.dtype)
        block = max(1, _BLOCK_ENTRIES // ctx.q)
        for start in range(0, ctx.q, block):
            stop = min(ctx.q, start + block)
            table[start:stop] = (-(functionals[start:stop] @ coords_t)) % ctx.p
        table.setflags(write=False)
        self.neg_linear = table
        logger.debug(f"Direct table for F_{ctx.p}^{ctx.m}: {table.nbytes} bytes")

    def zero_counts(self, values: np.ndarray) -> np.ndarray:
        """N_{a,b}(0) for every b, given the quadratic trace values of a."""
        return np.count_nonzero(self.neg_linear == values.astype(self.dtype)[None, :], axis=1)


class TransformZeroCounter:
    """
    Counts via the additive characters of (F_p)^m.

    N_{a,b}(0) = p^(m-1) + (1/p) sum_{y != 0} V_y[-y c(b)], where V_y is the DFT of
    zeta^(y Q_a(x)) and c(b) is the coefficient vector of x -> Tr(b x).
    """

    def __init__(self, ctx: FieldCtx):
        ctx.require_tables()
        self.ctx = ctx
        self.shape = (ctx.p,) * ctx.m
        self.roots = np.exp(2j * np.pi * np.arange(ctx.p) / ctx.p)
        functionals = linear_functionals(ctx)
        # Values are stored in radix order (least significant coordinate first) while
        # numpy reshapes C-order, so flat DFT index i is the frequency with radix value i.
        self.dual_index = [
            ((-y * functionals) % ctx.p) @ ctx.weights for y in range(1, ctx.p)
        ]

    def zero_counts(self, values: np.ndarray) -> np.ndarray:
        """
        N_{a,b}(0) for every b.

        Raises:
            PrecisionError: if any total is not within ROUNDING_TOLERANCE of an integer
        """
        p, m = self.ctx.p, self.ctx.m
        acc = np.zeros(self.ctx.q, dtype=np.complex128)
        for y in range(1, p):
            phases = self.roots[(y * values) % p].reshape(self.shape)
            spectrum = np.fft.fftn(phases).ravel()
            acc += spectrum[self.dual_index[y - 1]]
        totals = p ** (m - 1) + acc / p
        counts = np.rint(totals.real)
        residual = max(
            float(np.max(np.abs(totals.real - counts))), float(np.max(np.abs(totals.imag)))
        )
        if residual >= ROUNDING_TOLERANCE:
            raise PrecisionError(
                f"transform residual {residual:.2e} on F_{p}^{m}; use the direct strategy"
            )
        return counts.astype(np.int64)


@lru_cache(maxsize=4)
def zero_counter(ctx: FieldCtx, strategy: str):
    """Shared counter for (ctx, strategy)."""
    if strategy == "direct":
        return DirectZeroCounter(ctx)
    if strategy == "transform":
        return TransformZeroCounter(ctx)
    raise InvalidParameterError(f"unknown strategy {strategy!r}; use one of {STRATEGIES}")


def c1_weight_counts(ctx: FieldCtx, k: int, strategy: str, start: int, stop: int) -> np.ndarray:
    """
    Weight histogram (index = weight) of c1(a, b) over a with radix index in [start, stop)
    and all b.
    """
    table = quadratic_trace_table(ctx, k)
    counter = zero_counter(ctx, strategy)
    hist = np.zeros(ctx.q + 1, dtype=np.int64)
    for a_index in range(start, stop):
        zeros = counter.zero_counts(table.values_at(a_index))
        hist += np.bincount(ctx.q - zeros, minlength=ctx.q + 1)
    return hist


def c2_weight_counts(ctx: FieldCtx, k: int, start: int, stop: int) -> np.ndarray:
    """
    Weight histogram of c2(a, lam) over a with radix index in [start, stop) and all lam.

    lam = 0 gives weight p^m - N_a(0); lam != 0 gives p^m - 1 - N_a(lam).
    """
    table = quadratic_trace_table(ctx, k)
    hist = np.zeros(ctx.q + 1, dtype=np.int64)
    for a_index in range(start, stop):
        counts = np.bincount(table.values_at(a_index), minlength=ctx.p)
        weights = ctx.q - 1 - counts
        weights[0] += 1
        np.add.at(hist, weights, 1)
    return hist
