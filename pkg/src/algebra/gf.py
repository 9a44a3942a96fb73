"""
Finite field arithmetic for F_p and F_{p^m}, p odd.

This module provides:
- Irreducible modulus search in radix order (deterministic)
- FieldCtx: a constructed extension field with primitive element and exp/log tables
- The absolute trace Tr: F_{p^m} -> F_p and the quadratic character of F_p

Elements are coefficient vectors over the polynomial basis {1, x, ..., x^(m-1)},
constant term first. Every lookup table is indexed by the radix integer
sum(c_i * p^i) of an element's coefficient vector.
"""

import json
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, factorint, isprime
from sympy.abc import x as _poly_var

from src.errors import ConsistencyError, InvalidParameterError

logger = logging.getLogger('cyclic_weights.gf')

# Tables are built when p^m is at most this many entries
DEFAULT_TABLE_CAP = 1 << 24

# Largest multiplicative group order that still fits the int64 index type
INDEX_LIMIT = (1 << 63) - 1

Polynomial = Tuple[int, ...]


@dataclass(frozen=True)
class FieldElement:
    """An element of F_{p^m} as a length-m coefficient vector, constant term first."""
    coeffs: Tuple[int, ...]

    def __str__(self) -> str:
        return format_polynomial(self.coeffs)


def format_polynomial(coeffs: Sequence[int]) -> str:
    """Render a constant-term-first coefficient vector as e.g. 'x^2+2x+1'."""
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        if power == 0:
            terms.append(str(c))
        elif power == 1:
            terms.append("x" if c == 1 else f"{c}x")
        else:
            terms.append(f"x^{power}" if c == 1 else f"{c}x^{power}")
    return "+".join(terms) if terms else "0"


def validate_prime(p: int) -> None:
    """Reject anything that is not an odd prime."""
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise InvalidParameterError(f"p must be an integer, got {p!r}")
    if not isprime(int(p)):
        raise InvalidParameterError(f"p must be prime, got {p}")
    if p == 2:
        raise InvalidParameterError("characteristic 2 is not supported; p must be odd")


def quad_char(p: int, c: int) -> int:
    """
    Quadratic character of F_p.

    Returns 0 for c = 0, otherwise +1 if c is a nonzero square mod p and -1 if not.
    """
    c %= p
    if c == 0:
        return 0
    return 1 if pow(c, (p - 1) // 2, p) == 1 else -1


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility of a constant-term-first polynomial over F_p."""
    if len(poly) < 2:
        return False
    return bool(Poly(list(reversed(poly)), _poly_var, modulus=p).is_irreducible)


def irreducible_polynomials(p: int, m: int) -> Iterator[Polynomial]:
    """
    Yield every monic irreducible degree-m polynomial over F_p in radix order.

    The order is by the integer sum(c_i * p^i) over the non-leading coefficients.
    """
    validate_prime(p)
    if m < 1:
        raise InvalidParameterError(f"degree must be at least 1, got {m}")
    for radix in range(p ** m):
        coeffs = []
        rest = radix
        for _ in range(m):
            coeffs.append(rest % p)
            rest //= p
        # Divisible by x
        if m >= 2 and coeffs[0] == 0:
            continue
        poly = tuple(coeffs) + (1,)
        if is_irreducible(poly, p):
            yield poly


def find_irreducible(p: int, m: int) -> Polynomial:
    """
    Least monic irreducible polynomial of degree m over F_p in radix order.

    Raises:
        InvalidParameterError: if p is not an odd prime or m < 2
    """
    validate_prime(p)
    if m < 2:
        raise InvalidParameterError(
            f"find_irreducible needs m >= 2 (got {m}); m = 1 uses the prime field directly"
        )
    return next(irreducible_polynomials(p, m))


def _mulmod(a: Sequence[int], b: Sequence[int], modulus: Polynomial, p: int) -> Tuple[int, ...]:
    """Schoolbook product of two residues, reduced by a monic modulus."""
    m = len(modulus) - 1
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for i in range(2 * m - 2, m - 1, -1):
        c = prod[i] % p
        if c:
            for j in range(m):
                prod[i - m + j] -= c * modulus[j]
        prod[i] = 0
    return tuple(v % p for v in prod[:m])


class FieldCtx:
    """
    A constructed finite field F_{p^m}.

    Immutable after construction; the numpy tables are flagged read-only so a context
    can be shared between threads or pickled to worker processes.
    """

    def __init__(
        self,
        p: int,
        m: int,
        modulus: Polynomial,
        alpha: Optional[FieldElement] = None,
        table_cap: int = DEFAULT_TABLE_CAP
    ):
        """
        Initialize the field.

        Args:
            p: Odd prime characteristic
            m: Extension degree (>= 1)
            modulus: Monic irreducible degree-m polynomial, constant term first
            alpha: Primitive element to use (located by find_primitive if omitted)
            table_cap: Build exp/log tables only when p^m is at most this size
        """
        self.p = int(p)
        self.m = int(m)
        self.q = self.p ** self.m
        self.order = self.q - 1
        self.modulus: Polynomial = tuple(int(c) for c in modulus)
        self.weights = np.array([self.p ** i for i in range(self.m)], dtype=np.int64)
        self.exp_table: Optional[np.ndarray] = None
        self.log_table: Optional[np.ndarray] = None
        self.coords: Optional[np.ndarray] = None
        self.trace_table: Optional[np.ndarray] = None
        self.trace_exp: Optional[np.ndarray] = None

        if alpha is None:
            alpha = find_primitive(self)
        elif not self.is_primitive(alpha):
            raise InvalidParameterError(f"alpha = {alpha} is not a primitive element")
        self.alpha = alpha

        self.basis_traces = np.array(
            [trace(self, self.from_int(self.p ** u)) for u in range(self.m)],
            dtype=np.int64
        )

        if self.q <= table_cap:
            self._build_tables()

    # ------------------------------------------------------------------ tables

    def _mul_matrix(self, y: FieldElement) -> np.ndarray:
        """Matrix of z -> z*y acting on row coordinate vectors."""
        rows = []
        for u in range(self.m):
            basis = [0] * self.m
            basis[u] = 1
            rows.append(_mulmod(basis, y.coeffs, self.modulus, self.p))
        return np.array(rows, dtype=np.int64)

    def _build_tables(self) -> None:
        p, m, order = self.p, self.m, self.order

        powers = np.zeros((order, m), dtype=np.int64)
        powers[0, 0] = 1
        step = self._mul_matrix(self.alpha)
        filled = 1
        # Doubling: rows [filled, filled + take) are rows [0, take) times alpha^filled
        while filled < order:
            take = min(filled, order - filled)
            powers[filled:filled + take] = (powers[:take] @ step) % p
            filled += take
            step = (step @ step) % p

        exp_table = powers @ self.weights
        log_table = np.full(self.q, -1, dtype=np.int64)
        log_table[exp_table] = np.arange(order, dtype=np.int64)
        if log_table[0] != -1 or np.any(log_table[1:] < 0):
            raise InvalidParameterError(
                "exp/log tables are not a bijection on the nonzero elements"
            )

        coords = (np.arange(self.q, dtype=np.int64)[:, None] // self.weights) % p
        trace_table = (coords @ self.basis_traces) % p
        trace_exp = trace_table[exp_table]

        for table in (exp_table, log_table, coords, trace_table, trace_exp):
            table.setflags(write=False)
        self.exp_table = exp_table
        self.log_table = log_table
        self.coords = coords
        self.trace_table = trace_table
        self.trace_exp = trace_exp
        logger.debug(f"Built exp/log tables for F_{p}^{m} ({self.q} elements)")

    @property
    def has_tables(self) -> bool:
        return self.exp_table is not None

    def require_tables(self) -> None:
        """Enumeration code needs the lookup tables."""
        if not self.has_tables:
            raise InvalidParameterError(
                f"F_{self.p}^{self.m} has {self.q} elements, above the table cap; "
                f"enumeration needs exp/log tables"
            )

    # ---------------------------------------------------------------- elements

    def from_int(self, value: int) -> FieldElement:
        """Element whose coefficient vector has radix integer value."""
        if not 0 <= value < self.q:
            raise InvalidParameterError(f"radix index {value} outside [0, {self.q})")
        coeffs = []
        for _ in range(self.m):
            coeffs.append(value % self.p)
            value //= self.p
        return FieldElement(tuple(coeffs))

    def to_int(self, x: FieldElement) -> int:
        return sum(c * self.p ** i for i, c in enumerate(x.coeffs))

    def element(self, value: Union[int, Sequence[int], FieldElement]) -> FieldElement:
        """Coerce a radix integer, coefficient list or element into this field."""
        if isinstance(value, FieldElement):
            coeffs = value.coeffs
        elif isinstance(value, (int, np.integer)):
            return self.from_int(int(value))
        else:
            coeffs = tuple(int(c) for c in value)
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise InvalidParameterError(
                f"{list(coeffs)} is not a length-{self.m} vector over F_{self.p}"
            )
        return FieldElement(tuple(coeffs))

    def embed(self, c: int) -> FieldElement:
        """The prime-field constant c as an element of F_{p^m}."""
        return FieldElement((c % self.p,) + (0,) * (self.m - 1))

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.m)

    @property
    def one(self) -> FieldElement:
        return self.embed(1)

    def exp(self, i: int) -> FieldElement:
        """alpha^i."""
        if self.has_tables:
            return self.from_int(int(self.exp_table[i % self.order]))
        return self.pow(self.alpha, i)

    def log(self, x: FieldElement) -> int:
        """Discrete logarithm to base alpha."""
        if self.is_zero(x):
            raise InvalidParameterError("log(0) is undefined")
        if self.has_tables:
            return int(self.log_table[self.to_int(x)])
        acc = self.one
        for i in range(self.order):
            if acc == x:
                return i
            acc = self.mul(acc, self.alpha)
        raise InvalidParameterError(f"{x} is not a power of alpha")

    # -------------------------------------------------------------- arithmetic

    def is_zero(self, x: FieldElement) -> bool:
        return not any(x.coeffs)

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(tuple((a + b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(tuple((a - b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def neg(self, x: FieldElement) -> FieldElement:
        return FieldElement(tuple(-a % self.p for a in x.coeffs))

    def scale(self, c: int, x: FieldElement) -> FieldElement:
        return FieldElement(tuple(c * a % self.p for a in x.coeffs))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if self.has_tables:
            if self.is_zero(x) or self.is_zero(y):
                return self.zero
            i = self.log_table[self.to_int(x)] + self.log_table[self.to_int(y)]
            return self.from_int(int(self.exp_table[i % self.order]))
        return FieldElement(_mulmod(x.coeffs, y.coeffs, self.modulus, self.p))

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        """x^e by square-and-multiply; the exponent is reduced mod p^m - 1 for x != 0."""
        if self.is_zero(x):
            if e < 0:
                raise ZeroDivisionError("0 has no inverse in F_{p^m}")
            return self.one if e == 0 else self.zero
        e %= self.order
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x: FieldElement) -> FieldElement:
        if self.is_zero(x):
            raise ZeroDivisionError("0 has no inverse in F_{p^m}")
        return self.pow(x, self.order - 1)

    def frobenius(self, x: FieldElement, j: int = 1) -> FieldElement:
        """x^(p^j)."""
        return self.pow(x, self.p ** (j % self.m))

    def is_primitive(self, x: FieldElement) -> bool:
        """True when x has multiplicative order exactly p^m - 1."""
        if self.is_zero(x):
            return False
        one = self.one
        if self.order == 1:
            return x == one
        return all(self.pow(x, self.order // r) != one for r in factorint(self.order))

    def trace_vector(self) -> np.ndarray:
        """Tr(x) for every element x in radix order."""
        self.require_tables()
        return self.trace_table

    # ------------------------------------------------------------ persistence

    def to_dict(self) -> Dict[str, Any]:
        """Field description: modulus and alpha constant-term first."""
        return {
            "p": self.p,
            "m": self.m,
            "modulus": list(self.modulus),
            "alpha": list(self.alpha.coeffs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self) -> str:
        return (
            f"FieldCtx(p={self.p}, m={self.m}, modulus={format_polynomial(self.modulus)}, "
            f"alpha={self.alpha})"
        )


def make_field(
    p: int,
    m: int,
    modulus: Optional[Sequence[int]] = None,
    table_cap: int = DEFAULT_TABLE_CAP
) -> FieldCtx:
    """
    Construct F_{p^m}.

    Args:
        p: Odd prime
        m: Extension degree (m = 1 gives the prime field, modulus x)
        modulus: Optional monic degree-m modulus, constant term first
        table_cap: Largest field size for which exp/log tables are built

    Returns:
        FieldCtx with verified modulus and located primitive element

    Raises:
        InvalidParameterError: bad p or m, reducible or malformed modulus,
            or p^m - 1 overflowing the index type
    """
    validate_prime(p)
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InvalidParameterError(f"m must be a positive integer, got {m!r}")
    p, m = int(p), int(m)
    if p ** m - 1 > INDEX_LIMIT:
        raise InvalidParameterError(f"p^m - 1 = {p}^{m} - 1 overflows the 64-bit index type")

    if modulus is None:
        modulus = (0, 1) if m == 1 else find_irreducible(p, m)
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise InvalidParameterError(
                f"modulus {list(modulus)} must be monic of degree {m} (constant term first)"
            )
        if any(not 0 <= c < p for c in modulus):
            raise InvalidParameterError(f"modulus coefficients must lie in [0, {p})")
        if not is_irreducible(modulus, p):
            raise InvalidParameterError(
                f"modulus {format_polynomial(modulus)} is reducible over F_{p}"
            )

    ctx = FieldCtx(p, m, modulus, table_cap=table_cap)
    logger.info(f"Constructed {ctx!r}")
    return ctx


def field_from_dict(data: Dict[str, Any], table_cap: int = DEFAULT_TABLE_CAP) -> FieldCtx:
    """Rebuild a field from its JSON description, checking alpha is primitive."""
    p, m = int(data["p"]), int(data["m"])
    base = make_field(p, m, data["modulus"], table_cap=0)
    alpha = base.element(data["alpha"])
    return FieldCtx(p, m, base.modulus, alpha=alpha, table_cap=table_cap)


def find_primitive(ctx: FieldCtx) -> FieldElement:
    """Primitive element of least radix value."""
    for value in range(1, ctx.q):
        candidate = ctx.from_int(value)
        if ctx.is_primitive(candidate):
            return candidate
    raise InvalidParameterError(f"no primitive element found in F_{ctx.p}^{ctx.m}")


def trace(ctx: FieldCtx, x: FieldElement) -> int:
    """
    Absolute trace Tr(x) = x + x^p + ... + x^(p^(m-1)), returned as an integer in [0, p).
    """
    total = x
    conj = x
    for _ in range(ctx.m - 1):
        conj = ctx.pow(conj, ctx.p)
        total = ctx.add(total, conj)
    if any(total.coeffs[1:]):
        raise ConsistencyError(f"trace of {x} left the prime field: {total}")
    return total.coeffs[0]
