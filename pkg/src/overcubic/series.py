"""Truncated Laurent series with exact integer coefficients.

A series stores coefficients for the exponent window [valuation, order).
Exponents below the valuation are known to be zero, exponents at or above
the order are unknown.  Every operation propagates truncation
pessimistically (min rule), so results never claim more precision than
their inputs support.  Coefficients are Python integers throughout; there
is no floating point in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    InsufficientPrecision,
    NonUnitLeadingCoefficient,
    UnsupportedModulus,
)

_WORD_MASK = (1 << 64) - 1
# np.convolve accumulates in uint64; for a non-power-of-two modulus m the
# partial sums are < len * m**2, so m below this limit never overflows.
_SMALL_MODULUS_LIMIT = 1 << 15


def _is_pow2(m: int) -> bool:
    return m >= 1 and (m & (m - 1)) == 0


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer Laurent series trusted on the exponent window [valuation, order)."""

    valuation: int
    coeffs: tuple[int, ...]
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order - self.valuation:
            raise ValueError("coefficient window must match [valuation, order)")
        if self.coeffs and self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero; use make()")

    @classmethod
    def make(cls, valuation: int, coeffs: Iterable[int], order: int) -> "TruncatedSeries":
        """Build a series, trimming leading zeros so the valuation points at the
        first nonzero coefficient.  An all-zero window becomes the canonical
        zero series (empty coefficients, valuation == order)."""
        cs = list(coeffs)
        if len(cs) != order - valuation:
            raise ValueError("coefficient window must match [valuation, order)")
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        if lead == len(cs):
            return cls(order, (), order)
        return cls(valuation + lead, tuple(cs[lead:]), order)

    def coefficient(self, exponent: int) -> int:
        """Coefficient of q^exponent; zero below the valuation, error at or
        above the truncation order."""
        if exponent >= self.order:
            raise InsufficientPrecision(
                f"coefficient of q^{exponent} requested, trusted only below {self.order}"
            )
        if exponent < self.valuation:
            return 0
        return self.coeffs[exponent - self.valuation]

    def __getitem__(self, exponent: int) -> int:
        return self.coefficient(exponent)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def window(self, lo: int, hi: int) -> list[int]:
        """Coefficients for exponents [lo, hi) as a dense list."""
        if hi > self.order:
            raise InsufficientPrecision(
                f"window up to {hi} requested, trusted only below {self.order}"
            )
        out = [0] * max(0, hi - lo)
        a = max(lo, self.valuation)
        b = min(hi, self.order)
        if a < b:
            out[a - lo : b - lo] = self.coeffs[a - self.valuation : b - self.valuation]
        return out

    def __repr__(self):  # keep pytest output readable for long series
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return (
            f"TruncatedSeries(valuation={self.valuation}, order={self.order},"
            f" coeffs=[{shown}{more}])"
        )

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __pow__(self, e: int):
        return power(self, e)


def zero(order: int) -> TruncatedSeries:
    return TruncatedSeries(order, (), order)


def one(order: int) -> TruncatedSeries:
    return constant(1, order)


def constant(c: int, order: int) -> TruncatedSeries:
    if order <= 0 or c == 0:
        return zero(order)
    return TruncatedSeries(0, (c,) + (0,) * (order - 1), order)


def q_power(e: int, order: int) -> TruncatedSeries:
    """The monomial q^e trusted below `order` (exponents, not length)."""
    if order <= e:
        return zero(order)
    return TruncatedSeries(e, (1,) + (0,) * (order - e - 1), order)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    order = min(a.order, b.order)
    lo = min(a.valuation, b.valuation, order)
    wa = a.window(lo, order)
    wb = b.window(lo, order)
    return TruncatedSeries.make(lo, [x + y for x, y in zip(wa, wb)], order)


def scale(a: TruncatedSeries, c: int) -> TruncatedSeries:
    if c == 0 or not a.coeffs:
        return zero(a.order)
    return TruncatedSeries(a.valuation, tuple(c * x for x in a.coeffs), a.order)


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return add(a, scale(b, -1))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, schoolbook.  The sparser operand drives the outer loop
    so products against pentagonal-type series cost O(N * #nonzero)."""
    val = a.valuation + b.valuation
    order = min(a.order + b.valuation, b.order + a.valuation)
    if order <= val or not a.coeffs or not b.coeffs:
        return zero(order)
    if sum(1 for c in b.coeffs if c) < sum(1 for c in a.coeffs if c):
        a, b = b, a
    n = order - val
    out = [0] * n
    bc = b.coeffs
    for i, ca in enumerate(a.coeffs):
        if not ca or i >= n:
            continue
        hi = min(len(bc), n - i)
        if ca == 1:
            out[i : i + hi] = [x + y for x, y in zip(out[i : i + hi], bc)]
        elif ca == -1:
            out[i : i + hi] = [x - y for x, y in zip(out[i : i + hi], bc)]
        else:
            out[i : i + hi] = [x + ca * y for x, y in zip(out[i : i + hi], bc)]
    return TruncatedSeries.make(val, out, order)


def inv(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse.  Requires a unit (+-1) leading coefficient so
    the inverse stays integral."""
    if not a.coeffs or abs(a.coeffs[0]) != 1:
        lead = a.coeffs[0] if a.coeffs else 0
        raise NonUnitLeadingCoefficient(f"leading coefficient {lead} is not +-1")
    u = a.coeffs[0]
    A = a.coeffs
    L = len(A)
    B = [0] * L
    B[0] = u  # 1/u == u for u = +-1
    for n in range(1, L):
        s = 0
        for k in range(1, n + 1):
            ak = A[k]
            if ak:
                s += ak * B[n - k]
        B[n] = -u * s
    return TruncatedSeries.make(-a.valuation, B, a.order - 2 * a.valuation)


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """a**e by repeated squaring; negative exponents go through inv()."""
    if e == 0:
        return one(a.order - a.valuation)
    if e < 0:
        return power(inv(a), -e)
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def shift(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """Multiply by q^e: valuation and order both move by e."""
    if not a.coeffs:
        return zero(a.order + e)
    return TruncatedSeries(a.valuation + e, a.coeffs, a.order + e)


def dilate(a: TruncatedSeries, m: int) -> TruncatedSeries:
    """Substitute q -> q^m (m >= 1).  Exponents between multiples of m are
    known zero, so the result is trusted below m * a.order."""
    if m < 1:
        raise ValueError("dilation factor must be >= 1")
    if m == 1 or not a.coeffs:
        return a if a.coeffs else zero(m * a.order)
    out = [0] * (m * len(a.coeffs) - (m - 1))
    for i, c in enumerate(a.coeffs):
        out[m * i] = c
    val = m * a.valuation
    return TruncatedSeries.make(val, out + [0] * (m * a.order - val - len(out)), m * a.order)


def first_difference(a, b, limit: int, modulus: int | None = None) -> int | None:
    """Exponent of the first coefficient where a and b differ (optionally
    mod `modulus`) below `limit`, or None if they agree."""
    lo = min(a.valuation, b.valuation, limit)
    wa = a.window(lo, limit)
    wb = b.window(lo, limit)
    if modulus is None:
        for e, (x, y) in enumerate(zip(wa, wb)):
            if x != y:
                return lo + e
    else:
        for e, (x, y) in enumerate(zip(wa, wb)):
            if (x - y) % modulus:
                return lo + e
    return None


def equal_to_order(a, b, n: int) -> bool:
    """True iff the coefficients agree for every exponent below n.  Both
    series must be trusted at least that far."""
    if a.order < n or b.order < n:
        raise InsufficientPrecision(
            f"comparison below {n} needs orders >= {n}, have {a.order} and {b.order}"
        )
    if isinstance(a, ResidueSeries) != isinstance(b, ResidueSeries):
        raise TypeError("cannot compare exact and residue series")
    if isinstance(a, ResidueSeries) and a.modulus != b.modulus:
        raise ValueError("residue series moduli differ")
    return first_difference(a, b, n) is None


@dataclass(frozen=True)
class ResidueSeries:
    """Series shape mirroring TruncatedSeries with coefficients reduced into
    [0, modulus)."""

    modulus: int
    valuation: int
    coeffs: tuple[int, ...]
    order: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if len(self.coeffs) != self.order - self.valuation:
            raise ValueError("coefficient window must match [valuation, order)")
        if any(c < 0 or c >= self.modulus for c in self.coeffs):
            raise ValueError("residues must lie in [0, modulus)")

    def coefficient(self, exponent: int) -> int:
        if exponent >= self.order:
            raise InsufficientPrecision(
                f"coefficient of q^{exponent} requested, trusted only below {self.order}"
            )
        if exponent < self.valuation:
            return 0
        return self.coeffs[exponent - self.valuation]

    def __getitem__(self, exponent: int) -> int:
        return self.coefficient(exponent)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    window = TruncatedSeries.window

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return (
            f"ResidueSeries(mod={self.modulus}, valuation={self.valuation},"
            f" order={self.order}, coeffs=[{shown}{more}])"
        )


def reduce_mod(a: TruncatedSeries, modulus: int) -> ResidueSeries:
    """Map every coefficient to its least nonnegative residue."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    return ResidueSeries(
        modulus, a.valuation, tuple(c % modulus for c in a.coeffs), a.order
    )


def residue_add(a: ResidueSeries, b: ResidueSeries) -> ResidueSeries:
    if a.modulus != b.modulus:
        raise ValueError("residue series moduli differ")
    m = a.modulus
    order = min(a.order, b.order)
    lo = min(a.valuation, b.valuation, order)
    wa = a.window(lo, order)
    wb = b.window(lo, order)
    return ResidueSeries(m, lo, tuple((x + y) % m for x, y in zip(wa, wb)), order)


def residue_mul(a: ResidueSeries, b: ResidueSeries) -> ResidueSeries:
    """Residue Cauchy product on fixed-width words.  Powers of two up to 2^63
    ride the natural uint64 wraparound; other moduli must be small enough
    that the convolution never overflows."""
    if a.modulus != b.modulus:
        raise ValueError("residue series moduli differ")
    m = a.modulus
    val = a.valuation + b.valuation
    order = min(a.order + b.valuation, b.order + a.valuation)
    if order <= val or not a.coeffs or not b.coeffs:
        return ResidueSeries(m, order, (), order)
    n = order - val
    aa = np.array(a.coeffs[: min(len(a.coeffs), n)], dtype=np.uint64)
    bb = np.array(b.coeffs[: min(len(b.coeffs), n)], dtype=np.uint64)
    cv = np.convolve(aa, bb)[:n]
    if _is_pow2(m) and m <= (1 << 63):
        cv &= np.uint64(m - 1)
    elif m <= _SMALL_MODULUS_LIMIT:
        cv %= np.uint64(m)
    else:
        raise UnsupportedModulus(f"modulus {m} outside the fast-path range")
    return ResidueSeries(m, val, tuple(int(x) for x in cv), order)
