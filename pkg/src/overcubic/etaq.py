"""Euler products f_k, symbolic f-quotients, theta series, and the
eta-quotient lacunarity criterion.

The expansion engine works factor by factor: multiplying or dividing by a
single f_delta uses its pentagonal-number expansion (all coefficients in
{-1, 0, 1}), and cubes f_delta^3 use the classical sparse expansion with
coefficients +-(2k+1), which cuts the number of passes for large
exponents roughly by three.  Exact expansions carry Python integers; the
residue path carries numpy uint64 words, either wrapping naturally mod
2^64 (exact for any power-of-two modulus up to 2^63) or reduced mod a
small modulus after every pass.
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

import numpy as np

from . import catalogs
from .errors import NonIntegerWeight, UnsupportedModulus
from .series import TruncatedSeries, ResidueSeries, zero

_WORD_MASK = (1 << 64) - 1
_SMALL_MODULUS_LIMIT = 1 << 15


# ---------------------------------------------------------------------------
# sparse building blocks


def pentagonal_terms(delta: int, limit: int) -> list[tuple[int, int]]:
    """(exponent, sign) pairs of f_delta = prod (1 - q^(delta*i)) below `limit`."""
    terms = [(0, 1)]
    k = 1
    while True:
        e1 = delta * k * (3 * k - 1) // 2
        if e1 >= limit:
            break
        s = -1 if k & 1 else 1
        terms.append((e1, s))
        e2 = delta * k * (3 * k + 1) // 2
        if e2 < limit:
            terms.append((e2, s))
        k += 1
    return terms


def cube_terms(delta: int, limit: int) -> list[tuple[int, int]]:
    """(exponent, coefficient) pairs of f_delta^3 below `limit`."""
    terms = []
    k = 0
    while True:
        e = delta * k * (k + 1) // 2
        if e >= limit:
            break
        c = 2 * k + 1
        terms.append((e, -c if k & 1 else c))
        k += 1
    return terms


# ---------------------------------------------------------------------------
# symbolic types


@dataclass(frozen=True)
class FMonomial:
    """c * q^e * prod f_delta^r_delta with integer exponents."""

    coefficient: int = 1
    qpower: int = 0
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        deltas = [d for d, _ in self.factors]
        if any(d < 1 for d in deltas) or len(set(deltas)) != len(deltas):
            raise ValueError("factor deltas must be distinct positive integers")
        if any(r == 0 for _, r in self.factors):
            raise ValueError("zero exponents must not be stored")
        if list(self.factors) != sorted(self.factors):
            raise ValueError("factors must be sorted; use make()")

    @classmethod
    def make(
        cls,
        coefficient: int = 1,
        qpower: int = 0,
        factors: Mapping[int, int] | Iterable[tuple[int, int]] = (),
    ) -> "FMonomial":
        items = factors.items() if isinstance(factors, Mapping) else factors
        cleaned = sorted((int(d), int(r)) for d, r in items if int(r) != 0)
        return cls(int(coefficient), int(qpower), tuple(cleaned))

    def factor_map(self) -> dict[int, int]:
        return dict(self.factors)

    def scaled(self, c: int) -> "FMonomial":
        return FMonomial(self.coefficient * c, self.qpower, self.factors)

    def __repr__(self):
        parts = []
        if self.coefficient != 1 or not (self.factors or self.qpower):
            parts.append(str(self.coefficient))
        if self.qpower:
            parts.append(f"q^{self.qpower}")
        parts.extend(f"f{d}^{r}" if r != 1 else f"f{d}" for d, r in self.factors)
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class FQuotientSum:
    """Formal sum of FMonomial terms; an empty sum is zero."""

    terms: tuple[FMonomial, ...] = ()

    @classmethod
    def make(cls, terms: Iterable[FMonomial]) -> "FQuotientSum":
        return cls(tuple(terms))


# ---------------------------------------------------------------------------
# expansion engine

class _GrowingCache:
    """Keeps the longest expansion seen per key and serves prefixes of it."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key, n, build):
        with self._lock:
            hit = self._data.get(key)
        if hit is not None and hit[0] >= n:
            return hit[1]
        value = build(n)
        with self._lock:
            hit = self._data.get(key)
            if hit is None or hit[0] < n:
                self._data[key] = (n, value)
        return value

    def clear(self):
        with self._lock:
            self._data.clear()


_exact_cache = _GrowingCache()
_residue_cache = _GrowingCache()


def _factor_passes(delta: int, r: int, limit: int):
    """Yield sparse term lists whose product is f_delta^|r|."""
    cubes, rest = divmod(abs(r), 3)
    if cubes:
        terms = cube_terms(delta, limit)
        for _ in range(cubes):
            yield terms
    if rest:
        terms = pentagonal_terms(delta, limit)
        for _ in range(rest):
            yield terms


def _mul_pass(acc: list[int], terms, n: int) -> list[int]:
    out = [0] * n
    for e, c in terms:
        if e >= n:
            break
        if c == 1:
            out[e:] = [x + y for x, y in zip(out[e:], acc)]
        elif c == -1:
            out[e:] = [x - y for x, y in zip(out[e:], acc)]
        else:
            out[e:] = [x + c * y for x, y in zip(out[e:], acc)]
    return out


def _div_pass(num: list[int], terms, n: int) -> list[int]:
    # forward substitution for g with g * f = num; f has constant term 1
    tail = [(e, c) for e, c in terms if e > 0]
    g = list(num)
    for i in range(1, n):
        s = 0
        for e, c in tail:
            if e > i:
                break
            s += c * g[i - e]
        if s:
            g[i] -= s
    return g


def _expand_factors_exact(factors: tuple[tuple[int, int], ...], n: int) -> list[int]:
    def build(limit):
        acc = [1] + [0] * (limit - 1)
        for delta, r in factors:
            for terms in _factor_passes(delta, r, limit):
                acc = _mul_pass(acc, terms, limit) if r > 0 else _div_pass(acc, terms, limit)
        return acc

    return _exact_cache.get(factors, n, build)[:n]


def _np_terms(terms, reduce_to: int | None):
    exps = np.array([e for e, _ in terms], dtype=np.int64)
    if reduce_to is None:
        coefs = np.array([c & _WORD_MASK for _, c in terms], dtype=np.uint64)
    else:
        coefs = np.array([c % reduce_to for _, c in terms], dtype=np.uint64)
    return exps, coefs


def _np_mul_pass(acc: np.ndarray, exps, coefs, n: int, modulus: int | None) -> np.ndarray:
    out = np.zeros(n, dtype=np.uint64)
    for e, c in zip(exps.tolist(), coefs.tolist()):
        if e >= n:
            break
        out[e:] += np.uint64(c) * acc[: n - e]
    if modulus is not None:
        out %= np.uint64(modulus)
    return out


def _np_div_pass(num: np.ndarray, exps, coefs, n: int, modulus: int | None) -> np.ndarray:
    keep = exps > 0
    es, cs = exps[keep], coefs[keep]
    g = num.copy()
    if es.size == 0 or n <= 1:
        return g
    counts = np.searchsorted(es, np.arange(1, n), side="right")
    if modulus is None:
        for i in range(1, n):
            k = counts[i - 1]
            if k:
                acc = int(g[i - es[:k]] @ cs[:k])
                g[i] = (int(g[i]) - acc) & _WORD_MASK
    else:
        for i in range(1, n):
            k = counts[i - 1]
            if k:
                acc = int(g[i - es[:k]] @ cs[:k])
                g[i] = (int(g[i]) - acc) % modulus
    return g


def _expand_factors_residue(
    factors: tuple[tuple[int, int], ...], n: int, modulus: int | None
) -> np.ndarray:
    """f-product coefficients as uint64: raw words (exact mod 2^64) when
    modulus is None, else reduced mod the given small modulus."""

    def build(limit):
        acc = np.zeros(limit, dtype=np.uint64)
        acc[0] = 1
        for delta, r in factors:
            for terms in _factor_passes(delta, r, limit):
                exps, coefs = _np_terms(terms, modulus)
                if r > 0:
                    acc = _np_mul_pass(acc, exps, coefs, limit, modulus)
                else:
                    acc = _np_div_pass(acc, exps, coefs, limit, modulus)
        return acc

    return _residue_cache.get((factors, modulus), n, build)[:n]


def residue_array(monomial: FMonomial, order: int, modulus: int) -> np.ndarray:
    """Fast path: residues mod `modulus` of the monomial's coefficients for
    exponents [qpower, order), returned as a plain array indexed from the
    valuation.  Only valuation-0 monomials are accepted here; congruence
    scans never need a principal part."""
    if monomial.qpower != 0:
        raise ValueError("residue scans expect a valuation-0 monomial")
    if order < 1:
        raise ValueError("order must be >= 1")
    if _pow2_exponent(modulus) is not None:
        arr = _expand_factors_residue(monomial.factors, order, None)
        out = arr & np.uint64(modulus - 1)
    elif modulus <= _SMALL_MODULUS_LIMIT:
        arr = _expand_factors_residue(monomial.factors, order, modulus)
        out = arr.copy()
    else:
        raise UnsupportedModulus(f"modulus {modulus} outside the fast-path range")
    if monomial.coefficient != 1:
        c = monomial.coefficient % modulus
        out = (out * np.uint64(c)) % np.uint64(modulus)
    return out


def _pow2_exponent(m: int) -> int | None:
    if m >= 2 and (m & (m - 1)) == 0 and m <= (1 << 63):
        return m.bit_length() - 1
    return None


# ---------------------------------------------------------------------------
# public expansion operations


def expand_f(delta: int, n: int) -> TruncatedSeries:
    """Expansion of f_delta below exponent n via the pentagonal numbers."""
    if n < 1:
        raise ValueError("order must be >= 1")
    coeffs = [0] * n
    for e, s in pentagonal_terms(delta, n):
        coeffs[e] = s
    return TruncatedSeries.make(0, coeffs, n)


def expand_monomial(m: FMonomial, n: int) -> TruncatedSeries:
    """Exact expansion of c * q^e * prod f_delta^r below exponent n."""
    if n < 1:
        raise ValueError("order must be >= 1")
    if m.coefficient == 0:
        return zero(n)
    length = n - m.qpower
    if length < 1:
        return zero(n)
    coeffs = _expand_factors_exact(m.factors, length)
    if m.coefficient != 1:
        coeffs = [m.coefficient * c for c in coeffs]
    return TruncatedSeries.make(m.qpower, coeffs, n)


def expand_sum(s: FQuotientSum, n: int) -> TruncatedSeries:
    total = zero(n)
    for term in s.terms:
        total = total + expand_monomial(term, n)
    return total


def expand_monomial_mod(m: FMonomial, n: int, modulus: int) -> ResidueSeries:
    """Residue expansion of a monomial; same window convention as
    expand_monomial but coefficients reduced into [0, modulus)."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if n < 1:
        raise ValueError("order must be >= 1")
    length = n - m.qpower
    if length < 1 or m.coefficient % modulus == 0:
        return ResidueSeries(modulus, n, (), n)
    base = FMonomial(1, 0, m.factors)
    arr = residue_array(base, length, modulus)
    if m.coefficient % modulus != 1:
        arr = (arr * np.uint64(m.coefficient % modulus)) % np.uint64(modulus)
    coeffs = tuple(int(x) for x in arr)
    lead = 0
    while lead < len(coeffs) and coeffs[lead] == 0:
        lead += 1
    if lead == len(coeffs):
        return ResidueSeries(modulus, n, (), n)
    return ResidueSeries(modulus, m.qpower + lead, coeffs[lead:], n)


# ---------------------------------------------------------------------------
# theta series


def phi(n: int) -> TruncatedSeries:
    """1 + 2*sum q^(k^2), truncated below exponent n."""
    if n < 1:
        raise ValueError("order must be >= 1")
    coeffs = [0] * n
    coeffs[0] = 1
    k = 1
    while k * k < n:
        coeffs[k * k] = 2
        k += 1
    return TruncatedSeries.make(0, coeffs, n)


def psi(n: int) -> TruncatedSeries:
    """sum q^(k(k+1)/2), truncated below exponent n."""
    if n < 1:
        raise ValueError("order must be >= 1")
    coeffs = [0] * n
    k = 0
    while k * (k + 1) // 2 < n:
        coeffs[k * (k + 1) // 2] = 1
        k += 1
    return TruncatedSeries.make(0, coeffs, n)


def sellers_product(t: int, n: int) -> TruncatedSeries:
    """(phi(q) * prod_{i>=1} phi(q^(2^i))^(3*2^(i-1)))^t below exponent n.

    Factors with 2^i > n contribute only 1 below q^n and are dropped.  Each
    factor is powered before dilation, which keeps the intermediate series
    short."""
    from .series import dilate, mul, power  # local import keeps module top tidy

    if t < 1:
        raise ValueError("t must be >= 1")
    if n < 1:
        raise ValueError("order must be >= 1")
    acc = phi(n)
    i = 1
    while (1 << i) <= n:
        step = 1 << i
        inner = phi((n + step - 1) // step)
        factor = _clip(dilate(power(inner, 3 << (i - 1)), step), n)
        acc = mul(acc, factor)
        i += 1
    return _clip(power(acc, t), n)


def _clip(s: TruncatedSeries, n: int) -> TruncatedSeries:
    if s.order == n:
        return s
    if s.order < n:
        raise ValueError("cannot extend a truncated series")
    return TruncatedSeries.make(s.valuation, s.window(s.valuation, n), n)


# ---------------------------------------------------------------------------
# eta quotients and the lacunarity criterion


@dataclass(frozen=True)
class EtaQuotient:
    """prod eta(delta*tau)^r_delta, kept symbolic; only the exponent
    arithmetic of the lacunarity criterion ever touches it."""

    factors: tuple[tuple[int, int], ...]
    weight_times_2: int
    d_g: int

    @classmethod
    def make(cls, factors: Mapping[int, int] | Iterable[tuple[int, int]]) -> "EtaQuotient":
        items = factors.items() if isinstance(factors, Mapping) else factors
        cleaned = sorted((int(d), int(r)) for d, r in items if int(r) != 0)
        weight2 = sum(r for _, r in cleaned)
        numer = [d for d, r in cleaned if r > 0]
        dg = 0
        for d in numer:
            dg = gcd(dg, d)
        return cls(tuple(cleaned), weight2, dg)

    def __post_init__(self):
        if self.weight_times_2 != sum(r for _, r in self.factors):
            raise ValueError("weight_times_2 inconsistent with factors")
        for d, r in self.factors:
            if r > 0 and self.d_g and d % self.d_g:
                raise ValueError("d_g must divide every numerator delta")


@dataclass(frozen=True)
class CriterionReport:
    prime: int
    max_power_exponent: int
    prime_power: int
    bound_squared: Fraction
    lacunary: bool


def cotron_check(g: EtaQuotient, p: int) -> CriterionReport:
    """Divisibility criterion for lacunarity mod powers of p.

    Finds the largest a with p^a dividing the gcd of the numerator dilations
    and compares p^(2a) against (sum gamma_i s_i) / (sum r_i / delta_i) in
    exact rational arithmetic.  Verdict is lacunary when the inequality
    holds, inconclusive otherwise."""
    if g.weight_times_2 % 2:
        raise NonIntegerWeight("criterion requires integer weight")
    numer = [(d, r) for d, r in g.factors if r > 0]
    denom = [(d, -r) for d, r in g.factors if r < 0]
    if not numer:
        raise ValueError("criterion needs at least one positive eta exponent")
    a = 0
    d = g.d_g
    while d % p == 0:
        a += 1
        d //= p
    s_sum = sum(gamma * s for gamma, s in denom)
    t_sum = sum(Fraction(r, delta) for delta, r in numer)
    bound_sq = Fraction(s_sum) / t_sum
    lacunary = Fraction(p ** (2 * a)) >= bound_sq
    return CriterionReport(p, a, p**a, bound_sq, lacunary)


# ---------------------------------------------------------------------------
# named generating-function families


@dataclass(frozen=True)
class Family:
    """A named generating function; k is the tuple length and is ignored by
    the non-parameterized families."""

    name: str
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.name not in catalogs.family_table():
            known = ", ".join(sorted(catalogs.family_table()))
            raise ValueError(f"unknown family {self.name!r}; known: {known}")


_K_LINEAR = re.compile(r"^(-?\d*)k$")


def _scaled_exponent(value, k: int) -> int:
    if isinstance(value, int):
        return value
    m = _K_LINEAR.match(str(value).strip())
    if not m:
        raise ValueError(f"factor exponent {value!r} is neither an integer nor <int>k")
    lead = m.group(1)
    coeff = -1 if lead == "-" else 1 if lead == "" else int(lead)
    return coeff * k


def family_monomial(family: Family) -> FMonomial:
    entry = catalogs.family_table()[family.name]
    factors = {
        int(d): _scaled_exponent(r, family.k) for d, r in entry["factors"].items()
    }
    return FMonomial.make(qpower=int(entry.get("qpower", 0)), factors=factors)


def family_eta(family: Family) -> EtaQuotient:
    return EtaQuotient.make(family_monomial(family).factor_map())
