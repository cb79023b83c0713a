"""Empirical arithmetic density of coefficient residues.

delta_r(X) is the fraction of indices 1 <= n <= X whose coefficient is
congruent to r mod M.  Index 0 is excluded throughout: the constant term
is 1 for every family here, and counting it would cap delta_0 below 1
forever.  Densities are exact rationals; rounding happens only in export
columns explicitly labeled as rounded.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import etaq
from .reporting import to_csv

INDEX_CONVENTION = "indices run 1 <= n <= X (n = 0 excluded)"


@dataclass(frozen=True)
class DensityReport:
    family: str
    k: int
    modulus: int
    residue: int
    rows: tuple[tuple[int, int, Fraction], ...]  # (X, count, delta)
    exceptions: tuple[int, ...] | None  # indices with a(n) not= 0, when residue == 0

    def to_record(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "modulus": self.modulus,
            "residue": self.residue,
            "index_convention": INDEX_CONVENTION,
            "rows": [
                {"X": x, "count": c, "delta": d, "delta_rounded": round(float(d), 6)}
                for (x, c, d) in self.rows
            ],
            "exceptions": list(self.exceptions) if self.exceptions is not None else None,
        }

    def to_csv(self) -> str:
        rows = [
            {
                "X": x,
                "count": c,
                "delta_numerator": d.numerator,
                "delta_denominator": d.denominator,
                "delta_rounded": round(float(d), 6),
            }
            for (x, c, d) in self.rows
        ]
        return to_csv(rows, ("X", "count", "delta_numerator", "delta_denominator", "delta_rounded"))


def _residues_upto(family: etaq.Family, modulus: int, x_max: int) -> np.ndarray:
    mon = etaq.family_monomial(family)
    two = modulus & -modulus
    odd = modulus // two
    if two == 1 or odd == 1:
        return etaq.residue_array(mon, x_max + 1, modulus).astype(np.int64)
    # composite modulus: combine the power-of-two and odd residues by CRT
    a2 = etaq.residue_array(mon, x_max + 1, two).astype(np.int64)
    ao = etaq.residue_array(mon, x_max + 1, odd).astype(np.int64)
    inv_two = pow(two, -1, odd)
    return (a2 + two * ((ao - a2) * inv_two % odd)) % modulus


def compute_density(
    family: etaq.Family,
    modulus: int,
    residue: int,
    x_grid: list[int],
) -> DensityReport:
    """Exact residue counts on each grid point; the exception list (indices
    with a nonzero residue) is materialized only for residue 0."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if not 0 <= residue < modulus:
        raise ValueError("residue must lie in [0, modulus)")
    grid = sorted(set(int(x) for x in x_grid))
    if not grid or grid[0] < 1:
        raise ValueError("grid values must be >= 1")
    x_max = grid[-1]
    arr = _residues_upto(family, modulus, x_max)
    hit = arr[1:] == residue  # index 0 excluded
    prefix = np.concatenate(([0], np.cumsum(hit)))
    rows = tuple((x, int(prefix[x]), Fraction(int(prefix[x]), x)) for x in grid)
    exceptions = None
    if residue == 0:
        exceptions = tuple(int(i) for i in np.nonzero(arr[1 : x_max + 1])[0] + 1)
    return DensityReport(family.name, family.k, modulus, residue, rows, exceptions)


def squares_and_twice_squares(x: int) -> set[int]:
    out = {m * m for m in range(1, isqrt(x) + 1)}
    out.update(2 * m * m for m in range(1, isqrt(x // 2) + 1))
    return out


def exception_structure_check(k: int, x: int) -> bool:
    """For the (2k+1)-tuple family mod 4: True iff the indices with a
    coefficient not divisible by 4 on [1, x] are exactly the squares and
    twice-squares."""
    if k < 0:
        raise ValueError("k must be >= 0")
    family = etaq.Family("overcubic-ktuple", 2 * k + 1)
    report = compute_density(family, 4, 0, [x])
    return set(report.exceptions) == squares_and_twice_squares(x)
