"""Parity of a(n) and p(n) from their mod-2 recurrences.

Both recurrences are sequential, but each step only needs the bits at a
sparse set of earlier indices (pronic numbers k(k+1), or generalized
pentagonal numbers), so one fancy-indexed numpy gather per n keeps the
O(n^1.5) sweep fast.  Working arrays are one byte per bit; use
:func:`pack_bits` for storage and export.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable

import numpy as np

from .qproducts import generalized_pentagonal

__all__ = [
    "ParityCensus",
    "delta_triangular",
    "parity_recurrence",
    "euler_parity_p",
    "parity_census",
    "pack_bits",
    "unpack_bits",
    "bits_csv",
]


def delta_triangular(n: int) -> int:
    """1 if n = s(s+1)/2 for some s >= 0, else 0."""
    if n < 0:
        return 0
    r = isqrt(8 * n + 1)
    return 1 if r * r == 8 * n + 1 else 0


def parity_recurrence(n_max: int) -> np.ndarray:
    """a(n) mod 2 for 0 <= n <= n_max, using only

        a(n) = Delta(n) + sum_{k>=1, k^2+k <= n} a(n - k - k^2)   (mod 2)
    """
    bits = np.zeros(n_max + 1, dtype=np.uint8)
    kmax = (isqrt(4 * n_max + 1) - 1) // 2
    pronic = np.array([k * k + k for k in range(1, kmax + 1)], dtype=np.int64)
    tri = _triangular_mask(n_max)
    count = 0
    for n in range(n_max + 1):
        while count < len(pronic) and pronic[count] <= n:
            count += 1
        s = int(bits[n - pronic[:count]].sum()) if count else 0
        bits[n] = (tri[n] + s) & 1
    return bits


def _triangular_mask(n_max: int) -> np.ndarray:
    mask = np.zeros(n_max + 1, dtype=np.uint8)
    s = 0
    while s * (s + 1) // 2 <= n_max:
        mask[s * (s + 1) // 2] = 1
        s += 1
    return mask


def euler_parity_p(n_max: int) -> np.ndarray:
    """p(n) mod 2 for 0 <= n <= n_max from the pentagonal recurrence.

    Signs are irrelevant mod 2, so p(n) = sum_{j != 0} p(n - w(j)).
    """
    bits = np.zeros(n_max + 1, dtype=np.uint8)
    pent = np.array(sorted(w for j, w in generalized_pentagonal(n_max + 1) if j),
                    dtype=np.int64)
    bits[0] = 1
    count = 0
    for n in range(1, n_max + 1):
        while count < len(pent) and pent[count] <= n:
            count += 1
        bits[n] = int(bits[n - pent[:count]].sum()) & 1
    return bits


def pack_bits(bits: np.ndarray) -> bytes:
    return np.packbits(bits).tobytes()


def unpack_bits(data: bytes, count: int) -> np.ndarray:
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8), count=count)


def bits_csv(bits: Iterable[int]) -> str:
    return "".join(f"{n},{int(b)}\n" for n, b in enumerate(bits))


@dataclass
class ParityCensus:
    n_max: int
    even_count: int
    odd_count: int
    first_even_after: dict[int, int | None] = field(default_factory=dict)
    first_odd_after: dict[int, int | None] = field(default_factory=dict)

    @property
    def odd_fraction(self) -> Fraction:
        return Fraction(self.odd_count, self.n_max + 1)

    def to_dict(self) -> dict:
        frac = self.odd_fraction
        return {
            "n_max": self.n_max,
            "even_count": self.even_count,
            "odd_count": self.odd_count,
            "first_even_after": {str(k): v for k, v in self.first_even_after.items()},
            "first_odd_after": {str(k): v for k, v in self.first_odd_after.items()},
            "odd_fraction": str(frac),
            "odd_fraction_float": float(frac),
        }


def _first_at_or_after(idx: np.ndarray, m: int) -> int | None:
    pos = np.searchsorted(idx, m)
    return int(idx[pos]) if pos < len(idx) else None


def parity_census(n_max: int, thresholds: Iterable[int] = (),
                  bits: np.ndarray | None = None) -> ParityCensus:
    """Even/odd counts of a(0..n_max) and the first witnesses >= each threshold."""
    if bits is None:
        bits = parity_recurrence(n_max)
    bits = bits[:n_max + 1]
    odd_idx = np.flatnonzero(bits)
    even_idx = np.flatnonzero(bits == 0)
    census = ParityCensus(n_max, len(even_idx), len(odd_idx))
    for m in thresholds:
        census.first_even_after[m] = _first_at_or_after(even_idx, m)
        census.first_odd_after[m] = _first_at_or_after(odd_idx, m)
    return census
