"""Named q-series: Euler products, eta expansions, partition generating functions.

The theta-type series (triangular numbers, the Jacobi cube series) are built
from their exponent formulas, never from products, so that comparing them with
the corresponding products is a genuine two-sided identity check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import ModSeries, Series, TruncatedSeries, invert, mul, reduce_mod

__all__ = [
    "EtaExpansion",
    "qpochhammer_inf",
    "naive_qpochhammer_inf",
    "partition_series",
    "cubic_partition_series",
    "eta_expansion",
    "jacobi_cube_series",
    "triangular_series",
    "generalized_pentagonal",
    "as_mod",
]


def generalized_pentagonal(limit: int):
    """Yield ``(j, j*(3j-1)/2)`` for j = 0, 1, -1, 2, -2, ... with exponent < limit."""
    yield 0, 0
    j = 1
    while True:
        lo = j * (3 * j - 1) // 2
        if lo >= limit:
            return
        yield j, lo
        hi = j * (3 * j + 1) // 2
        if hi < limit:
            yield -j, hi
        j += 1


def qpochhammer_inf(d: int, precision: int) -> TruncatedSeries:
    """``prod_{n>=1} (1 - q^(d*n))`` via Euler's pentagonal number theorem."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    c = [0] * precision
    # exponent d*w < precision  <=>  w < ceil(precision / d)
    for j, w in generalized_pentagonal(-(-precision // d)):
        c[d * w] = -1 if j % 2 else 1
    return TruncatedSeries(c)


def naive_qpochhammer_inf(d: int, precision: int) -> TruncatedSeries:
    """Same product as :func:`qpochhammer_inf`, multiplied out factor by factor."""
    c = [0] * precision
    c[0] = 1
    k = d
    while k < precision:
        # multiply by (1 - q^k) in place, high indices first
        for i in range(precision - 1, k - 1, -1):
            c[i] -= c[i - k]
        k += d
    return TruncatedSeries(c)


def partition_series(precision: int, modulus: int | None = None) -> Series:
    """Generating function of p(n); a ModSeries when ``modulus`` is given."""
    return invert(as_mod(qpochhammer_inf(1, precision), modulus))


def cubic_partition_series(precision: int, modulus: int | None = None) -> Series:
    """``1 / ((q;q)_inf (q^2;q^2)_inf)``, whose coefficients are a(n)."""
    den = mul(qpochhammer_inf(1, precision), qpochhammer_inf(2, precision))
    return invert(as_mod(den, modulus))


@dataclass(frozen=True)
class EtaExpansion:
    """``eta(delta*z) = q^(offset24/24) * series``."""

    delta: int
    offset24: int
    series: TruncatedSeries

    def __post_init__(self):
        if self.offset24 != self.delta:
            raise ValueError("offset24 must equal delta")
        if self.series[0] != 1:
            raise ValueError("product part must have constant term 1")


def eta_expansion(delta: int, precision: int) -> EtaExpansion:
    return EtaExpansion(delta, delta, qpochhammer_inf(delta, precision))


def jacobi_cube_series(precision: int) -> TruncatedSeries:
    """``sum_{n>=0} (-1)^n (2n+1) q^(n(n+1))``."""
    c = [0] * precision
    n = 0
    while n * (n + 1) < precision:
        c[n * (n + 1)] = (-1) ** n * (2 * n + 1)
        n += 1
    return TruncatedSeries(c)


def triangular_series(precision: int) -> TruncatedSeries:
    """``sum_{n>=0} q^(n(n+1)/2)``."""
    c = [0] * precision
    n = 0
    while n * (n + 1) // 2 < precision:
        c[n * (n + 1) // 2] = 1
        n += 1
    return TruncatedSeries(c)


def as_mod(s: Series, modulus: int | None) -> Series:
    """Reduce ``s`` when a modulus is given, else pass it through."""
    if modulus is None or isinstance(s, ModSeries) and s.modulus == modulus:
        return s
    return reduce_mod(s, modulus)
