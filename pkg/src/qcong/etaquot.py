"""Eta quotients: transformation conditions, character, cusp orders, Sturm bounds.

An eta quotient of level N is ``prod_{delta | N} eta(delta*z)^{r_delta}``.
All orders and weights are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Mapping

from .qproducts import as_mod, qpochhammer_inf
from .series import Series, TruncatedSeries, invert, mul, power, shift

__all__ = [
    "EtaQuotient",
    "CuspOrderReport",
    "ModularityVerdict",
    "SturmBound",
    "divisors",
    "prime_factors",
    "weight",
    "check_24_conditions",
    "condition_sums",
    "kronecker",
    "character_value",
    "character_is_trivial",
    "cusp_order",
    "cusp_orders",
    "modularity_verdict",
    "sturm_bound",
    "q_expansion",
]


def divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def prime_factors(n: int) -> dict[int, int]:
    """Factorisation of ``|n|`` by trial division, as ``{prime: exponent}``."""
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class EtaQuotient:
    level: int
    exponents: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        clean = {}
        for delta, r in self.exponents.items():
            delta, r = int(delta), int(r)
            if delta < 1 or self.level % delta:
                raise ValueError(f"{delta} does not divide level {self.level}")
            if r:
                clean[delta] = r
        object.__setattr__(self, "exponents", dict(sorted(clean.items())))

    def r(self, delta: int) -> int:
        return self.exponents.get(delta, 0)

    @classmethod
    def from_json(cls, text: str) -> "EtaQuotient":
        """Parse ``{"level": N, "exponents": {"delta": r, ...}}``."""
        obj = json.loads(text)
        return cls(int(obj["level"]), {int(k): int(v) for k, v in obj["exponents"].items()})

    def to_dict(self) -> dict:
        return {"level": self.level, "exponents": {str(k): v for k, v in self.exponents.items()}}


def weight(eq: EtaQuotient) -> Fraction:
    return Fraction(sum(eq.exponents.values()), 2)


def condition_sums(eq: EtaQuotient) -> tuple[int, int]:
    """``(sum delta*r_delta, sum (N/delta)*r_delta)``."""
    n = eq.level
    return (
        sum(d * r for d, r in eq.exponents.items()),
        sum(n // d * r for d, r in eq.exponents.items()),
    )


def check_24_conditions(eq: EtaQuotient) -> tuple[bool, bool]:
    s1, s2 = condition_sums(eq)
    return s1 % 24 == 0, s2 % 24 == 0


def kronecker(m: int, n: int) -> int:
    """Kronecker symbol (m/n) for arbitrary integers m, n."""
    if n == 0:
        return 1 if m in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if m < 0:
            result = -1
    v = (n & -n).bit_length() - 1
    if v:
        if m % 2 == 0:
            return 0
        n >>= v
        if v % 2 and m % 8 in (3, 5):
            result = -result
    # n odd and positive: Jacobi symbol
    m %= n
    while m:
        while m % 2 == 0:
            m //= 2
            if n % 8 in (3, 5):
                result = -result
        m, n = n, m
        if m % 4 == 3 and n % 4 == 3:
            result = -result
        m %= n
    return result if n == 1 else 0


def _squarefree_part(factors: Mapping[int, int]) -> int:
    core = 1
    for p, e in factors.items():
        if e % 2:
            core *= p
    return core


def _s_exponents(eq: EtaQuotient) -> dict[int, int]:
    """Prime exponents of s = prod delta^{r_delta} (possibly negative)."""
    expo: dict[int, int] = {}
    for delta, r in eq.exponents.items():
        for p, e in prime_factors(delta).items():
            expo[p] = expo.get(p, 0) + e * r
    return expo


def character_value(eq: EtaQuotient, d: int) -> int:
    """Nebentypus value ``(((-1)^k s) / d)`` with ``s = prod delta^{r_delta}``.

    ``s`` is never expanded: its exponents are collected per prime, and the
    symbol is read off the squarefree part (times the sign).  Primes dividing
    ``s`` to an even power still kill the symbol when they divide ``d``.
    """
    k = weight(eq)
    if k.denominator != 1:
        raise ValueError(f"weight {k} is not an integer")
    expo = _s_exponents(eq)
    # a rational num/den has the same square class as num*den
    support = [p for p, e in expo.items() if e]
    if any(d % p == 0 for p in support):
        return 0
    core = _squarefree_part({p: abs(e) for p, e in expo.items()})
    sign = -1 if int(k) % 2 else 1
    return kronecker(sign * core, d)


def character_is_trivial(eq: EtaQuotient) -> bool:
    """Exhaustive check that chi(d) = 1 for every d coprime to N.

    d ranges over one full period, lcm(N, 4*core(s)), which covers the
    Kronecker symbol's own period even when the transformation conditions
    fail and chi is not a character mod N.
    """
    n = eq.level
    expo = _s_exponents(eq)
    period = lcm(n, 4 * _squarefree_part({p: abs(e) for p, e in expo.items()}))
    return all(character_value(eq, d) == 1 for d in range(1, period + 1) if gcd(d, n) == 1)


def cusp_order(eq: EtaQuotient, d: int) -> Fraction:
    """Order of vanishing at the cusps c/d, as the closed formula over divisors."""
    n = eq.level
    if d < 1 or n % d:
        raise ValueError(f"{d} does not divide level {n}")
    total = sum(
        Fraction(gcd(d, delta) ** 2 * r, gcd(d, n // d) * d * delta)
        for delta, r in eq.exponents.items()
    )
    return Fraction(n, 24) * total


@dataclass(frozen=True)
class CuspOrderReport:
    orders: dict[int, Fraction]

    @property
    def all_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.orders.values())

    def to_dict(self) -> dict:
        return {
            "orders": {str(d): str(v) for d, v in self.orders.items()},
            "all_nonnegative": self.all_nonnegative,
        }


def cusp_orders(eq: EtaQuotient) -> CuspOrderReport:
    return CuspOrderReport({d: cusp_order(eq, d) for d in divisors(eq.level)})


@dataclass(frozen=True)
class ModularityVerdict:
    level: int
    weight: Fraction
    sum_delta: int
    sum_level_over_delta: int
    cond1_ok: bool
    cond2_ok: bool
    character_is_trivial: bool
    cusp_report: CuspOrderReport

    @property
    def is_modular_form(self) -> bool:
        k = self.weight
        return (
            self.cond1_ok
            and self.cond2_ok
            and k.denominator == 1
            and k > 0
            and self.cusp_report.all_nonnegative
        )

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "weight": str(self.weight),
            "sum_delta": self.sum_delta,
            "sum_level_over_delta": self.sum_level_over_delta,
            "cond1_ok": self.cond1_ok,
            "cond2_ok": self.cond2_ok,
            "character_is_trivial": self.character_is_trivial,
            "cusp_report": self.cusp_report.to_dict(),
            "is_modular_form": self.is_modular_form,
        }


def modularity_verdict(eq: EtaQuotient) -> ModularityVerdict:
    k = weight(eq)
    s1, s2 = condition_sums(eq)
    trivial = k.denominator == 1 and character_is_trivial(eq)
    return ModularityVerdict(
        level=eq.level,
        weight=k,
        sum_delta=s1,
        sum_level_over_delta=s2,
        cond1_ok=s1 % 24 == 0,
        cond2_ok=s2 % 24 == 0,
        character_is_trivial=trivial,
        cusp_report=cusp_orders(eq),
    )


@dataclass(frozen=True)
class SturmBound:
    exact: Fraction

    @property
    def floor(self) -> int:
        return self.exact.numerator // self.exact.denominator

    @property
    def endpoint(self) -> int:
        """Last index of the inclusive verification range 0 .. floor + 1."""
        return self.floor + 1


def sturm_bound(k: int, n: int) -> SturmBound:
    """``k*N/12 * prod_{p | N} (1 + 1/p)``."""
    b = Fraction(k * n, 12)
    for p in prime_factors(n):
        b *= Fraction(p + 1, p)
    return SturmBound(b)


def q_expansion(eq: EtaQuotient, precision: int, modulus: int | None = None) -> Series:
    """q-expansion of the eta quotient as a plain power series.

    Requires ``sum delta*r_delta`` divisible by 24, so the leading exponent
    is an integer.  With ``modulus`` the product is formed in ModSeries.
    """
    s1 = condition_sums(eq)[0]
    if s1 % 24:
        raise ValueError(f"sum of delta*r_delta = {s1} is not divisible by 24")
    offset = s1 // 24
    if offset < 0:
        raise ValueError(f"negative leading exponent {offset} (not a power series)")
    result: Series = as_mod(TruncatedSeries.one(precision), modulus)
    for delta, r in eq.exponents.items():
        factor = as_mod(qpochhammer_inf(delta, precision), modulus)
        if r < 0:
            factor = invert(factor)
        result = mul(result, power(factor, abs(r)))
    return shift(result, offset)
