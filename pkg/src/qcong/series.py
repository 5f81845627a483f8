"""Truncated power series in q with exact or modular integer coefficients.

Two value types share one set of operations:

* :class:`TruncatedSeries` -- arbitrary-precision signed coefficients.
* :class:`ModSeries` -- residues in ``[0, modulus)``.

A series of precision ``N`` stores the coefficients of ``q^0 .. q^(N-1)``.
Binary operations silently truncate to the smaller precision.

Products use one of three kernels, picked per call:

* sparse x sparse: accumulate over the nonzero pairs only;
* sparse x dense: one shifted, scaled copy of the dense operand per nonzero;
* dense x dense: Kronecker substitution (pack both coefficient vectors into
  single big integers, multiply once with GMP, unpack).

Inversion runs Newton iteration on top of these kernels, so the pentagonal
products that dominate the workload stay cheap.
"""

from __future__ import annotations

import builtins
from operator import add as _add, sub as _sub
from typing import Iterable, Sequence, Union

import gmpy2

__all__ = [
    "TruncatedSeries",
    "ModSeries",
    "Series",
    "add",
    "sub",
    "mul",
    "invert",
    "power",
    "extract_progression",
    "shift",
    "reduce_mod",
    "dump_csv",
]

# below this many nonzero terms an operand is multiplied term by term
SPARSE_TERMS = 24
# Newton iteration is not worth it for short series
_NEWTON_CUTOFF = 64


class _Base:
    __slots__ = ("coeffs",)

    coeffs: tuple

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._scaled(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self._scaled(other)
        return NotImplemented

    def __pow__(self, e):
        return power(self, e)

    def __neg__(self):
        return self._scaled(-1)

    def nonzero_terms(self) -> list[tuple[int, int]]:
        """``(exponent, coefficient)`` pairs with nonzero coefficient."""
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def leading_exponent(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None


class TruncatedSeries(_Base):
    """Exact integer power series truncated to ``precision`` coefficients."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if not coeffs:
            raise ValueError("precision must be at least 1")
        self.coeffs = coeffs

    @classmethod
    def one(cls, precision: int) -> "TruncatedSeries":
        return cls.monomial(0, precision)

    @classmethod
    def zero(cls, precision: int) -> "TruncatedSeries":
        return cls([0] * precision)

    @classmethod
    def monomial(cls, k: int, precision: int, coeff: int = 1) -> "TruncatedSeries":
        c = [0] * precision
        if k < precision:
            c[k] = coeff
        return cls(c)

    @classmethod
    def from_terms(cls, terms: dict[int, int], precision: int) -> "TruncatedSeries":
        c = [0] * precision
        for k, v in terms.items():
            if 0 <= k < precision:
                c[k] += v
        return cls(c)

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self.precision:
            raise ValueError(f"cannot extend precision {self.precision} to {precision}")
        return TruncatedSeries(self.coeffs[:precision])

    def _scaled(self, k: int) -> "TruncatedSeries":
        return TruncatedSeries([k * c for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("TruncatedSeries", self.coeffs))

    def __repr__(self):
        head = ", ".join(map(str, self.coeffs[:8]))
        more = ", ..." if self.precision > 8 else ""
        return f"TruncatedSeries([{head}{more}], precision={self.precision})"


class ModSeries(_Base):
    """Power series with coefficients reduced into ``[0, modulus)``."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: int, coeffs: Iterable[int]):
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        coeffs = tuple(int(c) % modulus for c in coeffs)
        if not coeffs:
            raise ValueError("precision must be at least 1")
        self.modulus = modulus
        self.coeffs = coeffs

    @classmethod
    def one(cls, modulus: int, precision: int) -> "ModSeries":
        return cls(modulus, [1] + [0] * (precision - 1))

    def truncate(self, precision: int) -> "ModSeries":
        if precision > self.precision:
            raise ValueError(f"cannot extend precision {self.precision} to {precision}")
        return ModSeries(self.modulus, self.coeffs[:precision])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _scaled(self, k: int) -> "ModSeries":
        return ModSeries(self.modulus, [k * c for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, ModSeries):
            return self.modulus == other.modulus and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("ModSeries", self.modulus, self.coeffs))

    def __repr__(self):
        head = ", ".join(map(str, self.coeffs[:8]))
        more = ", ..." if self.precision > 8 else ""
        return f"ModSeries(mod {self.modulus}: [{head}{more}], precision={self.precision})"


Series = Union[TruncatedSeries, ModSeries]


def _check_pair(a: Series, b: Series) -> int | None:
    if type(a) is not type(b):
        raise TypeError(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    if isinstance(a, ModSeries):
        if a.modulus != b.modulus:
            raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
        return a.modulus
    return None


def _wrap(modulus: int | None, coeffs) -> Series:
    if modulus is None:
        return TruncatedSeries(coeffs)
    return ModSeries(modulus, coeffs)


def _modulus_of(a: Series) -> int | None:
    return a.modulus if isinstance(a, ModSeries) else None


# ---------------------------------------------------------------------------
# multiplication kernels on plain coefficient lists


def _nonzeros(c: Sequence[int]) -> list[tuple[int, int]]:
    return [(i, v) for i, v in enumerate(c) if v]


def _ones(count: int, width: int) -> int:
    """sum of 2**(8*width*i) for i < count"""
    return int.from_bytes((b"\x01" + b"\x00" * (width - 1)) * count, "little")


def _pack(vals: Sequence[int], width: int, bias: int) -> int:
    if bias:
        buf = b"".join((v + bias).to_bytes(width, "little") for v in vals)
        return int.from_bytes(buf, "little") - bias * _ones(len(vals), width)
    return int.from_bytes(b"".join(v.to_bytes(width, "little") for v in vals), "little")


def _kronecker(a: Sequence[int], b: Sequence[int], n: int, signed: bool) -> list[int]:
    """First ``n`` coefficients of a*b via a single big-integer product."""
    la, lb = len(a), len(b)
    amax = max(builtins.map(abs, a))
    bmax = max(builtins.map(abs, b))
    if not amax or not bmax:
        return [0] * n
    bound = min(la, lb) * amax * bmax
    bits = bound.bit_length() + (1 if signed else 0)
    width = (bits + 7) // 8
    half = 1 << (8 * width - 1) if signed else 0
    x = gmpy2.mpz(_pack(a, width, half))
    y = gmpy2.mpz(_pack(b, width, half))
    nbits = 8 * width * n
    z = (x * y) % (gmpy2.mpz(1) << nbits)
    if signed:
        z = (z + half * _ones(n, width)) % (gmpy2.mpz(1) << nbits)
    raw = int(z).to_bytes(width * n, "little")
    from_bytes = int.from_bytes
    return [
        from_bytes(raw[i:i + width], "little") - half
        for i in range(0, width * n, width)
    ]


def _conv(a: Sequence[int], b: Sequence[int], n: int, signed: bool = True) -> list[int]:
    """Truncated Cauchy product of two coefficient lists, ``n`` terms."""
    a = list(a[:n])
    b = list(b[:n])
    na = _nonzeros(a)
    nb = _nonzeros(b)
    if not na or not nb:
        return [0] * n
    if len(na) > len(nb):
        a, b, na, nb = b, a, nb, na
    if len(na) * len(nb) <= 4 * n:
        out = [0] * n
        for i, x in na:
            for j, y in nb:
                k = i + j
                if k >= n:
                    break
                out[k] += x * y
        return out
    if len(na) <= SPARSE_TERMS:
        b = b + [0] * (n - len(b))
        out = [0] * n
        for i, x in na:
            seg = b[:n - i]
            if x == 1:
                out[i:] = builtins.map(_add, out[i:], seg)
            elif x == -1:
                out[i:] = builtins.map(_sub, out[i:], seg)
            else:
                out[i:] = builtins.map(_add, out[i:], [x * y for y in seg])
        return out
    # trailing zeros cost nothing to drop and shrink the packed integers
    a = a[:na[-1][0] + 1]
    b = b[:nb[-1][0] + 1]
    out = _kronecker(a, b, min(n, len(a) + len(b) - 1), signed)
    out.extend([0] * (n - len(out)))
    return out


def _schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i in range(min(n, len(a))):
        ai = a[i]
        if ai:
            for j in range(min(n - i, len(b))):
                out[i + j] += ai * b[j]
    return out


def _reduce(vals: list[int], modulus: int | None) -> list[int]:
    if modulus is None:
        return vals
    return [v % modulus for v in vals]


def _product(a: Sequence[int], b: Sequence[int], n: int, modulus: int | None) -> list[int]:
    return _reduce(_conv(a, b, n, signed=modulus is None), modulus)


# ---------------------------------------------------------------------------
# public operations


def add(a: Series, b: Series) -> Series:
    m = _check_pair(a, b)
    n = min(a.precision, b.precision)
    return _wrap(m, builtins.map(_add, a.coeffs[:n], b.coeffs[:n]))


def sub(a: Series, b: Series) -> Series:
    m = _check_pair(a, b)
    n = min(a.precision, b.precision)
    return _wrap(m, builtins.map(_sub, a.coeffs[:n], b.coeffs[:n]))


def mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated to the smaller precision."""
    m = _check_pair(a, b)
    n = min(a.precision, b.precision)
    return _wrap(m, _product(a.coeffs, b.coeffs, n, m))


def _unit_inverse(c0: int, modulus: int | None) -> int:
    if modulus is None:
        if c0 not in (1, -1):
            raise ValueError(f"constant term {c0} is not a unit over the integers")
        return c0
    try:
        return builtins.pow(c0, -1, modulus)
    except ValueError:
        raise ValueError(f"constant term {c0} is not a unit modulo {modulus}") from None


def invert(a: Series) -> Series:
    """Multiplicative inverse to the precision of ``a``.

    Raises ValueError unless the constant term is a unit (+-1 over the
    integers, coprime to the modulus for a ModSeries).
    """
    m = _modulus_of(a)
    n = a.precision
    c = a.coeffs
    inv0 = _unit_inverse(c[0], m)
    if n <= _NEWTON_CUTOFF:
        b = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            s = 0
            for j in range(1, k + 1):
                if c[j]:
                    s += c[j] * b[k - j]
            b[k] = -inv0 * s
            if m is not None:
                b[k] %= m
        return _wrap(m, b)
    b = [inv0]
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        # e = a*b - 1 vanishes below q^k; b <- b - b*e
        e = _product(c[:k2], b, k2, m)
        e[0] -= 1
        t = _product(b, e, k2, m)
        b = b + [0] * (k2 - k)
        b = _reduce(list(builtins.map(_sub, b, t)), m)
        k = k2
    return _wrap(m, b)


def power(a: Series, e: int) -> Series:
    """``a**e`` for ``e >= 0`` by repeated squaring."""
    if e < 0:
        raise ValueError("negative exponent; invert explicitly")
    m = _modulus_of(a)
    n = a.precision
    result = [1 % m if m else 1] + [0] * (n - 1)
    base = list(a.coeffs)
    while e:
        if e & 1:
            result = _product(result, base, n, m)
        e >>= 1
        if e:
            base = _product(base, base, n, m)
    return _wrap(m, result)


def extract_progression(a: Series, A: int, B: int) -> Series:
    """Series whose n-th coefficient is ``a[A*n + B]``."""
    if A < 1:
        raise ValueError(f"progression modulus must be positive, got {A}")
    if not 0 <= B < A:
        raise ValueError(f"residue {B} outside [0, {A})")
    if B >= a.precision:
        raise ValueError(f"residue {B} beyond precision {a.precision}")
    return _wrap(_modulus_of(a), a.coeffs[B::A])


def shift(a: Series, k: int) -> Series:
    """Multiply by q^k, keeping the precision."""
    if k < 0:
        raise ValueError("shift must be non-negative")
    n = a.precision
    k = min(k, n)
    return _wrap(_modulus_of(a), (0,) * k + a.coeffs[:n - k])


def reduce_mod(a: Series, m: int) -> ModSeries:
    """Reduce coefficients into ``[0, m)``.

    A ModSeries can be reduced further only to a divisor of its modulus.
    """
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if isinstance(a, ModSeries) and a.modulus % m:
        raise ValueError(f"{m} does not divide modulus {a.modulus}")
    return ModSeries(m, a.coeffs)


def dump_csv(a: Series, n_max: int | None = None) -> str:
    """``n,coefficient`` lines for n = 0 .. n_max."""
    stop = a.precision if n_max is None else n_max + 1
    if stop > a.precision:
        raise ValueError(f"n_max {n_max} beyond precision {a.precision}")
    return "".join(f"{i},{c}\n" for i, c in enumerate(a.coeffs[:stop]))
