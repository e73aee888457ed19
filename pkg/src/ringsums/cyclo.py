"""Exact arithmetic in Z[w_L], w_L = exp(2 pi i / L).

Values are coefficient vectors reduced modulo the L-th cyclotomic
polynomial, so equality is equality of integer tuples.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Union

import numpy as np

# full power table while L * phi(L) stays below this many entries
_FULL_TABLE_ENTRIES = 4_000_000


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _divide_exact(p: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Quotient of integer polynomials (ascending coefficients), m monic."""
    deg = len(m) - 1
    r = p.copy()
    q = np.zeros(len(p) - deg, dtype=np.int64)
    for i in range(len(p) - 1, deg - 1, -1):
        c = r[i]
        if c:
            q[i - deg] = c
            r[i - deg : i + 1] -= c * m
    if np.any(r):
        raise ArithmeticError("cyclotomic division left a remainder")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial.

    Computed as ``x^n - 1`` divided by every ``Phi_d`` with ``d | n, d < n``.
    """
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    p = np.zeros(n + 1, dtype=np.int64)
    p[0], p[n] = -1, 1
    for d in _divisors(n)[:-1]:
        p = _divide_exact(p, np.array(cyclotomic_poly(d), dtype=np.int64))
    return tuple(int(c) for c in p)


class CycloField:
    """Reduction data for one conductor L."""

    def __init__(self, level: int):
        if level < 1:
            raise ValueError("conductor must be positive")
        self.level = level
        self.poly = np.array(cyclotomic_poly(level), dtype=np.int64)
        self.degree = len(self.poly) - 1
        self._full = level * self.degree <= _FULL_TABLE_ENTRIES
        self._powers: dict[int, np.ndarray] = {}
        self.table: np.ndarray | None = None
        if self._full:
            self.table = self._power_chain(level)

    def _power_chain(self, count: int) -> np.ndarray:
        D = self.degree
        out = np.zeros((count, D), dtype=np.int64)
        v = np.zeros(D, dtype=np.int64)
        v[0] = 1
        for e in range(count):
            out[e] = v
            carry = v[-1]
            v = np.concatenate(([0], v[:-1]))
            if carry:
                v -= carry * self.poly[:D]
        return out

    def power(self, e: int) -> np.ndarray:
        """Coefficients of w^e."""
        e %= self.level
        if self.table is not None:
            return self.table[e]
        if e not in self._powers:
            self._powers[e] = self._reduce(np.eye(1, e + 1, e, dtype=np.int64)[0])
        return self._powers[e]

    def _reduce(self, coeffs: Iterable[int]) -> np.ndarray:
        D = self.degree
        r = [int(c) for c in coeffs]
        poly = [int(c) for c in self.poly]
        for i in range(len(r) - 1, D - 1, -1):
            c = r[i]
            if c:
                for j in range(D + 1):
                    r[i - D + j] -= c * poly[j]
        r = (r + [0] * D)[:D]
        return np.array(r, dtype=np.int64) if all(abs(x) < 2**62 for x in r) else np.array(r, dtype=object)

    def reduce(self, coeffs: Iterable[int]) -> "CycloValue":
        return CycloValue(self.level, tuple(int(c) for c in self._reduce(coeffs)))

    def root(self, e: int) -> "CycloValue":
        return CycloValue(self.level, tuple(int(c) for c in self.power(e)))

    def integer(self, v: int) -> "CycloValue":
        return CycloValue(self.level, (int(v),) + (0,) * (self.degree - 1))

    def from_exponent_counts(self, counts: np.ndarray) -> "CycloValue":
        """The sum of ``counts[e]`` copies of w^e."""
        counts = np.asarray(counts, dtype=np.int64)
        nz = np.flatnonzero(counts)
        if self.table is not None:
            acc = counts[nz] @ self.table[nz] if nz.size else np.zeros(self.degree, dtype=np.int64)
        else:
            acc = np.zeros(self.degree, dtype=np.int64)
            for e in nz:
                acc = acc + counts[e] * self.power(int(e))
        return CycloValue(self.level, tuple(int(c) for c in acc))

    def from_exponents(self, exponents: np.ndarray) -> "CycloValue":
        return self.from_exponent_counts(np.bincount(np.asarray(exponents) % self.level, minlength=self.level))


@lru_cache(maxsize=64)
def cyclo_field(level: int) -> CycloField:
    return CycloField(level)


Number = Union[int, "CycloValue"]


class CycloValue:
    """An element of Z[w_L] in canonical reduced form."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: tuple[int, ...]):
        self.level = level
        self.coeffs = coeffs

    @classmethod
    def of(cls, level: int, v: int) -> "CycloValue":
        return cyclo_field(level).integer(v)

    @property
    def field(self) -> CycloField:
        return cyclo_field(self.level)

    def _lift(self, other: Number) -> "CycloValue":
        if isinstance(other, CycloValue):
            if other.level != self.level:
                raise ValueError(f"conductor mismatch: {self.level} vs {other.level}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.integer(int(other))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Number) -> "CycloValue":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return CycloValue(self.level, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloValue":
        return CycloValue(self.level, tuple(-a for a in self.coeffs))

    def __sub__(self, other: Number) -> "CycloValue":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Number) -> "CycloValue":
        return (-self) + other

    def __mul__(self, other: Number) -> "CycloValue":
        if isinstance(other, (int, np.integer)):
            return CycloValue(self.level, tuple(int(other) * a for a in self.coeffs))
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        prod = [0] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        return self.field.reduce(prod)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloValue):
            return self.level == other.level and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.is_integer and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_integer:
            return hash(self.coeffs[0])
        return hash((self.level, self.coeffs))

    @property
    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def conjugate(self) -> "CycloValue":
        F = self.field
        acc = np.zeros(F.degree, dtype=np.int64)
        for j, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * F.power(-j)
        return CycloValue(self.level, tuple(int(c) for c in acc))

    @property
    def is_real(self) -> bool:
        return self.conjugate() == self

    def to_complex(self) -> complex:
        L = self.level
        re = math.fsum(c * math.cos(2 * math.pi * j / L) for j, c in enumerate(self.coeffs))
        im = math.fsum(c * math.sin(2 * math.pi * j / L) for j, c in enumerate(self.coeffs))
        return complex(re, im)

    @property
    def real(self) -> float:
        return self.to_complex().real

    @property
    def imag(self) -> float:
        return self.to_complex().imag

    def sort_key(self) -> tuple:
        z = self.to_complex()
        return (-round(z.real, 9), round(z.imag, 9), self.coeffs)

    def to_json(self) -> dict:
        if self.is_integer:
            return {"int": self.coeffs[0]}
        return {"level": self.level, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict, level: int | None = None) -> "CycloValue":
        if "int" in data:
            if level is None:
                raise ValueError("integer form needs an explicit conductor")
            return cls.of(level, int(data["int"]))
        return cls(int(data["level"]), tuple(int(c) for c in data["coeffs"]))

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            terms.append(("-" if c < 0 else "+") + body)
        s = "".join(terms).lstrip("+")
        return f"{s} (w=w{self.level})"

    def __repr__(self) -> str:
        return f"CycloValue({self.level}, {self.coeffs})"
