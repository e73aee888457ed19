"""Finite rings with unity whose additive group is Z_{n1} x ... x Z_{nk}.

Elements are dense mixed-radix indices (row-major over ``moduli``), so an
element set is just a set of integers in ``[0, |R|)``.  Multiplication is
held as an ``|R| x |R|`` index table for small rings and as a vectorized
closure otherwise.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence, Union

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import AxiomViolation, RingMismatch, SizeLimitExceeded, SpecError

log = logging.getLogger(__name__)

MulFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
ElementLike = Union["Element", int, np.integer, Sequence[int]]

_ROW_CHUNK = 256


class Element:
    """A ring element bound to its ring; supports ``+ - *`` and unary ``-``."""

    __slots__ = ("ring", "index")

    def __init__(self, ring: "FiniteRing", index: int):
        self.ring = ring
        self.index = int(index)

    @property
    def coords(self) -> tuple[int, ...]:
        return self.ring.decode(self.index)

    def _peer(self, other: object) -> int:
        if not isinstance(other, Element):
            return NotImplemented  # type: ignore[return-value]
        if other.ring is not self.ring:
            raise RingMismatch(f"cannot combine elements of {self.ring.label} and {other.ring.label}")
        return other.index

    def __add__(self, other: "Element") -> "Element":
        j = self._peer(other)
        if j is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring._add_idx(self.index, j))

    def __sub__(self, other: "Element") -> "Element":
        j = self._peer(other)
        if j is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring._add_idx(self.index, self.ring._neg_idx(j)))

    def __mul__(self, other: "Element") -> "Element":
        j = self._peer(other)
        if j is NotImplemented:
            return NotImplemented
        return Element(self.ring, self.ring._mul_idx(self.index, j))

    def __neg__(self) -> "Element":
        return Element(self.ring, self.ring._neg_idx(self.index))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and other.ring is self.ring and other.index == self.index

    def __hash__(self) -> int:
        return hash((id(self.ring), self.index))

    def __repr__(self) -> str:
        return f"Element({self.ring.label}, {self.coords})"


@dataclass(frozen=True)
class UnitSet:
    """The unit group R^x with a recorded two-sided inverse for each unit."""

    elements: frozenset[int]
    inverse: dict[int, int] = field(compare=False)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))


class FiniteRing:
    """A finite ring with unity. Treat instances as immutable."""

    def __init__(
        self,
        moduli: Sequence[int],
        mul: MulFn,
        one: int,
        label: str = "",
        *,
        limits: Limits = DEFAULT_LIMITS,
        verify: bool = True,
    ):
        moduli = tuple(int(m) for m in moduli)
        if not moduli or any(m < 1 for m in moduli):
            raise ValueError(f"moduli must be a non-empty list of positive integers, got {moduli}")
        self.moduli = moduli
        self.order = math.prod(moduli)
        if self.order > limits.size_limit:
            raise SizeLimitExceeded(f"|R| = {self.order} exceeds size_limit {limits.size_limit}")
        if not 0 <= one < self.order:
            raise ValueError(f"identity index {one} out of range")
        self.one = int(one)
        self.zero = 0
        self.label = label or "x".join(f"Z{m}" for m in moduli)
        self.limits = limits
        self.metadata: dict[str, str] = {}
        self._mul_fn = mul
        self._cache: dict = {}

        strides = np.ones(len(moduli), dtype=np.int64)
        for j in range(len(moduli) - 2, -1, -1):
            strides[j] = strides[j + 1] * moduli[j + 1]
        self.strides = strides
        self._mod = np.array(moduli, dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        self.coords = (idx[:, None] // strides[None, :]) % self._mod[None, :]
        self.coords.setflags(write=False)

        self._table: np.ndarray | None = None
        if self.order <= limits.table_threshold:
            self._table = self._build_table()
        if verify:
            self.metadata["axiom_check"] = verify_axioms(self)
        else:
            self.metadata["axiom_check"] = "skipped"

    # -- encoding -----------------------------------------------------------

    def encode(self, coords: Sequence[int]) -> int:
        c = np.asarray(coords, dtype=np.int64)
        if c.shape != (len(self.moduli),):
            raise ValueError(f"expected {len(self.moduli)} coordinates, got {tuple(coords)}")
        return int(((c % self._mod) * self.strides).sum())

    def encode_many(self, coords: np.ndarray) -> np.ndarray:
        return ((np.asarray(coords, dtype=np.int64) % self._mod) * self.strides).sum(axis=-1)

    def decode(self, index: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords[self.check_index(index)])

    def check_index(self, i: int) -> int:
        i = int(i)
        if not 0 <= i < self.order:
            raise ValueError(f"element index {i} outside [0, {self.order})")
        return i

    def index(self, x: ElementLike) -> int:
        """Normalize an Element, an index, or a coordinate tuple to an index."""
        if isinstance(x, Element):
            if x.ring is not self:
                raise RingMismatch(f"element of {x.ring.label} used with {self.label}")
            return x.index
        if isinstance(x, (int, np.integer)):
            return self.check_index(x)
        return self.encode(x)

    def element(self, x: ElementLike) -> Element:
        return Element(self, self.index(x))

    def elements(self) -> range:
        return range(self.order)

    # -- arithmetic ---------------------------------------------------------

    def _add_idx(self, a: int, b: int) -> int:
        return int(((self.coords[a] + self.coords[b]) % self._mod) @ self.strides)

    def _neg_idx(self, a: int) -> int:
        return int(((-self.coords[a]) % self._mod) @ self.strides)

    def _mul_idx(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[a, b])
        return int(self._mul_fn(np.array([a]), np.array([b]))[0])

    def add_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.encode_many(self.coords[a] + self.coords[b])

    def neg_many(self, a: np.ndarray) -> np.ndarray:
        return self.encode_many(-self.coords[a])

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._table is not None:
            return self._table[a, b].astype(np.int64)
        return np.asarray(self._mul_fn(a, b), dtype=np.int64)

    def translate(self, indices: np.ndarray, g: int) -> np.ndarray:
        """The coset ``indices + g``."""
        return self.encode_many(self.coords[indices] + self.coords[g])

    def _like(self, template: ElementLike, i: int):
        if isinstance(template, Element):
            return Element(self, i)
        if isinstance(template, (int, np.integer)):
            return i
        return self.decode(i)

    def add(self, a: ElementLike, b: ElementLike):
        return self._like(a, self._add_idx(self.index(a), self.index(b)))

    def neg(self, a: ElementLike):
        return self._like(a, self._neg_idx(self.index(a)))

    def sub(self, a: ElementLike, b: ElementLike):
        return self._like(a, self._add_idx(self.index(a), self._neg_idx(self.index(b))))

    def mul(self, a: ElementLike, b: ElementLike):
        return self._like(a, self._mul_idx(self.index(a), self.index(b)))

    def additive_order(self, x: ElementLike) -> int:
        c = self.coords[self.index(x)]
        return math.lcm(*(m // math.gcd(int(v), m) for v, m in zip(c, self.moduli)))

    # -- tables -------------------------------------------------------------

    def _build_table(self) -> np.ndarray:
        n = self.order
        dtype = np.int16 if n <= np.iinfo(np.int16).max else np.int32
        table = np.empty((n, n), dtype=dtype)
        cols = np.arange(n, dtype=np.int64)
        for start in range(0, n, _ROW_CHUNK):
            rows = np.arange(start, min(n, start + _ROW_CHUNK), dtype=np.int64)
            block = np.asarray(self._mul_fn(rows[:, None], cols[None, :]), dtype=np.int64)
            if block.min(initial=0) < 0 or block.max(initial=0) >= n:
                raise AxiomViolation("table", (int(start),), "product outside the ring")
            table[rows] = block
        table.setflags(write=False)
        return table

    @property
    def has_table(self) -> bool:
        return self._table is not None

    def table(self) -> np.ndarray:
        """The full multiplication table (built on demand for large rings)."""
        if self._table is not None:
            return self._table
        if "table" not in self._cache:
            self._cache["table"] = self._build_table()
        return self._cache["table"]

    def row(self, x: int) -> np.ndarray:
        """``x * r`` for every r."""
        if self._table is not None:
            return self._table[x].astype(np.int64)
        return self.mul_many(np.full(self.order, x), np.arange(self.order))

    def column(self, x: int) -> np.ndarray:
        """``r * x`` for every r."""
        if self._table is not None:
            return self._table[:, x].astype(np.int64)
        return self.mul_many(np.arange(self.order), np.full(self.order, x))

    def addition_table(self) -> np.ndarray:
        c = self.coords
        return self.encode_many(c[:, None, :] + c[None, :, :])

    @cached_property
    def is_commutative(self) -> bool:
        if self._table is not None:
            return bool(np.array_equal(self._table, self._table.T))
        return all(np.array_equal(self.row(x), self.column(x)) for x in range(self.order))

    def __repr__(self) -> str:
        return f"FiniteRing({self.label!r}, moduli={self.moduli})"


def verify_axioms(R: FiniteRing) -> str:
    """Check identity, associativity and both distributive laws.

    Exhaustive up to ``axiom_check_threshold`` elements; above that a fixed
    seed draws ``10 |R|`` random triples and the result is reported as
    ``"sampled"``.  Raises :class:`AxiomViolation` with a witness.
    """
    n = R.order
    all_idx = np.arange(n, dtype=np.int64)
    left = R.mul_many(np.full(n, R.one), all_idx)
    right = R.mul_many(all_idx, np.full(n, R.one))
    for prods in (left, right):
        bad = np.flatnonzero(prods != all_idx)
        if bad.size:
            x = int(bad[0])
            raise AxiomViolation("identity", (R.one, x, int(prods[x])), "one is not a two-sided identity")

    if n <= R.limits.axiom_check_threshold:
        T = R.table().astype(np.int64)
        A = R.addition_table()
        for a in range(n):
            lhs = T[T[a]]  # (ab)c indexed [b, c]
            rhs = T[a][T]  # a(bc)
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = bad[0]
                raise AxiomViolation("associativity", (a, int(b), int(c)))
            lhs = T[a][A]  # a(b+c)
            rhs = A[T[a][:, None], T[a][None, :]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = bad[0]
                raise AxiomViolation("distributivity", (a, int(b), int(c)), "left")
            lhs = T[:, a][A]  # (b+c)a
            rhs = A[T[:, a][:, None], T[:, a][None, :]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = bad[0]
                raise AxiomViolation("distributivity", (int(b), int(c), a), "right")
        return "exhaustive"

    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, 10 * n))
    ab_c = R.mul_many(R.mul_many(a, b), c)
    a_bc = R.mul_many(a, R.mul_many(b, c))
    bad = np.flatnonzero(ab_c != a_bc)
    if bad.size:
        k = bad[0]
        raise AxiomViolation("associativity", (int(a[k]), int(b[k]), int(c[k])))
    bc = R.add_many(b, c)
    lhs = R.mul_many(a, bc)
    rhs = R.add_many(R.mul_many(a, b), R.mul_many(a, c))
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        k = bad[0]
        raise AxiomViolation("distributivity", (int(a[k]), int(b[k]), int(c[k])), "left")
    lhs = R.mul_many(bc, a)
    rhs = R.add_many(R.mul_many(b, a), R.mul_many(c, a))
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        k = bad[0]
        raise AxiomViolation("distributivity", (int(b[k]), int(c[k]), int(a[k])), "right")
    R.metadata["warning"] = f"axioms spot-checked on {10 * n} random triples only"
    log.warning("%s: %s", R.label, R.metadata["warning"])
    return "sampled"


# -- constructors -----------------------------------------------------------


def make_zmod(n: int, *, limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    """The integers modulo ``n``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"Z_n needs n >= 1, got {n!r}")
    n = int(n)
    return FiniteRing((n,), lambda a, b: (a * b) % n, 1 % n, f"Z{n}", limits=limits)


def make_product(factors: Sequence[FiniteRing], *, limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    """Direct product with component-wise operations; moduli are concatenated."""
    factors = list(factors)
    if not factors:
        raise ValueError("product of an empty list of rings")
    orders = [F.order for F in factors]
    total = math.prod(orders)
    if total > limits.size_limit:
        raise SizeLimitExceeded(f"|R| = {total} exceeds size_limit {limits.size_limit}")
    weights = []
    w = 1
    for o in reversed(orders):
        weights.append(w)
        w *= o
    weights.reverse()

    def split(x: np.ndarray) -> list[np.ndarray]:
        return [(x // wt) % o for wt, o in zip(weights, orders)]

    def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = np.zeros(a.shape, dtype=np.int64)
        for F, wt, fa, fb in zip(factors, weights, split(a), split(b)):
            out += F.mul_many(fa, fb) * wt
        return out

    one = sum(F.one * wt for F, wt in zip(factors, weights))
    moduli = [m for F in factors for m in F.moduli]
    label = "(" + " x ".join(F.label for F in factors) + ")"
    return FiniteRing(moduli, mul, one, label, limits=limits)


def make_matrix_ring(base: FiniteRing, d: int, *, limits: Limits = DEFAULT_LIMITS) -> FiniteRing:
    """``d x d`` matrices over ``base``; entries stored row-major."""
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise ValueError(f"matrix size must be >= 1, got {d!r}")
    d = int(d)
    q = base.order
    if q ** (d * d) > limits.size_limit:
        raise SizeLimitExceeded(f"|M_{d}({base.label})| = {q}^{d * d} exceeds size_limit {limits.size_limit}")
    weights = np.array([q ** (d * d - 1 - e) for e in range(d * d)], dtype=np.int64)

    def entries(x: np.ndarray) -> np.ndarray:
        return ((x[..., None] // weights) % q).reshape(x.shape + (d, d))

    def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        A, B = entries(a), entries(b)
        C = np.empty_like(A)
        for i in range(d):
            for j in range(d):
                acc = base.mul_many(A[..., i, 0], B[..., 0, j])
                for k in range(1, d):
                    acc = base.add_many(acc, base.mul_many(A[..., i, k], B[..., k, j]))
                C[..., i, j] = acc
        return (C.reshape(a.shape + (d * d,)) * weights).sum(axis=-1)

    ident = np.full((d, d), base.zero, dtype=np.int64)
    np.fill_diagonal(ident, base.one)
    one = int((ident.reshape(-1) * weights).sum())
    moduli = list(base.moduli) * (d * d)
    return FiniteRing(moduli, mul, one, f"M{d}({base.label})", limits=limits)


def make_table_ring(
    moduli: Sequence[int],
    table: Sequence[Sequence[int]] | np.ndarray,
    one: int,
    label: str = "",
    *,
    limits: Limits = DEFAULT_LIMITS,
) -> FiniteRing:
    """A ring given by an explicit multiplication table on element indices.

    The table is always verified; a bad table raises :class:`AxiomViolation`.
    """
    n = math.prod(int(m) for m in moduli)
    T = np.array(table, dtype=np.int64)
    if T.shape != (n, n):
        raise SpecError(f"table must be {n}x{n} for moduli {tuple(moduli)}, got shape {T.shape}")
    if T.size and (T.min() < 0 or T.max() >= n):
        bad = np.argwhere((T < 0) | (T >= n))[0]
        raise AxiomViolation("table", (int(bad[0]), int(bad[1])), "entry outside [0, |R|)")
    if not 0 <= int(one) < n:
        raise SpecError(f"identity index {one} out of range")
    T.setflags(write=False)
    return FiniteRing(moduli, lambda a, b: T[a, b], int(one), label, limits=limits)


def units(R: FiniteRing) -> UnitSet:
    """All x with xy = yx = 1 for some y, with that y recorded.

    Both one-sided criteria are evaluated over every element and required to
    agree, as they must in a finite ring.
    """
    if "units" in R._cache:
        return R._cache["units"]
    n = R.order
    has_right = np.zeros(n, dtype=bool)  # exists y: xy = 1
    has_left = np.zeros(n, dtype=bool)  # exists y: yx = 1
    right_inv = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        hits = np.flatnonzero(R.row(x) == R.one)
        if hits.size:
            has_right[x] = True
            right_inv[x] = hits[0]
        has_left[x] = bool((R.column(x) == R.one).any())
    if not np.array_equal(has_left, has_right):
        x = int(np.flatnonzero(has_left != has_right)[0])
        raise AxiomViolation("identity", (x, R.one, x), "one-sided inverse without a two-sided one")
    inverse: dict[int, int] = {}
    for x in np.flatnonzero(has_right):
        y = int(right_inv[x])
        if R._mul_idx(y, int(x)) != R.one:
            raise AxiomViolation("associativity", (int(x), y, int(x)), "right inverse is not a left inverse")
        inverse[int(x)] = y
    result = UnitSet(frozenset(inverse), inverse)
    R._cache["units"] = result
    return result
