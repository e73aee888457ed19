"""Left, right and two-sided ideal lattices of a finite ring.

The lattice is enumerated as the closure of all principal ideals under
pairwise ideal sums (every ideal is the sum of the principal ideals of its
elements).  On top of it sit the Moebius-type function, the generalized
totient, maximal families and the index checks built from them.

Ideals are bitsets over element indices; inside a lattice they are also
numbered, and families of ideals are tuples of :class:`SideIdeal`.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import bitset
from .config import Limits
from .errors import (
    InvariantViolation,
    LatticeLimitExceeded,
    MaximalFamilyTooLarge,
    SideMismatch,
)
from .ring import ElementLike, FiniteRing


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    TWOSIDED = "twosided"

    @classmethod
    def parse(cls, s: "str | Side") -> "Side":
        if isinstance(s, Side):
            return s
        key = str(s).strip().lower().replace("-", "").replace("_", "")
        aliases = {"l": "left", "r": "right", "t": "twosided", "two": "twosided", "both": "twosided"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown side {s!r}; expected left, right or twosided") from None


class OutsidePremiseWarning(UserWarning):
    """phi_R evaluated where the maximal family is not a minimal subset of itself."""


@dataclass(frozen=True)
class SideIdeal:
    side: Side
    mask: int
    size: int
    order: int = field(compare=False, repr=False)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(int(i) for i in bitset.to_indices(self.mask, self.order))

    def indices(self) -> np.ndarray:
        return bitset.to_indices(self.mask, self.order)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.order and bitset.contains(self.mask, x)

    def __le__(self, other: "SideIdeal") -> bool:
        return bitset.is_subset(self.mask, other.mask)

    def __lt__(self, other: "SideIdeal") -> bool:
        return self.mask != other.mask and bitset.is_subset(self.mask, other.mask)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        els = self.elements
        shown = ", ".join(map(str, els[:8])) + (", ..." if len(els) > 8 else "")
        return f"SideIdeal({self.side.value}, size={self.size}, {{{shown}}})"


def _ideal(R: FiniteRing, side: Side, mask: int) -> SideIdeal:
    return SideIdeal(side, mask, bitset.size(mask), R.order)


# -- additive subgroups -----------------------------------------------------


def span(R: FiniteRing, gens: Iterable[int], start: int = 1) -> int:
    """Mask of the additive subgroup generated by ``gens`` and the subgroup ``start``."""
    flags = bitset.to_bool(start, R.order)
    flags[0] = True
    for g in gens:
        g = int(g)
        if flags[g]:
            continue
        base = np.flatnonzero(flags)
        old = flags.copy()
        h = g
        while not old[h]:
            flags[R.translate(base, h)] = True
            h = R._add_idx(h, g)
    return bitset.from_bool(flags)


def subgroup_sum(R: FiniteRing, a: int, b: int) -> int:
    """A + B for additive subgroups given as masks."""
    if bitset.is_subset(a, b):
        return b
    if bitset.is_subset(b, a):
        return a
    a_idx = bitset.to_indices(a, R.order)
    flags = bitset.to_bool(a, R.order)
    for g in bitset.to_indices(b, R.order):
        if not flags[g]:
            flags[R.translate(a_idx, int(g))] = True
    return bitset.from_bool(flags)


def is_subgroup(R: FiniteRing, mask: int) -> bool:
    if not bitset.contains(mask, 0):
        return False
    idx = bitset.to_indices(mask, R.order)
    flags = bitset.to_bool(mask, R.order)
    return all(flags[R.translate(idx, int(g))].all() for g in idx)


# -- principal ideals and bracket classes -----------------------------------


def _principal_mask(R: FiniteRing, x: int, side: Side) -> int:
    if side is Side.LEFT:
        return bitset.from_indices(np.unique(R.column(x)), R.order)
    if side is Side.RIGHT:
        return bitset.from_indices(np.unique(R.row(x)), R.order)
    left = np.unique(R.column(x))
    prods = np.unique(np.concatenate([R.row(int(y)) for y in left]))
    return span(R, prods)


def principal_masks(R: FiniteRing, side: Side | str) -> list[int]:
    """Masks of (x)_side for every element x, cached on the ring."""
    side = Side.parse(side)
    key = ("principal", side)
    if key not in R._cache:
        R._cache[key] = [_principal_mask(R, x, side) for x in range(R.order)]
    return R._cache[key]


def principal_ideal(R: FiniteRing, x: ElementLike, side: Side | str) -> SideIdeal:
    """Rx, xR, or the additive closure of RxR."""
    side = Side.parse(side)
    return _ideal(R, side, principal_masks(R, side)[R.index(x)])


def bracket_class(R: FiniteRing, x: ElementLike, side: Side | str) -> frozenset[int]:
    """All y generating the same principal ``side`` ideal as x."""
    masks = principal_masks(R, side)
    target = masks[R.index(x)]
    return frozenset(y for y, m in enumerate(masks) if m == target)


# -- the lattice ------------------------------------------------------------


class IdealLattice:
    """All ideals of one side, in canonical order (size, then elements)."""

    def __init__(self, ring: FiniteRing, side: Side, masks: Sequence[int], limits: Limits):
        self.ring = ring
        self.side = side
        self.limits = limits
        order = sorted(masks, key=lambda m: (bitset.size(m), tuple(bitset.to_indices(m, ring.order))))
        self.ideals: tuple[SideIdeal, ...] = tuple(_ideal(ring, side, m) for m in order)
        self._pos = {I.mask: i for i, I in enumerate(self.ideals)}
        # below[i]: bitset over ideal positions j with ideals[j] <= ideals[i]
        self.below: list[int] = []
        for I in self.ideals:
            b = 0
            for j, K in enumerate(self.ideals):
                if bitset.is_subset(K.mask, I.mask):
                    b |= 1 << j
            self.below.append(b)
        pm = principal_masks(ring, side)
        self.principal_of = np.array([self._pos[m] for m in pm], dtype=np.int64)
        self._cache: dict = {}

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def __contains__(self, I: object) -> bool:
        return isinstance(I, SideIdeal) and I.side is self.side and I.mask in self._pos

    def position(self, I: SideIdeal | int) -> int:
        mask = I if isinstance(I, int) else I.mask
        if isinstance(I, SideIdeal) and I.side is not self.side:
            raise SideMismatch(f"{I.side.value} ideal used with a {self.side.value} lattice")
        try:
            return self._pos[mask]
        except KeyError:
            raise KeyError("not an ideal of this lattice") from None

    def ideal_of(self, mask: int) -> SideIdeal:
        return self.ideals[self.position(mask)]

    @property
    def zero(self) -> SideIdeal:
        return self.ideals[0]

    @property
    def top(self) -> SideIdeal:
        return self.ideals[-1]

    def principal(self, x: ElementLike) -> SideIdeal:
        return self.ideals[int(self.principal_of[self.ring.index(x)])]

    def generators(self, I: SideIdeal) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.principal_of == self.position(I)))

    def subideals(self, J: SideIdeal, strict: bool = False) -> list[SideIdeal]:
        j = self.position(J)
        b = self.below[j]
        if strict:
            b &= ~(1 << j)
        return [self.ideals[i] for i in range(len(self.ideals)) if (b >> i) & 1]

    def meet(self, I: SideIdeal, J: SideIdeal) -> SideIdeal:
        return self.ideal_of(I.mask & J.mask)

    def join(self, I: SideIdeal, J: SideIdeal) -> SideIdeal:
        return self.ideal_of(subgroup_sum(self.ring, I.mask, J.mask))

    def records(self) -> list[dict]:
        """Stable dump: one record per ideal."""
        out = []
        for I in self.ideals:
            gens = self.generators(I)
            out.append(
                {
                    "side": self.side.value,
                    "size": I.size,
                    "elements": list(I.elements),
                    "is_principal": bool(gens),
                    "generators": list(gens),
                }
            )
        return out


def enumerate_lattice(R: FiniteRing, side: Side | str, limits: Limits | None = None) -> IdealLattice:
    """Every ``side`` ideal of R, verified closed under sum and intersection."""
    side = Side.parse(side)
    limits = limits or R.limits
    key = ("lattice", side, limits)
    if key in R._cache:
        return R._cache[key]
    seeds = list(dict.fromkeys(principal_masks(R, side)))
    if len(seeds) > limits.lattice_limit:
        raise LatticeLimitExceeded(limits.lattice_limit, len(seeds))
    masks = list(seeds)
    known = set(masks)
    i = 0
    while i < len(masks):
        a = masks[i]
        for j in range(i):
            s = subgroup_sum(R, a, masks[j])
            if s not in known:
                known.add(s)
                masks.append(s)
                if len(masks) > limits.lattice_limit:
                    raise LatticeLimitExceeded(limits.lattice_limit, len(masks))
        i += 1
    full = (1 << R.order) - 1
    if 1 not in known or full not in known:
        raise InvariantViolation("lattice misses the zero ideal or the whole ring")
    for a, b in combinations(masks, 2):
        if a & b not in known:
            raise InvariantViolation("ideal lattice not closed under intersection")
    lat = IdealLattice(R, side, masks, limits)
    R._cache[key] = lat
    return lat


# -- lattice quantities -----------------------------------------------------


def ideal_interior(lattice: IdealLattice, I: SideIdeal) -> frozenset[int]:
    """I minus every lattice ideal strictly inside it."""
    union = 0
    for K in lattice.subideals(I, strict=True):
        union |= K.mask
    return frozenset(int(x) for x in bitset.to_indices(I.mask & ~union, lattice.ring.order))


@dataclass(frozen=True)
class MaximalFamily:
    parent: SideIdeal
    members: tuple[SideIdeal, ...]

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, M: object) -> bool:
        return M in self.members


def maximal_family(lattice: IdealLattice, J: SideIdeal) -> MaximalFamily:
    """Lattice ideals properly inside J with nothing strictly between them and J."""
    key = ("maximal", J.mask)
    if key not in lattice._cache:
        proper = lattice.subideals(J, strict=True)
        members = tuple(
            M for M in proper if not any(M < N for N in proper)
        )
        lattice._cache[key] = MaximalFamily(J, members)
    return lattice._cache[key]


def maximal_between(lattice: IdealLattice, J: SideIdeal, I: SideIdeal) -> MaximalFamily:
    """Maximal ideals of J that contain I."""
    if not I <= J:
        raise ValueError("maximal_between needs I contained in J")
    fam = maximal_family(lattice, J)
    return MaximalFamily(J, tuple(M for M in fam if I <= M))


def _meet_mask(family: Iterable[SideIdeal]) -> int | None:
    acc = None
    for M in family:
        acc = M.mask if acc is None else acc & M.mask
    return acc


def intersection(lattice: IdealLattice, family: Iterable[SideIdeal], parent: SideIdeal) -> SideIdeal:
    """Intersection of ``family``; the empty family gives ``parent``."""
    m = _meet_mask(family)
    return parent if m is None else lattice.ideal_of(m)


def is_minimal_subset(
    lattice: IdealLattice, m1: Iterable[SideIdeal], m2: Iterable[SideIdeal]
) -> bool:
    """m1 within m2, same intersection, and no proper subfamily of m1 reaches it.

    Intersections only grow when members are dropped, so it suffices to try
    each leave-one-out subfamily.  The empty family intersects to the parent,
    which every member is strictly below, hence never equals a nonempty meet.
    """
    m1 = tuple(dict.fromkeys(m1))
    m2 = tuple(dict.fromkeys(m2))
    if not set(m1) <= set(m2):
        return False
    target = _meet_mask(m1)
    if target != _meet_mask(m2):
        return False
    for k in range(len(m1)):
        if _meet_mask(m1[:k] + m1[k + 1 :]) == target:
            return False
    return True


def is_self_minimal(lattice: IdealLattice, J: SideIdeal) -> bool:
    fam = maximal_family(lattice, J).members
    return is_minimal_subset(lattice, fam, fam)


def is_meet_of_maximals(lattice: IdealLattice, I: SideIdeal, J: SideIdeal) -> bool:
    """I is the intersection of some nonempty set of maximal ideals of J."""
    if not I < J:
        return False
    between = maximal_between(lattice, J, I).members
    return bool(between) and _meet_mask(between) == I.mask


def _check_subset_limit(lattice: IdealLattice, size: int) -> None:
    if size > lattice.limits.mobius_subset_limit:
        raise MaximalFamilyTooLarge(size, lattice.limits.mobius_subset_limit)


def iter_meets(
    lattice: IdealLattice, family: Sequence[SideIdeal], full_mask: int
) -> Iterable[tuple[int, int]]:
    """(intersection mask, |E|) for every subfamily E; empty E gives ``full_mask``."""
    _check_subset_limit(lattice, len(family))
    masks = [M.mask for M in family]
    stack = [(0, full_mask, 0)]
    while stack:
        start, acc, k = stack.pop()
        yield acc, k
        for i in range(start, len(masks)):
            stack.append((i + 1, acc & masks[i], k + 1))


def mobius_column(lattice: IdealLattice, J: SideIdeal) -> dict[int, int]:
    """{mask of I: mu_R(I, J)} for every I with a nonzero value.

    mu_R(I, J) is the signed count of subfamilies E of the maximal family of
    J with meet I, sign (-1)^|E|; the empty family stands for J itself.
    """
    key = ("mu", J.mask)
    if key not in lattice._cache:
        col: dict[int, int] = {}
        fam = maximal_family(lattice, J).members
        for m, k in iter_meets(lattice, fam, J.mask):
            col[m] = col.get(m, 0) + (-1 if k % 2 else 1)
        lattice._cache[key] = {m: v for m, v in col.items() if v}
    return lattice._cache[key]


def mobius_R(lattice: IdealLattice, I: SideIdeal, J: SideIdeal) -> int:
    if I.side is not lattice.side or J.side is not lattice.side:
        raise SideMismatch("mixed sides in a Moebius query")
    if not I <= J:
        return 0
    return mobius_column(lattice, J).get(I.mask, 0)


def mobius_delta_check(lattice: IdealLattice, K: SideIdeal, J: SideIdeal) -> int:
    """Sum of mu_R(I, J) over lattice ideals K <= I <= J."""
    if not K <= J:
        raise ValueError("mobius_delta_check needs K contained in J")
    return sum(mobius_R(lattice, I, J) for I in lattice.subideals(J) if K <= I)


def phi_R_alternating(lattice: IdealLattice, I: SideIdeal, J: SideIdeal) -> int:
    """The inclusion-exclusion expansion of the product over maximal_between(J, I)."""
    fam = maximal_between(lattice, J, I).members
    _check_subset_limit(lattice, len(fam))
    ratios = [J.size // M.size for M in fam]
    total = 0
    for k in range(len(ratios) + 1):
        for E in combinations(range(len(ratios)), k):
            total += (-1) ** (len(ratios) - k) * math.prod(ratios[i] for i in E)
    return total


def phi_R(lattice: IdealLattice, I: SideIdeal, J: SideIdeal) -> int:
    """Generalized totient: prod(|J|/|M| - 1) over maximal ideals of J above I.

    Returns 1 when I = J or when I is not a meet of maximal ideals of J.
    When J's maximal family is not a minimal subset of itself the value is
    still computed but an :class:`OutsidePremiseWarning` is emitted.
    """
    if not I <= J:
        raise ValueError("phi_R needs I contained in J")
    if not is_self_minimal(lattice, J):
        warnings.warn(
            f"outside-paper-premise: maximal family of ideal of size {J.size} is not a minimal subset of itself",
            OutsidePremiseWarning,
            stacklevel=2,
        )
    if I == J or not is_meet_of_maximals(lattice, I, J):
        return 1
    fam = maximal_between(lattice, J, I).members
    value = math.prod(J.size // M.size - 1 for M in fam)
    alt = phi_R_alternating(lattice, I, J)
    if alt != value:
        raise InvariantViolation(f"phi_R product {value} != alternating sum {alt}")
    return value


Value = Callable[[SideIdeal], object] | Mapping[SideIdeal, object]


def _as_fn(f: Value) -> Callable[[SideIdeal], object]:
    return f.__getitem__ if isinstance(f, Mapping) else f


def mobius_inversion(lattice: IdealLattice, f: Value) -> dict[SideIdeal, object]:
    """g(J) = sum over I <= J of f(I) mu_R(I, J)."""
    fn = _as_fn(f)
    fvals = {I: fn(I) for I in lattice}
    return {
        J: sum((fvals[I] * mobius_R(lattice, I, J) for I in lattice.subideals(J)), 0)
        for J in lattice
    }


def zeta_transform(lattice: IdealLattice, g: Value) -> dict[SideIdeal, object]:
    """f(J) = sum over I <= J of g(I)."""
    fn = _as_fn(g)
    gvals = {I: fn(I) for I in lattice}
    return {J: sum((gvals[I] for I in lattice.subideals(J)), 0) for J in lattice}


class CRTCheck(NamedTuple):
    lhs: int
    rhs: int
    minimal: bool


def crt_index_check(lattice: IdealLattice, J: SideIdeal, family: Iterable[SideIdeal]) -> CRTCheck:
    """|J| / |meet(family)| against prod |J|/|M|, plus self-minimality."""
    family = tuple(dict.fromkeys(family))
    maxes = maximal_family(lattice, J).members
    if not all(M in maxes for M in family):
        raise ValueError("family must consist of maximal ideals of J")
    meet = intersection(lattice, family, J)
    lhs = J.size // meet.size
    rhs = math.prod(J.size // M.size for M in family)
    return CRTCheck(lhs, rhs, is_minimal_subset(lattice, family, family))
