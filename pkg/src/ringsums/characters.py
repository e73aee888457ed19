"""Additive characters and generalized Ramanujan sums.

Every character value lives in Z[w_L] with L the lcm of the additive
moduli.  ``psi_alpha(x) = w_L^e`` where ``e = sum_j (L/n_j) alpha_j x_j``.

The Ramanujan sum C_alpha(x) over the bracket class [x] is evaluated by
direct summation (the oracle) and by the lattice formulas: the three-branch
subset-sum theorem, the Moebius/totient closed form, and their right and
two-sided counterparts.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import bitset
from .cyclo import CycloField, CycloValue, cyclo_field
from .errors import (
    DivisibilityViolation,
    NotASubgroup,
    PremiseNotMet,
    SideMismatch,
    UniquenessViolation,
)
from .lattice import (
    IdealLattice,
    Side,
    SideIdeal,
    bracket_class,
    ideal_interior,
    is_self_minimal,
    is_subgroup,
    iter_meets,
    maximal_family,
    mobius_R,
    phi_R,
)
from .ring import ElementLike, FiniteRing


def conductor(R: FiniteRing) -> int:
    return math.lcm(*R.moduli)


def ring_field(R: FiniteRing) -> CycloField:
    return cyclo_field(conductor(R))


def _scale(R: FiniteRing) -> np.ndarray:
    L = conductor(R)
    return np.array([L // m for m in R.moduli], dtype=np.int64)


def pairing_row(R: FiniteRing, alpha: int) -> np.ndarray:
    """Exponent of psi_alpha(y) for every y, as integers mod L."""
    key = ("pairing", alpha)
    if key not in R._cache:
        w = R.coords[alpha] * _scale(R)
        row = (R.coords @ w) % conductor(R)
        row.setflags(write=False)
        R._cache[key] = row
    return R._cache[key]


def psi(R: FiniteRing, alpha: ElementLike, x: ElementLike) -> CycloValue:
    """The additive character psi_alpha evaluated at x."""
    a, b = R.index(alpha), R.index(x)
    e = int((R.coords[a] * _scale(R)) @ R.coords[b]) % conductor(R)
    return ring_field(R).root(e)


def character_sum(R: FiniteRing, alpha: ElementLike, elements: Iterable[int]) -> CycloValue:
    idx = np.fromiter((int(s) for s in elements), dtype=np.int64)
    exps = pairing_row(R, R.index(alpha))[idx]
    return ring_field(R).from_exponent_counts(np.bincount(exps, minlength=conductor(R)))


def cyclic_subgroup(R: FiniteRing, alpha: ElementLike) -> frozenset[int]:
    """<alpha>: all integer multiples of alpha."""
    a = R.index(alpha)
    out = [0]
    h = a
    while h != 0:
        out.append(h)
        h = R._add_idx(h, a)
    return frozenset(out)


@dataclass(frozen=True)
class PerpSet:
    source: frozenset[int]
    elements: frozenset[int]

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def _perp_mask(R: FiniteRing, S: np.ndarray) -> int:
    L = conductor(R)
    weights = R.coords[S] * _scale(R)  # |S| x k
    ok = np.ones(R.order, dtype=bool)
    for start in range(0, len(S), 256):
        block = (weights[start : start + 256] @ R.coords.T) % L
        ok &= ~block.any(axis=0)
    return bitset.from_bool(ok)


def perp(R: FiniteRing, S: Iterable[int]) -> PerpSet:
    """S-perp: the x with psi_s(x) = 1 for every s in the subgroup S."""
    src = frozenset(int(s) for s in S)
    mask = bitset.from_indices(np.fromiter(src, dtype=np.int64), R.order)
    if not src or not is_subgroup(R, mask):
        raise NotASubgroup("perp needs an additive subgroup")
    out = _perp_mask(R, np.fromiter(sorted(src), dtype=np.int64))
    return PerpSet(src, frozenset(int(i) for i in bitset.to_indices(out, R.order)))


def alpha_perp_mask(R: FiniteRing, alpha: int) -> int:
    """Mask of <alpha>-perp, cached per alpha."""
    key = ("aperp", alpha)
    if key not in R._cache:
        S = np.fromiter(sorted(cyclic_subgroup(R, alpha)), dtype=np.int64)
        R._cache[key] = _perp_mask(R, S)
    return R._cache[key]


def largest_ideal_in(lattice: IdealLattice, H: int | Iterable[int]) -> SideIdeal:
    """The unique largest lattice ideal inside the subgroup H.

    Every other candidate must lie inside the returned one; otherwise
    :class:`UniquenessViolation` is raised.
    """
    R = lattice.ring
    mask = H if isinstance(H, int) else bitset.from_indices(np.fromiter(H, dtype=np.int64), R.order)
    inside = [I for I in lattice.ideals if bitset.is_subset(I.mask, mask)]
    best = max(inside, key=lambda I: I.size)
    for I in inside:
        if not I <= best:
            raise UniquenessViolation(
                f"ideals of size {I.size} and {best.size} are both maximal inside the subgroup"
            )
    return best


def f_alpha(lattice: IdealLattice, alpha: ElementLike, I: SideIdeal) -> CycloValue:
    """Character sum over I; checked against |I| or 0 by membership of alpha in I-perp."""
    R = lattice.ring
    a = R.index(alpha)
    direct = character_sum(R, a, I.elements)
    closed = I.size if bitset.contains(_perp_mask(R, I.indices()), a) else 0
    if direct != closed:
        raise AssertionError(f"f_alpha mismatch: direct {direct} vs closed form {closed}")
    return direct


def g_alpha(lattice: IdealLattice, alpha: ElementLike, I: SideIdeal) -> CycloValue:
    """Character sum over the interior of I."""
    return character_sum(lattice.ring, alpha, ideal_interior(lattice, I))


def ramanujan_bruteforce(R: FiniteRing, alpha: ElementLike, x: ElementLike, side: Side | str = Side.LEFT) -> CycloValue:
    """C_alpha(x) by summing psi_alpha over the bracket class of x."""
    return character_sum(R, alpha, bracket_class(R, x, side))


# -- formula routes ---------------------------------------------------------


class Branch(str, enum.Enum):
    FULL = "FULL"
    SUBSET_SUM = "SUBSET_SUM"
    ZERO = "ZERO"


@dataclass(frozen=True)
class RamanujanResult:
    value: CycloValue
    K: SideIdeal
    branch: Branch
    minimal_premise: bool


def pivot_ideal(lattice: IdealLattice, alpha: ElementLike, x: ElementLike) -> SideIdeal:
    """K: the largest lattice ideal inside (x) and <alpha>-perp."""
    R = lattice.ring
    J = lattice.principal(x)
    return largest_ideal_in(lattice, J.mask & alpha_perp_mask(R, R.index(alpha)))


def bracket_size(lattice: IdealLattice, J: SideIdeal) -> int:
    key = ("interior_size", J.mask)
    if key not in lattice._cache:
        lattice._cache[key] = len(ideal_interior(lattice, J))
    return lattice._cache[key]


def subset_sum(lattice: IdealLattice, J: SideIdeal, K: SideIdeal) -> int:
    """Sum over subfamilies E of J's maximal ideals with meet inside K of |meet E| (-1)^|E|."""
    total = 0
    fam = maximal_family(lattice, J).members
    for m, k in iter_meets(lattice, fam, J.mask):
        if bitset.is_subset(m, K.mask):
            total += (-1 if k % 2 else 1) * bitset.size(m)
    return total


def mobius_sum(lattice: IdealLattice, alpha: ElementLike, x: ElementLike) -> int:
    """Sum of |I| mu_R(I, (x)) over lattice ideals I inside (x) and <alpha>-perp."""
    R = lattice.ring
    J = lattice.principal(x)
    H = J.mask & alpha_perp_mask(R, R.index(alpha))
    return sum(I.size * mobius_R(lattice, I, J) for I in lattice.subideals(J) if bitset.is_subset(I.mask, H))


def _theorem(lattice: IdealLattice, alpha: ElementLike, x: ElementLike) -> RamanujanResult:
    F = ring_field(lattice.ring)
    J = lattice.principal(x)
    K = pivot_ideal(lattice, alpha, x)
    fam = maximal_family(lattice, J).members
    minimal = is_self_minimal(lattice, J)
    if K == J:
        return RamanujanResult(F.integer(bracket_size(lattice, J)), K, Branch.FULL, minimal)
    meet_all = J.mask
    for M in fam:
        meet_all &= M.mask
    if bitset.is_subset(meet_all, K.mask):
        return RamanujanResult(F.integer(subset_sum(lattice, J, K)), K, Branch.SUBSET_SUM, minimal)
    return RamanujanResult(F.integer(0), K, Branch.ZERO, minimal)


def _require(lattice: IdealLattice, side: Side) -> None:
    if lattice.side is not side:
        raise SideMismatch(f"expected a {side.value} lattice, got {lattice.side.value}")


def ramanujan_theorem(lattice: IdealLattice, alpha: ElementLike, x: ElementLike) -> RamanujanResult:
    """C_alpha(x) via the three-branch formula on the left ideal lattice.

    FULL when K = (x), the signed subset sum when K contains the meet of all
    maximal ideals of (x), and 0 otherwise.
    """
    _require(lattice, Side.LEFT)
    return _theorem(lattice, alpha, x)


def ramanujan_right(lattice: IdealLattice, alpha: ElementLike, x: ElementLike) -> RamanujanResult:
    """Right-ideal mirror of :func:`ramanujan_theorem`."""
    _require(lattice, Side.RIGHT)
    return _theorem(lattice, alpha, x)


def _closed(lattice: IdealLattice, alpha: ElementLike, x: ElementLike, minimal: bool) -> RamanujanResult:
    J = lattice.principal(x)
    K = pivot_ideal(lattice, alpha, x)
    mu = mobius_R(lattice, K, J)
    phi = phi_R(lattice, K, J)
    num = mu * bracket_size(lattice, J)
    q, r = divmod(num, phi)
    if r:
        raise DivisibilityViolation(f"{num} is not divisible by phi_R = {phi}")
    if K == J:
        branch = Branch.FULL
    elif mu:
        branch = Branch.SUBSET_SUM
    else:
        branch = Branch.ZERO
    return RamanujanResult(ring_field(lattice.ring).integer(q), K, branch, minimal)


def ramanujan_closed_form(lattice: IdealLattice, alpha: ElementLike, x: ElementLike) -> RamanujanResult:
    """mu_R(K, (x)) |[x]| / phi_R(K, (x)); needs (x)'s maximal family to be self-minimal."""
    if lattice.side is Side.TWOSIDED:
        return ramanujan_twosided(lattice, alpha, x)
    J = lattice.principal(x)
    if not is_self_minimal(lattice, J):
        raise PremiseNotMet(
            f"maximal family of ({lattice.ring.decode(lattice.ring.index(x))}) is not a minimal subset of itself"
        )
    return _closed(lattice, alpha, x, True)


def ramanujan_twosided(lattice: IdealLattice, alpha: ElementLike, x: ElementLike) -> RamanujanResult:
    """Two-sided closed form; the minimality premise is checked, not assumed."""
    _require(lattice, Side.TWOSIDED)
    J = lattice.principal(x)
    if not is_self_minimal(lattice, J):
        raise PremiseNotMet("two-sided maximal family is not a minimal subset of itself")
    return _closed(lattice, alpha, x, True)
