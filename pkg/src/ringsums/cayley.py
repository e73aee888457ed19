"""Cayley graphs over the additive group of a finite ring and their spectra.

Three independent routes produce the spectrum of Cay(R, S):

* ``spectrum_babai`` sums additive characters over S for each alpha;
* ``spectrum_unitary`` uses the Ramanujan-sum formulas when S is a bracket
  class [x];
* ``spectrum_numeric`` diagonalizes the 0/1 adjacency matrix with Jacobi
  rotations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .characters import (
    conductor,
    ramanujan_closed_form,
    ramanujan_right,
    ramanujan_theorem,
    ramanujan_twosided,
    ring_field,
)
from .cyclo import CycloValue
from .errors import (
    LoopsForbidden,
    MismatchReport,
    NotSymmetricSet,
    SizeLimitExceeded,
)
from .jacobi import jacobi_eigenvalues
from .lattice import IdealLattice, Side, bracket_class, is_self_minimal
from .ring import ElementLike, FiniteRing


@dataclass(frozen=True)
class CayleyGraph:
    ring: FiniteRing
    connection: frozenset[int]
    symmetric: bool = True

    @property
    def order(self) -> int:
        return self.ring.order

    @property
    def degree(self) -> int:
        return len(self.connection)

    def adjacent(self, x: ElementLike, y: ElementLike) -> bool:
        R = self.ring
        return R.sub(R.index(x), R.index(y)) in self.connection

    def adjacency(self) -> np.ndarray:
        R = self.ring
        if R.order > R.limits.dense_limit:
            raise SizeLimitExceeded(f"{R.order} vertices exceeds dense_limit {R.limits.dense_limit}")
        flags = np.zeros(R.order, dtype=bool)
        flags[list(self.connection)] = True
        c = R.coords
        diff = R.encode_many(c[:, None, :] - c[None, :, :])
        return flags[diff].astype(np.int8)


def build_cayley(R: FiniteRing, S: Iterable[ElementLike]) -> CayleyGraph:
    """Validate S (inside R, S = -S, 0 not in S) and wrap it as a graph."""
    conn = frozenset(R.index(s) for s in S)
    if R.zero in conn:
        raise LoopsForbidden("0 in the connection set would give loops")
    negs = frozenset(R._neg_idx(s) for s in conn)
    if negs != conn:
        missing = sorted(negs - conn)
        raise NotSymmetricSet(f"connection set is not closed under negation; missing {missing[:5]}")
    return CayleyGraph(R, conn)


def bracket_graph(R: FiniteRing, x: ElementLike, side: Side | str = Side.LEFT) -> CayleyGraph:
    return build_cayley(R, bracket_class(R, x, side))


@dataclass(frozen=True)
class SpectrumReport:
    order: int
    degree: int
    per_alpha: tuple[CycloValue, ...]
    provenance: str
    entries: tuple[tuple[CycloValue, int], ...] = field(init=False)

    def __post_init__(self) -> None:
        counts = Counter(self.per_alpha)
        ordered = sorted(counts.items(), key=lambda kv: kv[0].sort_key())
        object.__setattr__(self, "entries", tuple(ordered))

    @property
    def integral(self) -> bool:
        return all(v.is_integer for v, _ in self.entries)

    def real_values(self) -> list[float]:
        """Sorted (descending) real embeddings with multiplicity."""
        out: list[float] = []
        for v, m in self.entries:
            z = v.to_complex()
            if abs(z.imag) >= 1e-9:
                raise ValueError(f"eigenvalue {v} has imaginary part {z.imag}")
            out.extend([z.real] * m)
        return sorted(out, reverse=True)

    def invariants(self) -> dict[str, bool]:
        """Exact identities every Cayley spectrum with 0 not in S satisfies."""
        n = self.order
        total = sum(self.per_alpha, 0)
        squares = sum((v * v for v in self.per_alpha), 0)
        return {
            "multiplicities_sum_to_order": sum(m for _, m in self.entries) == n,
            "trace_zero": total == 0,
            "sum_of_squares": squares == n * self.degree,
            "degree_eigenvalue": bool(self.per_alpha) and self.per_alpha[0] == self.degree,
            "all_real": all(v.is_real for v, _ in self.entries),
        }

    def csv_rows(self) -> list[tuple[str, int, bool]]:
        return [(str(v), m, v.is_integer) for v, m in self.entries]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "degree": self.degree,
            "provenance": self.provenance,
            "integral": self.integral,
            "entries": [{"eigenvalue": v.to_json(), "repr": str(v), "multiplicity": m} for v, m in self.entries],
            "per_alpha": [v.to_json() for v in self.per_alpha],
            "invariants": self.invariants(),
        }


def spectrum_babai(G: CayleyGraph) -> SpectrumReport:
    """lambda_alpha = sum of psi_alpha(s) over s in S, for every alpha."""
    R = G.ring
    F = ring_field(R)
    L = conductor(R)
    S = np.array(sorted(G.connection), dtype=np.int64)
    scale = np.array([L // m for m in R.moduli], dtype=np.int64)
    sc = R.coords[S].T if S.size else np.zeros((len(R.moduli), 0), dtype=np.int64)
    values: list[CycloValue] = []
    chunk = max(1, 2_000_000 // max(1, S.size))
    for start in range(0, R.order, chunk):
        alphas = np.arange(start, min(R.order, start + chunk))
        exps = ((R.coords[alphas] * scale) @ sc) % L  # (chunk, |S|)
        offs = exps + (np.arange(len(alphas)) * L)[:, None]
        hist = np.bincount(offs.ravel(), minlength=len(alphas) * L).reshape(len(alphas), L)
        for row in hist:
            values.append(F.from_exponent_counts(row))
    return SpectrumReport(R.order, len(S), tuple(values), "BABAI")


def spectrum_unitary(lattice: IdealLattice, x: ElementLike) -> SpectrumReport:
    """Spectrum of Cay(R, [x]) from the Ramanujan-sum formulas, one alpha at a time.

    The closed form is evaluated too wherever its premise holds and must
    agree with the general formula.
    """
    R = lattice.ring
    G = bracket_graph(R, x, lattice.side)
    formula = {
        Side.LEFT: ramanujan_theorem,
        Side.RIGHT: ramanujan_right,
        Side.TWOSIDED: ramanujan_twosided,
    }[lattice.side]
    closed_ok = lattice.side is not Side.TWOSIDED and is_self_minimal(lattice, lattice.principal(x))
    values = []
    for alpha in range(R.order):
        v = formula(lattice, alpha, x).value
        if closed_ok:
            c = ramanujan_closed_form(lattice, alpha, x).value
            if c != v:
                raise MismatchReport([(alpha, str(v), str(c))])
        values.append(v)
    return SpectrumReport(R.order, G.degree, tuple(values), "THEOREM")


def spectrum_numeric(G: CayleyGraph) -> list[float]:
    """Adjacency eigenvalues by cyclic Jacobi, sorted descending."""
    return [float(v) for v in jacobi_eigenvalues(G.adjacency())]


@dataclass(frozen=True)
class SpectrumComparison:
    kind: str
    max_error: float
    count: int


def compare_spectra(
    a: SpectrumReport, b: SpectrumReport | Sequence[float], tol: float = 1e-6
) -> SpectrumComparison:
    """Exact comparison of two reports, or a report against numeric values.

    Raises :class:`MismatchReport` listing every disagreeing eigenvalue.
    """
    if isinstance(b, SpectrumReport):
        if a.order != b.order:
            raise ValueError("spectra of graphs with different vertex counts")
        if len(a.per_alpha) == len(b.per_alpha):
            bad = [(i, str(u), str(v)) for i, (u, v) in enumerate(zip(a.per_alpha, b.per_alpha)) if u != v]
        else:
            ca, cb = Counter(a.per_alpha), Counter(b.per_alpha)
            bad = [(str(v), ca[v], cb[v]) for v in sorted(set(ca) | set(cb), key=CycloValue.sort_key) if ca[v] != cb[v]]
        if not bad and dict(a.entries) != dict(b.entries):
            bad = [("multiset", str(a.entries), str(b.entries))]
        if bad:
            raise MismatchReport(bad)
        return SpectrumComparison("exact", 0.0, a.order)

    exact = a.real_values()
    numeric = sorted((float(v) for v in b), reverse=True)
    if len(exact) != len(numeric):
        raise ValueError("spectra of graphs with different vertex counts")
    errs = [abs(u - v) for u, v in zip(exact, numeric)]
    bad = [(i, u, v) for i, (u, v, e) in enumerate(zip(exact, numeric, errs)) if e > tol]
    if bad:
        raise MismatchReport(bad)
    return SpectrumComparison("numeric", max(errs, default=0.0), len(exact))
