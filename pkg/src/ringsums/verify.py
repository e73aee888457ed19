"""Named verification suites over a corpus of rings.

Each suite yields :class:`Check` records.  A check aggregates many cases
(one per x, alpha, ideal or subfamily) and keeps the first failing case as
its witness.  Status is ``pass``, ``fail`` or ``finding``; a finding is a
documented discrepancy with a published example where the brute-force
computation is taken as authoritative, and does not fail the run.
"""

from __future__ import annotations

import itertools
import logging
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from . import bitset
from .cayley import (
    bracket_graph,
    build_cayley,
    compare_spectra,
    spectrum_babai,
    spectrum_numeric,
    spectrum_unitary,
)
from .characters import (
    alpha_perp_mask,
    cyclic_subgroup,
    mobius_sum,
    perp,
    pivot_ideal,
    ramanujan_bruteforce,
    ramanujan_closed_form,
    ramanujan_right,
    ramanujan_theorem,
    ramanujan_twosided,
)
from .config import DEFAULT_LIMITS, Limits
from .errors import (
    AxiomViolation,
    LoopsForbidden,
    MaximalFamilyTooLarge,
    MismatchReport,
    PremiseNotMet,
    RingSumsError,
)
from .lattice import (
    IdealLattice,
    OutsidePremiseWarning,
    Side,
    bracket_class,
    crt_index_check,
    enumerate_lattice,
    ideal_interior,
    intersection,
    is_meet_of_maximals,
    is_minimal_subset,
    is_self_minimal,
    maximal_between,
    maximal_family,
    mobius_delta_check,
    mobius_inversion,
    mobius_R,
    phi_R,
    phi_R_alternating,
    span,
    zeta_transform,
)
from .numtheory import classical_ramanujan
from .ring import FiniteRing, make_product, make_table_ring, make_zmod, units
from .specfile import build_ring

log = logging.getLogger(__name__)

CORPUS_SUITES = ("lemmas", "theorems", "crt", "spectra")
SUITES = ("classical", *CORPUS_SUITES, "perp", "controls")


@dataclass
class Check:
    suite: str
    name: str
    ring: str
    side: str | None
    status: str
    cases: int
    failures: int = 0
    detail: str = ""
    witness: dict | None = None
    data: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class VerificationOutcome:
    suite: str
    checks: list[Check]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "finding": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self, timing: bool = False) -> dict:
        doc = {
            "suite": self.suite,
            "passed": self.passed,
            "counts": self.counts(),
            "checks": [c.to_json() for c in self.checks],
        }
        if timing:
            doc["elapsed_seconds"] = round(self.elapsed, 3)
        return doc


class _Tally:
    """Accumulates cases for one check and remembers the first failure."""

    def __init__(self, suite: str, name: str, ring: str, side: Side | None = None):
        self.suite, self.name, self.ring = suite, name, ring
        self.side = side.value if side is not None else None
        self.cases = 0
        self.failures = 0
        self.witness: dict | None = None
        self.detail = ""
        self.data: dict | None = None

    def case(self, ok: bool, detail: str = "", **witness) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = {"ring": self.ring, "side": self.side, **witness}
                self.detail = detail

    def error(self, exc: BaseException, **witness) -> None:
        self.case(False, f"{type(exc).__name__}: {exc}", **witness)

    def check(self) -> Check:
        return Check(
            self.suite,
            self.name,
            self.ring,
            self.side,
            "fail" if self.failures else "pass",
            self.cases,
            self.failures,
            self.detail,
            self.witness,
            self.data,
        )


def _guarded(t: _Tally, fn: Callable[[], None]) -> Check:
    """Run a check body; any library error becomes a failed case."""
    try:
        fn()
    except (RingSumsError, AssertionError, ValueError) as exc:
        t.error(exc)
    return t.check()


def _el(R: FiniteRing, i: int) -> list[int]:
    return list(R.decode(int(i)))


# -- classical --------------------------------------------------------------


def classical_checks(n_max: int = 60) -> Iterator[Check]:
    for n in range(1, n_max + 1):
        R = make_zmod(n)
        lat = enumerate_lattice(R, Side.LEFT)
        t = _Tally("classical", "brute = classical = closed form", f"Z{n}", Side.LEFT)

        def body() -> None:
            for a in range(n):
                brute = ramanujan_bruteforce(R, a, R.one)
                classical = classical_ramanujan(n, a)
                closed = ramanujan_closed_form(lat, a, R.one).value
                t.case(
                    brute == classical and closed == classical,
                    f"brute {brute}, classical {classical}, closed {closed}",
                    alpha=[a],
                    x=_el(R, R.one),
                )

        yield _guarded(t, body)


# -- lemmas -----------------------------------------------------------------


def _subfamilies(family: Sequence) -> Iterator[tuple]:
    for k in range(len(family) + 1):
        yield from itertools.combinations(family, k)


def lemma_checks(name: str, R: FiniteRing, sides: Sequence[Side] = tuple(Side)) -> Iterator[Check]:
    for side in sides:
        lat = enumerate_lattice(R, side)
        yield from _lemmas_on(name, lat)


def _lemmas_on(name: str, lat: IdealLattice) -> Iterator[Check]:
    R, side = lat.ring, lat.side

    def tally(label: str) -> _Tally:
        return _Tally("lemmas", label, name, side)

    t = tally("moebius delta sums")

    def delta() -> None:
        for J in lat:
            for K in lat.subideals(J):
                got = mobius_delta_check(lat, K, J)
                t.case(got == (1 if K == J else 0), f"sum is {got}", K=K.size, J=J.size)

    yield _guarded(t, delta)

    t = tally("moebius inversion of ideal size recovers bracket size")

    def inversion() -> None:
        g = mobius_inversion(lat, lambda I: I.size)
        back = zeta_transform(lat, g)
        for J in lat:
            interior = len(ideal_interior(lat, J))
            t.case(g[J] == interior and back[J] == J.size, f"g = {g[J]}, interior {interior}", J=J.size)
        for x in R.elements():
            J = lat.principal(x)
            n = len(bracket_class(R, x, side))
            via = sum(I.size * mobius_R(lat, I, J) for I in lat.subideals(J))
            t.case(via == n == g[J], f"{via} vs |[x]| = {n}", x=_el(R, x))

    yield _guarded(t, inversion)

    t = tally("minimal subfamily iff index product")
    t.data = {"skipped_families": 0}

    def crt_iff() -> None:
        for J in lat:
            fam = maximal_family(lat, J).members
            if len(fam) > lat.limits.mobius_subset_limit:
                t.data["skipped_families"] += 1
                continue
            for E in _subfamilies(fam):
                chk = crt_index_check(lat, J, E)
                t.case((chk.lhs == chk.rhs) == chk.minimal, f"lhs {chk.lhs} rhs {chk.rhs}", J=J.size, family=len(E))

    yield _guarded(t, crt_iff)

    t = tally("index multiplicative across disjoint subfamilies")
    t.data = {"skipped_families": 0}

    def crt_split() -> None:
        for J in lat:
            fam = maximal_family(lat, J).members
            if not is_self_minimal(lat, J):
                continue
            if 2 * len(fam) > lat.limits.mobius_subset_limit:
                t.data["skipped_families"] += 1
                continue
            for labels in itertools.product(range(3), repeat=len(fam)):
                E1 = [M for M, c in zip(fam, labels) if c == 1]
                E2 = [M for M, c in zip(fam, labels) if c == 2]

                def idx(E):
                    return J.size // intersection(lat, E, J).size

                t.case(idx(E1 + E2) == idx(E1) * idx(E2), J=J.size, family=list(labels))

    yield _guarded(t, crt_split)

    t = tally("ideal above the meet of all maximals is the meet of those containing it")

    def reconstruction() -> None:
        for I in lat:
            fam = maximal_family(lat, I).members
            if not fam:
                continue
            bottom = intersection(lat, fam, I)
            for K in lat.subideals(I, strict=True):
                if not bottom <= K:
                    continue
                above = maximal_between(lat, I, K).members
                ok = is_meet_of_maximals(lat, K, I) and intersection(lat, above, I) == K
                t.case(ok, I=I.size, K=K.size)

    yield _guarded(t, reconstruction)

    t = tally("moebius vanishes off meets of maximals")

    def vanishing() -> None:
        for J in lat:
            for I in lat.subideals(J, strict=True):
                if not is_meet_of_maximals(lat, I, J):
                    t.case(mobius_R(lat, I, J) == 0, I=I.size, J=J.size)

    yield _guarded(t, vanishing)

    t = tally("largest ideal inside (x) and alpha-perp is unique")

    def uniqueness() -> None:
        for x in R.elements():
            for a in R.elements():
                try:
                    pivot_ideal(lat, a, x)
                    t.case(True)
                except RingSumsError as exc:
                    t.case(False, str(exc), alpha=_el(R, a), x=_el(R, x))

    yield _guarded(t, uniqueness)

    t = tally("full branch equals bracket size")

    def full_branch() -> None:
        for x in R.elements():
            J = lat.principal(x)
            n = len(bracket_class(R, x, side))
            for a in R.elements():
                if bitset.is_subset(J.mask, alpha_perp_mask(R, a)):
                    got = ramanujan_bruteforce(R, a, x, side)
                    t.case(got == n, f"{got} vs {n}", alpha=_el(R, a), x=_el(R, x))

    yield _guarded(t, full_branch)

    t = tally("totient product equals alternating sum")

    def totient() -> None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OutsidePremiseWarning)
            for J in lat:
                for I in lat.subideals(J, strict=True):
                    if is_meet_of_maximals(lat, I, J):
                        fam = maximal_between(lat, J, I).members
                        prod = int(np.prod([J.size // M.size - 1 for M in fam]))
                        alt = phi_R_alternating(lat, I, J)
                        t.case(prod == alt == phi_R(lat, I, J), f"{prod} vs {alt}", I=I.size, J=J.size)

    yield _guarded(t, totient)


# -- theorems ---------------------------------------------------------------


_FORMULA = {Side.LEFT: ramanujan_theorem, Side.RIGHT: ramanujan_right, Side.TWOSIDED: ramanujan_twosided}


def theorem_checks(name: str, R: FiniteRing) -> Iterator[Check]:
    left = enumerate_lattice(R, Side.LEFT)

    t = _Tally("theorems", "subset-sum formula = brute force", name, Side.LEFT)

    def main() -> None:
        for x in R.elements():
            for a in R.elements():
                brute = ramanujan_bruteforce(R, a, x, Side.LEFT)
                res = ramanujan_theorem(left, a, x)
                t.case(res.value == brute, f"{res.branch.value}: {res.value} vs {brute}", alpha=_el(R, a), x=_el(R, x))

    yield _guarded(t, main)

    t = _Tally("theorems", "lattice sum over (x) and alpha-perp = brute force", name, Side.LEFT)

    def summation() -> None:
        for x in R.elements():
            for a in R.elements():
                brute = ramanujan_bruteforce(R, a, x, Side.LEFT)
                got = mobius_sum(left, a, x)
                t.case(got == brute, f"{got} vs {brute}", alpha=_el(R, a), x=_el(R, x))

    yield _guarded(t, summation)

    t = _Tally("theorems", "closed form under the minimality premise", name, Side.LEFT)
    t.data = {"premise_holds": 0, "premise_fails": 0}

    def closed() -> None:
        for x in R.elements():
            minimal = is_self_minimal(left, left.principal(x))
            t.data["premise_holds" if minimal else "premise_fails"] += 1
            for a in R.elements():
                brute = ramanujan_bruteforce(R, a, x, Side.LEFT)
                general = ramanujan_theorem(left, a, x).value
                w = {"alpha": _el(R, a), "x": _el(R, x)}
                try:
                    value = ramanujan_closed_form(left, a, x).value
                    t.case(minimal and value == general == brute, f"closed {value}, theorem {general}, brute {brute}", **w)
                except PremiseNotMet:
                    t.case(not minimal and general == brute, "premise rejected", **w)

    yield _guarded(t, closed)

    if R.is_commutative:
        t = _Tally("theorems", "commutative ring: premise holds for every x", name, Side.LEFT)

        def corollary() -> None:
            for x in R.elements():
                t.case(is_self_minimal(left, left.principal(x)), x=_el(R, x))

        yield _guarded(t, corollary)

    for side in (Side.RIGHT, Side.TWOSIDED):
        lat = enumerate_lattice(R, side)
        t = _Tally("theorems", f"{side.value} formula = brute force", name, side)

        def other(lat=lat, side=side, t=t) -> None:
            for x in R.elements():
                for a in R.elements():
                    brute = ramanujan_bruteforce(R, a, x, side)
                    got = _FORMULA[side](lat, a, x).value
                    t.case(got == brute, f"{got} vs {brute}", alpha=_el(R, a), x=_el(R, x))

        yield _guarded(t, other)

    two = enumerate_lattice(R, Side.TWOSIDED)
    t = _Tally("theorems", "two-sided maximal families are minimal", name, Side.TWOSIDED)

    def twosided_minimal() -> None:
        for J in two:
            t.case(is_self_minimal(two, J), J=J.size, elements=[_el(R, e) for e in J.elements[:8]])

    yield _guarded(t, twosided_minimal)


# -- crt --------------------------------------------------------------------


def crt_checks(name: str, R: FiniteRing, sides: Sequence[Side] = tuple(Side)) -> Iterator[Check]:
    for side in sides:
        lat = enumerate_lattice(R, side)
        t = _Tally("crt", "index product holds exactly for minimal families", name, side)
        t.data = {"counterexamples": []}

        def body(lat=lat, t=t) -> None:
            for J in lat:
                fam = maximal_family(lat, J).members
                for E in _subfamilies(fam):
                    if not E:
                        continue
                    chk = crt_index_check(lat, J, E)
                    t.case((chk.lhs == chk.rhs) == chk.minimal, f"lhs {chk.lhs} rhs {chk.rhs}", J=J.size)
                    if chk.lhs != chk.rhs:
                        t.data["counterexamples"].append(
                            {
                                "J_size": J.size,
                                "family_sizes": [M.size for M in E],
                                "lhs": chk.lhs,
                                "rhs": chk.rhs,
                                "minimal": chk.minimal,
                            }
                        )

        yield _guarded(t, body)


# -- spectra ----------------------------------------------------------------


def spectra_checks(name: str, R: FiniteRing, sides: Sequence[Side] = tuple(Side)) -> Iterator[Check]:
    for side in sides:
        lat = enumerate_lattice(R, side)
        t = _Tally("spectra", "character sums = lattice formula = Jacobi", name, side)
        t.data = {"graphs": 0, "numeric": 0, "max_numeric_error": 0.0}

        def body(lat=lat, side=side, t=t) -> None:
            seen = set()
            for x in R.elements():
                J = lat.principal(x)
                if x == R.zero or J.mask in seen:
                    continue
                seen.add(J.mask)
                G = bracket_graph(R, x, side)
                a, b = spectrum_babai(G), spectrum_unitary(lat, x)
                w = {"x": _el(R, x), "degree": G.degree}
                try:
                    compare_spectra(a, b)
                    t.case(True)
                except MismatchReport as exc:
                    t.case(False, f"exact mismatch {exc.mismatches[:3]}", **w)
                inv = a.invariants()
                t.case(all(inv.values()), f"invariants {inv}", **w)
                t.data["graphs"] += 1
                if R.order <= R.limits.dense_limit:
                    try:
                        cmp = compare_spectra(a, spectrum_numeric(G))
                        t.case(True)
                        t.data["numeric"] += 1
                        t.data["max_numeric_error"] = max(t.data["max_numeric_error"], cmp.max_error)
                    except MismatchReport as exc:
                        t.case(False, f"numeric mismatch {exc.mismatches[:3]}", **w)
            # float formatting keeps the JSON byte-stable across platforms
            t.data["max_numeric_error"] = float(f"{t.data['max_numeric_error']:.1e}")

        yield _guarded(t, body)


# -- perp example -----------------------------------------------------------

PERP_MODULI = (5, 5, 25)
PERP_SOURCE = (1, 0, 5)
PERP_LISTED = ((1, 1, 4), (1, 2, 4), (1, 3, 4), (1, 4, 4), (1, 0, 4), (0, 1, 0))


def perp_example() -> dict:
    """Brute-force perp of <(1,0,5)> in Z5 x Z5 x Z25 against the listed union."""
    R = make_product([make_zmod(n) for n in PERP_MODULI])
    src = cyclic_subgroup(R, PERP_SOURCE)
    P = perp(R, src)
    union: set[int] = set()
    for g in PERP_LISTED:
        union |= cyclic_subgroup(R, g)
    generated = span(R, [R.index(g) for g in PERP_LISTED])
    by_rule = {x for x in R.elements() if (R.decode(x)[0] + R.decode(x)[2]) % 5 == 0}
    return {
        "ring": R,
        "source_order": len(src),
        "perp": P,
        "perp_size": len(P),
        "matches_rule": set(P.elements) == by_rule,
        "double_perp_is_source": set(perp(R, P.elements).elements) == set(src),
        "union_size": len(union),
        "union_inside_perp": union <= set(P.elements),
        "generated_equals_perp": set(bitset.to_indices(generated, R.order).tolist()) == set(P.elements),
        "missing": sorted(R.decode(x) for x in set(P.elements) - union),
    }


def perp_checks() -> Iterator[Check]:
    info = perp_example()
    t = _Tally("perp", "brute-force perp of <(1,0,5)> in Z5xZ5xZ25", "Z5xZ5xZ25")
    t.case(info["matches_rule"], "perp differs from x1 + x3 = 0 mod 5")
    t.case(info["double_perp_is_source"], "perp of perp is not the source subgroup")
    t.case(info["union_inside_perp"], "a listed subgroup leaves the perp")
    t.case(info["generated_equals_perp"], "listed generators do not generate the perp")
    t.data = {"source_order": info["source_order"], "perp_size": info["perp_size"]}
    yield t.check()

    missing = info["missing"]
    yield Check(
        "perp",
        "listed union of six cyclic subgroups equals the perp",
        "Z5xZ5xZ25",
        None,
        "finding" if missing else "pass",
        1,
        detail=(
            f"union has {info['union_size']} elements, perp has {info['perp_size']}; "
            "the perp is the subgroup generated by the listed elements, not their union"
            if missing
            else ""
        ),
        data={"union_size": info["union_size"], "missing": [list(m) for m in missing]},
    )


# -- negative controls -------------------------------------------------------


def corrupted_table_ring(R: FiniteRing, a: int = 1, b: int = 1) -> tuple[list[list[int]], int]:
    """R's table with entry (a, b) replaced; returns (table, one)."""
    table = R.table().astype(int).tolist()
    table[a][b] = (table[a][b] + 1) % R.order
    return table, R.one


def control_checks() -> Iterator[Check]:
    from .ring import make_matrix_ring

    M = make_matrix_ring(make_zmod(2), 2)

    t = _Tally("controls", "corrupted table entry is rejected", "M2(Z2)")
    table, one = corrupted_table_ring(M, 5, 6)
    try:
        make_table_ring(M.moduli, table, one, "corrupted")
        t.case(False, "corrupted table accepted")
    except AxiomViolation as exc:
        t.case(True)
        t.data = {"kind": exc.kind}
    yield t.check()

    t = _Tally("controls", "perturbed eigenvalue is reported", "M2(Z2)")
    G = build_cayley(M, units(M))
    spec = spectrum_babai(G)
    numeric = spectrum_numeric(G)
    numeric[3] += 1e-3
    try:
        compare_spectra(spec, numeric)
        t.case(False, "perturbation missed")
    except MismatchReport as exc:
        t.case(len(exc.mismatches) == 1, f"{len(exc.mismatches)} mismatches reported")
    yield t.check()

    t = _Tally("controls", "zero in the connection set is rejected", "M2(Z2)")
    try:
        build_cayley(M, [M.zero, *units(M)])
        t.case(False, "loop accepted")
    except LoopsForbidden:
        t.case(True)
    yield t.check()


# -- driver -----------------------------------------------------------------

_CORPUS_FN = {"lemmas": lemma_checks, "theorems": theorem_checks, "crt": crt_checks, "spectra": spectra_checks}


def _ring_checks(suite: str, name: str, spec: dict, limits: Limits) -> list[Check]:
    try:
        R = build_ring(spec, limits)
    except RingSumsError as exc:
        t = _Tally(suite, "ring construction", name)
        t.error(exc)
        return [t.check()]
    start = time.perf_counter()
    checks = list(_CORPUS_FN[suite](name, R))
    log.info("%s on %s: %d checks in %.2fs", suite, name, len(checks), time.perf_counter() - start)
    return checks


def run_suite(
    suite: str,
    corpus: Sequence[tuple[str, dict]],
    limits: Limits = DEFAULT_LIMITS,
    jobs: int = 1,
    n_max: int = 60,
) -> VerificationOutcome:
    """Run ``suite`` ("all" or one of :data:`SUITES`) and collect its checks."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    start = time.perf_counter()
    names = SUITES if suite == "all" else (suite,)
    checks: list[Check] = []
    for s in names:
        if s == "classical":
            checks.extend(classical_checks(n_max))
        elif s == "perp":
            checks.extend(perp_checks())
        elif s == "controls":
            checks.extend(control_checks())
        elif jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(_ring_checks, s, n, spec, limits) for n, spec in corpus]
                for f in futures:
                    checks.extend(f.result())
        else:
            for n, spec in corpus:
                checks.extend(_ring_checks(s, n, spec, limits))
    return VerificationOutcome(suite, checks, time.perf_counter() - start)
