"""Command-line front end: ``ringsums {ring,ideals,ramanujan,spectrum,verify}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .cayley import (
    CayleyGraph,
    bracket_graph,
    build_cayley,
    compare_spectra,
    spectrum_babai,
    spectrum_numeric,
    spectrum_unitary,
)
from .characters import (
    ramanujan_bruteforce,
    ramanujan_closed_form,
    ramanujan_right,
    ramanujan_theorem,
    ramanujan_twosided,
)
from .errors import MismatchReport, PremiseNotMet, RingSumsError, SpecError
from .lattice import Side, enumerate_lattice, is_self_minimal
from .ring import FiniteRing, units
from .specfile import build_ring, load_config, load_corpus, parse_ring_file, read_json
from .verify import SUITES, run_suite


RAMANUJAN_COLUMNS = (
    "alpha_index",
    "alpha",
    "x_index",
    "x",
    "side",
    "method",
    "status",
    "branch",
    "value",
    "K_size",
    "minimal_premise",
)
SPECTRUM_COLUMNS = ("eigenvalue_repr", "multiplicity", "is_integer")


@dataclass
class Loaded:
    ring: FiniteRing
    side: Side
    format: str | None


def _load(args: argparse.Namespace) -> Loaded:
    base = load_config(args.config)
    text = args.spec
    doc = json.loads(text) if text.lstrip().startswith("{") else read_json(text)
    rf = parse_ring_file(doc, base)
    side = Side.parse(args.side) if getattr(args, "side", None) else (rf.side or Side.LEFT)
    return Loaded(build_ring(rf.ring_spec, rf.limits), side, rf.output_format)


def parse_element(R: FiniteRing, text: str) -> int:
    """An index ("5") or comma-separated additive coordinates ("1,0,5")."""
    parts = [p.strip() for p in text.split(",")]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise SpecError(f"cannot parse element {text!r}") from None
    if len(values) == 1:
        return R.check_index(values[0])
    if len(values) != len(R.moduli):
        raise SpecError(f"element {text!r} has {len(values)} coordinates, ring has {len(R.moduli)}")
    return R.encode([v % m for v, m in zip(values, R.moduli)])


def _coords(R: FiniteRing, i: int) -> str:
    return ",".join(str(c) for c in R.decode(i))


def _csv(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _dump(doc: object) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- commands ----------------------------------------------------------------


def cmd_ring(args: argparse.Namespace) -> int:
    R = _load(args).ring
    U = units(R)
    lines = [
        f"|R|={R.order}, units={len(U)}",
        f"label: {R.label}",
        f"moduli: {' x '.join(str(m) for m in R.moduli)}",
        f"commutative: {'yes' if R.is_commutative else 'no'}",
        f"axiom check: {R.metadata['axiom_check']}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_ideals(args: argparse.Namespace) -> int:
    loaded = _load(args)
    lat = enumerate_lattice(loaded.ring, loaded.side)
    doc = {
        "ring": loaded.ring.label,
        "order": loaded.ring.order,
        "side": loaded.side.value,
        "count": len(lat),
        "ideals": lat.records(),
    }
    sys.stdout.write(_dump(doc))
    return 0


def _ramanujan_row(lat, R: FiniteRing, side: Side, method: str, a: int, x: int) -> dict:
    row = {
        "alpha_index": a,
        "alpha": _coords(R, a),
        "x_index": x,
        "x": _coords(R, x),
        "side": side.value,
        "method": method,
        "status": "ok",
        "branch": "",
        "value": "",
        "K_size": "",
        "minimal_premise": "",
    }
    if method == "brute":
        row["value"] = str(ramanujan_bruteforce(R, a, x, side))
        return row
    row["minimal_premise"] = str(is_self_minimal(lat, lat.principal(x))).lower()
    if method == "theorem":
        fn = {Side.LEFT: ramanujan_theorem, Side.RIGHT: ramanujan_right, Side.TWOSIDED: ramanujan_twosided}[side]
    else:
        fn = ramanujan_closed_form
    try:
        res = fn(lat, a, x)
    except PremiseNotMet:
        row["status"] = "premise_not_met"
        return row
    row.update(branch=res.branch.value, value=str(res.value), K_size=res.K.size)
    return row


def cmd_ramanujan(args: argparse.Namespace) -> int:
    loaded = _load(args)
    R, side = loaded.ring, loaded.side
    x = parse_element(R, args.x)
    alphas = list(R.elements()) if args.all else [parse_element(R, args.alpha)]
    lat = enumerate_lattice(R, side)
    rows = [_ramanujan_row(lat, R, side, args.method, a, x) for a in alphas]
    fmt = args.format or loaded.format or "csv"
    if fmt == "json":
        sys.stdout.write(_dump(rows))
    else:
        sys.stdout.write(_csv([[r[c] for c in RAMANUJAN_COLUMNS] for r in rows], RAMANUJAN_COLUMNS))
    return 0


def _connection(args: argparse.Namespace, R: FiniteRing, side: Side) -> tuple[CayleyGraph, int | None]:
    """The graph plus the element x with S = [x] when the lattice formula applies."""
    kind, _, rest = args.connection.partition(":")
    if kind == "unitary":
        # [1] is the unit group on the left and right sides
        x = R.one if side is not Side.TWOSIDED else None
        return build_cayley(R, units(R)), x
    if kind == "bracket":
        x = parse_element(R, rest)
        return bracket_graph(R, x, side), x
    if kind == "set":
        doc = read_json(rest)
        if not isinstance(doc, list):
            raise SpecError("connection-set file must hold a JSON list of elements")
        return build_cayley(R, [parse_element(R, str(e) if isinstance(e, int) else ",".join(map(str, e))) for e in doc]), None
    raise SpecError(f"unknown connection {args.connection!r}; use unitary, bracket:x or set:file")


def cmd_spectrum(args: argparse.Namespace) -> int:
    loaded = _load(args)
    R, side = loaded.ring, loaded.side
    G, x = _connection(args, R, side)
    report = spectrum_babai(G)
    checks: dict[str, object] = {"invariants": report.invariants()}
    ok = all(report.invariants().values())
    if x is not None:
        formula = spectrum_unitary(enumerate_lattice(R, side), x)
        try:
            compare_spectra(report, formula)
            checks["formula_agrees"] = True
        except MismatchReport as exc:
            checks["formula_agrees"] = False
            checks["formula_mismatches"] = [list(map(str, m)) for m in exc.mismatches]
            ok = False
    if args.check == "numeric":
        try:
            cmp = compare_spectra(report, spectrum_numeric(G))
            checks["numeric_agrees"] = True
            checks["numeric_max_error"] = float(f"{cmp.max_error:.1e}")
        except MismatchReport as exc:
            checks["numeric_agrees"] = False
            checks["numeric_mismatches"] = [list(map(str, m)) for m in exc.mismatches]
            ok = False
    doc = {"ring": R.label, "side": side.value, "connection": args.connection, **report.to_json(), "checks": checks}
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "spectrum.csv").write_text(_csv(report.csv_rows(), SPECTRUM_COLUMNS))
    (out / "spectrum.json").write_text(_dump(doc))
    parts = [f"{v}^{m}" for v, m in report.entries]
    sys.stdout.write(f"|R|={R.order}, |S|={G.degree}, spectrum: {{{', '.join(parts)}}}\n")
    for k, v in checks.items():
        if not k.endswith("mismatches"):
            sys.stdout.write(f"{k}: {v}\n")
    return 0 if ok else 1


def _corpus(path: str | None) -> list[tuple[str, dict]]:
    if path is None:
        return load_corpus()
    doc = read_json(path)
    if isinstance(doc, dict) and "rings" not in doc:
        rf = parse_ring_file(doc)
        return [(rf.ring_spec.get("label") or build_ring(rf.ring_spec).label, rf.ring_spec)]
    return load_corpus(path)


def cmd_verify(args: argparse.Namespace) -> int:
    limits = load_config(args.config)
    outcome = run_suite(args.suite, _corpus(args.corpus), limits, jobs=args.jobs, n_max=args.n_max)
    text = _dump(outcome.to_json(timing=args.timing))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    c = outcome.counts()
    print(
        f"{args.suite}: {c['pass']} passed, {c['fail']} failed, {c['finding']} findings in {outcome.elapsed:.1f}s",
        file=sys.stderr,
    )
    return 0 if outcome.passed else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with a 'limits' object overriding the defaults")
    common.add_argument("-v", "--verbose", action="store_true")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("spec", help="ring-spec JSON file, or an inline JSON object")

    sided = argparse.ArgumentParser(add_help=False)
    sided.add_argument("--side", choices=[s.value for s in Side], help="ideal side (default: file setting or left)")

    p = argparse.ArgumentParser(prog="ringsums", description="Ramanujan sums and Cayley spectra over finite rings.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("ring", parents=[common, spec], help="describe a ring")
    r.set_defaults(fn=cmd_ring)

    i = sub.add_parser("ideals", parents=[common, spec, sided], help="dump the ideal lattice as JSON")
    i.set_defaults(fn=cmd_ideals)

    m = sub.add_parser("ramanujan", parents=[common, spec, sided], help="tabulate C_alpha(x)")
    m.add_argument("--x", required=True, help="element as index or comma-separated coordinates")
    grp = m.add_mutually_exclusive_group(required=True)
    grp.add_argument("--alpha")
    grp.add_argument("--all", action="store_true", help="every alpha in R")
    m.add_argument("--method", choices=["brute", "theorem", "closed"], default="theorem")
    m.add_argument("--format", choices=["csv", "json"])
    m.set_defaults(fn=cmd_ramanujan)

    s = sub.add_parser("spectrum", parents=[common, spec, sided], help="Cayley graph spectrum")
    s.add_argument("--connection", default="unitary", help="unitary, bracket:x or set:FILE")
    s.add_argument("--check", choices=["numeric"], help="also diagonalize the adjacency matrix")
    s.add_argument("--out-dir", default=".", help="where spectrum.csv and spectrum.json go")
    s.set_defaults(fn=cmd_spectrum)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=["all", *SUITES], default="all")
    v.add_argument("--corpus", help="corpus or single ring-spec file (default: $RINGSUMS_CORPUS or built-in)")
    v.add_argument("--jobs", type=int, default=1, help="worker processes across corpus rings")
    v.add_argument("--n-max", type=int, default=60, help="largest n for the classical suite")
    v.add_argument("--timing", action="store_true", help="include elapsed time in the JSON summary")
    v.add_argument("--out", help="write the JSON summary here instead of stdout")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except (RingSumsError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
