"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 resource limit, 3 failed check.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Sequence

from . import corpus as corpus_mod
from .atoms import (
    atom_characteristics,
    minimality_certificate,
    span_bound_check,
    thickness_bound_check,
    virtual_crossing_lower_bound,
)
from .cube import CubeSizeError, build_cube
from .homology import BettiTable, HomologyError, betti_table, euler_reconstruct, thickness
from .khovanov import (
    DEFAULT_COMPLEX_LIMIT,
    ComplexSizeError,
    GradingSystem,
    build_complex,
    dprime_complement_check,
    verify_d_squared,
)
from .knotio import GaussCodeError, VirtualLinkDiagram, load, serialize, to_dict, writhe
from .moves import random_equivalent
from .poly import D, ArrowPolynomial, a_span, render
from .statesum import (
    DEFAULT_SIDES,
    SideTable,
    arrow_polynomial,
    bracket_polynomial,
    flat_specialization,
    normalized_arrow_polynomial,
)

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_CHECK = 0, 1, 2, 3
DEFAULT_STATE_LIMIT = 20


class InputError(Exception):
    pass


class LimitError(Exception):
    pass


def read_diagram(source: str | None, code: str | None = None) -> tuple[str, VirtualLinkDiagram]:
    """Resolve an inline code, a file, ``-`` for stdin, or a bundled name."""
    try:
        if code is not None:
            return "inline", load(code)
        if source is None:
            raise InputError("no input given; pass a file, a bundled name or --code")
        if source == "-":
            return "stdin", load(sys.stdin.read())
        path = Path(source)
        if path.is_file():
            return path.stem, load(path.read_text())
        name = path.name[:-3] if path.name.endswith(".gc") else path.name
        if name in corpus_mod.bundled_names():
            return name, corpus_mod.bundled(name)
        raise InputError(f"{source}: no such file or bundled diagram")
    except GaussCodeError as exc:
        raise InputError(f"{source or 'inline'}: {exc}") from exc


def _sides(args) -> SideTable:
    if not getattr(args, "sides", None):
        return DEFAULT_SIDES
    try:
        return SideTable(args.sides)
    except ValueError as exc:
        raise InputError(f"bad side table {args.sides!r}: {exc}") from exc


def _check_size(d: VirtualLinkDiagram, limit: int, what: str):
    if d.n > limit:
        raise LimitError(f"{d.n} crossings exceeds the {what} limit of {limit}")


def _emit(args, text: str, doc: dict):
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(text)


# -- compute -----------------------------------------------------------------

INVARIANTS = ("arrow", "normalized", "bracket", "flat")


def _invariant(d: VirtualLinkDiagram, which: str, sides: SideTable) -> str:
    if which == "arrow":
        return render(arrow_polynomial(d, sides))
    if which == "normalized":
        return render(normalized_arrow_polynomial(d, sides))
    if which == "bracket":
        return str(bracket_polynomial(d))
    return render(flat_specialization(d, sides))


def cmd_compute(args) -> int:
    name, d = read_diagram(args.input, args.code)
    _check_size(d, args.limit, "state")
    which = INVARIANTS if args.invariant == "all" else (args.invariant,)
    results = {w: _invariant(d, w, _sides(args)) for w in which}
    text = "\n".join(f"{w}: {v}" if len(which) > 1 else v for w, v in results.items())
    doc = {"input": {"name": name, "diagram": to_dict(d)}, "config": {"invariant": args.invariant},
           "results": results}
    _emit(args, text, doc)
    return EXIT_OK


# -- homology ----------------------------------------------------------------

def _homology(d: VirtualLinkDiagram, system: str, normalized: bool, sides: SideTable,
              limit: int = DEFAULT_COMPLEX_LIMIT):
    _check_size(d, limit, "complex")
    cube = build_cube(d, sides)
    c = build_complex(cube, system, limit)
    sq = verify_d_squared(c)
    comp = dprime_complement_check(c)
    table = betti_table(c, normalized) if sq.ok else None
    return cube, c, sq, comp, table


def cmd_homology(args) -> int:
    name, d = read_diagram(args.input, args.code)
    sides = _sides(args)
    cube, c, sq, comp, table = _homology(d, args.grading, args.normalized, sides, args.complex_limit)
    checks = {"d_squared": "PASS" if sq.plain_ok else "FAIL",
              "dprime_squared": "PASS" if sq.projected_ok else "FAIL"}
    if c.system is not GradingSystem.PLAIN:
        checks["complement"] = "PASS" if comp.ok else "FAIL"
    full = c if c.system is GradingSystem.FULL else build_complex(cube, "full", args.complex_limit)
    recon = euler_reconstruct(full) == ArrowPolynomial.from_laurent(D) * arrow_polynomial(d, sides)
    checks["reconstruction"] = "PASS" if recon else "FAIL"
    lines = [table.render() if table is not None else f"homology undefined: {sq.first_offense}"]
    if table is not None:
        lines.append(f"# shift n+={table.n_plus} n-={table.n_minus} normalized={table.normalized}")
        lines.append(f"# thickness {thickness(table)}")
    lines += [f"# {k}: {v}" for k, v in checks.items()]
    if sq.first_offense:
        lines.append(f"# first offending face: {sq.first_offense}")
    if args.dump_matrix:
        lines.append(c.dump())
    doc = {"input": {"name": name, "diagram": to_dict(d)},
           "config": {"grading": args.grading, "normalized": args.normalized},
           "results": {"betti": table.to_dict() if table else None,
                       "thickness": thickness(table) if table and table.entries else None},
           "checks": checks}
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK if all(v == "PASS" for v in checks.values()) else EXIT_CHECK


# -- verify ------------------------------------------------------------------

def _fingerprint(d: VirtualLinkDiagram, sides: SideTable, limit: int):
    w = normalized_arrow_polynomial(d, sides)
    tables: dict[str, BettiTable | str] = {}
    cube = build_cube(d, sides)
    for system in GradingSystem:
        c = build_complex(cube, system, limit)
        sq = verify_d_squared(c)
        tables[system.value] = betti_table(c, True) if sq.ok else "ill-formed"
    return w, tables


def cmd_verify(args) -> int:
    name, d = read_diagram(args.input, args.code)
    sides = _sides(args)
    kinds = [k.strip().lower() for k in args.moves.split(",") if k.strip()]
    bad = [k for k in kinds if k not in ("r1", "r2", "r3")]
    if bad:
        raise InputError(f"unknown move kinds {bad}")
    _check_size(d, args.complex_limit, "complex")
    base_w, base_t = _fingerprint(d, sides, args.complex_limit)
    rows = []
    failures = 0
    for k in range(args.count):
        seed = args.seed + k
        e, trace = random_equivalent(d, args.length, seed=seed, kinds=kinds,
                                     max_crossings=min(args.complex_limit, d.n + 4))
        w, t = _fingerprint(e, sides, args.complex_limit)
        status = {"W": "PASS" if w == base_w else "FAIL"}
        for system in GradingSystem:
            a, b = base_t[system.value], t[system.value]
            if isinstance(a, str) or isinstance(b, str):
                status[system.value] = "ILL-FORMED"
            else:
                status[system.value] = "PASS" if a == b else "FAIL"
        ok = all(v == "PASS" for v in status.values())
        failures += not ok
        rows.append({"seed": seed, "crossings": e.n, "moves": len(trace.steps), "status": status,
                     "trace": trace.dumps()})
    verdict = "PASS" if failures == 0 else "FAIL"
    lines = [f"seed\tcrossings\tmoves\tW\t" + "\t".join(s.value for s in GradingSystem)]
    for r in rows:
        lines.append("\t".join([str(r["seed"]), str(r["crossings"]), str(r["moves"]), r["status"]["W"]]
                               + [r["status"][s.value] for s in GradingSystem]))
    lines.append(f"# {verdict}: {args.count - failures}/{args.count} sequences agree")
    doc = {"input": {"name": name, "diagram": to_dict(d)},
           "config": {"moves": kinds, "count": args.count, "seed": args.seed, "length": args.length},
           "results": rows, "checks": {"invariance": verdict}}
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK if failures == 0 else EXIT_CHECK


# -- bounds ------------------------------------------------------------------

def _bounds(d: VirtualLinkDiagram, limit: int):
    cube = build_cube(d)
    atom = atom_characteristics(d, cube)
    c = build_complex(cube, "full", limit)
    sq = verify_d_squared(c)
    table = betti_table(c) if sq.ok else None
    vc = virtual_crossing_lower_bound(table) if table is not None else None
    reports = [span_bound_check(d, atom)]
    if table is not None:
        reports += [thickness_bound_check(d, table, atom), minimality_certificate(d, table, atom)]
    return atom, vc, reports, sq


def cmd_bounds(args) -> int:
    name, d = read_diagram(args.input, args.code)
    _check_size(d, args.complex_limit, "complex")
    atom, vc, reports, sq = _bounds(d, args.complex_limit)
    genus = atom.genus if atom.genus is not None else "undefined"
    lines = [f"atom: n={atom.n} chi={atom.euler_characteristic} orientable={atom.orientable} "
             f"connected={atom.connected} genus={genus}",
             f"virtual crossing lower bound: {vc if vc is not None else 'undefined (ill-formed complex)'}"]
    lines += [r.render() for r in reports]
    doc = {"input": {"name": name, "diagram": to_dict(d)}, "results": {
        "atom": atom.to_dict(), "virtual_crossing_lower_bound": vc,
        "reports": [r.to_dict() for r in reports]}}
    _emit(args, "\n".join(lines), doc)
    failed = any(r.verdict.value == "fails" for r in reports) or not sq.ok
    return EXIT_CHECK if failed else EXIT_OK


# -- calibrate ---------------------------------------------------------------

def cmd_calibrate(args) -> int:
    from .calibration import CalibrationError, calibrate, self_test

    result = calibrate(walks=args.walks, moves=args.length)
    try:
        self_test(result)
        verdict = "PASS"
    except CalibrationError:
        verdict = "FAIL"
    text = result.summary() + f"\nbuilt-in table: {DEFAULT_SIDES.code}\nself-test: {verdict}"
    doc = {"results": {"survivors": result.survivors, "tested": len(result.flags),
                       "builtin": DEFAULT_SIDES.code}, "checks": {"self_test": verdict}}
    _emit(args, text, doc)
    return EXIT_OK if verdict == "PASS" else EXIT_CHECK


# -- report ------------------------------------------------------------------

SUMMARY_FIELDS = ["name", "crossings", "components", "writhe", "arrow_polynomial", "normalized",
                  "a_span", "chi", "orientable", "genus", "vc_bound", "thickness",
                  "plain_ok", "dotted_ok", "full_ok", "reconstruction"]


def _report_row(name: str, d: VirtualLinkDiagram, out: Path, limit: int, figures: bool) -> dict:
    from .plotting import plot_betti_table, plot_diagonals

    cube = build_cube(d)
    atom = atom_characteristics(d, cube)
    row = {"name": name, "crossings": d.n, "components": d.component_count, "writhe": writhe(d),
           "arrow_polynomial": render(arrow_polynomial(d)), "normalized": render(normalized_arrow_polynomial(d)),
           "a_span": a_span(arrow_polynomial(d)), "chi": atom.euler_characteristic,
           "orientable": atom.orientable, "genus": "" if atom.genus is None else atom.genus}
    tables = {}
    for system in GradingSystem:
        c = build_complex(cube, system, limit)
        sq = verify_d_squared(c)
        row[f"{system.value}_ok"] = sq.ok
        if not sq.ok:
            continue
        t = betti_table(c, True)
        tables[system.value] = t
        with open(out / f"betti_{name}_{system.value}.tsv", "w", newline="") as fh:
            fh.write(t.render() + "\n")
        if system is GradingSystem.FULL:
            row["reconstruction"] = euler_reconstruct(c) == ArrowPolynomial.from_laurent(D) * arrow_polynomial(d)
            row["vc_bound"] = virtual_crossing_lower_bound(betti_table(c))
        if figures:
            plot_betti_table(t, out / f"betti_{name}_{system.value}.png", f"{name}: {system.value} (normalized)")
    row.setdefault("vc_bound", "")
    row.setdefault("reconstruction", "")
    row["thickness"] = thickness(tables["plain"]) if "plain" in tables and tables["plain"].entries else ""
    if figures and tables:
        plot_diagonals(tables, out / f"diagonals_{name}.png")
    return row


def cmd_report(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.inputs:
        items = [read_diagram(s) for s in args.inputs]
    else:
        items = [(e.name, e.diagram) for e in corpus_mod.corpus(random_count=args.random, seed=args.seed)]
    rows = []
    for name, d in items:
        if d.n > args.complex_limit:
            print(f"# skipping {name}: {d.n} crossings exceeds the complex limit", file=sys.stderr)
            continue
        (out / f"{name}.gc").write_text(serialize(d) + "\n")
        rows.append(_report_row(name, d, out, args.complex_limit, not args.no_figures))
    summary = out / "summary.tsv"
    with open(summary, "w", newline="") as fh:
        w = csv.DictWriter(fh, SUMMARY_FIELDS, delimiter="\t", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    if args.format == "json":
        print(json.dumps({"config": {"out": str(out)}, "results": rows}, sort_keys=True, indent=2, default=str))
    else:
        print(summary.read_text(), end="")
        print(f"# wrote {summary} and per-diagram tables{'' if args.no_figures else ' and figures'} to {out}")
    failed = any(not (r["plain_ok"] and r["dotted_ok"] and r["full_ok"]) or r["reconstruction"] is False
                 for r in rows)
    return EXIT_CHECK if failed else EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arrowkh", description=__doc__.splitlines()[0] if __doc__ else None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def add_input(sp):
        sp.add_argument("input", nargs="?", help="Gauss code file, '-' for stdin, or a bundled name")
        sp.add_argument("--code", help="inline Gauss code (use ';' or newlines between components)")
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        sp.add_argument("--complex-limit", type=int, default=DEFAULT_COMPLEX_LIMIT)
        sp.add_argument("--sides", help=argparse.SUPPRESS)

    sp = sub.add_parser("compute", help="arrow polynomial, normalized W, bracket or flat specialization")
    add_input(sp)
    sp.add_argument("--invariant", choices=INVARIANTS + ("all",), default="arrow")
    sp.add_argument("--limit", type=int, default=DEFAULT_STATE_LIMIT)
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("homology", help="Betti table and differential checks")
    add_input(sp)
    sp.add_argument("--grading", choices=[s.value for s in GradingSystem], default="full")
    sp.add_argument("--normalized", action="store_true")
    sp.add_argument("--dump-matrix", action="store_true")
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("verify", help="invariance under seeded random move sequences")
    add_input(sp)
    sp.add_argument("--moves", default="r1,r2,r3")
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--length", type=int, default=10, help="moves per sequence")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="atom data and the crossing, span and thickness bounds")
    add_input(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("calibrate", help="rerun the cusp side table calibration")
    sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    sp.add_argument("--walks", type=int, default=6)
    sp.add_argument("--length", type=int, default=8)
    sp.set_defaults(func=cmd_calibrate)

    sp = sub.add_parser("report", help="summary TSV, Betti TSVs and PNG figures for a batch")
    sp.add_argument("inputs", nargs="*", help="files or bundled names (default: the corpus)")
    sp.add_argument("--out", default="report")
    sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    sp.add_argument("--complex-limit", type=int, default=DEFAULT_COMPLEX_LIMIT)
    sp.add_argument("--random", type=int, default=4, help="random codes added to the default corpus")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-figures", action="store_true")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "code", None):
        args.code = args.code.replace(";", "\n")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        if isinstance(exc, (CubeSizeError, ComplexSizeError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_LIMIT
        if isinstance(exc, HomologyError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CHECK
        raise
    except LimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
