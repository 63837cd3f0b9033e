"""Command line front end: ``varcount count|snf|congruence|selftest``.

Exit codes: 0 success, 1 input error, 2 disagreement between methods (or a
failed self-check), 3 brute-force budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from importlib import resources
from typing import Sequence, TextIO

from . import __version__
from .congruence import is_solvable, parse_congruence_file, solution_count, transformed_rhs
from .document import FORMAT_VERSION, InputDocument, parse, render
from .errors import BudgetExceeded, InputError, InvalidSystem
from .intlinalg import format_matrix, parse_matrix, snf, verify_decomposition
from .oracle import OracleConfig, brute_force_count
from .theorem import CASE_TERMS, count_points
from .variety import StaircaseSystem, from_poly_system

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DISAGREE = 2
EXIT_BUDGET = 3

AUTO_CHECK_LIMIT = 10**6
METHODS = ("formula", "bruteforce", "both")

log = logging.getLogger("varcount")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(report: dict, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        json.dump(report, out, indent=2)
        out.write("\n")
    else:
        out.write(_text(report))


def _text(report: dict, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_text(value, indent + "  ").rstrip("\n"))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            lines.extend(indent + "  " + row for row in _table(value))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{indent}{key}:")
            for row in value:
                lines.append(f"{indent}  " + " ".join(map(str, row)))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: " + ", ".join(map(str, value)))
        elif value is None:
            lines.append(f"{indent}{key}: n/a")
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(map(str, v)) + ")"
    return "n/a" if v is None else str(v)


def _table(rows: list[dict]) -> list[str]:
    cols = list(rows[0])
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    fmt = lambda row: "  ".join(x.rjust(w) for x, w in zip(row, widths)).rstrip()  # noqa: E731
    return [fmt(cols)] + [fmt(row) for row in cells]


# -- count --------------------------------------------------------------------


def _structure(sys_: StaircaseSystem) -> dict:
    return {
        "r1": sys_.r1,
        "r2": sys_.r2,
        "r3": sys_.r3,
        "r4": sys_.r4,
        "n1": sys_.n1,
        "n2": sys_.n2,
        "n3": sys_.n3,
        "n4": sys_.n4,
        "equations_swapped": sys_.swapped,
    }


def count_report(
    doc: InputDocument,
    method: str = "formula",
    *,
    primitive=None,
    trust_closed_form: bool = False,
    auto_check: bool = True,
    cfg: OracleConfig | None = None,
) -> tuple[int, dict]:
    """Run ``count`` on a parsed document; returns (exit code, report)."""
    cfg = cfg or OracleConfig.from_env()
    field = doc.build_field(primitive)
    ps = doc.to_poly_system(field)
    report: dict = {
        "format": FORMAT_VERSION,
        "command": "count",
        "field": {
            "p": field.p,
            "n": field.n,
            "q": field.q,
            "modulus": field.modulus_string(),
            "primitive": field.format_element(field.alpha),
        },
        "system": [ln for ln in render(doc).splitlines() if ln.startswith("eq:")],
        "method": method,
    }
    code = EXIT_OK
    formula_N = oracle_N = None
    timings = {}

    if method in ("formula", "both"):
        sys_ = from_poly_system(ps)
        t0 = time.perf_counter()
        bd = count_points(sys_, trust_closed_form=trust_closed_form)
        timings["formula_s"] = round(time.perf_counter() - t0, 6)
        formula_N = bd.N
        report["structure"] = _structure(sys_)
        report["case"] = bd.case
        report["case_label"] = bd.case_label
        report["selected_terms"] = [f"N{i}" for i in CASE_TERMS[bd.case]]
        report["levels"] = [
            {k: v for k, v in lv.to_dict().items() if k != "matrix"}
            for lv in (bd.levels[k] for k in sorted(bd.levels))
        ]
        report["terms"] = {f"N{i}": bd.terms[i] for i in range(7)}
        report["quarantined"] = bd.quarantined

    total = field.q**ps.nvars
    want_oracle = method in ("bruteforce", "both") or (
        auto_check and total <= min(AUTO_CHECK_LIMIT, cfg.max_points)
    )
    if formula_N is not None and report.get("quarantined"):
        want_oracle = True
    if want_oracle:
        t0 = time.perf_counter()
        try:
            oracle_N = brute_force_count(ps, cfg)
        except BudgetExceeded as exc:
            if method == "formula" and not report.get("quarantined"):
                oracle_N = None
            else:
                report["error"] = str(exc)
                report["required_budget"] = exc.required
                return EXIT_BUDGET, report
        timings["oracle_s"] = round(time.perf_counter() - t0, 6)

    report["formula_N"] = formula_N
    report["oracle_N"] = oracle_N
    if formula_N is not None and oracle_N is not None:
        report["agree"] = formula_N == oracle_N
        if not report["agree"] and not report.get("quarantined"):
            code = EXIT_DISAGREE
    else:
        report["agree"] = None
    if report.get("quarantined"):
        report["N"] = oracle_N
    else:
        report["N"] = formula_N if formula_N is not None else oracle_N
    report["timings"] = timings
    return code, report


def cmd_count(args, out: TextIO) -> int:
    doc = parse(_read(args.input))
    method = args.method or doc.option("method", "formula")
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    fmt = args.format or doc.option("format", "text")
    cfg = OracleConfig.from_env(**({"max_points": args.budget} if args.budget else {}))
    code, report = count_report(
        doc,
        method,
        primitive=args.primitive,
        trust_closed_form=args.trust_closed_form,
        auto_check=not args.no_check,
        cfg=cfg,
    )
    _emit(report, fmt, out)
    if code == EXIT_DISAGREE:
        print(
            f"error: formula gives {report['formula_N']}, brute force gives {report['oracle_N']}",
            file=sys.stderr,
        )
    return code


# -- snf / congruence -------------------------------------------------------


def cmd_snf(args, out: TextIO) -> int:
    E = parse_matrix(_read(args.input))
    dec = snf(E)
    report = {
        "format": FORMAT_VERSION,
        "command": "snf",
        "invariants": list(dec.invariants),
        "rank": dec.rank,
        "D": dec.diagonal(),
        "U": [list(r) for r in dec.U],
        "V": [list(r) for r in dec.V],
    }
    code = EXIT_OK
    if args.verify:
        report["verified"] = verify_decomposition(E, dec)
        if not report["verified"]:
            code = EXIT_DISAGREE
    if (args.format or "text") == "json":
        _emit(report, "json", out)
    else:
        out.write(f"invariants: {', '.join(map(str, dec.invariants)) or '(none)'}\n")
        out.write(f"rank: {dec.rank}\n")
        for name in ("D", "U", "V"):
            out.write(f"{name}:\n{format_matrix(report[name])}\n")
        if args.verify:
            out.write(f"verified: {report['verified']}\n")
    return code


def cmd_congruence(args, out: TextIO) -> int:
    sys_ = parse_congruence_file(_read(args.input))
    dec = sys_.decompose()
    solvable = is_solvable(sys_, dec)
    report = {
        "format": FORMAT_VERSION,
        "command": "congruence",
        "m": sys_.m,
        "invariants": list(dec.invariants),
        "rank": dec.rank,
        "transformed_rhs": transformed_rhs(sys_, dec),
        "solvable": "yes" if solvable else "no",
        "count": solution_count(sys_, dec),
    }
    _emit(report, args.format or "text", out)
    return EXIT_OK


# -- selftest -------------------------------------------------------------------

GOLDEN = {
    "N": 1438,
    "terms": {2: 196, 3: 234, 4: 1008},
    "H": {2: 9, 3: 4, 4: 84},
    "invariants": {3: (1, 1, 1), 2: (1, 1, 1, 4), 4: (1, 1, 1, 1, 4)},
}


def example_document() -> InputDocument:
    text = resources.files("varcount").joinpath("data/example41.vc").read_text("utf-8")
    return parse(text)


def cmd_selftest(args, out: TextIO) -> int:
    doc = example_document()
    sys_ = from_poly_system(doc.to_poly_system())
    bd = count_points(sys_)
    checks = [("N (formula)", bd.N, GOLDEN["N"])]
    for i, v in GOLDEN["terms"].items():
        checks.append((f"N{i}", bd.terms[i], v))
    for lv, v in GOLDEN["H"].items():
        checks.append((f"H{lv}", bd.levels[lv].H, v))
    for lv, v in GOLDEN["invariants"].items():
        checks.append((f"invariants E^({lv})", bd.levels[lv].invariants, v))
    checks.append(("N (brute force)", brute_force_count(doc.to_poly_system()), GOLDEN["N"]))
    ok = True
    results = []
    for name, got, want in checks:
        passed = got == want
        ok &= passed
        results.append({"check": name, "got": str(got), "expected": str(want), "pass": passed})
    if (args.format or "text") == "json":
        _emit({"format": FORMAT_VERSION, "command": "selftest", "checks": results, "pass": ok}, "json", out)
    else:
        for r in results:
            out.write(f"{'PASS' if r['pass'] else 'FAIL'}  {r['check']}: {r['got']} (expected {r['expected']})\n")
        out.write("selftest passed\n" if ok else "selftest FAILED\n")
    return EXIT_OK if ok else EXIT_DISAGREE


# -- entry points -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varcount",
        description="Exact point counts for two-equation staircase varieties over F_q.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count F_q-points of a .vc document")
    p.add_argument("--input", "-i", required=True, help="input .vc file, '-' for stdin")
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--format", choices=("text", "json"))
    p.add_argument("--primitive", help="override the primitive element (e.g. 3 or \"1+t\")")
    p.add_argument(
        "--trust-closed-form",
        "--trust-paper",
        dest="trust_closed_form",
        action="store_true",
        help="report quarantined closed forms as authoritative",
    )
    p.add_argument("--no-check", action="store_true", help="skip the automatic brute-force cross-check")
    p.add_argument("--budget", type=int, help="brute-force evaluation budget (default: $VC_BUDGET or 1e8)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--verify", action="store_true", help="check the decomposition invariants")
    p.add_argument("--format", choices=("text", "json"))
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("congruence", help="solvability and solution count of H Y = B (mod m)")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--format", choices=("text", "json"))
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("selftest", help="check the built-in F_7 golden example")
    p.add_argument("--format", choices=("text", "json"))
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "count" and args.primitive is not None:
        args.primitive = int(args.primitive) if args.primitive.lstrip("-").isdigit() else args.primitive
    try:
        return args.func(args, out)
    except InvalidSystem as exc:
        print("error: not a staircase system:", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
