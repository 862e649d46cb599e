"""Command-line front end: ``hypinv {dims,table,analyze,verify}``.

Output is one JSON document (or CSV for ``table --format csv``) carrying
``schema_version``.  Exit codes: 0 success (empty families included),
1 a verification check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import curves as cv
from . import moduli as md
from . import suites
from .census import CensusError
from .divisors import DivisorError
from .ff import BudgetError, FieldError

SCHEMA_VERSION = 1
TABLE_COLUMNS = ("pi", "g", "r", "dim_C", "dim_Ch", "window")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits 2; keep the message on stderr
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _record(command: str, inputs: dict, results, notes: Sequence[str] = ()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "notes": list(notes),
    }


def _dim(fd: md.FamilyDim) -> dict:
    return fd.as_dict()


def _maybe(fn, *args):
    try:
        return fn(*args)
    except md.QueryError as exc:
        return {"status": "not_applicable", "reason": str(exc)}


# ---------------------------------------------------------------------------
# dims / table


def cmd_dims(args) -> tuple[dict, int]:
    pi, g = args.pi, args.g
    md.FamilyQuery(pi, g, md.BaseKind(args.base))
    r = md.ramification_count(pi, g)
    res: dict = {"r": r, "window": md.in_window(pi, g), "dim_C": _dim(md.dim_family(pi, g))}
    if g > 0:
        res["dim_C_fixed_base"] = _maybe(lambda: _dim(md.dim_fixed_base(pi, g)))
    if g >= 2:
        res["dim_C_hyperelliptic_base"] = _dim(md.dim_family_hyperelliptic_base(pi, g))
    notes = ["fixed-base dimensions are for generic branch points"]
    if args.hyperelliptic_cover:
        res["dim_Ch"] = _dim(md.dim_hyp_family(pi, g))
        if g > 0:
            res["dim_Ch_fixed_base"] = _maybe(lambda: _dim(md.dim_hyp_fixed_base(pi, g, args.base)))
            res["branch_image_dim"] = _maybe(
                lambda: {str(k): v for k, v in md.branch_image_dim(g, args.base).items()}
            )
        if g > 0 and md.in_window(pi, g):
            res["complement_g"] = md.complement_genus(pi, g)
            res["branch_form"] = _maybe(lambda: vars(md.branch_form(pi, g, args.base)))
    return _record("dims", {"pi": pi, "g": g, "base": args.base, "hyperelliptic_cover": args.hyperelliptic_cover}, res, notes), 0


def table_rows(pi_max: int, g_max: int) -> list[dict]:
    rows = []
    for pi in range(2, pi_max + 1):
        for g in range(0, g_max + 1):
            c, ch = md.dim_family(pi, g), md.dim_hyp_family(pi, g)
            rows.append(
                {
                    "pi": pi,
                    "g": g,
                    "r": c.r,
                    "dim_C": "empty" if c.empty else c.dim,
                    "dim_Ch": "empty" if ch.empty else ch.dim,
                    "window": md.in_window(pi, g),
                }
            )
    return rows


def cmd_table(args) -> tuple[dict | str, int]:
    if not 2 <= args.pi_max <= 200:
        raise UsageError("--pi-max must lie in 2..200")
    if args.g_max < 0:
        raise UsageError("--g-max must be non-negative")
    rows = table_rows(args.pi_max, args.g_max)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow(row | {"window": str(row["window"]).lower()})
        return buf.getvalue(), 0
    return _record("table", {"pi_max": args.pi_max, "g_max": args.g_max}, {"columns": list(TABLE_COLUMNS), "rows": rows}), 0


# ---------------------------------------------------------------------------
# analyze


def analyze_curve(C: cv.HyperCurve, k: int, allow_genus1: bool = False) -> dict:
    invs = cv.find_involutions(C, k, allow_genus1=allow_genus1)
    delta = next(s for s in invs if s.is_canonical())
    out = []
    for s in invs:
        rep = cv.fixed_points_geometric(s)
        g = cv.quotient_genus(s, rep)
        item = {
            "moebius": list(s.moebius),
            "y_factor": s.y_factor,
            "action": s.describe(),
            "canonical": s.is_canonical(),
            "r": rep.r,
            "quotient_genus": g,
        }
        quo = cv.quotient_curve_normal_form(s)
        if isinstance(quo, cv.HyperCurve):
            item["quotient"] = {"f": list(quo.f.coeffs), "equation": str(quo), "genus": quo.genus}
        else:
            item["quotient"] = {"unsupported": quo.reason}
        hurwitz = rep.r == md.ramification_count(C.genus, g) and (
            not isinstance(quo, cv.HyperCurve) or quo.genus == g
        )
        item["hurwitz_check"] = "pass" if hurwitz else "fail"
        if s.is_canonical():
            item["complement_check"] = "n/a"
        else:
            h = cv.quotient_genus(cv.compose(delta, s))
            item["complement_genus"] = h
            item["complement_check"] = "pass" if h == C.genus - g else "fail"
        out.append(item)
    return {
        "curve": str(C),
        "genus": C.genus,
        "infinity_model": C.infinity_model,
        "involutions": out,
        "passed": all(i["hurwitz_check"] == "pass" and i["complement_check"] != "fail" for i in out),
    }


def cmd_analyze(args) -> tuple[dict, int]:
    if args.ext < 1:
        raise UsageError("--ext must be positive")
    C = cv.make_curve(args.p, cv.parse_coefficients(args.f))
    res = analyze_curve(C, args.ext, args.allow_genus1)
    notes = ["field elements of F_p^k are encoded as integers sum c_i p^i"] if args.ext > 1 else []
    rec = _record("analyze", {"p": args.p, "f": args.f, "ext": args.ext}, res, notes)
    return rec, 0 if res["passed"] else 1


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> tuple[dict, int]:
    q_list = tuple(int(t) for t in args.q_list.split(","))
    res = suites.run_suite(args.suite, args.genus, args.q, q_list)
    inputs = {"suite": args.suite, "genus": args.genus, "q": args.q}
    if args.suite == "branch-locus":
        inputs = {"suite": args.suite, "q_list": list(q_list)}
    return _record("verify", inputs, res), 0 if res["passed"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hypinv", description="Involutions of hyperelliptic curves: dimensions, analysis, verification.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dims", help="dimensions of the families for one (pi, g)")
    d.add_argument("--pi", type=int, required=True, help="genus of the covering curve")
    d.add_argument("--g", type=int, required=True, help="genus of the quotient")
    d.add_argument("--base", default="any", choices=[k.value for k in md.BaseKind if k != md.BaseKind.GENERIC])
    d.add_argument("--hyperelliptic-cover", action="store_true", help="also report the hyperelliptic-cover family")

    t = sub.add_parser("table", help="grid of dimensions for 2 <= pi <= pi_max, 0 <= g <= g_max")
    t.add_argument("--pi-max", type=int, required=True)
    t.add_argument("--g-max", type=int, required=True)
    t.add_argument("--format", default="json", choices=("json", "csv"))

    a = sub.add_parser(
        "analyze",
        help="involutions of y^2 = f(x) over F_p^k",
        description="Coefficients are comma-separated integers, constant term first: 1,0,1,0,0,0,1 is x^6 + x^2 + 1.",
    )
    a.add_argument("--p", type=int, required=True)
    a.add_argument("--f", required=True, help="coefficients, constant term first")
    a.add_argument("--ext", type=int, default=1, help="search involutions over F_p^ext")
    a.add_argument("--allow-genus1", action="store_true")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=suites.SUITES)
    v.add_argument("--genus", type=int, default=2)
    v.add_argument("--q", type=int, default=7)
    v.add_argument("--q-list", default="5,7,11", help="field sizes for the branch-locus suite")

    for p in (d, t, a, v):
        p.add_argument("--out", help="write the output to this file instead of stdout")
    return ap


COMMANDS = {"dims": cmd_dims, "table": cmd_table, "analyze": cmd_analyze, "verify": cmd_verify}
INPUT_ERRORS = (
    UsageError,
    md.QueryError,
    cv.CurveError,
    cv.InvolutionError,
    FieldError,
    BudgetError,
    CensusError,
    DivisorError,
    suites.SuiteError,
    ValueError,
)


def render(doc) -> str:
    if isinstance(doc, str):
        return doc
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, code = COMMANDS[args.command](args)
    except INPUT_ERRORS as exc:
        print(f"hypinv {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = render(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
