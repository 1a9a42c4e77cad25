"""Command line front end.

Exit status: 0 computed / verdict passed, 1 verdict failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import serialization as ser
from .knot_data import KnotDataError, delta_second_derivative, load_knot, torsion_coefficients, v_sequence
from .lattice_core import (AssertionViolated, GramLattice, LatticeError, discriminant_group,
                           make_lattice, min_char_norm, owens_strle_check, split_standard)
from .lens_spaces import d_lens, neg_continued_fraction
from .surgery_obstructions import (MODES, DeterminantMismatch, NonCyclicDiscriminant,
                                   beta_bound_check, d_table, l_upper_bound, lattice_obstruction,
                                   lens_table, sharpness_check, standardness_verdict, surgery_table)


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_gram(path: str) -> GramLattice:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "gram" not in doc:
        raise InputError(f"{path}: field 'gram' is missing")
    g = doc["gram"]
    if (not isinstance(g, list) or not g
            or not all(isinstance(row, list) and all(isinstance(x, int) and not isinstance(x, bool)
                                                     for x in row) for row in g)):
        raise InputError(f"{path}: field 'gram' must be a list of integer rows")
    try:
        return make_lattice(g)
    except LatticeError as exc:
        raise InputError(f"{path}: {type(exc).__name__}: {exc}") from exc


def _knot(path: str):
    try:
        return load_knot(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except KnotDataError as exc:
        raise InputError(f"{path}: {type(exc).__name__}: {exc}") from exc


def parse_slope(text: str):
    try:
        s = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid slope {text!r}") from exc
    if s <= 0:
        raise argparse.ArgumentTypeError("slope must be positive")
    return s.numerator, s.denominator


def _integer_slope(slope) -> int:
    p, q = slope
    if q != 1:
        raise InputError(f"--slope {p}/{q}: this command needs an integer slope")
    return p


class Output:
    def __init__(self, args):
        self.json = args.json
        self.out = getattr(args, "out", None)

    def emit(self, payload, text: str, csv: Optional[str] = None):
        if self.out and csv is not None:
            with open(self.out, "w") as fh:
                fh.write(csv)
        sys.stdout.write(ser.dumps(payload) if self.json else text.rstrip("\n") + "\n")


def _table_text(rows, header) -> str:
    cells = [header] + [[ser.rational(x) if isinstance(x, Fraction) else str(x) for x in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


# -- handlers --------------------------------------------------------------

def cmd_dinv_lens(args, out: Output) -> int:
    p, q = args.p, args.q
    orient = "reversed" if args.reversed else "standard"
    try:
        rows = [(p, q, i, d_lens(p, q, i, orient)) for i in range(p)]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    header = ["p", "q", "i", "d"]
    payload = {"p": p, "q": q, "orientation": orient, "values": [r[3] for r in rows]}
    out.emit(payload, _table_text(rows, header), ser.csv_text(header, rows))
    return 0


def cmd_dinv_surgery(args, out: Output) -> int:
    knot = _knot(args.knot)
    V = v_sequence(knot)
    p, q = args.slope
    table = surgery_table(V, p, q)
    rows = [(p, q, i, d) for i, d in enumerate(table.values)]
    header = ["p", "q", "i", "d"]
    payload = {"knot": knot.name, "slope": f"{p}/{q}", "values": list(table.values),
               "formula_level_labels": q > 1}
    out.emit(payload, _table_text(rows, header), ser.csv_text(header, rows))
    return 0


def cmd_knot_vseq(args, out: Output) -> int:
    knot = _knot(args.knot)
    V = v_sequence(knot)
    payload = {"knot": knot.name, "g4": V.g4, "v_sequence": list(V.values)}
    text = f"{knot.name}: g4 = {V.g4}, V = ({', '.join(map(str, V.values))})"
    out.emit(payload, text)
    return 0


def cmd_knot_delta2(args, out: Output) -> int:
    knot = _knot(args.knot)
    if knot.alexander is None:
        raise InputError(f"{args.knot}: field 'alexander' is missing")
    d2 = delta_second_derivative(knot.alexander)
    t = torsion_coefficients(knot.alexander)
    payload = {"knot": knot.name, "alexander": str(knot.alexander), "delta2": d2,
               "torsion_coefficients": list(t)}
    out.emit(payload, f"{knot.name}: Delta = {knot.alexander}, Delta''(1) = {d2}")
    return 0


def _analyze(lat: GramLattice) -> dict:
    disc = discriminant_group(lat)
    rep = owens_strle_check(lat)
    return {
        "rank": lat.rank, "det": lat.det,
        "discriminant_group": list(disc.invariant_factors), "cyclic": disc.is_cyclic,
        "min_char_norm": rep.minimum, "min_char_covector": list(rep.witness),
        "split": str(split_standard(lat)),
        "owens_strle": {"bound": rep.bound, "minimum": rep.minimum, "strict": rep.strict,
                        "standard": rep.standard},
    }


def cmd_lattice_analyze(args, out: Output) -> int:
    lat = load_gram(args.gram)
    info = _analyze(lat)
    group = " + ".join(f"Z/{d}" for d in info["discriminant_group"]) or "0"
    os_ = info["owens_strle"]
    text = "\n".join([
        f"rank            {info['rank']}",
        f"determinant     {info['det']}",
        f"discriminant    {group}{' (cyclic)' if info['cyclic'] else ''}",
        f"min char norm   {ser.rational(info['min_char_norm'])} at {tuple(info['min_char_covector'])}",
        f"split           {info['split']}",
        f"char bound      {ser.rational(os_['bound'])} ({'strict' if os_['strict'] else 'equality'})",
    ])
    out.emit(info, text)
    return 0


def cmd_lattice_standard(args, out: Output) -> int:
    lat = load_gram(args.gram)
    v = split_standard(lat)
    payload = {"standard": v.standard, "delta": v.delta, "verdict": str(v)}
    out.emit(payload, str(v))
    return 0


def _report_text(rep) -> str:
    rows = [("mode", rep.mode), ("verdict", rep.verdict)]
    if rep.witness is not None:
        rows.append(("witness", json.dumps(ser.jsonable(rep.witness), sort_keys=True)))
    rows += [(k, ser.jsonable(rep.data[k])) for k in sorted(rep.data)]
    w = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{w}}  {v}" for k, v in rows)


def cmd_obstruct(args, out: Output) -> int:
    lat = load_gram(args.gram)
    knot = _knot(args.knot)
    n = _integer_slope(args.slope)
    V = v_sequence(knot)
    try:
        rep = lattice_obstruction(lat, d_table(V, n), args.mode)
        verdict = standardness_verdict(V, n, lat)
    except (DeterminantMismatch, NonCyclicDiscriminant) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from exc
    payload = rep.to_json()
    payload["data"] = dict(payload["data"], knot=knot.name, slope=n, branch=verdict.branch,
                           split=verdict.split, threshold=verdict.threshold,
                           square_free=verdict.square_free,
                           note="Pass means the d-invariant obstruction is satisfied, not that a filling exists")
    rep.data.update(branch=verdict.branch, split=verdict.split, threshold=verdict.threshold)
    out.emit(payload, _report_text(rep))
    return 0 if rep.passed else 1


def cmd_sharp(args, out: Output) -> int:
    lat = load_gram(args.gram)
    if args.lens:
        p, q = args.lens
        table = lens_table(p, q).reversed()
    else:
        if not args.knot or not args.slope:
            raise InputError("sharp needs --lens P Q or both --knot and --slope")
        n = _integer_slope(args.slope)
        table = d_table(v_sequence(_knot(args.knot)), n).reversed()
    try:
        rep = sharpness_check(lat, table, args.mode)
    except (DeterminantMismatch, NonCyclicDiscriminant) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from exc
    out.emit(rep.to_json(), _report_text(rep))
    return 0 if rep.passed else 1


def cmd_lbound(args, out: Output) -> int:
    knot = _knot(args.knot)
    V = v_sequence(knot)
    top = args.max_n or 4 * V.g4 + 3
    checks = [beta_bound_check(V, n) for n in range(1, top + 1)]
    bound = l_upper_bound(V)
    payload = {"knot": knot.name, "g4": V.g4, "l_upper_bound": bound, "threshold": 4 * V.g4 + 3,
               "checks": {str(c.n): str(c) for c in checks},
               "note": "upper bound for l(K); existence of non-standard fillings is not certified"}
    rows = [(c.n, str(c)) for c in checks]
    text = _table_text(rows, ["n", "beta bound"]) + f"\nl(K) <= {bound}  (4 g4 + 3 = {4 * V.g4 + 3})"
    out.emit(payload, text)
    return 0


def cmd_verify_suite(args, out: Output) -> int:
    from .verification import CHECKS, run_check
    numbers = args.only or [num for num, _, _ in CHECKS]
    results = []
    for num in numbers:
        res = run_check(num)
        results.append(res)
        if not args.json:
            print(res.line(), flush=True)
    if args.json:
        sys.stdout.write(ser.dumps([{"criterion": r.number, "name": r.name, "passed": r.passed,
                                     "detail": r.detail} for r in results]))
    return 0 if all(r.passed for r in results) else 1


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    table_out = argparse.ArgumentParser(add_help=False)
    table_out.add_argument("--out", metavar="FILE", help="also write the table as CSV")
    mode = argparse.ArgumentParser(add_help=False)
    mode.add_argument("--mode", choices=MODES, default="global")

    parser = argparse.ArgumentParser(prog="surgery-lattices",
                                     description="Correction terms and lattice obstructions for knot surgeries")
    sub = parser.add_subparsers(dest="command", required=True)

    dinv = sub.add_parser("dinv", help="correction-term tables").add_subparsers(dest="what", required=True)
    p = dinv.add_parser("lens", parents=[common, table_out], help="d(L(p,q), i)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--reversed", action="store_true", help="use -d(L(p, p-q), i)")
    p.set_defaults(handler=cmd_dinv_lens)
    p = dinv.add_parser("surgery", parents=[common, table_out], help="d(S^3_{p/q}(K), i)")
    p.add_argument("--knot", required=True)
    p.add_argument("--slope", type=parse_slope, required=True, help="N or P/Q")
    p.set_defaults(handler=cmd_dinv_surgery)

    knot = sub.add_parser("knot", help="knot data").add_subparsers(dest="what", required=True)
    p = knot.add_parser("vseq", parents=[common], help="V-sequence")
    p.add_argument("--knot", required=True)
    p.set_defaults(handler=cmd_knot_vseq)
    p = knot.add_parser("delta2", parents=[common], help="second derivative of Delta at 1")
    p.add_argument("--knot", required=True)
    p.set_defaults(handler=cmd_knot_delta2)

    lattice = sub.add_parser("lattice", help="lattice invariants").add_subparsers(dest="what", required=True)
    p = lattice.add_parser("analyze", parents=[common])
    p.add_argument("--gram", required=True)
    p.set_defaults(handler=cmd_lattice_analyze)
    p = lattice.add_parser("standard", parents=[common])
    p.add_argument("--gram", required=True)
    p.set_defaults(handler=cmd_lattice_standard)

    p = sub.add_parser("obstruct", parents=[common, mode], help="lattice vs n-surgery on a knot")
    p.add_argument("--gram", required=True)
    p.add_argument("--knot", required=True)
    p.add_argument("--slope", type=parse_slope, required=True)
    p.set_defaults(handler=cmd_obstruct)

    p = sub.add_parser("sharp", parents=[common], help="is -L a sharp filling?")
    p.add_argument("--gram", required=True)
    p.add_argument("--knot")
    p.add_argument("--slope", type=parse_slope)
    p.add_argument("--lens", type=int, nargs=2, metavar=("P", "Q"))
    p.add_argument("--mode", choices=MODES, default="matching")
    p.set_defaults(handler=cmd_sharp)

    p = sub.add_parser("lbound", parents=[common], help="upper bound for l(K)")
    p.add_argument("--knot", required=True)
    p.add_argument("--max-n", type=int, help="sweep the beta bound up to N")
    p.set_defaults(handler=cmd_lbound)

    p = sub.add_parser("verify-suite", parents=[common], help="run the acceptance corpus")
    p.add_argument("--only", type=int, nargs="+", metavar="N")
    p.set_defaults(handler=cmd_verify_suite)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, Output(args))
    except AssertionViolated as exc:
        print(f"assertion violated: {exc}", file=sys.stderr)
        return 1
    except (InputError, KnotDataError, LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
