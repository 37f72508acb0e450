"""Command-line front end.

Exit codes: 0 when every check came out as expected (expected FLAGGED items
included), 1 for an unexpected result or a failed computation (a JSON error
object is printed), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .alcove import alcove_weights, root_lattice_weights
from .cyclo import Cyclo, to_complex


def _fmt(x: float, precision: int) -> float:
    return float(f"{x:.{precision}g}")


def _cx(z: complex, precision: int) -> list[float]:
    return [_fmt(z.real, precision), _fmt(z.imag, precision)]


def _value(c: Cyclo, args) -> dict:
    out = {}
    if not args.float:
        out["exact"] = c.to_json()
    if not args.exact:
        out["float"] = _cx(to_complex(c), args.precision)
    return out


def _label(a):
    return a if isinstance(a, str) else [int(a[0]), int(a[1])]


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_default(obj):
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


# -- subcommands ----------------------------------------------------------------

def cmd_alcove(args) -> tuple[str, int]:
    ws = alcove_weights(args.level)
    r0 = set(root_lattice_weights(args.level))
    doc = {
        "level": args.level,
        "count": len(ws),
        "weights": [_label(w) for w in ws],
        "root_lattice": [_label(w) for w in ws if w in r0],
    }
    return _dump(doc), 0


def cmd_fusion(args) -> tuple[str, int]:
    from .fusion import FusionTable

    table = FusionTable(args.level)
    rows = [(a[0], a[1], b[0], b[1], c[0], c[1], n) for a, b, c, n in table.items()]
    if args.csv:
        return _csv(["a1", "a2", "b1", "b2", "c1", "c2", "n"], rows), 0
    doc = {"level": args.level, "size": len(table), "columns": ["a1", "a2", "b1", "b2", "c1", "c2", "n"]}
    doc["coefficients"] = [list(r) for r in rows]
    return _dump(doc), 0


def cmd_modular(args) -> tuple[str, int]:
    from .modular import MODULAR_RELATION, gauss_sum_charge, modular_data

    md = modular_data(args.level)
    if args.csv:
        S = md.s_normalized()
        rows = []
        for i, a in enumerate(md.labels):
            for j, b in enumerate(md.labels):
                z = S[i, j]
                rows.append((a[0], a[1], b[0], b[1], f"{z.real:.{args.precision}g}", f"{z.imag:.{args.precision}g}"))
        head = f"# convention: {MODULAR_RELATION}\n"
        return head + _csv(["a1", "a2", "b1", "b2", "S_re", "S_im"], rows), 0
    _, r = gauss_sum_charge(md.twists, md.dims)
    doc = {
        "convention": MODULAR_RELATION,
        "level": md.level,
        "labels": [_label(a) for a in md.labels],
        "twists": [_value(t, args) for t in md.twists],
        "dims": [_value(d, args) for d in md.dims],
        "global_dim": _value(md.global_dim, args),
        "charge": {"fraction_of_2pi": str(r), **_value(md.charge, args)},
        "s_tilde": [[_value(x, args) for x in row] for row in md.smatrix],
    }
    return _dump(doc), 0


def cmd_condense(args) -> tuple[str, int]:
    from . import condense as cd

    k = args.level
    simples = cd.condensed_simples(k)
    dims = cd.condensed_dims(k)
    twists = cd.condensed_twists(k)
    free = [s for s in simples if s.kind == "free"]
    doc = {
        "level": k,
        "simples": [
            {
                "label": s.label,
                "kind": s.kind,
                "orbit": [_label(w) for w in s.orbit],
                "dim": _value(dims[s.label], args),
                "twist": _value(twists[s.label], args),
            }
            for s in simples
        ],
        "aggregate_fusion": {
            f"{a.label}*{b.label}": cd.free_fusion(a, b, k) for i, a in enumerate(free) for b in free[i:]
        },
        "global_dim": _value(cd.condensed_global_dim(k), args),
        "charge_fraction_of_2pi": str(cd.condensed_charge(k)[1]),
    }
    b, rows, cols = cd.branching_matrix(k)
    doc["branching"] = {"rows": [_label(w) for w in rows], "columns": cols, "matrix": b.tolist()}
    code = 0
    if args.resolved:
        table = cd.resolved_fusion_table(k)
        md = cd.condensed_modular(k)
        doc["resolved_fusion"] = {f"{a}*{b}": table.product(a, b) for a in table.labels for b in table.labels}
        doc["ring_candidates"] = table.ring_candidates
        doc["s_tilde"] = [[_value(x, args) for x in row] for row in md.smatrix]
        if k == 6:
            ref = cd.compare_k6_reference()
            ref["s_max_deviation"] = _fmt(ref["s_max_deviation"], 3)
            ref["first_row"] = [_fmt(x, args.precision) for x in ref["first_row"]]
            ref["modular_relation"] = {key: _fmt(v, 3) for key, v in ref["modular_relation"].items()}
            doc["reference_comparison"] = ref
            code = 0 if ref["s_match"] and ref["t_entrywise_up_to_conjugation"] else 1
    return _dump(doc), code


def cmd_certify(args) -> tuple[str, int]:
    from .condense import simplicity_certificate

    cert = simplicity_certificate(args.m)
    ok = cert["verdict"] in ("simple", "certified simple") or (args.m == 1 and cert["verdict"] == "not simple")
    return _dump(_round_floats(cert, args.precision)), 0 if ok else 1


def cmd_invariant(args) -> tuple[str, int]:
    from .condense import modular_invariant

    Z, rep = modular_invariant(args.level)
    rep = _round_floats(rep, 3)
    rep["Z"] = Z.tolist()
    return _dump(rep), 0 if rep["passed"] else 1


def cmd_witt(args) -> tuple[str, int]:
    from .witt import run_full_ledger

    ledger = run_full_ledger()
    code = 0 if ledger["pattern_matches"] else 1
    if args.check_all:
        rows = [{k: r[k] for k in ("relation", "source", "residue", "verdict")} for r in ledger["relations"]]
        if args.json:
            return _dump(rows), code
        return "".join(f"{r['verdict']:<10} residue {r['residue']:<4} {r['relation']}\n" for r in rows), code
    if args.json:
        return _dump(ledger), code
    lines = ["m   lambda1  lambda2  lambda3"]
    for m, row in ledger["lambda_table"].items():
        lines.append(f"{m:<3} {row['1']:<8} {row['2']:<8} {row['3']}")
    return "\n".join(lines) + "\n", code


def cmd_verify_all(args) -> tuple[str, int]:
    from .verify import run_all

    report = run_all(args.max_level, args.max_m)
    code = 0 if report["passed"] else 1
    if args.json:
        return _dump(report), code
    out = [f"sl3mtc {__version__} verify-all max_level={args.max_level} max_m={args.max_m}"]
    out.append(f"convention: {report['conventions']['modular_relation']}")
    out += report["lines"]
    for group, rows in report["sweeps"].items():
        bad = [key for key, checks in rows.items() if not all(checks.values())]
        out.append(f"sweep {group}: {'PASS' if not bad else 'FAIL ' + ','.join(bad)}")
    out.append("overall: " + ("PASS" if report["passed"] else "FAIL"))
    return "\n".join(out) + "\n", code


def _round_floats(obj, precision: int):
    if isinstance(obj, float):
        return _fmt(obj, precision)
    if isinstance(obj, dict):
        return {k: _round_floats(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, precision) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


# -- parser -------------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _precision(text: str) -> int:
    n = _positive(text)
    if n > 17:
        raise argparse.ArgumentTypeError("precision must be between 1 and 17")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE", help="write output to FILE (UTF-8) instead of stdout")
    common.add_argument("--precision", type=_precision, default=12, help="significant digits for floats")

    p = argparse.ArgumentParser(prog="sl3mtc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("alcove", parents=[common], help="list the level-k alcove")
    s.add_argument("--level", type=_positive, required=True)
    s.add_argument("--json", action="store_true", help="JSON output (the default)")
    s.set_defaults(func=cmd_alcove)

    s = sub.add_parser("fusion", parents=[common], help="full fusion table")
    s.add_argument("--level", type=_positive, required=True)
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_fusion)

    s = sub.add_parser("modular", parents=[common], help="twists, dimensions, S-matrix, charge")
    s.add_argument("--level", type=_positive, required=True)
    kind = s.add_mutually_exclusive_group()
    kind.add_argument("--exact", action="store_true", help="exact values only")
    kind.add_argument("--float", action="store_true", help="float values only")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_modular)

    s = sub.add_parser("condense", parents=[common], help="Type-D condensation at 3 | k")
    s.add_argument("--level", type=_positive, required=True)
    s.add_argument("--resolved", action="store_true", help="include the resolved table (k = 3, 6)")
    s.add_argument("--json", action="store_true", help="JSON output (the default)")
    kind = s.add_mutually_exclusive_group()
    kind.add_argument("--exact", action="store_true")
    kind.add_argument("--float", action="store_true")
    s.set_defaults(func=cmd_condense)

    s = sub.add_parser("certify", parents=[common], help="simplicity certificate at level 3m")
    s.add_argument("--m", type=_positive, required=True)
    s.add_argument("--json", action="store_true", help="JSON output (the default)")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("invariant", parents=[common], help="modular invariant Z = b b^T")
    s.add_argument("--level", type=_positive, required=True)
    s.add_argument("--json", action="store_true", help="JSON output (the default)")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("witt", parents=[common], help="central-charge ledger")
    s.add_argument("--check-all", action="store_true", help="check every registered relation")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_witt)

    s = sub.add_parser("verify-all", parents=[common], help="run the acceptance checks")
    s.add_argument("--max-level", type=_positive, default=8)
    s.add_argument("--max-m", type=_positive, default=10)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for flag in ("exact", "float", "csv"):
        if not hasattr(args, flag):
            setattr(args, flag, False)
    try:
        text, code = args.func(args)
    except (ValueError, ArithmeticError, ZeroDivisionError, RuntimeError) as exc:
        text = _dump({"error": type(exc).__name__, "message": str(exc), "command": args.command})
        code = 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
