"""Command-line front end: classify curves, build family instances, run sweeps."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .curve import Curve, classify, direct_count_oracle, ORACLE_CEILING
from .errors import EnumerationLimitError, HypothesisError, InvariantError
from .families import FAMILY_NAMES, FamilySpec, cor_seed_admissible, verify
from .gf import field_create, prime_power, set_enum_ceiling
from .linpoly import LinPoly
from .upoly import FAMILY_KINDS, check_symmetric_divisor, family_polynomial

EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_HYPOTHESIS, EXIT_FAIL = 0, 2, 3, 4, 5

COLUMNS = ("p", "t", "n", "family", "params", "g", "w", "N", "lower", "upper",
           "verdict", "expected", "pass")

FAMILY_FLAGS = ("q", "m", "seed", "d", "k", "n", "f", "c_interp", "coeffs")


class ParseError(ValueError):
    pass


def _render(payload, rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, extrasaction="ignore",
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if row.get(k) is None else row[k] for k in COLUMNS})
        return buf.getvalue()
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(args, payload, rows) -> None:
    text = _render(payload, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _field_curve(args) -> Curve:
    if args.p is None or args.n is None or args.coeffs is None:
        raise ParseError("--p, --n and --coeffs are required")
    ctx = field_create(args.p, args.t, args.n)
    try:
        S = LinPoly.parse(args.coeffs, ctx)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if any(int(c) >= ctx.order for c in S.coeffs):
        raise ParseError("coefficient encoding exceeds the field size")
    return Curve(S)


def _custom_row(report) -> dict:
    row = {k: getattr(report, k, None) for k in COLUMNS}
    row.update(family="custom", params=report.S, expected="", **{"pass": ""})
    return row


# ------------------------------------------------------------------ commands


def cmd_classify(args) -> int:
    curve = _field_curve(args)
    report = classify(curve, count=not args.predict, workers=args.workers, limit=args.max_enum)
    _emit(args, report.to_dict(), [_custom_row(report)])
    return EXIT_OK


def cmd_oracle(args) -> int:
    curve = _field_curve(args)
    report = classify(curve, workers=args.workers, limit=args.max_enum)
    direct = direct_count_oracle(curve, limit=min(args.max_enum or ORACLE_CEILING, ORACLE_CEILING))
    ok = direct == report.N
    payload = {"report": report.to_dict(), "direct": direct, "agree": ok}
    row = _custom_row(report)
    row["pass"] = "PASS" if ok else "FAIL"
    _emit(args, payload, [row])
    return EXIT_OK if ok else EXIT_FAIL


def spec_from_args(args) -> FamilySpec:
    if args.name is None:
        raise ParseError("--name is required")
    params = {}
    for key in FAMILY_FLAGS:
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if "q" not in params:
        raise ParseError("--q is required")
    if args.perturb:
        idx, val = args.perturb.split("=")
        params["perturb"] = {"index": int(idx), "value": int(val)}
    return FamilySpec(args.name, params)


def cmd_family(args) -> int:
    res = verify(spec_from_args(args), workers=args.workers, limit=args.max_enum)
    payload = dict(res.row(), S=res.instance.curve.S.to_text(), sign=res.report.sign,
                   failures=list(res.failures), note=res.instance.note)
    _emit(args, payload, [res.row()])
    return EXIT_OK if res.passed else EXIT_FAIL


def prop53_rows(r_max: int = 3, s_max: int = 3, p: int = 3) -> list[dict]:
    """Symmetry and divisibility of every standard family polynomial."""
    rows = []
    for kind in FAMILY_KINDS:
        for r in range(1, r_max + 1):
            for s in (range(1, s_max + 1) if kind in ("iii", "iv") else (1,)):
                try:
                    f, k = family_polynomial(kind, r, s, p)
                except HypothesisError:
                    continue
                ok = check_symmetric_divisor(f, k)
                params = f"kind={kind};r={r}" + (f";s={s}" if kind in ("iii", "iv") else "")
                rows.append({
                    "p": p, "t": 1, "n": None, "family": "prop53",
                    "params": f"{params};k={k};f={f}", "verdict": "Divides" if ok else "NoDivide",
                    "expected": "Divides", "pass": "PASS" if ok else "FAIL",
                })
    return rows


def _sweep_specs(args) -> list[FamilySpec]:
    if args.grid:
        with open(args.grid, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, list):
            raise ParseError("grid file must hold a JSON list of family specs")
        try:
            return [FamilySpec.from_dict(d) for d in data]
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError(f"bad grid entry: {exc}") from exc
    base = spec_from_args(args)
    if str(base.params.get("seed")) != "all":
        return [base]
    q, m = int(base.params["q"]), int(base.params["m"])
    p, t = prime_power(q)
    ctx = field_create(p, t, 2 * m)
    specs = []
    for code in ctx.subfield_codes(m):
        if cor_seed_admissible(base.name, q, m, ctx(int(code))):
            specs.append(FamilySpec(base.name, dict(base.params, seed=int(code))))
    return specs


def _verify_row(spec: FamilySpec, limit) -> dict:
    try:
        return verify(spec, limit=limit).row()
    except (HypothesisError, InvariantError) as exc:
        return {"family": spec.name, "params": spec.param_text(), "verdict": "Error",
                "expected": "", "pass": "FAIL", "error": str(exc)}


def cmd_sweep(args) -> int:
    if args.name == "prop53":
        rows = prop53_rows(args.r_max, args.s_max)
    else:
        specs = _sweep_specs(args)
        with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
            rows = list(pool.map(lambda s: _verify_row(s, args.max_enum), specs))
    failed = sum(r["pass"] != "PASS" for r in rows)
    summary = {"rows": len(rows), "pass": len(rows) - failed, "fail": failed}
    _emit(args, {"rows": rows, "summary": summary}, rows)
    print(f"# {summary['pass']}/{summary['rows']} PASS", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# ------------------------------------------------------------------ parser


def _add_common(sp) -> None:
    sp.add_argument("--out", help="write the report here instead of stdout")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--max-enum", type=int, default=None,
                    help="cap on enumerated field size (default 2^26)")
    sp.add_argument("--workers", type=int, default=1)


def _add_field(sp) -> None:
    sp.add_argument("--p", type=int)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--n", type=int)
    sp.add_argument("--coeffs", help='linearized coefficients "enc@i,..." e.g. "1@0,2@2"')


def _add_family(sp, names) -> None:
    sp.add_argument("--name", choices=names)
    sp.add_argument("--q", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--seed", help="canonical encoding of the seed (sweep: 'all')")
    sp.add_argument("--d", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--f", help='polynomial over F_p, e.g. "x^2+x+1"')
    sp.add_argument("--c-interp", dest="c_interp", choices=("direct", "reversed"))
    sp.add_argument("--coeffs", help="coefficients for the prop1 family")
    sp.add_argument("--perturb", help="negative control INDEX=ENC overwriting one coefficient")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ascurves", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="classify y^q - y = x S(x)")
    _add_field(sp)
    sp.add_argument("--predict", action="store_true",
                    help="radical dimension and candidate counts only, no enumeration")
    _add_common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("oracle", help="cross-check the count against direct enumeration")
    _add_field(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("family", help="build and verify one family instance")
    _add_family(sp, FAMILY_NAMES)
    _add_common(sp)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("sweep", help="verify a grid of family instances")
    _add_family(sp, FAMILY_NAMES + ("prop53",))
    sp.add_argument("--grid", help="JSON file with a list of family specs")
    sp.add_argument("--r-max", type=int, default=3)
    sp.add_argument("--s-max", type=int, default=3)
    _add_common(sp)
    sp.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.max_enum is not None:
            set_enum_ceiling(args.max_enum)
        return args.func(args)
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except HypothesisError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
