#!/usr/bin/env python3
"""Time the numba kernels against their numpy fallbacks.

Runs both backends on the same inputs, checks they agree, and prints one
JSON line per case.
"""

import argparse
import json
import sys
import time

import numpy as np

from ascurves import _kernels
from ascurves.families import thm41_curve, thm42_curve
from ascurves.gf import field_create
from ascurves.quadform import form_matrices

COUNT_CASES = {
    "F_3^8 thm41": lambda: thm41_curve(3, 4, 4, 8).S,
    "F_3^12 thm42": lambda: thm42_curve(3, 4, 4, 12).S,
    "F_5^8 thm41": lambda: thm41_curve(5, 4, 4, 8).S,
}


def best_of(fn, runs):
    times = []
    result = None
    for _ in range(runs):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def bench_count(name, S, runs):
    ctx = S.ctx
    forms = form_matrices(S)
    hi = ctx.p ** (ctx.degree - 1)
    row = {"kernel": "count_form_zeros", "case": name, "elements": ctx.order}
    t_np, n_np = best_of(lambda: _kernels.count_form_zeros_numpy(forms, ctx.p, 0, hi), runs)
    row["numpy_s"] = round(t_np, 4)
    if _kernels.HAVE_NUMBA:
        _kernels.count_form_zeros_numba(forms, ctx.p, 0, 1)
        t_nb, n_nb = best_of(lambda: _kernels.count_form_zeros_numba(forms, ctx.p, 0, hi), runs)
        if n_nb != n_np:
            raise SystemExit(f"backends disagree on {name}: {n_nb} != {n_np}")
        row.update(numba_s=round(t_nb, 4), speedup=round(t_np / t_nb, 1))
    row["zeros"] = n_np
    return row


def bench_mul(key, size, runs):
    ctx = field_create(*key)
    gen = np.random.default_rng(0)
    x = gen.integers(0, ctx.p, size=(size, ctx.degree))
    y = gen.integers(0, ctx.p, size=(size, ctx.degree))
    row = {"kernel": "batch_mul", "case": f"F_{ctx.p}^{ctx.degree}", "rows": size}
    t_np, ref = best_of(lambda: _kernels.batch_mul_numpy(x, y, ctx.reduction, ctx.p), runs)
    row["numpy_s"] = round(t_np, 4)
    if _kernels.HAVE_NUMBA:
        _kernels.batch_mul_numba(x[:2], y[:2], ctx.reduction, ctx.p)
        t_nb, out = best_of(lambda: _kernels.batch_mul_numba(x, y, ctx.reduction, ctx.p), runs)
        if not (out == ref).all():
            raise SystemExit(f"batch_mul backends disagree on {key}")
        row.update(numba_s=round(t_nb, 4), speedup=round(t_np / t_nb, 1))
    return row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=3)
    ap.add_argument("--rows", type=int, default=200_000, help="batch size for batch_mul")
    ap.add_argument("--quick", action="store_true", help="skip the largest field")
    args = ap.parse_args(argv)

    if not _kernels.HAVE_NUMBA:
        print("numba disabled; timing the numpy path only", file=sys.stderr)
    for name, build in COUNT_CASES.items():
        if args.quick and "5^8" in name:
            continue
        print(json.dumps(bench_count(name, build(), args.runs)))
    for key in [(3, 1, 12), (5, 2, 4)]:
        print(json.dumps(bench_mul(key, args.rows, args.runs)))


if __name__ == "__main__":
    main()
