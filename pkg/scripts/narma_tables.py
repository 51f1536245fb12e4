#!/usr/bin/env python3
"""Reproduce the NARMA benchmark tables at desk scale.

Runs the grid sweep for each model kind and reservoir size, selects the
best configuration on validation error, and prints one table row per
size. Use --grid full for the complete published grid (slow) or the
default fast preset.

Example:
    python3 scripts/narma_tables.py --sizes 100 200 --seed 0 --out narma.csv
"""

import argparse
import csv

from crlab import selection, tasks


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200])
    ap.add_argument("--kinds", nargs="+", default=["SCR", "cESN", "CRJ", "cjESN"])
    ap.add_argument("--grid", choices=["fast", "full"], default="fast")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="narma_tables.csv")
    args = ap.parse_args()

    spec = selection.default_grid() if args.grid == "full" else selection.fast_grid()
    task = tasks.generate_narma10(10000, seed=args.seed)

    rows = []
    print(f"{'N_R':>5} {'model':>10} {'valid':>10} {'test':>10}  config")
    for n_r in args.sizes:
        for kind in args.kinds:
            configs = selection.enumerate_grid(spec, kind, n_r)
            results = selection.run_sweep(configs, task, workers=args.workers)
            best = selection.select_best(results)
            c = best.config
            print(
                f"{n_r:>5} {kind:>10} {best.valid_err:>10.4f} {best.test_err:>10.4f}"
                f"  topo={c.topology} v={c.v} wc={c.w_c} wj={c.w_j} "
                f"tau={c.tau_j} alpha={c.alpha} lambda={c.lam:g}"
            )
            rows.append([n_r, kind, best.valid_err, best.test_err, c.topology,
                         c.v, c.w_c, c.w_j, c.tau_j, c.alpha, c.lam])

    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n_r", "model", "valid_err", "test_err", "topology",
                    "v", "w_c", "w_j", "tau_j", "alpha", "lambda"])
        w.writerows(rows)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
