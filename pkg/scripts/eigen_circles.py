#!/usr/bin/env python3
"""Dump eigenvalue spectra for a family of concentric reservoirs.

Writes one CSV per configuration (columns re, im); jump-free concentric
reservoirs produce concentric circles of radius equal to each cycle
weight, and jumps scatter points off the circles. Plot with any tool,
e.g. `python3 -c "..."` or a spreadsheet.
"""

import argparse

from crlab import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--topology", default="300-200-100")
    ap.add_argument("--wc", default="0.3,0.6,0.9")
    ap.add_argument("--wj", type=float, default=0.2)
    ap.add_argument("--tau", type=int, default=10)
    ap.add_argument("--prefix", default="eigen")
    args = ap.parse_args()

    plain = f"{args.prefix}_plain.csv"
    jumped = f"{args.prefix}_jumps.csv"
    cli.main(["eigen", "--topology", args.topology, "--wc", args.wc, "--out", plain])
    cli.main([
        "eigen", "--topology", args.topology, "--wc", args.wc,
        "--wj", str(args.wj), "--tau", str(args.tau), "--out", jumped,
    ])
    print(f"wrote {plain} and {jumped}")


if __name__ == "__main__":
    main()
