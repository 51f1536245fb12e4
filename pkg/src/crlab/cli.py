"""Command-line interface.

Subcommands:
    eigen   dump reservoir eigenvalues (re, im) to CSV
    bench   run one benchmark trial end-to-end
    mc      estimate memory capacity for one configuration
    grid    run a hyperparameter/topology grid sweep

Every output file is accompanied by a JSON manifest recording the
resolved configuration, seeds and data provenance, so any run can be
reproduced from the manifest alone. All randomness flows from explicit
seeds (defaults are fixed constants, never wall-clock entropy).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__, memory_capacity, numerics, selection, tasks, topology
from .dynamics import ESNConfig

DEFAULT_SEED = 42


def _parse_wc(text: str, n_cycles: int) -> list[float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) == 1:
        return parts * n_cycles
    if len(parts) != n_cycles:
        raise ValueError(
            f"--wc has {len(parts)} weights but the topology has {n_cycles} cycles"
        )
    return parts


def _build_matrix(args) -> np.ndarray:
    lengths = topology.parse_topology(args.topology)
    weights = _parse_wc(args.wc, len(lengths))
    jumps = None
    if args.wj is not None:
        if args.tau is None:
            raise ValueError("--wj requires --tau")
        jumps = topology.JumpSpec(weight=args.wj, step=args.tau)
    if len(lengths) == 1:
        if jumps is None:
            return topology.build_scr(lengths[0], weights[0])
        return topology.build_crj(lengths[0], weights[0], jumps)
    cycles = [topology.CycleSpec(n, w) for n, w in zip(lengths, weights)]
    return topology.build_concentric(cycles, jumps)


def _write_manifest(out_path: str, command: str, config: dict) -> str:
    manifest = {
        "command": command,
        "config": config,
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    path = out_path + ".manifest.json"
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, default=str)
    return path


def _finalize_csv(out_path: str, rows, header) -> None:
    # temp-then-rename so a partial CSV never appears without its manifest
    tmp = out_path + ".tmp"
    with open(tmp, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    os.replace(tmp, out_path)


def cmd_eigen(args) -> int:
    w = _build_matrix(args)
    eig = numerics.eigenvalues(w)
    rows = [[repr(float(v.real)), repr(float(v.imag))] for v in eig]
    _write_manifest(args.out, "eigen", {
        "topology": args.topology, "wc": args.wc,
        "wj": args.wj, "tau": args.tau, "n_r": w.shape[0],
    })
    _finalize_csv(args.out, rows, ["re", "im"])
    return 0


def _resolve_task(args) -> tasks.SupervisedTask:
    if args.task == "narma":
        return tasks.generate_narma10(tasks.NARMA_SPLIT.total, seed=args.seed)
    if args.task == "file":
        if not args.data:
            raise ValueError("--task file requires --data (one value per line)")
        series = tasks.normalize(tasks.load_series(args.data), -1.0, 1.0)
        split = tasks.LASER_SPLIT
        if len(series) < split.total + 1:
            n = len(series) - 1
            split = tasks.SplitSpec(
                train_len=n // 5, valid_len=n // 2,
                test_len=n - n // 5 - n // 2,
                washout=min(200, n // 20),
            )
        return tasks.make_prediction_task(series, split)
    raise ValueError(f"unknown task {args.task!r}")


def _trial_config(args) -> selection.TrialConfig:
    kind = args.model
    if kind not in selection.MODEL_KINDS:
        raise ValueError(f"--model must be one of {selection.MODEL_KINDS}")
    needs_jumps = kind in selection.JUMP_KINDS
    if needs_jumps and (args.wj is None or args.tau is None):
        raise ValueError(f"{kind} requires --wj and --tau")
    return selection.TrialConfig(
        model_kind=kind, topology=args.topology,
        v=args.input_scale, w_c=float(args.wc), alpha=args.alpha,
        lam=getattr(args, "lambda"),
        w_j=args.wj if needs_jumps else None,
        tau_j=args.tau if needs_jumps else None,
        seed=args.seed,
    )


def cmd_bench(args) -> int:
    task = _resolve_task(args)
    cfg = _trial_config(args)
    result = selection.run_trial(cfg, task, state_mode=args.state_mode)
    _write_manifest(args.out, "bench", {
        "task": args.task, "data": args.data, "seed": args.seed,
        "state_mode": args.state_mode, "config": cfg.__dict__,
        "data_provenance": "generated" if args.task == "narma" else f"file:{args.data}",
    })
    _finalize_csv(args.out, [selection.result_to_row(result)], selection.CSV_HEADER)
    if result.failed:
        print(f"trial failed: {result.error}", file=sys.stderr)
        return 1
    print(f"valid_nmse={result.valid_err:.6g} test_nmse={result.test_err:.6g}")
    return 0


def cmd_mc(args) -> int:
    cfg = _trial_config(args)
    weights = selection.build_weights(cfg)
    esn_cfg = ESNConfig(weights=weights, leak_rate=cfg.alpha)
    if args.data:
        stream = tasks.load_series(args.data)
        provenance = f"file:{args.data}"
    else:
        stream = tasks.iid_stream(args.train_len + args.test_len, seed=args.seed)
        provenance = "generated:uniform[-1,1]"
    result = memory_capacity.estimate_mc(
        esn_cfg, stream, k_max=args.kmax,
        train_len=args.train_len, test_len=args.test_len,
        lam=getattr(args, "lambda"), washout=args.washout,
    )
    _write_manifest(args.out, "mc", {
        "config": cfg.__dict__, "kmax": args.kmax, "seed": args.seed,
        "train_len": args.train_len, "test_len": args.test_len,
        "washout": args.washout, "lambda": getattr(args, "lambda"),
        "data_provenance": provenance,
    })
    summary = {
        "total_mc": result.total,
        "k_max": result.k_max,
        "config": result.config_snapshot | {"model": cfg.model_kind, "topology": cfg.topology},
    }
    with open(args.out + ".summary.json", "w") as fh:
        json.dump(summary, fh, indent=2)
    rows = [
        [str(k + 1), repr(float(result.per_delay[k]))] for k in range(result.k_max)
    ]
    _finalize_csv(args.out, rows, ["k", "mc_k"])
    print(f"total_mc={result.total:.4f}")
    return 0


def _resolve_grid(text: str) -> selection.GridSpec:
    if text == "full":
        return selection.default_grid()
    if text == "fast":
        return selection.fast_grid()
    with open(text) as fh:
        return selection.GridSpec.from_json(fh.read())


def cmd_grid(args) -> int:
    spec = _resolve_grid(args.grid)
    task = _resolve_task(args)
    sizes = [args.nr] if args.nr else list(spec.reservoir_sizes)
    configs = []
    for kind in spec.model_kinds:
        for n_r in sizes:
            configs.extend(selection.enumerate_grid(spec, kind, n_r))
    results = selection.run_sweep(
        configs, task, workers=args.workers, state_mode=args.state_mode
    )
    best = selection.select_best(results)
    _write_manifest(args.out, "grid", {
        "grid": args.grid, "grid_spec": json.loads(spec.to_json()),
        "task": args.task, "data": args.data, "seed": args.seed,
        "workers": args.workers, "state_mode": args.state_mode,
        "reservoir_sizes": sizes,
        "data_provenance": "generated" if args.task == "narma" else f"file:{args.data}",
    })
    with open(args.out + ".best.json", "w") as fh:
        json.dump({
            "config": best.config.__dict__,
            "valid_err": best.valid_err if math.isfinite(best.valid_err) else "inf",
            "test_err": best.test_err if math.isfinite(best.test_err) else "inf",
        }, fh, indent=2)
    _finalize_csv(
        args.out, [selection.result_to_row(r) for r in results], selection.CSV_HEADER
    )
    print(
        f"trials={len(results)} best: {best.config.model_kind} {best.config.topology} "
        f"valid={best.valid_err:.6g} test={best.test_err:.6g}"
    )
    return 0


def _add_model_flags(p, mc: bool = False):
    p.add_argument("--model", required=True, help="SCR | CRJ | cESN | cjESN | randomESN")
    p.add_argument("--topology", required=True, help='cycle lengths, e.g. "100" or "50-50"')
    p.add_argument("--wc", default="0.9", help="cycle weight")
    p.add_argument("--wj", type=float, default=None, help="jump weight")
    p.add_argument("--tau", type=int, default=None, help="jump size")
    p.add_argument("--alpha", type=float, default=1.0, help="leak rate")
    p.add_argument("--lambda", type=float,
                   default=memory_capacity.DEFAULT_LAMBDA if mc else 1e-6,
                   help="ridge regression parameter")
    p.add_argument("--input-scale", type=float, default=0.1, dest="input_scale")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crlab",
        description="Concentric cycle reservoirs: benchmarks, spectra, memory capacity",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigen", help="dump reservoir eigenvalues to CSV")
    p.add_argument("--topology", required=True)
    p.add_argument("--wc", default="0.9", help="cycle weight(s), comma-separated per cycle")
    p.add_argument("--wj", type=float, default=None)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("bench", help="run one benchmark trial")
    p.add_argument("--task", default="narma", choices=["narma", "file"])
    p.add_argument("--data", default=None, help="series file for --task file")
    _add_model_flags(p)
    p.add_argument("--washout", type=int, default=200)
    p.add_argument("--state-mode", default="reset", choices=["reset", "continuous"],
                   dest="state_mode")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("mc", help="estimate memory capacity")
    _add_model_flags(p, mc=True)
    p.add_argument("--kmax", type=int, default=memory_capacity.DEFAULT_K_MAX)
    p.add_argument("--train-len", type=int, default=memory_capacity.DEFAULT_TRAIN_LEN,
                   dest="train_len")
    p.add_argument("--test-len", type=int, default=memory_capacity.DEFAULT_TEST_LEN,
                   dest="test_len")
    p.add_argument("--washout", type=int, default=memory_capacity.DEFAULT_WASHOUT)
    p.add_argument("--data", default=None, help="i.i.d. stream file (generated if omitted)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("grid", help="run a grid sweep")
    p.add_argument("--grid", required=True, help='"fast", "full", or a GridSpec JSON path')
    p.add_argument("--task", default="narma", choices=["narma", "file"])
    p.add_argument("--data", default=None)
    p.add_argument("--nr", type=int, default=None, help="restrict to one reservoir size")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--state-mode", default="reset", choices=["reset", "continuous"],
                   dest="state_mode")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_grid)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, numerics.SingularMatrixError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
