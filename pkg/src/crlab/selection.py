"""Grid-search model selection over hyperparameters and topologies.

The default grid reproduces the benchmark sweep: five input scalings,
seven cycle weights, ten jump weights, sixteen ridge parameters, eight
leak rates, six jump sizes, and a fixed menu of concentric topologies
per reservoir size. A "fast" preset keeps the first, middle and last
value of every list for CI-scale runs.

Trials are independent work items; the sweep optionally fans out to a
process pool and merges results in a deterministic order. Configurations
sharing everything but the ridge parameter reuse one state harvest.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict, replace

import numpy as np

from . import dynamics, readout, topology
from .tasks import SupervisedTask

__all__ = [
    "MODEL_KINDS",
    "GridSpec",
    "TrialConfig",
    "TrialResult",
    "default_grid",
    "fast_grid",
    "enumerate_grid",
    "build_weights",
    "run_trial",
    "run_sweep",
    "select_best",
    "CSV_HEADER",
    "result_to_row",
    "write_results_csv",
    "read_results_csv",
]

MODEL_KINDS = ("SCR", "CRJ", "cESN", "cjESN", "randomESN")
JUMP_KINDS = ("CRJ", "cjESN")
CSV_HEADER = [
    "model_kind", "topology", "v", "w_c", "w_j", "tau_j",
    "alpha", "lambda", "valid_err", "test_err", "wall_ms",
]

TABLE_TOPOLOGIES = {
    100: ["50-50", "60-40", "40-60"],
    150: ["50-50-50", "75-75", "90-60"],
    200: ["100-50-50", "50-100-50", "50-50-100", "100-100"],
    300: ["100-100-100", "150-100-50", "150-50-100", "50-150-100",
          "50-100-150", "100-50-150", "100-150-50"],
    350: ["100-200-50", "100-50-200", "50-100-200", "50-200-100",
          "200-100-50", "200-50-100"],
    600: ["200-200-200", "300-300", "400-200", "200-400", "150-150-150-150"],
}


@dataclass(frozen=True)
class GridSpec:
    input_weights: tuple = (0.1, 0.2, 0.3, 0.4, 0.5)
    cycle_weights: tuple = (0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    jump_weights: tuple = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    reservoir_sizes: tuple = (100, 150, 200, 300, 350, 600)
    lambdas: tuple = tuple(10.0 ** k for k in range(-15, 1))
    leak_rates: tuple = (0.1, 0.2, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    jump_sizes: tuple = (5, 10, 15, 20, 30, 45)
    topologies_per_size: dict = field(
        default_factory=lambda: {k: list(v) for k, v in TABLE_TOPOLOGIES.items()}
    )
    model_kinds: tuple = MODEL_KINDS[:4]
    # random-ESN baseline settings (not part of the published grid)
    connectivity: float = 0.1
    target_radii: tuple = (0.9,)

    def to_json(self) -> str:
        d = asdict(self)
        d = {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items()}
        d["topologies_per_size"] = {str(k): v for k, v in d["topologies_per_size"].items()}
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "GridSpec":
        d = json.loads(text)
        defaults = cls()
        kwargs = {}
        for name in (
            "input_weights", "cycle_weights", "jump_weights", "reservoir_sizes",
            "lambdas", "leak_rates", "jump_sizes", "model_kinds", "target_radii",
        ):
            if name in d:
                kwargs[name] = tuple(d[name])
        if "topologies_per_size" in d:
            kwargs["topologies_per_size"] = {
                int(k): list(v) for k, v in d["topologies_per_size"].items()
            }
        if "connectivity" in d:
            kwargs["connectivity"] = float(d["connectivity"])
        for kind in kwargs.get("model_kinds", defaults.model_kinds):
            if kind not in MODEL_KINDS:
                raise ValueError(f"model_kinds: unknown kind {kind!r}")
        for n_r, topos in kwargs.get("topologies_per_size", {}).items():
            for t in topos:
                if sum(topology.parse_topology(t)) != n_r:
                    raise ValueError(
                        f"topologies_per_size[{n_r}]: {t!r} sums to "
                        f"{sum(topology.parse_topology(t))}"
                    )
        return cls(**kwargs)


def default_grid() -> GridSpec:
    return GridSpec()


def _first_mid_last(values):
    values = tuple(values)
    if len(values) <= 3:
        return values
    return (values[0], values[len(values) // 2], values[-1])


def fast_grid(base: GridSpec | None = None) -> GridSpec:
    """Subsample every hyperparameter list to first/middle/last."""
    g = base or GridSpec()
    return replace(
        g,
        input_weights=_first_mid_last(g.input_weights),
        cycle_weights=_first_mid_last(g.cycle_weights),
        jump_weights=_first_mid_last(g.jump_weights),
        lambdas=_first_mid_last(g.lambdas),
        leak_rates=_first_mid_last(g.leak_rates),
        jump_sizes=_first_mid_last(g.jump_sizes),
    )


@dataclass(frozen=True)
class TrialConfig:
    model_kind: str
    topology: str  # "n1-n2-..." cycle lengths; plain size for SCR/CRJ/randomESN
    v: float
    w_c: float
    alpha: float
    lam: float
    w_j: float | None = None
    tau_j: int | None = None
    seed: int = 0
    connectivity: float = 0.1
    target_radius: float = 0.9

    @property
    def n_r(self) -> int:
        return sum(topology.parse_topology(self.topology))

    def sort_key(self):
        return (
            self.model_kind, self.topology, self.v, self.w_c,
            -1.0 if self.w_j is None else self.w_j,
            -1 if self.tau_j is None else self.tau_j,
            self.alpha, self.lam, self.seed,
        )


@dataclass(frozen=True)
class TrialResult:
    config: TrialConfig
    valid_err: float
    test_err: float
    wall_ms: float = 0.0
    error: str = ""

    @property
    def failed(self) -> bool:
        return not math.isfinite(self.valid_err)


def enumerate_grid(spec: GridSpec, kind: str, n_r: int) -> list[TrialConfig]:
    """Cartesian product over the hyperparameters the model kind consumes.

    Order is deterministic: topology, then input weight, cycle weight,
    jump weight, jump size, leak rate, ridge parameter.
    """
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    if kind in ("cESN", "cjESN"):
        topos = spec.topologies_per_size.get(n_r)
        if not topos:
            raise ValueError(f"no topologies configured for N_R={n_r}")
    else:
        topos = [str(n_r)]
    for name, values in (
        ("input_weights", spec.input_weights),
        ("cycle_weights", spec.cycle_weights),
        ("lambdas", spec.lambdas),
        ("leak_rates", spec.leak_rates),
    ):
        if not values:
            raise ValueError(f"grid list {name} is empty")
    if kind in JUMP_KINDS and (not spec.jump_weights or not spec.jump_sizes):
        raise ValueError(f"{kind} needs nonempty jump_weights and jump_sizes")

    configs = []
    jump_w = spec.jump_weights if kind in JUMP_KINDS else (None,)
    jump_s = spec.jump_sizes if kind in JUMP_KINDS else (None,)
    radii = spec.target_radii if kind == "randomESN" else (None,)
    if kind == "randomESN" and not spec.target_radii:
        raise ValueError("randomESN needs nonempty target_radii")
    for topo, v, rho, w_c, w_j, tau, alpha, lam in itertools.product(
        topos, spec.input_weights, radii, spec.cycle_weights,
        jump_w, jump_s, spec.leak_rates, spec.lambdas,
    ):
        configs.append(
            TrialConfig(
                model_kind=kind, topology=topo, v=v, w_c=w_c, alpha=alpha,
                lam=lam, w_j=w_j, tau_j=tau,
                connectivity=spec.connectivity,
                target_radius=rho if rho is not None else 0.9,
            )
        )
    return configs


def build_weights(cfg: TrialConfig, n_u: int = 1) -> topology.WeightSet:
    """Realize input and reservoir matrices for one trial configuration."""
    lengths = topology.parse_topology(cfg.topology)
    n_r = sum(lengths)
    w_in = topology.build_input_weights(n_r, n_u, topology.InputWeightSpec(cfg.v))
    kind = cfg.model_kind
    if kind == "SCR":
        w_h = topology.build_scr(n_r, cfg.w_c)
    elif kind == "CRJ":
        w_h = topology.build_crj(n_r, cfg.w_c, topology.JumpSpec(cfg.w_j, cfg.tau_j))
    elif kind == "cESN":
        w_h = topology.build_concentric([(n, cfg.w_c) for n in lengths])
    elif kind == "cjESN":
        w_h = topology.build_concentric(
            [(n, cfg.w_c) for n in lengths], topology.JumpSpec(cfg.w_j, cfg.tau_j)
        )
    elif kind == "randomESN":
        w_h = topology.build_random_esn(
            n_r, cfg.connectivity, cfg.target_radius, cfg.seed
        )
    else:
        raise ValueError(f"unknown model kind {kind!r}")
    return topology.WeightSet(w_in=w_in, w_h=w_h)


def _segment_states(esn_cfg, task: SupervisedTask, state_mode: str):
    """(states, targets) per segment under reset or continuous state handling."""
    segments = task.segments()
    if state_mode == "reset":
        out = []
        for seg in segments:
            states = dynamics.harvest(esn_cfg, seg.inputs, seg.washout)
            out.append((states, seg.targets[seg.washout:]))
        return out
    if state_mode == "continuous":
        full = dynamics.harvest(esn_cfg, task.inputs.values[: task.split.total], 0)
        out = []
        for seg in segments:
            lo = seg.start + seg.washout
            hi = seg.start + seg.inputs.shape[0]
            out.append((full[:, lo:hi], seg.targets[seg.washout:]))
        return out
    raise ValueError(f"state_mode must be 'reset' or 'continuous', got {state_mode!r}")


def run_trial(cfg: TrialConfig, task: SupervisedTask, state_mode: str = "reset") -> TrialResult:
    """One configuration end-to-end: build, harvest, train, score.

    Numerical failures are captured in the result (infinite validation
    error) so a sweep never aborts on a single bad grid point.
    """
    t0 = time.perf_counter()
    try:
        weights = build_weights(cfg)
        esn_cfg = dynamics.ESNConfig(weights=weights, leak_rate=cfg.alpha)
        (train, valid, test) = _segment_states(esn_cfg, task, state_mode)
        w = readout.train_ridge(train[0], train[1], cfg.lam)
        valid_err = readout.nmse(readout.predict(w, valid[0]), valid[1])
        test_err = readout.nmse(readout.predict(w, test[0]), test[1])
        return TrialResult(
            config=cfg, valid_err=valid_err, test_err=test_err,
            wall_ms=(time.perf_counter() - t0) * 1e3,
        )
    except (ValueError, FloatingPointError, np.linalg.LinAlgError) as exc:
        return TrialResult(
            config=cfg, valid_err=math.inf, test_err=math.inf,
            wall_ms=(time.perf_counter() - t0) * 1e3, error=str(exc),
        )


def _harvest_key(cfg: TrialConfig):
    # everything except the ridge parameter; those trials share one harvest
    return (
        cfg.model_kind, cfg.topology, cfg.v, cfg.w_c, cfg.w_j, cfg.tau_j,
        cfg.alpha, cfg.seed, cfg.connectivity, cfg.target_radius,
    )


def _run_group(args):
    configs, task, state_mode = args
    results = []
    base = configs[0]
    t0 = time.perf_counter()
    try:
        weights = build_weights(base)
        esn_cfg = dynamics.ESNConfig(weights=weights, leak_rate=base.alpha)
        (train, valid, test) = _segment_states(esn_cfg, task, state_mode)
    except (ValueError, FloatingPointError, np.linalg.LinAlgError) as exc:
        wall = (time.perf_counter() - t0) * 1e3
        return [
            TrialResult(config=c, valid_err=math.inf, test_err=math.inf,
                        wall_ms=wall, error=str(exc))
            for c in configs
        ]
    harvest_ms = (time.perf_counter() - t0) * 1e3
    for cfg in configs:
        t1 = time.perf_counter()
        try:
            w = readout.train_ridge(train[0], train[1], cfg.lam)
            valid_err = readout.nmse(readout.predict(w, valid[0]), valid[1])
            test_err = readout.nmse(readout.predict(w, test[0]), test[1])
            results.append(TrialResult(
                config=cfg, valid_err=valid_err, test_err=test_err,
                wall_ms=harvest_ms + (time.perf_counter() - t1) * 1e3,
            ))
        except (ValueError, FloatingPointError, np.linalg.LinAlgError) as exc:
            results.append(TrialResult(
                config=cfg, valid_err=math.inf, test_err=math.inf,
                wall_ms=harvest_ms + (time.perf_counter() - t1) * 1e3,
                error=str(exc),
            ))
    return results


def run_sweep(
    configs: list[TrialConfig],
    task: SupervisedTask,
    workers: int = 1,
    state_mode: str = "reset",
) -> list[TrialResult]:
    """Run all configurations; result order is deterministic (sorted by
    configuration key) regardless of worker count."""
    groups: dict[tuple, list[TrialConfig]] = {}
    for cfg in configs:
        groups.setdefault(_harvest_key(cfg), []).append(cfg)
    jobs = [(grp, task, state_mode) for grp in groups.values()]
    if workers <= 1:
        batches = [_run_group(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_group, jobs, chunksize=8))
    results = [r for batch in batches for r in batch]
    results.sort(key=lambda r: r.config.sort_key())
    return results


def select_best(results: list[TrialResult]) -> TrialResult:
    """Winner by validation error only; ties go to the smaller reservoir,
    then to the lexicographically smaller configuration."""
    if not results:
        raise ValueError("cannot select from an empty result list")
    return min(results, key=lambda r: (r.valid_err, r.config.n_r, r.config.sort_key()))


def result_to_row(r: TrialResult) -> list[str]:
    c = r.config
    return [
        c.model_kind, c.topology, repr(c.v), repr(c.w_c),
        "" if c.w_j is None else repr(c.w_j),
        "" if c.tau_j is None else str(c.tau_j),
        repr(c.alpha), repr(c.lam),
        repr(r.valid_err), repr(r.test_err), f"{r.wall_ms:.3f}",
    ]


def write_results_csv(path, results: list[TrialResult]) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in results:
            writer.writerow(result_to_row(r))


def read_results_csv(path) -> list[dict]:
    import csv

    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
