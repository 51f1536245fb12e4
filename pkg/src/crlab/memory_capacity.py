"""Short-term memory capacity estimation.

Per-delay capacity is the squared correlation between the delayed input
u(t-k) and the trained reconstruction y(t); total capacity sums over
delays 1..K. One joint ridge regression with K output rows covers all
delays at once (the targets decouple in the normal equations, so this is
identical to K independent regressions).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import dynamics, readout
from .tasks import TimeSeries

__all__ = ["MCResult", "mc_k", "mc_from_states", "estimate_mc"]

DEFAULT_K_MAX = 200
DEFAULT_TRAIN_LEN = 5000
DEFAULT_TEST_LEN = 1000
DEFAULT_WASHOUT = 100
DEFAULT_LAMBDA = 1e-9


@dataclass(frozen=True)
class MCResult:
    per_delay: np.ndarray  # clipped MC_k, k = 1..k_max
    raw_per_delay: np.ndarray  # before clipping to [0, 1]
    k_max: int
    config_snapshot: dict = field(default_factory=dict)

    @property
    def total(self) -> float:
        return float(self.per_delay.sum())


def mc_k(u_delayed, y) -> float:
    """Squared correlation Cov^2(u(t-k), y(t)) / (Var(u) Var(y)).

    Population statistics; returns 0 when the output has zero variance.
    """
    u_delayed = np.asarray(u_delayed, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if u_delayed.shape != y.shape or u_delayed.shape[0] < 2:
        raise ValueError("need two aligned series of length >= 2")
    var_u = float(np.var(u_delayed))
    var_y = float(np.var(y))
    if var_y == 0.0 or var_u == 0.0:
        return 0.0
    cov = float(np.mean((u_delayed - u_delayed.mean()) * (y - y.mean())))
    return cov * cov / (var_u * var_y)


def _delayed_targets(u: np.ndarray, times: np.ndarray, k_max: int) -> np.ndarray:
    """Rows k = 1..k_max of u(t-k) over the given 1-based times; 0-padded
    where t-k falls before the start of the stream."""
    out = np.zeros((k_max, times.shape[0]))
    for k in range(1, k_max + 1):
        src = times - k  # 1-based stream indices
        valid = src >= 1
        out[k - 1, valid] = u[src[valid] - 1]
    return out


def mc_from_states(
    states: np.ndarray,
    stream: np.ndarray,
    k_max: int,
    train_len: int,
    test_len: int,
    lam: float = DEFAULT_LAMBDA,
    washout: int = DEFAULT_WASHOUT,
) -> MCResult:
    """Capacity of a precomputed state trajectory.

    `states` holds one column per stream sample (N_R x len(stream)).
    The readout for all delays is trained on samples washout+1..train_len
    and capacities are measured on the final test_len samples.
    """
    states = np.asarray(states, dtype=float)
    u = np.asarray(stream, dtype=float).ravel()
    t_len = u.shape[0]
    if states.shape[1] != t_len:
        raise ValueError(f"states columns {states.shape[1]} != stream length {t_len}")
    if train_len + test_len > t_len:
        raise ValueError("train_len + test_len exceeds stream length")
    if washout >= train_len:
        raise ValueError("washout consumes the whole training window")

    train_times = np.arange(washout + 1, train_len + 1)
    test_times = np.arange(t_len - test_len + 1, t_len + 1)
    y_train = _delayed_targets(u, train_times, k_max)
    w = readout.train_ridge(states[:, train_times - 1], y_train, lam)
    y_hat = readout.predict(w, states[:, test_times - 1])
    u_test = _delayed_targets(u, test_times, k_max)

    raw = np.array([mc_k(u_test[k], y_hat[k]) for k in range(k_max)])
    return MCResult(
        per_delay=np.clip(raw, 0.0, 1.0),
        raw_per_delay=raw,
        k_max=k_max,
    )


def estimate_mc(
    cfg: dynamics.ESNConfig,
    stream: TimeSeries,
    k_max: int = DEFAULT_K_MAX,
    train_len: int = DEFAULT_TRAIN_LEN,
    test_len: int = DEFAULT_TEST_LEN,
    lam: float = DEFAULT_LAMBDA,
    washout: int = DEFAULT_WASHOUT,
) -> MCResult:
    """Drive the reservoir with the stream and measure its memory capacity."""
    u = stream.values
    states = dynamics.harvest(cfg, u, washout=0)
    result = mc_from_states(states, u, k_max, train_len, test_len, lam, washout)
    snapshot = {
        "n_r": cfg.n_r,
        "leak_rate": cfg.leak_rate,
        "k_max": k_max,
        "train_len": train_len,
        "test_len": test_len,
        "lambda": lam,
        "washout": washout,
        "stream": stream.name,
    }
    return MCResult(
        per_delay=result.per_delay,
        raw_per_delay=result.raw_per_delay,
        k_max=k_max,
        config_snapshot=snapshot,
    )
