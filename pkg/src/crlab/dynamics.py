"""Leaky-integrator reservoir dynamics and state harvesting.

The single-step update is

    x(t) = (1 - alpha) * x(t-1) + alpha * tanh(W_in u(t) + W_h x(t-1))

with tanh fixed as the activation. `step` is the reference numpy
implementation; `harvest` runs the same recurrence over a whole input
sequence through a compiled sparse kernel (the cycle reservoirs have
O(N_R) nonzeros, so CSR iteration beats dense BLAS by a wide margin).
The two paths are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy import sparse

from .topology import WeightSet

__all__ = ["ESNConfig", "ReservoirState", "step", "harvest"]


@dataclass(frozen=True)
class ESNConfig:
    """Everything needed to run the reservoir: weights and leak rate."""

    weights: WeightSet
    leak_rate: float
    n_y: int = 1

    def __post_init__(self):
        if not 0.0 <= self.leak_rate <= 1.0:
            raise ValueError(f"leak rate must be in [0, 1], got {self.leak_rate}")

    @property
    def n_r(self) -> int:
        return self.weights.n_r

    @property
    def n_u(self) -> int:
        return self.weights.n_u


@dataclass(frozen=True)
class ReservoirState:
    """Reservoir activation vector at time index t."""

    x: np.ndarray
    t: int = 0


def step(state: ReservoirState, u, cfg: ESNConfig) -> ReservoirState:
    """One leaky-integrator update."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if u.shape[0] != cfg.n_u:
        raise ValueError(f"input length {u.shape[0]} != N_U {cfg.n_u}")
    if state.x.shape[0] != cfg.n_r:
        raise ValueError(f"state length {state.x.shape[0]} != N_R {cfg.n_r}")
    a = cfg.leak_rate
    pre = cfg.weights.w_in @ u + cfg.weights.w_h @ state.x
    return ReservoirState(x=(1.0 - a) * state.x + a * np.tanh(pre), t=state.t + 1)


@njit(cache=True)
def _harvest_csr(data, indices, indptr, w_in, u_seq, alpha, x0, out):
    n_r = w_in.shape[0]
    n_u = w_in.shape[1]
    t_len = u_seq.shape[0]
    x = x0.copy()
    pre = np.empty(n_r)
    for t in range(t_len):
        for i in range(n_r):
            acc = 0.0
            for j in range(n_u):
                acc += w_in[i, j] * u_seq[t, j]
            for k in range(indptr[i], indptr[i + 1]):
                acc += data[k] * x[indices[k]]
            pre[i] = acc
        for i in range(n_r):
            x[i] = (1.0 - alpha) * x[i] + alpha * np.tanh(pre[i])
        for i in range(n_r):
            out[i, t] = x[i]


def harvest(cfg: ESNConfig, inputs, washout: int, x0=None) -> np.ndarray:
    """Run the reservoir over `inputs` and return retained states.

    Returns the N_R x (T - washout) matrix of states x(t) for t > washout
    (columns in time order). The initial state defaults to zero.
    """
    u_seq = np.asarray(inputs, dtype=float)
    if u_seq.ndim == 1:
        u_seq = u_seq[:, None]
    t_len = u_seq.shape[0]
    if u_seq.shape[1] != cfg.n_u:
        raise ValueError(f"input width {u_seq.shape[1]} != N_U {cfg.n_u}")
    if washout < 0 or washout > t_len:
        raise ValueError(f"washout {washout} outside [0, {t_len}]")
    if x0 is None:
        x0 = np.zeros(cfg.n_r)
    x0 = np.asarray(x0, dtype=float)
    w_h = sparse.csr_matrix(cfg.weights.w_h)
    out = np.empty((cfg.n_r, t_len))
    _harvest_csr(
        w_h.data,
        w_h.indices,
        w_h.indptr,
        np.ascontiguousarray(cfg.weights.w_in, dtype=float),
        np.ascontiguousarray(u_seq),
        float(cfg.leak_rate),
        x0,
        out,
    )
    return out[:, washout:]
