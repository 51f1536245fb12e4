"""Linear readout: ridge training, prediction, and error metrics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics

__all__ = ["ReadoutWeights", "ErrorReport", "train_ridge", "predict", "mse", "nmse", "error_report"]


@dataclass(frozen=True)
class ReadoutWeights:
    w_out: np.ndarray  # N_Y x N_R
    lambda_used: float


@dataclass(frozen=True)
class ErrorReport:
    nmse: float
    mse: float
    sample_count: int


def train_ridge(x, y_true, lam: float) -> ReadoutWeights:
    """Ridge regression on harvested states.

    x is the N_R x T state matrix, y_true the N_Y x T target matrix.
    Solves W_out = Y X^T (X X^T + lam I)^(-1) through the symmetric
    normal-equation system; lam = 0 requires X X^T to be invertible.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y_true, dtype=float)
    if y.ndim == 1:
        y = y[None, :]
    if x.shape[1] != y.shape[1]:
        raise ValueError(f"state columns {x.shape[1]} != target columns {y.shape[1]}")
    if lam < 0:
        raise ValueError(f"ridge parameter must be >= 0, got {lam}")
    a = x @ x.T
    if lam > 0:
        a[np.diag_indices_from(a)] += lam
    # A Z = X Y^T  =>  W_out = Z^T since A is symmetric
    z = numerics.solve_regularized(a, x @ y.T)
    return ReadoutWeights(w_out=z.T, lambda_used=lam)


def predict(w: ReadoutWeights, x) -> np.ndarray:
    """Readout output W_out x, columnwise for state matrices."""
    x = np.asarray(x, dtype=float)
    if x.shape[0] != w.w_out.shape[1]:
        raise ValueError(f"state size {x.shape[0]} != readout width {w.w_out.shape[1]}")
    return w.w_out @ x


def mse(predicted, target) -> float:
    p = np.asarray(predicted, dtype=float).ravel()
    t = np.asarray(target, dtype=float).ravel()
    if p.shape != t.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {t.shape}")
    return float(np.mean((p - t) ** 2))


def nmse(predicted, target) -> float:
    """Mean squared error normalized by the population variance of the target."""
    t = np.asarray(target, dtype=float).ravel()
    if t.shape[0] < 2:
        raise ValueError("need at least 2 samples")
    var = float(np.var(t))
    if var == 0.0:
        raise ValueError("target series is constant; NMSE undefined")
    return mse(predicted, target) / var


def error_report(predicted, target) -> ErrorReport:
    t = np.asarray(target, dtype=float).ravel()
    return ErrorReport(
        nmse=nmse(predicted, target), mse=mse(predicted, target), sample_count=t.shape[0]
    )
