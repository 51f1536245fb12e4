"""Dense linear algebra used by every other module.

Thin, contract-checked wrappers around numpy.linalg. Matrices are plain
2-D float64 (or complex) numpy arrays; vectors are 1-D arrays. All
functions are pure and safe to call from concurrent workers.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_matrix",
    "mat_vec",
    "solve_regularized",
    "eigenvalues",
    "spectral_radius",
    "SingularMatrixError",
]


class SingularMatrixError(np.linalg.LinAlgError):
    """Raised when an unregularized solve hits a (near-)singular system."""


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D float64 array and validate finiteness."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return m


def mat_vec(m, v) -> np.ndarray:
    """Matrix-vector product with explicit dimension checking."""
    m = as_matrix(m)
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    if m.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {m.shape} @ {v.shape}")
    return m @ v


def solve_regularized(a, b) -> np.ndarray:
    """Solve A Z = B for symmetric positive (semi-)definite A.

    A is expected to already carry any diagonal regularization shift.
    The result satisfies ||A Z - B|| <= 1e-8 ||B||; a system that cannot
    meet that residual raises SingularMatrixError.
    """
    a = as_matrix(a)
    b = np.asarray(b, dtype=float)
    b2 = b if b.ndim == 2 else b[:, None]
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"A must be square, got {a.shape}")
    if a.shape[0] != b2.shape[0]:
        raise ValueError(f"dimension mismatch: A {a.shape}, B {b2.shape}")
    try:
        z = np.linalg.solve(a, b2)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(
            "system is singular; use a positive ridge shift"
        ) from exc
    resid = np.linalg.norm(a @ z - b2)
    if resid > 1e-8 * max(np.linalg.norm(b2), 1e-300):
        raise SingularMatrixError(
            f"ill-conditioned system: residual {resid:.3e} exceeds contract; "
            "use a positive ridge shift"
        )
    return z if b.ndim == 2 else z[:, 0]


def eigenvalues(m) -> np.ndarray:
    """All eigenvalues (with multiplicity, unordered) of a square matrix."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"eigenvalues need a square matrix, got {m.shape}")
    return np.linalg.eigvals(m)


def spectral_radius(m) -> float:
    """Largest eigenvalue magnitude of a square matrix."""
    return float(np.max(np.abs(eigenvalues(m))))
