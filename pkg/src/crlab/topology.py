"""Reservoir and input weight construction.

Builders for the deterministic cycle reservoirs (single cycle, cycle with
jumps, concentric cycles with and without inter-cycle jumps) and for the
random sparse baseline reservoir. Input weights are fixed-magnitude with
signs taken from the decimal expansion of pi, so every deterministic
builder is bit-reproducible.

Node indexing convention: positions are 1-based in docs and tests,
0-based in the arrays. Within a cycle, node i feeds node i+1 and the last
node feeds the first. Concentric cycles are listed outermost first.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import numerics

__all__ = [
    "CycleSpec",
    "JumpSpec",
    "ReservoirTopology",
    "InputWeightSpec",
    "WeightSet",
    "pi_signs",
    "build_input_weights",
    "build_scr",
    "build_crj",
    "build_concentric",
    "build_random_esn",
    "build_reservoir",
    "parse_topology",
    "PI_DIGITS_ENV",
]

PI_DIGITS_ENV = "CRLAB_PI_DIGITS"

RANDOM_SPARSE = "random_sparse"
SIMPLE_CYCLE = "simple_cycle"
CYCLE_WITH_JUMPS = "cycle_with_jumps"
CONCENTRIC = "concentric"


@dataclass(frozen=True)
class CycleSpec:
    """One unidirectional cycle: its node count and shared edge weight."""

    length: int
    weight: float

    def __post_init__(self):
        if self.length < 2:
            raise ValueError(f"cycle length must be >= 2, got {self.length}")
        if not np.isfinite(self.weight) or self.weight <= 0:
            raise ValueError(f"cycle weight must be finite and > 0, got {self.weight}")


@dataclass(frozen=True)
class JumpSpec:
    """Bidirectional shortcut edges: weight and anchor spacing."""

    weight: float
    step: int

    def __post_init__(self):
        if self.step < 1:
            raise ValueError(f"jump step must be >= 1, got {self.step}")
        if not np.isfinite(self.weight):
            raise ValueError("jump weight must be finite")


@dataclass(frozen=True)
class ReservoirTopology:
    """Declarative reservoir description; realized by build_reservoir."""

    kind: str
    cycles: tuple = ()
    jumps: JumpSpec | None = None
    connectivity: float = 0.0
    target_radius: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (RANDOM_SPARSE, SIMPLE_CYCLE, CYCLE_WITH_JUMPS, CONCENTRIC):
            raise ValueError(f"unknown topology kind {self.kind!r}")
        if self.kind in (SIMPLE_CYCLE, CYCLE_WITH_JUMPS) and len(self.cycles) != 1:
            raise ValueError(f"{self.kind} requires exactly one cycle")
        if self.kind == CONCENTRIC and len(self.cycles) < 2:
            raise ValueError("concentric topology requires >= 2 cycles")
        if self.kind == CYCLE_WITH_JUMPS and self.jumps is None:
            raise ValueError("cycle_with_jumps requires a JumpSpec")

    @property
    def n_r(self) -> int:
        if self.kind == RANDOM_SPARSE:
            raise ValueError("random_sparse size is not derived from cycles")
        return sum(c.length for c in self.cycles)


@dataclass(frozen=True)
class InputWeightSpec:
    """Fixed-magnitude input weights; only the magnitude v is free."""

    magnitude: float

    def __post_init__(self):
        if not np.isfinite(self.magnitude) or self.magnitude <= 0:
            raise ValueError(f"input weight magnitude must be > 0, got {self.magnitude}")


@dataclass(frozen=True)
class WeightSet:
    """Realized input matrix (N_R x N_U) and reservoir matrix (N_R x N_R)."""

    w_in: np.ndarray
    w_h: np.ndarray

    def __post_init__(self):
        if self.w_in.ndim != 2 or self.w_h.ndim != 2:
            raise ValueError("weight matrices must be 2-D")
        if self.w_h.shape[0] != self.w_h.shape[1]:
            raise ValueError("reservoir matrix must be square")
        if self.w_in.shape[0] != self.w_h.shape[0]:
            raise ValueError("w_in rows must equal reservoir size")

    @property
    def n_r(self) -> int:
        return self.w_h.shape[0]

    @property
    def n_u(self) -> int:
        return self.w_in.shape[1]


_pi_digits_cache: dict[str, np.ndarray] = {}


def _pi_digits() -> np.ndarray:
    """Decimal digits of pi after the point, as an int array (cached)."""
    path = os.environ.get(PI_DIGITS_ENV)
    if path is None:
        key = "<bundled>"
        if key not in _pi_digits_cache:
            text = (
                resources.files("crlab").joinpath("data/pi_digits.txt").read_text()
            ).strip()
            _pi_digits_cache[key] = np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")
        return _pi_digits_cache[key]
    if path not in _pi_digits_cache:
        with open(path) as fh:
            text = fh.read().strip()
        if not text.isdigit():
            raise ValueError(f"pi digit file {path} must contain digits only")
        _pi_digits_cache[path] = np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")
    return _pi_digits_cache[path]


def pi_signs(n: int) -> np.ndarray:
    """First n input signs from the decimal expansion of pi.

    Digit k (1-indexed after the decimal point: 1, 4, 1, 5, 9, ...) maps
    to -1 when in 0..4 and to +1 when in 5..9.
    """
    if n < 1:
        raise ValueError(f"need n >= 1 signs, got {n}")
    digits = _pi_digits()
    if n > digits.shape[0]:
        raise ValueError(f"requested {n} signs but only {digits.shape[0]} pi digits available")
    return np.where(digits[:n] >= 5, 1.0, -1.0)


def build_input_weights(n_r: int, n_u: int, spec: InputWeightSpec) -> np.ndarray:
    """Dense N_R x N_U input matrix, all entries +-v with pi-digit signs.

    Signs are consumed in row-major order over the matrix entries.
    """
    if n_r < 1 or n_u < 1:
        raise ValueError("n_r and n_u must be >= 1")
    signs = pi_signs(n_r * n_u).reshape(n_r, n_u)
    return signs * spec.magnitude


def build_scr(n_r: int, w_c: float) -> np.ndarray:
    """Single unidirectional cycle: node i feeds node i+1, weight w_c."""
    if n_r < 2:
        raise ValueError(f"cycle needs >= 2 nodes, got {n_r}")
    w = np.zeros((n_r, n_r))
    idx = np.arange(n_r)
    w[(idx + 1) % n_r, idx] = w_c
    return w


def _crj_anchors(n_r: int, step: int) -> list[int]:
    # 0-based anchor positions 0, step, 2*step, ... within the cycle
    return list(range(0, n_r, step))


def build_crj(n_r: int, w_c: float, jumps: JumpSpec) -> np.ndarray:
    """Cycle reservoir with bidirectional jumps every jumps.step positions.

    Anchors start at node 1 and advance by the jump step; consecutive
    anchors are connected, and the last anchor closes back to node 1
    (with a shorter span when the step does not divide the cycle length).
    """
    if not 2 <= jumps.step < n_r:
        raise ValueError(f"jump step must be in [2, n_r), got {jumps.step} for n_r={n_r}")
    w = build_scr(n_r, w_c)
    anchors = _crj_anchors(n_r, jumps.step)
    pairs = list(zip(anchors[:-1], anchors[1:])) + [(anchors[-1], 0)]
    for a, b in pairs:
        w[a, b] = jumps.weight
        w[b, a] = jumps.weight
    return w


def build_concentric(cycles, jumps: JumpSpec | None = None) -> np.ndarray:
    """Concentric reservoir: independent cycle blocks plus optional jumps.

    Cycles are ordered outermost first and each occupies a contiguous
    index range. With jumps, adjacent cycle pairs are linked at aligned
    local positions 1, 1+step, 1+2*step, ... up to the shorter cycle.
    """
    cycles = [c if isinstance(c, CycleSpec) else CycleSpec(*c) for c in cycles]
    if not cycles:
        raise ValueError("need at least one cycle")
    if jumps is not None:
        min_len = min(c.length for c in cycles)
        if not 1 <= jumps.step <= min_len:
            raise ValueError(
                f"jump step {jumps.step} must be in [1, {min_len}] for these cycles"
            )
    n_r = sum(c.length for c in cycles)
    w = np.zeros((n_r, n_r))
    offsets = np.cumsum([0] + [c.length for c in cycles])
    for c, off in zip(cycles, offsets):
        w[off : off + c.length, off : off + c.length] = build_scr(c.length, c.weight)
    if jumps is not None:
        for (ca, off_a), (cb, off_b) in zip(
            zip(cycles, offsets), zip(cycles[1:], offsets[1:])
        ):
            for p in range(0, min(ca.length, cb.length), jumps.step):
                w[off_a + p, off_b + p] = jumps.weight
                w[off_b + p, off_a + p] = jumps.weight
    return w


def build_random_esn(
    n_r: int, connectivity: float, target_radius: float, seed: int
) -> np.ndarray:
    """Random sparse reservoir rescaled to an exact spectral radius.

    Entries are nonzero independently with probability `connectivity`,
    drawn uniform in [-1, 1] from a seeded generator, then the whole
    matrix is scaled so its spectral radius equals target_radius.
    """
    if not 0 < connectivity <= 1:
        raise ValueError(f"connectivity must be in (0, 1], got {connectivity}")
    if not 0 < target_radius < 1:
        raise ValueError(f"target radius must be in (0, 1), got {target_radius}")
    for attempt in range(10):
        rng = np.random.default_rng(seed + attempt)
        mask = rng.random((n_r, n_r)) < connectivity
        values = rng.uniform(-1.0, 1.0, (n_r, n_r))
        w = np.where(mask, values, 0.0)
        rho = numerics.spectral_radius(w)
        if rho > 0:
            return w * (target_radius / rho)
    raise ValueError(
        f"drew a zero-spectral-radius matrix 10 times (n_r={n_r}, "
        f"connectivity={connectivity}); cannot scale"
    )


def build_reservoir(topo: ReservoirTopology, n_r: int | None = None) -> np.ndarray:
    """Realize a ReservoirTopology as its weight matrix."""
    if topo.kind == RANDOM_SPARSE:
        if n_r is None:
            raise ValueError("random_sparse needs an explicit reservoir size")
        return build_random_esn(n_r, topo.connectivity, topo.target_radius, topo.seed)
    if topo.kind == SIMPLE_CYCLE:
        c = topo.cycles[0]
        return build_scr(c.length, c.weight)
    if topo.kind == CYCLE_WITH_JUMPS:
        c = topo.cycles[0]
        return build_crj(c.length, c.weight, topo.jumps)
    return build_concentric(topo.cycles, topo.jumps)


def parse_topology(text: str) -> list[int]:
    """Parse "n1-n2-n3" cycle lengths, outermost first."""
    if not isinstance(text, str) or not text.strip():
        raise ValueError("topology string must be nonempty")
    lengths = []
    for token in text.strip().split("-"):
        try:
            n = int(token)
        except ValueError:
            raise ValueError(f"bad topology token {token!r} in {text!r}") from None
        if n <= 0:
            raise ValueError(f"cycle length must be positive, got {n} in {text!r}")
        lengths.append(n)
    return lengths
