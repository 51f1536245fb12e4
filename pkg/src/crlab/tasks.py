"""Benchmark data: NARMA-10 generation, file loading, splits, i.i.d. streams."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "TimeSeries",
    "SplitSpec",
    "Segment",
    "SupervisedTask",
    "generate_narma10",
    "load_series",
    "normalize",
    "make_task",
    "make_prediction_task",
    "iid_stream",
    "NARMA_SPLIT",
    "LASER_SPLIT",
]


@dataclass(frozen=True)
class TimeSeries:
    values: np.ndarray
    name: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.shape[0] < 1:
            raise ValueError("series must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(v)):
            raise ValueError("series contains non-finite values")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class SplitSpec:
    """Contiguous train/validation/test lengths plus per-segment washout."""

    train_len: int
    valid_len: int
    test_len: int
    washout: int = 200

    def __post_init__(self):
        for n in (self.train_len, self.valid_len, self.test_len):
            if n < self.washout:
                raise ValueError(
                    f"segment length {n} shorter than washout {self.washout}"
                )

    @property
    def total(self) -> int:
        return self.train_len + self.valid_len + self.test_len


NARMA_SPLIT = SplitSpec(train_len=2000, valid_len=5000, test_len=3000, washout=200)
LASER_SPLIT = SplitSpec(train_len=2000, valid_len=5000, test_len=3092, washout=200)


@dataclass(frozen=True)
class Segment:
    inputs: np.ndarray
    targets: np.ndarray
    washout: int
    start: int  # offset of the segment in the full stream


@dataclass(frozen=True)
class SupervisedTask:
    inputs: TimeSeries
    targets: TimeSeries
    split: SplitSpec
    name: str = ""

    def __post_init__(self):
        if len(self.inputs) != len(self.targets):
            raise ValueError("inputs and targets must have equal length")
        if self.split.total > len(self.inputs):
            raise ValueError(
                f"split needs {self.split.total} samples, series has {len(self.inputs)}"
            )

    def segments(self) -> tuple[Segment, Segment, Segment]:
        """Contiguous (train, valid, test) views with per-segment washout."""
        u = self.inputs.values
        y = self.targets.values
        s = self.split
        bounds = [0, s.train_len, s.train_len + s.valid_len, s.total]
        out = []
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            out.append(
                Segment(inputs=u[lo:hi], targets=y[lo:hi], washout=s.washout, start=lo)
            )
        return tuple(out)


def generate_narma10(length: int, seed: int) -> SupervisedTask:
    """NARMA-10 system identification task.

    Drives y(t+1) = 0.3 y(t) + 0.05 y(t) sum_{i=0..9} y(t-i)
    + 1.5 s(t-9) s(t) + 0.1 with s i.i.d. uniform in [0, 0.5] and zero
    history, then min-max normalizes y into [0, 1]. Input is the raw
    drive s(t), target the normalized y(t). A diverging draw (|y| > 10)
    is regenerated with an incremented seed, up to 10 attempts.
    """
    if length < 20:
        raise ValueError(f"NARMA-10 needs length >= 20, got {length}")
    for attempt in range(10):
        rng = np.random.default_rng(seed + attempt)
        s = rng.uniform(0.0, 0.5, length)
        y = np.zeros(length + 1)  # y[t] for t = 1..length; index 0 is y(0) = 0
        ok = True
        for t in range(length):
            # computing y(t+1) from y(t..t-9) and s(t-9), s(t); zero history
            hist = y[max(0, t - 9) : t + 1].sum()
            s_t = s[t - 1] if t >= 1 else 0.0
            s_lag = s[t - 10] if t >= 10 else 0.0
            y[t + 1] = 0.3 * y[t] + 0.05 * y[t] * hist + 1.5 * s_lag * s_t + 0.1
            if abs(y[t + 1]) > 10.0:
                ok = False
                break
        if ok:
            targets = normalize(TimeSeries(y[1:], name="narma10-y"), 0.0, 1.0)
            return SupervisedTask(
                inputs=TimeSeries(s, name="narma10-s"),
                targets=targets,
                split=NARMA_SPLIT if length >= NARMA_SPLIT.total else _fit_split(length),
                name=f"narma10(seed={seed})",
            )
    raise ValueError(f"NARMA-10 diverged for 10 consecutive seeds starting at {seed}")


def _fit_split(length: int) -> SplitSpec:
    # scale the paper split 2000/5000/3000 down to short series
    train = max(1, length // 5)
    valid = max(1, length // 2)
    test = length - train - valid
    wash = min(200, train // 2, valid // 2, test // 2)
    return SplitSpec(train, valid, test, washout=wash)


def load_series(path) -> TimeSeries:
    """Load a one-value-per-line text series; '#' lines are comments."""
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                values.append(float(stripped))
            except ValueError:
                raise ValueError(f"{path}: unparsable value at line {lineno}: {stripped!r}") from None
    if not values:
        raise ValueError(f"{path}: no data values found")
    return TimeSeries(np.array(values), name=str(path))


def normalize(series: TimeSeries, lo: float, hi: float) -> TimeSeries:
    """Affine map of [min, max] onto [lo, hi]."""
    if hi <= lo:
        raise ValueError(f"need hi > lo, got [{lo}, {hi}]")
    v = series.values
    vmin, vmax = v.min(), v.max()
    if vmax == vmin:
        raise ValueError("cannot normalize a constant series")
    scaled = (v - vmin) / (vmax - vmin) * (hi - lo) + lo
    return TimeSeries(scaled, name=series.name)


def make_task(inputs: TimeSeries, targets: TimeSeries, split: SplitSpec, name: str = "") -> SupervisedTask:
    """Bundle aligned input/target series with a split."""
    return SupervisedTask(inputs=inputs, targets=targets, split=split, name=name)


def make_prediction_task(series: TimeSeries, split: SplitSpec, name: str = "") -> SupervisedTask:
    """Next-value prediction: input is x(t), target is x(t+1)."""
    v = series.values
    if v.shape[0] < split.total + 1:
        raise ValueError(
            f"next-value task needs {split.total + 1} samples, series has {v.shape[0]}"
        )
    return SupervisedTask(
        inputs=TimeSeries(v[:-1], name=series.name),
        targets=TimeSeries(v[1:], name=series.name + "+1"),
        split=split,
        name=name or f"predict({series.name})",
    )


def iid_stream(length: int, seed: int, low: float = -1.0, high: float = 1.0) -> TimeSeries:
    """Seeded i.i.d. uniform stream in [low, high]."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if high <= low:
        raise ValueError(f"need high > low, got [{low}, {high}]")
    rng = np.random.default_rng(seed)
    return TimeSeries(rng.uniform(low, high, length), name=f"iid(seed={seed})")
