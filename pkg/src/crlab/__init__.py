"""Concentric cycle reservoirs: deterministic ESN topologies, benchmarks,
and memory-capacity estimation."""

__version__ = "0.1.0"

from . import dynamics, memory_capacity, numerics, readout, selection, tasks, topology

__all__ = [
    "__version__",
    "dynamics",
    "memory_capacity",
    "numerics",
    "readout",
    "selection",
    "tasks",
    "topology",
]
