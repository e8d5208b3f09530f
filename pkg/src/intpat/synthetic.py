"""Seeded dataset generators for tests and benchmarks."""

from __future__ import annotations

import numpy as np

from .core import Dataset, Interval, build_dataset


def random_dataset(
    seed: int,
    max_objects: int = 10,
    max_attributes: int = 3,
    max_values: int = 4,
    interval_rate: float = 0.3,
) -> Dataset:
    """Small dataset on an integer grid; a cell is an interval with probability ``interval_rate``."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_objects + 1))
    k = int(rng.integers(1, max_attributes + 1))
    n_values = [int(rng.integers(1, max_values + 1)) for _ in range(k)]
    rows = []
    for g in range(n):
        ivs = []
        for v in n_values:
            a, b = sorted(int(x) for x in rng.integers(0, v, size=2))
            if rng.random() >= interval_rate:
                b = a
            ivs.append(Interval(float(a), float(b)))
        rows.append((f"g{g + 1}", ivs))
    return build_dataset(rows, [f"m{m + 1}" for m in range(k)])


def state_dataset(
    n_objects: int = 4000,
    n_attributes: int = 8,
    n_values: int = 20,
    seed: int = 0,
    spread: float = 0.16,
) -> Dataset:
    """Point data clustered around the middle of a ``n_values`` grid.

    Each value is a rounded normal draw, clipped to the grid; ``spread`` is the
    standard deviation as a fraction of the grid width.
    """
    rng = np.random.default_rng(seed)
    center = (n_values - 1) / 2
    x = rng.normal(center, spread * n_values, size=(n_objects, n_attributes))
    x = np.clip(np.rint(x), 0, n_values - 1)
    rows = [
        (f"g{g + 1}", [Interval(float(v), float(v)) for v in x[g]]) for g in range(n_objects)
    ]
    return build_dataset(rows, [f"a{m + 1}" for m in range(n_attributes)])
