"""Endpoint-restriction projections of interval pattern structures and their chains.

A projection restricts, per attribute, the values allowed as left endpoints
(``left``) and as right endpoints (``right``). Applying it rounds each left
endpoint down and each right endpoint up to the nearest allowed value. Both
sets are kept as sorted tuples of value-grid indices; the smallest index must
be allowed on the left and the largest on the right.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import Dataset, IndexTuple, Interval, IntervalTuple

SCHEDULES = ("round-robin", "per-attribute")


@dataclass(frozen=True)
class AttributeRestriction:
    size: int
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.left or self.left[0] != 0:
            raise ValueError("the smallest value must be an allowed left endpoint")
        if not self.right or self.right[-1] != self.size - 1:
            raise ValueError("the largest value must be an allowed right endpoint")
        if list(self.left) != sorted(set(self.left)) or list(self.right) != sorted(set(self.right)):
            raise ValueError("allowed endpoints must be strictly increasing")
        if self.left[-1] >= self.size or self.right[0] < 0:
            raise ValueError("allowed endpoint outside the value grid")

    @classmethod
    def counts(cls, size: int, left_count: int, right_count: int | None = None) -> AttributeRestriction:
        """First ``left_count`` values on the left, last ``right_count`` on the right."""
        right_count = left_count if right_count is None else right_count
        if not (1 <= left_count <= size and 1 <= right_count <= size):
            raise ValueError(f"counts must lie in [1, {size}]")
        return cls(size, tuple(range(left_count)), tuple(range(size - right_count, size)))

    @property
    def is_identity(self) -> bool:
        return len(self.left) == self.size and len(self.right) == self.size

    def round_lo(self, lo: int) -> int:
        return self.left[bisect.bisect_right(self.left, lo) - 1]

    def round_hi(self, hi: int) -> int:
        return self.right[bisect.bisect_left(self.right, hi)]

    def next_lo(self, lo: int) -> int | None:
        """Smallest allowed left endpoint strictly above ``lo``."""
        i = bisect.bisect_right(self.left, lo)
        return self.left[i] if i < len(self.left) else None

    def prev_hi(self, hi: int) -> int | None:
        """Largest allowed right endpoint strictly below ``hi``."""
        i = bisect.bisect_left(self.right, hi)
        return self.right[i - 1] if i > 0 else None

    def fixed_intervals(self) -> list[tuple[int, int]]:
        return [(l, r) for l in self.left for r in self.right if l <= r]

    def subset_of(self, other: AttributeRestriction) -> bool:
        return set(self.left) <= set(other.left) and set(self.right) <= set(other.right)


@dataclass(frozen=True)
class ProjectionState:
    """A projection of the whole tuple: one restriction per attribute."""

    restrictions: tuple[AttributeRestriction, ...]
    step_index: int = 0

    def apply(self, d: IndexTuple) -> IndexTuple:
        return tuple(
            (r.round_lo(lo), r.round_hi(hi)) for r, (lo, hi) in zip(self.restrictions, d)
        )

    def is_fixed(self, d: IndexTuple) -> bool:
        return self.apply(d) == d

    @property
    def is_identity(self) -> bool:
        return all(r.is_identity for r in self.restrictions)

    def fixed_set(self) -> list[IndexTuple]:
        return list(itertools.product(*(r.fixed_intervals() for r in self.restrictions)))

    def describe(self, ds: Dataset) -> str:
        parts = []
        for name, w, r in zip(ds.attributes, ds.value_sets, self.restrictions):
            left = ",".join(f"{w[i]:g}" for i in r.left)
            right = ",".join(f"{w[i]:g}" for i in r.right)
            parts.append(f"{name}[{{{left}}},{{{right}}}]")
        return "psi_" + "".join(parts)


def projection_from_values(
    ds: Dataset, allowed: Sequence[tuple[Sequence[float], Sequence[float]]]
) -> ProjectionState:
    """Build a projection from allowed left/right endpoint values per attribute."""
    out = []
    for w, (left, right) in zip(ds.value_sets, allowed):
        out.append(
            AttributeRestriction(
                len(w),
                tuple(sorted(w.index(v) for v in left)),
                tuple(sorted(w.index(v) for v in right)),
            )
        )
    return ProjectionState(tuple(out))


def identity_projection(ds: Dataset) -> ProjectionState:
    sizes = ds.sizes
    return ProjectionState(
        tuple(AttributeRestriction.counts(s, s) for s in sizes),
        step_index=sum(s - 1 for s in sizes),
    )


def initial_projection(ds: Dataset) -> ProjectionState:
    """The coarsest chain element: a single pattern, the full range on every attribute."""
    return ProjectionState(tuple(AttributeRestriction.counts(s, 1) for s in ds.sizes))


@dataclass(frozen=True)
class ChainSchedule:
    """Which attribute is refined at each step of the chain."""

    order: tuple[int, ...]
    strategy: str = "round-robin"

    def __len__(self) -> int:
        return len(self.order)


def build_schedule(ds: Dataset, strategy: str = "round-robin") -> ChainSchedule:
    remaining = [s - 1 for s in ds.sizes]
    if strategy == "per-attribute":
        order = [m for m, r in enumerate(remaining) for _ in range(r)]
    elif strategy == "round-robin":
        order = []
        while any(remaining):
            for m in range(len(remaining)):
                if remaining[m]:
                    order.append(m)
                    remaining[m] -= 1
    else:
        raise ValueError(f"unknown schedule {strategy!r}; expected one of {SCHEDULES}")
    return ChainSchedule(tuple(order), strategy)


def advance(ps: ProjectionState, sched: ChainSchedule) -> ProjectionState | None:
    """Next state of the symmetric chain, or ``None`` once the identity is reached."""
    if ps.step_index >= len(sched):
        return None
    m = sched.order[ps.step_index]
    r = ps.restrictions[m]
    nxt = AttributeRestriction.counts(
        r.size, min(len(r.left) + 1, r.size), min(len(r.right) + 1, r.size)
    )
    restrictions = ps.restrictions[:m] + (nxt,) + ps.restrictions[m + 1 :]
    return ProjectionState(restrictions, ps.step_index + 1)


def chain(ds: Dataset, sched: ChainSchedule) -> list[ProjectionState]:
    states = [initial_projection(ds)]
    while (nxt := advance(states[-1], sched)) is not None:
        states.append(nxt)
    return states


def apply_projection(ps: ProjectionState, d: Sequence[Interval], ds: Dataset) -> IntervalTuple:
    """Value-space application of a projection to a description on the grid."""
    return ds.to_values(ps.apply(ds.to_index(d)))


def project_extent(ps: ProjectionState, e: int, ds: Dataset) -> int:
    """``ψ(e◇)◇``; the empty extent passes through unchanged."""
    if not e:
        return 0
    return ds.index_extent(ps.apply(ds.index_hull(e)))


def is_simpler(a: ProjectionState, b: ProjectionState) -> bool:
    """Strict fixed-set inclusion, read off the allowed endpoint sets."""
    if len(a.restrictions) != len(b.restrictions):
        raise ValueError("projections of different datasets")
    if not all(x.subset_of(y) for x, y in zip(a.restrictions, b.restrictions)):
        return False
    return any(x != y for x, y in zip(a.restrictions, b.restrictions))
