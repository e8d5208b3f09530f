"""Theta-Sofia: mining closed interval patterns with Delta >= theta along a projection chain.

Patterns are mined first in the coarsest projection (one pattern), then
carried from each chain element to the next by computing their preimages and
dropping every pattern whose Delta in the current projection falls below the
threshold. Delta never increases from a pattern's image to its preimages, so a
dropped pattern cannot have descendants that pass the threshold.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .core import Dataset, IndexTuple, bits
from .measures import delta_of
from .projections import (
    ChainSchedule,
    ProjectionState,
    advance,
    build_schedule,
    initial_projection,
)


class CapacityExceeded(RuntimeError):
    """A pattern set grew past the configured capacity."""


@dataclass(frozen=True)
class MinedPattern:
    extent: int
    intent: IndexTuple
    delta: int | None = None

    @property
    def support(self) -> int:
        return self.extent.bit_count()


def sort_key(p: MinedPattern) -> tuple:
    """Descending Delta, then descending support, then lexicographic member positions."""
    delta = -1 if p.delta is None else p.delta
    return (-delta, -p.support, bits(p.extent))


@dataclass
class PatternSet:
    """Patterns valid under one projection, keyed by extent."""

    projection: ProjectionState | None
    patterns: dict[int, MinedPattern] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[MinedPattern]:
        return iter(self.patterns.values())

    def __contains__(self, extent: int) -> bool:
        return extent in self.patterns

    def add(self, p: MinedPattern) -> None:
        self.patterns.setdefault(p.extent, p)

    def extents(self) -> set[int]:
        return set(self.patterns)

    def deltas(self) -> dict[int, int | None]:
        return {e: p.delta for e, p in self.patterns.items()}

    def ordered(self) -> list[MinedPattern]:
        return sorted(self.patterns.values(), key=sort_key)


@dataclass
class StepRecord:
    step: int
    attribute: str | None
    preimages: int
    kept: int
    # largest Delta among the patterns removed at this step, -1 if none
    max_removed: int = -1
    # extent -> Delta before filtering; only filled when requested
    deltas: dict[int, int] | None = None


@dataclass
class SofiaResult:
    theta: int
    patterns: PatternSet
    trace: list[StepRecord]
    schedule: ChainSchedule
    elapsed: float
    runs: int = 1

    @property
    def chain_length(self) -> int:
        return len(self.schedule)

    @property
    def peak(self) -> int:
        return max(r.kept for r in self.trace)

    @property
    def max_removed(self) -> int:
        return max(r.max_removed for r in self.trace)


def find_patterns_psi0(ds: Dataset, theta: int, ps0: ProjectionState | None = None) -> PatternSet:
    """Patterns of the coarsest projection: the whole dataset with the full-range intent."""
    ps0 = ps0 or initial_projection(ds)
    out = PatternSet(ps0)
    intent = tuple((0, s - 1) for s in ds.sizes)
    # the only other concept is the virtual bottom
    delta = ds.n_objects
    if delta >= theta:
        out.add(MinedPattern(ds.full, intent, delta))
    return out


def _closed(e: int, d: IndexTuple, ps: ProjectionState, ds: Dataset) -> bool:
    """Whether ``d`` is the projected intent of its extent ``e``."""
    for m, ((lo, hi), r) in enumerate(zip(d, ps.restrictions)):
        nlo = r.next_lo(lo)
        # some member must round down to lo, i.e. have lo index < nlo
        if nlo is not None and not e & ds.lo_le[m][nlo - 1]:
            return False
        phi = r.prev_hi(hi)
        if phi is not None and not e & ds.hi_ge[m][phi + 1]:
            return False
    return True


def _stepped_attribute(ps_prev: ProjectionState, ps_next: ProjectionState) -> list[int]:
    return [
        m for m, (a, b) in enumerate(zip(ps_prev.restrictions, ps_next.restrictions)) if a != b
    ]


def preimages(
    p: MinedPattern, ps_prev: ProjectionState, ps_next: ProjectionState, ds: Dataset
) -> list[MinedPattern]:
    """Closed patterns of ``ps_next`` whose image under ``ps_prev`` is ``p``.

    On the refined attribute the left endpoint may move up to a newly allowed
    value that rounds back to it, and likewise the right endpoint down; every
    other component is unchanged. A candidate is a preimage iff it is closed.
    """
    d = p.intent
    options: list[list[tuple[int, int, int]]] = []
    for m in _stepped_attribute(ps_prev, ps_next):
        lo, hi = d[m]
        r_prev, r_next = ps_prev.restrictions[m], ps_next.restrictions[m]
        los = [lo] + [
            v for v in r_next.left if v > lo and v not in r_prev.left and r_prev.round_lo(v) == lo
        ]
        his = [hi] + [
            v for v in r_next.right if v < hi and v not in r_prev.right and r_prev.round_hi(v) == hi
        ]
        options.append([(m, a, b) for a in los for b in his if a <= b])

    out = []
    for combo in itertools.product(*options):
        cand = list(d)
        e = p.extent
        for m, a, b in combo:
            cand[m] = (a, b)
            if a != d[m][0]:
                e &= ds.lo_ge[m][a]
            if b != d[m][1]:
                e &= ds.hi_le[m][b]
        if not e:
            continue
        cand = tuple(cand)
        if _closed(e, cand, ps_next, ds):
            out.append(MinedPattern(e, cand))
    return out


def _chunks(items: list, n: int) -> list[list]:
    size = max(1, -(-len(items) // n))
    return [items[i : i + size] for i in range(0, len(items), size)]


def _map(fn: Callable, items: list, threads: int) -> Iterable:
    if threads <= 1 or len(items) < 2 * threads:
        return [fn(items)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, _chunks(items, threads)))


def extend_projection(
    ps_next: ProjectionState,
    theta: int,
    prev: PatternSet,
    ds: Dataset,
    *,
    threads: int = 1,
    record: StepRecord | None = None,
) -> PatternSet:
    """Preimages of every pattern of ``prev`` under ``ps_next``, filtered by Delta >= theta."""
    ps_prev = prev.projection
    merged: dict[int, MinedPattern] = {}

    def gen(chunk):
        return [q for p in chunk for q in preimages(p, ps_prev, ps_next, ds)]

    for part in _map(gen, list(prev), threads):
        for q in part:
            merged.setdefault(q.extent, q)

    def measure(chunk):
        return [(q, delta_of(q.extent, q.intent, ps_next, ds)) for q in chunk]

    out = PatternSet(ps_next)
    deltas = {} if record is not None and record.deltas is not None else None
    for part in _map(measure, list(merged.values()), threads):
        for q, delta in part:
            if deltas is not None:
                deltas[q.extent] = delta
            if delta >= theta:
                out.patterns[q.extent] = MinedPattern(q.extent, q.intent, delta)
            elif record is not None and delta > record.max_removed:
                record.max_removed = delta
    if record is not None:
        record.preimages = len(merged)
        record.kept = len(out)
        if deltas is not None:
            record.deltas = deltas
    return out


def sofia_run(
    ds: Dataset,
    theta: int,
    sched: ChainSchedule | str = "round-robin",
    *,
    capacity: int | None = None,
    threads: int = 1,
    keep_deltas: bool = False,
    on_step: Callable[[PatternSet, PatternSet], None] | None = None,
) -> SofiaResult:
    """All closed patterns of ``ds`` with Delta >= theta.

    ``on_step(prev, current)`` is called after each chain step with the
    filtered pattern sets before and after the step.
    """
    if isinstance(sched, str):
        sched = build_schedule(ds, sched)
    start = time.perf_counter()
    ps = initial_projection(ds)
    current = find_patterns_psi0(ds, theta, ps)
    first = StepRecord(0, None, 1, len(current), -1 if current else ds.n_objects)
    if keep_deltas:
        first.deltas = {ds.full: ds.n_objects}
    trace = [first]
    while current and (nxt := advance(ps, sched)) is not None:
        rec = StepRecord(nxt.step_index, ds.attributes[sched.order[ps.step_index]], 0, 0)
        if keep_deltas:
            rec.deltas = {}
        nxt_set = extend_projection(nxt, theta, current, ds, threads=threads, record=rec)
        trace.append(rec)
        if capacity is not None and len(nxt_set) > capacity:
            raise CapacityExceeded(
                f"pattern set at step {nxt.step_index} holds {len(nxt_set)} patterns "
                f"(capacity {capacity})"
            )
        if on_step is not None:
            on_step(current, nxt_set)
        ps, current = nxt, nxt_set
    if not current:
        # nothing left to refine; the result is empty under every later projection
        current = PatternSet(None)
    return SofiaResult(theta, current, trace, sched, time.perf_counter() - start)


def best_delta_search(
    ds: Dataset,
    sched: ChainSchedule | str = "round-robin",
    **kwargs,
) -> tuple[int, SofiaResult]:
    """Largest theta with a non-empty result, and the patterns attaining it.

    Starts at ``theta = |G|``. An empty run at ``theta`` removed, at some
    step, an image of every best pattern, and that image's Delta is at least
    the optimum; so the largest Delta removed during the run is an upper
    bound for it and becomes the next threshold. The first non-empty run is
    therefore made exactly at the optimum.
    """
    theta = ds.n_objects
    runs = 0
    while True:
        res = sofia_run(ds, theta, sched, **kwargs)
        runs += 1
        if len(res.patterns):
            break
        theta = max(res.max_removed, 1)
    best = max(p.delta for p in res.patterns)
    res.runs = runs
    return best, res
