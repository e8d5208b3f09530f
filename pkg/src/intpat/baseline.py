"""Postfiltering competitor: closed interval pattern enumeration, plus a brute-force oracle.

The enumerator is a depth-first search over minimal interval changes. Each
description has ``2 * |M|`` positions (left then right endpoint, attribute by
attribute). A child narrows one position by a single grid step, is closed, and
is kept only if the closure left every earlier position untouched; this makes
every closed pattern reachable along exactly one path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .core import Dataset, IndexTuple, intent_of, subsumes
from .measures import delta_of
from .projections import identity_projection
from .sofia import MinedPattern, PatternSet

DEFAULT_LATTICE_CAP = 15


class LatticeCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationConfig:
    min_support: int = 1
    max_patterns: int | None = None

    def __post_init__(self) -> None:
        if self.min_support < 1:
            raise ValueError("min_support must be >= 1")


@dataclass
class EnumerationResult:
    patterns: PatternSet
    interrupted: bool
    emitted: int
    max_depth: int
    elapsed: float


class _Interrupted(Exception):
    pass


def _shift_lo(e: int, ds: Dataset, m: int, lo: int) -> int:
    """Smallest lo index reached by a member of ``e``, scanning up from ``lo``."""
    table = ds.lo_le[m]
    while not e & table[lo]:
        lo += 1
    return lo


def _shift_hi(e: int, ds: Dataset, m: int, hi: int) -> int:
    table = ds.hi_ge[m]
    while not e & table[hi]:
        hi -= 1
    return hi


def enumerate_closed_patterns(ds: Dataset, cfg: EnumerationConfig | None = None) -> EnumerationResult:
    """All closed patterns with support >= ``cfg.min_support``, each emitted once."""
    cfg = cfg or EnumerationConfig()
    start = time.perf_counter()
    out = PatternSet(identity_projection(ds))
    if cfg.min_support > ds.n_objects:
        return EnumerationResult(out, False, 0, 0, time.perf_counter() - start)
    n_pos = 2 * ds.n_attributes
    emitted = 0

    def emit(e: int, d: IndexTuple) -> None:
        nonlocal emitted
        if cfg.max_patterns is not None and emitted >= cfg.max_patterns:
            raise _Interrupted
        emitted += 1
        out.patterns[e] = MinedPattern(e, d)

    def children(e: int, d: IndexTuple, first: int):
        for pos in range(first, n_pos):
            m, side = divmod(pos, 2)
            lo, hi = d[m]
            if lo == hi:
                continue
            if side == 0:
                child = e & ds.lo_ge[m][lo + 1]
            else:
                child = e & ds.hi_le[m][hi - 1]
            if child.bit_count() < cfg.min_support:
                continue
            # canonicity: earlier positions must survive the closure
            canonical = True
            for q in range(pos):
                qm, qside = divmod(q, 2)
                qlo, qhi = d[qm]
                if qside == 0 and not child & ds.lo_le[qm][qlo]:
                    canonical = False
                    break
                if qside == 1 and not child & ds.hi_ge[qm][qhi]:
                    canonical = False
                    break
            if not canonical:
                continue
            nd = list(d)
            if side == 0:
                nd[m] = (_shift_lo(child, ds, m, lo + 1), hi)
            else:
                nd[m] = (lo, _shift_hi(child, ds, m, hi - 1))
            for q in range(pos + 1, n_pos):
                qm, qside = divmod(q, 2)
                qlo, qhi = nd[qm]
                if qside == 0:
                    nd[qm] = (_shift_lo(child, ds, qm, qlo), qhi)
                else:
                    nd[qm] = (qlo, _shift_hi(child, ds, qm, qhi))
            yield child, tuple(nd), pos

    top = ds.index_hull(ds.full)
    interrupted = False
    max_depth = 0
    try:
        emit(ds.full, top)
        stack = [(ds.full, top, 0, 0)]
        while stack:
            e, d, first, depth = stack.pop()
            max_depth = max(max_depth, depth)
            kids = list(children(e, d, first))
            for child, nd, pos in kids:
                emit(child, nd)
            # reversed so that the earliest position is expanded first
            stack.extend((c, nd, pos, depth + 1) for c, nd, pos in reversed(kids))
    except _Interrupted:
        interrupted = True
    return EnumerationResult(out, interrupted, emitted, max_depth, time.perf_counter() - start)


def postfilter(pats: PatternSet, theta: int, ds: Dataset) -> PatternSet:
    """Keep the patterns whose Delta in the unprojected structure is >= theta."""
    ident = identity_projection(ds)
    out = PatternSet(ident)
    for p in pats:
        intent = ds.index_hull(p.extent)
        delta = delta_of(p.extent, intent, ident, ds)
        if delta >= theta:
            out.add(MinedPattern(p.extent, intent, delta))
    return out


def brute_force_lattice(ds: Dataset, cap: int = DEFAULT_LATTICE_CAP) -> PatternSet:
    """Every concept with a non-empty extent, by closing all object subsets.

    Uses the value-space diamond operators only, so it shares no code path
    with the bitmask tables used by the miners.
    """
    n = ds.n_objects
    if n > cap:
        raise LatticeCapExceeded(f"brute-force lattice refused: {n} objects > cap {cap}")
    out = PatternSet(identity_projection(ds))
    seen = set()
    for k in range(1, n + 1):
        for subset in combinations(range(n), k):
            mask = 0
            for g in subset:
                mask |= 1 << g
            intent = intent_of(mask, ds)
            if intent in seen:
                continue
            seen.add(intent)
            e = 0
            for g, desc in enumerate(ds.descriptions):
                if subsumes(intent, desc):
                    e |= 1 << g
            out.add(MinedPattern(e, ds.to_index(intent)))
    return out
