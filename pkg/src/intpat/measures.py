"""Pattern quality measures computed inside a projected structure.

The empty extent acts as a virtual bottom concept: a concept without any
non-empty proper closed subextent has ``delta == support``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .core import Dataset, IndexTuple, bits, popcount
from .projections import ProjectionState

DEFAULT_ORACLE_CAP = 20


class OracleCapExceeded(RuntimeError):
    pass


def support(e: int) -> int:
    return popcount(e)


def _narrowings(e: int, intent: IndexTuple, ps: ProjectionState, ds: Dataset):
    """Extents of the one-step narrowings of ``intent`` allowed by ``ps``."""
    for m, ((lo, hi), r) in enumerate(zip(intent, ps.restrictions)):
        nlo = r.next_lo(lo)
        if nlo is not None and nlo <= hi:
            yield e & ds.lo_ge[m][nlo]
        phi = r.prev_hi(hi)
        if phi is not None and phi >= lo:
            yield e & ds.hi_le[m][phi]


def projected_intent(e: int, ps: ProjectionState, ds: Dataset) -> IndexTuple:
    return ps.apply(ds.index_hull(e))


def lower_neighbors(e: int, ps: ProjectionState, ds: Dataset) -> set[int]:
    """Maximal closed extents of the projected structure strictly inside ``e``.

    Returns ``{0}`` (the virtual bottom) when no non-empty proper closed
    subextent exists.
    """
    if not e:
        raise ValueError("no neighbors of bottom")
    intent = projected_intent(e, ps, ds)
    base = ds.index_extent(intent)
    cands = {c for c in _narrowings(base, intent, ps, ds) if c and c != base}
    maximal = {c for c in cands if not any(c != o and c & o == c for o in cands)}
    return maximal or {0}


def delta_of(e: int, intent: IndexTuple, ps: ProjectionState, ds: Dataset) -> int:
    """Delta of a concept ``(e, intent)`` already known to be closed under ``ps``."""
    best = 0
    for c in _narrowings(e, intent, ps, ds):
        n = c.bit_count()
        if n > best:
            best = n
    return e.bit_count() - best


def delta_measure(e: int, ps: ProjectionState, ds: Dataset) -> int:
    """Smallest support drop from the concept of ``e`` to one of its lower neighbors."""
    if not e:
        raise ValueError("no neighbors of bottom")
    intent = projected_intent(e, ps, ds)
    return delta_of(ds.index_extent(intent), intent, ps, ds)


def exact_stability(e: int, ds: Dataset, cap: int = DEFAULT_ORACLE_CAP) -> Fraction:
    """Share of subsets of ``e`` whose common description is the intent of ``e``.

    The empty subset never matches. Enumerates all ``2**|e|`` subsets, hence
    the cap.
    """
    n = popcount(e)
    if n == 0:
        raise ValueError("no intent for the empty extent")
    if n > cap:
        raise OracleCapExceeded(f"oracle cap exceeded: |extent| = {n} > {cap}")
    members = bits(e)
    intent = ds.index_hull(e)
    subsets = np.arange(1 << n, dtype=np.int64)
    ok = subsets != 0
    # a subset keeps the intent iff it reaches every extreme endpoint of it
    for m, (lo, hi) in enumerate(intent):
        lo_hit = 0
        hi_hit = 0
        for k, g in enumerate(members):
            glo, ghi = ds.index_descriptions[g][m]
            if glo == lo:
                lo_hit |= 1 << k
            if ghi == hi:
                hi_hit |= 1 << k
        ok &= (subsets & lo_hit) != 0
        ok &= (subsets & hi_hit) != 0
    return Fraction(int(ok.sum()), 1 << n)


def stability_upper_bound(e: int, ps: ProjectionState, ds: Dataset) -> float:
    return 1.0 - 2.0 ** -delta_measure(e, ps, ds)
