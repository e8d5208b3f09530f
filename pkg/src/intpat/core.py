"""Interval pattern structures: datasets, meet, subsumption and the diamond operators.

Descriptions live in two spaces. The value space uses :class:`Interval` tuples
with real endpoints; the index space replaces every endpoint by its position in
the attribute's sorted value set, so that an interval becomes a ``(lo, hi)``
pair of small integers. Extents are plain ``int`` bitmasks where bit ``i`` is
the ``i``-th object of the dataset.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence


class DataError(ValueError):
    """Raised for malformed input data."""


@dataclass(frozen=True, order=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise DataError(f"malformed interval: [{self.lo}, {self.hi}]")

    def contains(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self) -> str:
        if self.lo == self.hi:
            return format_value(self.lo)
        return f"[{format_value(self.lo)},{format_value(self.hi)}]"


IntervalTuple = tuple[Interval, ...]
# index-space description: one (lo_index, hi_index) pair per attribute
IndexTuple = tuple[tuple[int, int], ...]


def format_value(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return f"{v:g}"


def format_tuple(d: Sequence[Interval]) -> str:
    return "<" + ",".join(str(iv) for iv in d) + ">"


def point(v: float) -> Interval:
    return Interval(v, v)


def meet(a: Sequence[Interval], b: Sequence[Interval]) -> IntervalTuple:
    """Component-wise convex hull of two interval tuples."""
    if len(a) != len(b):
        raise DataError("arity mismatch")
    return tuple(Interval(min(x.lo, y.lo), max(x.hi, y.hi)) for x, y in zip(a, b))


def subsumes(c: Sequence[Interval], d: Sequence[Interval]) -> bool:
    """True iff ``c ⊑ d``, i.e. every interval of ``c`` contains the one of ``d``."""
    if len(c) != len(d):
        raise DataError("arity mismatch")
    return all(x.contains(y) for x, y in zip(c, d))


def popcount(mask: int) -> int:
    return mask.bit_count()


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class Dataset:
    """Objects described by interval tuples, with per-attribute value grids.

    Build instances with :func:`build_dataset`; the constructor expects the
    index tables to be consistent with ``descriptions``.
    """

    object_ids: tuple[str, ...]
    attributes: tuple[str, ...]
    descriptions: tuple[IntervalTuple, ...]
    value_sets: tuple[tuple[float, ...], ...]
    index_descriptions: tuple[IndexTuple, ...] = field(repr=False)
    # lo_ge[m][v]: objects whose lo index on m is >= v (v in 0..|W_m|)
    lo_ge: tuple[tuple[int, ...], ...] = field(repr=False)
    # hi_le[m][v]: objects whose hi index on m is <= v
    hi_le: tuple[tuple[int, ...], ...] = field(repr=False)
    # lo_le[m][v]: objects whose lo index on m is <= v
    lo_le: tuple[tuple[int, ...], ...] = field(repr=False)
    # hi_ge[m][v]: objects whose hi index on m is >= v
    hi_ge: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def n_objects(self) -> int:
        return len(self.object_ids)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def full(self) -> int:
        return (1 << len(self.object_ids)) - 1

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.value_sets)

    def description(self, obj: str | int) -> IntervalTuple:
        return self.descriptions[self._pos(obj)]

    def _pos(self, obj: str | int) -> int:
        if isinstance(obj, int):
            return obj
        return self.object_ids.index(obj)

    # extents <-> ids

    def extent(self, ids: Iterable[str | int]) -> int:
        mask = 0
        for g in ids:
            mask |= 1 << self._pos(g)
        return mask

    def ids(self, mask: int) -> tuple[str, ...]:
        return tuple(self.object_ids[i] for i in bits(mask))

    # index space

    def to_index(self, d: Sequence[Interval]) -> IndexTuple:
        """Index form of a description whose endpoints lie on the grid."""
        if len(d) != self.n_attributes:
            raise DataError("arity mismatch")
        out = []
        for w, iv in zip(self.value_sets, d):
            i, j = bisect.bisect_left(w, iv.lo), bisect.bisect_left(w, iv.hi)
            if i == len(w) or w[i] != iv.lo or j == len(w) or w[j] != iv.hi:
                raise DataError(f"{iv} is not on the value grid")
            out.append((i, j))
        return tuple(out)

    def to_values(self, d: IndexTuple) -> IntervalTuple:
        return tuple(Interval(w[lo], w[hi]) for w, (lo, hi) in zip(self.value_sets, d))

    def index_extent(self, d: IndexTuple) -> int:
        """Objects whose description is subsumed by the index-space description."""
        mask = self.full
        for m, (lo, hi) in enumerate(d):
            if lo > hi:
                return 0
            mask &= self.lo_ge[m][lo] & self.hi_le[m][hi]
            if not mask:
                break
        return mask

    def index_hull(self, mask: int) -> IndexTuple:
        """Index-space meet of the descriptions of a non-empty extent."""
        if not mask:
            raise DataError("no intent for the empty extent")
        out = []
        for m, w in enumerate(self.value_sets):
            lo_le, hi_ge = self.lo_le[m], self.hi_ge[m]
            # smallest v with some member having lo <= v
            a, b = 0, len(w) - 1
            while a < b:
                mid = (a + b) // 2
                if mask & lo_le[mid]:
                    b = mid
                else:
                    a = mid + 1
            lo = a
            # largest v with some member having hi >= v
            a, b = 0, len(w) - 1
            while a < b:
                mid = (a + b + 1) // 2
                if mask & hi_ge[mid]:
                    a = mid
                else:
                    b = mid - 1
            out.append((lo, a))
        return tuple(out)


def build_dataset(
    rows: Sequence[tuple[str, Sequence[Interval]]],
    attribute_names: Sequence[str],
) -> Dataset:
    """Materialize a dataset; value sets are the distinct endpoints per attribute."""
    if not rows:
        raise DataError("empty dataset")
    k = len(attribute_names)
    ids = []
    descriptions = []
    for oid, ivs in rows:
        ivs = tuple(iv if isinstance(iv, Interval) else Interval(*iv) for iv in ivs)
        if len(ivs) != k:
            raise DataError(f"arity mismatch for object {oid!r}: {len(ivs)} != {k}")
        ids.append(str(oid))
        descriptions.append(ivs)
    if len(set(ids)) != len(ids):
        raise DataError("duplicate object ids")

    value_sets = []
    for m in range(k):
        vals = set()
        for d in descriptions:
            vals.add(d[m].lo)
            vals.add(d[m].hi)
        value_sets.append(tuple(sorted(vals)))

    index_desc = []
    for d in descriptions:
        index_desc.append(
            tuple(
                (bisect.bisect_left(w, iv.lo), bisect.bisect_left(w, iv.hi))
                for w, iv in zip(value_sets, d)
            )
        )

    n = len(ids)
    full = (1 << n) - 1
    lo_ge, hi_le, lo_le, hi_ge = [], [], [], []
    for m, w in enumerate(value_sets):
        size = len(w)
        lo_at = [0] * size
        hi_at = [0] * size
        for g, d in enumerate(index_desc):
            lo_at[d[m][0]] |= 1 << g
            hi_at[d[m][1]] |= 1 << g
        # lo_ge has size+1 entries so that lo_ge[size] == 0
        ge = [0] * (size + 1)
        for v in range(size - 1, -1, -1):
            ge[v] = ge[v + 1] | lo_at[v]
        le = [0] * size
        acc = 0
        for v in range(size):
            acc |= hi_at[v]
            le[v] = acc
        lo_ge.append(tuple(ge))
        hi_le.append(tuple(le))
        lo_le.append(tuple(full & ~ge[v + 1] for v in range(size)))
        hi_ge.append(tuple(full & ~(le[v - 1] if v else 0) for v in range(size)))

    return Dataset(
        object_ids=tuple(ids),
        attributes=tuple(str(a) for a in attribute_names),
        descriptions=tuple(descriptions),
        value_sets=tuple(value_sets),
        index_descriptions=tuple(index_desc),
        lo_ge=tuple(lo_ge),
        hi_le=tuple(hi_le),
        lo_le=tuple(lo_le),
        hi_ge=tuple(hi_ge),
    )


def extent_of(d: Sequence[Interval], ds: Dataset) -> int:
    """``d◇``: all objects whose description is subsumed by ``d``.

    ``d`` need not lie on the value grid.
    """
    if len(d) != ds.n_attributes:
        raise DataError("arity mismatch")
    mask = ds.full
    for m, (w, iv) in enumerate(zip(ds.value_sets, d)):
        i = bisect.bisect_left(w, iv.lo)
        j = bisect.bisect_right(w, iv.hi) - 1
        if j < 0 or i > j:
            return 0
        mask &= ds.lo_ge[m][i] & ds.hi_le[m][j]
    return mask


def intent_of(e: int, ds: Dataset) -> IntervalTuple:
    """``A◇``: meet of the descriptions of the members of ``e``."""
    if not e:
        raise DataError("no intent for the empty extent")
    return reduce(meet, (ds.descriptions[g] for g in bits(e)))


def close_extent(e: int, ds: Dataset) -> int:
    """``(A◇)◇``, the smallest closed extent containing ``e``."""
    return ds.index_extent(ds.index_hull(e))
