"""Independent reference computations over the value space.

Nothing here touches the bitmask tables or index rounding of the package;
projections are evaluated literally from allowed endpoint value sets.
"""

from itertools import combinations

from intpat.core import Interval


def allowed_values(ps, ds):
    return [
        ({w[i] for i in r.left}, {w[i] for i in r.right})
        for w, r in zip(ds.value_sets, ps.restrictions)
    ]


def project_literal(d, allowed):
    out = []
    for iv, (left, right) in zip(d, allowed):
        lo = max(l for l in left if l <= iv.lo)
        hi = min(r for r in right if r >= iv.hi)
        out.append(Interval(lo, hi))
    return tuple(out)


def hull(descs):
    lo = [min(d[m].lo for d in descs) for m in range(len(descs[0]))]
    hi = [max(d[m].hi for d in descs) for m in range(len(descs[0]))]
    return tuple(Interval(a, b) for a, b in zip(lo, hi))


def contains(c, d):
    return all(x.lo <= y.lo and y.hi <= x.hi for x, y in zip(c, d))


def concepts(ds, allowed=None):
    """Map extent mask -> intent for every concept with a non-empty extent.

    With ``allowed`` the concepts of the projected structure are returned:
    object descriptions are projected first and meets are projected back.
    """
    descs = list(ds.descriptions)
    if allowed is not None:
        descs = [project_literal(d, allowed) for d in descs]
    n = len(descs)
    out = {}
    seen = set()
    for k in range(1, n + 1):
        for sub in combinations(range(n), k):
            d = hull([descs[g] for g in sub])
            if allowed is not None:
                d = project_literal(d, allowed)
            if d in seen:
                continue
            seen.add(d)
            mask = 0
            for g in range(n):
                if contains(d, descs[g]):
                    mask |= 1 << g
            out[mask] = d
    return out


def deltas(extents):
    """Delta of every extent w.r.t. the others, with the empty set as bottom."""
    ext = list(extents)
    out = {}
    for e in ext:
        best = 0
        for f in ext:
            if f != e and f & e == f:
                best = max(best, bin(f).count("1"))
        out[e] = bin(e).count("1") - best
    return out


def delta_stable(ds, theta):
    cs = concepts(ds)
    return {e for e, d in deltas(cs).items() if d >= theta}
