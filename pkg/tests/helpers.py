from intpat.core import Interval, build_dataset, point

TOY_ROWS = [
    ("g1", [point(0), point(0)]),
    ("g2", [point(0), Interval(1, 2)]),
    ("g3", [point(0), Interval(1, 2)]),
    ("g4", [point(0), point(2)]),
    ("g5", [point(1), Interval(0, 2)]),
    ("g6", [point(1), Interval(0, 2)]),
]

TOY_CSV = """id,m1,m2
g1,0,0
g2,0,1..2
g3,0,1..2
g4,0,2
g5,1,0..2
g6,1,0..2
"""


def make_toy():
    return build_dataset(TOY_ROWS, ["m1", "m2"])


def ext(ds, digits):
    """Extent from digit shorthand, e.g. ``"234"`` for {g2, g3, g4}."""
    return ds.extent(f"g{c}" for c in digits)


def short(ds, mask):
    return "".join(g[1:] for g in ds.ids(mask))


def T(*cells):
    """Interval tuple from numbers and (lo, hi) pairs."""
    return tuple(Interval(*c) if isinstance(c, tuple) else point(c) for c in cells)


# one summary line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []
