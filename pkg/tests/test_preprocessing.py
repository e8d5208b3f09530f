import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intpat.core import DataError, Interval, build_dataset, point
from intpat.io import RawTable
from intpat.preprocessing import drop_incomplete, join_runs, simplify


def one_attribute(values):
    return build_dataset([(f"g{i}", [point(v)]) for i, v in enumerate(values)], ["x"])


def test_join_runs_example():
    delta_max, beta, runs = join_runs((0.0, 0.1, 0.2, 1.0), 0.3)
    assert delta_max == pytest.approx(0.8)
    assert beta == pytest.approx(0.24)
    assert runs == [(0.0, 0.2), (1.0, 1.0)]


def test_simplify_example():
    ds, report = simplify(one_attribute([0, 0.1, 0.2, 1.0]), 0.3)
    assert [d[0] for d in ds.descriptions] == [Interval(0, 0.2)] * 3 + [Interval(1, 1)]
    (join,) = report.attributes
    assert join.size_before == 4 and join.size_after == 3
    assert join.beta == report.gamma * join.delta_max


def test_uniform_values_do_not_merge():
    ds = one_attribute(range(10))
    out, report = simplify(ds, 0.99)
    assert out.value_sets == ds.value_sets
    assert len(report.attributes[0].groups) == 10


def test_two_clusters_merge():
    ds = one_attribute([10, 10.01, 10.02, 20, 20.01])
    out, report = simplify(ds, 0.01)
    assert report.attributes[0].groups == ((10, 10.02), (20, 20.01))
    assert set(out.descriptions) == {(Interval(10, 10.02),), (Interval(20, 20.01),)}


def test_single_value():
    delta_max, beta, runs = join_runs((3.0,), 0.5)
    assert (delta_max, beta, runs) == (0.0, 0.0, [(3.0, 3.0)])


def test_interval_endpoints_use_their_runs():
    ds = build_dataset([("a", [Interval(0.1, 0.9)]), ("b", [point(0)]), ("c", [point(1)])], ["x"])
    out, _ = simplify(ds, 0.5)
    # gaps 0.1, 0.8, 0.1 with beta 0.4: runs [0, 0.1] and [0.9, 1]
    assert out.descriptions[0] == (Interval(0, 1),)


@pytest.mark.parametrize("gamma", [0, 1, -0.1, 1.5])
def test_gamma_range(gamma):
    with pytest.raises(ValueError):
        simplify(one_attribute([0, 1]), gamma)


values = st.lists(st.integers(0, 1000).map(lambda v: v / 10), min_size=1, max_size=25)


@settings(max_examples=200, deadline=None)
@given(values, st.floats(0.01, 0.99))
def test_simplify_invariants(vals, gamma):
    ds = one_attribute(vals)
    out, report = simplify(ds, gamma)
    join = report.attributes[0]
    assert join.beta == gamma * join.delta_max
    assert out.sizes[0] <= ds.sizes[0]
    for old, new in zip(ds.descriptions, out.descriptions):
        assert new[0].contains(old[0])
    groups = join.groups
    # inside a run every gap is below beta; between runs none is
    w = ds.value_sets[0]
    for lo, hi in groups:
        run = [v for v in w if lo <= v <= hi]
        assert all(b - a < join.beta for a, b in zip(run, run[1:]))
    assert all(b[0] - a[1] >= join.beta for a, b in zip(groups, groups[1:]))
    if len(w) > 1 and join.beta <= min(b - a for a, b in zip(w, w[1:])):
        assert out.value_sets == ds.value_sets


def test_drop_incomplete_rows():
    table = RawTable(["x", "y"], [["1", "2"], ["?", "3"], ["4", ""]])
    cleaned, report = drop_incomplete(table)
    assert cleaned.rows == [["1", "2"]] and cleaned.ids == ["g1"]
    assert report.dropped_rows == 2 and report.kept_rows == 1


def test_drop_incomplete_numeric_unchanged():
    table = RawTable(["x", "y"], [["1", "2..3"], ["4", "5"]], ["a", "b"])
    cleaned, report = drop_incomplete(table)
    assert (cleaned.header, cleaned.rows, cleaned.ids) == (table.header, table.rows, table.ids)
    assert report.dropped_columns == () and report.dropped_rows == 0


def test_drop_incomplete_categorical_column():
    table = RawTable(["x", "colour"], [["1", "red"], ["2", "?"], ["3", "blue"]])
    cleaned, report = drop_incomplete(table)
    # the column goes first, so its missing cell costs no row
    assert report.dropped_columns == ("colour",)
    assert cleaned.rows == [["1"], ["2"], ["3"]]


def test_drop_incomplete_empty():
    with pytest.raises(DataError, match="empty after cleaning"):
        drop_incomplete(RawTable(["x"], [["?"], [""]]))
