from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ext, short
from intpat.core import build_dataset, intent_of, point
from intpat.measures import (
    OracleCapExceeded,
    delta_measure,
    exact_stability,
    lower_neighbors,
    stability_upper_bound,
    support,
)
from intpat.projections import build_schedule, chain, identity_projection, initial_projection
from intpat.synthetic import random_dataset
from oracles import allowed_values, concepts, deltas


def literal_stability(e, ds):
    """Subsets of ``e`` whose meet equals the intent, counted one by one."""
    members = [g for g in range(ds.n_objects) if e >> g & 1]
    target = intent_of(e, ds)
    hits = 0
    for k in range(1, len(members) + 1):
        for sub in combinations(members, k):
            mask = sum(1 << g for g in sub)
            hits += intent_of(mask, ds) == target
    return Fraction(hits, 2 ** len(members))


def test_support(toy):
    assert support(ext(toy, "234")) == 3
    assert support(0) == 0
    assert support(toy.full) == 6


def test_lower_neighbors_identity(toy):
    ident = identity_projection(toy)
    assert {short(toy, e) for e in lower_neighbors(ext(toy, "234"), ident, toy)} == {"4"}
    assert lower_neighbors(ext(toy, "56"), ident, toy) == {0}
    assert {short(toy, e) for e in lower_neighbors(toy.full, ident, toy)} == {"1234", "56"}


def test_lower_neighbors_psi0(toy):
    assert lower_neighbors(toy.full, initial_projection(toy), toy) == {0}


def test_lower_neighbors_of_bottom(toy):
    with pytest.raises(ValueError, match="no neighbors of bottom"):
        lower_neighbors(0, identity_projection(toy), toy)


def test_delta_examples(toy):
    ident = identity_projection(toy)
    assert delta_measure(ext(toy, "234"), ident, toy) == 2
    assert delta_measure(toy.full, ident, toy) == 2
    psi2 = chain(toy, build_schedule(toy, "per-attribute"))[2]
    assert delta_measure(ext(toy, "234"), psi2, toy) == 3


def test_stability_examples(toy):
    assert exact_stability(ext(toy, "234"), toy) == Fraction(3, 4)
    assert exact_stability(ext(toy, "1"), toy) == Fraction(1, 2)


def test_stability_partition_identity(toy):
    total = 0
    for e in concepts(toy):
        total += exact_stability(e, toy) * 2 ** support(e)
    assert total + 1 == 64  # plus the empty subset, which closes to no concept


def test_stability_cap():
    ds = build_dataset([(f"g{i}", [point(0)]) for i in range(21)], ["x"])
    with pytest.raises(OracleCapExceeded):
        exact_stability(ds.full, ds)
    assert exact_stability(ds.full, ds, cap=21) == Fraction(2**21 - 1, 2**21)


def test_stability_bound_examples(toy):
    ident = identity_projection(toy)
    e = ext(toy, "234")
    assert stability_upper_bound(e, ident, toy) == 0.75 == float(exact_stability(e, toy))
    g1 = ext(toy, "1")
    assert delta_measure(g1, ident, toy) == 1
    assert stability_upper_bound(g1, ident, toy) == 0.5 == float(exact_stability(g1, toy))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_stability_below_bound(seed):
    ds = random_dataset(seed, max_objects=9)
    ident = identity_projection(ds)
    for e in concepts(ds):
        assert float(exact_stability(e, ds)) <= stability_upper_bound(e, ident, ds) + 1e-12


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_stability_matches_literal_count(seed):
    ds = random_dataset(seed, max_objects=8)
    for e in concepts(ds):
        assert exact_stability(e, ds) == literal_stability(e, ds)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(["round-robin", "per-attribute"]))
def test_delta_against_projected_lattice(seed, strategy):
    ds = random_dataset(seed, max_objects=8, max_attributes=3, max_values=4)
    for ps in chain(ds, build_schedule(ds, strategy)):
        cs = concepts(ds, allowed_values(ps, ds))
        expected = deltas(cs)
        for e, d in expected.items():
            assert delta_measure(e, ps, ds) == d
            assert 0 <= d <= support(e)
            nbrs = lower_neighbors(e, ps, ds)
            inside = [f for f in cs if f != e and f & e == f]
            maximal = {f for f in inside if not any(f != o and f & o == f for o in inside)}
            assert nbrs == (maximal or {0})
            assert (d == support(e)) == (nbrs == {0})
