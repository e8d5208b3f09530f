"""Mining closed interval patterns whose Delta-measure passes a threshold.

The main entry points are :func:`sofia_run` and :func:`best_delta_search`;
:func:`enumerate_closed_patterns` with :func:`postfilter` is the
enumerate-then-filter competitor.
"""

from .baseline import EnumerationConfig, brute_force_lattice, enumerate_closed_patterns, postfilter
from .core import DataError, Dataset, Interval, build_dataset, close_extent, extent_of, intent_of, meet
from .io import load_dataset, serialize_patterns
from .measures import delta_measure, exact_stability, stability_upper_bound
from .preprocessing import drop_incomplete, simplify
from .projections import build_schedule, chain, identity_projection, initial_projection
from .sofia import MinedPattern, PatternSet, SofiaResult, best_delta_search, sofia_run

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "Dataset",
    "EnumerationConfig",
    "Interval",
    "MinedPattern",
    "PatternSet",
    "SofiaResult",
    "best_delta_search",
    "brute_force_lattice",
    "build_dataset",
    "build_schedule",
    "chain",
    "close_extent",
    "delta_measure",
    "drop_incomplete",
    "enumerate_closed_patterns",
    "exact_stability",
    "extent_of",
    "identity_projection",
    "initial_projection",
    "intent_of",
    "load_dataset",
    "meet",
    "postfilter",
    "serialize_patterns",
    "simplify",
    "sofia_run",
    "stability_upper_bound",
]
