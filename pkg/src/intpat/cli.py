"""Command line entry point: preprocess a table, mine patterns, report them.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 cap or capacity abort, 4 the run found no pattern, 5 engines disagree
in ``--compare`` mode.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .baseline import (
    DEFAULT_LATTICE_CAP,
    EnumerationConfig,
    LatticeCapExceeded,
    brute_force_lattice,
    enumerate_closed_patterns,
    postfilter,
)
from .core import DataError, Dataset
from .io import FORMATS, parse_input, serialize_patterns, table_to_dataset
from .measures import DEFAULT_ORACLE_CAP, OracleCapExceeded, exact_stability
from .preprocessing import drop_incomplete, simplify
from .projections import SCHEDULES
from .sofia import CapacityExceeded, PatternSet, best_delta_search, sofia_run

log = logging.getLogger("intpat")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CAP, EXIT_EMPTY, EXIT_MISMATCH = range(6)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input: str
    engine: str = "sofia"
    theta: int | None = None
    best: bool = False
    gamma: float | None = None
    schedule: str = "round-robin"
    min_support: int = 1
    output_format: str = "json"
    compare: bool = False
    threads: int = 1
    oracle_cap: int = DEFAULT_ORACLE_CAP
    lattice_cap: int = DEFAULT_LATTICE_CAP
    capacity: int | None = None
    max_patterns: int | None = None
    id_column: bool | None = None
    output: str | None = None
    seed: int | None = None

    def validate(self) -> None:
        if self.engine == "sofia" and not self.compare and (self.theta is None) == (not self.best):
            raise UsageError("the sofia engine needs exactly one of --theta or --best")
        if self.engine != "sofia" and self.theta is not None and self.best:
            raise UsageError("--theta and --best are mutually exclusive")
        if self.theta is not None and self.theta < 0:
            raise UsageError("--theta must be >= 0")
        if self.gamma is not None and not (0 < self.gamma < 1):
            raise UsageError("--gamma must lie in (0, 1)")
        if self.min_support < 1:
            raise UsageError("--min-support must be >= 1")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.schedule not in SCHEDULES:
            raise UsageError(f"unknown schedule {self.schedule!r}")
        if self.output_format not in FORMATS:
            raise UsageError(f"unknown format {self.output_format!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="intpat",
        description="Mine closed interval patterns with the best Delta-measure.",
    )
    p.add_argument("--input", "-i", required=True, help="CSV/semicolon table of numbers or lo..hi intervals")
    p.add_argument("--engine", choices=("sofia", "baseline", "oracle"), default="sofia")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--theta", type=int, help="keep patterns with Delta >= THETA")
    sel.add_argument("--best", action="store_true", help="find the largest THETA with a non-empty result")
    p.add_argument("--gamma", type=float, help="join values closer than GAMMA * largest gap")
    p.add_argument("--schedule", choices=SCHEDULES, default="round-robin")
    p.add_argument("--min-support", type=int, default=1, help="support threshold of the baseline")
    p.add_argument("--format", dest="output_format", choices=FORMATS, default="json")
    p.add_argument("--compare", action="store_true", help="run sofia --best and the postfiltered baseline")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP, help="largest extent for exact stability")
    p.add_argument("--lattice-cap", type=int, default=DEFAULT_LATTICE_CAP, help="largest dataset for the oracle engine")
    p.add_argument("--capacity", type=int, help="abort when a sofia pattern set exceeds this size")
    p.add_argument("--max-patterns", type=int, help="interrupt the baseline after this many patterns")
    ids = p.add_mutually_exclusive_group()
    ids.add_argument("--id-column", dest="id_column", action="store_true", default=None)
    ids.add_argument("--no-id-column", dest="id_column", action="store_false")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, help="recorded in the run header")
    p.add_argument("--verbose", "-v", action="store_true")
    return p


def load(cfg: RunConfig, timings: dict) -> tuple[Dataset, dict]:
    t = time.perf_counter()
    table = parse_input(cfg.input, cfg.id_column)
    timings["parse"] = time.perf_counter() - t
    t = time.perf_counter()
    table, cleaning = drop_incomplete(table)
    ds = table_to_dataset(table)
    info = {
        "dropped_columns": list(cleaning.dropped_columns),
        "dropped_rows": cleaning.dropped_rows,
    }
    if cfg.gamma is not None:
        ds, report = simplify(ds, cfg.gamma)
        info["sizes_after_gamma"] = {a.attribute: a.size_after for a in report.attributes}
    timings["preprocess"] = time.perf_counter() - t
    return ds, info


def _run_sofia(cfg: RunConfig, ds: Dataset, meta: dict) -> PatternSet:
    kw = dict(capacity=cfg.capacity, threads=cfg.threads)
    if cfg.best:
        theta, res = best_delta_search(ds, cfg.schedule, **kw)
        meta["theta_star"] = theta
    else:
        res = sofia_run(ds, cfg.theta, cfg.schedule, **kw)
        meta["theta"] = cfg.theta
    meta["chain_length"] = res.chain_length
    meta["patterns_per_step"] = [r.kept for r in res.trace]
    meta["peak_pattern_set"] = res.peak
    return res.patterns


def _select(pats: PatternSet, cfg: RunConfig, ds: Dataset, meta: dict) -> PatternSet:
    if cfg.best:
        scored = postfilter(pats, 0, ds)
        best = max((p.delta for p in scored), default=0)
        meta["theta_star"] = best
        return postfilter(scored, best, ds)
    meta["theta"] = cfg.theta or 0
    return postfilter(pats, cfg.theta or 0, ds)


def _run_baseline(cfg: RunConfig, ds: Dataset, meta: dict) -> PatternSet:
    res = enumerate_closed_patterns(ds, EnumerationConfig(cfg.min_support, cfg.max_patterns))
    meta.update(
        min_support=cfg.min_support,
        emitted=res.emitted,
        max_depth=res.max_depth,
        interrupted=res.interrupted,
    )
    return _select(res.patterns, cfg, ds, meta)


def _run_oracle(cfg: RunConfig, ds: Dataset, meta: dict) -> PatternSet:
    lattice = brute_force_lattice(ds, cfg.lattice_cap)
    meta["concepts"] = len(lattice)
    out = _select(lattice, cfg, ds, meta)
    stab = {}
    for p in out:
        if p.support <= cfg.oracle_cap:
            stab[" ".join(ds.ids(p.extent))] = str(exact_stability(p.extent, ds, cfg.oracle_cap))
    meta["stability"] = stab
    return out


def _run_compare(cfg: RunConfig, ds: Dataset, meta: dict) -> tuple[PatternSet, int]:
    t = time.perf_counter()
    theta, res = best_delta_search(ds, cfg.schedule, capacity=cfg.capacity, threads=cfg.threads)
    t_sofia = time.perf_counter() - t
    best = res.patterns
    min_support = min((p.support for p in best), default=ds.n_objects)
    t = time.perf_counter()
    base = enumerate_closed_patterns(ds, EnumerationConfig(min_support, cfg.max_patterns))
    filtered = postfilter(base.patterns, theta, ds)
    t_base = time.perf_counter() - t
    agree = None if base.interrupted else filtered.extents() == best.extents()
    meta.update(
        theta_star=theta,
        delta=theta,
        n_patterns=len(best),
        min_support=min_support,
        sofia_peak_pattern_set=res.peak,
        baseline_emitted=base.emitted,
        baseline_interrupted=base.interrupted,
        t_sofia=round(t_sofia, 4),
        t_baseline=round(t_base, 4),
        engines_agree=agree,
    )
    return best, EXIT_MISMATCH if agree is False else EXIT_OK


def run(cfg: RunConfig) -> int:
    cfg.validate()
    timings: dict[str, float] = {}
    ds, info = load(cfg, timings)
    engine = "compare" if cfg.compare else cfg.engine
    meta: dict = {
        "engine": engine,
        "input": str(cfg.input),
        "objects": ds.n_objects,
        "attributes": ds.n_attributes,
        "value_set_sizes": dict(zip(ds.attributes, ds.sizes)),
        "gamma": cfg.gamma,
        "schedule": cfg.schedule,
        **info,
    }
    if cfg.seed is not None:
        meta["seed"] = cfg.seed
    status = EXIT_OK
    t = time.perf_counter()
    if cfg.compare:
        pats, status = _run_compare(cfg, ds, meta)
    elif cfg.engine == "sofia":
        pats = _run_sofia(cfg, ds, meta)
    elif cfg.engine == "baseline":
        pats = _run_baseline(cfg, ds, meta)
    else:
        pats = _run_oracle(cfg, ds, meta)
    timings["mine"] = time.perf_counter() - t
    meta["wall_time"] = timings
    t = time.perf_counter()
    serialize_patterns(pats, ds, cfg.output_format, meta)
    timings["serialize"] = time.perf_counter() - t
    # rendered again so the header carries its own timing
    text = serialize_patterns(pats, ds, cfg.output_format, meta)
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if status == EXIT_OK and not len(pats):
        status = EXIT_EMPTY
    return status


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2, which is reserved for data errors here
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k != "verbose"})
    try:
        return run(cfg)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_DATA
    except (CapacityExceeded, LatticeCapExceeded, OracleCapExceeded) as exc:
        log.error("%s", exc)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
