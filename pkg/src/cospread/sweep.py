"""Monte Carlo harness: conversion yield versus multiplex topology features.

For each generator spec, the harness generates the network, measures the
frontier overlaps, component count, and density of the realized graph, then
runs a batch of diffusion replicates and records the yield distribution.
Rank correlations over the resulting table summarize how yield co-varies
with each topology feature.
"""

import json
from dataclasses import dataclass, replace

import numpy as np
from scipy import stats

from .diffusion import SimParams, run_replicates
from .errors import DomainError
from .generators import GeneratorSpec, generate
from .graph import connected_components, density
from .multiplex import frontier
from .seeds import derive_seed

COVARIATES = ("overlap_with_A", "overlap_with_B", "component_count", "density")


@dataclass(frozen=True)
class SweepRecord:
    spec_id: str
    overlap_with_A: float
    overlap_with_B: float
    component_count: int
    density: float
    mean_yield: float
    yield_stddev: float


def run_one(spec: GeneratorSpec, params: SimParams, replicates: int) -> SweepRecord:
    """Generate, measure, simulate one spec; seeded by (master, spec id)."""
    g, labels = generate(spec)
    report = frontier(g, labels)
    count, _ = connected_components(g)
    dens = density(g)
    sub_seed = derive_seed(params.rng_seed, "sweep", spec.identity())
    traces = run_replicates(g, labels, replace(params, rng_seed=sub_seed), replicates)
    yields = np.array([tr.conversion_yield for tr in traces])
    return SweepRecord(
        spec_id=spec.identity(),
        overlap_with_A=report.overlap_with_A,
        overlap_with_B=report.overlap_with_B,
        component_count=count,
        density=dens,
        mean_yield=float(yields.mean()),
        yield_stddev=float(yields.std(ddof=1)) if replicates > 1 else 0.0,
    )


def run_sweep(specs, params: SimParams, replicates: int, pool=None) -> list:
    """One SweepRecord per spec. Per-spec seeds derive from the spec id, so
    records do not depend on spec ordering; ``pool`` may be an Executor."""
    if pool is None:
        return [run_one(spec, params, replicates) for spec in specs]
    futures = [pool.submit(run_one, spec, params, replicates) for spec in specs]
    return [f.result() for f in futures]


def spearman(x, y) -> float:
    """Rank correlation with average-rank tie handling."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DomainError("spearman requires two equal-length 1-d series")
    if x.size < 3:
        raise DomainError("spearman requires at least 3 observations")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DomainError("spearman is undefined for a constant series")
    rho = stats.spearmanr(x, y).statistic
    return float(rho)


def correlations(records) -> dict:
    """Spearman of mean yield against each covariate column.

    Covariates that are constant over the ensemble (or ensembles too small
    to rank) have no defined correlation and are reported as None.
    """
    yields = [r.mean_yield for r in records]
    out = {}
    for name in COVARIATES:
        try:
            out[name] = spearman([getattr(r, name) for r in records], yields)
        except DomainError:
            out[name] = None
    return out


def write_sweep_csv(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("spec_id,overlap_with_A,overlap_with_B,component_count,"
                 "density,mean_yield,yield_stddev\n")
        for r in records:
            fh.write(f"{r.spec_id},{r.overlap_with_A!r},{r.overlap_with_B!r},"
                     f"{r.component_count},{r.density!r},{r.mean_yield!r},"
                     f"{r.yield_stddev!r}\n")


def write_correlations_json(path, corr: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(corr, fh, indent=2)
        fh.write("\n")
