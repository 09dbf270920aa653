"""Stochastic conversion spreading with irreversible dormancy.

Each step, in order: (1) dormancy draws strike eligible nodes with
probability tau, permanently; (2) the viable set is recomputed as infected
and not dormant; (3) every uninfected node with positive degree converts
with probability p * (viable neighbors) / degree, using the step-start
viable set (synchronous update). Degree-0 nodes never convert.

The simulation arena is the subgraph induced by the A-or-B labeled nodes;
A-labeled nodes start infected unless an explicit seed set is given.
"""

import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, ValidationError
from .graph import Graph, induced_subgraph
from .multiplex import ContagionLabeling
from .seeds import derive_seed

DORMANCY_MODES = ("infected_only", "all_nodes")


@dataclass(frozen=True)
class SimParams:
    steps: int
    dormancy_rate: float
    diffusion_scale: float
    dormancy_mode: str = "infected_only"
    rng_seed: int = 0

    def __post_init__(self):
        if self.steps < 1:
            raise ValidationError("steps must be >= 1")
        if not 0.0 <= self.dormancy_rate <= 1.0:
            raise ValidationError("dormancy_rate must be in [0, 1]")
        if not 0.0 <= self.diffusion_scale <= 1.0:
            raise ValidationError("diffusion_scale must be in [0, 1]")
        if self.dormancy_mode not in DORMANCY_MODES:
            raise ValidationError(f"dormancy_mode must be one of {DORMANCY_MODES}")

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "dormancy_rate": self.dormancy_rate,
            "diffusion_scale": self.diffusion_scale,
            "dormancy_mode": self.dormancy_mode,
            "rng_seed": self.rng_seed,
        }


@dataclass(frozen=True)
class SimState:
    infected: np.ndarray  # bool per node of the full graph
    dormant: np.ndarray

    @property
    def viable(self) -> np.ndarray:
        return self.infected & ~self.dormant


@dataclass(frozen=True)
class SimTrace:
    infected_count: np.ndarray  # length steps+1, index 0 = initial state
    final_state: SimState
    converts: int
    conversion_yield: float
    speed: int
    depth: int

    def summary(self) -> dict:
        return {
            "converts": self.converts,
            "yield": self.conversion_yield,
            "speed": self.speed,
            "depth": self.depth,
        }


# Arenas up to this size use a dense adjacency matrix for the neighbor
# counts; larger ones use a CSR segment sum. Both give identical values.
DENSE_LIMIT = 128


class _SimContext:
    """Arena shared by replicates: induced subgraph, degree tables, seeds."""

    def __init__(self, g: Graph, labels: ContagionLabeling, seeds=None):
        if labels.node_count != g.node_count:
            raise ValidationError("labeling size does not match graph")
        domain = labels.is_A | labels.is_B
        if seeds is None:
            init_full = labels.is_A.copy()
        else:
            init_full = np.zeros(g.node_count, dtype=bool)
            init_full[np.asarray(list(seeds), dtype=np.int64)] = True
            if not (init_full <= domain).all():
                raise ValidationError("seed nodes must be A- or B-labeled")
        if not init_full.any():
            raise DomainError("no seeds: initial infected set is empty")

        if domain.all():
            sub, originals = g, np.arange(g.node_count)
            init = init_full
        else:
            sub, originals = induced_subgraph(g, domain)
            init = init_full[originals]
        self.full_n = g.node_count
        self.originals = originals
        n = self.n = sub.node_count
        self.indices = sub.indices
        deg = sub.degree
        if n <= DENSE_LIMIT:
            self.dense = np.zeros((n, n))
            rows = np.repeat(np.arange(n), deg)
            self.dense[rows, sub.indices] = 1.0
        else:
            self.dense = None
            nz = deg > 0
            self.nz_rows = np.flatnonzero(nz)
            self.nz_starts = sub.indptr[:-1][nz]
        self.inv_deg = np.zeros(n)
        np.divide(1.0, deg, out=self.inv_deg, where=deg > 0)
        self.init = init
        # Candidates: arena members not initially infected.
        self.candidates = int(n - init.sum())

    def _viable_neighbor_counts(self, viable: np.ndarray) -> np.ndarray:
        vf = viable.astype(np.float64)
        if self.dense is not None:
            return self.dense @ vf
        out = np.zeros(self.n)
        if self.nz_rows.size:
            out[self.nz_rows] = np.add.reduceat(vf[self.indices], self.nz_starts)
        return out

    def run(self, params: SimParams) -> SimTrace:
        rng = np.random.default_rng(params.rng_seed)
        tau, p, steps = params.dormancy_rate, params.diffusion_scale, params.steps
        all_eligible = params.dormancy_mode == "all_nodes"
        n = self.n

        infected = self.init.copy()
        dormant = np.zeros(n, dtype=bool)
        counts = np.empty(steps + 1, dtype=np.int64)
        n_infected = int(infected.sum())
        counts[0] = n_infected

        t = 0
        while t < steps:
            t += 1
            if tau > 0.0:
                eligible = ~dormant if all_eligible else (infected & ~dormant)
                dormant |= eligible & (rng.random(n) < tau)
                viable = infected & ~dormant
            else:
                viable = infected
            can_infect = n_infected < n and viable.any()
            if can_infect:
                prob = (p * self._viable_neighbor_counts(viable)) * self.inv_deg
                fresh = (rng.random(n) < prob) & ~infected
                k = int(fresh.sum())
                if k:
                    infected |= fresh
                    n_infected += k
            counts[t] = n_infected
            # Freeze: stop early (and pad the trace) once neither infection
            # nor a further dormancy draw can change any state.
            if tau > 0.0:
                viable = infected & ~dormant
                can_dorm = (~dormant).any() if all_eligible else viable.any()
                if not can_dorm and not (n_infected < n and viable.any()):
                    break
            elif n_infected == n:
                break
        if t < steps:
            counts[t + 1:] = counts[t]

        return self._finish(params, infected, dormant, counts)

    def _finish(self, params, infected, dormant, counts) -> SimTrace:
        converts = int(counts[-1] - counts[0])
        conv_yield = converts / self.candidates if self.candidates else 0.0
        gained = counts - counts[0]
        speed = int(np.argmax(gained >= 0.5 * converts))
        full_inf = np.zeros(self.full_n, dtype=bool)
        full_dorm = np.zeros(self.full_n, dtype=bool)
        full_inf[self.originals] = infected
        full_dorm[self.originals] = dormant
        return SimTrace(
            infected_count=counts,
            final_state=SimState(infected=full_inf, dormant=full_dorm),
            converts=converts,
            conversion_yield=conv_yield,
            speed=speed,
            depth=converts,
        )


def simulate(g: Graph, labels: ContagionLabeling, params: SimParams, seeds=None) -> SimTrace:
    """Run one diffusion realization; deterministic given params.rng_seed."""
    return _SimContext(g, labels, seeds=seeds).run(params)


def run_replicates(g: Graph, labels: ContagionLabeling, params: SimParams,
                   replicates: int, seeds=None) -> list:
    """Independent replicates; replicate r is seeded by derive_seed(master, r).

    Results do not depend on execution order, and extending the replicate
    count never perturbs earlier replicates.
    """
    if replicates < 1:
        raise ValidationError("replicates must be >= 1")
    ctx = _SimContext(g, labels, seeds=seeds)
    traces = []
    for r in range(replicates):
        sub_seed = derive_seed(params.rng_seed, "replicate", r)
        traces.append(ctx.run(replace(params, rng_seed=sub_seed)))
    return traces


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def write_trace_csv(path, trace: SimTrace):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("t,infected_count\n")
        for t, c in enumerate(trace.infected_count):
            fh.write(f"{t},{c}\n")


def write_summary_json(path, traces: list, params: SimParams, master_seed: int):
    yields = np.array([tr.conversion_yield for tr in traces])
    payload = {
        "params": params.to_dict(),
        "seed": master_seed,
        "replicate_count": len(traces),
        "aggregate": {
            "mean_yield": float(yields.mean()),
            "yield_stddev": float(yields.std(ddof=1)) if len(traces) > 1 else 0.0,
            "mean_converts": float(np.mean([tr.converts for tr in traces])),
        },
        "replicates": [tr.summary() for tr in traces],
    }
    if len(traces) == 1:
        payload.update(traces[0].summary())
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def write_replicates_csv(path, traces: list):
    """Per-replicate outcome table consumed by the figure tooling."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("replicate,converts,yield,speed,depth\n")
        for r, tr in enumerate(traces):
            fh.write(f"{r},{tr.converts},{tr.conversion_yield!r},{tr.speed},{tr.depth}\n")
