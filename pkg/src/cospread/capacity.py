"""Closed-form carrying-capacity model for broadcaster audiences.

An audience is a fully connected follower group of size n with m existing
converts. Conversion spreads at rate p per active spreader per step while
each active spreader goes dormant at rate tau. For p >= tau activity is
self-sustaining and the whole audience converts; for p < tau the expected
cumulative conversion follows the geometric series p*m / (tau - p), capped
by the audience size.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


class Saturation:
    """Marker for the self-sustaining regime (unbounded expected growth)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FULL"


FULL = Saturation()


@dataclass(frozen=True)
class AudienceModel:
    broadcasters: tuple  # of (n_i, m_i) pairs
    p: float
    tau: float

    def __post_init__(self):
        object.__setattr__(
            self, "broadcasters", tuple((int(n), int(m)) for n, m in self.broadcasters)
        )
        if not 0.0 <= self.p <= 1.0 or not 0.0 <= self.tau <= 1.0:
            raise ValidationError("p and tau must be in [0, 1]")
        for n, m in self.broadcasters:
            if m < 0 or n < 0 or m > n:
                raise ValidationError(f"audience requires 0 <= m <= n, got n={n} m={m}")

    @property
    def k(self) -> int:
        return len(self.broadcasters)

    @classmethod
    def from_dict(cls, raw: dict) -> "AudienceModel":
        pairs = tuple((b["n"], b["m"]) for b in raw["broadcasters"])
        model = cls(broadcasters=pairs, p=float(raw["p"]), tau=float(raw["tau"]))
        if "k" in raw and int(raw["k"]) != model.k:
            raise ValidationError("k does not match broadcaster list length")
        return model


def branching_capacity(p: float, tau: float, m: float):
    """Expected cumulative converts from m initial spreaders, or FULL."""
    if m < 0:
        raise ValidationError("m must be >= 0")
    if p >= tau:
        return FULL
    return p * m / (tau - p)


def audience_capacity(n: float, m: float, p: float, tau: float) -> float:
    """min(n, branching capacity); FULL clamps to the audience size."""
    if m > n:
        raise ValidationError(f"initial converts m={m} exceed audience size n={n}")
    cap = branching_capacity(p, tau, m)
    if cap is FULL:
        return float(n)
    return float(min(n, cap))


def capacities(model: AudienceModel) -> np.ndarray:
    return np.array([
        audience_capacity(n, m, model.p, model.tau) for n, m in model.broadcasters
    ])


def expected_yield_connected(i: int, model: AudienceModel) -> float:
    """Expected total conversion seeding broadcaster i when all broadcasters
    are weakly connected: own capacity plus p times every other capacity."""
    if not 0 <= i < model.k:
        raise ValidationError(f"broadcaster index {i} out of range for k={model.k}")
    caps = capacities(model)
    return float(caps[i] + model.p * (caps.sum() - caps[i]))


def select_broadcaster(model: AudienceModel, regime: str = "disconnected") -> int:
    """Index of the best seed broadcaster; argmax capacity in both regimes.

    In the connected regime the expected yield is (1-p)*V_i + p*sum(V), so
    for p < 1 the ranking reduces to capacity order anyway. Ties break to
    the lowest index.
    """
    if regime not in ("disconnected", "connected"):
        raise ValidationError(f"unknown regime {regime!r}")
    if model.k < 1:
        raise ValidationError("model has no broadcasters")
    return int(np.argmax(capacities(model)))


def branching_oracle(p: float, tau: float, m: int, runs: int, rng_seed: int = 0) -> float:
    """Monte Carlo mean of total converts in the uncapped spreading process.

    Each active individual independently spawns one new convert with
    probability p and dies with probability tau at every step it is active;
    new converts become active. The total is accumulated generation by
    generation: an individual's number of active steps is Geometric(tau)
    and its spawn count Binomial(steps, p), which reproduces the per-step
    process exactly because the cumulative total does not depend on timing.
    """
    if runs < 1:
        raise ValidationError("runs must be >= 1")
    if not 0.0 <= p <= 1.0 or not 0.0 < tau <= 1.0:
        raise ValidationError("requires p in [0,1] and tau in (0,1]")
    if p >= tau:
        raise ValidationError("oracle requires the subcritical regime p < tau")
    if m < 0:
        raise ValidationError("m must be >= 0")

    rng = np.random.default_rng(rng_seed)
    totals = np.zeros(runs, dtype=np.int64)
    if m == 0 or p == 0.0:
        return 0.0
    active = np.full(runs, m, dtype=np.int64)
    alive = np.arange(runs)
    while alive.size:
        gen = active[alive]
        # Sum of gen iid Geometric(tau) lifetimes (support >= 1).
        lifetime = gen + rng.negative_binomial(gen, tau) if tau < 1.0 else gen
        births = rng.binomial(lifetime, p)
        totals[alive] += births
        active[alive] = births
        alive = alive[births > 0]
    return float(totals.mean())
