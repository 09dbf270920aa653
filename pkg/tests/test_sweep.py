import numpy as np
import pytest

from cospread import DomainError, SimParams, spearman
from cospread.generators import GeneratorSpec
from cospread.sweep import correlations, run_sweep


# Brute-force rank correlation: average ranks by sorting, then the plain
# Pearson formula on the rank vectors.
def brute_spearman(x, y):
    def ranks(v):
        v = np.asarray(v, dtype=float)
        order = np.argsort(v, kind="stable")
        r = np.empty(v.size)
        i = 0
        pos = 1.0
        sorted_v = v[order]
        while i < v.size:
            j = i
            while j + 1 < v.size and sorted_v[j + 1] == sorted_v[i]:
                j += 1
            r[order[i:j + 1]] = (pos + pos + (j - i)) / 2.0
            pos += j - i + 1
            i = j + 1
        return r

    rx, ry = ranks(x), ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    return float((rx * ry).sum() / np.sqrt((rx ** 2).sum() * (ry ** 2).sum()))


def test_spearman_examples():
    assert spearman([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert spearman([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
    assert spearman([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8)


def test_spearman_against_brute_force():
    rng = np.random.default_rng(17)
    for _ in range(50):
        n = int(rng.integers(3, 40))
        x = rng.integers(0, 6, size=n).astype(float)  # plenty of ties
        y = rng.normal(size=n)
        if np.all(x == x[0]):
            continue
        assert spearman(x, y) == pytest.approx(brute_spearman(x, y), abs=1e-12)


def test_spearman_domain_errors():
    with pytest.raises(DomainError):
        spearman([1, 2], [1, 2])
    with pytest.raises(DomainError):
        spearman([1, 2, 3], [1, 2])
    with pytest.raises(DomainError):
        spearman([1, 1, 1], [1, 2, 3])


def _small_params(seed=55, steps=100):
    return SimParams(steps=steps, dormancy_rate=0.005, diffusion_scale=0.01,
                     rng_seed=seed)


def _niche_spec(seed, spec_id, satellites=4, detached=0, bridges=1):
    return GeneratorSpec(kind="fragmented_frontier", rng_seed=seed,
                         spec_id=spec_id, a_size=40, satellites=satellites,
                         satellite_size=10, satellite_density=0.3,
                         bridges=bridges, satellite_seed_fraction=0.2,
                         detached_satellites=detached)


def test_identical_specs_identical_records():
    spec = _niche_spec(5, "same")
    records = run_sweep([spec, spec], _small_params(), replicates=5)
    assert records[0] == records[1]


def test_records_independent_of_ordering():
    specs = [_niche_spec(i, f"s{i}", satellites=3 + i) for i in range(4)]
    fwd = {r.spec_id: r for r in run_sweep(specs, _small_params(), replicates=4)}
    rev = {r.spec_id: r for r in run_sweep(specs[::-1], _small_params(), replicates=4)}
    assert fwd == rev


def test_component_count_tracks_detached_satellites():
    # all satellites detached: component count is satellites + 1 by construction
    specs = [_niche_spec(7, f"k{k}", satellites=k, detached=k, bridges=0)
             for k in range(1, 8)]
    records = run_sweep(specs, _small_params(), replicates=2)
    assert [r.component_count for r in records] == [k + 1 for k in range(1, 8)]


def test_mean_yield_grows_with_horizon():
    # p > tau on a connected single-component spec: longer horizons convert more
    spec = GeneratorSpec(kind="fragmented_frontier", rng_seed=23, a_size=50,
                         satellites=5, satellite_size=10, satellite_density=0.3,
                         bridges=2, satellite_seed_fraction=0.2)
    means, sems = [], []
    for steps in (100, 400, 1600):
        recs = run_sweep([spec], _small_params(seed=77, steps=steps), replicates=100)
        means.append(recs[0].mean_yield)
        sems.append(recs[0].yield_stddev / 10.0)
    assert means[1] >= means[0] - (sems[0] + sems[1])
    assert means[2] >= means[1] - (sems[1] + sems[2])


def test_correlations_have_all_covariates():
    specs = [_niche_spec(i, f"c{i}", satellites=2 + i, detached=i % 3) for i in range(5)]
    records = run_sweep(specs, _small_params(), replicates=3)
    corr = correlations(records)
    assert set(corr) == {"overlap_with_A", "overlap_with_B",
                         "component_count", "density"}
    for v in corr.values():
        assert v is None or -1.0 <= v <= 1.0


def test_correlations_constant_covariate_is_null():
    specs = [_niche_spec(i, f"flat{i}") for i in range(3)]  # all one component
    records = run_sweep(specs, _small_params(), replicates=2)
    assert correlations(records)["component_count"] is None
