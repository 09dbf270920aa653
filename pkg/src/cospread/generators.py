"""Synthetic multiplex network generators.

The empirical co-hashtag networks behind the topology families are not
shippable, so these generators reproduce their qualitative structure:

* ``dense_frontier`` -- two stochastic blocks (an A community and a denser B
  community) joined through a wide, shallow interface: most B nodes touch A,
  but only a small "ambassador" subset of A carries cross edges.
* ``fragmented_frontier`` -- one A block plus many small satellite B
  clusters, each either bridged to A by a fixed number of edges or detached
  and seeded internally with pre-converted members.
* ``broadcaster_star`` -- weakly linked broadcasters, each owning a fully
  connected audience clique with a configurable number of initial converts.
* ``erdos_renyi`` / ``barabasi_albert`` -- baselines labeled A on a uniform
  random fraction.

Every block is connected by construction (random spanning tree plus extra
Bernoulli edges), so component counts follow from the spec alone. All
randomness comes from ``numpy.random.default_rng`` (PCG64) seeded with the
spec's ``rng_seed``: identical spec + seed gives a bit-identical edge list.
"""

import hashlib
from dataclasses import dataclass, fields

import numpy as np

from .errors import ValidationError
from .graph import Graph, build_graph
from .multiplex import ContagionLabeling
from .seeds import derive_seed

KINDS = (
    "dense_frontier",
    "fragmented_frontier",
    "broadcaster_star",
    "erdos_renyi",
    "barabasi_albert",
)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    rng_seed: int
    spec_id: str = ""
    # dense_frontier
    a_size: int = 500
    b_size: int = 500
    a_density: float = 0.02
    b_density: float = 0.02
    inter_density: float = 0.01
    a_frontier_fraction: float = 1.0
    b_frontier_fraction: float = 1.0
    overlap_fraction: float = 0.0
    # fragmented_frontier (also uses a_size, a_density)
    satellites: int = 10
    satellite_size: int = 20
    satellite_density: float = 0.25
    bridges: int = 1
    satellite_seed_fraction: float = 0.0
    detached_satellites: int = 0
    clustered_seeds: bool = True
    satellite_style: str = "er"  # er | clique_chain
    chain_width: int = 7
    chain_overlap: int = 3
    # broadcaster_star
    audience_sizes: tuple = ()
    audience_seeds: tuple = ()
    weak_link_mode: str = "ring"  # ring | random
    weak_link_count: int = 0
    # baselines
    n: int = 1000
    edge_prob: float = 0.01
    attach: int = 2
    seed_fraction: float = 0.1

    def validate(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown generator kind {self.kind!r}")
        probs = {
            "a_density": self.a_density,
            "b_density": self.b_density,
            "inter_density": self.inter_density,
            "a_frontier_fraction": self.a_frontier_fraction,
            "b_frontier_fraction": self.b_frontier_fraction,
            "overlap_fraction": self.overlap_fraction,
            "satellite_density": self.satellite_density,
            "satellite_seed_fraction": self.satellite_seed_fraction,
            "edge_prob": self.edge_prob,
            "seed_fraction": self.seed_fraction,
        }
        for name, value in probs.items():
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name}={value} outside [0, 1]")
        sizes = {
            "a_size": self.a_size,
            "b_size": self.b_size,
            "satellites": self.satellites,
            "satellite_size": self.satellite_size,
            "n": self.n,
        }
        for name, value in sizes.items():
            if value < 1:
                raise ValidationError(f"{name}={value} must be >= 1")
        if self.bridges < 0 or self.weak_link_count < 0 or self.attach < 1:
            raise ValidationError("bridges/weak_link_count/attach out of range")
        if not 0 <= self.detached_satellites <= self.satellites:
            raise ValidationError("detached_satellites outside [0, satellites]")
        if self.satellite_style not in ("er", "clique_chain"):
            raise ValidationError(f"unknown satellite_style {self.satellite_style!r}")
        if self.satellite_style == "clique_chain":
            if self.chain_width < 2 or not 1 <= self.chain_overlap < self.chain_width:
                raise ValidationError("clique_chain needs width >= 2 and 1 <= overlap < width")
        if self.kind == "broadcaster_star":
            if not self.audience_sizes:
                raise ValidationError("broadcaster_star requires audience_sizes")
            if len(self.audience_seeds) != len(self.audience_sizes):
                raise ValidationError("audience_seeds must match audience_sizes")
            for n_i, m_i in zip(self.audience_sizes, self.audience_seeds):
                if n_i < 1:
                    raise ValidationError("audience sizes must be >= 1")
                if not 0 <= m_i <= n_i:
                    raise ValidationError(
                        f"audience seeds {m_i} exceed audience size {n_i}"
                    )
            if self.weak_link_mode not in ("ring", "random"):
                raise ValidationError(f"unknown weak_link_mode {self.weak_link_mode!r}")

    def identity(self) -> str:
        """Stable spec id: explicit spec_id or a digest of the contents."""
        if self.spec_id:
            return self.spec_id
        payload = "|".join(
            f"{f.name}={getattr(self, f.name)!r}" for f in fields(self) if f.name != "spec_id"
        )
        return self.kind + "-" + hashlib.sha256(payload.encode()).hexdigest()[:10]

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, raw: dict) -> "GeneratorSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValidationError(f"unknown generator fields {sorted(unknown)}")
        clean = dict(raw)
        for key in ("audience_sizes", "audience_seeds"):
            if key in clean:
                clean[key] = tuple(clean[key])
        return cls(**clean)


# ---------------------------------------------------------------------------
# Edge sampling helpers
# ---------------------------------------------------------------------------

def _bernoulli_indices(rng, m: int, p: float) -> np.ndarray:
    """Sorted indices of a Bernoulli(p) subset of range(m)."""
    if m == 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(m, dtype=np.int64)
    k = int(rng.binomial(m, p))
    if k == 0:
        return np.empty(0, dtype=np.int64)
    return np.sort(rng.choice(m, size=k, replace=False)).astype(np.int64)


def _pair_edges(rng, nodes: np.ndarray, p: float) -> np.ndarray:
    """Bernoulli(p) sample of the unordered pairs of ``nodes``."""
    n = len(nodes)
    idx = _bernoulli_indices(rng, n * (n - 1) // 2, p)
    if idx.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    counts = np.arange(n - 1, 0, -1, dtype=np.int64)
    row_starts = np.concatenate([[0], np.cumsum(counts[:-1])])
    i = np.searchsorted(row_starts, idx, side="right") - 1
    j = idx - row_starts[i] + i + 1
    return np.column_stack([nodes[i], nodes[j]])


def _cross_edges(rng, left: np.ndarray, right: np.ndarray, p: float) -> np.ndarray:
    """Bernoulli(p) sample of the left x right bipartite pairs."""
    idx = _bernoulli_indices(rng, len(left) * len(right), p)
    if idx.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    return np.column_stack([left[idx // len(right)], right[idx % len(right)]])


def _tree_edges(rng, nodes: np.ndarray) -> np.ndarray:
    """Random recursive spanning tree over ``nodes``."""
    n = len(nodes)
    if n <= 1:
        return np.empty((0, 2), dtype=np.int64)
    perm = rng.permutation(nodes)
    parent_pos = rng.integers(0, np.arange(1, n))
    return np.column_stack([perm[1:], perm[parent_pos]])


def _connected_block(rng, nodes: np.ndarray, p: float) -> list:
    """Connected block: spanning tree plus extra Bernoulli(p) pair edges."""
    return [_tree_edges(rng, nodes), _pair_edges(rng, nodes, p)]


def _clique_edges(nodes: np.ndarray) -> np.ndarray:
    n = len(nodes)
    if n < 2:
        return np.empty((0, 2), dtype=np.int64)
    i, j = np.triu_indices(n, k=1)
    return np.column_stack([nodes[i], nodes[j]])


def _chain_block(nodes: np.ndarray, width: int, overlap: int) -> list:
    """Chain of cliques of ``width`` sharing ``overlap`` members between
    consecutive links; the last link absorbs any remainder."""
    step = width - overlap
    chunks = []
    start = 0
    while start + width < len(nodes):
        chunks.append(_clique_edges(nodes[start:start + width]))
        start += step
    chunks.append(_clique_edges(nodes[start:]))
    return chunks


def _bfs_ball(rng, members: np.ndarray, edges: np.ndarray, count: int) -> np.ndarray:
    """First ``count`` nodes of a randomized BFS from a random member."""
    adj: dict = {int(v): [] for v in members}
    for a, b in edges:
        adj[int(a)].append(int(b))
        adj[int(b)].append(int(a))
    start = int(rng.choice(members))
    seen = {start}
    queue = [start]
    head = 0
    while head < len(queue) and len(queue) < count:
        u = queue[head]
        head += 1
        nbrs = adj[u]
        for v in rng.permutation(len(nbrs)):
            w = nbrs[int(v)]
            if w not in seen:
                seen.add(w)
                queue.append(w)
                if len(queue) >= count:
                    break
    return np.asarray(queue[:count], dtype=np.int64)


# ---------------------------------------------------------------------------
# Generator kinds
# ---------------------------------------------------------------------------

def generate(spec: GeneratorSpec):
    """Generate (Graph, ContagionLabeling) for the given spec; deterministic."""
    spec.validate()
    rng = np.random.default_rng(spec.rng_seed)
    builder = {
        "dense_frontier": _gen_dense_frontier,
        "fragmented_frontier": _gen_fragmented_frontier,
        "broadcaster_star": _gen_broadcaster_star,
        "erdos_renyi": _gen_erdos_renyi,
        "barabasi_albert": _gen_barabasi_albert,
    }[spec.kind]
    edges, is_a, is_b = builder(spec, rng)
    g = build_graph(edges, directed=False, node_count=is_a.size)
    return g, ContagionLabeling(is_A=is_a, is_B=is_b)


def _gen_dense_frontier(spec, rng):
    a_nodes = np.arange(spec.a_size, dtype=np.int64)
    b_nodes = np.arange(spec.a_size, spec.a_size + spec.b_size, dtype=np.int64)
    chunks = _connected_block(rng, a_nodes, spec.a_density)
    chunks += _connected_block(rng, b_nodes, spec.b_density)
    # Cross edges touch only the eligible "ambassador" subsets of each side.
    n_ea = max(1, int(round(spec.a_frontier_fraction * spec.a_size)))
    n_eb = max(1, int(round(spec.b_frontier_fraction * spec.b_size)))
    eligible_a = rng.permutation(a_nodes)[:n_ea]
    eligible_b = rng.permutation(b_nodes)[:n_eb]
    chunks.append(_cross_edges(rng, eligible_a, eligible_b, spec.inter_density))

    n = spec.a_size + spec.b_size
    is_a = np.zeros(n, dtype=bool)
    is_b = np.zeros(n, dtype=bool)
    is_a[a_nodes] = True
    is_b[b_nodes] = True
    n_overlap = int(round(spec.overlap_fraction * spec.b_size))
    if n_overlap:
        is_a[rng.permutation(b_nodes)[:n_overlap]] = True
    return np.concatenate(chunks), is_a, is_b


def _gen_fragmented_frontier(spec, rng):
    a_nodes = np.arange(spec.a_size, dtype=np.int64)
    chunks = _connected_block(rng, a_nodes, spec.a_density)
    n = spec.a_size + spec.satellites * spec.satellite_size
    is_a = np.zeros(n, dtype=bool)
    is_b = np.zeros(n, dtype=bool)
    is_a[a_nodes] = True

    seeds_per_sat = int(round(spec.satellite_seed_fraction * spec.satellite_size))
    chained = spec.satellite_style == "clique_chain"
    start = spec.a_size
    for sat in range(spec.satellites):
        members = np.arange(start, start + spec.satellite_size, dtype=np.int64)
        start += spec.satellite_size
        is_b[members] = True
        if chained:
            block = _chain_block(members, spec.chain_width, spec.chain_overlap)
        else:
            block = _connected_block(rng, members, spec.satellite_density)
        chunks += block
        detached = sat < spec.detached_satellites
        if not detached and spec.bridges:
            ends_b = rng.choice(members, size=min(spec.bridges, members.size), replace=False)
            ends_a = rng.choice(a_nodes, size=ends_b.size, replace=False)
            chunks.append(np.column_stack([ends_a, ends_b]))
        if seeds_per_sat:
            if chained:
                # Consecutive run in chain order: converts sit in one link.
                lo = int(rng.integers(0, members.size - seeds_per_sat + 1))
                seeded = members[lo:lo + seeds_per_sat]
            elif spec.clustered_seeds:
                seeded = _bfs_ball(rng, members, np.concatenate(block), seeds_per_sat)
            else:
                seeded = rng.choice(members, size=seeds_per_sat, replace=False)
            is_a[seeded] = True
    return np.concatenate(chunks), is_a, is_b


def _gen_broadcaster_star(spec, rng):
    k = len(spec.audience_sizes)
    total = k + int(sum(spec.audience_sizes))
    is_a = np.zeros(total, dtype=bool)
    is_b = np.ones(total, dtype=bool)
    broadcasters = np.arange(k, dtype=np.int64)

    chunks = []
    if k >= 2:
        if spec.weak_link_mode == "ring":
            chunks.append(np.column_stack([broadcasters, np.roll(broadcasters, -1)]))
        else:
            count = spec.weak_link_count or k
            chunks.append(_tree_edges(rng, broadcasters))
            idx = rng.integers(0, k, size=(count, 2))
            chunks.append(idx.astype(np.int64))

    start = k
    for i, (n_i, m_i) in enumerate(zip(spec.audience_sizes, spec.audience_seeds)):
        members = np.arange(start, start + n_i, dtype=np.int64)
        start += n_i
        chunks.append(_clique_edges(members))
        chunks.append(np.column_stack([np.full(n_i, i, dtype=np.int64), members]))
        if m_i:
            is_a[rng.choice(members, size=int(m_i), replace=False)] = True
    return np.concatenate(chunks), is_a, is_b


def _gen_erdos_renyi(spec, rng):
    nodes = np.arange(spec.n, dtype=np.int64)
    edges = _pair_edges(rng, nodes, spec.edge_prob)
    is_a = np.zeros(spec.n, dtype=bool)
    is_b = np.ones(spec.n, dtype=bool)
    n_seed = int(round(spec.seed_fraction * spec.n))
    if n_seed:
        is_a[rng.choice(nodes, size=n_seed, replace=False)] = True
    return edges, is_a, is_b


def _gen_barabasi_albert(spec, rng):
    m, n = spec.attach, spec.n
    if n <= m:
        raise ValidationError("barabasi_albert requires n > attach")
    edges = []
    repeated: list = []
    targets = list(range(m))
    for v in range(m, n):
        for t in targets:
            edges.append((v, t))
        repeated.extend(targets)
        repeated.extend([v] * m)
        chosen: set = set()
        while len(chosen) < m:
            chosen.add(repeated[int(rng.integers(0, len(repeated)))])
        targets = sorted(chosen)
    is_a = np.zeros(n, dtype=bool)
    is_b = np.ones(n, dtype=bool)
    n_seed = int(round(spec.seed_fraction * n))
    if n_seed:
        is_a[rng.choice(n, size=n_seed, replace=False)] = True
    return np.asarray(edges, dtype=np.int64), is_a, is_b


# ---------------------------------------------------------------------------
# Reference ensembles
# ---------------------------------------------------------------------------

def mixed_ensemble(master_seed: int, count: int = 100) -> list:
    """Mixed ensemble contrasting niche-style and dense-interface topologies.

    Half the specs are fragmented multiplex networks (small satellite
    communities, internal pre-converts, varying detachment); half are dense
    two-block networks whose B side is mostly interface. The four covariates
    (frontier overlaps, component count, density) all vary across the mix.
    """
    rng = np.random.default_rng(derive_seed(master_seed, "mixed-ensemble"))
    specs = []
    for k in range(count):
        seed = derive_seed(master_seed, "mixed-ensemble-spec", k)
        if k % 2 == 0:
            satellites = int(rng.integers(10, 21))
            overlap = int(rng.integers(3, 5))
            links = int(rng.integers(3, 7))
            size = 7 + (7 - overlap) * (links - 1)
            specs.append(GeneratorSpec(
                kind="fragmented_frontier",
                rng_seed=seed,
                spec_id=f"niche-{k:03d}",
                a_size=int(rng.integers(100, 180)),
                a_density=float(rng.uniform(0.03, 0.06)),
                satellites=satellites,
                satellite_size=size,
                satellite_style="clique_chain",
                chain_width=7,
                chain_overlap=overlap,
                bridges=int(rng.integers(2, 5)),
                satellite_seed_fraction=float(rng.integers(4, 6)) / size,
                detached_satellites=int(rng.integers(0, int(0.4 * satellites) + 1)),
            ))
        else:
            a_size = int(rng.integers(120, 200))
            frontier_frac = float(rng.uniform(0.04, 0.10))
            contacts = float(rng.uniform(1.8, 2.6))
            ambassadors = max(1, int(round(frontier_frac * a_size)))
            specs.append(GeneratorSpec(
                kind="dense_frontier",
                rng_seed=seed,
                spec_id=f"dense-{k:03d}",
                a_size=a_size,
                b_size=int(rng.integers(450, 650)),
                a_density=float(rng.uniform(0.03, 0.06)),
                b_density=float(rng.uniform(0.13, 0.18)),
                inter_density=min(1.0, contacts / ambassadors),
                a_frontier_fraction=frontier_frac,
            ))
    return specs


def community_ensemble(master_seed: int, sizes=(6000, 8000, 10000)) -> list:
    """Large community-structured networks in the size band of the reference
    diffusion experiments; connected by construction."""
    specs = []
    for k, total in enumerate(sizes):
        seed = derive_seed(master_seed, "community-ensemble-spec", k)
        a_size = max(200, total // 8)
        satellite_size = 10
        satellites = (total - a_size) // satellite_size
        specs.append(GeneratorSpec(
            kind="fragmented_frontier",
            rng_seed=seed,
            spec_id=f"community-{total}",
            a_size=a_size,
            a_density=0.008,
            satellites=satellites,
            satellite_size=satellite_size,
            satellite_style="clique_chain",
            chain_width=7,
            chain_overlap=4,
            bridges=2,
            satellite_seed_fraction=0.5,
            detached_satellites=0,
        ))
    return specs
