"""Immutable CSR graph storage and the topology metrics correlated with yield.

Graphs are stored in compressed sparse row form over dense integer node ids.
Undirected graphs keep each edge in both row lists; directed graphs keep
out-neighbors. Construction deduplicates edges and drops self-loops. All
metric functions are read-only and safe to call concurrently.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParseError, ValidationError
from .seeds import derive_seed


@dataclass(frozen=True)
class Graph:
    node_count: int
    directed: bool
    indptr: np.ndarray   # int64, length node_count + 1
    indices: np.ndarray  # int64, concatenated sorted neighbor lists
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def degree(self) -> np.ndarray:
        """Out-degree for directed graphs, total degree for undirected."""
        return np.diff(self.indptr)

    @property
    def edge_count(self) -> int:
        nnz = int(self.indices.size)
        return nnz if self.directed else nnz // 2

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def neighbor_lists(self) -> list:
        """Per-node neighbor arrays (cached)."""
        if "nbrs" not in self._cache:
            self._cache["nbrs"] = [self.neighbors(i) for i in range(self.node_count)]
        return self._cache["nbrs"]

    def in_degree(self) -> np.ndarray:
        if not self.directed:
            return self.degree
        return np.bincount(self.indices, minlength=self.node_count).astype(np.int64)

    def edge_array(self) -> np.ndarray:
        """(E, 2) array of edges; one row per undirected edge (src < dst)."""
        src = np.repeat(np.arange(self.node_count, dtype=np.int64), self.degree)
        dst = self.indices
        if self.directed:
            return np.column_stack([src, dst])
        keep = src < dst
        return np.column_stack([src[keep], dst[keep]])

    def undirected_view(self) -> "Graph":
        """Symmetrized copy (identity for undirected graphs)."""
        if not self.directed:
            return self
        if "undirected" not in self._cache:
            self._cache["undirected"] = build_graph(
                self.edge_array(), directed=False, node_count=self.node_count
            )
        return self._cache["undirected"]


def build_graph(edge_list, directed: bool, node_count=None) -> Graph:
    """Build a deduplicated, self-loop-free Graph from (src, dst) pairs.

    ``node_count`` defaults to max id + 1; pass it explicitly to keep
    trailing isolated nodes.
    """
    pairs = []
    for k, item in enumerate(edge_list):
        try:
            a, b = item
            a, b = int(a), int(b)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed edge pair {item!r}", line=k + 1) from exc
        if a < 0 or b < 0:
            raise ParseError(f"negative node id in {item!r}", line=k + 1)
        pairs.append((a, b))

    if pairs:
        edges = np.asarray(pairs, dtype=np.int64)
        max_id = int(edges.max())
    else:
        edges = np.empty((0, 2), dtype=np.int64)
        max_id = -1

    n = max_id + 1 if node_count is None else int(node_count)
    if n < max_id + 1:
        raise ValidationError(f"node_count {n} smaller than max id {max_id}")

    edges = edges[edges[:, 0] != edges[:, 1]]  # drop self-loops
    if not directed and edges.size:
        edges = np.concatenate([edges, edges[:, ::-1]])
    if edges.size:
        edges = np.unique(edges, axis=0)

    indptr = np.zeros(n + 1, dtype=np.int64)
    if edges.size:
        counts = np.bincount(edges[:, 0], minlength=n)
        indptr[1:] = np.cumsum(counts)
    indices = edges[:, 1].copy() if edges.size else np.empty(0, dtype=np.int64)
    return Graph(node_count=n, directed=directed, indptr=indptr, indices=indices)


def induced_subgraph(g: Graph, node_mask) -> tuple:
    """Subgraph on the masked nodes; returns (subgraph, original-id array)."""
    node_mask = np.asarray(node_mask, dtype=bool)
    keep = np.flatnonzero(node_mask)
    remap = -np.ones(g.node_count, dtype=np.int64)
    remap[keep] = np.arange(keep.size)
    edges = g.edge_array()
    if edges.size:
        inside = node_mask[edges[:, 0]] & node_mask[edges[:, 1]]
        edges = remap[edges[inside]]
    sub = build_graph(edges, directed=g.directed, node_count=keep.size)
    return sub, keep


# ---------------------------------------------------------------------------
# File ingestion: edge lists with id compaction
# ---------------------------------------------------------------------------

def read_edge_list(path):
    """Read a text edge list; returns (edges array, id_map original->dense).

    One edge per line, ``src<whitespace-or-comma>dst``; ``#`` starts a
    comment. Original ids may be arbitrary tokens; they are compacted to
    dense integers in order of first appearance.
    """
    id_map: dict = {}
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.replace(",", " ").split()
            if len(tokens) != 2:
                raise ParseError(f"expected two node ids, got {line!r}", line=lineno)
            pair = []
            for tok in tokens:
                if tok not in id_map:
                    id_map[tok] = len(id_map)
                pair.append(id_map[tok])
            edges.append(pair)
    arr = np.asarray(edges, dtype=np.int64) if edges else np.empty((0, 2), dtype=np.int64)
    return arr, id_map


def write_edge_list(path, g: Graph):
    with open(path, "w", encoding="utf-8") as fh:
        for a, b in g.edge_array():
            fh.write(f"{a} {b}\n")


def write_id_map(path, id_map):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("original_id,dense_id\n")
        for orig, dense in id_map.items():
            fh.write(f"{orig},{dense}\n")


# ---------------------------------------------------------------------------
# Topology metrics
# ---------------------------------------------------------------------------

def connected_components(g: Graph):
    """(count, labels) under weak connectivity; labels in discovery order."""
    und = g.undirected_view()
    n = und.node_count
    labels = -np.ones(n, dtype=np.int64)
    nbrs = und.neighbor_lists()
    count = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        stack = [start]
        labels[start] = count
        while stack:
            u = stack.pop()
            for v in nbrs[u]:
                if labels[v] < 0:
                    labels[v] = count
                    stack.append(v)
        count += 1
    return count, labels


def density(g: Graph) -> float:
    """Edge density: |E| / N(N-1) directed, 2|E| / N(N-1) undirected."""
    n = g.node_count
    if n < 2:
        raise DomainError("density requires at least 2 nodes")
    pairs = n * (n - 1)
    e = g.edge_count
    return e / pairs if g.directed else 2 * e / pairs


def betweenness(g: Graph, sample_pivots=None, rng_seed: int = 0) -> np.ndarray:
    """Betweenness centrality as unnormalized shortest-path pair counts.

    Exact Brandes accumulation when ``sample_pivots`` is None; otherwise an
    unbiased pivot-sampled estimate scaled by N / pivots. Undirected graphs
    count each unordered pair once; directed graphs count ordered pairs.
    """
    n = g.node_count
    if n == 0:
        return np.zeros(0)
    if sample_pivots is None or sample_pivots >= n:
        sources = np.arange(n)
        scale = 1.0
    else:
        if sample_pivots < 1:
            raise ValidationError("sample_pivots must be >= 1")
        rng = np.random.default_rng(derive_seed(rng_seed, "betweenness-pivots"))
        sources = rng.choice(n, size=int(sample_pivots), replace=False)
        scale = n / float(sample_pivots)
    bc = _brandes_accumulate(g, sources)
    if not g.directed:
        bc /= 2.0
    return bc * scale


def _brandes_accumulate(g: Graph, sources) -> np.ndarray:
    n = g.node_count
    nbrs = g.neighbor_lists()
    bc = np.zeros(n)
    for s in sources:
        # BFS from s recording predecessor lists and path counts.
        sigma = np.zeros(n)
        sigma[s] = 1.0
        dist = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        preds: list = [[] for _ in range(n)]
        order = [s]
        head = 0
        while head < len(order):
            u = order[head]
            head += 1
            du = dist[u]
            for v in nbrs[u]:
                if dist[v] < 0:
                    dist[v] = du + 1
                    order.append(v)
                if dist[v] == du + 1:
                    sigma[v] += sigma[u]
                    preds[v].append(u)
        delta = np.zeros(n)
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for u in preds[w]:
                delta[u] += sigma[u] * coeff
            if w != s:
                bc[w] += delta[w]
    return bc


def core_numbers(g: Graph) -> np.ndarray:
    """k-core decomposition by iterative minimum-degree peeling (undirected)."""
    und = g.undirected_view()
    n = und.node_count
    deg = und.degree.copy()
    core = deg.copy()
    if n == 0:
        return core
    # Batagelj-Zaversnik bucket peeling.
    order = np.argsort(deg, kind="stable")
    max_deg = int(deg.max())
    bin_start = np.zeros(max_deg + 2, dtype=np.int64)
    counts = np.bincount(deg, minlength=max_deg + 1)
    bin_start[1:] = np.cumsum(counts)
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    vert = order.copy()
    bins = bin_start[:-1].copy()
    nbrs = und.neighbor_lists()
    for i in range(n):
        u = vert[i]
        core[u] = deg[u]
        for v in nbrs[u]:
            if deg[v] > deg[u]:
                dv = deg[v]
                pv, pw = pos[v], bins[dv]
                w = vert[pw]
                if v != w:
                    vert[pv], vert[pw] = w, v
                    pos[v], pos[w] = pw, pv
                bins[dv] += 1
                deg[v] -= 1
    return core


@dataclass(frozen=True)
class CentralityReport:
    betweenness: np.ndarray
    core_number: np.ndarray
    in_degree: np.ndarray
    out_degree: np.ndarray


# Exact Brandes gets slow past this size; fall back to pivot sampling.
PIVOT_THRESHOLD = 5000


def centrality_report(g: Graph, sample_pivots=None, rng_seed: int = 0) -> CentralityReport:
    """All four per-node centrality measures in one pass.

    For graphs above PIVOT_THRESHOLD nodes, betweenness defaults to a
    pivot-sampled estimate with a seed-derived pivot set.
    """
    if sample_pivots is None and g.node_count > PIVOT_THRESHOLD:
        sample_pivots = PIVOT_THRESHOLD
    return CentralityReport(
        betweenness=betweenness(g, sample_pivots=sample_pivots, rng_seed=rng_seed),
        core_number=core_numbers(g),
        in_degree=g.in_degree(),
        out_degree=g.degree if g.directed else g.degree,
    )
