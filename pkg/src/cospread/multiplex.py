"""Contagion labeling, frontier extraction, and overlap statistics.

A labeling marks which nodes belong to contagion A (the attitude being
promoted) and which belong to the secondary contagion B; nodes may carry
both labels. The frontier is the interface set: every node incident to an
edge whose endpoints carry opposite labels, counted on both sides.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError, ValidationError
from .graph import Graph


@dataclass(frozen=True)
class ContagionLabeling:
    is_A: np.ndarray  # bool, per node
    is_B: np.ndarray  # bool, per node

    def __post_init__(self):
        a = np.asarray(self.is_A, dtype=bool)
        b = np.asarray(self.is_B, dtype=bool)
        if a.shape != b.shape or a.ndim != 1:
            raise ValidationError("label flags must be 1-d arrays of equal length")
        object.__setattr__(self, "is_A", a)
        object.__setattr__(self, "is_B", b)

    @property
    def node_count(self) -> int:
        return self.is_A.size

    def swapped(self) -> "ContagionLabeling":
        return ContagionLabeling(is_A=self.is_B.copy(), is_B=self.is_A.copy())


@dataclass(frozen=True)
class FrontierReport:
    frontier_nodes: list
    frontier_size: int
    total_network_size: int
    overlap_with_A: float
    overlap_with_B: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "frontier_nodes": list(self.frontier_nodes),
                "frontier_size": self.frontier_size,
                "total_network_size": self.total_network_size,
                "overlap_with_A": self.overlap_with_A,
                "overlap_with_B": self.overlap_with_B,
            },
            indent=2,
        ) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "FrontierReport":
        raw = json.loads(text)
        return cls(
            frontier_nodes=list(raw["frontier_nodes"]),
            frontier_size=int(raw["frontier_size"]),
            total_network_size=int(raw["total_network_size"]),
            overlap_with_A=float(raw["overlap_with_A"]),
            overlap_with_B=float(raw["overlap_with_B"]),
        )


def frontier(g: Graph, labels: ContagionLabeling) -> FrontierReport:
    """Interface nodes between the A and B communities, counted on both sides.

    A node joins the frontier if it is B-labeled with at least one A-labeled
    neighbor, or A-labeled with at least one B-labeled neighbor. Edge
    direction is ignored (contact, not flow).
    """
    if labels.node_count != g.node_count:
        raise ValidationError("labeling size does not match graph")
    is_a, is_b = labels.is_A, labels.is_B
    if not is_a.any() or not is_b.any():
        raise DomainError("frontier requires at least one A node and one B node")

    und = g.undirected_view()
    nbrs = und.neighbor_lists()
    in_frontier = np.zeros(g.node_count, dtype=bool)
    for u in np.flatnonzero(is_a | is_b):
        neigh = nbrs[u]
        if neigh.size == 0:
            continue
        if is_b[u] and is_a[neigh].any():
            in_frontier[u] = True
        elif is_a[u] and is_b[neigh].any():
            in_frontier[u] = True

    nodes = np.flatnonzero(in_frontier)
    return FrontierReport(
        frontier_nodes=[int(v) for v in nodes],
        frontier_size=int(nodes.size),
        total_network_size=int((is_a | is_b).sum()),
        overlap_with_A=float((in_frontier & is_a).sum() / is_a.sum()),
        overlap_with_B=float((in_frontier & is_b).sum() / is_b.sum()),
    )


def viable_candidates(labels: ContagionLabeling) -> np.ndarray:
    """Node ids in (A or B) that are not A: the yield denominator population."""
    return np.flatnonzero((labels.is_A | labels.is_B) & ~labels.is_A)


# ---------------------------------------------------------------------------
# Label CSV: node,is_A,is_B
# ---------------------------------------------------------------------------

def write_labels(path, labels: ContagionLabeling, id_lookup=None):
    """Write the label CSV; ``id_lookup`` maps dense ids back to originals."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("node,is_A,is_B\n")
        for i in range(labels.node_count):
            node = id_lookup[i] if id_lookup is not None else i
            fh.write(f"{node},{int(labels.is_A[i])},{int(labels.is_B[i])}\n")


def read_labels(path, id_map=None, node_count=None):
    """Read a label CSV; extends ``id_map`` in place for unseen node ids.

    Returns a ContagionLabeling sized to ``node_count`` (default: number of
    mapped ids after reading).
    """
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().lower().replace(" ", "")
        if header != "node,is_a,is_b":
            raise ParseError("expected header node,is_A,is_B", line=1)
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ParseError(f"expected 3 fields, got {line!r}", line=lineno)
            tok, a, b = parts
            if a not in ("0", "1") or b not in ("0", "1"):
                raise ParseError(f"flags must be 0 or 1, got {line!r}", line=lineno)
            if id_map is not None:
                if tok not in id_map:
                    id_map[tok] = len(id_map)
                dense = id_map[tok]
            else:
                try:
                    dense = int(tok)
                except ValueError as exc:
                    raise ParseError(f"non-integer node id {tok!r}", line=lineno) from exc
            rows.append((dense, a == "1", b == "1"))

    if node_count is None:
        node_count = (max(r[0] for r in rows) + 1) if rows else 0
        if id_map is not None:
            node_count = max(node_count, len(id_map))
    is_a = np.zeros(node_count, dtype=bool)
    is_b = np.zeros(node_count, dtype=bool)
    for dense, a, b in rows:
        if dense >= node_count:
            raise ValidationError(f"label node id {dense} outside graph of {node_count}")
        is_a[dense] = a
        is_b[dense] = b
    return ContagionLabeling(is_A=is_a, is_B=is_b)
