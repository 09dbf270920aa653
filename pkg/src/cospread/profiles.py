"""User-level scoring: ideology, source diversity, bot filtering, topic
transitions, and group-wise centrality comparison.

Ideology is the dot product of a user's media-slant share vector with the
weights (-2, -1, 0, 1, 2): negative scores lean left, positive lean right,
0 is centrist. Source diversity is the Shannon entropy (natural log) of the
user's shared-domain frequencies. Users with botscore strictly above 0.5
are treated as bots and excluded before any group statistic.
"""

import json
import logging
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError, ValidationError
from .graph import Graph, centrality_report

log = logging.getLogger(__name__)

IDEOLOGY_WEIGHTS = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
GROUPS = ("pro", "anti", "wavering", "unlabeled")
SHARE_TOLERANCE = 1e-9
BOT_THRESHOLD = 0.5


@dataclass(frozen=True)
class UserProfile:
    user_id: str
    media_shares: tuple  # (left, left-center, center, right-center, right)
    domain_counts: dict
    botscore: float
    group: str = "unlabeled"
    topic_sequence: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "media_shares", tuple(float(v) for v in self.media_shares))
        object.__setattr__(self, "topic_sequence", tuple(self.topic_sequence))
        if self.group not in GROUPS:
            raise ValidationError(f"unknown group {self.group!r}")
        if not 0.0 <= self.botscore <= 1.0:
            raise ValidationError(f"botscore {self.botscore} outside [0, 1]")

    @classmethod
    def from_json_line(cls, line: str, lineno=None) -> "UserProfile":
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", line=lineno) from exc
        try:
            return cls(
                user_id=str(raw["user_id"]),
                media_shares=raw["media_shares"],
                domain_counts=dict(raw["domain_counts"]),
                botscore=float(raw["botscore"]),
                group=raw.get("group", "unlabeled"),
                topic_sequence=raw.get("topic_sequence", ()),
            )
        except KeyError as exc:
            raise ParseError(f"missing field {exc}", line=lineno) from exc


def read_profiles(path) -> list:
    """Read UserProfile records from a JSONL file, one per line."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.strip():
                out.append(UserProfile.from_json_line(line, lineno=lineno))
    return out


def ideology_score(media_shares) -> float:
    """Weighted slant score in [-2, 2]; negative = left, positive = right."""
    shares = np.asarray(media_shares, dtype=np.float64)
    if shares.shape != (5,):
        raise ValidationError("media_shares must have exactly 5 entries")
    if (shares < 0).any():
        raise ValidationError("media_shares must be nonnegative")
    if abs(shares.sum() - 1.0) > SHARE_TOLERANCE:
        raise ValidationError(f"media_shares sum {shares.sum()!r} != 1 within tolerance")
    return float(shares @ IDEOLOGY_WEIGHTS)


def source_entropy(domain_counts) -> float:
    """Shannon entropy (natural log) of the domain share distribution."""
    if not domain_counts:
        raise DomainError("source_entropy requires at least one domain")
    counts = np.array(list(domain_counts.values()), dtype=np.float64)
    if (counts <= 0).any():
        raise ValidationError("domain counts must be positive")
    p = counts / counts.sum()
    return float(-(p * np.log(p)).sum())


def is_bot(botscore) -> bool:
    """True iff botscore is strictly above 0.5."""
    if not 0.0 <= botscore <= 1.0:
        raise ValidationError(f"botscore {botscore} outside [0, 1]")
    return botscore > BOT_THRESHOLD


@dataclass(frozen=True)
class TransitionMatrix:
    labels: tuple
    counts: np.ndarray         # square, nonnegative ints
    probabilities: np.ndarray  # row-stochastic; zero-count rows stay zero
    zero_rows: np.ndarray      # bool flag per row


def transition_matrix(profiles, topic_whitelist) -> TransitionMatrix:
    """Consecutive topic-to-topic transition counts pooled across users.

    Topics outside the whitelist are dropped from each sequence before
    pairing, so transitions skip over dropped entries.
    """
    labels = tuple(topic_whitelist)
    if not labels:
        raise ValidationError("topic whitelist must not be empty")
    if len(set(labels)) != len(labels):
        raise ValidationError("topic whitelist contains duplicates")
    index = {t: i for i, t in enumerate(labels)}
    k = len(labels)
    counts = np.zeros((k, k), dtype=np.int64)
    for prof in profiles:
        seq = [index[t] for t in prof.topic_sequence if t in index]
        for a, b in zip(seq, seq[1:]):
            counts[a, b] += 1
    row_sums = counts.sum(axis=1)
    zero_rows = row_sums == 0
    probs = np.zeros((k, k), dtype=np.float64)
    np.divide(counts, row_sums[:, None], out=probs, where=~zero_rows[:, None])
    return TransitionMatrix(labels=labels, counts=counts,
                            probabilities=probs, zero_rows=zero_rows)


def group_centrality_report(g: Graph, groups, expected_groups=GROUPS) -> dict:
    """Per-group mean betweenness, core number, in- and out-degree.

    ``groups`` assigns each node a group label or None to exclude it (bots
    are excluded upstream by passing None). Expected groups with no members
    are omitted with a warning.
    """
    if not g.directed:
        raise ValidationError("group centrality uses directed (retweet) graphs")
    if len(groups) != g.node_count:
        raise ValidationError("groups must assign a label per node")
    report = centrality_report(g)
    out: dict = {}
    labels = np.array([x if x is not None else "" for x in groups])
    for name in dict.fromkeys(list(expected_groups) + [x for x in labels if x]):
        members = np.flatnonzero(labels == name)
        if members.size == 0:
            log.warning("group %r has no members; omitted from report", name)
            continue
        out[name] = {
            "count": int(members.size),
            "betweenness": float(report.betweenness[members].mean()),
            "core_number": float(report.core_number[members].mean()),
            "in_degree": float(report.in_degree[members].mean()),
            "out_degree": float(report.out_degree[members].mean()),
        }
    return out


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def write_scores_csv(path, profiles):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("user_id,ideology,entropy,is_bot,group\n")
        for prof in profiles:
            score = ideology_score(prof.media_shares)
            ent = source_entropy(prof.domain_counts)
            fh.write(f"{prof.user_id},{score!r},{ent!r},"
                     f"{int(is_bot(prof.botscore))},{prof.group}\n")


def write_transitions_csv(path, tm: TransitionMatrix):
    """Long-format transition table: from,to,count,probability."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("from,to,count,probability\n")
        for i, a in enumerate(tm.labels):
            for j, b in enumerate(tm.labels):
                fh.write(f"{a},{b},{tm.counts[i, j]},{tm.probabilities[i, j]!r}\n")


def write_group_centrality_json(path, report: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
