"""Equivalence clustering: DBSCAN over perspectives with distance 1 - C3.

Noise points are kept as singleton clusters rather than dropped, so every
gated perspective survives to the output. Expansion runs in ascending index
order, which makes border-point assignment deterministic: a border point
reachable from several clusters goes to the cluster whose seed core point
has the lowest index.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .scorers import Scorer


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise distances in [0, 1] with a zero diagonal."""

    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("distance matrix must be square")
        if v.size:
            if not np.array_equal(v, v.T):
                raise ValueError("distance matrix must be symmetric")
            if np.any(np.diagonal(v) != 0.0):
                raise ValueError("distance matrix diagonal must be zero")
            if np.any(v < 0.0) or np.any(v > 1.0):
                raise ValueError("distances must lie in [0, 1]")

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class PerspectiveCluster:
    member_indices: tuple[int, ...]
    representative_index: int
    is_noise_singleton: bool

    def __post_init__(self):
        if not self.member_indices:
            raise ValueError("cluster has no members")
        if self.representative_index not in self.member_indices:
            raise ValueError("representative must be a member")


def build_distance_matrix(claim: str, perspectives: list[str],
                          scorer: Scorer) -> DistanceMatrix:
    """d[i][j] = 1 - equivalence(claim, p_i, p_j); n(n-1)/2 scorer calls."""
    if not perspectives:
        raise ValueError("no perspectives to compare")
    n = len(perspectives)
    d = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            similarity = scorer.score_equivalence(claim, perspectives[i], perspectives[j])
            dist = min(1.0, max(0.0, 1.0 - similarity))
            d[i, j] = dist
            d[j, i] = dist
    return DistanceMatrix(d)


def dbscan(dist: DistanceMatrix, eps: float, min_pts: int) -> list[PerspectiveCluster]:
    """Density-based clustering from the precomputed matrix.

    A point's eps-neighborhood includes itself; core points have at least
    ``min_pts`` neighbors; clusters are maximal density-connected sets.
    Returns a partition of all indices, noise flagged as singletons, ordered
    by smallest member index.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError("eps must lie in [0, 1]")
    if min_pts < 1:
        raise ValueError("min_pts must be >= 1")
    n = dist.n
    if n == 0:
        return []

    d = dist.values
    neighborhoods = [np.flatnonzero(d[i] <= eps) for i in range(n)]
    is_core = [len(nb) >= min_pts for nb in neighborhoods]

    labels = [-1] * n
    groups: list[list[int]] = []
    for seed in range(n):
        if labels[seed] != -1 or not is_core[seed]:
            continue
        cid = len(groups)
        members = [seed]
        labels[seed] = cid
        queue = deque([seed])
        while queue:
            point = queue.popleft()
            for neighbor in neighborhoods[point]:
                if labels[neighbor] == -1:
                    labels[neighbor] = cid
                    members.append(int(neighbor))
                    if is_core[neighbor]:
                        queue.append(int(neighbor))
        groups.append(sorted(members))

    clusters = [
        PerspectiveCluster(tuple(members), members[0], False) for members in groups
    ]
    clusters.extend(
        PerspectiveCluster((i,), i, True) for i in range(n) if labels[i] == -1
    )
    clusters.sort(key=lambda c: c.member_indices[0])
    return clusters


def select_representative(cluster: PerspectiveCluster,
                          relevance_scores: list[float]) -> int:
    """Member with maximum relevance; ties broken by lowest index."""
    best = None
    for idx in sorted(cluster.member_indices):
        if best is None or relevance_scores[idx] > relevance_scores[best]:
            best = idx
    return best
