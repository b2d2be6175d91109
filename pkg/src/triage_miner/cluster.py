"""Seeded K-means over the four non-assignee attribute codes.

Lloyd iterations with k-means++ initialization, driven by a deterministic
generator so identical inputs and seed give bit-identical assignments.
Distances are squared Euclidean on the raw integer codes; the assignee code
is excluded from the features because it is the prediction target.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, InfeasibleKError, ParameterError
from .ingest import BugRecord


@dataclass(frozen=True)
class ClusterModel:
    """Fitted partition: centroids, per-record assignments and diagnostics.

    ``assignments[i]`` is the cluster of the i-th input point;
    ``inertia_history`` holds the objective after each Lloyd iteration
    (entry 0 is the post-initialization value).
    """

    k: int
    centroids: tuple[tuple[float, ...], ...]
    assignments: tuple[int, ...]
    inertia: float
    seed: int
    iterations_run: int
    inertia_history: tuple[float, ...]

    def cluster_sizes(self) -> list[int]:
        sizes = [0] * self.k
        for cluster in self.assignments:
            sizes[cluster] += 1
        return sizes


def feature_vector(record: BugRecord) -> tuple[float, float, float, float]:
    """The 4 clustering features: severity, priority, component, os codes."""
    return (
        float(record.severity_code),
        float(record.priority_code),
        float(record.component_code),
        float(record.os_code),
    )


def _nearest(points: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Assign each point to its nearest centroid; ties go to the lowest index."""
    distances = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    assignments = distances.argmin(axis=1)
    return assignments, distances[np.arange(len(points)), assignments]


def _assign_with_repair(
    points: np.ndarray, centroids: np.ndarray, k: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Assignment step that also repairs empty clusters.

    An empty cluster is reseeded to the point farthest from its assigned
    centroid; donors are restricted to clusters with at least two members so
    a repair never empties another cluster. Returns (centroids, assignments,
    per-point squared distances) satisfying the nearest-centroid invariant
    with every cluster non-empty.
    """
    centroids = centroids.copy()
    for _ in range(2 * k + 2):
        assignments, dists = _nearest(points, centroids)
        sizes = np.bincount(assignments, minlength=k)
        empties = np.flatnonzero(sizes == 0)
        if len(empties) == 0:
            return centroids, assignments, dists
        for j in empties:
            eligible = sizes[assignments] >= 2
            candidate_dists = np.where(eligible, dists, -1.0)
            p = int(candidate_dists.argmax())
            if candidate_dists[p] <= 0.0:
                raise ConsistencyError(
                    "cannot repair empty cluster: no displaceable point at positive distance"
                )
            sizes[assignments[p]] -= 1
            sizes[j] += 1
            assignments[p] = j
            centroids[j] = points[p]
            dists[p] = 0.0
        # repaired centroids sit on data points; re-assign so the
        # nearest-centroid invariant holds for every point
    raise ConsistencyError("empty-cluster repair did not converge")


def _kmeanspp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(points)
    centroids = np.empty((k, points.shape[1]), dtype=float)
    centroids[0] = points[rng.integers(n)]
    d2 = ((points - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            raise ConsistencyError("k-means++ ran out of distinct points")
        idx = int(rng.choice(n, p=d2 / total))
        if d2[idx] == 0.0:  # boundary artifact of the cumulative draw
            idx = int(d2.argmax())
        centroids[j] = points[idx]
        d2 = np.minimum(d2, ((points - centroids[j]) ** 2).sum(axis=1))
    return centroids


def kmeans_fit(
    points: Sequence[Sequence[float]],
    k: int,
    seed: int,
    max_iterations: int = 100,
) -> ClusterModel:
    """Fit k clusters with Lloyd's algorithm and k-means++ seeding.

    Stops when assignments are unchanged between iterations or after
    max_iterations. Requires k <= number of distinct points so no cluster
    can stay empty.
    """
    if k <= 0:
        raise ParameterError(f"k must be positive, got {k}")
    if max_iterations < 1:
        raise ParameterError(f"max_iterations must be >= 1, got {max_iterations}")
    data = np.asarray(points, dtype=float)
    if data.ndim != 2 or len(data) == 0:
        raise ParameterError("points must be a non-empty list of equal-length vectors")
    distinct = len(np.unique(data, axis=0))
    if k > distinct:
        raise InfeasibleKError(
            f"k={k} exceeds the {distinct} distinct feature vectors in the input"
        )

    rng = np.random.default_rng(seed)
    centroids = _kmeanspp_init(data, k, rng)
    centroids, assignments, dists = _assign_with_repair(data, centroids, k)
    history = [float(dists.sum())]
    iterations_run = 0
    for iteration in range(1, max_iterations + 1):
        centroids = np.stack([data[assignments == j].mean(axis=0) for j in range(k)])
        centroids, new_assignments, dists = _assign_with_repair(data, centroids, k)
        history.append(float(dists.sum()))
        iterations_run = iteration
        converged = bool(np.array_equal(new_assignments, assignments))
        assignments = new_assignments
        if converged:
            break

    return ClusterModel(
        k=k,
        centroids=tuple(tuple(float(x) for x in c) for c in centroids),
        assignments=tuple(int(a) for a in assignments),
        inertia=history[-1],
        seed=seed,
        iterations_run=iterations_run,
        inertia_history=tuple(history),
    )


def split_by_cluster(records: Sequence[BugRecord], model: ClusterModel) -> list[list[BugRecord]]:
    """Partition records into k lists by assigned cluster, input order kept."""
    if len(model.assignments) != len(records):
        raise ConsistencyError(
            f"model covers {len(model.assignments)} records, got {len(records)}"
        )
    parts: list[list[BugRecord]] = [[] for _ in range(model.k)]
    for record, cluster in zip(records, model.assignments):
        parts[cluster].append(record)
    return parts


def model_to_json(model: ClusterModel, records: Sequence[BugRecord]) -> dict:
    """JSON-ready view keyed by bug_id, plus centroids and sizes."""
    if len(model.assignments) != len(records):
        raise ConsistencyError("model and records disagree on record count")
    return {
        "k": model.k,
        "seed": model.seed,
        "iterations_run": model.iterations_run,
        "inertia": model.inertia,
        "centroids": [list(c) for c in model.centroids],
        "assignments": {
            record.bug_id: cluster for record, cluster in zip(records, model.assignments)
        },
        "cluster_sizes": model.cluster_sizes(),
    }
