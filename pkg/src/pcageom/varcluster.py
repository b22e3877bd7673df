"""Vertical clustering: grouping variables by similarity to components.

Each variable gets a similarity profile, the k determination
coefficients against the k selected components.  Two grouping rules
operate on those profiles.  The naive rule assigns a variable to the
component that explains at least a threshold share of its variance
(default half, so at most one component can qualify); leftovers land in
an explicit "unassigned" cluster.  The k-means rule clusters profiles
as points under a pluggable metric, with deterministic seeding so runs
are reproducible.

K-means details: farthest-point initialization from a seed-chosen
start, Lloyd iterations to an assignment fixpoint, 10 restarts with the
best objective kept (earliest restart wins ties).  Centroids minimize
the within-cluster cost exactly for the city-block (coordinatewise
median), squared Euclidean (mean), and cosine (normalized mean
direction) metrics.  The sum of Chebyshev distances has no closed-form
minimizer, so that metric reuses the mean and the iteration simply
stops if the objective would rise, keeping the descent property.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernels import DIST_COSINE, DIST_L1, DIST_L2, DIST_LINF, assign_labels, point_distance
from .pcacore import ExplanationTable

__all__ = [
    "METRICS",
    "UNASSIGNED",
    "SimilarityProfile",
    "ClusterAssignment",
    "LloydResult",
    "similarity_profiles",
    "cluster_naive",
    "cluster_kmeans",
    "lloyd",
]

METRICS = {"l1": DIST_L1, "l2": DIST_L2, "linf": DIST_LINF, "cosine": DIST_COSINE}

UNASSIGNED = "unassigned"

_GUARD_TOL = 1e-12


@dataclass(eq=False)
class SimilarityProfile:
    """One variable's determination coefficients against k components."""

    variable: str
    values: np.ndarray

    @property
    def k(self) -> int:
        return self.values.shape[0]


@dataclass(eq=False)
class ClusterAssignment:
    """Variable-to-cluster mapping produced by one clustering method."""

    method: str
    assignments: dict[str, str]
    clusters: dict[str, list[str]]
    metric: str | None = None
    threshold: float | None = None
    objective: float | None = None
    n_iterations: int | None = None
    excluded: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        doc: dict = {"method": self.method}
        if self.metric is not None:
            doc["metric"] = self.metric
        if self.threshold is not None:
            doc["threshold"] = self.threshold
        if self.objective is not None:
            doc["objective"] = self.objective
        doc["clusters"] = {cid: list(members) for cid, members in self.clusters.items()}
        return doc


@dataclass(eq=False)
class LloydResult:
    """State of one k-means run, with the per-iteration objective trail."""

    labels: np.ndarray
    centroids: np.ndarray
    objective: float
    history: list[float]
    converged: bool
    guard_tripped: bool


def similarity_profiles(expl: ExplanationTable) -> list[SimilarityProfile]:
    """Per-variable profiles: columns of the truncated determination table."""
    return [
        SimilarityProfile(variable=name, values=expl.determination[:, j].copy())
        for j, name in enumerate(expl.variable_names)
    ]


def cluster_naive(profiles: list[SimilarityProfile], threshold: float = 0.5) -> ClusterAssignment:
    """Assign each variable to the component clearing the threshold.

    Among profile entries >= threshold the largest wins, lowest
    component index on ties; with the default threshold of one half at
    most one entry can qualify, since a profile sums to at most 1.
    Variables clearing nothing go to the "unassigned" cluster.
    """
    if not profiles:
        raise ValueError("varcluster: no profiles to cluster")
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"varcluster: threshold must be in (0, 1], got {threshold}")
    k = profiles[0].k
    assignments: dict[str, str] = {}
    clusters: dict[str, list[str]] = {f"pc{i + 1}": [] for i in range(k)}
    clusters[UNASSIGNED] = []
    for prof in profiles:
        if prof.k != k:
            raise ValueError("varcluster: profiles have mixed lengths")
        best = None
        for i, v in enumerate(prof.values):
            if v >= threshold and (best is None or v > prof.values[best]):
                best = i
        cid = UNASSIGNED if best is None else f"pc{best + 1}"
        assignments[prof.variable] = cid
        clusters[cid].append(prof.variable)
    return ClusterAssignment(
        method="naive", assignments=assignments, clusters=clusters, threshold=threshold
    )


def _centroid(points: np.ndarray, code: int) -> np.ndarray:
    if code == DIST_L1:
        return np.median(points, axis=0)
    if code == DIST_COSINE:
        norms = np.linalg.norm(points, axis=1, keepdims=True)
        direction = np.sum(points / norms, axis=0)
        total = np.linalg.norm(direction)
        if total == 0.0:
            return points[0].copy()
        return direction / total
    return points.mean(axis=0)


def _labeled_cost(points: np.ndarray, centroids: np.ndarray, labels: np.ndarray, code: int) -> float:
    return float(
        sum(point_distance(points[i], centroids[labels[i]], code) for i in range(points.shape[0]))
    )


def _fix_empty(
    points: np.ndarray, centroids: np.ndarray, labels: np.ndarray, kc: int, code: int
) -> None:
    # donate the point farthest from its own centroid, from a cluster
    # that can spare one; lowest cluster id is refilled first
    for cid in range(kc):
        if np.any(labels == cid):
            continue
        counts = np.bincount(labels, minlength=kc)
        best_i = -1
        best_d = -1.0
        for i in range(points.shape[0]):
            if counts[labels[i]] <= 1:
                continue
            d = point_distance(points[i], centroids[labels[i]], code)
            if d > best_d:
                best_d = d
                best_i = i
        if best_i < 0:
            return
        labels[best_i] = cid
        centroids[cid] = points[best_i]


def lloyd(
    points: np.ndarray, centroids: np.ndarray, metric: str = "l2", max_iter: int = 100
) -> LloydResult:
    """Run Lloyd iterations from the given centroids until a fixpoint.

    Stops at an assignment fixpoint, after ``max_iter`` iterations, or
    as soon as an update would increase the objective (possible only
    for the Chebyshev metric, whose centroid rule is heuristic).  The
    returned history is the objective after each accepted iteration and
    is nonincreasing by construction.
    """
    code = METRICS[metric]
    points = np.asarray(points, dtype=np.float64)
    centroids = np.array(centroids, dtype=np.float64)
    kc = centroids.shape[0]
    labels = np.zeros(points.shape[0], dtype=np.int64)
    objective = assign_labels(points, centroids, code, labels)
    _fix_empty(points, centroids, labels, kc, code)
    objective = _labeled_cost(points, centroids, labels, code)
    history = [objective]
    converged = False
    guard_tripped = False

    for _ in range(max_iter):
        new_centroids = centroids.copy()
        for cid in range(kc):
            members = points[labels == cid]
            if members.shape[0]:
                new_centroids[cid] = _centroid(members, code)
        new_labels = np.zeros_like(labels)
        new_objective = assign_labels(points, new_centroids, code, new_labels)
        _fix_empty(points, new_centroids, new_labels, kc, code)
        new_objective = _labeled_cost(points, new_centroids, new_labels, code)
        if new_objective > objective + _GUARD_TOL:
            guard_tripped = True
            break
        fixpoint = np.array_equal(new_labels, labels)
        labels, centroids, objective = new_labels, new_centroids, new_objective
        history.append(objective)
        if fixpoint:
            converged = True
            break
    return LloydResult(
        labels=labels,
        centroids=centroids,
        objective=objective,
        history=history,
        converged=converged,
        guard_tripped=guard_tripped,
    )


def _farthest_point_init(points: np.ndarray, kc: int, code: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    m = points.shape[0]
    chosen = [int(rng.integers(m))]
    while len(chosen) < kc:
        dist = np.empty(m)
        for i in range(m):
            if i in chosen:
                dist[i] = -1.0
            else:
                dist[i] = min(point_distance(points[i], points[c], code) for c in chosen)
        chosen.append(int(np.argmax(dist)))
    return points[chosen].copy()


def cluster_kmeans(
    profiles: list[SimilarityProfile],
    k_clusters: int,
    metric: str = "l2",
    seed: int = 0,
    restarts: int = 10,
    max_iter: int = 100,
) -> ClusterAssignment:
    """Cluster similarity profiles with restarted, seeded k-means.

    Runs ``restarts`` independent Lloyd descents (seeds seed, seed+1,
    ...) and keeps the best objective; ties keep the earliest seed, so
    results are deterministic.  Cluster ids are canonical: clusters are
    renamed c1, c2, ... by their lowest member variable index.  Under
    the cosine metric a zero profile has no direction, so such
    variables are flagged and parked in the "unassigned" cluster.
    """
    if not profiles:
        raise ValueError("varcluster: no profiles to cluster")
    if len({p.k for p in profiles}) != 1:
        raise ValueError("varcluster: profiles have mixed lengths")
    names = [p.variable for p in profiles]
    matrix = np.array([p.values for p in profiles], dtype=np.float64)

    excluded: list[str] = []
    active = np.arange(len(profiles))
    if metric not in METRICS:
        raise ValueError(f"varcluster: unknown metric {metric!r}, expected one of {sorted(METRICS)}")
    if metric == "cosine":
        norms = np.linalg.norm(matrix, axis=1)
        zero = norms == 0.0
        excluded = [names[i] for i in np.nonzero(zero)[0]]
        active = np.nonzero(~zero)[0]
    if not 1 <= k_clusters <= active.shape[0]:
        raise ValueError(
            f"varcluster: k_clusters must be in 1..{active.shape[0]}, got {k_clusters}"
        )

    points = matrix[active]
    code = METRICS[metric]
    best: LloydResult | None = None
    for attempt in range(restarts):
        init = _farthest_point_init(points, k_clusters, code, seed + attempt)
        result = lloyd(points, init, metric, max_iter)
        if best is None or result.objective < best.objective:
            best = result

    # canonical ids: order clusters by their lowest member variable index
    order = sorted(
        {int(lbl) for lbl in best.labels},
        key=lambda lbl: int(np.nonzero(best.labels == lbl)[0][0]),
    )
    rename = {lbl: f"c{rank + 1}" for rank, lbl in enumerate(order)}
    assignments: dict[str, str] = {}
    clusters: dict[str, list[str]] = {rename[lbl]: [] for lbl in order}
    for pos, orig in enumerate(active):
        cid = rename[int(best.labels[pos])]
        assignments[names[orig]] = cid
        clusters[cid].append(names[orig])
    if excluded:
        clusters[UNASSIGNED] = list(excluded)
        for name in excluded:
            assignments[name] = UNASSIGNED
    assignments = {name: assignments[name] for name in names}

    return ClusterAssignment(
        method="kmeans",
        assignments=assignments,
        clusters=clusters,
        metric=metric,
        objective=best.objective,
        n_iterations=len(best.history) - 1,
        excluded=excluded,
    )
