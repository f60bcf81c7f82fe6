"""Interactive numerical procedures: k-means, 2-component PCA, lasso.

All functions are pure and deterministic: identical inputs (including the
k-means seed) always produce identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

KMEANS_MAX_ITER = 300


class AnalyticsError(Exception):
    pass


class EmptyData(AnalyticsError):
    pass


class KTooLarge(AnalyticsError):
    pass


class TooFewRows(AnalyticsError):
    pass


class TooFewColumns(AnalyticsError):
    pass


class LengthMismatch(AnalyticsError):
    pass


class InvalidPolygon(AnalyticsError):
    pass


@dataclass(frozen=True)
class Clustering:
    k: int
    assignments: tuple[int, ...]
    centroids: np.ndarray
    inertia: float
    seed: int
    iterations: int
    inertia_history: tuple[float, ...] = ()


@dataclass(frozen=True)
class Embedding2D:
    coords: np.ndarray          # n x 2
    components: np.ndarray      # 2 x d, orthonormal rows
    explained_variance: tuple[float, float]
    mean: np.ndarray            # length d


@dataclass(frozen=True)
class Polygon:
    """Implicitly closed polygon with at least 3 distinct-in-sequence
    vertices; consecutive duplicates (including the closing wrap) are
    dropped at construction."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        verts = []
        for x, y in self.vertices:
            x, y = float(x), float(y)
            if not (np.isfinite(x) and np.isfinite(y)):
                raise InvalidPolygon("polygon vertices must be finite")
            if verts and verts[-1] == (x, y):
                continue
            verts.append((x, y))
        if len(verts) > 1 and verts[0] == verts[-1]:
            verts.pop()
        if len(verts) < 3:
            raise InvalidPolygon("polygon needs at least 3 distinct vertices")
        object.__setattr__(self, "vertices", tuple(verts))


def _nearest(data: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # argmin breaks ties by lowest centroid index
    d2 = ((data[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    return d2.argmin(axis=1)


def _inertia(data, centroids, assign) -> float:
    return float(((data - centroids[assign]) ** 2).sum())


def _kmeans_pp_init(data: np.ndarray, k: int, rng: np.random.Generator):
    n = data.shape[0]
    centers = [data[rng.integers(n)]]
    for _ in range(k - 1):
        d2 = np.min(
            ((data[:, None, :] - np.array(centers)[None, :, :]) ** 2).sum(
                axis=2
            ),
            axis=1,
        )
        total = d2.sum()
        if total <= 0:
            # all remaining points coincide with a chosen center
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers.append(data[idx])
    return np.array(centers, dtype=np.float64)


def kmeans(data: np.ndarray, k: int, seed: int) -> Clustering:
    """Lloyd's algorithm with k-means++ initialization (PCG64 PRNG).

    Stops when assignments are unchanged or after 300 iterations. Empty
    clusters are repaired by moving the point currently farthest from its
    centroid into the empty cluster.
    """
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 2 or data.shape[0] == 0:
        raise EmptyData("k-means needs at least one row")
    n = data.shape[0]
    if not 1 <= k <= n:
        raise KTooLarge(f"k={k} with only {n} rows")

    rng = np.random.Generator(np.random.PCG64(seed))
    centroids = _kmeans_pp_init(data, k, rng)
    assign = _nearest(data, centroids)
    prev_inertia = np.inf
    iterations = 0
    history = []

    for _ in range(KMEANS_MAX_ITER):
        iterations += 1
        new_centroids = centroids.copy()
        for j in range(k):
            members = data[assign == j]
            if len(members):
                new_centroids[j] = members.mean(axis=0)
        # empty-cluster repair: donate the farthest point
        for j in range(k):
            if not (assign == j).any():
                dist = ((data - new_centroids[assign]) ** 2).sum(axis=1)
                far = int(dist.argmax())
                assign[far] = j
                for jj in range(k):
                    members = data[assign == jj]
                    if len(members):
                        new_centroids[jj] = members.mean(axis=0)
        centroids = new_centroids
        new_assign = _nearest(data, centroids)
        cur = _inertia(data, centroids, new_assign)
        assert cur <= prev_inertia + 1e-9 * max(1.0, abs(prev_inertia))
        prev_inertia = cur
        history.append(cur)
        if (new_assign == assign).all():
            assign = new_assign
            break
        assign = new_assign

    return Clustering(
        k=k,
        assignments=tuple(int(a) for a in assign),
        centroids=centroids,
        inertia=_inertia(data, centroids, assign),
        seed=seed,
        iterations=iterations,
        inertia_history=tuple(history),
    )


def pca2(data: np.ndarray) -> Embedding2D:
    """Top-2 principal components via eigendecomposition of the sample
    covariance (divisor n-1).

    Sign convention: each component's largest-magnitude entry is positive.
    Zero-variance data yields all-zero coords and (0, 0) variances.
    """
    data = np.asarray(data, dtype=np.float64)
    n, d = data.shape
    if n < 2:
        raise TooFewRows("PCA needs at least 2 rows")
    if d < 2:
        raise TooFewColumns("PCA needs at least 2 columns")

    mean = data.mean(axis=0)
    centered = data - mean
    cov = centered.T @ centered / (n - 1)
    total_var = float(np.trace(cov))
    if total_var <= 0.0:
        components = np.zeros((2, d))
        components[0, 0] = 1.0
        components[1, 1] = 1.0
        return Embedding2D(
            coords=np.zeros((n, 2)),
            components=components,
            explained_variance=(0.0, 0.0),
            mean=mean,
        )

    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1][:2]
    components = eigvecs[:, order].T.copy()
    variances = np.clip(eigvals[order], 0.0, None)
    for i in range(2):
        pivot = int(np.abs(components[i]).argmax())
        if components[i, pivot] < 0:
            components[i] = -components[i]
    coords = centered @ components.T
    return Embedding2D(
        coords=coords,
        components=components,
        explained_variance=(float(variances[0]), float(variances[1])),
        mean=mean,
    )


def point_in_polygon(p: tuple[float, float], poly: Polygon) -> bool:
    """Even-odd ray-casting test; points exactly on an edge are inside."""
    x, y = float(p[0]), float(p[1])
    verts = poly.vertices
    n = len(verts)
    inside = False
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        # boundary check: collinear and within the segment's bounding box
        cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
        if (
            cross == 0.0
            and min(x1, x2) <= x <= max(x1, x2)
            and min(y1, y2) <= y <= max(y1, y2)
        ):
            return True
        if (y1 > y) != (y2 > y):
            x_int = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < x_int:
                inside = not inside
    return inside


def lasso_select(points: np.ndarray, row_ids, poly: Polygon) -> set:
    """Row ids whose (x, y) point falls inside the polygon."""
    points = np.asarray(points, dtype=np.float64)
    if len(points) != len(row_ids):
        raise LengthMismatch(
            f"{len(points)} points vs {len(row_ids)} row ids"
        )
    return {
        rid
        for rid, p in zip(row_ids, points)
        if point_in_polygon((p[0], p[1]), poly)
    }
