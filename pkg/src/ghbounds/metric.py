"""Finite metric spaces, planar point sets, and set-level metric quantities.

Two interchangeable ambient backings are provided: ``FiniteMetricSpace``
stores a fully validated distance matrix, while ``EuclideanPointSet`` keeps
2-D coordinates and evaluates distance blocks on demand (a 10^4-point net
would need ~1 GB as a dense matrix, so large Euclidean ambients are never
materialized). All set-level operations accept either backing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import (
    DuplicatePoint,
    EmptySubset,
    IndexOutOfRange,
    NegativeEntry,
    NonpositiveLambda,
    NonzeroDiagonal,
    NotSymmetric,
    TriangleViolation,
    ZeroOffDiagonal,
)

DEFAULT_TOL = 1e-9

# cap on cells per distance block; aggregates chunk over rows beyond this
_BLOCK_CELLS = 4_000_000


@dataclass(frozen=True)
class SubsetRef:
    """A nonempty, sorted, duplicate-free tuple of indices into an ambient space."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if not self.indices:
            raise EmptySubset("subset must be nonempty")
        if any(self.indices[t] >= self.indices[t + 1] for t in range(len(self.indices) - 1)):
            raise ValueError("indices must be strictly increasing")
        if self.indices[0] < 0:
            raise IndexOutOfRange(self.indices[0], 0)

    @staticmethod
    def of(indices: Iterable[int], n: int | None = None) -> "SubsetRef":
        s = SubsetRef(tuple(sorted(set(int(i) for i in indices))))
        if n is not None:
            s.check_ambient(n)
        return s

    def check_ambient(self, n: int) -> None:
        if self.indices[-1] >= n:
            raise IndexOutOfRange(self.indices[-1], n)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in set(self.indices)


def as_subset(s: "SubsetRef | Iterable[int]", n: int | None = None) -> SubsetRef:
    if isinstance(s, SubsetRef):
        if n is not None:
            s.check_ambient(n)
        return s
    return SubsetRef.of(s, n)


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """n points with a full validated distance matrix. Immutable."""

    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def d(self, i: int, j: int) -> float:
        return float(self.matrix[i, j])

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        return self.matrix[np.ix_(np.asarray(rows, dtype=np.intp),
                                  np.asarray(cols, dtype=np.intp))]


@dataclass(frozen=True, eq=False)
class EuclideanPointSet:
    """Labeled 2-D points with pairwise-distinct coordinates.

    Distances are Euclidean and evaluated lazily in blocks, so the set can be
    large (fine nets) without a dense matrix.
    """

    points: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.float64))
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"points must have shape (n, 2), got {pts.shape}")
        if pts.shape[0] == 0:
            raise ValueError("point set must be nonempty")
        if not np.isfinite(pts).all():
            raise ValueError("coordinates must be finite")
        _check_distinct(pts)
        if self.labels is not None and len(self.labels) != pts.shape[0]:
            raise ValueError("labels length must match point count")
        object.__setattr__(self, "points", pts)
        self.points.setflags(write=False)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def d(self, i: int, j: int) -> float:
        dx = self.points[i, 0] - self.points[j, 0]
        dy = self.points[i, 1] - self.points[j, 1]
        return float(math.sqrt(dx * dx + dy * dy))

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        p, q = self.points[np.asarray(rows, dtype=np.intp)], self.points[np.asarray(cols, dtype=np.intp)]
        dx = p[:, 0][:, None] - q[:, 0][None, :]
        dy = p[:, 1][:, None] - q[:, 1][None, :]
        return np.sqrt(dx * dx + dy * dy)


MetricLike = Union[FiniteMetricSpace, EuclideanPointSet]


def _check_distinct(pts: np.ndarray) -> None:
    # exact duplicates only; nearby-but-distinct doubles are legitimate points
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    s = pts[order]
    same = np.nonzero((s[1:] == s[:-1]).all(axis=1))[0]
    if same.size:
        a, b = int(order[same[0]]), int(order[same[0] + 1])
        raise DuplicatePoint(min(a, b), max(a, b))


def _row_chunks(n_rows: int, n_cols: int) -> Iterator[slice]:
    step = max(1, _BLOCK_CELLS // max(1, n_cols))
    for s in range(0, n_rows, step):
        yield slice(s, min(s + step, n_rows))


# ---------------------------------------------------------------------------
# construction


def build_space(matrix: Sequence[Sequence[float]] | np.ndarray,
                tolerance: float = DEFAULT_TOL) -> FiniteMetricSpace:
    """Validate a distance matrix and wrap it as a FiniteMetricSpace.

    The triangle inequality is checked exhaustively over all index triples
    with additive tolerance; the first violating triple (lexicographic) is
    reported.
    """
    d = np.asarray(matrix, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"matrix must be square, got shape {d.shape}")
    if not np.isfinite(d).all():
        raise ValueError("matrix entries must be finite")
    n = d.shape[0]

    asym = np.abs(d - d.T) > tolerance
    if asym.any():
        i, j = map(int, np.argwhere(asym)[0])
        raise NotSymmetric(i, j, float(d[i, j]), float(d[j, i]))
    neg = d < -tolerance
    if neg.any():
        i, j = map(int, np.argwhere(neg)[0])
        raise NegativeEntry(i, j, float(d[i, j]))
    diag = np.abs(np.diagonal(d)) > tolerance
    if diag.any():
        i = int(np.argwhere(diag)[0][0])
        raise NonzeroDiagonal(i, float(d[i, i]))
    off = (np.abs(d) <= tolerance) & ~np.eye(n, dtype=bool)
    if off.any():
        i, j = map(int, np.argwhere(off)[0])
        raise ZeroOffDiagonal(i, j)

    # d[i,k] <= d[i,j] + d[j,k], all triples; chunk over i to bound memory
    step = max(1, _BLOCK_CELLS // max(1, n * n))
    for s in range(0, n, step):
        lhs = d[s:s + step, None, :]                      # [i, 1, k]
        rhs = d[s:s + step, :, None] + d[None, :, :]      # [i, j, k]
        bad = lhs > rhs + tolerance
        if bad.any():
            i, j, k = map(int, np.argwhere(bad)[0])
            i += s
            raise TriangleViolation(i, j, k, float(d[i, k]), float(d[i, j]), float(d[j, k]))
    return FiniteMetricSpace(d)


def induce_space(pts: EuclideanPointSet) -> FiniteMetricSpace:
    """Materialize the full Euclidean distance matrix of a (small) point set.

    The triangle inequality holds by construction and is not re-checked.
    """
    d = pts.block(range(pts.n), range(pts.n))
    np.fill_diagonal(d, 0.0)
    return FiniteMetricSpace(d)


# ---------------------------------------------------------------------------
# set-level quantities


def diam(space: MetricLike, s: "SubsetRef | Iterable[int]") -> float:
    """Largest pairwise distance within the subset; 0 for singletons."""
    sub = as_subset(s, space.n)
    idx = np.fromiter(sub.indices, dtype=np.intp)
    if idx.size == 1:
        return 0.0
    worst = 0.0
    for chunk in _row_chunks(idx.size, idx.size):
        worst = max(worst, float(space.block(idx[chunk], idx).max()))
    return worst


def set_distance(space: MetricLike, a: "SubsetRef | Iterable[int]",
                 b: "SubsetRef | Iterable[int]") -> float:
    """min over cross pairs; 0 when the subsets share a point."""
    sa, sb = as_subset(a, space.n), as_subset(b, space.n)
    ia = np.fromiter(sa.indices, dtype=np.intp)
    ib = np.fromiter(sb.indices, dtype=np.intp)
    best = math.inf
    for chunk in _row_chunks(ia.size, ib.size):
        best = min(best, float(space.block(ia[chunk], ib).min()))
    return best


def neighborhood(space: MetricLike, a: "SubsetRef | Iterable[int]", r: float) -> SubsetRef:
    """Open r-neighborhood: indices at distance strictly below r from the subset."""
    if r <= 0:
        raise ValueError(f"neighborhood radius must be positive, got {r}")
    sa = as_subset(a, space.n)
    ia = np.fromiter(sa.indices, dtype=np.intp)
    out: list[np.ndarray] = []
    for chunk in _row_chunks(space.n, ia.size):
        rows = np.arange(chunk.start, chunk.stop, dtype=np.intp)
        near = space.block(rows, ia).min(axis=1) < r
        out.append(rows[near])
    return SubsetRef(tuple(int(i) for i in np.concatenate(out)))


def directed_hausdorff(space: MetricLike, a: "SubsetRef | Iterable[int]",
                       b: "SubsetRef | Iterable[int]") -> float:
    """max over a of the distance to the nearest point of b."""
    sa, sb = as_subset(a, space.n), as_subset(b, space.n)
    ia = np.fromiter(sa.indices, dtype=np.intp)
    ib = np.fromiter(sb.indices, dtype=np.intp)
    worst = 0.0
    for chunk in _row_chunks(ia.size, ib.size):
        worst = max(worst, float(space.block(ia[chunk], ib).min(axis=1).max()))
    return worst


def hausdorff(space: MetricLike, a: "SubsetRef | Iterable[int]",
              b: "SubsetRef | Iterable[int]") -> float:
    """Hausdorff distance between two nonempty subsets of one ambient space.

    Computed as max(max-min, max-min); on finite sets this value is attained
    and coincides with the enclosing-neighborhood infimum.
    """
    return max(directed_hausdorff(space, a, b), directed_hausdorff(space, b, a))


def scale(space: FiniteMetricSpace, lam: float) -> FiniteMetricSpace:
    """Multiply all distances by lam > 0. Metric axioms are preserved."""
    if lam <= 0:
        raise NonpositiveLambda(lam)
    return FiniteMetricSpace(space.matrix * lam)


def scale_points(pts: EuclideanPointSet, lam: float) -> EuclideanPointSet:
    """Multiply all coordinates by lam > 0; distances scale by exactly lam."""
    if lam <= 0:
        raise NonpositiveLambda(lam)
    return EuclideanPointSet(pts.points * lam, pts.labels)


# ---------------------------------------------------------------------------
# isometry testing


def find_isometry(x: FiniteMetricSpace, y: FiniteMetricSpace,
                  tolerance: float = DEFAULT_TOL) -> list[int] | None:
    """Search for a distance-preserving bijection, within additive tolerance.

    Returns the lexicographically smallest witness (as the image list of
    x-indices in order), or None. Pruning: if a bijection matches pairwise
    within tol, sorted distance rows match entrywise within tol, so candidate
    images are restricted to rows with matching sorted profiles.
    """
    if x.n != y.n:
        return None
    n = x.n
    if n == 1:
        return [0]
    dx, dy = x.matrix, y.matrix
    if abs(dx.max() - dy.max()) > tolerance:
        return None
    if np.abs(np.sort(dx, axis=None) - np.sort(dy, axis=None)).max() > tolerance:
        return None

    rows_x = np.sort(dx, axis=1)
    rows_y = np.sort(dy, axis=1)
    candidates = [
        [j for j in range(n) if np.abs(rows_x[i] - rows_y[j]).max() <= tolerance]
        for i in range(n)
    ]

    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            if any(abs(dx[i, t] - dy[j, image[t]]) > tolerance for t in range(i)):
                continue
            image[i] = j
            used[j] = True
            if extend(i + 1):
                return True
            used[j] = False
        image[i] = -1
        return False

    return image.copy() if extend(0) else None


def is_isometric(x: FiniteMetricSpace, y: FiniteMetricSpace,
                 tolerance: float = DEFAULT_TOL) -> bool:
    return find_isometry(x, y, tolerance) is not None
