"""Relations, correspondences, distortion, and the exact Gromov-Hausdorff solver.

For finite spaces the GH distance is half the minimum distortion over all
correspondences; the minimum is attained because there are finitely many.
The solver decides feasibility of "some correspondence has distortion <= t"
for thresholds t drawn from the finite discrepancy multiset
{ |d_X(i,i') - d_Y(j,j')| }, so the optimum is found exactly, without any
epsilon scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    EmptyImage,
    EmptyRelation,
    IndexOutOfRange,
    NotACorrespondence,
    SizeCapExceeded,
)
from .metric import EuclideanPointSet, MetricLike, SubsetRef, as_subset, _row_chunks

ENUM_CELL_CAP = 25
DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class Relation:
    """A nonempty set of index pairs between two spaces."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.pairs:
            raise EmptyRelation("relation must be nonempty")
        object.__setattr__(self, "pairs", tuple(sorted(set(self.pairs))))

    @staticmethod
    def of(pairs: Iterable[Sequence[int]]) -> "Relation":
        return Relation(tuple((int(i), int(j)) for i, j in pairs))

    def check_ranges(self, nx: int, ny: int) -> None:
        for i, j in self.pairs:
            if not 0 <= i < nx:
                raise IndexOutOfRange(i, nx)
            if not 0 <= j < ny:
                raise IndexOutOfRange(j, ny)


@dataclass(frozen=True)
class Correspondence:
    """A relation whose projections onto both index sets are surjective."""

    pairs: tuple[tuple[int, int], ...]
    nx: int
    ny: int

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(set(self.pairs))))
        if not self.pairs:
            raise EmptyRelation("correspondence must be nonempty")
        Relation(self.pairs).check_ranges(self.nx, self.ny)
        left = {i for i, _ in self.pairs}
        right = {j for _, j in self.pairs}
        if len(left) != self.nx:
            missing = min(set(range(self.nx)) - left)
            raise NotACorrespondence(f"x-index {missing} is unmatched")
        if len(right) != self.ny:
            missing = min(set(range(self.ny)) - right)
            raise NotACorrespondence(f"y-index {missing} is unmatched")

    @staticmethod
    def of(pairs: Iterable[Sequence[int]], nx: int, ny: int) -> "Correspondence":
        return Correspondence(tuple((int(i), int(j)) for i, j in pairs), nx, ny)

    def as_relation(self) -> Relation:
        return Relation(self.pairs)


def is_correspondence(rel: Relation, nx: int, ny: int) -> bool:
    """True iff both projections of the relation are onto."""
    rel.check_ranges(nx, ny)
    return (len({i for i, _ in rel.pairs}) == nx
            and len({j for _, j in rel.pairs}) == ny)


# ---------------------------------------------------------------------------
# distortion and pushforward


def distortion(x: MetricLike, y: MetricLike, rel: Relation | Correspondence) -> float:
    """max over ordered pairs of matched pairs of | d_X(i,i') - d_Y(j,j') |."""
    pairs = rel.pairs
    if not pairs:
        raise EmptyRelation("relation must be nonempty")
    Relation(pairs).check_ranges(x.n, y.n)
    ii = np.fromiter((p[0] for p in pairs), dtype=np.intp)
    jj = np.fromiter((p[1] for p in pairs), dtype=np.intp)
    worst = 0.0
    for chunk in _row_chunks(ii.size, ii.size):
        dx = x.block(ii[chunk], ii)
        dy = y.block(jj[chunk], jj)
        worst = max(worst, float(np.abs(dx - dy).max()))
    return worst


def pushforward(rel: Relation | Correspondence, u: SubsetRef | Iterable[int]) -> SubsetRef:
    """Image of a subset of X under the relation: { j : (i,j) in rel, i in u }."""
    su = as_subset(u)
    members = set(su.indices)
    image = {j for i, j in rel.pairs if i in members}
    if not image:
        raise EmptyImage(f"subset {su.indices} meets no pair of the relation")
    return SubsetRef(tuple(sorted(image)))


# ---------------------------------------------------------------------------
# exhaustive enumeration (oracle-grade, tiny sizes only)


def _surjectivity_masks(nx: int, ny: int) -> tuple[list[int], list[int]]:
    rows = [((1 << ny) - 1) << (i * ny) for i in range(nx)]
    cols = [sum(1 << (i * ny + j) for i in range(nx)) for j in range(ny)]
    return rows, cols


def _valid_mask_chunks(nx: int, ny: int, chunk: int = 1 << 18) -> Iterator[np.ndarray]:
    """Ascending bitmask scan of all subsets of X x Y with surjective projections."""
    cells = nx * ny
    if cells > ENUM_CELL_CAP:
        raise SizeCapExceeded(cells, ENUM_CELL_CAP)
    rows, cols = _surjectivity_masks(nx, ny)
    total = 1 << cells
    for start in range(0, total, chunk):
        m = np.arange(start, min(start + chunk, total), dtype=np.int64)
        valid = np.ones(m.shape, dtype=bool)
        for mask in rows:
            valid &= (m & mask) != 0
        for mask in cols:
            valid &= (m & mask) != 0
        if valid.any():
            yield m[valid]


def enumerate_correspondences(nx: int, ny: int) -> Iterator[Correspondence]:
    """Yield every correspondence between index sets, in numeric bitmask order.

    Scans all 2^(nx*ny) subsets; refuses nx*ny > ENUM_CELL_CAP.
    """
    for masks in _valid_mask_chunks(nx, ny):
        for mask in masks.tolist():
            pairs = []
            m = mask
            while m:
                c = (m & -m).bit_length() - 1
                pairs.append((c // ny, c % ny))
                m &= m - 1
            yield Correspondence(tuple(pairs), nx, ny)


def count_correspondences(nx: int, ny: int) -> int:
    return sum(int(masks.size) for masks in _valid_mask_chunks(nx, ny))


def min_distortion_bruteforce(x: MetricLike, y: MetricLike) -> float:
    """Minimum distortion over all correspondences by full enumeration.

    Independent oracle for the branch-and-bound solver: no pruning, every
    surjective subset of X x Y is scanned and its distortion evaluated.
    """
    nx, ny = x.n, y.n
    cells = nx * ny
    dx = np.asarray(x.block(range(nx), range(nx)))
    dy = np.asarray(y.block(range(ny), range(ny)))
    # discrepancy between cells c=(i,j) and c'=(i',j')
    disc = np.abs(dx[:, None, :, None] - dy[None, :, None, :]).reshape(cells, cells)
    shifts = np.arange(cells, dtype=np.int64)
    best = math.inf
    for masks in _valid_mask_chunks(nx, ny, chunk=1 << 16):
        sel = ((masks[:, None] >> shifts[None, :]) & 1).astype(bool)
        pair_sel = sel[:, :, None] & sel[:, None, :]
        dis = (disc[None, :, :] * pair_sel).max(axis=(1, 2))
        best = min(best, float(dis.min()))
    return best


# ---------------------------------------------------------------------------
# exact solver


@dataclass(frozen=True)
class GhResult:
    value: float
    correspondence: Correspondence
    nodes: int
    optimal: bool

    @property
    def dis(self) -> float:
        return 2.0 * self.value


class _OutOfBudget(Exception):
    pass


class _Budget:
    __slots__ = ("left", "spent")

    def __init__(self, limit: int):
        self.left = limit
        self.spent = 0

    def spend(self) -> None:
        if self.left <= 0:
            raise _OutOfBudget
        self.left -= 1
        self.spent += 1


def _compat_tables(dx: np.ndarray, dy: np.ndarray, t: float) -> tuple[list[list[list[int]]], list[int]]:
    """Bitmask tables for threshold t.

    cross[i][i2][j] = mask of j2 with |dx[i,i2] - dy[j,j2]| <= t;
    row_ok[j] = mask of j2 with dy[j,j2] <= t (same-x-point constraint).
    """
    nx, ny = dx.shape[0], dy.shape[0]
    ok = np.abs(dx[:, :, None, None] - dy[None, None, :, :]) <= t
    weights = (1 << np.arange(ny, dtype=np.int64))
    masks = (ok.astype(np.int64) * weights[None, None, None, :]).sum(axis=-1)
    cross = [[[int(masks[i, i2, j]) for j in range(ny)] for i2 in range(nx)] for i in range(nx)]
    row_ok = [int(m) for m in ((dy <= t).astype(np.int64) * weights[None, :]).sum(axis=-1)]
    return cross, row_ok


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


def _feasible(nx: int, ny: int, cross, row_ok, force_in: list[int],
              forbid: list[int], budget: _Budget) -> list[int] | None:
    """Search for per-row selections forming a correspondence with dis <= t.

    force_in/forbid are per-row cell masks. Returns row masks of a witness,
    or None. Rows are processed in order; choosing S for a row propagates
    compatible-cell masks to later rows and prunes on empty rows or
    unreachable coverage.
    """
    full = (1 << ny) - 1
    allowed0 = [full & ~forbid[i] for i in range(nx)]
    witness = [0] * nx

    def try_candidate(s: int, level: int, allowed: list[int], covered: int) -> bool:
        budget.spend()
        if any(s & ~row_ok[j] for j in _iter_bits(s)):
            return False
        new_allowed = list(allowed)
        future = 0
        for i2 in range(level + 1, nx):
            a = allowed[i2]
            table = cross[level][i2]
            for j in _iter_bits(s):
                a &= table[j]
            if a == 0 or (force_in[i2] & ~a):
                return False
            new_allowed[i2] = a
            future |= a
        cov = covered | s
        if (cov | future) != full:
            return False
        witness[level] = s
        return rec(level + 1, new_allowed, cov)

    def rec(level: int, allowed: list[int], covered: int) -> bool:
        if level == nx:
            return covered == full
        base = allowed[level]
        must = force_in[level]
        if must & ~base:
            return False
        free = base & ~must
        sub = free
        while True:
            s = must | sub
            if s and try_candidate(s, level, allowed, covered):
                return True
            if sub == 0:
                return False
            sub = (sub - 1) & free

    return list(witness) if rec(0, allowed0, 0) else None


def _rows_to_pairs(rows: list[int], ny: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i, mask in enumerate(rows) for j in _iter_bits(mask))


def exact_gh(x: MetricLike, y: MetricLike, budget: int = DEFAULT_NODE_BUDGET) -> GhResult:
    """Exact Gromov-Hausdorff distance between two finite spaces.

    Binary-searches the sorted discrepancy multiset for the least feasible
    distortion threshold, then constructs the lexicographically smallest
    optimal correspondence cell by cell. If the node budget runs out, the
    best certified upper bound found so far is returned with optimal=False.
    """
    nx, ny = x.n, y.n
    if ny > 62 or nx > 62:
        raise ValueError("solver is sized for small spaces (at most 62 points per side)")
    dx = np.asarray(x.block(range(nx), range(nx)), dtype=np.float64)
    dy = np.asarray(y.block(range(ny), range(ny)), dtype=np.float64)
    thresholds = np.unique(np.abs(dx[:, :, None, None] - dy[None, None, :, :]))
    tracker = _Budget(budget)

    # the full product is always a correspondence; its distortion is max(thresholds)
    best_rows = [(1 << ny) - 1] * nx
    best_t = float(thresholds[-1])

    lo, hi = 0, len(thresholds) - 1
    no_force = [0] * nx
    proven = False
    try:
        while lo < hi:
            mid = (lo + hi) // 2
            t = float(thresholds[mid])
            cross, row_ok = _compat_tables(dx, dy, t)
            rows = _feasible(nx, ny, cross, row_ok, no_force, no_force, tracker)
            if rows is not None:
                hi = mid
                if t < best_t:
                    best_t, best_rows = t, rows
            else:
                lo = mid + 1
        proven = True
        t_star = float(thresholds[hi])

        # lexicographically smallest optimal correspondence, cell by cell
        cross, row_ok = _compat_tables(dx, dy, t_star)
        force_in = [0] * nx
        forbid = [0] * nx
        chosen_cols = 0
        for c in range(nx * ny):
            if all(force_in[i] for i in range(nx)) and chosen_cols == (1 << ny) - 1:
                break
            i, j = divmod(c, ny)
            trial = list(force_in)
            trial[i] |= 1 << j
            if _feasible(nx, ny, cross, row_ok, trial, forbid, tracker) is not None:
                force_in = trial
                chosen_cols |= 1 << j
            else:
                forbid[i] |= 1 << j
        best_rows, best_t = force_in, t_star
    except _OutOfBudget:
        pass

    corr = Correspondence(_rows_to_pairs(best_rows, ny), nx, ny)
    return GhResult(value=best_t / 2.0, correspondence=corr,
                    nodes=tracker.spent, optimal=proven)


def gh_upper_bound_from_correspondence(x: MetricLike, y: MetricLike,
                                       rel: Correspondence) -> float:
    """distortion(rel)/2: a certified upper bound on the GH distance."""
    if not isinstance(rel, Correspondence) or not is_correspondence(rel.as_relation(), x.n, y.n):
        raise NotACorrespondence("upper bound requires a correspondence")
    return distortion(x, y, rel) / 2.0


def _cross_block(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    dx = p[:, 0][:, None] - q[:, 0][None, :]
    dy = p[:, 1][:, None] - q[:, 1][None, :]
    return np.sqrt(dx * dx + dy * dy)


def nearest_point_correspondence(a: EuclideanPointSet, b: EuclideanPointSet) -> Correspondence:
    """Match every point of each set with its nearest point of the other.

    The union of both directed nearest-point maps is surjective onto both
    sides; ties resolve to the smallest index.
    """
    pairs: set[tuple[int, int]] = set()
    for chunk in _row_chunks(a.n, b.n):
        nearest = _cross_block(a.points[chunk], b.points).argmin(axis=1)
        pairs.update(zip(range(chunk.start, chunk.stop), nearest.tolist()))
    for chunk in _row_chunks(b.n, a.n):
        nearest = _cross_block(b.points[chunk], a.points).argmin(axis=1)
        pairs.update(zip(nearest.tolist(), range(chunk.start, chunk.stop)))
    return Correspondence(tuple(sorted(pairs)), a.n, b.n)


def ball_correspondence(a: EuclideanPointSet, b: EuclideanPointSet,
                        r: float) -> Correspondence:
    """Match every pair of points within planar distance ``r`` of each other.

    When ``r`` is at least the Hausdorff distance between the two sets this
    relation is a correspondence whose distortion is at most ``2 r``, so it
    certifies an upper bound of ``r`` on the GH distance.  A smaller ``r``
    leaves some point unmatched and raises :class:`NotACorrespondence`.
    """
    pairs: list[tuple[int, int]] = []
    for chunk in _row_chunks(a.n, b.n):
        ii, jj = np.nonzero(_cross_block(a.points[chunk], b.points) <= r)
        pairs.extend(zip((ii + chunk.start).tolist(), jj.tolist()))
    return Correspondence(tuple(pairs), a.n, b.n)
