"""Generators for the concrete geometry: lattice windows, fine nets, the chess
coloring, the comb set with its two-family cover, and brick/interval covers.

All generators are deterministic: identical parameters give byte-identical
point orders and family memberships. Grid coordinates are emitted as single
products k*step (never cumulative sums) so that coincident points of aligned
grids compare exactly equal and deduplicate cleanly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .covers import SubsetFamily
from .errors import (
    DeltaNotDividingOne,
    EmptyWindow,
    HTooSmall,
    LTooSmall,
    NonIntegerPoint,
    TooManyPoints,
)
from .metric import EuclideanPointSet, SubsetRef, as_subset

POINT_CAP = 1_000_000
_GRID_TOL = 1e-9
MIN_PIECE_HEIGHT = math.sqrt(3.0)


@dataclass(frozen=True)
class WindowSpec:
    """Closed axis-aligned rectangle; 1-D generators use only the x-range.

    Degenerate ranges (xmax == xmin) are allowed — a window may hold a single
    row, column, or point.
    """

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        if self.xmax < self.xmin or self.ymax < self.ymin:
            raise EmptyWindow(f"window [{self.xmin},{self.xmax}]x[{self.ymin},{self.ymax}] is empty")

    @staticmethod
    def parse(text: str) -> "WindowSpec":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError("window must be 'xmin,xmax,ymin,ymax'")
        return WindowSpec(*parts)

    @staticmethod
    def square(size: float) -> "WindowSpec":
        return WindowSpec(0.0, float(size), 0.0, float(size))


def _grid_coords(lo: float, hi: float, step: float, pad_edges: bool) -> np.ndarray:
    """Multiples of step inside [lo, hi], optionally with the exact edges added.

    Tolerance-adjusted index bounds absorb division rounding; coordinates are
    single products, so aligned grids share bit-identical values.
    """
    k0 = math.ceil(lo / step - _GRID_TOL)
    k1 = math.floor(hi / step + _GRID_TOL)
    coords = np.arange(k0, k1 + 1, dtype=np.float64) * step
    if pad_edges:
        edge_tol = _GRID_TOL * max(1.0, abs(lo), abs(hi))
        if coords.size == 0 or coords[0] > lo + edge_tol:
            coords = np.concatenate(([lo], coords))
        if coords[-1] < hi - edge_tol:
            coords = np.concatenate((coords, [hi]))
    return coords


def _cross_product_points(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    px = np.repeat(xs, ys.size)
    py = np.tile(ys, xs.size)
    return np.column_stack((px, py))


def gen_lattice_window(w: WindowSpec) -> EuclideanPointSet:
    """All integer points in the closed window, in (x, y)-lexicographic order."""
    xs = _grid_coords(w.xmin, w.xmax, 1.0, pad_edges=False)
    ys = _grid_coords(w.ymin, w.ymax, 1.0, pad_edges=False)
    if xs.size == 0 or ys.size == 0:
        raise EmptyWindow("window contains no integer point")
    if xs.size * ys.size > POINT_CAP:
        raise TooManyPoints(int(xs.size * ys.size), POINT_CAP)
    labels = tuple(f"({int(x)},{int(y)})" for x in xs for y in ys)
    return EuclideanPointSet(_cross_product_points(xs, ys), labels)


def gen_epsilon_net(w: WindowSpec, eps: float, cap: int = POINT_CAP) -> EuclideanPointSet:
    """Grid of spacing eps covering the closed window.

    Coordinates are multiples of eps, so the grid passes through (xmin, ymin)
    whenever the window corners are themselves multiples of eps (every window
    used by the bundled experiments); otherwise the exact window edges are
    appended. Either way each window point is within eps*sqrt(2)/2 of the net.
    """
    if eps <= 0:
        raise ValueError("net spacing must be positive")
    xs = _grid_coords(w.xmin, w.xmax, eps, pad_edges=True)
    ys = _grid_coords(w.ymin, w.ymax, eps, pad_edges=True)
    if xs.size * ys.size > cap:
        raise TooManyPoints(int(xs.size * ys.size), cap)
    return EuclideanPointSet(_cross_product_points(xs, ys))


def _integer_coords(pts: np.ndarray) -> np.ndarray:
    ij = np.rint(pts)
    err = np.abs(pts - ij).max(axis=1)
    bad = np.nonzero(err > _GRID_TOL)[0]
    if bad.size:
        i = int(bad[0])
        raise NonIntegerPoint(i, (float(pts[i, 0]), float(pts[i, 1])))
    return ij.astype(np.int64)


def gen_chess_families(lattice: EuclideanPointSet) -> tuple[SubsetFamily, SubsetFamily]:
    """Chess coloring: red singletons where x+y is even, blue where odd.

    On any window containing a diagonal pair, each family's min gap is
    sqrt(2), realized by same-color diagonal neighbors.
    """
    ij = _integer_coords(lattice.points)
    parity = (ij[:, 0] + ij[:, 1]) % 2
    red = tuple(as_subset([int(i)]) for i in np.nonzero(parity == 0)[0])
    blue = tuple(as_subset([int(i)]) for i in np.nonzero(parity == 1)[0])
    return SubsetFamily("red", red), SubsetFamily("blue", blue)


def gen_comb_set(w: WindowSpec, delta: float) -> EuclideanPointSet:
    """delta-spaced samples of the horizontal axis plus every vertical integer
    line inside the window, deduplicated at the crossings.

    delta must divide 1 so axis samples land exactly on the crossings.
    Points come out (x, y)-lexicographically sorted.
    """
    if delta <= 0 or abs(1.0 / delta - round(1.0 / delta)) > _GRID_TOL:
        raise DeltaNotDividingOne(delta)
    rows = []
    if w.ymin <= 0.0 <= w.ymax:
        axis_x = _grid_coords(w.xmin, w.xmax, delta, pad_edges=False)
        rows.append(np.column_stack((axis_x, np.zeros_like(axis_x))))
    line_x = _grid_coords(w.xmin, w.xmax, 1.0, pad_edges=False)
    line_y = _grid_coords(w.ymin, w.ymax, delta, pad_edges=False)
    for x in line_x:
        rows.append(np.column_stack((np.full_like(line_y, x), line_y)))
    if not rows:
        raise EmptyWindow("window meets neither the axis nor a vertical line")
    pts = np.unique(np.concatenate(rows), axis=0)
    if pts.shape[0] > POINT_CAP:
        raise TooManyPoints(int(pts.shape[0]), POINT_CAP)
    return EuclideanPointSet(pts)


def _comb_piece_key(x: float, y: float, h: float) -> tuple:
    """Assign a sample to its unique cover piece.

    Crossing piece P_n owns the vertical stretch |y| <= h/2 of line n plus the
    axis bar [n-1/2, n+1/2) (half-open, so bar samples split cleanly).
    Off-axis stretches S_(n,k) own (h/2 + k*h, h/2 + (k+1)*h] of line n, above
    and mirrored below; at a shared boundary the piece nearer the axis wins.
    Sort order of the keys fixes member order inside each family.
    """
    if abs(y) <= _GRID_TOL:
        n = math.floor(x + 0.5 + _GRID_TOL)
        return (n, 0, 0, 0)
    n = round(x)
    if abs(x - n) > _GRID_TOL:
        raise NonIntegerPoint(-1, (x, y))
    a = abs(y)
    if a <= h / 2 + _GRID_TOL:
        return (n, 0, 0, 0)
    k = math.ceil((a - h / 2) / h - _GRID_TOL) - 1
    side = 1 if y > 0 else -1
    return (n, 1, k, side)


def _piece_color(key: tuple) -> int:
    n, kind, k, _side = key
    return n % 2 if kind == 0 else (n + k + 1) % 2


def gen_comb_cover(comb: EuclideanPointSet, h: float = 2.0) -> tuple[SubsetFamily, SubsetFamily]:
    """Two-family cover of a comb window by crossing pieces and line stretches.

    Pieces: P_n = vertical segment {n} x [-h/2, h/2] plus axis bar
    [n-1/2, n+1/2) x {0}, colored by parity of n; S_(n,k) = kth stretch of
    height h further out on line n (above and below), colored by parity of
    n+k+1. Every same-color pair of pieces is then at distance >= 1 provided
    h >= sqrt(3) (the binding corner pair (n±1/2, 0) to (n±1, h/2) has gap
    sqrt(1/4 + h^2/4)); with the default h=2 the max piece diameter is 2.
    """
    if h < MIN_PIECE_HEIGHT - 1e-12:
        raise HTooSmall(h, MIN_PIECE_HEIGHT)
    groups: dict[tuple, list[int]] = {}
    for idx, (x, y) in enumerate(comb.points):
        try:
            key = _comb_piece_key(float(x), float(y), h)
        except NonIntegerPoint:
            raise NonIntegerPoint(idx, (float(x), float(y))) from None
        groups.setdefault(key, []).append(idx)
    members: dict[int, list[SubsetRef]] = {0: [], 1: []}
    for key in sorted(groups):
        members[_piece_color(key)].append(as_subset(groups[key]))
    return (SubsetFamily("red", tuple(members[0])),
            SubsetFamily("blue", tuple(members[1])))


_BRICK_LABELS = ("red", "blue", "green")


def gen_brick_cover(w: WindowSpec, r: float, L: float | None = None,
                    spacing: float | None = None,
                    net: EuclideanPointSet | None = None,
                    ) -> tuple[EuclideanPointSet, tuple[SubsetFamily, SubsetFamily, SubsetFamily]]:
    """Brick-wall 3-coloring of a window net: same-color gap >= L/2, diam <= L*sqrt(2).

    Brick (i,j) spans x in [iL + jL/2, (i+1)L + jL/2), y in [jL, (j+1)L);
    color = (i - j) mod 3. Rows shift by half a brick, so the adjacency graph
    is triangular and three colors separate: every neighbor of (i,j) — (i±1,j),
    (i,j±1), (i-1,j+1), (i+1,j-1) — differs mod 3, and the nearest same-color
    bricks, e.g. (i,j) and (i+1,j+1), are offset by 3L/2 in x.
    """
    if r <= 0:
        raise ValueError("separation r must be positive")
    if L is None:
        L = 3.0 * r
    if L < 2.0 * r - 1e-12:
        raise LTooSmall(L, r)
    if net is None:
        net = gen_epsilon_net(w, spacing if spacing is not None else r / 4.0)
    x, y = net.points[:, 0], net.points[:, 1]
    j = np.floor(y / L + _GRID_TOL).astype(np.int64)
    i = np.floor((x - j * (L / 2.0)) / L + _GRID_TOL).astype(np.int64)
    color = (i - j) % 3
    fams = []
    for c in range(3):
        keys: dict[tuple[int, int], list[int]] = {}
        for idx in np.nonzero(color == c)[0]:
            keys.setdefault((int(i[idx]), int(j[idx])), []).append(int(idx))
        fams.append(SubsetFamily(_BRICK_LABELS[c],
                                 tuple(as_subset(keys[k]) for k in sorted(keys))))
    return net, (fams[0], fams[1], fams[2])


def gen_interval_cover(w: WindowSpec, r: float, L: float | None = None,
                       spacing: float | None = None,
                       ) -> tuple[EuclideanPointSet, tuple[SubsetFamily, SubsetFamily]]:
    """1-D analogue on the window's x-range: intervals [kL, (k+1)L) by parity of k.

    Same-color intervals are a full interval apart, so the gap is L >= 2r; each
    member's diameter is below L.
    """
    if r <= 0:
        raise ValueError("separation r must be positive")
    if L is None:
        L = 3.0 * r
    if L < 2.0 * r - 1e-12:
        raise LTooSmall(L, r)
    xs = _grid_coords(w.xmin, w.xmax, spacing if spacing is not None else r / 4.0, pad_edges=True)
    net = EuclideanPointSet(np.column_stack((xs, np.zeros_like(xs))))
    k = np.floor(xs / L + _GRID_TOL).astype(np.int64)
    fams = []
    for parity in (0, 1):
        keys: dict[int, list[int]] = {}
        for idx in np.nonzero(k % 2 == parity)[0]:
            keys.setdefault(int(k[idx]), []).append(int(idx))
        fams.append(SubsetFamily(("red", "blue")[parity],
                                 tuple(as_subset(keys[kk]) for kk in sorted(keys))))
    return net, (fams[0], fams[1])


def merge_point_sets(a: EuclideanPointSet, b: EuclideanPointSet,
                     ) -> tuple[EuclideanPointSet, SubsetRef, SubsetRef]:
    """One ambient set from two, collapsing bit-identical duplicates.

    Returns the merged set (lexicographically sorted) plus each input's index
    set inside it, so cross-set quantities (Hausdorff distance, set distance)
    can be computed in a single space.
    """
    stacked = np.concatenate((a.points, b.points))
    merged, inverse = np.unique(stacked, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    sub_a = as_subset(np.unique(inverse[: a.n]).tolist())
    sub_b = as_subset(np.unique(inverse[a.n:]).tolist())
    return EuclideanPointSet(merged), sub_a, sub_b
