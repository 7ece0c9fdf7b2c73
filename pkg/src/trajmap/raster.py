"""Binary BEV trajectory rasterization and world/pixel conversions.

Grid convention: row 0 is the top of the grid (largest y), column 0 the
left (smallest x). Cell (r, c) covers the half-open square
[x_min + c*res, x_min + (c+1)*res) x (y_max - (r+1)*res, y_max - r*res].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Trajectory
from .validation import check_positive


@dataclass(frozen=True)
class BevSpec:
    """Perception range and resolution of the BEV grid."""

    x_range: tuple[float, float] = (-15.0, 15.0)
    y_range: tuple[float, float] = (-30.0, 30.0)
    resolution: float = 0.3

    def __post_init__(self):
        check_positive(self.resolution, "resolution")
        for axis, (lo, hi) in (("x", self.x_range), ("y", self.y_range)):
            if not lo < hi:
                raise ValueError(f"{axis}_range must satisfy min < max")
            cells = (hi - lo) / self.resolution
            if abs(cells - round(cells)) > 1e-9 or round(cells) < 1:
                raise ValueError(
                    f"{axis}_range extent must be a positive multiple of resolution"
                )

    @property
    def width(self) -> int:
        return round((self.x_range[1] - self.x_range[0]) / self.resolution)

    @property
    def height(self) -> int:
        return round((self.y_range[1] - self.y_range[0]) / self.resolution)


@dataclass
class TrajectoryImage:
    """Binary occupancy grid of recent actor paths."""

    spec: BevSpec
    grid: np.ndarray

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=np.uint8)
        if self.grid.shape != (self.spec.height, self.spec.width):
            raise ValueError(
                f"grid shape {self.grid.shape} does not match spec "
                f"({self.spec.height}, {self.spec.width})"
            )
        if not np.all((self.grid == 0) | (self.grid == 1)):
            raise ValueError("grid cells must be 0 or 1")


def world_to_pixel(point, spec: BevSpec) -> tuple[int, int] | None:
    """Cell (row, col) containing an ego-frame point, or None if outside."""
    x, y = float(point[0]), float(point[1])
    col = int(np.floor((x - spec.x_range[0]) / spec.resolution))
    row = int(np.floor((spec.y_range[1] - y) / spec.resolution))
    if not (0 <= col < spec.width and 0 <= row < spec.height):
        return None
    return row, col


def pixel_to_world(rc: tuple[int, int], spec: BevSpec) -> tuple[float, float]:
    """Center point of a grid cell."""
    row, col = rc
    if not (0 <= row < spec.height and 0 <= col < spec.width):
        raise ValueError(f"cell {rc} outside {spec.height}x{spec.width} grid")
    x = spec.x_range[0] + (col + 0.5) * spec.resolution
    y = spec.y_range[1] - (row + 0.5) * spec.resolution
    return x, y


def _to_grid_coords(pts: np.ndarray, spec: BevSpec) -> np.ndarray:
    """Continuous (u, v) pixel coordinates: u along columns, v along rows."""
    u = (pts[:, 0] - spec.x_range[0]) / spec.resolution
    v = (spec.y_range[1] - pts[:, 1]) / spec.resolution
    return np.column_stack([u, v])


def _clip_to_box(p0, p1, w, h):
    """Liang-Barsky clip of segment p0-p1 to [0, w] x [0, h]; None if outside."""
    d = p1 - p0
    t0, t1 = 0.0, 1.0
    for delta, lo_gap, hi_gap in (
        (d[0], p0[0] - 0.0, w - p0[0]),
        (d[1], p0[1] - 0.0, h - p0[1]),
    ):
        if delta == 0.0:
            if lo_gap < 0.0 or hi_gap < 0.0:
                return None
            continue
        r_lo = -lo_gap / delta
        r_hi = hi_gap / delta
        t_enter, t_exit = (r_lo, r_hi) if delta > 0 else (r_hi, r_lo)
        t0 = max(t0, t_enter)
        t1 = min(t1, t_exit)
        if t0 > t1:
            return None
    return p0 + t0 * d, p0 + t1 * d


def _cell_index(value: float, count: int) -> int:
    """floor clamped into [0, count-1] so box-boundary points land in a cell."""
    return min(max(int(np.floor(value)), 0), count - 1)


def supercover_cells(p0, p1, width: int, height: int) -> list[tuple[int, int]]:
    """All grid cells whose closed unit square the segment intersects.

    Coordinates are continuous pixel units; the segment is clipped to the
    grid box first. Crossings exactly through a lattice corner add both
    diagonal neighbours (classic supercover behaviour).
    """
    clipped = _clip_to_box(np.asarray(p0, float), np.asarray(p1, float), width, height)
    if clipped is None:
        return []
    a, b = clipped
    cells: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()

    def visit(cx: int, cy: int):
        if 0 <= cx < width and 0 <= cy < height and (cx, cy) not in seen:
            seen.add((cx, cy))
            cells.append((cy, cx))

    d = b - a
    cx, cy = _cell_index(a[0], width), _cell_index(a[1], height)
    end_cx, end_cy = _cell_index(b[0], width), _cell_index(b[1], height)
    visit(cx, cy)
    if d[0] == 0.0 and d[1] == 0.0:
        return cells

    step_x = 1 if d[0] > 0 else -1
    step_y = 1 if d[1] > 0 else -1
    # Parameter t at which the ray crosses the next vertical / horizontal line.
    if d[0] != 0.0:
        next_vx = cx + (1 if step_x > 0 else 0)
        t_max_x = (next_vx - a[0]) / d[0]
        t_dx = abs(1.0 / d[0])
    else:
        t_max_x, t_dx = np.inf, np.inf
    if d[1] != 0.0:
        next_vy = cy + (1 if step_y > 0 else 0)
        t_max_y = (next_vy - a[1]) / d[1]
        t_dy = abs(1.0 / d[1])
    else:
        t_max_y, t_dy = np.inf, np.inf

    steps_left = width + height + 4
    while (cx, cy) != (end_cx, end_cy) and steps_left > 0:
        steps_left -= 1
        if t_max_x < t_max_y:
            cx += step_x
            t_max_x += t_dx
        elif t_max_y < t_max_x:
            cy += step_y
            t_max_y += t_dy
        else:
            # Exact corner crossing: the segment touches both diagonal
            # neighbours of the corner.
            visit(cx + step_x, cy)
            visit(cx, cy + step_y)
            cx += step_x
            cy += step_y
            t_max_x += t_dx
            t_max_y += t_dy
        visit(cx, cy)
    visit(end_cx, end_cy)
    return cells


def rasterize(
    trajectories: list[Trajectory], spec: BevSpec, points_only: bool = False
) -> TrajectoryImage:
    """Union of all actors' paths as a binary grid.

    Consecutive samples are connected by supercover line segments unless
    points_only is set, in which case only the sampled cells are marked.
    Out-of-range portions are clipped away.
    """
    grid = np.zeros((spec.height, spec.width), dtype=np.uint8)
    for traj in trajectories:
        pts = traj.points
        if len(pts) == 1 or points_only:
            for p in pts:
                rc = world_to_pixel(p, spec)
                if rc is not None:
                    grid[rc] = 1
            continue
        gc = _to_grid_coords(pts, spec)
        for k in range(len(gc) - 1):
            for r, c in supercover_cells(gc[k], gc[k + 1], spec.width, spec.height):
                grid[r, c] = 1
    return TrajectoryImage(spec, grid)
