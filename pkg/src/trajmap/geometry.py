"""Ego-frame 2-D polyline primitives.

Coordinates are meters in the ego frame: x lateral, y longitudinal.
Point sets are (n, 2) float64 arrays; ``PointSet`` couples an array with
its open/closed kind, and ``PermutationGroup`` enumerates the point
orderings treated as equivalent for matching and losses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .validation import as_points_array

OPEN = "open"
CLOSED = "closed"


class MapElementClass(enum.Enum):
    PED_CROSSING = "ped_crossing"
    DIVIDER = "divider"
    BOUNDARY = "boundary"


# Label used by the actor branch for trajectory-derived supervision.
VIRTUAL_EDGE_LABEL = "virtual_edge"

MAP_CLASS_NAMES = tuple(c.value for c in MapElementClass)


@dataclass
class Trajectory:
    """One actor's recent ego-frame path, oldest point first."""

    actor_id: str
    points: np.ndarray

    def __post_init__(self):
        self.points = as_points_array(self.points, "trajectory points")
        if len(self.points) < 1:
            raise ValueError("trajectory must contain at least one point")


@dataclass
class PointSet:
    """Fixed-order 2-D point set, open polyline or closed polygon."""

    points: np.ndarray
    kind: str = OPEN

    def __post_init__(self):
        self.points = as_points_array(self.points, "point set")
        if self.kind not in (OPEN, CLOSED):
            raise ValueError(f"kind must be '{OPEN}' or '{CLOSED}', got {self.kind!r}")
        n = len(self.points)
        if self.kind == OPEN:
            if n < 2:
                raise ValueError("open point set needs at least 2 points")
            if np.array_equal(self.points[0], self.points[-1]):
                raise ValueError("open point set endpoints must be distinct")
        else:
            if n < 3:
                raise ValueError("closed point set needs at least 3 points")
            if np.array_equal(self.points[0], self.points[-1]):
                raise ValueError("closed point set must not repeat the closing vertex")

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class PermutationGroup:
    """Orderings of an n-point set treated as the same element.

    Open sets admit identity and full reversal (2 members); closed sets
    admit every cyclic shift in both orientations (2n members). Member 0
    is always the identity.
    """

    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in (OPEN, CLOSED):
            raise ValueError(f"kind must be '{OPEN}' or '{CLOSED}'")
        if self.size < 2:
            raise ValueError("group size must be >= 2")

    def __len__(self) -> int:
        return 2 if self.kind == OPEN else 2 * self.size

    def member(self, index: int) -> np.ndarray:
        """Index array mapping output position k to input position member[k]."""
        n = self.size
        base = np.arange(n)
        if self.kind == OPEN:
            if index == 0:
                return base
            if index == 1:
                return base[::-1].copy()
            raise IndexError("open group has exactly 2 members")
        if not 0 <= index < 2 * n:
            raise IndexError(f"closed group of size {n} has {2 * n} members")
        shift, reverse = index % n, index >= n
        return (shift - base) % n if reverse else (shift + base) % n

    def members(self):
        for i in range(len(self)):
            yield self.member(i)


def group_for(point_set: PointSet) -> PermutationGroup:
    return PermutationGroup(point_set.kind, len(point_set))


def apply_permutation(point_set: PointSet, member: np.ndarray) -> PointSet:
    """Reorder a point set by a group member's index array."""
    member = np.asarray(member)
    if member.shape != (len(point_set),):
        raise ValueError(
            f"permutation of length {member.shape} does not match point set of "
            f"size {len(point_set)}"
        )
    if not np.array_equal(np.sort(member), np.arange(len(point_set))):
        raise ValueError("member is not a permutation of the point indices")
    return PointSet(point_set.points[member], point_set.kind)


def normalize_trajectory(traj: Trajectory) -> Trajectory:
    """Merge consecutive duplicate points, preserving order."""
    pts = traj.points
    if len(pts) <= 1:
        return Trajectory(traj.actor_id, pts.copy())
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
    return Trajectory(traj.actor_id, pts[keep])


def _arc_lengths(pts: np.ndarray) -> np.ndarray:
    segs = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    return np.concatenate(([0.0], np.cumsum(segs)))


def polyline_length(points, closed: bool = False) -> float:
    pts = as_points_array(points)
    if closed:
        pts = np.vstack([pts, pts[:1]])
    return float(_arc_lengths(pts)[-1])


def resample(points, n_p: int, kind: str = OPEN) -> PointSet:
    """Resample a polyline/polygon to exactly n_p points by arc length.

    Open curves keep both endpoints; closed curves place samples at
    uniform perimeter intervals starting at the first vertex, with the
    wrap segment included.
    """
    if isinstance(points, PointSet):
        kind = points.kind
        pts = points.points
    else:
        pts = as_points_array(points)
    if n_p < 2:
        raise ValueError("n_p must be >= 2")
    distinct = 1 + int(np.sum(np.any(np.diff(pts, axis=0) != 0, axis=1)))
    if kind == OPEN and distinct < 2:
        raise ValueError("open input needs at least 2 distinct points")
    if kind == CLOSED and distinct < 3:
        raise ValueError("closed input needs at least 3 distinct points")

    if kind == CLOSED:
        pts = np.vstack([pts, pts[:1]])
    cum = _arc_lengths(pts)
    total = cum[-1]
    if total <= 0.0:
        raise ValueError("degenerate polyline")
    if kind == OPEN:
        targets = np.linspace(0.0, total, n_p)
    else:
        targets = np.arange(n_p) * (total / n_p)
    x = np.interp(targets, cum, pts[:, 0])
    y = np.interp(targets, cum, pts[:, 1])
    return PointSet(np.column_stack([x, y]), kind)


def consecutive_diff(v, kind: str = OPEN) -> np.ndarray:
    """Edge vectors v[k+1] - v[k]; closed sets include the wrap edge."""
    if isinstance(v, PointSet):
        kind = v.kind
        pts = v.points
    else:
        pts = as_points_array(v)
    if len(pts) < 2:
        raise ValueError("need at least 2 points to difference")
    if kind == CLOSED:
        pts = np.vstack([pts, pts[:1]])
    return np.diff(pts, axis=0)


def _left_normals(pts: np.ndarray) -> np.ndarray:
    """Unit left normal per segment: heading rotated +90 deg CCW."""
    d = np.diff(pts, axis=0)
    lengths = np.linalg.norm(d, axis=1)
    if np.any(lengths == 0.0):
        raise ValueError("zero-length segment; normalize the trajectory first")
    u = d / lengths[:, None]
    return np.column_stack([-u[:, 1], u[:, 0]])


def offset_curve(traj, d: float) -> np.ndarray:
    """Shift a path perpendicularly by signed distance d (positive = left).

    Endpoints move along their segment normal; interior vertices move
    along the normalized average of adjacent segment normals, scaled to
    the miter length and clamped to 2|d|.
    """
    pts = traj.points if isinstance(traj, Trajectory) else as_points_array(traj)
    if len(pts) < 2:
        raise ValueError("cannot offset")
    normals = _left_normals(pts)
    out = pts.copy()
    out[0] += d * normals[0]
    out[-1] += d * normals[-1]
    for k in range(1, len(pts) - 1):
        n_prev, n_next = normals[k - 1], normals[k]
        m = n_prev + n_next
        norm_m = np.linalg.norm(m)
        if norm_m < 1e-12:
            # Near-reversal corner: miter direction is undefined; fall back
            # to the incoming normal at the clamped miter length.
            out[k] += 2.0 * d * n_prev
            continue
        m_hat = m / norm_m
        scale = min(1.0 / float(m_hat @ n_prev), 2.0)
        out[k] += d * scale * m_hat
    return out


def _points_of(x) -> np.ndarray:
    if isinstance(x, PointSet):
        return x.points
    return as_points_array(x)


def chamfer_distance(p, q) -> float:
    """Symmetric mean nearest-point distance between two point sets."""
    a, b = _points_of(p), _points_of(q)
    if len(a) == 0 or len(b) == 0:
        raise ValueError("chamfer distance of an empty point set")
    d2 = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=2)
    d = np.sqrt(d2)
    return 0.5 * (float(d.min(axis=1).mean()) + float(d.min(axis=0).mean()))
