"""Plane projection of the integer embedding, as an upward drawing.

The d realizer axes are mapped onto d unit vectors fanned symmetrically
around vertical, equally spaced within +-spread degrees.  Every
direction has a strictly positive y component and all coordinates
strictly increase along comparable pairs, so any axis assignment yields
an upward drawing for free.  The assignment (which realizer axis goes to
which fan direction, plus an optional horizontal mirror) is chosen by
exhaustive search to minimize edge crossings.  A final repair pass
nudges nodes horizontally off any non-incident edge they touch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from .embedding import DimEmbedding
from .errors import ContractViolation, RepairFailed

DEFAULT_SPREAD_DEG = 45.0
DEFAULT_ASSIGNMENT_CAP = 8
DEFAULT_REPAIR_EPS = 1e-3
DEFAULT_REPAIR_ROUNDS = 100
_REPAIR_MAX_STEPS = 64


@dataclass(frozen=True)
class AxisFrame:
    """Projection directions (cos t, sin t), all pointing upward."""

    directions: tuple[tuple[float, float], ...]
    spread: float


@dataclass(frozen=True)
class Layout:
    """Plane positions per concept plus the cover edges drawn between them."""

    points: tuple[tuple[float, float], ...]
    edges: tuple[tuple[int, int], ...]
    crossings: int
    frame: AxisFrame
    assignment: tuple[int, ...]
    mirrored: bool = False


@dataclass(frozen=True)
class BestAssignment:
    """Result of the crossing-minimizing search; ``exhaustive`` is False
    when the dimension exceeded the cap and the identity fallback was used."""

    assignment: tuple[int, ...]
    layout: Layout
    exhaustive: bool


def default_frame(d: int, spread_deg: float = DEFAULT_SPREAD_DEG) -> AxisFrame:
    """Equally spaced directions with angles in [90-spread, 90+spread],
    descending; a single vertical axis for d = 1."""
    if d < 1:
        raise ValueError("need at least one direction")
    if not 0.0 < spread_deg < 90.0:
        raise ValueError("spread must be strictly between 0 and 90 degrees")
    if d == 1:
        thetas = [90.0]
    else:
        step = 2.0 * spread_deg / (d - 1)
        thetas = [90.0 + spread_deg - i * step for i in range(d)]

    def component(value: float) -> float:
        # cos(pi/2) is ~6e-17 in doubles; snap so vertical means vertical
        return 0.0 if abs(value) < 1e-15 else value

    dirs = tuple((component(math.cos(math.radians(t))),
                  component(math.sin(math.radians(t))))
                 for t in thetas)
    return AxisFrame(directions=dirs, spread=spread_deg)


def _cross(o: tuple[float, float], a: tuple[float, float],
           b: tuple[float, float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _proper_crossing(p1, p2, q1, q2) -> bool:
    """Open-interior crossing: strict orientation flips on both segments."""
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def _count_crossings(points, edges) -> int:
    total = 0
    for i in range(len(edges)):
        a, b = edges[i]
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if a in (c, d) or b in (c, d):
                continue
            if _proper_crossing(points[a], points[b], points[c], points[d]):
                total += 1
    return total


def count_crossings(layout: Layout) -> int:
    """Unordered edge pairs meeting in exactly one interior point
    (pairs sharing an endpoint excluded)."""
    return _count_crossings(layout.points, layout.edges)


def project(e: DimEmbedding, frame: AxisFrame,
            assignment: tuple[int, ...] | list[int], *,
            mirrored: bool = False) -> Layout:
    """Linear projection: point(C) = sum_i coords_i(C) * direction[assignment[i]].

    Upwardness along every cover edge is guaranteed by construction and
    asserted; so is pairwise distinctness of the points.
    """
    assignment = tuple(assignment)
    d = e.dim
    if sorted(assignment) != list(range(d)) or len(frame.directions) != d:
        raise ValueError("assignment must permute the frame directions")
    dirs = [frame.directions[assignment[i]] for i in range(d)]
    sign = -1.0 if mirrored else 1.0
    points = tuple(
        (sign * sum(c[i] * dirs[i][0] for i in range(d)),
         sum(c[i] * dirs[i][1] for i in range(d)))
        for c in e.coords)

    for lo, hi in e.covers:
        if not points[lo][1] < points[hi][1]:
            raise ContractViolation(f"cover edge ({lo}, {hi}) is not upward")
    if len(set(points)) != len(points):
        raise ContractViolation("two concepts share a projected point")

    return Layout(points=points, edges=e.covers,
                  crossings=_count_crossings(points, e.covers),
                  frame=frame, assignment=assignment, mirrored=mirrored)


def best_assignment(e: DimEmbedding, frame: AxisFrame, *,
                    cap: int = DEFAULT_ASSIGNMENT_CAP) -> BestAssignment:
    """Exhaust axis permutations x optional mirror, minimizing crossings.

    Ties break to the lexicographically smallest permutation, then to the
    non-mirrored variant.  Above the cap (d! search space) the identity
    assignment is returned with ``exhaustive=False``.
    """
    d = e.dim
    identity = tuple(range(d))
    if d > cap:
        return BestAssignment(identity, project(e, frame, identity), False)
    best: Layout | None = None
    for perm in permutations(range(d)):
        for mirrored in (False, True):
            layout = project(e, frame, perm, mirrored=mirrored)
            if best is None or layout.crossings < best.crossings:
                best = layout
    assert best is not None
    return BestAssignment(best.assignment, best, True)


def normalize(layout: Layout) -> Layout:
    """Scale and translate so the bounding box is the unit square.

    Each axis maps onto [0, 1] independently; a degenerate span collapses
    to 0.  Crossings are unaffected (positive affine map) but recomputed
    for consistency.
    """
    xs = [p[0] for p in layout.points]
    ys = [p[1] for p in layout.points]
    if not xs:
        return layout

    def scaler(lo: float, hi: float):
        span = hi - lo
        if span <= 0.0:
            return lambda v: 0.0
        return lambda v: (v - lo) / span

    fx = scaler(min(xs), max(xs))
    fy = scaler(min(ys), max(ys))
    points = tuple((fx(x), fy(y)) for x, y in layout.points)
    return Layout(points=points, edges=layout.edges,
                  crossings=_count_crossings(points, layout.edges),
                  frame=layout.frame, assignment=layout.assignment,
                  mirrored=layout.mirrored)


def _segment_distance(p, a, b) -> float:
    vx, vy = b[0] - a[0], b[1] - a[1]
    wx, wy = p[0] - a[0], p[1] - a[1]
    norm2 = vx * vx + vy * vy
    if norm2 <= 0.0:
        return math.hypot(wx, wy)
    t = (wx * vx + wy * vy) / norm2
    t = 0.0 if t < 0.0 else 1.0 if t > 1.0 else t
    return math.hypot(wx - t * vx, wy - t * vy)


def repair_incidences(layout: Layout,
                      eps: float = DEFAULT_REPAIR_EPS, *,
                      max_rounds: int = DEFAULT_REPAIR_ROUNDS) -> Layout:
    """Nudge nodes horizontally until none touches a non-incident edge.

    A node offends when it lies within eps (relative to the bounding-box
    diagonal) of an edge it is not an endpoint of.  Offending nodes are
    visited in index order and moved by +-k*delta (delta = 2*eps
    relative, alternating sign, smallest k first); y never changes, so
    upwardness survives.  Candidate positions never leave the input
    bounding box, which keeps the relative tolerance monotone and the
    operation idempotent.  Raises RepairFailed with the offending
    (node, edge) pairs when a round cap or a no-progress round is hit.
    """
    points = [tuple(p) for p in layout.points]
    edges = layout.edges
    if not points or not edges:
        return layout

    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_lo, x_hi = min(xs), max(xs)
    diag = math.hypot(x_hi - x_lo, max(ys) - min(ys))
    if diag <= 0.0:
        diag = 1.0
    threshold = eps * diag
    delta = 2.0 * eps * diag

    def offenders() -> list[tuple[int, tuple[int, int]]]:
        found = []
        for node in range(len(points)):
            for u, v in edges:
                if node == u or node == v:
                    continue
                if _segment_distance(points[node], points[u], points[v]) < threshold:
                    found.append((node, (u, v)))
        return found

    def clear_at(node: int, x: float) -> bool:
        candidate = (x, points[node][1])
        for other, p in enumerate(points):
            if other != node and p == candidate:
                return False
        for u, v in edges:
            if node == u or node == v:
                continue
            if _segment_distance(candidate, points[u], points[v]) < threshold:
                return False
        return True

    for _ in range(max_rounds):
        current = offenders()
        if not current:
            break
        moved = False
        for node in sorted({n for n, _ in current}):
            base_x = points[node][0]
            for k in range(1, _REPAIR_MAX_STEPS + 1):
                done = False
                for sign in (1.0, -1.0):
                    x = base_x + sign * k * delta
                    if not x_lo <= x <= x_hi:
                        continue
                    if clear_at(node, x):
                        points[node] = (x, points[node][1])
                        moved = True
                        done = True
                        break
                if done:
                    break
        if not moved:
            break

    remaining = offenders()
    if remaining:
        raise RepairFailed(remaining)

    pts = tuple(points)
    return Layout(points=pts, edges=edges,
                  crossings=_count_crossings(pts, edges),
                  frame=layout.frame, assignment=layout.assignment,
                  mirrored=layout.mirrored)
