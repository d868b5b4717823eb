"""Analytic geometric features of linear and quadratic Bezier segments.

Arc length, maximum absolute curvature (planar), distance to a point,
distance to a line segment, and halfspace clipping all admit closed forms
for quadratics; a chain of degree <= 2 segments aggregates them.  Includes
the real-cubic root solver these features rely on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .adaptive import SegmentChain
from .curves import BezierCurve
from .degree import elevate
from .errors import (
    AllZeroCoefficients,
    DegenerateSegment,
    DimensionMismatch,
    NotPlanar,
    UnsupportedDegree,
)

# Fig-style numerical-stability bound: curvature values are capped here and
# cusps on collinear segments report the cap.
CURVATURE_CAP = 1000.0

_COLLINEAR_TOL = 1e-12
_CUSP_SPEED_TOL = 1e-9


@dataclass(frozen=True)
class Halfspace:
    """Halfspace {x : normal . (x - anchor) <= 0}."""

    normal: tuple[float, ...]
    anchor: tuple[float, ...]

    def __post_init__(self):
        if np.linalg.norm(self.normal) == 0.0:
            raise ValueError("halfspace normal must be nonzero")
        if len(self.normal) != len(self.anchor):
            raise DimensionMismatch("normal and anchor dimensions differ")


def solve_cubic(c3: float, c2: float, c1: float, c0: float) -> list[float]:
    """Real roots of c3 t^3 + c2 t^2 + c1 t + c0 = 0, ascending, deduplicated.

    Degrades to the quadratic/linear cases when leading coefficients vanish
    relative to the coefficient scale.  Roots come from the trigonometric /
    Cardano form of the depressed cubic with one Newton polish step each.
    """
    coeffs = np.array([c3, c2, c1, c0], dtype=float)
    if not np.all(np.isfinite(coeffs)):
        raise ValueError("cubic coefficients must be finite")
    scale = np.abs(coeffs).max()
    if scale == 0.0:
        raise AllZeroCoefficients("all cubic coefficients are zero")
    tol = 1e-12 * scale
    if abs(c3) <= tol:
        if abs(c2) <= tol:
            if abs(c1) <= tol:
                if abs(c0) <= tol:
                    raise AllZeroCoefficients("all cubic coefficients are ~zero")
                return []
            return [-c0 / c1]
        disc = c1 * c1 - 4.0 * c2 * c0
        if disc < 0.0:
            return []
        sq = math.sqrt(disc)
        roots = [(-c1 - sq) / (2.0 * c2), (-c1 + sq) / (2.0 * c2)]
        return _dedup(sorted(roots))

    b, c, d = c2 / c3, c1 / c3, c0 / c3
    # depressed form u^3 + p u + q with t = u - b/3
    p = c - b * b / 3.0
    q = d - b * c / 3.0 + 2.0 * b**3 / 27.0
    half_q = q / 2.0
    disc = half_q * half_q + (p / 3.0) ** 3
    if disc > 0.0:
        s = math.sqrt(disc)
        u = _cbrt(-half_q + s) + _cbrt(-half_q - s)
        roots = [u - b / 3.0]
    elif p == 0.0:
        roots = [-b / 3.0]  # triple root (q == 0 when disc <= 0 and p == 0)
    else:
        r = math.sqrt(-p / 3.0)
        arg = min(1.0, max(-1.0, -half_q / (r * r * r)))
        phi = math.acos(arg)
        roots = [2.0 * r * math.cos((phi + 2.0 * math.pi * k) / 3.0) - b / 3.0 for k in range(3)]

    polished = [_newton_polish(t, c3, c2, c1, c0) for t in roots]
    return _dedup(sorted(polished))


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _newton_polish(t: float, c3: float, c2: float, c1: float, c0: float) -> float:
    f = ((c3 * t + c2) * t + c1) * t + c0
    df = (3.0 * c3 * t + 2.0 * c2) * t + c1
    if df != 0.0:
        step = f / df
        if abs(step) < 1.0:
            return t - step
    return t


def _dedup(roots: list[float]) -> list[float]:
    out: list[float] = []
    for r in roots:
        if not out or abs(r - out[-1]) > 1e-7 * max(1.0, abs(r)):
            out.append(r)
    return out


def _quad_coeffs(q: BezierCurve) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Monomial form of a quadratic: q(t) = A t^2 + B t + p0."""
    if q.degree != 2:
        raise UnsupportedDegree(f"expected a quadratic, got degree {q.degree}")
    p0, p1, p2 = q.controls.T
    return p2 - 2.0 * p1 + p0, 2.0 * (p1 - p0), p0


def quad_arc_length(q: BezierCurve, interval=(0.0, 1.0)) -> float:
    """Arc length of a quadratic over [t1, t2] in closed form.

    The speed is 2 sqrt(a t^2 + b t + c); its antiderivative has a
    logarithmic term except in the collinear cases, which integrate
    piecewise exactly.
    """
    t1, t2 = float(interval[0]), float(interval[1])
    if t2 < t1:
        raise ValueError("interval must satisfy t1 <= t2")
    A, B, p0 = _quad_coeffs(q)
    a = float(A @ A)
    b = float(B @ A)
    c = float(B @ B) / 4.0
    if a <= _COLLINEAR_TOL * max(1.0, c):
        return 2.0 * math.sqrt(max(c, 0.0)) * (t2 - t1)
    disc = 4.0 * a * c - b * b
    if disc <= 1e-14 * (4.0 * a * c + b * b):
        # perfectly collinear (possibly with a cusp): speed = 2 sqrt(a)|t - t*|
        ts = -b / (2.0 * a)

        def I(t):
            u = t - ts
            return math.sqrt(a) * u * abs(u) / 2.0

        return 2.0 * (I(t2) - I(t1))

    def R(t):
        return math.sqrt(max(a * t * t + b * t + c, 0.0))

    def I(t):
        return (2.0 * a * t + b) / (4.0 * a) * R(t) + disc / (
            8.0 * a * math.sqrt(a)
        ) * math.log(abs(2.0 * math.sqrt(a) * R(t) + 2.0 * a * t + b))

    return 2.0 * (I(t2) - I(t1))


def quad_max_abs_curvature(q: BezierCurve, interval=(0.0, 1.0)) -> tuple[float, float]:
    """Maximum |curvature| of a planar quadratic over [t1, t2], with its argmax.

    |kappa| over all reals peaks where the speed is smallest; on an interval
    the max sits at the clamped peak parameter.  Values are capped at
    CURVATURE_CAP; a cusp (speed ~ 0 inside the interval of a collinear
    segment) reports the cap.
    """
    if q.dim != 2:
        raise NotPlanar("curvature is defined for planar curves")
    t1, t2 = float(interval[0]), float(interval[1])
    if t2 < t1:
        raise ValueError("interval must satisfy t1 <= t2")
    p0, p1, p2 = q.controls.T
    u = p1 - p0
    v = p2 - p1
    A = v - u
    det = float(u[0] * v[1] - u[1] * v[0])
    aa = float(A @ A)
    scale = max(float(u @ u), float(v @ v), 1e-300)
    if det * det <= (_COLLINEAR_TOL * scale) ** 2:
        if aa <= _COLLINEAR_TOL * scale:
            return 0.0, t1  # constant-velocity (or stationary) segment
        t_min = float(-(u @ A) / aa)
        t_at = min(max(t_min, t1), t2)
        speed = 2.0 * float(np.linalg.norm(u + t_at * A))
        if speed < _CUSP_SPEED_TOL:
            return CURVATURE_CAP, t_at
        return 0.0, t_at
    t_star = float(-(u @ A) / aa)
    t_at = min(max(t_star, t1), t2)
    w = u + t_at * A  # half the velocity
    kappa = abs(det) / (2.0 * float(np.linalg.norm(w)) ** 3)
    return min(kappa, CURVATURE_CAP), t_at


def _distance_candidates(p0, p1, p2, interval) -> list[float]:
    """Critical parameters of the squared distance of the (shifted) quadratic
    to the origin: real cubic roots inside the interval plus the endpoints."""
    t1, t2 = interval
    A = p2 - 2.0 * p1 + p0
    c0 = float((p1 - p0) @ p0)
    c1 = float(A @ p0) + 2.0 * float((p1 - p0) @ (p1 - p0))
    c2 = 3.0 * float(A @ (p1 - p0))
    c3 = float(A @ A)
    try:
        roots = solve_cubic(c3, c2, c1, c0)
    except AllZeroCoefficients:
        roots = []
    cands = [t for t in roots if t1 <= t <= t2]
    cands.extend([t1, t2])
    return cands


def quad_distance_to_point(q: BezierCurve, point, interval=(0.0, 1.0)) -> tuple[float, float]:
    """Distance of a quadratic to a point over [t1, t2], with the argmin."""
    point = np.asarray(point, dtype=float)
    if point.shape != (q.dim,):
        raise DimensionMismatch(f"point must have dimension {q.dim}")
    t1, t2 = float(interval[0]), float(interval[1])
    if t2 < t1:
        raise ValueError("interval must satisfy t1 <= t2")
    p0, p1, p2 = (q.controls - point[:, None]).T
    best, best_t = math.inf, t1
    for t in _distance_candidates(p0, p1, p2, (t1, t2)):
        A = p2 - 2.0 * p1 + p0
        val = float(np.linalg.norm(A * t * t + 2.0 * (p1 - p0) * t + p0))
        if val < best:
            best, best_t = val, t
    return best, best_t


def quad_distance_to_segment(
    q: BezierCurve, q0, q1, t_interval=(0.0, 1.0), k_interval=(0.0, 1.0)
) -> tuple[float, float, float]:
    """Distance of a quadratic to a line segment q0 + k (q1 - q0).

    Candidate curve parameters combine three critical sets: against each
    segment endpoint and against the curve projected onto the segment's
    normal complement; the segment parameter is the clamped projection.
    Returns (distance, t, k).
    """
    q0 = np.asarray(q0, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    if q0.shape != (q.dim,) or q1.shape != (q.dim,):
        raise DimensionMismatch(f"segment endpoints must have dimension {q.dim}")
    v = q1 - q0
    vv = float(v @ v)
    if math.sqrt(vv) < 1e-12:
        raise DegenerateSegment("segment endpoints coincide")
    t1, t2 = float(t_interval[0]), float(t_interval[1])
    k1, k2 = float(k_interval[0]), float(k_interval[1])
    if t2 < t1 or k2 < k1:
        raise ValueError("intervals must be nondecreasing")

    ctrl = q.controls
    shifted0 = (ctrl - q0[:, None]).T
    shifted1 = (ctrl - q1[:, None]).T
    proj = np.eye(q.dim) - np.outer(v, v) / vv
    projected = (proj @ (ctrl - q0[:, None])).T

    cands: list[float] = []
    for pts in (shifted0, shifted1, projected):
        cands.extend(_distance_candidates(pts[0], pts[1], pts[2], (t1, t2)))

    A, B, p0 = _quad_coeffs(q)
    best = (math.inf, t1, k1)
    for t in cands:
        pt = A * t * t + B * t + p0
        k = min(max(k1, float(v @ (pt - q0)) / vv), k2)
        val = float(np.linalg.norm(pt - (q0 + k * v)))
        if val < best[0]:
            best = (val, t, k)
    return best


def quad_halfspace_clip(q: BezierCurve, h: Halfspace, interval=(0.0, 1.0)) -> list[tuple[float, float]]:
    """Parameter subintervals where the curve violates the halfspace
    (normal . (q(t) - anchor) >= 0), as disjoint intervals of positive length.

    The boundary crossing is a scalar quadratic in t; cells between sorted
    roots are classified by their midpoint sign.  Tangency cells of measure
    zero are suppressed.
    """
    normal = np.asarray(h.normal, dtype=float)
    anchor = np.asarray(h.anchor, dtype=float)
    if normal.shape != (q.dim,):
        raise DimensionMismatch(f"halfspace must have dimension {q.dim}")
    ta, tb = float(interval[0]), float(interval[1])
    if tb < ta:
        raise ValueError("interval must satisfy ta <= tb")
    if tb == ta:
        return []
    A, B, p0 = _quad_coeffs(q)
    a2 = float(normal @ A)
    a1 = float(normal @ B)
    a0 = float(normal @ (p0 - anchor))

    def f(t):
        return (a2 * t + a1) * t + a0

    try:
        roots = solve_cubic(0.0, a2, a1, a0)
    except AllZeroCoefficients:
        return [(ta, tb)]  # curve lies on the boundary: >= 0 everywhere
    cuts = sorted({ta, tb, *(r for r in roots if ta < r < tb)})
    out: list[tuple[float, float]] = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if f(0.5 * (lo + hi)) >= 0.0:
            if out and out[-1][1] == lo:
                out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
    return out


@dataclass(frozen=True)
class FeatureReport:
    """Aggregated analytic features of a segment chain.

    Witness parameters are in the source curve's parametrization (the
    chain's partition coordinates).
    """

    length: float | None = None
    max_curvature: tuple[float, float] | None = None  # (value, t)
    dist_to_point: tuple[float, float] | None = None  # (value, t)
    dist_to_segment: tuple[float, float, float] | None = None  # (value, t, k)
    halfspace_violations: list[tuple[float, float]] | None = None


def _as_quadratics(chain: SegmentChain) -> list[BezierCurve]:
    out = []
    for seg in chain.segments:
        if seg.degree > 2:
            raise UnsupportedDegree(
                f"analytic features need segments of degree <= 2, got {seg.degree}"
            )
        out.append(elevate(seg, 2))
    return out


def chain_features(
    chain: SegmentChain,
    *,
    length: bool = False,
    max_curvature: bool = False,
    dist_to_point=None,
    dist_to_segment=None,
    halfspace: Halfspace | None = None,
) -> FeatureReport:
    """Aggregate analytic features over a chain of degree <= 2 segments.

    Lengths add, distances take the chain-wide minimum, curvature the
    maximum; halfspace violations are mapped back to source parameters and
    merged across segment boundaries.
    """
    quads = _as_quadratics(chain)
    bounds = list(zip(chain.partition[:-1], chain.partition[1:]))

    total = None
    if length:
        total = sum(quad_arc_length(s) for s in quads)

    curv = None
    if max_curvature:
        best = (-math.inf, 0.0)
        for s, (a, b) in zip(quads, bounds):
            val, t = quad_max_abs_curvature(s)
            if val > best[0]:
                best = (val, a + t * (b - a))
        curv = best

    d2p = None
    if dist_to_point is not None:
        best = (math.inf, 0.0)
        for s, (a, b) in zip(quads, bounds):
            val, t = quad_distance_to_point(s, dist_to_point)
            if val < best[0]:
                best = (val, a + t * (b - a))
        d2p = best

    d2s = None
    if dist_to_segment is not None:
        q0, q1 = dist_to_segment
        best = (math.inf, 0.0, 0.0)
        for s, (a, b) in zip(quads, bounds):
            val, t, k = quad_distance_to_segment(s, q0, q1)
            if val < best[0]:
                best = (val, a + t * (b - a), k)
        d2s = best

    clips = None
    if halfspace is not None:
        clips = []
        for s, (a, b) in zip(quads, bounds):
            for lo, hi in quad_halfspace_clip(s, halfspace):
                lo_s, hi_s = a + lo * (b - a), a + hi * (b - a)
                if clips and clips[-1][1] >= lo_s - 1e-12:
                    clips[-1] = (clips[-1][0], hi_s)
                else:
                    clips.append((lo_s, hi_s))

    return FeatureReport(
        length=total,
        max_curvature=curv,
        dist_to_point=d2p,
        dist_to_segment=d2s,
        halfspace_violations=clips,
    )


def single_curve_chain(curve: BezierCurve) -> SegmentChain:
    """Wrap a bare degree <= 2 curve as a one-segment chain over [0, 1]."""
    if curve.degree > 2:
        raise UnsupportedDegree(f"analytic features need degree <= 2, got {curve.degree}")
    return SegmentChain(partition=(0.0, 1.0), segments=(curve,), source_degree=curve.degree)
