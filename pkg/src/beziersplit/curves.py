"""The Bezier curve value type: evaluation, derivative, splitting, JSON I/O."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInterval, DegreeZero, DimensionMismatch
from .polybasis import BasisKind, BasisSpec, convert_controls, reparametrize


@dataclass(frozen=True)
class BezierCurve:
    """Immutable Bezier curve with control points as columns of a (d, n+1) matrix."""

    controls: np.ndarray = field(repr=False)

    def __post_init__(self):
        ctrl = np.atleast_2d(np.asarray(self.controls, dtype=float))
        if ctrl.ndim != 2 or ctrl.shape[1] < 1:
            raise ValueError("controls must be a (d, n+1) matrix")
        if not np.all(np.isfinite(ctrl)):
            raise ValueError("controls must be finite")
        ctrl = ctrl.copy()
        ctrl.flags.writeable = False
        object.__setattr__(self, "controls", ctrl)

    @property
    def dim(self) -> int:
        return self.controls.shape[0]

    @property
    def degree(self) -> int:
        return self.controls.shape[1] - 1

    def __call__(self, t):
        return evaluate(self, t)


def evaluate(curve: BezierCurve, t: float) -> np.ndarray:
    """Curve point at parameter t via the de Casteljau recursion."""
    return evaluate_many(curve, [t])[:, 0]


def evaluate_many(curve: BezierCurve, ts) -> np.ndarray:
    """Curve points at parameters ts; shape (d, len(ts)).

    The de Casteljau convex-combination recursion is unconditionally
    stable on [0, 1] and valid over all reals.
    """
    ts = np.asarray(ts, dtype=float)
    beta = np.broadcast_to(
        curve.controls[:, :, None], curve.controls.shape + (ts.size,)
    ).copy()
    for _ in range(curve.degree):
        beta = beta[:, :-1, :] * (1.0 - ts) + beta[:, 1:, :] * ts
    return beta[:, 0, :]


def evaluate_bernstein_sum(curve: BezierCurve, ts) -> np.ndarray:
    """Direct Bernstein-sum evaluation (slower; used to cross-check de Casteljau)."""
    from .polybasis import bernstein_values

    ts = np.asarray(ts, dtype=float)
    return curve.controls @ bernstein_values(curve.degree, ts).T


def derivative(curve: BezierCurve) -> BezierCurve:
    """Derivative curve of degree n-1 with controls n * (p_{i+1} - p_i)."""
    n = curve.degree
    if n == 0:
        raise DegreeZero("constant curve has no Bezier derivative")
    return BezierCurve(n * np.diff(curve.controls, axis=1))


def split_to_interval(curve: BezierCurve, interval) -> BezierCurve:
    """Sub-curve over [a, b] within [0, 1], reparametrized to the unit interval."""
    a, b = float(interval[0]), float(interval[1])
    if not (0.0 <= a < b <= 1.0):
        raise DegenerateInterval(f"need 0 <= a < b <= 1, got [{a}, {b}]")
    Q, _ = reparametrize(curve.controls, BasisSpec.bernstein(), (a, b), (0.0, 1.0))
    return BezierCurve(Q)


def reverse(curve: BezierCurve) -> BezierCurve:
    """Curve traced backwards (t -> 1 - t): reversed control points."""
    return BezierCurve(curve.controls[:, ::-1])


def point_in_hull_violation(hull_points: np.ndarray, queries: np.ndarray) -> float:
    """Largest distance of any query point outside conv(hull_points).

    hull_points and queries are (d, k) matrices with d in {1, 2}; returns 0
    when every query lies inside the hull.
    """
    d = hull_points.shape[0]
    if queries.shape[0] != d:
        raise DimensionMismatch("hull and query dimensions differ")
    if d == 1:
        lo, hi = hull_points.min(), hull_points.max()
        return float(np.maximum(np.maximum(lo - queries, queries - hi), 0.0).max())
    if d != 2:
        raise DimensionMismatch("hull check implemented for d in {1, 2}")
    from scipy.spatial import ConvexHull, QhullError

    pts = hull_points.T
    try:
        hull = ConvexHull(pts)
        verts = pts[hull.vertices]  # counterclockwise
    except QhullError:
        # collinear control points: fall back to the extreme segment
        direction = pts[-1] - pts[0]
        proj = pts @ direction
        verts = np.array([pts[np.argmin(proj)], pts[np.argmax(proj)]])
    worst = 0.0
    for q in queries.T:
        worst = max(worst, _dist_to_polygon(verts, q))
    return worst


def _dist_to_polygon(verts: np.ndarray, q: np.ndarray) -> float:
    """Distance from q to a convex polygon given by ccw vertices (0 inside)."""
    k = len(verts)
    if k == 1:
        return float(np.linalg.norm(q - verts[0]))
    inside = True
    best = np.inf
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        e = b - a
        if k > 2 and e[0] * (q[1] - a[1]) - e[1] * (q[0] - a[0]) < 0:
            inside = False
        ee = e @ e
        s = 0.0 if ee == 0 else np.clip((q - a) @ e / ee, 0.0, 1.0)
        best = min(best, float(np.linalg.norm(q - (a + s * e))))
        if k == 2:
            inside = False
            break
    return 0.0 if inside else best


def curve_to_json(curve: BezierCurve) -> dict:
    """JSON curve document: {"dim", "degree", "controls"} with points as rows."""
    return {
        "dim": curve.dim,
        "degree": curve.degree,
        "controls": [[float(x) for x in pt] for pt in curve.controls.T],
    }


def curve_from_json(doc: dict) -> BezierCurve:
    """Parse a curve document; rejects unknown fields and inconsistent shapes.

    An optional "basis" field ("bernstein", "monomial", or
    {"kind": "taylor", "tau": ...}) gives the basis the coefficients are
    expressed in; the curve is converted to Bernstein form on load.
    """
    if not isinstance(doc, dict):
        raise ValueError("curve document must be a JSON object")
    allowed = {"dim", "degree", "controls", "basis"}
    unknown = set(doc) - allowed
    if unknown:
        raise ValueError(f"unknown curve document fields: {sorted(unknown)}")
    for key in ("dim", "degree", "controls"):
        if key not in doc:
            raise ValueError(f"curve document missing field {key!r}")
    dim, degree = int(doc["dim"]), int(doc["degree"])
    rows = doc["controls"]
    if len(rows) != degree + 1 or any(len(r) != dim for r in rows):
        raise ValueError("controls must be degree+1 points of dim coordinates")
    controls = np.asarray(rows, dtype=float).T
    spec = _basis_from_json(doc.get("basis", "bernstein"))
    if spec.kind is not BasisKind.BERNSTEIN:
        controls = convert_controls(controls, spec, BasisSpec.bernstein())
    return BezierCurve(controls)


def _basis_from_json(value) -> BasisSpec:
    if isinstance(value, str):
        if value == "bernstein":
            return BasisSpec.bernstein()
        if value == "monomial":
            return BasisSpec.monomial()
        raise ValueError(f"unknown basis {value!r}")
    if isinstance(value, dict) and value.get("kind") == "taylor":
        return BasisSpec.taylor(float(value["tau"]))
    raise ValueError(f"invalid basis annotation: {value!r}")
