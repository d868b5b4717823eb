"""Distances between Bezier curves.

Kinds: "l2" and "frobenius" (exact control-point forms), "ctrlpoint"
(maximum control-point distance, also exact), and the sampled
"max" / "hausdorff" estimates, which have no analytic form.  Curves of
unequal degree are aligned by elevating the lower-degree one first.
"""
from __future__ import annotations

from math import comb

import numpy as np

from .curves import BezierCurve, evaluate_many
from .errors import DimensionMismatch
from .polybasis import check_degree

METRIC_KINDS = ("l2", "frobenius", "ctrlpoint", "max", "hausdorff")


def l2_weight(n: int) -> np.ndarray:
    """Gram matrix W of the degree-n Bernstein basis over [0, 1].

    [W]_{i,j} = C(n,i) C(n,j) / ((2n+1) C(2n,i+j)); the squared L2 distance
    of same-degree curves is trace((P-Q) W (P-Q)^T).
    """
    n = check_degree(n)
    W = np.empty((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(i, n + 1):
            W[i, j] = W[j, i] = (comb(n, i) * comb(n, j)) / (
                (2 * n + 1) * comb(2 * n, i + j)
            )
    return W


def _aligned(a: BezierCurve, b: BezierCurve) -> tuple[np.ndarray, np.ndarray, int]:
    from .degree import elevate

    if a.dim != b.dim:
        raise DimensionMismatch(f"curve dimensions differ: {a.dim} vs {b.dim}")
    n = max(a.degree, b.degree)
    if a.degree < n:
        a = elevate(a, n)
    if b.degree < n:
        b = elevate(b, n)
    return a.controls, b.controls, n


def distance(a: BezierCurve, b: BezierCurve, kind: str = "ctrlpoint", samples: int = 256) -> float:
    """Distance between two curves under the requested metric."""
    if kind not in METRIC_KINDS:
        raise ValueError(f"unknown metric kind {kind!r}; expected one of {METRIC_KINDS}")
    if kind in ("max", "hausdorff"):
        if samples < 2:
            raise ValueError("sampled metrics need at least 2 samples")
        return _sampled_distance(a, b, kind, samples)
    P, Q, n = _aligned(a, b)
    D = P - Q
    if kind == "l2":
        return float(np.sqrt(max(np.trace(D @ l2_weight(n) @ D.T), 0.0)))
    if kind == "frobenius":
        return float(np.linalg.norm(D))
    return float(np.linalg.norm(D, axis=0).max())  # ctrlpoint


def _sampled_distance(a: BezierCurve, b: BezierCurve, kind: str, samples: int) -> float:
    if a.dim != b.dim:
        raise DimensionMismatch(f"curve dimensions differ: {a.dim} vs {b.dim}")
    ts = np.linspace(0.0, 1.0, samples)
    pa = evaluate_many(a, ts)
    pb = evaluate_many(b, ts)
    if kind == "max":
        return float(np.linalg.norm(pa - pb, axis=0).max())
    # symmetric max-min over the shared sample grid
    diff = pa[:, :, None] - pb[:, None, :]
    d = np.linalg.norm(diff, axis=0)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def relative_bound_radius(a: BezierCurve, b: BezierCurve) -> float:
    """Maximum control-point distance after degree alignment.

    Every point of a([0,1]) lies within this radius of the convex hull of
    b's control points (and of the curve b itself).
    """
    P, Q, _ = _aligned(a, b)
    return float(np.linalg.norm(P - Q, axis=0).max())
