"""Approximation of a high-order curve by low-order segments over a partition,
and adaptive partition search (linear and binary) under a metric tolerance."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import BezierCurve
from .degree import Matching, ReductionMethod, elevate, reduce, reduction_matrix
from .errors import (
    DegenerateInterval,
    DegreeOrder,
    ToleranceUnreachable,
    UnsupportedTargetDegree,
)
from .metrics import METRIC_KINDS, distance
from .polybasis import bernstein_values, uniform_params


def validate_partition(params, min_width: float = 0.0) -> np.ndarray:
    params = np.asarray(params, dtype=float)
    if params.ndim != 1 or params.size < 2:
        raise DegenerateInterval("partition needs at least [0, 1]")
    if params[0] != 0.0 or params[-1] != 1.0:
        raise DegenerateInterval("partition must start at 0 and end at 1")
    gaps = np.diff(params)
    if np.any(gaps <= 0.0):
        raise DegenerateInterval("partition must be strictly increasing")
    if min_width > 0.0 and np.any(gaps < min_width):
        raise DegenerateInterval(f"partition gap below min width {min_width}")
    return params


@dataclass(frozen=True)
class SegmentChain:
    """Low-order segments approximating a source curve over a partition.

    segments[i], parametrized over [0, 1], approximates the source over
    [partition[i], partition[i+1]].
    """

    partition: tuple[float, ...]
    segments: tuple[BezierCurve, ...]
    source_degree: int

    def __post_init__(self):
        if len(self.segments) != len(self.partition) - 1:
            raise ValueError("segment count must match partition size - 1")


@dataclass(frozen=True)
class AdaptiveConfig:
    target_degree: int
    method: ReductionMethod = Matching()
    metric: str = "ctrlpoint"
    tolerance: float = 0.1
    samples: int = 256
    max_segments: int = 4096
    min_width: float = 1e-6

    def __post_init__(self):
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")
        if self.max_segments < 1 or self.min_width <= 0.0:
            raise ValueError("max_segments >= 1 and min_width > 0 required")
        if self.metric not in METRIC_KINDS:
            raise ValueError(f"unknown metric {self.metric!r}")


def _split_batch(curve: BezierCurve, partition: np.ndarray) -> np.ndarray:
    """Sub-curve controls for every partition cell at once; shape (k, d, n+1).

    Per-cell Bernstein matrices are built over probe parameters uniform in
    each cell (their images are uniform over the unit interval) and the
    stacked square systems are LU-solved in one batched call.
    """
    n = curve.degree
    a = partition[:-1]
    width = np.diff(partition)
    u = uniform_params(n)  # probes in the unit interval
    src_params = a[:, None] + width[:, None] * u[None, :]  # (k, n+1)
    Bsrc = bernstein_values(n, src_params)  # (k, n+1, n+1), [cell, param, basis]
    rhs = Bsrc @ curve.controls.T  # (k, n+1, d) = (P @ B_src)^T per cell
    Bdst_T = bernstein_values(n, u)  # (n+1 params, n+1 basis) = B_dst^T
    sols = np.linalg.solve(Bdst_T, rhs)
    return np.transpose(sols, (0, 2, 1))  # (k, d, n+1)


def _build_chain(curve, m, partition, method) -> tuple[SegmentChain, np.ndarray]:
    partition = validate_partition(partition)
    R = reduction_matrix(curve.degree, m, method)
    subs = _split_batch(curve, partition)
    chain = SegmentChain(
        partition=tuple(float(t) for t in partition),
        segments=tuple(BezierCurve(sub @ R) for sub in subs),
        source_degree=curve.degree,
    )
    return chain, subs


def approximate_over_partition(
    curve: BezierCurve, m: int, partition, method: ReductionMethod = Matching()
) -> SegmentChain:
    """Reparametrize the curve onto each partition cell and degree-reduce it."""
    if m > curve.degree:
        raise DegreeOrder(f"target degree {m} exceeds source degree {curve.degree}")
    chain, _ = _build_chain(curve, m, partition, method)
    return chain


def segment_distances(curve: BezierCurve, chain: SegmentChain, metric: str = "ctrlpoint",
                      samples: int = 256) -> list[float]:
    """Distance of each segment to the sub-curve it approximates."""
    partition = np.asarray(chain.partition)
    subs = _split_batch(curve, partition)
    out = []
    for sub, seg in zip(subs, chain.segments):
        out.append(distance(BezierCurve(sub), seg, metric, samples))
    return out


def _check_partition(curve, m, partition, method, config) -> tuple[SegmentChain, int]:
    """Build the chain for a candidate partition; return it with the index of
    the first segment violating the tolerance (-1 if all pass)."""
    chain, subs = _build_chain(curve, m, partition, method)
    n = curve.degree
    for i, seg in enumerate(chain.segments):
        d = distance(BezierCurve(subs[i]), elevate(seg, n), config.metric, config.samples)
        if d > config.tolerance:
            return chain, i
    return chain, -1


def adaptive_linear_search(curve: BezierCurve, config: AdaptiveConfig) -> SegmentChain:
    """Smallest uniform partition whose every segment meets the tolerance.

    Grows the uniform partition size one segment at a time, abandoning a
    candidate at its first failing segment.
    """
    if config.target_degree > curve.degree:
        raise DegreeOrder("target degree exceeds source degree")
    k = 1
    while k <= config.max_segments:
        if 1.0 / k < config.min_width:
            raise ToleranceUnreachable(f"uniform partition of {k} cells is below min width")
        partition = np.linspace(0.0, 1.0, k + 1)
        chain, bad = _check_partition(curve, config.target_degree, partition, config.method, config)
        if bad < 0:
            return chain
        k += 1
    raise ToleranceUnreachable(f"tolerance {config.tolerance} not met within {config.max_segments} segments")


def adaptive_binary_search(curve: BezierCurve, config: AdaptiveConfig) -> SegmentChain:
    """Left-to-right partition refinement by midpoint insertion.

    A failing cell [t_{k-1}, t_k] is split at its midpoint and retried;
    passing cells advance the cursor.  The result may be nonuniform.
    """
    if config.target_degree > curve.degree:
        raise DegreeOrder("target degree exceeds source degree")
    n = curve.degree
    T = [0.0, 1.0]
    k = 1
    while k < len(T):
        if len(T) - 1 > config.max_segments:
            raise ToleranceUnreachable(f"exceeded {config.max_segments} segments")
        a, b = T[k - 1], T[k]
        sub = _split_batch(curve, np.array([a, b]))[0]
        seg = reduce(BezierCurve(sub), config.target_degree, config.method)
        d = distance(BezierCurve(sub), elevate(seg, n), config.metric, config.samples)
        if d > config.tolerance:
            mid = 0.5 * (a + b)
            if mid - a < config.min_width or b - mid < config.min_width:
                raise ToleranceUnreachable(f"cell [{a}, {b}] cannot shrink below min width")
            T.insert(k, mid)
        else:
            k += 1
    # rebuild through the canonical partition path so outputs are identical
    # to approximate_over_partition on the found partition
    return approximate_over_partition(curve, config.target_degree, np.array(T), config.method)


def rule_of_thumb_partition(n: int, m: int) -> np.ndarray:
    """Uniform partition sized by the fixed-count approximation rule:
    3(n-1) quadratic or 6(n-1) linear segments."""
    if m not in (1, 2):
        raise UnsupportedTargetDegree(f"rule of thumb covers target degrees 1 and 2, not {m}")
    if n < 2:
        raise DegreeOrder("rule of thumb needs source degree >= 2")
    k = 3 * (n - 1) if m == 2 else 6 * (n - 1)
    return np.linspace(0.0, 1.0, k + 1)
