"""Random-curve studies: normalized feature-error statistics versus segment
count, and adaptive-search segment-count scaling versus degree and tolerance.

Ground truths come from dense uniform sampling; every trial is keyed by
(seed, draw index) through a counter-based generator, so studies are
reproducible regardless of execution order or worker count.
"""
from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .adaptive import (
    AdaptiveConfig,
    adaptive_binary_search,
    adaptive_linear_search,
    approximate_over_partition,
)
from .curves import BezierCurve, derivative, evaluate_many
from .degree import LeastSquares, Matching, ReductionMethod, Taylor
from .errors import ToleranceUnreachable
from .features import CURVATURE_CAP, chain_features

FEATURES = ("length", "dist_to_point", "dist_to_line", "max_curvature")
_POINT = np.array([0.0, 0.0])
_SEGMENT = (np.array([0.0, 0.0]), np.array([1.0, 0.0]))  # horizontal side of the unit box

METHOD_NAMES = {"matching": Matching(), "leastsq": LeastSquares(), "taylor": Taylor(0.5)}


@dataclass(frozen=True)
class TrialConfig:
    seed: int
    trials: int
    degree: int
    dimension: int = 2
    normalize_variance: bool = False
    dense_samples: int = 100_000

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.dense_samples < 1_000:
            raise ValueError("dense_samples must be >= 1000")


@dataclass(frozen=True)
class ErrorStudyCell:
    feature: str
    method: str
    segments: int
    mean: float
    std: float
    trials: int


@dataclass(frozen=True)
class ScalingCell:
    search: str
    degree: int
    tolerance: float
    mean_segments: float
    std_segments: float
    trials: int


def random_curve(config: TrialConfig, trial_index: int) -> BezierCurve:
    """Deterministic random curve for (seed, trial_index).

    Control points are i.i.d. uniform on the unit box; with
    normalize_variance they are centered and rescaled so the pooled
    per-coordinate sample variance equals one.
    """
    key = np.array([np.uint64(config.seed & (2**64 - 1)), np.uint64(trial_index)])
    rng = np.random.Generator(np.random.Philox(key=key))
    controls = rng.uniform(0.0, 1.0, size=(config.dimension, config.degree + 1))
    if config.normalize_variance:
        controls = controls - controls.mean(axis=1, keepdims=True)
        pooled = controls.var(axis=1, ddof=1).mean()
        if pooled <= 0.0:
            raise ValueError("cannot normalize a zero-variance control set")
        controls = controls / np.sqrt(pooled)
    return BezierCurve(controls)


def normalized_error(approx: float, actual: float) -> float:
    """Scale-invariant error |approx - actual| / (approx + actual) in [0, 1]."""
    denom = approx + actual
    if denom == 0.0:
        return 0.0
    return abs(approx - actual) / denom


def dense_features(curve: BezierCurve, samples: int, features=FEATURES) -> dict[str, float]:
    """Ground-truth features from dense uniform sampling."""
    ts = np.linspace(0.0, 1.0, samples)
    pts = evaluate_many(curve, ts)
    out: dict[str, float] = {}
    if "length" in features:
        out["length"] = float(np.sum(np.linalg.norm(np.diff(pts, axis=1), axis=0)))
    if "dist_to_point" in features:
        out["dist_to_point"] = float(np.min(np.linalg.norm(pts - _POINT[:, None], axis=0)))
    if "dist_to_line" in features:
        seg_vec = _SEGMENT[1] - _SEGMENT[0]
        rel = pts - _SEGMENT[0][:, None]
        proj = np.clip((seg_vec @ rel) / (seg_vec @ seg_vec), 0.0, 1.0)
        foot = _SEGMENT[0][:, None] + seg_vec[:, None] * proj
        out["dist_to_line"] = float(np.min(np.linalg.norm(pts - foot, axis=0)))
    if "max_curvature" in features:
        if curve.degree >= 2:
            d1 = derivative(curve)
            v = evaluate_many(d1, ts)
            speed = np.linalg.norm(v, axis=0)
            acc = evaluate_many(derivative(d1), ts)
            cross = np.abs(v[0] * acc[1] - v[1] * acc[0])
            with np.errstate(divide="ignore", invalid="ignore"):
                kappa = np.where(speed > 0, cross / speed**3, np.inf)
            out["max_curvature"] = float(np.max(kappa))
        else:
            out["max_curvature"] = 0.0
    return out


def chain_feature_values(chain, features) -> dict[str, float]:
    report = chain_features(
        chain,
        length="length" in features,
        max_curvature="max_curvature" in features,
        dist_to_point=_POINT if "dist_to_point" in features else None,
        dist_to_segment=_SEGMENT if "dist_to_line" in features else None,
    )
    out = {}
    if "length" in features:
        out["length"] = report.length
    if "max_curvature" in features:
        out["max_curvature"] = report.max_curvature[0]
    if "dist_to_point" in features:
        out["dist_to_point"] = report.dist_to_point[0]
    if "dist_to_line" in features:
        out["dist_to_line"] = report.dist_to_segment[0]
    return out


def _error_trial(args) -> tuple[bool, dict]:
    """One draw of the error study: (curvature-eligible, errors per cell)."""
    config, draw, features, method_names, segment_counts, target_degree = args
    curve = random_curve(config, draw)
    actual = dense_features(curve, config.dense_samples, features)
    eligible = actual.get("max_curvature", 0.0) <= CURVATURE_CAP
    errors: dict[tuple[str, str, int], float] = {}
    for name in method_names:
        method = METHOD_NAMES[name]
        for k in segment_counts:
            partition = np.linspace(0.0, 1.0, k + 1)
            chain = approximate_over_partition(curve, target_degree, partition, method)
            approx = chain_feature_values(chain, features)
            for feat in features:
                errors[(feat, name, k)] = normalized_error(approx[feat], actual[feat])
    return eligible, errors


def run_error_study(
    config: TrialConfig,
    features=FEATURES,
    methods=("matching", "leastsq", "taylor"),
    segment_counts=(4, 8, 12, 16),
    target_degree: int = 2,
    jobs: int = 1,
) -> list[ErrorStudyCell]:
    """Approximation-error statistics over uniform partitions.

    Draws whose true maximum curvature exceeds the cap are rejected and
    redrawn whenever the curvature feature is requested; other features
    reuse the same accepted draws so methods stay comparable.
    """
    features = tuple(features)
    methods = tuple(methods)
    unknown = set(features) - set(FEATURES)
    if unknown:
        raise ValueError(f"unknown features: {sorted(unknown)}")
    need_eligibility = "max_curvature" in features
    max_draws = 10 * config.trials

    accepted: list[dict] = []
    draw = 0
    while len(accepted) < config.trials:
        if draw >= max_draws:
            raise RuntimeError(
                f"curvature rejection sampling exhausted {max_draws} draws "
                f"for {config.trials} trials (seed {config.seed}, degree {config.degree})"
            )
        remaining = config.trials - len(accepted)
        batch = list(range(draw, min(draw + max(remaining, jobs), max_draws)))
        args = [(config, i, features, methods, tuple(segment_counts), target_degree) for i in batch]
        results = _map(_error_trial, args, jobs)
        for eligible, errors in results:
            if need_eligibility and not eligible:
                continue
            accepted.append(errors)
            if len(accepted) == config.trials:
                break
        draw = batch[-1] + 1

    cells = []
    for feat in features:
        for name in methods:
            for k in segment_counts:
                vals = np.array([rec[(feat, name, k)] for rec in accepted])
                cells.append(
                    ErrorStudyCell(
                        feature=feat,
                        method=name,
                        segments=int(k),
                        mean=float(vals.mean()),
                        std=float(vals.std(ddof=1)) if vals.size > 1 else 0.0,
                        trials=vals.size,
                    )
                )
    return cells


def _scaling_trial(args) -> dict:
    config, draw, search_kinds, degrees, tolerances, target_degree = args
    counts: dict[tuple[str, int, float], float] = {}
    for n in degrees:
        curve = random_curve(replace(config, degree=n), draw)
        for eps in tolerances:
            for search in search_kinds:
                acfg = AdaptiveConfig(
                    target_degree=target_degree, method=Matching(), metric="ctrlpoint",
                    tolerance=eps,
                )
                run = adaptive_linear_search if search == "linear" else adaptive_binary_search
                try:
                    chain = run(curve, acfg)
                    counts[(search, n, eps)] = float(len(chain.segments))
                except ToleranceUnreachable:
                    counts[(search, n, eps)] = float("nan")
    return counts


def run_scaling_study(
    config: TrialConfig,
    search_kinds=("linear", "binary"),
    degrees=(3, 5, 7, 9),
    tolerances=(0.1, 0.01),
    target_degree: int = 2,
    jobs: int = 1,
) -> list[ScalingCell]:
    """Segment-count statistics of the adaptive searches on unit-variance
    curves with the maximum control-point metric and uniform matching.

    Unreachable-tolerance trials are recorded as missing and excluded from
    the statistics (the trials column reports how many were kept).
    """
    for kind in search_kinds:
        if kind not in ("linear", "binary"):
            raise ValueError(f"unknown search kind {kind!r}")
    config = replace(config, normalize_variance=True)
    args = [
        (config, i, tuple(search_kinds), tuple(degrees), tuple(tolerances), target_degree)
        for i in range(config.trials)
    ]
    per_trial = _map(_scaling_trial, args, jobs)

    cells = []
    for search in search_kinds:
        for n in degrees:
            for eps in tolerances:
                vals = np.array([rec[(search, n, eps)] for rec in per_trial])
                vals = vals[~np.isnan(vals)]
                cells.append(
                    ScalingCell(
                        search=search,
                        degree=int(n),
                        tolerance=float(eps),
                        mean_segments=float(vals.mean()) if vals.size else float("nan"),
                        std_segments=float(vals.std(ddof=1)) if vals.size > 1 else 0.0,
                        trials=int(vals.size),
                    )
                )
    return cells


def _map(fn, args, jobs):
    if jobs <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, args))


CSV_HEADER = [
    "study", "feature", "method", "search", "degree", "segments",
    "tolerance", "mean", "std", "trials", "seed",
]


def _fmt(x) -> str:
    if x is None or x == "":
        return ""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def write_csv(path, rows) -> None:
    """Write study rows with one fixed header; floats use 17 significant digits."""
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([_fmt(row.get(col, "")) for col in CSV_HEADER])


def error_cells_to_rows(cells, config: TrialConfig) -> list[dict]:
    return [
        {
            "study": "error",
            "feature": c.feature,
            "method": c.method,
            "degree": config.degree,
            "segments": c.segments,
            "mean": c.mean,
            "std": c.std,
            "trials": c.trials,
            "seed": config.seed,
        }
        for c in cells
    ]


def scaling_cells_to_rows(cells, config: TrialConfig) -> list[dict]:
    return [
        {
            "study": "scaling",
            "method": "matching",
            "search": c.search,
            "degree": c.degree,
            "tolerance": c.tolerance,
            "mean": c.mean_segments,
            "std": c.std_segments,
            "trials": c.trials,
            "seed": config.seed,
        }
        for c in cells
    ]
