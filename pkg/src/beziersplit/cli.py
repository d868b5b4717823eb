"""Command-line interface.

Subcommands: elevate, reduce, approx, features, experiment.  Structured
results go to stdout as JSON (experiment writes CSV to --out); diagnostics
go to stderr.  Exit codes: 0 ok, 2 validation failure, 3 numeric-domain
error, 4 tolerance unreachable.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import experiments
from .adaptive import (
    AdaptiveConfig,
    SegmentChain,
    adaptive_binary_search,
    adaptive_linear_search,
    approximate_over_partition,
    rule_of_thumb_partition,
    segment_distances,
)
from .curves import BezierCurve, curve_from_json, curve_to_json
from .degree import LeastSquares, Matching, ReductionMethod, Taylor, elevate, reduce
from .errors import CurveError, ToleranceUnreachable
from .features import Halfspace, chain_features, single_curve_chain
from .metrics import METRIC_KINDS

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3
EXIT_TOLERANCE = 4


class CliError(Exception):
    """Input validation failure (exit code 2)."""


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid JSON in {path}: {exc}") from exc


def _load_curve(path: str) -> BezierCurve:
    try:
        return curve_from_json(_load_json(path))
    except ValueError as exc:
        raise CliError(f"invalid curve document: {exc}") from exc


def _parse_floats(text: str, flag: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise CliError(f"{flag} expects comma-separated numbers, got {text!r}") from exc


def _parse_ints(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise CliError(f"{flag} expects comma-separated integers, got {text!r}") from exc


def _method_from_flags(name: str, tau: float, params: str | None) -> ReductionMethod:
    if name == "leastsq":
        return LeastSquares()
    if name == "taylor":
        return Taylor(offset=tau)
    if name == "matching":
        if params is None:
            return Matching()
        values = _parse_floats(params, "--params")
        if len(set(values)) != len(values) or (
            len(values) > 1 and np.diff(np.sort(values)).min() <= 1e-9
        ):
            raise CliError(f"--params must be pairwise distinct, got {values}")
        return Matching(params=tuple(values))
    raise CliError(f"unknown method {name!r}")


def _method_to_json(method: ReductionMethod) -> dict:
    if isinstance(method, LeastSquares):
        return {"kind": "leastsq"}
    if isinstance(method, Taylor):
        return {"kind": "taylor", "tau": method.offset}
    return {"kind": "matching", "params": list(method.params) if method.params else None}


def chain_to_json(chain: SegmentChain, method: ReductionMethod, metric: str,
                  tolerance: float | None, certified: list[float]) -> dict:
    return {
        "source_degree": chain.source_degree,
        "partition": list(chain.partition),
        "method": _method_to_json(method),
        "metric": metric,
        "tolerance": tolerance,
        "certified_distances": certified,
        "segments": [curve_to_json(seg) for seg in chain.segments],
    }


def chain_from_json(doc: dict) -> SegmentChain:
    required = {
        "source_degree", "partition", "method", "metric",
        "tolerance", "certified_distances", "segments",
    }
    if not isinstance(doc, dict):
        raise CliError("chain document must be a JSON object")
    missing = required - set(doc)
    unknown = set(doc) - required
    if missing or unknown:
        raise CliError(
            f"chain document fields invalid (missing {sorted(missing)}, unknown {sorted(unknown)})"
        )
    partition = [float(t) for t in doc["partition"]]
    segments = []
    try:
        for seg in doc["segments"]:
            segments.append(curve_from_json(seg))
    except ValueError as exc:
        raise CliError(f"invalid segment document: {exc}") from exc
    if len(segments) != len(partition) - 1:
        raise CliError("segment count must equal partition size - 1")
    certified = doc["certified_distances"]
    if len(certified) != len(segments):
        raise CliError("certified_distances length must match segments")
    tol = doc["tolerance"]
    if tol is not None and any(d > tol for d in certified):
        raise CliError("certified distances exceed the stated tolerance")
    try:
        return SegmentChain(
            partition=tuple(partition),
            segments=tuple(segments),
            source_degree=int(doc["source_degree"]),
        )
    except (ValueError, CurveError) as exc:
        raise CliError(f"invalid chain document: {exc}") from exc


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_elevate(args) -> int:
    curve = _load_curve(args.curve)
    _emit(curve_to_json(elevate(curve, args.to_degree)))
    return EXIT_OK


def cmd_reduce(args) -> int:
    curve = _load_curve(args.curve)
    method = _method_from_flags(args.method, args.tau, args.params)
    _emit(curve_to_json(reduce(curve, args.to_degree, method)))
    return EXIT_OK


def cmd_approx(args) -> int:
    curve = _load_curve(args.curve)
    method = _method_from_flags(args.method, args.tau, args.params)

    partition_mode = args.partition is not None or args.search == "partition"
    search_mode = args.search in ("linear", "binary")
    modes = sum([partition_mode, search_mode, bool(args.rule_of_thumb)])
    if modes != 1:
        raise CliError(
            "choose exactly one of --rule-of-thumb, --partition/--search partition, "
            "or --search linear|binary with --tolerance"
        )

    tolerance = None
    if search_mode:
        if args.tolerance is None:
            raise CliError("--search linear|binary requires --tolerance")
        tolerance = args.tolerance
        config = AdaptiveConfig(
            target_degree=args.target_degree,
            method=method,
            metric=args.metric,
            tolerance=tolerance,
            samples=args.samples,
            max_segments=args.max_segments,
            min_width=args.min_width,
        )
        run = adaptive_linear_search if args.search == "linear" else adaptive_binary_search
        chain = run(curve, config)
    elif partition_mode:
        if args.partition is None:
            raise CliError("--search partition requires --partition")
        partition = _parse_floats(args.partition, "--partition")
        chain = approximate_over_partition(curve, args.target_degree, partition, method)
    else:
        if args.method != "matching":
            raise CliError("--rule-of-thumb uses matching reduction; do not pass --method")
        partition = rule_of_thumb_partition(curve.degree, args.target_degree)
        chain = approximate_over_partition(curve, args.target_degree, partition, Matching())

    certified = segment_distances(curve, chain, args.metric, args.samples)
    _emit(chain_to_json(chain, method, args.metric, tolerance, certified))
    return EXIT_OK


def cmd_features(args) -> int:
    doc = _load_json(args.input)
    if isinstance(doc, dict) and "segments" in doc:
        chain = chain_from_json(doc)
    else:
        try:
            curve = curve_from_json(doc)
        except ValueError as exc:
            raise CliError(f"invalid curve document: {exc}") from exc
        chain = single_curve_chain(curve)

    wants_any = (
        args.length or args.max_curvature or args.dist_to_point is not None
        or args.dist_to_segment is not None or args.halfspace is not None
    )
    if not wants_any:
        raise CliError("no features requested; pass --length, --max-curvature, ...")

    halfspace = None
    if args.halfspace is not None:
        ax, ay, bx, by = args.halfspace
        halfspace = Halfspace(normal=(ax, ay), anchor=(bx, by))
    segment = None
    if args.dist_to_segment is not None:
        x0, y0, x1, y1 = args.dist_to_segment
        segment = (np.array([x0, y0]), np.array([x1, y1]))

    report = chain_features(
        chain,
        length=args.length,
        max_curvature=args.max_curvature,
        dist_to_point=np.array(args.dist_to_point) if args.dist_to_point is not None else None,
        dist_to_segment=segment,
        halfspace=halfspace,
    )
    out: dict = {}
    if report.length is not None:
        out["length"] = report.length
    if report.max_curvature is not None:
        out["max_curvature"] = {"value": report.max_curvature[0], "t": report.max_curvature[1]}
    if report.dist_to_point is not None:
        out["dist_to_point"] = {"value": report.dist_to_point[0], "t": report.dist_to_point[1]}
    if report.dist_to_segment is not None:
        val, t, k = report.dist_to_segment
        out["dist_to_segment"] = {"value": val, "t": t, "k": k}
    if report.halfspace_violations is not None:
        out["halfspace_violations"] = [[lo, hi] for lo, hi in report.halfspace_violations]
    _emit(out)
    return EXIT_OK


def cmd_experiment(args) -> int:
    degrees = _parse_ints(args.degrees, "--degrees")
    if not degrees or any(n < 1 for n in degrees):
        raise CliError("--degrees must list positive integers")
    rows: list[dict] = []
    if args.study == "error":
        segments = _parse_ints(args.segments, "--segments")
        if not segments or any(k < 1 for k in segments):
            raise CliError("--segments must list positive integers")
        features = [f.strip() for f in args.features.split(",") if f.strip()]
        methods = [m.strip() for m in args.methods.split(",") if m.strip()]
        if any(m not in experiments.METHOD_NAMES for m in methods):
            raise CliError(f"--methods entries must be in {sorted(experiments.METHOD_NAMES)}")
        if any(f not in experiments.FEATURES for f in features):
            raise CliError(f"--features entries must be in {list(experiments.FEATURES)}")
        if args.target_degree not in (1, 2):
            raise CliError("--target-degree must be 1 or 2 for the error study")
        if any(n < args.target_degree for n in degrees):
            raise CliError("--degrees must be >= --target-degree")
        for n in degrees:
            config = experiments.TrialConfig(
                seed=args.seed, trials=args.trials, degree=n,
                dense_samples=args.dense_samples,
            )
            cells = experiments.run_error_study(
                config, features=features, methods=methods,
                segment_counts=segments, target_degree=args.target_degree, jobs=args.jobs,
            )
            rows.extend(experiments.error_cells_to_rows(cells, config))
    else:
        tolerances = _parse_floats(args.tolerances, "--tolerances")
        if not tolerances or any(e <= 0 for e in tolerances):
            raise CliError("--tolerances must list positive numbers")
        searches = [s.strip() for s in args.search_kinds.split(",") if s.strip()]
        if any(s not in ("linear", "binary") for s in searches):
            raise CliError("--search-kinds entries must be linear or binary")
        if any(n < args.target_degree for n in degrees):
            raise CliError("--degrees must be >= --target-degree")
        config = experiments.TrialConfig(
            seed=args.seed, trials=args.trials, degree=max(degrees),
            normalize_variance=True, dense_samples=args.dense_samples,
        )
        cells = experiments.run_scaling_study(
            config, search_kinds=searches, degrees=degrees,
            tolerances=tolerances, target_degree=args.target_degree, jobs=args.jobs,
        )
        rows.extend(experiments.scaling_cells_to_rows(cells, config))
    experiments.write_csv(args.out, rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beziersplit",
        description="Approximate high-order Bezier curves by low-order segments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("elevate", help="degree-elevate a curve", formatter_class=fmt)
    p.add_argument("curve", help="curve document (JSON)")
    p.add_argument("--to-degree", type=int, required=True, help="target degree")
    p.set_defaults(func=cmd_elevate)

    p = sub.add_parser("reduce", help="degree-reduce a curve", formatter_class=fmt)
    p.add_argument("curve", help="curve document (JSON)")
    p.add_argument("--to-degree", type=int, required=True, help="target degree")
    p.add_argument("--method", choices=("matching", "leastsq", "taylor"), default="matching",
                   help="reduction method")
    p.add_argument("--tau", type=float, default=0.5, help="Taylor offset")
    p.add_argument("--params", default=None,
                   help="comma-separated matching parameters (default: uniform)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("approx", help="approximate by low-order segments", formatter_class=fmt)
    p.add_argument("curve", help="curve document (JSON)")
    p.add_argument("--target-degree", type=int, required=True, help="segment degree")
    p.add_argument("--method", choices=("matching", "leastsq", "taylor"), default="matching",
                   help="reduction method")
    p.add_argument("--tau", type=float, default=0.5, help="Taylor offset")
    p.add_argument("--params", default=None,
                   help="comma-separated matching parameters (default: uniform)")
    p.add_argument("--metric", choices=METRIC_KINDS, default="ctrlpoint", help="distance kind")
    p.add_argument("--samples", type=int, default=256, help="samples for sampled metrics")
    p.add_argument("--tolerance", type=float, default=None, help="approximation tolerance")
    p.add_argument("--search", choices=("linear", "binary", "partition"), default=None,
                   help="adaptive search strategy, or a fixed partition")
    p.add_argument("--partition", default=None, help="comma-separated partition 0,...,1")
    p.add_argument("--rule-of-thumb", action="store_true",
                   help="uniform partition with 3(n-1) quadratic / 6(n-1) linear segments")
    p.add_argument("--max-segments", type=int, default=4096, help="search guard")
    p.add_argument("--min-width", type=float, default=1e-6, help="smallest partition cell")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("features", help="analytic features of a curve or chain",
                       formatter_class=fmt)
    p.add_argument("input", help="curve or chain document (JSON)")
    p.add_argument("--length", action="store_true", help="arc length")
    p.add_argument("--max-curvature", action="store_true", help="maximum |curvature|")
    p.add_argument("--dist-to-point", type=float, nargs=2, metavar=("X", "Y"), default=None,
                   help="distance to a point")
    p.add_argument("--dist-to-segment", type=float, nargs=4,
                   metavar=("X0", "Y0", "X1", "Y1"), default=None,
                   help="distance to a line segment")
    p.add_argument("--halfspace", type=float, nargs=4, metavar=("AX", "AY", "BX", "BY"),
                   default=None, help="violating intervals of halfspace a.(x-b) <= 0")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("experiment", help="run a study and write CSV", formatter_class=fmt)
    p.add_argument("--study", choices=("error", "scaling"), required=True)
    p.add_argument("--seed", type=int, default=0, help="study seed")
    p.add_argument("--trials", type=int, default=200, help="trials per cell")
    p.add_argument("--degrees", default="5,7,9", help="comma-separated source degrees")
    p.add_argument("--segments", default="4,8,12,16",
                   help="comma-separated segment counts (error study)")
    p.add_argument("--tolerances", default="0.1,0.01",
                   help="comma-separated tolerances (scaling study)")
    p.add_argument("--methods", default="matching,leastsq,taylor",
                   help="reduction methods (error study)")
    p.add_argument("--features", default=",".join(experiments.FEATURES),
                   help="features (error study)")
    p.add_argument("--search-kinds", default="linear,binary",
                   help="search strategies (scaling study)")
    p.add_argument("--target-degree", type=int, default=2, help="segment degree")
    p.add_argument("--dense-samples", type=int, default=100_000,
                   help="samples for ground-truth features")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ToleranceUnreachable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except CurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
