import numpy as np
import pytest

from beziersplit.adaptive import (
    AdaptiveConfig,
    adaptive_binary_search,
    adaptive_linear_search,
    approximate_over_partition,
    rule_of_thumb_partition,
    segment_distances,
    validate_partition,
)
from beziersplit.curves import (
    BezierCurve,
    evaluate,
    evaluate_many,
    point_in_hull_violation,
    reverse,
    split_to_interval,
)
from beziersplit.degree import Matching, elevate, reduce
from beziersplit.errors import (
    DegenerateInterval,
    DegreeOrder,
    ToleranceUnreachable,
    UnsupportedTargetDegree,
)
from beziersplit.metrics import distance
from beziersplit.polybasis import BasisSpec, convert_controls


def _rand_curve(rng, n, d=2):
    return BezierCurve(rng.uniform(0, 1, size=(d, n + 1)))


def test_partition_validation():
    validate_partition([0.0, 0.4, 1.0])
    with pytest.raises(DegenerateInterval):
        validate_partition([0.0, 0.5])
    with pytest.raises(DegenerateInterval):
        validate_partition([0.0, 0.5, 0.5, 1.0])
    with pytest.raises(DegenerateInterval):
        validate_partition([0.1, 0.5, 1.0])


def test_single_cell_identity_partition():
    rng = np.random.default_rng(40)
    c = _rand_curve(rng, 4)
    chain = approximate_over_partition(c, 4, [0.0, 1.0], Matching())
    assert len(chain.segments) == 1
    assert np.abs(chain.segments[0].controls - c.controls).max() < 1e-10


def test_elevated_line_reduces_to_exact_chords():
    line = elevate(BezierCurve([[0.0, 1.0], [0.0, 2.0]]), 8)
    chain = approximate_over_partition(line, 1, np.linspace(0, 1, 6), Matching())
    for seg, (a, b) in zip(chain.segments, zip(chain.partition, chain.partition[1:])):
        sub = split_to_interval(line, (a, b))
        assert distance(sub, seg, "ctrlpoint") < 1e-10


def test_quartic_segment_endpoints_interpolate():
    # 1-D quartic t^4 built from its monomial coefficients
    mono = np.zeros((1, 5))
    mono[0, 4] = 1.0
    c = BezierCurve(convert_controls(mono, BasisSpec.monomial(), BasisSpec.bernstein()))
    partition = np.linspace(0, 1, 5)
    chain = approximate_over_partition(c, 2, partition, Matching())
    for seg, (a, b) in zip(chain.segments, zip(partition, partition[1:])):
        assert np.abs(evaluate(seg, 0.0) - evaluate(c, a)).max() < 1e-10
        assert np.abs(evaluate(seg, 1.0) - evaluate(c, b)).max() < 1e-10


def test_matching_chain_is_continuous():
    rng = np.random.default_rng(41)
    c = _rand_curve(rng, 8)
    chain = approximate_over_partition(c, 2, np.linspace(0, 1, 9), Matching())
    for left, right in zip(chain.segments, chain.segments[1:]):
        assert np.abs(evaluate(left, 1.0) - evaluate(right, 0.0)).max() < 1e-9


def test_linear_search_trivial_cases():
    rng = np.random.default_rng(42)
    c = _rand_curve(rng, 2)
    chain = adaptive_linear_search(c, AdaptiveConfig(target_degree=2, tolerance=1e-9))
    assert len(chain.segments) == 1

    line = elevate(BezierCurve([[0.0, 1.0], [1.0, -1.0]]), 8)
    chain = adaptive_linear_search(line, AdaptiveConfig(target_degree=1, tolerance=1e-9))
    assert len(chain.segments) == 1


def test_linear_search_certificate():
    rng = np.random.default_rng(43)
    for _ in range(10):
        c = _rand_curve(rng, 8)
        cfg = AdaptiveConfig(target_degree=2, method=Matching(), metric="ctrlpoint", tolerance=0.1)
        chain = adaptive_linear_search(c, cfg)
        # independent re-measurement
        for d in segment_distances(c, chain, "ctrlpoint"):
            assert d <= 0.1
        # uniform partition
        assert np.allclose(np.diff(chain.partition), np.diff(chain.partition)[0])


def test_binary_search_trivial_case():
    rng = np.random.default_rng(44)
    c = _rand_curve(rng, 2)
    chain = adaptive_binary_search(c, AdaptiveConfig(target_degree=2, tolerance=1e-9))
    assert chain.partition == (0.0, 1.0)


def test_binary_search_certificate_and_validity():
    rng = np.random.default_rng(45)
    for _ in range(10):
        c = _rand_curve(rng, 8)
        cfg = AdaptiveConfig(target_degree=2, tolerance=0.05)
        chain = adaptive_binary_search(c, cfg)
        for d in segment_distances(c, chain, "ctrlpoint"):
            assert d <= 0.05
        params = np.asarray(chain.partition)
        assert params[0] == 0.0 and params[-1] == 1.0
        assert np.all(np.diff(params) > 0)


def test_binary_search_symmetry_via_reversal():
    rng = np.random.default_rng(46)
    for _ in range(5):
        c = _rand_curve(rng, 7)
        cfg = AdaptiveConfig(target_degree=2, tolerance=0.05)
        fwd = adaptive_binary_search(c, cfg).partition
        bwd = adaptive_binary_search(reverse(c), cfg).partition
        mirrored = tuple(1.0 - t for t in reversed(bwd))
        assert len(fwd) == len(mirrored)
        assert np.abs(np.array(fwd) - np.array(mirrored)).max() < 1e-12


def test_binary_beats_linear_at_tight_tolerance():
    # the adaptive refinement pays off once the tolerance forces many cells
    rng = np.random.default_rng(47)
    cfg = AdaptiveConfig(target_degree=2, tolerance=0.01)
    lin_total = bin_total = 0
    for _ in range(40):
        c = _rand_curve(rng, 8)
        lin_total += len(adaptive_linear_search(c, cfg).segments)
        bin_total += len(adaptive_binary_search(c, cfg).segments)
    assert bin_total <= lin_total


def test_monotone_in_tolerance():
    rng = np.random.default_rng(48)
    for _ in range(5):
        c = _rand_curve(rng, 7)
        for search in (adaptive_linear_search, adaptive_binary_search):
            loose = len(search(c, AdaptiveConfig(target_degree=2, tolerance=0.1)).segments)
            tight = len(search(c, AdaptiveConfig(target_degree=2, tolerance=0.01)).segments)
            assert tight >= loose


def test_search_determinism_bitwise():
    rng = np.random.default_rng(49)
    c = _rand_curve(rng, 8)
    cfg = AdaptiveConfig(target_degree=2, tolerance=0.03)
    for search in (adaptive_linear_search, adaptive_binary_search):
        one = search(c, cfg)
        two = search(c, cfg)
        assert one.partition == two.partition
        for s1, s2 in zip(one.segments, two.segments):
            assert np.array_equal(s1.controls, s2.controls)


def test_tolerance_unreachable():
    rng = np.random.default_rng(50)
    c = _rand_curve(rng, 8)
    with pytest.raises(ToleranceUnreachable):
        adaptive_linear_search(
            c, AdaptiveConfig(target_degree=1, tolerance=1e-6, max_segments=4)
        )
    with pytest.raises(ToleranceUnreachable):
        adaptive_binary_search(
            c, AdaptiveConfig(target_degree=1, tolerance=1e-12, min_width=1e-3)
        )
    with pytest.raises(ToleranceUnreachable):
        adaptive_binary_search(
            c, AdaptiveConfig(target_degree=1, tolerance=1e-6, max_segments=3)
        )


def test_target_degree_above_source_rejected():
    c = BezierCurve([[0.0, 1.0]])
    with pytest.raises(DegreeOrder):
        adaptive_linear_search(c, AdaptiveConfig(target_degree=2, tolerance=0.1))
    with pytest.raises(DegreeOrder):
        approximate_over_partition(c, 2, [0.0, 1.0])


def test_relative_bound_safety_per_segment():
    rng = np.random.default_rng(51)
    c = _rand_curve(rng, 8)
    cfg = AdaptiveConfig(target_degree=2, metric="ctrlpoint", tolerance=0.1)
    chain = adaptive_binary_search(c, cfg)
    ts = np.linspace(0, 1, 64)
    for seg, (a, b) in zip(chain.segments, zip(chain.partition, chain.partition[1:])):
        pts = evaluate_many(split_to_interval(c, (a, b)), ts)
        assert point_in_hull_violation(seg.controls, pts) <= cfg.tolerance + 1e-9


def test_rule_of_thumb_partition():
    assert len(rule_of_thumb_partition(8, 2)) - 1 == 21
    assert len(rule_of_thumb_partition(8, 1)) - 1 == 42
    assert np.allclose(rule_of_thumb_partition(2, 2), [0.0, 1 / 3, 2 / 3, 1.0])
    with pytest.raises(UnsupportedTargetDegree):
        rule_of_thumb_partition(8, 3)
    with pytest.raises(DegreeOrder):
        rule_of_thumb_partition(1, 2)


def test_reduce_matches_chain_segments():
    # chain segments are exactly split-then-reduce of the source
    rng = np.random.default_rng(52)
    c = _rand_curve(rng, 6)
    partition = [0.0, 0.3, 0.7, 1.0]
    chain = approximate_over_partition(c, 2, partition, Matching())
    for seg, (a, b) in zip(chain.segments, zip(partition, partition[1:])):
        direct = reduce(split_to_interval(c, (a, b)), 2, Matching())
        assert np.abs(seg.controls - direct.controls).max() < 1e-12
