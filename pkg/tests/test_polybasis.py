import numpy as np
import pytest

from beziersplit.errors import DegenerateInterval, DegreeTooHigh, DuplicateParams
from beziersplit.polybasis import (
    BasisSpec,
    basis_matrix,
    basis_vector,
    check_distinct,
    convert_controls,
    reparametrize,
    transform_matrix,
    uniform_params,
)

B = BasisSpec.bernstein()
M = BasisSpec.monomial()


def test_basis_vector_values():
    assert np.allclose(basis_vector(B, 2, 0.0), [1, 0, 0])
    assert np.allclose(basis_vector(B, 2, 0.5), [0.25, 0.5, 0.25])
    assert np.allclose(basis_vector(BasisSpec.taylor(0.5), 2, 0.5), [1, 0, 0])
    assert np.allclose(basis_vector(M, 3, 2.0), [1, 2, 4, 8])


def test_bernstein_partition_of_unity():
    for n in range(11):
        for t in np.linspace(0, 1, 11):
            v = basis_vector(B, n, t)
            assert np.all(v >= 0)
            assert abs(v.sum() - 1.0) < 1e-12


def test_basis_matrix_columns():
    assert np.allclose(basis_matrix(M, 1, [0, 1]), [[1, 1], [0, 1]])
    assert np.allclose(basis_matrix(B, 1, [0, 1]), np.eye(2))
    mat = basis_matrix(B, 2, [0, 0.5, 1])
    assert np.allclose(mat[:, 0], [1, 0, 0])
    assert np.allclose(mat[:, 1], [0.25, 0.5, 0.25])
    assert np.allclose(mat[:, 2], [0, 0, 1])


def test_square_basis_matrices_invertible():
    params = uniform_params(5)
    for spec in (B, M, BasisSpec.taylor(0.3)):
        mat = basis_matrix(spec, 5, params)
        assert np.linalg.cond(mat) < 1e8


def test_transform_matrix_closed_forms():
    assert np.allclose(transform_matrix(M, B, 1), [[1, -1], [0, 1]])
    assert np.allclose(transform_matrix(B, M, 1), [[1, 1], [0, 1]])
    for spec in (B, M, BasisSpec.taylor(0.7)):
        assert np.allclose(transform_matrix(spec, spec, 4), np.eye(5))


@pytest.mark.parametrize("n", [1, 3, 6, 10])
def test_transform_roundtrip_identity(n):
    mb = transform_matrix(M, B, n) @ transform_matrix(B, M, n)
    assert np.abs(mb - np.eye(n + 1)).max() < 1e-10
    T = BasisSpec.taylor(0.4)
    bt = transform_matrix(T, B, n) @ transform_matrix(B, T, n)
    assert np.abs(bt - np.eye(n + 1)).max() < 1e-9


@pytest.mark.parametrize("n", range(1, 9))
def test_transform_matches_basis_matrix_quotient(n):
    # closed forms agree with B_n(t) M_n(t)^{-1} at uniform parameters
    params = uniform_params(n)
    quotient = np.linalg.solve(
        basis_matrix(M, n, params).T, basis_matrix(B, n, params).T
    ).T
    assert np.abs(transform_matrix(M, B, n) - quotient).max() < 1e-8


@pytest.mark.parametrize(
    "src,dst",
    [
        (B, M), (M, B),
        (B, BasisSpec.taylor(0.3)), (BasisSpec.taylor(0.3), B),
        (M, BasisSpec.taylor(-0.8)), (BasisSpec.taylor(-0.8), M),
    ],
)
def test_transform_maps_basis_vectors(src, dst):
    n = 5
    T = transform_matrix(src, dst, n)
    for t in (-0.5, 0.0, 0.37, 1.0, 1.9):
        assert np.allclose(T @ basis_vector(src, n, t), basis_vector(dst, n, t), atol=1e-9)


def test_convert_controls():
    # the curve t has monomial coefficients (0, 1)
    assert np.allclose(convert_controls([[0.0, 1.0]], B, M), [[0.0, 1.0]])
    assert np.allclose(convert_controls([[3.0, 3.0, 3.0]], B, M), [[3.0, 0.0, 0.0]])
    rng = np.random.default_rng(0)
    P = rng.normal(size=(2, 5))
    T = BasisSpec.taylor(0.3)
    back = convert_controls(convert_controls(P, B, T), T, B)
    assert np.abs(back - P).max() < 1e-12


def test_convert_controls_preserves_curve_values():
    rng = np.random.default_rng(1)
    P = rng.normal(size=(3, 6))
    for dst in (M, BasisSpec.taylor(0.5)):
        Q = convert_controls(P, B, dst)
        for t in np.linspace(0, 1, 7):
            lhs = Q @ basis_vector(dst, 5, t)
            rhs = P @ basis_vector(B, 5, t)
            assert np.allclose(lhs, rhs, atol=1e-10)


def test_reparametrize_subinterval():
    Q, spec = reparametrize([[0.0, 1.0]], B, (0.0, 0.5), (0.0, 1.0))
    assert np.allclose(Q, [[0.0, 0.5]])
    assert spec == B


def test_reparametrize_identity_interval():
    rng = np.random.default_rng(2)
    P = rng.normal(size=(2, 4))
    Q, _ = reparametrize(P, B, (0.0, 1.0), (0.0, 1.0))
    assert np.abs(Q - P).max() < 1e-12


def test_reparametrize_halves_match_de_casteljau():
    from beziersplit.curves import BezierCurve, evaluate

    rng = np.random.default_rng(3)
    P = rng.normal(size=(2, 3))
    curve = BezierCurve(P)
    left, _ = reparametrize(P, B, (0.0, 0.5), (0.0, 1.0))
    right, _ = reparametrize(P, B, (0.5, 1.0), (0.0, 1.0))
    assert np.allclose(evaluate(BezierCurve(left), 0.5), evaluate(curve, 0.25), atol=1e-12)
    assert np.allclose(evaluate(BezierCurve(right), 0.5), evaluate(curve, 0.75), atol=1e-12)


def test_reparametrize_roundtrip():
    rng = np.random.default_rng(4)
    P = rng.normal(size=(2, 6))
    for spec in (B, M, BasisSpec.taylor(0.2)):
        Q, qspec = reparametrize(P, spec, (0.2, 0.7), (0.0, 1.0))
        back, bspec = reparametrize(Q, qspec, (0.0, 1.0), (0.2, 0.7))
        assert np.abs(back - P).max() < 1e-10
        assert bspec.kind == spec.kind
        if spec.taylor_offset is not None:
            assert bspec.taylor_offset == pytest.approx(spec.taylor_offset, abs=1e-12)


def test_reparametrize_taylor_offset():
    # tau_hat = (d-c)/(b-a) * tau - (a d - b c)/(b-a)
    _, spec = reparametrize([[1.0, 0.0, 2.0]], BasisSpec.taylor(0.5), (0.0, 0.5), (0.0, 1.0))
    assert spec.taylor_offset == pytest.approx(1.0)


def test_reparametrize_matches_pointwise_evaluation():
    rng = np.random.default_rng(5)
    P = rng.normal(size=(2, 5))
    a, b, c, d = 0.1, 0.9, -1.0, 2.0
    for spec in (B, M, BasisSpec.taylor(0.3)):
        Q, qspec = reparametrize(P, spec, (a, b), (c, d))
        for t in np.linspace(c, d, 9):
            s = (b - a) / (d - c) * t + (a * d - b * c) / (d - c)
            assert np.allclose(
                Q @ basis_vector(qspec, 4, t), P @ basis_vector(spec, 4, s), atol=1e-9
            )


def test_reparametrize_rejects_degenerate_interval():
    with pytest.raises(DegenerateInterval):
        reparametrize([[0.0, 1.0]], B, (0.5, 0.5), (0.0, 1.0))
    with pytest.raises(DegenerateInterval):
        reparametrize([[0.0, 1.0]], B, (0.0, 1.0), (1.0, 0.0))


def test_degree_cap():
    with pytest.raises(DegreeTooHigh):
        transform_matrix(M, B, 31)


def test_distinct_params_guard():
    with pytest.raises(DuplicateParams):
        check_distinct([0.0, 1e-10, 1.0])
    assert check_distinct([0.0, 0.5, 1.0]).tolist() == [0.0, 0.5, 1.0]


def test_basis_spec_validation():
    with pytest.raises(ValueError):
        BasisSpec.taylor(float("nan"))
    with pytest.raises(ValueError):
        BasisSpec(kind=B.kind, taylor_offset=0.5)
