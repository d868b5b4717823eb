"""Polynomial bases (Bernstein, monomial, Taylor) and their transformations.

Coefficient matrices are laid out with one column per basis function, so a
d-dimensional degree-n curve is a (d, n+1) matrix P and the curve value at t
is P @ basis_vector(spec, n, t).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np

from .errors import DegenerateInterval, DegreeTooHigh, DuplicateParams

# Bernstein<->monomial transforms degrade factorially with degree; reject
# degrees where double precision can no longer support them.
MAX_DEGREE = 30

# Parameters closer than this are treated as duplicates (basis matrices
# would be numerically singular).
MIN_PARAM_GAP = 1e-9


class BasisKind(Enum):
    BERNSTEIN = "bernstein"
    MONOMIAL = "monomial"
    TAYLOR = "taylor"


@dataclass(frozen=True)
class BasisSpec:
    """A polynomial basis; the Taylor basis carries its expansion offset."""

    kind: BasisKind
    taylor_offset: float | None = None

    def __post_init__(self):
        if self.kind is BasisKind.TAYLOR:
            if self.taylor_offset is None or not np.isfinite(self.taylor_offset):
                raise ValueError("Taylor basis requires a finite offset")
        elif self.taylor_offset is not None:
            raise ValueError(f"{self.kind.value} basis takes no offset")

    @staticmethod
    def bernstein() -> "BasisSpec":
        return BasisSpec(BasisKind.BERNSTEIN)

    @staticmethod
    def monomial() -> "BasisSpec":
        return BasisSpec(BasisKind.MONOMIAL)

    @staticmethod
    def taylor(offset: float) -> "BasisSpec":
        return BasisSpec(BasisKind.TAYLOR, float(offset))


def check_degree(n: int) -> int:
    n = int(n)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > MAX_DEGREE:
        raise DegreeTooHigh(f"degree {n} exceeds cap {MAX_DEGREE}")
    return n


def check_distinct(params) -> np.ndarray:
    """Validate pairwise-distinct parameters (min gap > MIN_PARAM_GAP)."""
    params = np.asarray(params, dtype=float)
    if params.size == 0:
        raise ValueError("parameter list must be nonempty")
    s = np.sort(params)
    if params.size > 1 and np.min(np.diff(s)) <= MIN_PARAM_GAP:
        raise DuplicateParams(f"parameters not pairwise distinct: {params.tolist()}")
    return params


def bernstein_values(n: int, ts) -> np.ndarray:
    """Bernstein basis values; shape (..., n+1) for ts of shape (...)."""
    ts = np.asarray(ts, dtype=float)
    i = np.arange(n + 1)
    coef = np.array([comb(n, k) for k in i], dtype=float)
    t = ts[..., None]
    # 0**0 = 1 under numpy power, so endpoints come out exact
    return coef * t**i * (1.0 - t) ** (n - i)


def basis_vector(spec: BasisSpec, n: int, t: float) -> np.ndarray:
    """Evaluate the length-(n+1) basis vector at a single parameter."""
    n = check_degree(n)
    t = float(t)
    if spec.kind is BasisKind.BERNSTEIN:
        return bernstein_values(n, t)
    if spec.kind is BasisKind.MONOMIAL:
        return np.power(t, np.arange(n + 1))
    return np.power(t - spec.taylor_offset, np.arange(n + 1))


def basis_matrix(spec: BasisSpec, n: int, params) -> np.ndarray:
    """Matrix whose column j is the basis vector at params[j]; (n+1, m+1)."""
    n = check_degree(n)
    params = np.asarray(params, dtype=float)
    if params.ndim != 1 or params.size == 0:
        raise ValueError("params must be a nonempty 1-D sequence")
    if spec.kind is BasisKind.BERNSTEIN:
        return bernstein_values(n, params).T
    offset = 0.0 if spec.kind is BasisKind.MONOMIAL else spec.taylor_offset
    return np.power(params[None, :] - offset, np.arange(n + 1)[:, None])


def _monomial_to_bernstein(n: int) -> np.ndarray:
    M = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(i, n + 1):
            M[i, j] = (-1) ** (j - i) * comb(n, j) * comb(j, i)
    return M


def _bernstein_to_monomial(n: int) -> np.ndarray:
    M = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(i, n + 1):
            M[i, j] = comb(j, i) / comb(n, i)
    return M


def _monomial_to_taylor(n: int, tau: float) -> np.ndarray:
    M = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(i + 1):
            M[i, j] = comb(i, j) * (-tau) ** (i - j)
    return M


def _taylor_to_monomial(n: int, tau: float) -> np.ndarray:
    M = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(i + 1):
            M[i, j] = comb(i, j) * tau ** (i - j)
    return M


def transform_matrix(from_spec: BasisSpec, to_spec: BasisSpec, n: int) -> np.ndarray:
    """Closed-form change-of-basis matrix T with T @ from_vec(t) = to_vec(t).

    Bernstein<->Taylor is the composition of the monomial legs; no basis
    matrix is ever inverted numerically here.
    """
    n = check_degree(n)
    if from_spec == to_spec:
        return np.eye(n + 1)
    fk, tk = from_spec.kind, to_spec.kind
    if fk is BasisKind.MONOMIAL and tk is BasisKind.BERNSTEIN:
        return _monomial_to_bernstein(n)
    if fk is BasisKind.BERNSTEIN and tk is BasisKind.MONOMIAL:
        return _bernstein_to_monomial(n)
    if fk is BasisKind.MONOMIAL and tk is BasisKind.TAYLOR:
        return _monomial_to_taylor(n, to_spec.taylor_offset)
    if fk is BasisKind.TAYLOR and tk is BasisKind.MONOMIAL:
        return _taylor_to_monomial(n, from_spec.taylor_offset)
    if fk is BasisKind.BERNSTEIN and tk is BasisKind.TAYLOR:
        return _monomial_to_taylor(n, to_spec.taylor_offset) @ _bernstein_to_monomial(n)
    if fk is BasisKind.TAYLOR and tk is BasisKind.BERNSTEIN:
        return _monomial_to_bernstein(n) @ _taylor_to_monomial(n, from_spec.taylor_offset)
    # Taylor -> Taylor with different offsets
    return _monomial_to_taylor(n, to_spec.taylor_offset) @ _taylor_to_monomial(
        n, from_spec.taylor_offset
    )


def convert_controls(P, from_spec: BasisSpec, to_spec: BasisSpec) -> np.ndarray:
    """Re-express a coefficient matrix in another basis.

    The returned Q satisfies Q @ to_vec(t) == P @ from_vec(t) for all t,
    which requires multiplying by the reverse transform on the right.
    """
    P = np.atleast_2d(np.asarray(P, dtype=float))
    n = P.shape[1] - 1
    return P @ transform_matrix(to_spec, from_spec, n)


def uniform_params(n: int, interval=(0.0, 1.0)) -> np.ndarray:
    """n+1 uniformly spaced parameters over an interval ([0] for n = 0)."""
    a, b = float(interval[0]), float(interval[1])
    if n == 0:
        return np.array([a])
    return a + (b - a) * np.arange(n + 1) / n


def reparametrize(P, spec: BasisSpec, source, target) -> tuple[np.ndarray, BasisSpec]:
    """Affinely reparametrize a curve from one interval to another.

    The returned (Q, new_spec) traces the original curve over `source`
    while its own parameter runs over `target`:

        Q(t) = P((b-a)/(d-c) * t + (a*d - b*c)/(d-c))

    Computed by matching basis matrices at n+1 probe parameters spread
    uniformly over the source interval (their affine images are uniform
    over the target interval, keeping both matrices well conditioned);
    the square system is LU-solved, never inverted explicitly.
    """
    a, b = float(source[0]), float(source[1])
    c, d = float(target[0]), float(target[1])
    if b <= a or d <= c:
        raise DegenerateInterval(f"need a < b and c < d, got {source}, {target}")
    P = np.atleast_2d(np.asarray(P, dtype=float))
    n = check_degree(P.shape[1] - 1)

    new_spec = spec
    if spec.kind is BasisKind.TAYLOR:
        scale = (d - c) / (b - a)
        shift = (a * d - b * c) / (b - a)
        new_spec = BasisSpec.taylor(scale * spec.taylor_offset - shift)

    src_params = uniform_params(n, (a, b))
    dst_params = uniform_params(n, (c, d))
    src_mat = basis_matrix(spec, n, src_params)
    dst_mat = basis_matrix(new_spec, n, dst_params)
    # Q @ dst_mat = P @ src_mat  =>  dst_mat.T @ Q.T = (P @ src_mat).T
    Q = np.linalg.solve(dst_mat.T, (P @ src_mat).T).T
    return Q, new_spec
