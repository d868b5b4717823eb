"""Degree elevation and the three degree-reduction methods.

A reduction matrix R(n, m) is any right inverse of the elevation matrix
E(m, n); reduced controls are P @ R(n, m).  Three constructions are
provided: least squares (pseudo-inverse, L2/Frobenius-optimal), Taylor
(truncated expansion about an offset), and parameterwise matching
(interpolates the original curve at m+1 chosen parameters).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.linalg import cho_factor, cho_solve

from .curves import BezierCurve
from .errors import DegreeOrder
from .polybasis import (
    BasisSpec,
    basis_matrix,
    check_degree,
    check_distinct,
    transform_matrix,
    uniform_params,
)


@dataclass(frozen=True)
class LeastSquares:
    """Reduction via the pseudo-inverse of the elevation matrix."""


@dataclass(frozen=True)
class Taylor:
    """Reduction by truncating the Taylor expansion about `offset`."""

    offset: float = 0.5


@dataclass(frozen=True)
class Matching:
    """Reduction that preserves curve values at m+1 distinct parameters.

    params=None means uniformly spaced parameters i/m over the unit
    interval ("uniform matching reduction").
    """

    params: tuple[float, ...] | None = None


ReductionMethod = LeastSquares | Taylor | Matching


def matching_params(method: Matching, m: int) -> np.ndarray:
    if method.params is None:
        return uniform_params(m)
    params = check_distinct(method.params)
    if params.size != m + 1:
        raise ValueError(f"matching to degree {m} needs {m + 1} parameters, got {params.size}")
    return params


@lru_cache(maxsize=512)
def elevation_matrix(n: int, m: int) -> np.ndarray:
    """Elevation matrix E(n, m), shape (n+1, m+1), from its closed-form entries.

    [E]_{i,j} = C(n,i) C(m-n,j-i) / C(m,j) for 0 <= j-i <= m-n, else 0.
    Elevated controls are P @ E(n, m); columns sum to 1, rows to (m+1)/(n+1).
    """
    n, m = check_degree(n), check_degree(m)
    if m < n:
        raise DegreeOrder(f"cannot elevate degree {n} to lower degree {m}")
    E = np.zeros((n + 1, m + 1))
    for i in range(n + 1):
        for j in range(i, min(i + m - n, m) + 1):
            E[i, j] = comb(n, i) * comb(m - n, j - i) / comb(m, j)
    E.flags.writeable = False
    return E


def elevate(curve: BezierCurve, m: int) -> BezierCurve:
    """Exact re-expression of the curve with m+1 control points (m >= n)."""
    if m < curve.degree:
        raise DegreeOrder(f"cannot elevate degree {curve.degree} to {m}")
    if m == curve.degree:
        return curve
    return BezierCurve(curve.controls @ elevation_matrix(curve.degree, m))


@lru_cache(maxsize=512)
def reduction_matrix(n: int, m: int, method: ReductionMethod = Matching()) -> np.ndarray:
    """Reduction matrix R(n, m), shape (n+1, m+1), for m <= n.

    Every method satisfies E(m, n) @ R(n, m) = I.
    """
    n, m = check_degree(n), check_degree(m)
    if m > n:
        raise DegreeOrder(f"cannot reduce degree {n} to higher degree {m}")
    if isinstance(method, LeastSquares):
        E = elevation_matrix(m, n)
        # R = E^T (E E^T)^{-1}; the Gram matrix is SPD because E is full rank
        R = cho_solve(cho_factor(E @ E.T), E).T
    elif isinstance(method, Taylor):
        bern = BasisSpec.bernstein()
        taylor = BasisSpec.taylor(method.offset)
        R = transform_matrix(taylor, bern, n)[:, : m + 1] @ transform_matrix(bern, taylor, m)
    elif isinstance(method, Matching):
        params = matching_params(method, m)
        bern = BasisSpec.bernstein()
        Bn = basis_matrix(bern, n, params)
        Bm = basis_matrix(bern, m, params)
        # R = B_n(t_0..t_m) B_m(t_0..t_m)^{-1}, LU-solved
        R = np.linalg.solve(Bm.T, Bn.T).T
    else:
        raise TypeError(f"unknown reduction method: {method!r}")
    R = np.ascontiguousarray(R)
    R.flags.writeable = False
    return R


def reduce(curve: BezierCurve, m: int, method: ReductionMethod = Matching()) -> BezierCurve:
    """Approximate the curve by a degree-m curve (m <= n)."""
    return BezierCurve(curve.controls @ reduction_matrix(curve.degree, m, method))


def matching_reduction_matrix_monomial(n: int, m: int, params) -> np.ndarray:
    """Matching reduction matrix built in the monomial basis.

    Builds the alpha-row table from the base identity
    t^{m+1} - sum_k alpha_{1,k} t^k = prod_k (t - t_k) and the recursion
    alpha_{i+1,k} = alpha_{i,k-1} + alpha_{i,m} alpha_{1,k}, then conjugates
    by the monomial<->Bernstein transforms.  Agrees with the Bernstein
    basis-matrix construction.
    """
    n, m = check_degree(n), check_degree(m)
    if m > n:
        raise DegreeOrder(f"cannot reduce degree {n} to higher degree {m}")
    params = check_distinct(params)
    if params.size != m + 1:
        raise ValueError(f"need {m + 1} parameters, got {params.size}")
    V = np.zeros((n + 1, m + 1))
    V[: m + 1] = np.eye(m + 1)
    if n > m:
        # ascending coefficients of prod(t - t_k); leading coefficient is 1
        poly = npoly.polyfromroots(params)
        alpha = -poly[: m + 1]
        V[m + 1] = alpha
        for i in range(1, n - m):
            prev = V[m + i]
            nxt = np.empty(m + 1)
            nxt[0] = prev[m] * alpha[0]
            nxt[1:] = prev[:-1] + prev[m] * alpha[1:]
            V[m + 1 + i] = nxt
    bern, mono = BasisSpec.bernstein(), BasisSpec.monomial()
    return transform_matrix(mono, bern, n) @ V @ transform_matrix(bern, mono, m)


@dataclass(frozen=True)
class MatchingErrorForm:
    """Product form of the degree-one matching reduction error.

    original(t) - reduced(t) == delta * prod_i (t - roots[i]); delta
    depends only on the original control points, not on the parameters.
    """

    delta: np.ndarray
    roots: tuple[float, ...]

    def error_at(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        prod = np.ones_like(ts)
        for r in self.roots:
            prod = prod * (ts - r)
        return self.delta[:, None] * prod


def degree_one_matching_error(curve: BezierCurve, params) -> MatchingErrorForm:
    """Error form for matching reduction from degree n+1 to n at n+1 parameters.

    delta = sum_i (-1)^{n+1-i} C(n+1, i) p_i.
    """
    params = check_distinct(params)
    n1 = curve.degree
    if params.size != n1:
        raise ValueError(f"degree-one reduction of degree {n1} needs {n1} parameters")
    i = np.arange(n1 + 1)
    signs = np.where((n1 - i) % 2 == 0, 1.0, -1.0)
    coeffs = signs * np.array([comb(n1, k) for k in i], dtype=float)
    delta = curve.controls @ coeffs
    return MatchingErrorForm(delta=delta, roots=tuple(float(t) for t in params))
