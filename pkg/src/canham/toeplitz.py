"""Toeplitz moment matrices and the quadratic-form sums they generate.

The inverse solver for periodic measures only ever needs two scalars per
matrix size: ``Sigma[G_n^{-1}]``, the sum of all entries of the inverse
moment matrix, and ``Sigma[D_n G_n^{-1}]`` for the skew companion ``D_n``.
Both reduce to a single Hermitian Toeplitz solve against the all-ones
vector, done here by Levinson recursion with a dense fallback.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

from .errors import IllPosedError, ValidationError
from .measures import MomentSequence

__all__ = [
    "moment_matrix",
    "skew_matrix",
    "positivity_check",
    "levinson_solve",
    "inverse_sum",
    "skew_sum",
    "sigma_closed_form",
]

# Reflection coefficients this close to the unit circle make the Levinson
# update unreliable; hand off to a dense factorization instead.
_REFLECTION_LIMIT = 1.0 - 1e-12
_MINOR_RATIO_LIMIT = 1e-13


def _gamma_values(gamma, n: int) -> np.ndarray:
    """First column gamma_0 .. gamma_{n-1} as a complex array."""
    if isinstance(gamma, MomentSequence):
        if gamma.max_index < n - 1:
            raise ValidationError(
                f"need moments up to index {n - 1}, have {gamma.max_index}"
            )
        return np.array(gamma.values[:n], dtype=complex)
    arr = np.asarray(gamma, dtype=complex)
    if arr.ndim != 1 or arr.size < n:
        raise ValidationError(f"need at least {n} moments, got shape {arr.shape}")
    return arr[:n]


def moment_matrix(gamma, n: int) -> np.ndarray:
    """Hermitian Toeplitz moment matrix ``G_n`` with entries ``gamma_{j-k}``.

    Parameters
    ----------
    gamma : MomentSequence or array_like
        Moments ``gamma_0 .. gamma_{n-1}`` (negative indices by conjugation).
    n : int
        Matrix size.
    """
    if n < 1:
        raise ValidationError("matrix size must be >= 1")
    col = _gamma_values(gamma, n)
    out = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            d = j - k
            out[j, k] = col[d] if d >= 0 else col[-d].conjugate()
    return out


def skew_matrix(gamma, n: int) -> np.ndarray:
    """Skew companion ``D_n``: zero diagonal, ``gamma_{j-k}`` below it and
    ``-gamma_{k-j} -> -conj(gamma_{k-j})`` above, matching the sign pattern
    ``sign(j-k) * gamma_{j-k}`` of the Hermitian moment extension.  ``D_n``
    is anti-Hermitian, so ``Sigma[D_n G_n^{-1}]`` is purely imaginary.
    """
    if n < 1:
        raise ValidationError("matrix size must be >= 1")
    col = _gamma_values(gamma, n)
    out = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            if j > k:
                out[j, k] = col[j - k]
            elif k > j:
                out[j, k] = -col[k - j].conjugate()
    return out


def positivity_check(gamma, n: int) -> bool:
    """True iff ``G_m`` is positive definite for every ``m <= n``.

    Equivalent to a successful Cholesky factorization of ``G_n`` (the
    leading principal minors are exactly what Cholesky consumes).
    """
    try:
        np.linalg.cholesky(moment_matrix(gamma, n))
    except np.linalg.LinAlgError:
        return False
    return True


def levinson_solve(gamma, b) -> np.ndarray:
    """Solve ``G_n x = b`` for the Hermitian Toeplitz moment matrix.

    Classic forward/backward Levinson recursion, O(n^2).  Falls back to a
    dense Hermitian solve when a reflection coefficient comes within 1e-12
    of the unit circle; raises :class:`IllPosedError` when a leading-minor
    ratio collapses below 1e-13 of ``gamma_0``.

    Parameters
    ----------
    gamma : MomentSequence or array_like
        Moments ``gamma_0 ..`` of length >= ``len(b)``.
    b : array_like
        Right-hand side.
    """
    b = np.asarray(b, dtype=complex)
    n = b.size
    col = _gamma_values(gamma, n)
    if abs(col[0].imag) > 1e-12 * max(1.0, abs(col[0])) or col[0].real <= 0:
        raise ValidationError("gamma_0 must be real and positive")
    g0 = col[0].real

    # row j of G_{k+1} applied to a length-k vector needs gamma_{j - i}
    f = np.array([1.0 / col[0]], dtype=complex)  # G_1 f = e_1
    x = np.array([b[0] / col[0]], dtype=complex)
    err = g0
    for k in range(1, n):
        # error of the zero-padded forward vector against the new last row
        eps_f = np.dot(col[k:0:-1], f)
        if abs(eps_f) >= _REFLECTION_LIMIT:
            return _dense_solve(col, b)
        denom = 1.0 - abs(eps_f) ** 2
        backward = np.conj(f[::-1])
        f = np.concatenate([f, [0.0]]) - eps_f * np.concatenate([[0.0], backward])
        f /= denom
        err *= denom
        if err / g0 < _MINOR_RATIO_LIMIT:
            raise IllPosedError(
                f"leading-minor ratio collapsed to {err / g0:.3e}; "
                "moment matrix is numerically singular"
            )
        backward_new = np.conj(f[::-1])  # G_{k+1} b = e_{k+1}
        eps_x = np.dot(col[k:0:-1], x)
        x = np.concatenate([x, [0.0]]) + (b[k] - eps_x) * backward_new
    return x


def _dense_solve(col: np.ndarray, b: np.ndarray) -> np.ndarray:
    g = moment_matrix(col, b.size)
    # scipy only warns on an ill-conditioned system, but a collapsed moment
    # matrix means the underlying measure has fewer support points than the
    # matrix size - an ill-posed input, not an accuracy footnote.
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            return scipy.linalg.solve(g, b, assume_a="her")
        except (scipy.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as exc:
            raise IllPosedError(f"dense Toeplitz solve failed: {exc}") from None


def inverse_sum(gamma, n: int, method: str = "levinson") -> float:
    """``Sigma[G_n^{-1}]``, the sum of all entries of the inverse moment matrix.

    Real and positive for positive definite ``G_n``; ``Sigma[G_0^{-1}]`` is 0
    by convention so that first differences start at ``1/gamma_0``.
    """
    if n == 0:
        return 0.0
    ones = np.ones(n, dtype=complex)
    if method == "levinson":
        x = levinson_solve(gamma, ones)
    elif method == "dense":
        x = _dense_solve(_gamma_values(gamma, n), ones)
    else:
        raise ValidationError(f"unknown method {method!r}")
    total = complex(np.sum(x))
    if abs(total.imag) > 1e-10 * max(1.0, abs(total)):
        raise IllPosedError(
            f"Sigma[G^-1] came out non-real (imag {total.imag:.3e}); "
            "moments are not a valid Hermitian sequence"
        )
    return total.real


def skew_sum(gamma, n: int, method: str = "levinson") -> complex:
    """``Sigma[D_n G_n^{-1}]`` via one Toeplitz solve: ``(1^T D) (G^{-1} 1)``."""
    if n == 0:
        return 0.0
    ones = np.ones(n, dtype=complex)
    if method == "levinson":
        x = levinson_solve(gamma, ones)
    else:
        x = _dense_solve(_gamma_values(gamma, n), ones)
    colsum = skew_matrix(gamma, n).sum(axis=0)
    return complex(np.dot(colsum, x))


def sigma_closed_form(gamma, n: int) -> float:
    """Closed forms of ``Sigma[G_n^{-1}]`` for real moments and ``n <= 4``.

    Kept as an independent oracle for the linear-algebra path:

    * n=1: ``1/g0``
    * n=2: ``2/(g0+g1)``
    * n=3: ``(3 g0 - 4 g1 + g2) / (g0 (g0+g2) - 2 g1^2)``
    * n=4: ``2 (2 g0 - g1 - 2 g2 + g3) / ((g0+g3)(g0+g1) - (g1+g2)^2)``
    """
    col = _gamma_values(gamma, n)
    if np.max(np.abs(col.imag)) > 1e-12 * max(1.0, float(np.max(np.abs(col)))):
        raise ValidationError("closed forms cover real moment sequences only")
    g = col.real
    if n == 1:
        return 1.0 / g[0]
    if n == 2:
        return 2.0 / (g[0] + g[1])
    if n == 3:
        return (3 * g[0] - 4 * g[1] + g[2]) / (g[0] * (g[0] + g[2]) - 2 * g[1] ** 2)
    if n == 4:
        return (
            2.0
            * (2 * g[0] - g[1] - 2 * g[2] + g[3])
            / ((g[0] + g[3]) * (g[0] + g[1]) - (g[1] + g[2]) ** 2)
        )
    raise ValidationError("closed forms are tabulated for n = 1..4")
