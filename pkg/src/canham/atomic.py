"""Inverse spectral solver for Lebesgue-plus-point-masses line measures.

For ``mu = alpha * Lebesgue + sum_n pi * beta_n * delta_{lambda_n}`` the
Fourier-domain kernel equation collapses onto the atom frequencies and
becomes the finite linear system ``(alpha I + S_t B) c = L_t`` built from
truncated sinc inner products.  The diagonal Hamiltonian entry is then

    h(t) = 1/alpha - (pi / (2 alpha)) d/dt <B c_t, L_t>,

with the time derivative taken analytically through the solved system.
Closed forms for a single atom, the rank-one update for adding mass at the
origin, and the assembled Hamiltonian rows live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, ValidationError
from .hamiltonian import SampledHamiltonian
from .measures import LineMeasure

__all__ = [
    "SolitonSystem",
    "soliton_coefficients",
    "h_atomic",
    "single_atom_closed_forms",
    "add_point_mass_at_zero",
    "hamiltonian_from_atomic",
]

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def _sinc_t(t: float, x: np.ndarray) -> np.ndarray:
    """``sin(t x)/x`` with the removable singularity handled by series."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 1e-8
    xs = np.where(small, 1.0, x)
    out = np.sin(t * xs) / xs
    return np.where(small, t - t**3 * x**2 / 6.0, out)


def _atom_arrays(measure_or_atoms):
    if isinstance(measure_or_atoms, LineMeasure):
        atoms = measure_or_atoms.atoms
    else:
        atoms = tuple((float(a), float(b)) for a, b in measure_or_atoms)
    lam = np.array([a for a, _ in atoms], dtype=float)
    beta = np.array([b for _, b in atoms], dtype=float)
    if np.any(beta <= 0):
        raise ValidationError("atom weights must be positive")
    if lam.size != np.unique(np.round(lam, 12)).size:
        raise ValidationError("atom frequencies must be distinct")
    return lam, beta


@dataclass(frozen=True)
class SolitonSystem:
    """Solved truncated-sinc system at time ``t``.

    ``(alpha I + S B) c = ell`` with ``S_jk = sinc_t(lam_j - lam_k)``
    (diagonal ``t``), ``B = diag(beta)`` and
    ``ell_n = sqrt(2/pi) sinc_t(lam_n)``.  ``dc`` is the analytic time
    derivative of the coefficients.
    """

    t: float
    alpha: float
    lam: np.ndarray
    beta: np.ndarray
    smat: np.ndarray
    ell: np.ndarray
    coeff: np.ndarray
    dcoeff: np.ndarray


def soliton_coefficients(alpha: float, atoms, t: float) -> SolitonSystem:
    """Build and solve the sinc system, with its analytic time derivative.

    Differentiating ``(alpha I + S B) c = ell`` in ``t`` gives
    ``dc = (alpha I + S B)^{-1} (ell' - S' B c)`` where ``S'`` and ``ell'``
    replace the truncated sincs by plain cosines.  The solve residual is
    verified below 1e-12.
    """
    if alpha <= 0:
        raise ValidationError("Lebesgue coefficient must be positive")
    if t < 0:
        raise ValidationError("time must be >= 0")
    lam, beta = _atom_arrays(atoms)
    n = lam.size
    diff = lam[:, None] - lam[None, :]
    smat = _sinc_t(t, diff)
    ell = _SQRT_2_OVER_PI * _sinc_t(t, lam)
    system = alpha * np.eye(n) + smat * beta[None, :]
    coeff = np.linalg.solve(system, ell) if n else np.zeros(0)
    if n:
        resid = float(np.max(np.abs(system @ coeff - ell)))
        if resid > 1e-12 * max(1.0, float(np.max(np.abs(ell)))):
            raise ConsistencyError(f"sinc system residual {resid:.3e} too large")
    ds = np.cos(t * diff)
    dell = _SQRT_2_OVER_PI * np.cos(t * lam)
    dcoeff = (
        np.linalg.solve(system, dell - (ds * beta[None, :]) @ coeff)
        if n
        else np.zeros(0)
    )
    return SolitonSystem(t, alpha, lam, beta, smat, ell, coeff, dcoeff)


def h_atomic(alpha: float, atoms, t: float) -> float:
    """Diagonal Hamiltonian entry ``h(t)`` for a line measure.

    ``h = 1/alpha - (pi / 2 alpha) (<B c', ell> + <B c, ell'>)``; with no
    atoms this is exactly ``1/alpha``.  The result must be positive.
    """
    sys_ = soliton_coefficients(alpha, atoms, t)
    if sys_.lam.size == 0:
        return 1.0 / alpha
    dell = _SQRT_2_OVER_PI * np.cos(t * sys_.lam)
    inner = float(
        np.dot(sys_.beta * sys_.dcoeff, sys_.ell)
        + np.dot(sys_.beta * sys_.coeff, dell)
    )
    h = 1.0 / alpha - math.pi / (2.0 * alpha) * inner
    if h <= 0.0:
        raise ConsistencyError(f"nonpositive diagonal value h({t}) = {h}")
    return h


def single_atom_closed_forms(alpha: float, beta: float, lam: float):
    """Closed-form ``(h, g)`` callables for ``alpha m + pi beta delta_lam``.

    ``h(t) = d/dt [ t/alpha - (beta/alpha) sin^2(lam t) / (lam^2 (alpha +
    beta t)) ]`` evaluated analytically; ``lam = 0`` degenerates to
    ``alpha/(alpha + beta t)^2``.  The off-diagonal ``g`` vanishes at
    ``lam = 0`` by symmetry and otherwise follows the companion closed form.
    """
    if alpha <= 0 or beta <= 0:
        raise ValidationError("alpha and beta must be positive")

    def h(t):
        t = np.asarray(t, dtype=float)
        denom = alpha + beta * t
        # sin(2 lam t)/lam and sin^2(lam t)/lam^2 via singularity-safe sincs
        s2 = 2.0 * t * np.sinc(2.0 * lam * t / math.pi)
        sq = (t * np.sinc(lam * t / math.pi)) ** 2
        val = 1.0 / alpha - (beta / alpha) * (s2 * denom - beta * sq) / denom**2
        return val if val.shape else float(val)

    def g(t):
        t = np.asarray(t, dtype=float)
        if lam == 0.0:
            out = np.zeros_like(t)
            return out if out.shape else 0.0
        denom = alpha + beta * t
        val = -(beta / (alpha * math.pi * lam)) * (
            1.0
            - (alpha / denom) * np.cos(2.0 * lam * t)
            - ((alpha * beta + 2.0 * beta**2 * t) / denom**2)
            * (np.sin(2.0 * lam * t) / (2.0 * lam))
            + (beta**2 / denom**2) * (np.sin(lam * t) ** 2 / lam**2)
        )
        return val if val.shape else float(val)

    return h, g


def add_point_mass_at_zero(h, weight: float):
    """Diagonal entry after adding ``pi * weight * delta_0`` to the measure.

    The update is the rank-one formula
    ``h_r(t) = h(t) / (1 + r \\int_0^t h)^2`` with ``r = weight``; it forms a
    semigroup in ``r``.  ``h`` may be any nonnegative callable of ``t``.
    """
    if weight < 0:
        raise ValidationError("added weight must be >= 0")

    def updated(t):
        F = _adaptive_simpson(h, 0.0, float(t))
        return float(h(t)) / (1.0 + weight * F) ** 2

    return updated


def _adaptive_simpson(f, a: float, b: float, tol: float = 1e-10) -> float:
    """Adaptive Simpson quadrature of a smooth scalar function."""
    if b < a:
        raise ValidationError("integration endpoints out of order")
    if b == a:
        return 0.0

    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, eps, depth):
        xm = 0.5 * (x0 + x2)
        lm, rm = 0.5 * (x0 + xm), 0.5 * (xm + x2)
        flm, frm = float(f(lm)), float(f(rm))
        left = simpson(x0, xm, f0, flm, f1)
        right = simpson(xm, x2, f1, frm, f2)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return recurse(x0, xm, f0, flm, f1, left, eps / 2.0, depth - 1) + recurse(
            xm, x2, f1, frm, f2, right, eps / 2.0, depth - 1
        )

    mid = 0.5 * (a + b)
    fa, fm, fb = float(f(a)), float(f(mid)), float(f(b))
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 48)


def hamiltonian_from_atomic(
    measure: LineMeasure, t_grid, gauge_k: float = 0.0
) -> SampledHamiltonian:
    """Sampled Hamiltonian rows ``(t, h11, h12, h22)`` on a time grid.

    Even atom configurations (frequencies symmetric about 0 with matched
    weights) have ``g = 0``; a single off-origin atom uses the closed-form
    ``g``.  Off-diagonal recovery for several non-symmetric atoms is not
    implemented and is rejected.  Rows carry ``h12 = g - k h11`` and
    ``h22 = (1 + h12^2)/h11`` so each sample has determinant one.
    """
    if not isinstance(measure, LineMeasure):
        raise ValidationError("expected a line measure")
    if measure.lebesgue <= 0:
        raise ValidationError("inverse solver needs a positive Lebesgue part")
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0:
        raise ValidationError("time grid must be a nonempty 1-d array")
    if np.any(t_grid < 0):
        raise ValidationError("time grid must be nonnegative")
    lam, beta = _atom_arrays(measure)
    alpha = measure.lebesgue

    def is_even() -> bool:
        pairs = {(round(l, 12), round(b, 12)) for l, b in zip(lam, beta)}
        return all((round(-l, 12), b) in pairs for l, b in pairs)

    if is_even():
        g_fun = None
    elif lam.size == 1:
        _, g_fun = single_atom_closed_forms(alpha, float(beta[0]), float(lam[0]))
    else:
        raise ValidationError(
            "off-diagonal recovery for several non-symmetric point masses "
            "is not implemented; only even configurations or a single atom"
        )
    h_vals = np.array([h_atomic(alpha, measure.atoms, t) for t in t_grid])
    g_vals = (
        np.zeros_like(h_vals)
        if g_fun is None
        else np.asarray(g_fun(t_grid), dtype=float)
    )
    h12 = g_vals - gauge_k * h_vals
    h22 = (1.0 + h12**2) / h_vals
    return SampledHamiltonian(t_grid, h_vals, h12, h22)
