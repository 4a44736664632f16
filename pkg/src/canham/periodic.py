"""Inverse spectral solver for periodic measures.

The Hamiltonian of a 2pi-periodic measure is constant on the half-integer
intervals ``(n/2, (n+1)/2)``.  Its diagonal steps are first differences of
the all-entry sums ``Sigma[G_n^{-1}]`` of inverse Toeplitz moment matrices,
and the off-diagonal steps come from the skew companion the same way.  The
convolution-kernel profile behind those formulas is exposed as well, both
for inspection and because its derivative provides an independent route to
the same step heights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import toeplitz
from .errors import ConsistencyError, ValidationError
from .hamiltonian import HamiltonianBlock, PiecewiseHamiltonian
from .measures import (
    MomentSequence,
    PeriodicMeasure,
    PeriodicMomentMeasure,
    dual_measure,
    periodic_moments,
)

__all__ = [
    "hg_sequences",
    "KernelProfile",
    "kernel_profile",
    "hamiltonian_from_periodic",
]


def _moments_of(measure_or_moments, max_index: int) -> MomentSequence:
    if isinstance(measure_or_moments, MomentSequence):
        if measure_or_moments.max_index < max_index:
            raise ValidationError(
                f"need moments up to {max_index}, have {measure_or_moments.max_index}"
            )
        return measure_or_moments
    if isinstance(measure_or_moments, (PeriodicMeasure, PeriodicMomentMeasure)):
        return periodic_moments(measure_or_moments, max_index)
    raise ValidationError("expected a periodic measure or a moment sequence")


def hg_sequences(measure_or_moments, n_steps: int):
    """Diagonal and off-diagonal step values ``h_0..h_N`` and ``g_0..g_N``.

    ``h_n = Sigma[G_{n+1}^{-1}] - Sigma[G_n^{-1}]`` (so ``h_0 = 1/gamma_0``)
    and ``g_n = -i (Sigma[D_{n+1} G_{n+1}^{-1}] - Sigma[D_n G_n^{-1}])`` (so
    ``g_0 = 0``).  The skew sums themselves are purely imaginary because
    ``D_n`` is anti-Hermitian, hence the factor ``-i``, whose sign makes the
    direct problem reproduce the measure rather than its reflection; a
    nontrivial real residue in the sums flags corrupted moments.
    """
    if n_steps < 0:
        raise ValidationError("number of steps must be >= 0")
    gamma = _moments_of(measure_or_moments, n_steps)
    if not toeplitz.positivity_check(gamma, n_steps + 1):
        raise ValidationError(
            "moment matrix is not positive definite; not a valid measure"
        )
    sig = [toeplitz.inverse_sum(gamma, n) for n in range(n_steps + 2)]
    skew = [toeplitz.skew_sum(gamma, n) for n in range(n_steps + 2)]
    h = np.diff(np.asarray(sig))
    g_complex = -1j * np.diff(np.asarray(skew))
    scale = max(1.0, float(np.max(np.abs(g_complex)))) if g_complex.size else 1.0
    if np.max(np.abs(g_complex.imag), initial=0.0) > 1e-10 * scale:
        raise ConsistencyError(
            "skew quadratic sums have a nontrivial real part "
            f"({np.max(np.abs(g_complex.imag)):.3e}); moments are inconsistent"
        )
    g = g_complex.real
    if np.any(h <= 0.0):
        raise ValidationError("diagonal steps must be positive")
    return h, g


@dataclass(frozen=True)
class KernelProfile:
    """Step profile of the truncated convolution kernel at time ``t``.

    The kernel is constant on the 2n+1 intervals that the translates
    ``+-t + Z`` cut out of ``(-t, t)`` where ``n = floor(2t)``.
    ``breakpoints`` holds the 2n+2 interval endpoints, ``values`` the
    constants (expanding intervals interleaved with shrinking ones), and
    ``k0`` the half-integral of the profile.
    """

    t: float
    breakpoints: tuple[float, ...]
    values: tuple[float, ...]
    k0: float

    def integral(self) -> float:
        widths = np.diff(np.asarray(self.breakpoints))
        return float(np.dot(widths, np.asarray(self.values)))


def kernel_profile(measure_or_moments, t: float) -> KernelProfile:
    """Piecewise-constant kernel profile on ``(-t, t)``.

    For ``n/2 < t < (n+1)/2`` the 2n+1 interval constants solve the two
    all-ones Toeplitz systems: ``G_{n+1} x = 1`` gives the n+1 expanding
    intervals, ``G_n y = 1`` the n shrinking ones.  Half-integer ``t`` sits
    on a profile discontinuity and is rejected.
    """
    if t <= 0:
        raise ValidationError("profile time must be positive")
    two_t = 2.0 * t
    if abs(two_t - round(two_t)) < 1e-12:
        raise ValidationError(
            f"profile is discontinuous at half-integer t = {t}"
        )
    n = int(math.floor(two_t))
    gamma = _moments_of(measure_or_moments, n)
    x = toeplitz.levinson_solve(gamma, np.ones(n + 1))
    y = toeplitz.levinson_solve(gamma, np.ones(n)) if n else np.zeros(0)
    for name, vec in (("expanding", x), ("shrinking", y)):
        if vec.size and np.max(np.abs(vec.imag)) > 1e-10 * max(
            1.0, float(np.max(np.abs(vec)))
        ):
            raise ConsistencyError(f"{name} profile values are not real")
    points = sorted(
        {-t + m for m in range(1, n + 1)} | {t - m for m in range(1, n + 1)}
    )
    breakpoints = tuple([-t] + points + [t])
    values = []
    for i in range(2 * n + 1):
        if i % 2 == 0:
            values.append(float(x[i // 2].real))
        else:
            values.append(float(y[i // 2].real))
    widths = np.diff(np.asarray(breakpoints))
    k0 = 0.5 * float(np.dot(widths, np.asarray(values)))
    return KernelProfile(t, breakpoints, tuple(values), k0)


def hamiltonian_from_periodic(
    measure_or_moments,
    n_steps: int,
    gauge_k: float = 0.0,
    crosscheck: bool = False,
) -> PiecewiseHamiltonian:
    """Solve the inverse problem on ``(0, (N+1)/2)`` for a periodic measure.

    Block ``n`` lives on ``(n/2, (n+1)/2)`` with entries ``h11 = h_n``,
    ``h12 = g_n - k h_n`` (the free gauge parameter tilts the chain) and
    ``h22 = (1 + h12^2)/h11``, so every block has determinant one.

    With ``crosscheck=True`` (even measures only) the dual measure's
    diagonal steps are computed independently and compared against ``h22``;
    disagreement beyond 1e-6 raises :class:`ConsistencyError`.
    """
    if n_steps < 0:
        raise ValidationError("number of steps must be >= 0")
    h, g = hg_sequences(measure_or_moments, n_steps)
    blocks = []
    for n in range(n_steps + 1):
        h11 = float(h[n])
        h12 = float(g[n]) - gauge_k * h11
        h22 = (1.0 + h12**2) / h11
        blocks.append(HamiltonianBlock(0.5 * n, 0.5 * (n + 1), h11, h12, h22))
    ham = PiecewiseHamiltonian(tuple(blocks))
    if crosscheck:
        gamma = _moments_of(measure_or_moments, n_steps)
        if not gamma.is_even(1e-12):
            raise ValidationError(
                "dual cross-check requires an even measure (real moments)"
            )
        measure = (
            measure_or_moments
            if not isinstance(measure_or_moments, MomentSequence)
            else PeriodicMomentMeasure(measure_or_moments)
        )
        dual = dual_measure(measure, b=0.0, max_index=n_steps)
        h_dual, _ = hg_sequences(dual, n_steps)
        # the dual diagonal equals h22 at gauge k = 0; tilting the gauge
        # shifts h22 by k^2 h11, which the dual does not see
        h22 = np.array([b.h22 for b in ham.blocks])
        worst = float(np.max(np.abs(h_dual + (gauge_k**2) * h - h22)))
        if worst > 1e-6:
            raise ConsistencyError(
                f"dual-measure cross-check failed: max |h22 - dual| = {worst:.3e}"
            )
    return ham
