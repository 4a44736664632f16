"""Direct spectral problem: transfer matrices and representing measures.

Given a piecewise-constant Hamiltonian the transfer matrix (matrizant) of
the canonical system is an explicit product of constant-coefficient blocks.
From its first column one reads the Hermite--Biehler function
``E = A - iC``, the spectral density ``1/|E|^2``, and the discrete
representing measure supported on the zeros of ``A`` with masses
``pi / (phi' |E|^2)`` where ``phi`` is the (strictly increasing) phase.
Verification closes the loop: the representing measure's averaged moments
must reproduce the moments of the measure the Hamiltonian was solved from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, ConsistencyError, ValidationError
from .hamiltonian import HamiltonianBlock, PiecewiseHamiltonian
from .measures import (
    LineMeasure,
    MomentSequence,
    PeriodicMeasure,
    PeriodicMomentMeasure,
    periodic_moments,
)

__all__ = [
    "TransferMatrix",
    "matrizant",
    "spectral_density",
    "RepresentingMeasure",
    "representing_measure",
    "normalize",
    "involution",
    "RoundtripReport",
    "roundtrip_residual",
]


@dataclass(frozen=True)
class TransferMatrix:
    """Matrizant ``M(t, z)`` with entries ``[[A, B], [C, D]]``.

    Entries broadcast over the ``z`` argument used to build them.  When
    derivative propagation was requested, ``dA .. dD`` hold d/dz of each
    entry.  ``log_scale`` is nonzero only for the overflow-safe evaluation:
    the true matrix is ``exp(log_scale)`` times the stored entries.
    """

    t: float
    z: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    dA: np.ndarray | None = None
    dB: np.ndarray | None = None
    dC: np.ndarray | None = None
    dD: np.ndarray | None = None
    log_scale: np.ndarray | float = 0.0

    @property
    def E(self) -> np.ndarray:
        """Hermite--Biehler function ``A - iC``."""
        return self.A - 1j * self.C

    def det(self) -> np.ndarray:
        return self.A * self.D - self.B * self.C


def _segments(ham: PiecewiseHamiltonian, t: float):
    """(length, block) pieces covering [0, t]."""
    if t < 0:
        raise ValidationError("matrizant time must be >= 0")
    if t > ham.total_time + 1e-12:
        raise ValidationError(
            f"time {t} beyond Hamiltonian coverage [0, {ham.total_time}]"
        )
    segs = []
    for b in ham.blocks:
        if b.t_lo >= t:
            break
        segs.append((min(b.t_hi, t) - b.t_lo, b))
    return segs


def matrizant(
    ham: PiecewiseHamiltonian,
    t: float,
    z,
    derivative: bool = False,
    scaled: bool = False,
) -> TransferMatrix:
    """Transfer matrix at time ``t`` and spectral parameter ``z``.

    Each det-one block contributes ``[[cos - g sin, -h22 sin], [h11 sin,
    cos + g sin]]`` in ``z * dt``; blocks multiply left-to-right in time.
    ``derivative=True`` propagates d/dz through the product.  ``scaled=True``
    factors ``e^{|Im z| dt}`` out of every block so that evaluations high in
    the complex plane neither overflow nor lose the leading behaviour; the
    removed factor is returned as ``log_scale``.
    """
    z = np.asarray(z, dtype=complex)
    for b in ham.blocks:
        if abs(b.det - 1.0) > 1e-9:
            raise ValidationError(
                f"matrizant needs det-normalized blocks; block at {b.t_lo} "
                f"has det {b.det}"
            )
    a = np.ones_like(z)
    bb = np.zeros_like(z)
    c = np.zeros_like(z)
    d = np.ones_like(z)
    da = db = dc = dd = None
    if derivative:
        da = np.zeros_like(z)
        db = np.zeros_like(z)
        dc = np.zeros_like(z)
        dd = np.zeros_like(z)
    log_scale = 0.0
    for dt, blk in _segments(ham, t):
        if dt <= 0:
            continue
        if scaled:
            w = np.abs(z.imag)
            e_plus = np.exp((1j * z - w) * dt)
            e_minus = np.exp((-1j * z - w) * dt)
            cs = 0.5 * (e_plus + e_minus)
            sn = (e_plus - e_minus) / 2j
            log_scale = log_scale + w * dt
        else:
            cs = np.cos(z * dt)
            sn = np.sin(z * dt)
        g, h1, h2 = blk.h12, blk.h11, blk.h22
        ba = cs - g * sn
        bbb = -h2 * sn
        bc = h1 * sn
        bd = cs + g * sn
        if derivative:
            # d/dz of the block entries, then the product rule
            dcs = -dt * sn
            dsn = dt * cs
            dba = dcs - g * dsn
            dbb = -h2 * dsn
            dbc = h1 * dsn
            dbd = dcs + g * dsn
            da, db, dc, dd = (
                dba * a + dbb * c + ba * da + bbb * dc,
                dba * bb + dbb * d + ba * db + bbb * dd,
                dbc * a + dbd * c + bc * da + bd * dc,
                dbc * bb + dbd * d + bc * db + bd * dd,
            )
        a, bb, c, d = (
            ba * a + bbb * c,
            ba * bb + bbb * d,
            bc * a + bd * c,
            bc * bb + bd * d,
        )
    return TransferMatrix(t, z, a, bb, c, d, da, db, dc, dd, log_scale)


def spectral_density(
    ham: PiecewiseHamiltonian, t: float, x, rescale: bool = False
) -> np.ndarray:
    """Spectral density ``1/|E_t(x)|^2`` on a real grid.

    ``rescale=True`` applies the constant-block normalisation ``E* =
    sqrt(h11) A - i C / sqrt(h11)`` using the block active at ``t``, which
    for diagonal two-block chains turns the density into the exact boundary
    density of the underlying measure.
    """
    x = np.asarray(x, dtype=float)
    m = matrizant(ham, t, x.astype(complex))
    a, c = m.A.real, m.C.real
    if rescale:
        h1 = ham.block_at(t).h11
        e2 = h1 * a**2 + c**2 / h1
    else:
        e2 = a**2 + c**2
    if np.any(e2 <= 0.0):
        raise ConsistencyError("|E| vanished on the real axis")
    return 1.0 / e2


@dataclass(frozen=True)
class RepresentingMeasure:
    """Discrete measure ``sum_n mass_n delta_{point_n}`` on a window."""

    t: float
    window: tuple[float, float]
    points: np.ndarray
    masses: np.ndarray

    def moment_average(self, k: int) -> complex:
        """Window-averaged trigonometric moment ``(1/|window|) sum m e^{-ikx}``."""
        length = self.window[1] - self.window[0]
        return complex(
            np.sum(self.masses * np.exp(-1j * k * self.points)) / length
        )


def representing_measure(
    ham: PiecewiseHamiltonian,
    t: float,
    window: tuple[float, float],
    oversample: int = 8,
) -> RepresentingMeasure:
    """Zeros of ``A_t`` on ``window`` with masses ``pi / (phi' |E|^2)``.

    The phase ``phi = -arg E`` is strictly increasing, so the zeros are
    simple and interlace with those of ``C_t``; the interlacing is checked
    and a failure (meaning the scan grid was too coarse) raises
    :class:`AccuracyError`.  All masses must come out positive.
    """
    x_lo, x_hi = float(window[0]), float(window[1])
    if x_hi <= x_lo:
        raise ValidationError("window endpoints out of order")
    # phase-speed bound from the block data sets the scan resolution
    rate = sum(
        (min(b.t_hi, t) - b.t_lo) * max(b.h11, b.h22)
        for b in ham.blocks
        if b.t_lo < t
    )
    step = math.pi / (max(rate, 1e-2) * oversample)
    n_pts = int(math.ceil((x_hi - x_lo) / step)) + 1
    grid = np.linspace(x_lo, x_hi, n_pts)
    m = matrizant(ham, t, grid.astype(complex))
    a_vals = m.A.real
    c_vals = m.C.real

    def bisect(lo, hi, f_lo):
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            f_mid = matrizant(ham, t, mid.astype(complex)).A.real
            take = np.sign(f_mid) == np.sign(f_lo)
            lo = np.where(take, mid, lo)
            f_lo = np.where(take, f_mid, f_lo)
            hi = np.where(take, hi, mid)
        return 0.5 * (lo + hi)

    def crossings(vals):
        # an exact 0.0 on a grid point counts as positive so the adjacent
        # product still records one crossing
        s = np.sign(vals)
        s[s == 0.0] = 1.0
        return np.nonzero(s[:-1] * s[1:] < 0)[0]

    sign_change = crossings(a_vals)
    roots = (
        bisect(grid[sign_change], grid[sign_change + 1], a_vals[sign_change])
        if sign_change.size
        else np.zeros(0)
    )
    c_changes = crossings(c_vals)
    c_roots = 0.5 * (grid[c_changes] + grid[c_changes + 1])
    if roots.size > 1:
        # exactly one zero of C strictly between consecutive zeros of A
        counts = np.searchsorted(c_roots, roots[1:]) - np.searchsorted(
            c_roots, roots[:-1]
        )
        if np.any(counts != 1):
            raise AccuracyError(
                "zero interlacing of A and C failed; scan grid too coarse "
                "(raise oversample)"
            )
    mm = matrizant(ham, t, roots.astype(complex), derivative=True)
    a, c = mm.A.real, mm.C.real
    da, dc = mm.dA.real, mm.dC.real
    # phi' |E|^2 = C' A - A' C, so the mass is pi / (C' A - A' C)
    wronskian = dc * a - da * c
    if np.any(wronskian <= 0.0):
        raise ConsistencyError("phase derivative non-positive at a zero of A")
    masses = math.pi / wronskian
    return RepresentingMeasure(t, (x_lo, x_hi), roots, masses)


def normalize(ham: PiecewiseHamiltonian, mode: str = "det") -> PiecewiseHamiltonian:
    """Reparametrise time so that ``det H = 1`` (or ``trace H = 1``).

    The determinant normalisation uses the time change ``ds = sqrt(det H)
    dt`` and divides each block by ``sqrt(det)``; the trace normalisation
    uses ``ds = (trace H) dt``.  Both preserve the spectral data.
    """
    new_blocks = []
    s = 0.0
    for b in ham.blocks:
        if mode == "det":
            factor = math.sqrt(b.det)
        elif mode == "trace":
            factor = b.h11 + b.h22
        else:
            raise ValidationError(f"unknown normalization mode {mode!r}")
        length = b.length * factor
        new_blocks.append(
            HamiltonianBlock(
                s, s + length, b.h11 / factor, b.h12 / factor, b.h22 / factor
            )
        )
        s += length
    return PiecewiseHamiltonian(tuple(new_blocks))


def involution(
    ham: PiecewiseHamiltonian, kind: str, k: float = 0.0
) -> PiecewiseHamiltonian:
    """Symmetry transforms of the block data.

    ``"breve"`` flips the sign of ``h12`` (spectral measure reflected
    through the origin); ``"tilde"`` swaps the diagonal and flips ``h12``
    (the dual measure); ``"conjugate"`` applies the triangular gauge
    ``h12 -> h12 + k h11``, ``h22 -> h22 + 2 k h12 + k^2 h11``.
    """
    out = []
    for b in ham.blocks:
        if kind == "breve":
            out.append(HamiltonianBlock(b.t_lo, b.t_hi, b.h11, -b.h12, b.h22))
        elif kind == "tilde":
            out.append(HamiltonianBlock(b.t_lo, b.t_hi, b.h22, -b.h12, b.h11))
        elif kind == "conjugate":
            out.append(
                HamiltonianBlock(
                    b.t_lo,
                    b.t_hi,
                    b.h11,
                    b.h12 + k * b.h11,
                    b.h22 + 2.0 * k * b.h12 + k**2 * b.h11,
                )
            )
        else:
            raise ValidationError(f"unknown involution {kind!r}")
    return PiecewiseHamiltonian(tuple(out))


@dataclass(frozen=True)
class RoundtripReport:
    """Comparison of representing-measure moments against the input measure."""

    t: float
    window: tuple[float, float]
    estimates: tuple[complex, ...]
    references: tuple[complex, ...]
    residuals: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.residuals)


def roundtrip_residual(
    measure,
    ham: PiecewiseHamiltonian,
    t: float,
    max_index: int = 3,
    window_periods: int = 12,
) -> RoundtripReport:
    """Weak-* verification of an inverse solve through the direct problem.

    The representing measure of ``ham`` at time ``t`` is computed on the
    symmetric window of ``window_periods`` full periods each side of the
    origin, its window-averaged trigonometric moments are formed, and they
    are compared against the exact moments of ``measure`` (windowed moments
    for line measures).
    """
    if window_periods < 1:
        raise ValidationError("need at least one averaging period")
    half = math.pi * window_periods
    rm = representing_measure(ham, t, (-half, half))
    ks = range(max_index + 1)
    estimates = [rm.moment_average(k) for k in ks]
    if isinstance(measure, (PeriodicMeasure, PeriodicMomentMeasure, MomentSequence)):
        gamma = (
            measure
            if isinstance(measure, MomentSequence)
            else periodic_moments(measure, max_index)
        )
        refs = [gamma.gamma(k) for k in ks]
    elif isinstance(measure, LineMeasure):
        refs = []
        for k in ks:
            val = measure.lebesgue * (
                1.0 if k == 0 else math.sin(k * half) / (k * half)
            )
            val += sum(
                math.pi * beta * np.exp(-1j * k * lam) / (2.0 * half)
                for lam, beta in measure.atoms
                if -half <= lam <= half
            )
            refs.append(complex(val))
    else:
        raise ValidationError(
            "round-trip verification covers periodic and line measures"
        )
    residuals = tuple(abs(e - r) for e, r in zip(estimates, refs))
    return RoundtripReport(
        t, (-half, half), tuple(estimates), tuple(refs), residuals
    )
