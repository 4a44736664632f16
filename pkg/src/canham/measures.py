"""Spectral measures, their moments, and Cauchy-transform machinery.

Two solvable families are modelled explicitly:

* periodic measures -- a trigonometric-polynomial density plus finitely many
  point masses per period, or alternatively a finite trigonometric moment
  sequence;
* line measures -- a multiple of Lebesgue measure plus finitely many point
  masses ``pi * beta_n * delta_{lambda_n}``.

On top of these sit the Cauchy (Herglotz) transform ``K``, the Clark-type
dual measure obtained from ``Re[i / (K + b)]``, distributional Fourier
representations, and a finite-window Paley--Wiener sampling diagnostic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import AccuracyError, IllPosedError, ValidationError

TWO_PI = 2.0 * math.pi

__all__ = [
    "MomentSequence",
    "PeriodicMeasure",
    "PeriodicMomentMeasure",
    "LineMeasure",
    "RationalMeasure",
    "SpectralMeasure",
    "HerglotzRep",
    "FourierRep",
    "PWReport",
    "periodic_moments",
    "cauchy_transform",
    "dual_measure",
    "clark_atoms",
    "fourier_rep",
    "pw_diagnostic",
]


# ── moment sequences ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class MomentSequence:
    """Trigonometric moments ``gamma_0 .. gamma_K`` of a periodic measure.

    ``gamma_k = (1/2pi) \\int_0^{2pi} e^{-ikx} dmu(x)``.  Negative indices
    follow from the Hermitian symmetry ``gamma_{-k} = conj(gamma_k)``, so
    only ``k >= 0`` is stored.
    """

    values: tuple[complex, ...]

    def __post_init__(self):
        values = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValidationError("moment sequence needs at least gamma_0")
        g0 = values[0]
        if abs(g0.imag) > 1e-10 * max(1.0, abs(g0)):
            raise ValidationError(f"gamma_0 must be real, got {g0}")
        if g0.real <= 0.0:
            raise ValidationError(f"gamma_0 must be positive, got {g0}")

    @property
    def max_index(self) -> int:
        return len(self.values) - 1

    def gamma(self, k: int) -> complex:
        """Moment of index ``k`` (any sign)."""
        if abs(k) > self.max_index:
            raise ValidationError(
                f"moment index {k} beyond stored range 0..{self.max_index}"
            )
        return self.values[k] if k >= 0 else self.values[-k].conjugate()

    def truncated(self, k: int) -> "MomentSequence":
        if k > self.max_index:
            raise ValidationError(
                f"cannot extend stored moments 0..{self.max_index} to {k}"
            )
        return MomentSequence(self.values[: k + 1])

    def is_even(self, tol: float = 1e-12) -> bool:
        """A periodic measure is even iff all its moments are real."""
        scale = max(1.0, max(abs(v) for v in self.values))
        return all(abs(v.imag) <= tol * scale for v in self.values)


# ── measure variants ──────────────────────────────────────────────────────


def _as_atom_tuple(atoms) -> tuple[tuple[float, float], ...]:
    return tuple((float(a), float(b)) for a, b in atoms)


@dataclass(frozen=True)
class PeriodicMeasure:
    """2pi-periodic measure: trig-polynomial density plus point masses.

    ``density`` lists ``(k, c_k)`` for ``k >= 0``; the density function is
    ``c_0 + sum_{k>=1} (c_k e^{ikx} + conj(c_k) e^{-ikx})`` and must be
    nonnegative.  ``atoms`` lists ``(x0, mass)`` with ``x0`` in ``[0, 2pi)``;
    each atom repeats 2pi-periodically on the line.
    """

    density: tuple[tuple[int, complex], ...] = ()
    atoms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        density = tuple((int(k), complex(c)) for k, c in self.density)
        object.__setattr__(self, "density", density)
        object.__setattr__(self, "atoms", _as_atom_tuple(self.atoms))
        seen = set()
        for k, c in density:
            if k < 0:
                raise ValidationError("density coefficients are indexed by k >= 0")
            if k in seen:
                raise ValidationError(f"duplicate density coefficient k={k}")
            seen.add(k)
            if k == 0 and abs(c.imag) > 1e-12 * max(1.0, abs(c)):
                raise ValidationError("constant density coefficient must be real")
        for x0, mass in self.atoms:
            if not 0.0 <= x0 < TWO_PI:
                raise ValidationError(f"atom position {x0} outside [0, 2pi)")
            if mass <= 0.0:
                raise ValidationError(f"atom mass must be positive, got {mass}")
        if len({round(x0, 12) for x0, _ in self.atoms}) != len(self.atoms):
            raise ValidationError("duplicate atom positions")
        if not density and not self.atoms:
            raise ValidationError("measure must not be identically zero")
        if density:
            x = np.linspace(0.0, TWO_PI, 4096, endpoint=False)
            vals = self.density_values(x)
            scale = max(1.0, float(np.max(np.abs(vals))))
            if np.min(vals) < -1e-10 * scale:
                raise ValidationError(
                    f"density dips negative (min {np.min(vals):.3e}); "
                    "not a positive measure"
                )

    def density_values(self, x) -> np.ndarray:
        """Evaluate the density part on a real grid."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for k, c in self.density:
            if k == 0:
                out = out + c.real
            else:
                out = out + 2.0 * (c * np.exp(1j * k * x)).real
        return out

    @property
    def degree(self) -> int:
        return max((k for k, _ in self.density), default=0)


@dataclass(frozen=True)
class PeriodicMomentMeasure:
    """Periodic measure known through its moment sequence.

    ``dual_measure`` returns this form: the attached Herglotz representation
    keeps the exact Cauchy transform, so iterating the dual does not lose the
    singular part of the measure behind a truncated moment list.
    """

    moments: MomentSequence
    herglotz: "HerglotzRep | None" = None


@dataclass(frozen=True)
class LineMeasure:
    """``alpha * Lebesgue + sum_n pi * beta_n * delta_{lambda_n}`` on the line.

    ``alpha = 0`` is accepted so that degenerate (non-sampling) measures can
    be fed to the diagnostics, but the inverse solver requires ``alpha > 0``.
    """

    lebesgue: float
    atoms: tuple[tuple[float, float], ...] = ()  # (lambda_n, beta_n)

    def __post_init__(self):
        object.__setattr__(self, "lebesgue", float(self.lebesgue))
        object.__setattr__(self, "atoms", _as_atom_tuple(self.atoms))
        if self.lebesgue < 0.0:
            raise ValidationError("Lebesgue coefficient must be >= 0")
        for lam, beta in self.atoms:
            if beta <= 0.0:
                raise ValidationError(f"atom weight must be positive, got {beta}")
        lams = [lam for lam, _ in self.atoms]
        if len({round(v, 12) for v in lams}) != len(lams):
            raise ValidationError("duplicate atom locations")
        if self.lebesgue == 0.0 and not self.atoms:
            raise ValidationError("measure must not be identically zero")


@dataclass(frozen=True)
class RationalMeasure:
    """Absolutely continuous measure with density ``num(x)/den(x)`` plus atoms.

    This is the shape of the dual of a line measure; it is an output format,
    not a solver input.  Coefficients are ascending and real; the denominator
    must not vanish on the real axis.  Atoms use the ``pi * beta * delta_lam``
    convention of :class:`LineMeasure`.
    """

    numerator: tuple[float, ...]
    denominator: tuple[float, ...]
    atoms: tuple[tuple[float, float], ...] = ()
    herglotz: "HerglotzRep | None" = None

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(float(c) for c in self.numerator))
        object.__setattr__(
            self, "denominator", tuple(float(c) for c in self.denominator)
        )
        object.__setattr__(self, "atoms", _as_atom_tuple(self.atoms))
        if not any(self.denominator):
            raise ValidationError("zero denominator")
        roots = npoly.polyroots(self.denominator) if len(self.denominator) > 1 else []
        for r in roots:
            if abs(r.imag) < 1e-9 * max(1.0, abs(r)):
                raise ValidationError(f"denominator has a real zero near {r.real}")
        x = np.linspace(-50.0, 50.0, 2001)
        vals = self.density_values(x)
        if np.min(vals) < -1e-9 * max(1.0, float(np.max(np.abs(vals)))):
            raise ValidationError("rational density dips negative on the real axis")

    def density_values(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return npoly.polyval(x, self.numerator) / npoly.polyval(x, self.denominator)


SpectralMeasure = (
    PeriodicMeasure | PeriodicMomentMeasure | LineMeasure | RationalMeasure
)


# ── Herglotz representations ──────────────────────────────────────────────


@dataclass(frozen=True)
class HerglotzRep:
    """Rational Herglotz function ``K(z) = num(v)/den(v) + offset``.

    ``variable == "z"`` evaluates directly in ``z`` (line measures);
    ``variable == "S"`` substitutes ``v = e^{iz}`` (periodic measures).
    ``offset`` is the real additive gauge constant; it is chosen so that
    ``Re K`` is odd on the real axis for even measures, and zero otherwise.
    """

    variable: str
    numer: tuple[complex, ...]
    denom: tuple[complex, ...]
    offset: float = 0.0

    def __post_init__(self):
        if self.variable not in ("z", "S"):
            raise ValidationError(f"unknown Herglotz variable {self.variable!r}")
        object.__setattr__(self, "numer", tuple(complex(c) for c in self.numer))
        object.__setattr__(self, "denom", tuple(complex(c) for c in self.denom))

    def _sub(self, z):
        z = np.asarray(z, dtype=complex)
        return np.exp(1j * z) if self.variable == "S" else z

    def __call__(self, z):
        v = self._sub(z)
        return npoly.polyval(v, self.numer) / npoly.polyval(v, self.denom) + self.offset

    def derivative(self, z):
        """``dK/dz`` (chain rule through ``S = e^{iz}`` for the periodic form)."""
        v = self._sub(z)
        n = npoly.polyval(v, self.numer)
        d = npoly.polyval(v, self.denom)
        dn = npoly.polyval(v, npoly.polyder(self.numer))
        dd = npoly.polyval(v, npoly.polyder(self.denom))
        dv = (dn * d - n * dd) / d**2
        return dv * 1j * v if self.variable == "S" else dv


def cauchy_transform(measure: SpectralMeasure) -> HerglotzRep:
    """Exact rational Herglotz representation of the Cauchy transform.

    ``K mu(z) = (1/pi) \\int [1/(s - z) - s/(1 + s^2)] dmu(s)`` up to the real
    gauge constant described on :class:`HerglotzRep`.  Periodic measures give
    a rational function of ``S = e^{iz}``; line measures give a rational
    function of ``z``.
    """
    if isinstance(measure, PeriodicMeasure):
        # Im K extends the density harmonically: K = i * (poly in S + one
        # Cayley-type term per atom), which keeps Re K odd for even measures.
        num = np.zeros(measure.degree + 1, dtype=complex)
        for k, c in measure.density:
            num[k] = c if k == 0 else 2.0 * c
        num = np.trim_zeros(num, "b") if num.any() else np.zeros(1, dtype=complex)
        den = np.ones(1, dtype=complex)
        for x0, mass in measure.atoms:
            u = cmath.exp(-1j * x0)
            # add (mass / 2pi) * (1 + uS) / (1 - uS)
            num = npoly.polyadd(
                npoly.polymul(num, [1.0, -u]),
                (mass / TWO_PI) * npoly.polymul(den, [1.0, u]),
            )
            den = npoly.polymul(den, [1.0, -u])
        return HerglotzRep("S", tuple(1j * np.atleast_1d(num)), tuple(den))
    if isinstance(measure, PeriodicMomentMeasure):
        if measure.herglotz is not None:
            return measure.herglotz
        # Moments with no attached transform: interpret them as the trig
        # polynomial density they define (validated for positivity).
        dens = tuple((k, v) for k, v in enumerate(measure.moments.values))
        return cauchy_transform(PeriodicMeasure(density=dens))
    if isinstance(measure, LineMeasure):
        # K = i*alpha + sum beta_n / (lambda_n - z); the real additive
        # constants from the 1/(1+s^2) regularisation are gauged away.
        den = np.ones(1, dtype=complex)
        for lam, _ in measure.atoms:
            den = npoly.polymul(den, [lam, -1.0])
        num = 1j * measure.lebesgue * den
        for lam, beta in measure.atoms:
            part = np.ones(1, dtype=complex)
            for lam2, _ in measure.atoms:
                if lam2 != lam:
                    part = npoly.polymul(part, [lam2, -1.0])
            num = npoly.polyadd(num, beta * part)
        return HerglotzRep("z", tuple(np.atleast_1d(num)), tuple(den))
    if isinstance(measure, RationalMeasure):
        if measure.herglotz is not None:
            return measure.herglotz
        raise ValidationError(
            "no exact Cauchy transform stored for a rational-density measure; "
            "only duals constructed by this package carry one"
        )
    raise ValidationError(f"unsupported measure type {type(measure).__name__}")


# ── moments ───────────────────────────────────────────────────────────────


def periodic_moments(measure: SpectralMeasure, max_index: int) -> MomentSequence:
    """Exact trigonometric moments ``gamma_0 .. gamma_max_index``.

    For an explicit periodic measure the density coefficients contribute
    directly and each atom ``(x0, w)`` adds ``(w/2pi) e^{-ik x0}``.
    """
    if max_index < 0:
        raise ValidationError("max_index must be >= 0")
    if isinstance(measure, PeriodicMeasure):
        coeff = dict(measure.density)
        values = []
        for k in range(max_index + 1):
            g = complex(coeff.get(k, 0.0))
            for x0, mass in measure.atoms:
                g += mass / TWO_PI * cmath.exp(-1j * k * x0)
            values.append(g)
        return MomentSequence(tuple(values))
    if isinstance(measure, PeriodicMomentMeasure):
        if max_index <= measure.moments.max_index:
            return measure.moments.truncated(max_index)
        if measure.herglotz is not None:
            vals = _herglotz_periodic_moments(measure.herglotz, max_index)
            return MomentSequence(tuple(vals))
        raise ValidationError(
            f"measure stores moments 0..{measure.moments.max_index}; "
            f"cannot produce index {max_index}"
        )
    raise ValidationError("trigonometric moments are defined for periodic measures")


def _poisson_coefficients(
    rep: HerglotzRep, max_index: int, height: float, n_grid: int = 4096
) -> np.ndarray:
    """Fourier coefficients of ``Im K`` on the line ``Im z = height``.

    ``Im K(x + iy)`` is the harmonic extension of the underlying measure, so
    its ``k``-th Fourier coefficient equals ``gamma_k e^{-|k| y}``; the decay
    is undone by the caller.  The trapezoid rule is spectrally accurate here.
    """
    if n_grid <= 2 * max_index:
        raise ValidationError("quadrature grid too coarse for requested moments")
    x = np.arange(n_grid) * (TWO_PI / n_grid)
    p = np.imag(rep(x + 1j * height))
    ks = np.arange(max_index + 1)
    phases = np.exp(-1j * np.outer(ks, x))
    return (phases @ p) / n_grid


def _herglotz_periodic_moments(
    rep: HerglotzRep, max_index: int, height: float = 0.5, tol: float = 1e-9
) -> np.ndarray:
    """Moments of the measure represented by ``rep`` with a height check."""
    ks = np.arange(max_index + 1)
    out = _poisson_coefficients(rep, max_index, height) * np.exp(ks * height)
    check = _poisson_coefficients(rep, max_index, height / 2) * np.exp(
        ks * height / 2
    )
    err = float(np.max(np.abs(out - check)))
    if err > tol:
        raise AccuracyError(
            f"moment quadrature disagrees across height halving (max diff {err:.3e})"
        )
    return out


# ── dual measures ─────────────────────────────────────────────────────────


def clark_atoms(
    rep: HerglotzRep, b: float = 0.0
) -> tuple[tuple[float, float], ...]:
    """Point masses of the dual measure: real zeros of ``K + b``.

    Each simple real zero ``x0`` carries mass ``pi / |K'(x0)|``.  Periodic
    representations report the zeros in ``[0, 2pi)``.  A zero with vanishing
    derivative (a multiple zero) is rejected as ill-posed.
    """
    num = npoly.polyadd(np.asarray(rep.numer), b * np.asarray(rep.denom))
    num = np.trim_zeros(num, "b")
    if num.size <= 1:
        return ()
    roots = npoly.polyroots(num)
    atoms = []
    for r in roots:
        if rep.variable == "S":
            if abs(abs(r) - 1.0) > 1e-8:
                continue
            x0 = float(np.angle(r)) % TWO_PI
        else:
            if abs(r.imag) > 1e-8 * max(1.0, abs(r)):
                continue
            x0 = float(r.real)
        dk = complex(rep.derivative(x0))
        if abs(dk) < 1e-8:
            raise IllPosedError(
                f"multiple real zero of K + b near {x0}; dual atom mass undefined"
            )
        atoms.append((x0, math.pi / abs(dk)))
    atoms.sort()
    return tuple(atoms)


def _cancel_real_zeros(num, den, tol: float = 1e-9):
    """Divide out common real zeros of a nonnegative rational density.

    The denominator ``|W|^2`` vanishes on the real axis only at dual atoms,
    in even order, and there the absolutely continuous density extends
    continuously -- so the numerator shares the factor ``(x - r)^2``.  A
    division remainder above ``tol`` would mean a genuinely non-integrable
    singularity, which no measure produced here can have.
    """
    num = np.atleast_1d(np.asarray(num, dtype=float))
    den = np.atleast_1d(np.asarray(den, dtype=float))
    for _ in range(len(den)):
        if den.size <= 1:
            break
        roots = npoly.polyroots(den)
        real = [r.real for r in roots if abs(r.imag) < 1e-7 * max(1.0, abs(r))]
        if not real:
            break
        r = real[0]
        factor = np.array([r * r, -2.0 * r, 1.0])  # (x - r)^2
        d_quo, d_rem = npoly.polydiv(den, factor)
        n_quo, n_rem = npoly.polydiv(num, factor)
        if np.max(np.abs(d_rem)) > tol * max(1.0, float(np.max(np.abs(den)))) or (
            np.max(np.abs(n_rem)) > tol * max(1.0, float(np.max(np.abs(num))))
        ):
            raise IllPosedError(
                f"dual density has a non-removable singularity near x = {r:.6g}"
            )
        num, den = np.atleast_1d(n_quo), np.atleast_1d(d_quo)
    return num, den


def dual_measure(
    measure: SpectralMeasure,
    b: float = 0.0,
    max_index: int = 16,
    height: float = 0.5,
    tol: float = 1e-9,
) -> SpectralMeasure:
    """Clark-type dual measure: the positive measure with Poisson integral
    ``Re[i / (K mu + b)]``.

    Periodic input returns a :class:`PeriodicMomentMeasure` whose moments are
    recovered by quadrature at two heights (a disagreement beyond ``tol``
    raises :class:`AccuracyError`) and whose exact transform
    ``K dual = -1/(K + b)`` is attached.  Line input returns the rational
    density ``Re[i/(K + b)]`` together with any point masses sitting at real
    zeros of ``K + b``.
    """
    rep = cauchy_transform(measure)
    num = np.asarray(rep.numer)
    den = np.asarray(rep.denom)
    if rep.offset != 0.0:
        num = npoly.polyadd(num, rep.offset * den)
    shifted = npoly.polyadd(num, b * den)  # numerator of K + b
    dual_rep = HerglotzRep(
        rep.variable, tuple(-den), tuple(np.atleast_1d(shifted))
    )
    if rep.variable == "S":
        vals = _herglotz_periodic_moments(dual_rep, max_index, height, tol)
        return PeriodicMomentMeasure(MomentSequence(tuple(vals)), dual_rep)
    # Line case: density Im[-D / W] on the real axis with W = numerator of
    # K + b.  Splitting D = Dr + i Di and W = Wr + i Wi into real-coefficient
    # polynomials gives (Dr Wi - Di Wr) / (Wr^2 + Wi^2); for a first dual
    # D = prod(lambda_n - z) is real and this reduces to D Wi / |W|^2.
    d_re, d_im = den.real, den.imag
    w_re = np.asarray(shifted).real
    w_im = np.asarray(shifted).imag
    numerator = npoly.polysub(
        npoly.polymul(d_re, w_im), npoly.polymul(d_im, w_re)
    )
    denominator = npoly.polyadd(npoly.polymul(w_re, w_re), npoly.polymul(w_im, w_im))
    numerator, denominator = _cancel_real_zeros(numerator, denominator)
    atoms = tuple((x0, mass / math.pi) for x0, mass in clark_atoms(rep, b))
    return RationalMeasure(
        numerator=tuple(np.atleast_1d(numerator)),
        denominator=tuple(np.atleast_1d(denominator)),
        atoms=atoms,
        herglotz=dual_rep,
    )


# ── Fourier representations ───────────────────────────────────────────────


@dataclass(frozen=True)
class FourierRep:
    """Distributional Fourier transform of a measure (unitary convention).

    ``atom_terms`` lists point masses ``(xi0, weight)`` at frequency ``xi0``;
    ``exp_terms`` lists ``(lam, coeff)`` contributions ``coeff * e^{-i lam
    xi}``; ``comb_terms`` lists ``(x0, w)`` integer combs ``(w / sqrt(2pi)) *
    sum_k e^{-i k x0} delta_k`` produced by periodic point masses.
    """

    atom_terms: tuple[tuple[float, complex], ...] = ()
    exp_terms: tuple[tuple[float, complex], ...] = ()
    comb_terms: tuple[tuple[float, float], ...] = ()


def fourier_rep(measure: SpectralMeasure) -> FourierRep:
    """Exact symbolic Fourier transform of a periodic or line measure.

    A trig-polynomial density maps to atoms at the integers with weights
    ``sqrt(2pi) gamma_k``; a line measure maps to ``sqrt(2pi) alpha delta_0``
    plus one exponential ``(pi beta_n / sqrt(2pi)) e^{-i lambda_n xi}`` per
    point mass.
    """
    s = math.sqrt(TWO_PI)
    if isinstance(measure, PeriodicMeasure):
        atoms = []
        for k, c in sorted(measure.density):
            atoms.append((float(k), s * c))
            if k > 0:
                atoms.append((float(-k), s * c.conjugate()))
        atoms.sort(key=lambda t: t[0])
        combs = tuple(measure.atoms)
        return FourierRep(atom_terms=tuple(atoms), comb_terms=combs)
    if isinstance(measure, PeriodicMomentMeasure):
        vals = measure.moments.values
        atoms = [(float(k), s * v) for k, v in enumerate(vals)]
        atoms += [(float(-k), s * vals[k].conjugate()) for k in range(1, len(vals))]
        atoms.sort(key=lambda t: t[0])
        return FourierRep(atom_terms=tuple(atoms))
    if isinstance(measure, LineMeasure):
        atoms = ((0.0, complex(s * measure.lebesgue)),) if measure.lebesgue else ()
        exps = tuple(
            (lam, complex(math.pi * beta / s)) for lam, beta in measure.atoms
        )
        return FourierRep(atom_terms=atoms, exp_terms=exps)
    raise ValidationError(
        "Fourier representation is available for periodic and line measures"
    )


# ── interval masses and the sampling diagnostic ───────────────────────────


def interval_mass(measure: SpectralMeasure, a: float, b: float) -> float:
    """``mu([a, b])`` in closed form."""
    if b < a:
        raise ValidationError("interval endpoints out of order")
    if isinstance(measure, LineMeasure):
        total = measure.lebesgue * (b - a)
        total += sum(
            math.pi * beta for lam, beta in measure.atoms if a <= lam <= b
        )
        return total
    if isinstance(measure, PeriodicMomentMeasure):
        measure = PeriodicMeasure(
            density=tuple((k, v) for k, v in enumerate(measure.moments.values))
        )
    if isinstance(measure, PeriodicMeasure):
        total = 0.0
        for k, c in measure.density:
            if k == 0:
                total += c.real * (b - a)
            else:
                total += 2.0 * (
                    c * (cmath.exp(1j * k * b) - cmath.exp(1j * k * a)) / (1j * k)
                ).real
        for x0, mass in measure.atoms:
            # copies x0 + 2pi n inside [a, b]
            n_lo = math.ceil((a - x0) / TWO_PI - 1e-12)
            n_hi = math.floor((b - x0) / TWO_PI + 1e-12)
            if n_hi >= n_lo:
                total += mass * (n_hi - n_lo + 1)
        return total
    if isinstance(measure, RationalMeasure):
        from scipy.integrate import quad

        val, _ = quad(lambda x: float(measure.density_values(x)), a, b, limit=200)
        val += sum(math.pi * beta for lam, beta in measure.atoms if a <= lam <= b)
        return val
    raise ValidationError(f"unsupported measure type {type(measure).__name__}")


@dataclass(frozen=True)
class PWReport:
    """Outcome of the finite-window sampling diagnostic."""

    window: tuple[float, float]
    sup_unit_mass: float
    min_capacity: int
    capacity_demand: float
    verdict: str
    capacities: tuple[tuple[float, int], ...] = field(repr=False, default=())


def _min_massive_end(measure, s, r_lo, r_hi, delta):
    """Smallest ``r`` in ``[r_lo, r_hi]`` with ``mu([s, r]) >= delta``."""
    if interval_mass(measure, s, r_hi) < delta:
        return None
    if interval_mass(measure, s, r_lo) >= delta:
        return r_lo
    lo, hi = r_lo, r_hi
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if interval_mass(measure, s, mid) >= delta:
            hi = mid
        else:
            lo = mid
    return hi


def delta_capacity(
    measure: SpectralMeasure,
    window: tuple[float, float],
    interval: tuple[float, float],
    delta: float,
) -> int:
    """Maximal number of disjoint delta-massive intervals meeting ``interval``.

    A delta-massive interval has length >= delta and mass >= delta.  The
    count is restricted to intervals inside ``window``; a greedy sweep by
    earliest right endpoint attains the maximum.
    """
    w_lo, w_hi = window
    i_lo, i_hi = interval
    count = 0
    prev = w_lo
    while prev <= i_hi:
        r = _min_massive_end(
            measure, prev, max(prev + delta, i_lo), w_hi, delta
        )
        if r is None:
            break
        count += 1
        prev = r
    return count


def pw_diagnostic(
    measure: SpectralMeasure,
    window: tuple[float, float],
    t: float,
    length: float = 10.0,
    delta: float = 0.4,
    unit_mass_bound: float | None = None,
    n_slides: int = 33,
) -> PWReport:
    """Finite-window check of the two sampling-measure conditions.

    Condition (i) asks for a uniform bound on the mass of unit intervals;
    condition (ii) asks every interval ``I`` with ``|I| >= length`` to carry
    delta-capacity at least ``t |I|``.  Both are examined on ``window`` only,
    so the verdict is evidence, not proof: ``violates-(i)`` fires only when
    an explicit ``unit_mass_bound`` is exceeded, and ``violates-(ii)`` means
    some slid interval of length ``length`` already misses the capacity
    demand inside the window.
    """
    w_lo, w_hi = float(window[0]), float(window[1])
    if w_hi - w_lo < 3.0 * length:
        raise ValidationError("diagnostic window must be at least 3x the interval")
    if t <= 0 or length <= 0 or delta <= 0:
        raise ValidationError("t, length and delta must be positive")

    starts = np.linspace(w_lo, w_hi - 1.0, 512)
    sup_unit = max(interval_mass(measure, s, s + 1.0) for s in starts)
    if unit_mass_bound is not None and sup_unit > unit_mass_bound:
        return PWReport(
            (w_lo, w_hi), sup_unit, 0, t * length, "violates-(i)"
        )

    demand = t * length
    capacities = []
    for s in np.linspace(w_lo + length, w_hi - 2.0 * length, n_slides):
        cap = delta_capacity(measure, (w_lo, w_hi), (s, s + length), delta)
        capacities.append((float(s), cap))
    min_cap = min(c for _, c in capacities)
    verdict = "consistent-with-PW" if min_cap >= demand else "violates-(ii)-on-window"
    return PWReport(
        (w_lo, w_hi), sup_unit, min_cap, demand, verdict, tuple(capacities)
    )
