"""Orthogonal polynomials on the unit circle driven by moment sequences.

The Szego recursion produces monic orthogonal polynomials ``Phi_n`` for the
inner product ``<z^j, z^k> = gamma_{k-j}``; the step heights of the inverse
problem are squared boundary values of the orthonormal family,
``h_n = |phi_n(1)|^2``.  Two families with closed forms (a Poisson-kernel
density and Lebesgue-plus-one-atom) serve as analytic cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ConsistencyError, ValidationError
from .measures import MomentSequence

__all__ = ["OpucBasis", "szego_basis", "h_via_onp", "closed_form_basis"]


@dataclass(frozen=True)
class OpucBasis:
    """Monic orthogonal polynomials ``Phi_0 .. Phi_n`` with their data.

    ``monic[m]`` holds ascending coefficients of ``Phi_m`` (length m+1,
    leading coefficient 1); ``norms2[m] = ||Phi_m||^2``; ``alphas[m]`` is the
    recursion coefficient consumed going from ``Phi_m`` to ``Phi_{m+1}``.
    """

    monic: tuple[tuple[complex, ...], ...]
    norms2: tuple[float, ...]
    alphas: tuple[complex, ...]

    @property
    def degree(self) -> int:
        return len(self.monic) - 1

    def phi(self, m: int, z) -> np.ndarray:
        """Orthonormal polynomial ``phi_m = Phi_m / ||Phi_m||`` at ``z``."""
        if not 0 <= m <= self.degree:
            raise ValidationError(f"degree {m} outside basis range 0..{self.degree}")
        return npoly.polyval(np.asarray(z, dtype=complex), self.monic[m]) / np.sqrt(
            self.norms2[m]
        )


def _inner(gamma: MomentSequence, p, q) -> complex:
    """Moment-driven inner product ``<p, q> = sum p_j conj(q_k) gamma_{k-j}``."""
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    total = 0.0 + 0.0j
    for j, pj in enumerate(p):
        if pj == 0:
            continue
        for k, qk in enumerate(q):
            if qk == 0:
                continue
            total += pj * qk.conjugate() * gamma.gamma(k - j)
    return total


def szego_basis(gamma: MomentSequence, n: int) -> OpucBasis:
    """Run the Szego recursion up to degree ``n`` from moments alone.

    ``Phi_{m+1}(z) = z Phi_m(z) - conj(alpha_m) Phi_m^*(z)`` where
    ``Phi^*`` reverses and conjugates the coefficients.  Norms follow
    ``||Phi_{m+1}||^2 = ||Phi_m||^2 (1 - |alpha_m|^2)``; the recursion is
    cross-checked against the Gram inner product at every degree.
    """
    if gamma.max_index < n:
        raise ValidationError(f"need moments up to index {n}, have {gamma.max_index}")
    monic = [np.array([1.0 + 0.0j])]
    norms2 = [gamma.gamma(0).real]
    alphas: list[complex] = []
    for m in range(n):
        phi = monic[m]
        star = np.conj(phi[::-1])
        shifted = np.concatenate([[0.0], phi])
        alpha_bar = _inner(gamma, shifted, star) / norms2[m]
        if abs(alpha_bar) >= 1.0:
            raise ValidationError(
                f"recursion coefficient |alpha_{m}| = {abs(alpha_bar):.6f} >= 1; "
                "moments are not positive definite"
            )
        nxt = shifted - alpha_bar * np.concatenate([star, [0.0]])
        monic.append(nxt)
        norm2 = norms2[m] * (1.0 - abs(alpha_bar) ** 2)
        direct = _inner(gamma, nxt, nxt).real
        if abs(direct - norm2) > 1e-12 * max(1.0, norm2):
            raise ConsistencyError(
                f"norm recursion and Gram product disagree at degree {m + 1}: "
                f"{norm2!r} vs {direct!r}"
            )
        norms2.append(norm2)
        alphas.append(complex(np.conj(alpha_bar)))
    return OpucBasis(
        tuple(tuple(c) for c in monic), tuple(norms2), tuple(alphas)
    )


def h_via_onp(basis: OpucBasis, m: int, eta: complex = 1.0) -> float:
    """Step height through the orthonormal boundary value: ``|phi_m(eta)|^2``."""
    if abs(abs(complex(eta)) - 1.0) > 1e-12:
        raise ValidationError("evaluation point must sit on the unit circle")
    return float(np.abs(basis.phi(m, eta)) ** 2)


def closed_form_basis(family: str, param: complex, n: int) -> OpucBasis:
    """Analytic orthogonal-polynomial families used as oracles.

    ``family == "poisson"``: density ``(1-|a|^2)/|e^{ix} - a|^2`` with
    ``param = a``, ``|a| < 1``; then ``Phi_m = z^m - a z^{m-1}`` and all
    recursion coefficients after the first vanish.

    ``family == "delta_plus_const"``: ``(1-g) dx/2pi + g delta_0`` per period
    with ``param = g`` in (0, 1); then ``alpha_m = g/(1 + m g)`` and
    ``Phi_m = z^m - alpha_{m-1} (1 + z + ... + z^{m-1})``.
    """
    if n < 0:
        raise ValidationError("degree must be >= 0")
    if family == "poisson":
        a = complex(param)
        if abs(a) >= 1.0:
            raise ValidationError("poisson parameter needs |a| < 1")
        monic = [(1.0 + 0.0j,)]
        norms2 = [1.0]
        alphas: list[complex] = []
        for m in range(1, n + 1):
            coeffs = [0.0] * (m + 1)
            coeffs[m] = 1.0
            coeffs[m - 1] = -a
            monic.append(tuple(coeffs))
            norms2.append(1.0 - abs(a) ** 2)
            alphas.append(a.conjugate() if m == 1 else 0.0)
        return OpucBasis(tuple(monic), tuple(norms2), tuple(alphas))
    if family == "delta_plus_const":
        g = float(np.real(param))
        if not 0.0 < g < 1.0:
            raise ValidationError("atom weight needs 0 < g < 1")
        monic = [(1.0 + 0.0j,)]
        norms2 = [1.0]
        alphas = [g / (1.0 + m * g) for m in range(n)]
        for m in range(1, n + 1):
            am1 = g / (1.0 + (m - 1) * g)
            coeffs = [-am1] * m + [1.0]
            monic.append(tuple(complex(c) for c in coeffs))
            norms2.append(1.0 - m * am1 * g)
        return OpucBasis(tuple(monic), tuple(norms2), tuple(alphas))
    raise ValidationError(f"unknown closed-form family {family!r}")
