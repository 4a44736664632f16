"""Shared random-measure generators for the test suite."""

import numpy as np

from canham import MomentSequence, PeriodicMeasure


def bounded_density_moments(rng, n_moments, degree, margin=0.25):
    """Moments of a random trig-polynomial density pinned inside [1-2m, 1+2m].

    The resulting Toeplitz matrices have condition number at most
    (1+2m)/(1-2m), which keeps fast and dense solvers comparable at machine
    precision for every size.
    """
    c = rng.normal(size=degree) + 1j * rng.normal(size=degree)
    c *= margin / np.abs(c).sum()
    vals = np.zeros(n_moments + 1, dtype=complex)
    vals[0] = 1.0
    upto = min(degree, n_moments)
    vals[1 : upto + 1] = c[:upto]
    return MomentSequence(tuple(vals))


def bounded_density_measure(rng, degree, margin=0.25):
    """The same construction as an explicit periodic density."""
    c = rng.normal(size=degree) + 1j * rng.normal(size=degree)
    c *= margin / np.abs(c).sum()
    density = [(0, 1.0 + 0.0j)] + [(k + 1, complex(c[k])) for k in range(degree)]
    return PeriodicMeasure(density=tuple(density))


def atom_mixture_moments(rng, n_moments, n_atoms):
    """Moments of a random positive atomic measure on the circle."""
    theta = rng.uniform(0.0, 2.0 * np.pi, n_atoms)
    w = rng.uniform(0.2, 1.0, n_atoms)
    ks = np.arange(n_moments + 1)
    vals = (w[None, :] * np.exp(-1j * np.outer(ks, theta))).sum(axis=1)
    return MomentSequence(tuple(vals))


def cos_measure():
    """The 1 + cos x benchmark density."""
    return PeriodicMeasure(density=((0, 1.0 + 0.0j), (1, 0.5 + 0.0j)))
