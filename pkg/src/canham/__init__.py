"""canham: inverse and direct spectral problems for 2x2 canonical systems.

The inverse solvers recover a positive 2x2 Hamiltonian from a spectral
measure for two explicitly solvable classes: periodic measures (through
Toeplitz moment matrices and orthogonal polynomials on the unit circle) and
Lebesgue-plus-point-mass line measures (through sinc kernel linear systems).
The direct machinery — transfer matrices, Hermite-Biehler functions,
representing measures — closes the loop and verifies the solves.  Duality
maps a measure to its Clark-type companion, exchanging the diagonal
Hamiltonian entries.
"""

from .atomic import (
    SolitonSystem,
    add_point_mass_at_zero,
    h_atomic,
    hamiltonian_from_atomic,
    single_atom_closed_forms,
    soliton_coefficients,
)
from .direct import (
    RepresentingMeasure,
    RoundtripReport,
    TransferMatrix,
    involution,
    matrizant,
    normalize,
    representing_measure,
    roundtrip_residual,
    spectral_density,
)
from .errors import (
    AccuracyError,
    CanhamError,
    ConsistencyError,
    IllPosedError,
    NumericalError,
    ValidationError,
)
from .hamiltonian import (
    HamiltonianBlock,
    PiecewiseHamiltonian,
    SampledHamiltonian,
    read_hamiltonian_csv,
    write_text_atomic,
)
from .measures import (
    FourierRep,
    HerglotzRep,
    LineMeasure,
    MomentSequence,
    PeriodicMeasure,
    PeriodicMomentMeasure,
    PWReport,
    RationalMeasure,
    SpectralMeasure,
    cauchy_transform,
    clark_atoms,
    delta_capacity,
    dual_measure,
    fourier_rep,
    interval_mass,
    periodic_moments,
    pw_diagnostic,
)
from .opuc import OpucBasis, closed_form_basis, h_via_onp, szego_basis
from .periodic import (
    KernelProfile,
    hamiltonian_from_periodic,
    hg_sequences,
    kernel_profile,
)
from .schema import dumps_measure, loads_measure, measure_from_json, measure_to_json
from .toeplitz import (
    inverse_sum,
    levinson_solve,
    moment_matrix,
    positivity_check,
    sigma_closed_form,
    skew_matrix,
    skew_sum,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "CanhamError",
    "ConsistencyError",
    "FourierRep",
    "HamiltonianBlock",
    "HerglotzRep",
    "IllPosedError",
    "KernelProfile",
    "LineMeasure",
    "MomentSequence",
    "NumericalError",
    "OpucBasis",
    "PWReport",
    "PeriodicMeasure",
    "PeriodicMomentMeasure",
    "PiecewiseHamiltonian",
    "RationalMeasure",
    "RepresentingMeasure",
    "RoundtripReport",
    "SampledHamiltonian",
    "SolitonSystem",
    "SpectralMeasure",
    "TransferMatrix",
    "ValidationError",
    "add_point_mass_at_zero",
    "cauchy_transform",
    "clark_atoms",
    "closed_form_basis",
    "delta_capacity",
    "dual_measure",
    "dumps_measure",
    "fourier_rep",
    "h_atomic",
    "h_via_onp",
    "hamiltonian_from_atomic",
    "hamiltonian_from_periodic",
    "hg_sequences",
    "interval_mass",
    "inverse_sum",
    "involution",
    "kernel_profile",
    "levinson_solve",
    "loads_measure",
    "matrizant",
    "measure_from_json",
    "measure_to_json",
    "moment_matrix",
    "normalize",
    "periodic_moments",
    "pw_diagnostic",
    "positivity_check",
    "read_hamiltonian_csv",
    "representing_measure",
    "roundtrip_residual",
    "sigma_closed_form",
    "single_atom_closed_forms",
    "skew_matrix",
    "skew_sum",
    "soliton_coefficients",
    "spectral_density",
    "szego_basis",
    "write_text_atomic",
    "__version__",
]
