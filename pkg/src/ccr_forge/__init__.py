"""Self-adjoint time operators for a particle in a box.

Builds the characteristic and time-of-arrival operators in a truncated
momentum eigenbasis, measures how well each satisfies [T, H] = i on its
canonical domain, and simulates the associated clock and arrival dynamics.
"""
__version__ = "0.1.0"

from .confined import (
    BasisIndexMap,
    DegenerateSpectrumError,
    SpectrumTable,
    SystemConfig,
    basis_function,
    build_system,
    constant_coefficients,
)
from .constants import TOL, Tolerances
from .numkernel import (
    EigenDecomposition,
    NotHermitianError,
    QuadratureRule,
    gauss_legendre,
    hermitian_eigen,
    unitary_evolution,
)
from .timeops import (
    TimeOperatorBuild,
    build_characteristic_time,
    build_toa_matrix,
    characteristic_time_operator,
    toa_kernel,
)
from .ccrlab import (
    CommutatorReport,
    DomainVector,
    bump_domain_sample,
    ccr_residual,
    commutator,
    commutator_defect,
    dense_domain_sample,
    pauli_falsifier,
)
from .clock import TwoLevelClock, clock_series, project_two_level, wrap_time
from .arrival import ArrivalEigenstate, CollapseSeries, collapse_series, toa_spectrum
