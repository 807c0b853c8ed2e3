"""Central record of every numerical tolerance used by the library and the CLI.

Each value is the bound a check is held to; reports echo the record so
regression outputs are self-describing.
"""
from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # algebra
    hermitian: float = 1e-12            # relative to 1 + max|M|
    reconstruction: float = 1e-10       # relative to max|M|
    orthonormality: float = 1e-12
    unitarity: float = 1e-12
    quadrature_weights: float = 1e-13
    degeneracy: float = 1e-9            # relative to max|E|
    built_hermitian: float = 1e-10      # time-operator matrices
    # canonical commutation checks
    dense_ccr: float = 1e-12
    defect_entry: float = 1e-12
    defect_norm_rel: float = 1e-10
    defect_rank_rel: float = 1e-10
    closed_ccr: float = 1e-3
    monotone_slack: float = 1.2
    bump_orthogonality: float = 1e-10
    # time-of-arrival constructions
    toa_crosscheck: float = 1e-8
    kernel_symmetry: float = 1e-13
    gamma_reversal: float = 1e-10
    # clock
    clock: float = 1e-10
    # arrival dynamics
    arrival_eigen_residual: float = 1e-9
    probability: float = 1e-8
    time_reversal: float = 1e-8
    symmetric_collapse: float = 1e-2   # |<q>| at t = tau, in units of l
    # Pauli falsifier
    imag_eigenvalue: float = 1e-12
    spectrum_preserved: float = 1e-12   # relative to max|E|
    overlap_threshold: float = 1e-3

    def as_dict(self):
        return asdict(self)

    def updated(self, **overrides):
        unknown = set(overrides) - set(asdict(self))
        if unknown:
            raise ValueError(f"unknown tolerance name(s): {sorted(unknown)}")
        return replace(self, **{k: float(v) for k, v in overrides.items()})


TOL = Tolerances()
