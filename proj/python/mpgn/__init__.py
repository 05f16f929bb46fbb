"""Successive minima of diagonally deformed lattices, exponent estimates and
inequality suites (Python front end to the C++ core)."""

from ._core import (
    BadParams,
    BudgetExceeded,
    CheckReport,
    DegenerateVector,
    EstimateSet,
    ExponentEstimate,
    Gauge,
    InsufficientSamples,
    Lattice,
    LatticePoint,
    MinimaProfile,
    MissingEstimates,
    MpgnError,
    NotIrrational,
    OutOfDomain,
    SingularBasis,
    Tau,
    VectorSystem,
    ZeroGauge,
    ZeroVector,
    check_all_local,
    check_exponent_relations,
    estimate_exponents,
    estimate_omega,
    estimate_psi1_vector_scan,
    find_minkowski_bases,
    is_minimal_system,
    make_lattice,
    omega_to_psi,
    points_in_box,
    psi_to_omega,
    random_tau_samples,
    successive_minima,
)

__version__ = "0.1.0"
