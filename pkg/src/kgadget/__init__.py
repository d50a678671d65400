"""kgadget: compile k-local qubit Hamiltonians into 2-local perturbative gadgets.

The library builds the penalty-plus-coupling gadget for a target Hamiltonian,
projects it into the +1 symmetry sector of the register flip operators, runs a
degenerate perturbation expansion order by order, and checks by exact
diagonalization that the gadget's low-energy physics reproduces the target.
"""

from . import errors
from .bloch import (
    BlochEngine,
    BlochSeries,
    ConvergenceCertificate,
    bloch_series,
    catalan_number,
    compute_A_order,
    compute_U_order,
    compute_U_recurrence,
    convergence_certificate,
    enumerate_tuples,
    spectral_resolvent,
    split_shift,
)
from .effective import (
    EffectiveReport,
    effective_hamiltonian,
    error_ratio,
    ideal_hamiltonian,
    ideal_prefactor,
    shifted_effective,
)
from .gadget import (
    GadgetLayout,
    GadgetSystem,
    assemble,
    build_coupling,
    build_penalty,
    lambda_bound,
    layout_for,
    loose_coupling_norm_bound,
    penalty_diagonal,
)
from .hamiltonian import (
    AxisOperator,
    KLocalHamiltonian,
    LocalTerm,
    axis_matrix,
    comp_matrix,
    load_hamiltonian,
    parse_hamiltonian,
    to_document,
)
from .linalg import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Spectrum,
    embed_operators,
    embed_single_qubit,
    hermitian_eigendecompose,
    kron,
    operator_norm,
)
from .sector import (
    CatProjector,
    SectorBasis,
    build_sector_basis,
    cat_projector,
    project_to_sector,
    register_flip_operator,
)
from .sweep import SweepRow, geometric_lambdas, run_sweep, write_sweep_csv
from .verify import run_verification

__version__ = "0.1.0"

__all__ = [
    "AxisOperator",
    "BlochEngine",
    "BlochSeries",
    "CatProjector",
    "ConvergenceCertificate",
    "EffectiveReport",
    "GadgetLayout",
    "GadgetSystem",
    "KLocalHamiltonian",
    "LocalTerm",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "SectorBasis",
    "Spectrum",
    "SweepRow",
    "assemble",
    "axis_matrix",
    "bloch_series",
    "build_coupling",
    "build_penalty",
    "build_sector_basis",
    "cat_projector",
    "catalan_number",
    "comp_matrix",
    "compute_A_order",
    "compute_U_order",
    "compute_U_recurrence",
    "convergence_certificate",
    "effective_hamiltonian",
    "embed_operators",
    "embed_single_qubit",
    "enumerate_tuples",
    "error_ratio",
    "errors",
    "geometric_lambdas",
    "hermitian_eigendecompose",
    "ideal_hamiltonian",
    "ideal_prefactor",
    "kron",
    "lambda_bound",
    "layout_for",
    "load_hamiltonian",
    "loose_coupling_norm_bound",
    "operator_norm",
    "parse_hamiltonian",
    "penalty_diagonal",
    "project_to_sector",
    "register_flip_operator",
    "run_sweep",
    "run_verification",
    "shifted_effective",
    "spectral_resolvent",
    "split_shift",
    "to_document",
    "write_sweep_csv",
]
