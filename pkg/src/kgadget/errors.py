"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` (the class name) so the
CLI can report failures as ``{"error": code, "detail": ...}``.
"""


class GadgetError(Exception):
    """Base class for validation and construction failures."""

    @property
    def code(self) -> str:
        return type(self).__name__


class NonSquare(GadgetError):
    """Matrix is not square."""


class NonHermitian(GadgetError):
    """Matrix fails the Hermiticity tolerance."""


class IndexOutOfRange(GadgetError):
    """Qubit index outside the addressed register."""


class SchemaError(GadgetError):
    """Input document does not match the Hamiltonian JSON schema."""


class DuplicateQubitInTerm(GadgetError):
    """A term touches the same qubit twice."""


class NonUnitAxis(GadgetError):
    """Axis vector is not unit length within tolerance."""


class LocalityMismatch(GadgetError):
    """A term's factor count differs from the Hamiltonian's k."""


class DimensionOverflow(GadgetError):
    """Requested dense matrix exceeds the configured qubit cap."""


class LambdaTooLarge(GadgetError):
    """Coupling strength exceeds the convergence bound in strict mode."""


class SymmetryViolation(GadgetError):
    """Operator does not commute with the register flip symmetries."""


class NonDiagonal(GadgetError):
    """Expected a diagonal matrix."""


class NoZeroGroundEnergy(GadgetError):
    """Unperturbed Hamiltonian has no zero-energy ground level."""


class OrderTooHigh(GadgetError):
    """Perturbative order exceeds the configured budget."""


class SubleadingNotScalar(GadgetError):
    """A sub-leading series order is not a pure energy shift."""


class DegenerateCut(GadgetError):
    """Spectral cut falls inside a degenerate level."""


class MissingBlochSeries(GadgetError):
    """Shift mode requires a precomputed perturbation series."""
