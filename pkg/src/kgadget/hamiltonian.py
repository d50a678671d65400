"""Target k-local Hamiltonians: validation, JSON ingestion, matrix realization.

The input document format (UTF-8 JSON, unknown keys rejected):

    { "n": int, "k": int,
      "terms": [ { "coeff": float,
                   "factors": [ { "qubit": int,
                                  "axis": [x, y, z] | "X" | "Y" | "Z" } ] } ] }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DimensionOverflow,
    DuplicateQubitInTerm,
    LocalityMismatch,
    NonUnitAxis,
    SchemaError,
)
from .linalg import PAULI_X, PAULI_Y, PAULI_Z, embed_operators

UNIT_AXIS_TOL = 1e-9
DEFAULT_MAX_QUBITS = 14

NAMED_AXES = {
    "X": (1.0, 0.0, 0.0),
    "Y": (0.0, 1.0, 0.0),
    "Z": (0.0, 0.0, 1.0),
}


@dataclass(frozen=True)
class AxisOperator:
    """Single-qubit Hermitian operator n.sigma for a unit vector n in R^3."""

    axis: tuple[float, float, float]

    def __post_init__(self):
        norm = math.sqrt(sum(c * c for c in self.axis))
        if abs(norm - 1.0) > UNIT_AXIS_TOL:
            raise NonUnitAxis(f"axis norm {norm!r} is not 1 within {UNIT_AXIS_TOL}")


def axis_matrix(op: AxisOperator) -> np.ndarray:
    """n_x X + n_y Y + n_z Z; Hermitian, traceless, eigenvalues +-1."""
    nx, ny, nz = op.axis
    return nx * PAULI_X + ny * PAULI_Y + nz * PAULI_Z


@dataclass(frozen=True)
class LocalTerm:
    """One k-fold product term: coefficient and (qubit, axis-operator) factors."""

    coeff: float
    factors: tuple[tuple[int, AxisOperator], ...]

    def __post_init__(self):
        qubits = [q for q, _ in self.factors]
        if len(set(qubits)) != len(qubits):
            raise DuplicateQubitInTerm(f"term repeats a qubit: {qubits}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)


@dataclass(frozen=True)
class KLocalHamiltonian:
    """Sum of r terms, each a k-fold product of axis operators on distinct qubits."""

    n: int
    k: int
    terms: tuple[LocalTerm, ...]

    def __post_init__(self):
        if self.k < 2:
            raise SchemaError(f"k must be >= 2, got {self.k}")
        if not self.terms:
            raise SchemaError("at least one term is required")
        for idx, term in enumerate(self.terms):
            if len(term.factors) != self.k:
                raise LocalityMismatch(
                    f"term {idx} has {len(term.factors)} factors, expected k={self.k}"
                )
            for q, _ in term.factors:
                if not 0 <= q < self.n:
                    raise SchemaError(f"term {idx} addresses qubit {q}, n={self.n}")

    @property
    def r(self) -> int:
        return len(self.terms)


def _require_keys(obj: dict, keys: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = set(obj) - keys
    if unknown:
        raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")
    missing = keys - set(obj)
    if missing:
        raise SchemaError(f"{where}: missing keys {sorted(missing)}")


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected an integer, got {value!r}")
    return value


def _as_real(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a real number, got {value!r}")
    return float(value)


def _parse_axis(value, where: str) -> AxisOperator:
    if isinstance(value, str):
        if value not in NAMED_AXES:
            raise SchemaError(f"{where}: named axis must be X, Y or Z, got {value!r}")
        return AxisOperator(NAMED_AXES[value])
    if isinstance(value, (list, tuple)) and len(value) == 3:
        comps = tuple(_as_real(c, where) for c in value)
        return AxisOperator(comps)
    raise SchemaError(f"{where}: axis must be a 3-vector or X/Y/Z, got {value!r}")


def parse_hamiltonian(document: str | bytes | dict) -> KLocalHamiltonian:
    """Parse and validate a Hamiltonian document (JSON text or parsed dict)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    _require_keys(document, {"n", "k", "terms"}, "document")
    n = _as_int(document["n"], "n")
    k = _as_int(document["k"], "k")
    if not isinstance(document["terms"], list):
        raise SchemaError("terms: expected a list")
    terms = []
    for t_idx, raw_term in enumerate(document["terms"]):
        where = f"terms[{t_idx}]"
        _require_keys(raw_term, {"coeff", "factors"}, where)
        coeff = _as_real(raw_term["coeff"], f"{where}.coeff")
        if not isinstance(raw_term["factors"], list):
            raise SchemaError(f"{where}.factors: expected a list")
        factors = []
        for f_idx, raw_factor in enumerate(raw_term["factors"]):
            f_where = f"{where}.factors[{f_idx}]"
            _require_keys(raw_factor, {"qubit", "axis"}, f_where)
            qubit = _as_int(raw_factor["qubit"], f"{f_where}.qubit")
            factors.append((qubit, _parse_axis(raw_factor["axis"], f"{f_where}.axis")))
        terms.append(LocalTerm(coeff=coeff, factors=tuple(factors)))
    return KLocalHamiltonian(n=n, k=k, terms=tuple(terms))


def load_hamiltonian(path: str | Path) -> KLocalHamiltonian:
    return parse_hamiltonian(Path(path).read_text(encoding="utf-8"))


def to_document(h: KLocalHamiltonian) -> dict:
    """Serialize back to the document structure (axes always as 3-vectors)."""
    return {
        "n": h.n,
        "k": h.k,
        "terms": [
            {
                "coeff": term.coeff,
                "factors": [
                    {"qubit": q, "axis": list(op.axis)} for q, op in term.factors
                ],
            }
            for term in h.terms
        ],
    }


def comp_matrix(h: KLocalHamiltonian, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Dense 2^n x 2^n realization of the target Hamiltonian."""
    if h.n > max_qubits:
        raise DimensionOverflow(f"n={h.n} exceeds cap of {max_qubits} qubits")
    dim = 2**h.n
    out = np.zeros((dim, dim), dtype=complex)
    for term in h.terms:
        ops = {q: axis_matrix(op) for q, op in term.factors}
        out += term.coeff * embed_operators(ops, h.n)
    return out
