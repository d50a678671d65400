"""Dense complex linear algebra: Hermitian eigensolves, operator norms, embeddings.

Qubit-ordering convention, fixed once and used everywhere: qubit 0 is the most
significant bit of a basis-state index, so ``embed_single_qubit(op, 0, 2)``
equals ``kron(op, I2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, NonHermitian, NonSquare

ABS_FLOOR = 1e-14
HERMITIAN_RTOL = 1e-12

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def matrix_scale(m: np.ndarray) -> float:
    """max(1, largest |entry|); reference scale for relative tolerances."""
    if m.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(m))))


def is_hermitian(m: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    tol = max(rtol * matrix_scale(m), ABS_FLOOR)
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def require_hermitian(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")
    if not is_hermitian(m):
        raise NonHermitian("matrix is not Hermitian within tolerance")
    return m


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # orthonormal columns aligned with eigenvalues


def hermitian_eigendecompose(m: np.ndarray) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix (ascending eigenvalues)."""
    m = require_hermitian(m)
    vals, vecs = np.linalg.eigh(m)
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)


def operator_norm(m: np.ndarray) -> float:
    """Largest |eigenvalue| of a Hermitian matrix."""
    m = require_hermitian(m)
    return float(np.max(np.abs(np.linalg.eigvalsh(m))))


def kron(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, first factor most significant."""
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def embed_operators(ops: dict[int, np.ndarray], total_qubits: int) -> np.ndarray:
    """Tensor single-qubit operators into the full 2**total_qubits space.

    ``ops`` maps qubit index to a 2x2 operator; all other positions get the
    identity. Indices follow the module-level ordering convention.
    """
    for q in ops:
        if not 0 <= q < total_qubits:
            raise IndexOutOfRange(f"qubit {q} outside 0..{total_qubits - 1}")
    out = np.ones((1, 1), dtype=complex)
    for q in range(total_qubits):
        op = np.asarray(ops.get(q, I2), dtype=complex)
        if op.shape != (2, 2):
            raise NonSquare(f"single-qubit operator must be 2x2, got {op.shape}")
        out = np.kron(out, op)
    return out


def embed_single_qubit(op: np.ndarray, qubit: int, total_qubits: int) -> np.ndarray:
    """``op`` on the given tensor factor, identity elsewhere."""
    return embed_operators({qubit: op}, total_qubits)
