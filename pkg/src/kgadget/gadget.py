"""Assembly of the 2-local gadget Hamiltonian h_anc + lambda * v.

Each target term gets a register of k ancilla qubits, penalized by pairwise ZZ
couplings so a register configuration of Hamming weight w costs w*(k-w). The
coupling operator attaches the term's j-th axis operator to ancilla (s, j) via
an X flip; the term coefficient rides on the j = 0 coupling only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionOverflow, IndexOutOfRange, LambdaTooLarge
from .hamiltonian import KLocalHamiltonian, axis_matrix
from .linalg import PAULI_X, embed_operators, operator_norm

DEFAULT_MAX_QUBITS = 14


@dataclass(frozen=True)
class GadgetLayout:
    """Global qubit bookkeeping: computational qubits first, then registers in term order."""

    n_comp: int
    r: int
    k: int

    @property
    def total_qubits(self) -> int:
        return self.n_comp + self.r * self.k

    @property
    def dim(self) -> int:
        return 2**self.total_qubits

    def ancilla_index(self, s: int, j: int) -> int:
        """Global index of the j-th ancilla qubit in register s."""
        if not (0 <= s < self.r and 0 <= j < self.k):
            raise IndexOutOfRange(f"ancilla ({s}, {j}) outside r={self.r}, k={self.k}")
        return self.n_comp + s * self.k + j

    def register_qubits(self, s: int) -> tuple[int, ...]:
        return tuple(self.ancilla_index(s, j) for j in range(self.k))


def layout_for(h: KLocalHamiltonian) -> GadgetLayout:
    return GadgetLayout(n_comp=h.n, r=h.r, k=h.k)


def _check_cap(layout: GadgetLayout, max_qubits: int) -> None:
    if layout.total_qubits > max_qubits:
        raise DimensionOverflow(
            f"{layout.total_qubits} total qubits exceed cap of {max_qubits}"
        )


def _qubit_bits(layout: GadgetLayout) -> np.ndarray:
    """bits[q, i] = value of qubit q in basis state i (qubit 0 = most significant)."""
    idx = np.arange(layout.dim)
    shifts = layout.total_qubits - 1 - np.arange(layout.total_qubits)
    return (idx[None, :] >> shifts[:, None]) & 1


def penalty_diagonal(layout: GadgetLayout, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Diagonal of the ZZ penalty: sum_s 0.5*(1 - z_i z_j) over register pairs.

    Entries are exact small integers (as floats).
    """
    _check_cap(layout, max_qubits)
    bits = _qubit_bits(layout)
    diag = np.zeros(layout.dim)
    for s in range(layout.r):
        qubits = layout.register_qubits(s)
        z = 1.0 - 2.0 * bits[list(qubits), :]
        for a in range(layout.k):
            for b in range(a + 1, layout.k):
                diag += 0.5 * (1.0 - z[a] * z[b])
    return diag


def build_penalty(layout: GadgetLayout, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Dense diagonal penalty Hamiltonian on the full gadget space."""
    return np.diag(penalty_diagonal(layout, max_qubits=max_qubits).astype(complex))


def build_coupling(
    h: KLocalHamiltonian,
    layout: GadgetLayout,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> np.ndarray:
    """Unscaled coupling V = sum_s sum_j c_{s,j} sigma_{s,j} (x) X_{s,j}; strictly 2-local."""
    _check_cap(layout, max_qubits)
    out = np.zeros((layout.dim, layout.dim), dtype=complex)
    for s, term in enumerate(h.terms):
        for j, (qubit, op) in enumerate(term.factors):
            c = term.coeff if j == 0 else 1.0
            if c == 0.0:
                continue
            ops = {qubit: axis_matrix(op), layout.ancilla_index(s, j): PAULI_X}
            out += c * embed_operators(ops, layout.total_qubits)
    return out


def loose_coupling_norm_bound(h: KLocalHamiltonian) -> float:
    """Triangle-inequality bound sum_s (|c_s| + k - 1) on the coupling norm."""
    return float(sum(abs(t.coeff) + h.k - 1 for t in h.terms))


def lambda_bound(v: np.ndarray, k: int) -> float:
    """Convergence-guaranteeing coupling strength (k-1) / (4 ||V||), exact norm."""
    return (k - 1) / (4.0 * operator_norm(v))


@dataclass(frozen=True)
class GadgetSystem:
    """Assembled gadget: layout, penalty, unscaled coupling and coupling strength."""

    layout: GadgetLayout
    h_anc: np.ndarray
    v: np.ndarray
    lam: float
    source: KLocalHamiltonian
    lam_bound: float
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def h_gad(self) -> np.ndarray:
        return self.h_anc + self.lam * self.v


def assemble(
    h: KLocalHamiltonian,
    lam: float,
    strict: bool = False,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> GadgetSystem:
    """Build the full gadget system for coupling strength ``lam``.

    In strict mode a coupling at or above the convergence bound is rejected;
    otherwise it is recorded as a warning (sweeps near the edge are legitimate).
    """
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    layout = layout_for(h)
    h_anc = build_penalty(layout, max_qubits=max_qubits)
    v = build_coupling(h, layout, max_qubits=max_qubits)
    bound = lambda_bound(v, h.k)
    warnings: tuple[str, ...] = ()
    if lam >= bound:
        message = f"lambda={lam} is at or above the convergence bound {bound:.6g}"
        if strict:
            raise LambdaTooLarge(message)
        warnings = (message,)
    return GadgetSystem(
        layout=layout,
        h_anc=h_anc,
        v=v,
        lam=lam,
        source=h,
        lam_bound=bound,
        warnings=warnings,
    )
