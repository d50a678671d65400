"""The +1 symmetry sector of the register flip operators X^(x)k.

Each register's +1 eigenspace is spanned by (|b> + |b_complement>)/sqrt(2)
with b the lexicographically smaller bitstring of the pair, i.e. b has its
leading register bit equal to 0. Tensoring pairs across registers and with
computational basis states gives an explicit orthonormal sector basis; the
gadget Hamiltonian is block diagonal with respect to it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionOverflow, SymmetryViolation
from .gadget import DEFAULT_MAX_QUBITS, GadgetLayout
from .linalg import PAULI_X, embed_operators, matrix_scale

COMMUTATION_RTOL = 1e-10


@dataclass(frozen=True)
class SectorBasis:
    """Orthonormal basis of the simultaneous +1 eigenspace of all register flips.

    Column order: computational index is the most significant digit, then one
    pairing digit per register (register 0 first), each in 0..2^(k-1)-1.
    """

    layout: GadgetLayout
    basis: np.ndarray  # (2^total_qubits, sector_dim)

    @property
    def sector_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def pair_count(self) -> int:
        """Pairings per register, 2^(k-1)."""
        return 2 ** (self.layout.k - 1)

    def ground_mask(self) -> np.ndarray:
        """True on columns whose registers all carry the b = 0...0 pairing.

        Those columns span the cat-state ground space of the penalty.
        """
        reg_block = self.pair_count**self.layout.r
        cols = np.arange(self.sector_dim)
        return cols % reg_block == 0

    def penalty_values(self) -> np.ndarray:
        """Penalty eigenvalue per sector column (the projected penalty is diagonal)."""
        k, r = self.layout.k, self.layout.r
        pair = self.pair_count
        cols = np.arange(self.sector_dim)
        values = np.zeros(self.sector_dim)
        for s in range(r):
            a = (cols // pair ** (r - 1 - s)) % pair
            w = np.array([bin(int(x)).count("1") for x in a])
            values += w * (k - w)
        return values


def build_sector_basis(
    layout: GadgetLayout, max_qubits: int = DEFAULT_MAX_QUBITS
) -> SectorBasis:
    if layout.total_qubits > max_qubits:
        raise DimensionOverflow(
            f"{layout.total_qubits} total qubits exceed cap of {max_qubits}"
        )
    n, r, k = layout.n_comp, layout.r, layout.k
    pair = 2 ** (k - 1)
    full_mask = 2**k - 1
    sector_dim = 2**n * pair**r
    basis = np.zeros((layout.dim, sector_dim), dtype=complex)
    amp = 2.0 ** (-r / 2.0)
    for col in range(sector_dim):
        comp = col // pair**r
        digits = [(col // pair ** (r - 1 - s)) % pair for s in range(r)]
        for choice in range(2**r):
            full = comp
            for s in range(r):
                b = digits[s]
                if (choice >> (r - 1 - s)) & 1:
                    b ^= full_mask
                full = (full << k) | b
            basis[full, col] = amp
    return SectorBasis(layout=layout, basis=basis)


def register_flip_operator(
    layout: GadgetLayout, s: int, max_qubits: int = DEFAULT_MAX_QUBITS
) -> np.ndarray:
    """X^(x)k on register s as a full-space matrix."""
    if layout.total_qubits > max_qubits:
        raise DimensionOverflow(
            f"{layout.total_qubits} total qubits exceed cap of {max_qubits}"
        )
    return embed_operators(
        {q: PAULI_X for q in layout.register_qubits(s)}, layout.total_qubits
    )


def project_to_sector(
    m: np.ndarray, sector: SectorBasis, check_symmetry: bool = True
) -> np.ndarray:
    """B^dag M B for the sector basis B; requires M to respect the symmetry."""
    if check_symmetry:
        scale = matrix_scale(m)
        for s in range(sector.layout.r):
            flip = register_flip_operator(sector.layout, s)
            residual = float(np.max(np.abs(m @ flip - flip @ m)))
            if residual > COMMUTATION_RTOL * scale:
                raise SymmetryViolation(
                    f"operator does not commute with register {s} flip "
                    f"(residual {residual:.3e})"
                )
    return sector.basis.conj().T @ m @ sector.basis


@dataclass(frozen=True)
class CatProjector:
    """Projector onto all registers in the cat state, identity on computational qubits."""

    layout: GadgetLayout
    matrix: np.ndarray

    @property
    def rank(self) -> int:
        return 2**self.layout.n_comp


def cat_projector(layout: GadgetLayout, max_qubits: int = DEFAULT_MAX_QUBITS) -> CatProjector:
    if layout.total_qubits > max_qubits:
        raise DimensionOverflow(
            f"{layout.total_qubits} total qubits exceed cap of {max_qubits}"
        )
    k = layout.k
    cat = np.zeros(2**k, dtype=complex)
    cat[0] = cat[-1] = 1.0 / np.sqrt(2.0)
    register_proj = np.outer(cat, cat.conj())
    full = np.eye(2**layout.n_comp, dtype=complex)
    for _ in range(layout.r):
        full = np.kron(full, register_proj)
    return CatProjector(layout=layout, matrix=full)
