"""Exact effective Hamiltonians from the projected gadget, and the error ratio.

The low-energy effective Hamiltonian keeps the d lowest eigenpairs; subtracting
an energy shift (the mean of the retained energies, or the shift polynomial
from the perturbation series) exposes the part that mimics the target. The
error ratio compares it against the ideal k-th order operator, all by direct
diagonalization with no perturbation theory on this path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import BlochSeries, bloch_series
from .errors import DegenerateCut, MissingBlochSeries
from .gadget import DEFAULT_MAX_QUBITS, GadgetLayout, GadgetSystem
from .hamiltonian import KLocalHamiltonian, comp_matrix
from .linalg import hermitian_eigendecompose, operator_norm
from .sector import SectorBasis, build_sector_basis, cat_projector, project_to_sector

GAP_TOL = 1e-9

SHIFT_MODES = ("mean", "bloch")


def effective_hamiltonian(
    h: np.ndarray, d: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spectral truncation onto the d lowest eigenstates.

    Returns (H_eff, projector onto its support, all eigenvalues ascending).
    The operator, not the eigenvectors, is the contract: any basis rotation
    within a degenerate retained block yields the same matrices.
    """
    spec = hermitian_eigendecompose(h)
    dim = h.shape[0]
    if not 1 <= d <= dim:
        raise ValueError(f"d={d} must be in 1..{dim}")
    vals, vecs = spec.eigenvalues, spec.eigenvectors
    if d < dim and vals[d] - vals[d - 1] <= GAP_TOL:
        raise DegenerateCut(
            f"gap at the cut is {vals[d] - vals[d - 1]:.3e}; "
            f"the retained space is not well separated"
        )
    low = vecs[:, :d]
    h_eff = (low * vals[:d]) @ low.conj().T
    pi = low @ low.conj().T
    return h_eff, pi, vals


@dataclass(frozen=True)
class ShiftedEffective:
    """Effective Hamiltonian minus a uniform shift on its support."""

    h_eff_shifted: np.ndarray
    projector: np.ndarray
    energies: np.ndarray
    shift: float
    shift_mode: str
    gap_at_cut: float


def shifted_effective(
    h: np.ndarray,
    d: int,
    mode: str = "mean",
    bloch: BlochSeries | None = None,
    lam: float | None = None,
) -> ShiftedEffective:
    """H_eff minus shift * projector; same eigenvectors, same gaps.

    mode "mean" uses the mean retained energy (the ideal part is traceless on
    its support, so the mean matches the shift polynomial through order k);
    mode "bloch" evaluates the series shift polynomial at ``lam``.
    """
    if mode not in SHIFT_MODES:
        raise ValueError(f"shift mode must be one of {SHIFT_MODES}, got {mode!r}")
    h_eff, pi, vals = effective_hamiltonian(h, d)
    if mode == "mean":
        shift = float(np.mean(vals[:d]))
    else:
        if bloch is None:
            raise MissingBlochSeries("bloch shift mode needs a computed series")
        if lam is None:
            raise ValueError("bloch shift mode needs the coupling strength")
        shift = bloch.shift_value(lam)
    gap = float(vals[d] - vals[d - 1]) if d < h.shape[0] else math.inf
    return ShiftedEffective(
        h_eff_shifted=h_eff - shift * pi,
        projector=pi,
        energies=vals,
        shift=shift,
        shift_mode=mode,
        gap_at_cut=gap,
    )


def ideal_prefactor(k: int, lam: float) -> float:
    """-k (-lam)^k / (k-1)!, the k-th order coefficient of the mimic term."""
    return -k * (-lam) ** k / math.factorial(k - 1)


def ideal_hamiltonian(
    h: KLocalHamiltonian,
    lam: float,
    layout: GadgetLayout,
    sector: SectorBasis | None = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> np.ndarray:
    """The ideal operator: prefactor * H_comp tensored with all-register cat
    projectors, expressed in the +1 sector basis."""
    if sector is None:
        sector = build_sector_basis(layout, max_qubits=max_qubits)
    comp = comp_matrix(h, max_qubits=max_qubits)
    anc = cat_projector(GadgetLayout(0, layout.r, layout.k), max_qubits=max_qubits)
    full = ideal_prefactor(h.k, lam) * np.kron(comp, anc.matrix)
    return project_to_sector(full, sector)


@dataclass(frozen=True)
class EffectiveReport:
    """Error-ratio diagnostic for one gadget at one coupling strength."""

    lam: float
    d: int
    shift_used: float
    shift_mode: str
    h_eff_shifted: np.ndarray
    h_id: np.ndarray
    error_norm: float
    id_norm: float
    ratio: float
    spectral_gap_at_cut: float


def error_ratio(
    system: GadgetSystem,
    d: int | None = None,
    mode: str = "mean",
    bloch: BlochSeries | None = None,
    sector: SectorBasis | None = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> EffectiveReport:
    """Complete report: ||H_id - H_eff_shifted|| / ||H_id|| by exact diagonalization."""
    layout = system.layout
    if sector is None:
        sector = build_sector_basis(layout, max_qubits=max_qubits)
    if d is None:
        d = 2**layout.n_comp
    h_plus = project_to_sector(system.h_gad, sector)
    if mode == "bloch" and bloch is None:
        bloch = bloch_series(system, sector=sector, max_qubits=max_qubits)
    shifted = shifted_effective(h_plus, d, mode=mode, bloch=bloch, lam=system.lam)
    h_id = ideal_hamiltonian(system.source, system.lam, layout, sector=sector,
                             max_qubits=max_qubits)
    id_norm = operator_norm(h_id)
    if id_norm <= 0.0:
        raise ValueError("ideal Hamiltonian vanishes; the error ratio is undefined")
    error_norm = operator_norm(h_id - shifted.h_eff_shifted)
    return EffectiveReport(
        lam=system.lam,
        d=d,
        shift_used=shifted.shift,
        shift_mode=mode,
        h_eff_shifted=shifted.h_eff_shifted,
        h_id=h_id,
        error_norm=error_norm,
        id_norm=id_norm,
        ratio=error_norm / id_norm,
        spectral_gap_at_cut=shifted.gap_at_cut,
    )
