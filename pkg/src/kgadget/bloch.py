"""Degenerate perturbation series for gadget systems, after Bloch.

The expansion is organized by exponent tuples (l_1, ..., l_m): chains of the
coupling V interleaved with reduced resolvent powers S^l of the unperturbed
penalty. Admissible tuples are the "convex" ones whose prefix sums stay on or
above the diagonal; their count per order is a Catalan number.

All per-order operators are stored with the power of the coupling strength
factored out, so a single enumeration serves every strength in a sweep. The
matrices live in the +1 symmetry sector, where the penalty is diagonal and the
cat-state columns sit at energy zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionOverflow,
    NoZeroGroundEnergy,
    NonDiagonal,
    NonSquare,
    OrderTooHigh,
    SubleadingNotScalar,
)
from .gadget import GadgetSystem
from .linalg import matrix_scale, operator_norm
from .sector import SectorBasis, build_sector_basis, project_to_sector

ZERO_ENERGY_TOL = 1e-9
SHIFT_PURITY_TOL = 1e-10
DEFAULT_ORDER_CAP = 6
DEFAULT_MAX_QUBITS = 12


def _stair_tuples(length: int) -> list[tuple[int, ...]]:
    """All tuples of ``length`` nonnegative integers summing to ``length`` whose
    prefix sums satisfy l_1 + ... + l_p >= p for p < length; lexicographic order.
    """
    if length == 0:
        return [()]
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], total: int) -> None:
        pos = len(prefix)
        if pos == length - 1:
            last = length - total
            if last >= 0:
                out.append(tuple(prefix) + (last,))
            return
        for value in range(max(0, pos + 1 - total), length - total + 1):
            prefix.append(value)
            extend(prefix, total + value)
            prefix.pop()

    extend([], 0)
    return out


def _normalize_kind(kind: str) -> str:
    key = kind.strip().upper()
    if key in ("A", "A-TYPE"):
        return "A"
    if key in ("U", "U-TYPE"):
        return "U"
    raise ValueError(f"kind must be A or U, got {kind!r}")


def enumerate_tuples(kind: str, m: int) -> list[tuple[int, ...]]:
    """Admissible exponent tuples at order m.

    U-type order m: length m, sum m (empty for m = 0; the zeroth-order term is
    the bare ground projector and carries no tuple). A-type order m: length
    m - 1, sum m - 1, so order 1 is the single empty chain P0 V P0.
    """
    if m < 0:
        raise ValueError(f"order must be nonnegative, got {m}")
    kind = _normalize_kind(kind)
    if m == 0:
        return []
    return _stair_tuples(m if kind == "U" else m - 1)


def catalan_number(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def spectral_resolvent(h0: np.ndarray, l: int) -> np.ndarray:
    """S^l for a diagonal h0 with ground energy zero.

    l = 0 gives minus the ground projector; l > 0 gives 1/(-E)^l on each
    energy-E excited level and zero on the ground space.
    """
    h0 = np.asarray(h0, dtype=complex)
    if h0.ndim != 2 or h0.shape[0] != h0.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {h0.shape}")
    if l < 0:
        raise ValueError(f"resolvent power must be nonnegative, got {l}")
    scale = matrix_scale(h0)
    off = h0 - np.diag(np.diag(h0))
    if h0.size and float(np.max(np.abs(off))) > 1e-12 * scale:
        raise NonDiagonal("h0 has off-diagonal entries")
    diag = np.diag(h0)
    if float(np.max(np.abs(diag.imag))) > 1e-12 * scale:
        raise NonDiagonal("h0 has non-real diagonal entries")
    energies = diag.real
    ground = np.abs(energies) <= ZERO_ENERGY_TOL
    if not ground.any() or float(energies.min()) < -ZERO_ENERGY_TOL:
        raise NoZeroGroundEnergy("diagonal has no zero ground level")
    if l == 0:
        return np.diag(np.where(ground, -1.0, 0.0).astype(complex))
    values = np.zeros_like(energies)
    values[~ground] = (-energies[~ground]) ** (-float(l))
    return np.diag(values.astype(complex))


class BlochEngine:
    """Order-by-order series operators for one gadget system.

    Work happens in the +1 sector: the penalty is diagonal there, so resolvent
    powers and the ground projector are index masks. Per-tuple chains are summed
    in sorted tuple order, making results reproducible bit for bit.
    """

    def __init__(
        self,
        system: GadgetSystem,
        order_cap: int = DEFAULT_ORDER_CAP,
        max_qubits: int = DEFAULT_MAX_QUBITS,
        sector: SectorBasis | None = None,
    ):
        if system.layout.total_qubits > max_qubits:
            raise DimensionOverflow(
                f"{system.layout.total_qubits} total qubits exceed engine cap "
                f"of {max_qubits}"
            )
        self.system = system
        self.order_cap = order_cap
        self.sector = sector if sector is not None else build_sector_basis(
            system.layout, max_qubits=max_qubits
        )
        self.v = project_to_sector(system.v, self.sector)
        self.energies = self.sector.penalty_values()
        self.ground = np.abs(self.energies) <= ZERO_ENERGY_TOL
        self.p0_diag = self.ground.astype(float)
        self._u_closed: dict[int, np.ndarray] = {}
        self._u_rec: dict[int, np.ndarray] = {}
        self._a: dict[int, np.ndarray] = {}

    @property
    def sector_dim(self) -> int:
        return self.sector.sector_dim

    @property
    def ground_dim(self) -> int:
        return int(self.ground.sum())

    def p0_matrix(self) -> np.ndarray:
        return np.diag(self.p0_diag.astype(complex))

    def _s_vec(self, l: int) -> np.ndarray:
        """Diagonal of S^l over sector columns."""
        if l == 0:
            return -self.p0_diag
        values = np.zeros_like(self.energies)
        values[~self.ground] = (-self.energies[~self.ground]) ** (-float(l))
        return values

    def _check_order(self, m: int) -> None:
        if m > self.order_cap:
            raise OrderTooHigh(f"order {m} exceeds cap {self.order_cap}")

    def _chain_u(self, exponents: tuple[int, ...]) -> np.ndarray:
        """S^{l_1} V S^{l_2} V ... S^{l_m} V P0 for one exponent tuple."""
        m = self.v * self.p0_diag[None, :]
        m = self._s_vec(exponents[-1])[:, None] * m
        for l in reversed(exponents[:-1]):
            m = self.v @ m
            m = self._s_vec(l)[:, None] * m
        return m

    def _chain_a(self, exponents: tuple[int, ...]) -> np.ndarray:
        """P0 V S^{l_1} V ... S^{l_{m-1}} V P0 for one exponent tuple."""
        m = self.v * self.p0_diag[None, :]
        for l in reversed(exponents):
            m = self._s_vec(l)[:, None] * m
            m = self.v @ m
        return self.p0_diag[:, None] * m

    def a_order(self, m: int) -> np.ndarray:
        """The order-m ground-space operator, coupling power factored out."""
        if m < 1:
            raise ValueError(f"order must be >= 1, got {m}")
        self._check_order(m)
        if m not in self._a:
            total = np.zeros((self.sector_dim, self.sector_dim), dtype=complex)
            for exponents in enumerate_tuples("A", m):
                total += self._chain_a(exponents)
            self._a[m] = total
        return self._a[m]

    def u_order(self, m: int) -> np.ndarray:
        """The order-m mapping operator from the closed-form tuple sum."""
        if m < 0:
            raise ValueError(f"order must be >= 0, got {m}")
        self._check_order(m)
        if m not in self._u_closed:
            if m == 0:
                self._u_closed[0] = self.p0_matrix()
            else:
                total = np.zeros((self.sector_dim, self.sector_dim), dtype=complex)
                for exponents in enumerate_tuples("U", m):
                    total += self._chain_u(exponents)
                self._u_closed[m] = total
        return self._u_closed[m]

    def u_recurrence(self, m: int) -> np.ndarray:
        """The order-m mapping operator from the recurrence, an independent route.

        u_m = S^1 [ V u_{m-1} - sum_{p=1}^{m-1} u_p V u_{m-p-1} ]; the p = 0
        term is absent because the reduced inverse annihilates the ground space.
        """
        if m < 0:
            raise ValueError(f"order must be >= 0, got {m}")
        self._check_order(m)
        if m not in self._u_rec:
            if m == 0:
                self._u_rec[0] = self.p0_matrix()
            else:
                bracket = self.v @ self.u_recurrence(m - 1)
                for p in range(1, m):
                    bracket = bracket - self.u_recurrence(p) @ self.v @ self.u_recurrence(
                        m - p - 1
                    )
                self._u_rec[m] = self._s_vec(1)[:, None] * bracket
        return self._u_rec[m]


def split_shift(
    a_terms: list[np.ndarray], p0: np.ndarray, k: int
) -> tuple[np.ndarray, list[np.ndarray]]:
    """Separate each order into a uniform shift and the remainder on the ground space.

    ``a_terms[i]`` is the order-(i+1) operator; the shift coefficient is the
    normalized trace against the ground projector. Orders below k must be pure
    shift; a larger remainder signals a broken construction.
    """
    p0 = np.asarray(p0, dtype=complex)
    rank = float(np.real(np.trace(p0)))
    if rank <= 0:
        raise ValueError("ground projector has vanishing rank")
    coeffs = np.zeros(len(a_terms) + 1)
    parts: list[np.ndarray] = []
    for i, a in enumerate(a_terms):
        order = i + 1
        alpha = float(np.real(np.trace(a @ p0)) / rank)
        remainder = a - alpha * p0
        if order < k:
            norm = float(np.linalg.norm(remainder, 2))
            if norm > SHIFT_PURITY_TOL:
                raise SubleadingNotScalar(
                    f"order {order} < k={k} has non-shift part of norm {norm:.3e}"
                )
        coeffs[order] = alpha
        parts.append(remainder)
    return coeffs, parts


@dataclass(frozen=True)
class ConvergenceCertificate:
    """Sufficiency check ||lambda V|| < gap/4 with the exact coupling norm."""

    gap: float
    v_norm: float
    threshold: float
    lambda_v_norm: float
    converges: bool
    geometric_ratio: float


def convergence_certificate(system: GadgetSystem) -> ConvergenceCertificate:
    diag = np.real(np.diag(system.h_anc))
    excited = diag[diag > ZERO_ENERGY_TOL]
    gap = float(excited.min())
    v_norm = operator_norm(system.v)
    threshold = gap / 4.0
    lambda_v_norm = system.lam * v_norm
    return ConvergenceCertificate(
        gap=gap,
        v_norm=v_norm,
        threshold=threshold,
        lambda_v_norm=lambda_v_norm,
        converges=lambda_v_norm < threshold,
        geometric_ratio=4.0 * lambda_v_norm / gap,
    )


@dataclass(frozen=True)
class BlochSeries:
    """Per-order series data for one gadget, coupling power factored out.

    ``a_terms[i]`` and ``effective_parts[i]`` hold order i+1; ``u_terms[i]``
    holds order i. ``shift_poly[m]`` is the coefficient of lambda^m in the
    uniform energy shift, kept through degree k.
    """

    k_order: int
    a_terms: tuple[np.ndarray, ...]
    u_terms: tuple[np.ndarray, ...]
    shift_poly: np.ndarray
    effective_parts: tuple[np.ndarray, ...]
    certificate: ConvergenceCertificate

    @property
    def max_order(self) -> int:
        return len(self.a_terms)

    def shift_value(self, lam: float) -> float:
        """The shift polynomial evaluated at coupling strength ``lam``."""
        powers = lam ** np.arange(len(self.shift_poly))
        return float(self.shift_poly @ powers)

    def effective_k(self) -> np.ndarray:
        """Order-k remainder: the part that mimics the target Hamiltonian."""
        return self.effective_parts[self.k_order - 1]

    def a_total(self, lam: float) -> np.ndarray:
        """sum_m lam^m A^(m) over the computed orders."""
        total = np.zeros_like(self.a_terms[0])
        for i, a in enumerate(self.a_terms):
            total = total + lam ** (i + 1) * a
        return total


def bloch_series(
    system: GadgetSystem,
    order: int | None = None,
    order_cap: int = DEFAULT_ORDER_CAP,
    max_qubits: int = DEFAULT_MAX_QUBITS,
    sector: SectorBasis | None = None,
    engine: BlochEngine | None = None,
) -> BlochSeries:
    """Compute the series through ``order`` (default k) for one gadget system."""
    k = system.layout.k
    if order is None:
        order = k
    if order < k:
        raise ValueError(f"series order {order} must reach k={k}")
    if engine is None:
        engine = BlochEngine(
            system, order_cap=order_cap, max_qubits=max_qubits, sector=sector
        )
    a_terms = [engine.a_order(m) for m in range(1, order + 1)]
    u_terms = [engine.u_order(m) for m in range(0, order + 1)]
    coeffs, parts = split_shift(a_terms, engine.p0_matrix(), k)
    return BlochSeries(
        k_order=k,
        a_terms=tuple(a_terms),
        u_terms=tuple(u_terms),
        shift_poly=coeffs[: k + 1],
        effective_parts=tuple(parts),
        certificate=convergence_certificate(system),
    )


def compute_A_order(system: GadgetSystem, m: int, **kwargs) -> np.ndarray:
    return BlochEngine(system, **kwargs).a_order(m)


def compute_U_order(system: GadgetSystem, m: int, **kwargs) -> np.ndarray:
    return BlochEngine(system, **kwargs).u_order(m)


def compute_U_recurrence(system: GadgetSystem, m: int, **kwargs) -> np.ndarray:
    return BlochEngine(system, **kwargs).u_recurrence(m)
