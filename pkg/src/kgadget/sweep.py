"""Coupling-strength sweeps of the error ratio, the Figure-2-style experiment.

Rows are computed independently per coupling value (optionally in parallel)
and always assembled in ascending order, so the CSV is deterministic apart
from the wall-clock column.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .bloch import BlochSeries, bloch_series
from .effective import error_ratio
from .errors import GadgetError
from .gadget import GadgetSystem, assemble
from .hamiltonian import KLocalHamiltonian
from .sector import build_sector_basis

CSV_HEADER = [
    "lambda",
    "ratio",
    "error_norm",
    "id_norm",
    "shift",
    "shift_mode",
    "sector_dim",
    "wall_time_ms",
]


@dataclass(frozen=True)
class SweepRow:
    lam: float
    ratio: float | None
    error_norm: float | None
    id_norm: float | None
    shift: float | None
    shift_mode: str
    sector_dim: int
    wall_time_ms: float
    error: str | None = None
    detail: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


def geometric_lambdas(start: float, factor: float, count: int) -> list[float]:
    if start <= 0 or factor <= 0 or count < 1:
        raise ValueError("range spec needs start > 0, factor > 0, count >= 1")
    return [start * factor**i for i in range(count)]


def run_sweep(
    h: KLocalHamiltonian,
    lambdas: list[float],
    mode: str = "mean",
    jobs: int = 1,
    max_qubits: int = 12,
) -> list[SweepRow]:
    """One error-ratio row per coupling value, sorted ascending."""
    if not lambdas:
        raise ValueError("no coupling values given")
    if any(lam <= 0 for lam in lambdas):
        raise ValueError("all coupling values must be positive")
    lams = sorted(set(lambdas))
    base = assemble(h, lams[0], strict=False, max_qubits=max_qubits)
    sector = build_sector_basis(base.layout, max_qubits=max_qubits)
    series: BlochSeries | None = None
    if mode == "bloch":
        series = bloch_series(base, sector=sector, max_qubits=max_qubits)
    sector_dim = sector.sector_dim

    def one(lam: float) -> SweepRow:
        t0 = time.perf_counter()
        try:
            system: GadgetSystem = dataclasses.replace(base, lam=lam)
            report = error_ratio(
                system, mode=mode, bloch=series, sector=sector, max_qubits=max_qubits
            )
            return SweepRow(
                lam=lam,
                ratio=report.ratio,
                error_norm=report.error_norm,
                id_norm=report.id_norm,
                shift=report.shift_used,
                shift_mode=mode,
                sector_dim=sector_dim,
                wall_time_ms=(time.perf_counter() - t0) * 1e3,
            )
        except (GadgetError, ValueError) as exc:
            code = exc.code if isinstance(exc, GadgetError) else "ValueError"
            return SweepRow(
                lam=lam,
                ratio=None,
                error_norm=None,
                id_norm=None,
                shift=None,
                shift_mode=mode,
                sector_dim=sector_dim,
                wall_time_ms=(time.perf_counter() - t0) * 1e3,
                error=code,
                detail=str(exc),
            )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, lams))
    else:
        rows = [one(lam) for lam in lams]
    return rows


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def write_sweep_csv(rows: list[SweepRow], path: str | Path) -> None:
    """RFC-4180 CSV, LF line endings, shortest round-trip float formatting."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(
                [
                    _fmt(row.lam),
                    _fmt(row.ratio),
                    _fmt(row.error_norm),
                    _fmt(row.id_norm),
                    _fmt(row.shift),
                    row.shift_mode,
                    str(row.sector_dim),
                    _fmt(row.wall_time_ms),
                ]
            )


def write_error_sidecar(rows: list[SweepRow], csv_path: str | Path) -> Path | None:
    """Write <csv>.errors.json if any rows failed; returns its path or None."""
    failures = [
        {"lambda": row.lam, "error": row.error, "detail": row.detail}
        for row in rows
        if row.failed
    ]
    if not failures:
        return None
    sidecar = Path(str(csv_path) + ".errors.json")
    sidecar.write_text(json.dumps(failures, indent=2) + "\n", encoding="utf-8")
    return sidecar
