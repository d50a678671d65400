"""Sparse-entry JSON serialization for dense complex matrices.

Format: {"dim": n, "entries": [[row, col, re, im], ...]} listing entries with
magnitude above 1e-15 in row-major order. Python's float repr is shortest
round-trip, so serialization is bit exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

ENTRY_THRESHOLD = 1e-15


def matrix_to_dict(m: np.ndarray, threshold: float = ENTRY_THRESHOLD) -> dict:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    rows, cols = np.nonzero(np.abs(m) > threshold)
    entries = [
        [int(i), int(j), float(m[i, j].real), float(m[i, j].imag)]
        for i, j in zip(rows, cols)
    ]
    return {"dim": int(m.shape[0]), "entries": entries}


def matrix_from_dict(d: dict) -> np.ndarray:
    dim = int(d["dim"])
    out = np.zeros((dim, dim), dtype=complex)
    for i, j, re, im in d["entries"]:
        out[int(i), int(j)] = complex(re, im)
    return out


def write_matrix(m: np.ndarray, path: str | Path) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(m), indent=1) + "\n",
                          encoding="utf-8")


def read_matrix(path: str | Path) -> np.ndarray:
    return matrix_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
