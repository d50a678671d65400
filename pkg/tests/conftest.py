"""Shared fixtures: canonical instance documents and independent test oracles."""

import itertools
import json

import numpy as np
import pytest

import kgadget as kg

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.array([[1, 0], [0, -1]], dtype=complex)

XYZ_DOC = {
    "n": 3,
    "k": 3,
    "terms": [
        {
            "coeff": 1.0,
            "factors": [
                {"qubit": 0, "axis": "X"},
                {"qubit": 1, "axis": "Y"},
                {"qubit": 2, "axis": "Z"},
            ],
        }
    ],
}

# Second term carries X on qubit 2 so the two terms commute; their sum then has
# the two-outcome {-2, 0, +2} spectrum rather than +-sqrt(2).
XYZ_XYY_DOC = {
    "n": 3,
    "k": 3,
    "terms": [
        {
            "coeff": 1.0,
            "factors": [
                {"qubit": 0, "axis": "X"},
                {"qubit": 1, "axis": "Y"},
                {"qubit": 2, "axis": "Z"},
            ],
        },
        {
            "coeff": 1.0,
            "factors": [
                {"qubit": 2, "axis": "X"},
                {"qubit": 1, "axis": "Y"},
                {"qubit": 0, "axis": "Y"},
            ],
        },
    ],
}

XYZZ_DOC = {
    "n": 4,
    "k": 4,
    "terms": [
        {
            "coeff": 1.0,
            "factors": [
                {"qubit": 0, "axis": "X"},
                {"qubit": 1, "axis": "Y"},
                {"qubit": 2, "axis": "Z"},
                {"qubit": 3, "axis": "Z"},
            ],
        }
    ],
}

ZZ_DOC = {
    "n": 2,
    "k": 2,
    "terms": [
        {
            "coeff": 1.0,
            "factors": [{"qubit": 0, "axis": "Z"}, {"qubit": 1, "axis": "Z"}],
        }
    ],
}


@pytest.fixture(scope="session")
def xyz():
    return kg.parse_hamiltonian(XYZ_DOC)


@pytest.fixture(scope="session")
def xyz_xyy():
    return kg.parse_hamiltonian(XYZ_XYY_DOC)


@pytest.fixture(scope="session")
def xyzz():
    return kg.parse_hamiltonian(XYZZ_DOC)


@pytest.fixture(scope="session")
def zz():
    return kg.parse_hamiltonian(ZZ_DOC)


def write_doc(tmp_path, doc, name="ham.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def embed_oracle(op, qubit, total):
    """Independent single-qubit embedding via a plain kron loop."""
    out = np.array([[1.0]], dtype=complex)
    for q in range(total):
        out = np.kron(out, op if q == qubit else I2)
    return out


def stair_tuples_oracle(length):
    """Brute force over all compositions, filtered by the prefix condition."""
    if length == 0:
        return [()]
    out = []
    for candidate in itertools.product(range(length + 1), repeat=length):
        if sum(candidate) != length:
            continue
        if all(sum(candidate[: p + 1]) >= p + 1 for p in range(length - 1)):
            out.append(candidate)
    return sorted(out)


def signed_sector_basis(layout, signs):
    """Sector basis for an arbitrary sign pattern, one sign per register."""
    n, r, k = layout.n_comp, layout.r, layout.k
    pair = 2 ** (k - 1)
    full_mask = 2**k - 1
    dim_s = 2**n * pair**r
    basis = np.zeros((layout.dim, dim_s), dtype=complex)
    amp = 2.0 ** (-r / 2.0)
    for col in range(dim_s):
        comp = col // pair**r
        digits = [(col // pair ** (r - 1 - s)) % pair for s in range(r)]
        for choice in range(2**r):
            full = comp
            coef = amp
            for s in range(r):
                b = digits[s]
                if (choice >> (r - 1 - s)) & 1:
                    b ^= full_mask
                    coef *= signs[s]
                full = (full << k) | b
            basis[full, col] = coef
    return basis
