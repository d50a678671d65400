import math

import numpy as np
import pytest

import kgadget as kg
from kgadget.errors import (
    NoZeroGroundEnergy,
    NonDiagonal,
    OrderTooHigh,
    SubleadingNotScalar,
)
from kgadget.verify import mimic_target

from conftest import X, stair_tuples_oracle


@pytest.fixture(scope="module")
def xyz_engine(xyz):
    return kg.BlochEngine(kg.assemble(xyz, 0.05))


@pytest.fixture(scope="module")
def zz_engine(zz):
    return kg.BlochEngine(kg.assemble(zz, 0.05))


# --- resolvent -------------------------------------------------------------


def test_resolvent_zero_power_is_minus_ground_projector():
    h0 = np.diag([0.0, 2.0, 2.0, 2.0]).astype(complex)
    np.testing.assert_allclose(
        kg.spectral_resolvent(h0, 0), np.diag([-1.0, 0, 0, 0]).astype(complex)
    )


def test_resolvent_powers_k3_register():
    h0 = np.diag([0.0, 2.0, 2.0, 2.0]).astype(complex)
    np.testing.assert_allclose(
        kg.spectral_resolvent(h0, 1), np.diag([0, -0.5, -0.5, -0.5]).astype(complex)
    )
    np.testing.assert_allclose(
        kg.spectral_resolvent(h0, 2), np.diag([0, 0.25, 0.25, 0.25]).astype(complex)
    )


def test_resolvent_rejects_bad_inputs():
    with pytest.raises(NonDiagonal):
        kg.spectral_resolvent(X, 1)
    with pytest.raises(NoZeroGroundEnergy):
        kg.spectral_resolvent(np.diag([1.0, 2.0]).astype(complex), 1)


# --- diagram enumeration ---------------------------------------------------


def test_u_tuples_small_orders():
    assert kg.enumerate_tuples("U", 1) == [(1,)]
    assert kg.enumerate_tuples("U", 2) == [(1, 1), (2, 0)]
    assert len(kg.enumerate_tuples("U", 3)) == 5
    assert kg.enumerate_tuples("U", 0) == []


def test_a_tuples_small_orders():
    assert kg.enumerate_tuples("A", 1) == [()]
    assert kg.enumerate_tuples("A", 2) == [(1,)]
    assert len(kg.enumerate_tuples("A", 3)) == 2
    assert kg.enumerate_tuples("A", 0) == []


def test_u_tuples_match_brute_force_oracle():
    for m in range(1, 9):
        assert kg.enumerate_tuples("U", m) == stair_tuples_oracle(m)


def test_a_tuples_match_brute_force_oracle():
    for m in range(1, 8):
        assert kg.enumerate_tuples("A", m) == stair_tuples_oracle(m - 1)


def test_tuple_counts_are_catalan():
    catalan = [1, 2, 5, 14, 42, 132, 429, 1430]
    for m, expected in enumerate(catalan, start=1):
        assert len(kg.enumerate_tuples("U", m)) == expected
        assert kg.catalan_number(m) == expected


def test_tuples_sorted_and_unique():
    for m in (3, 5):
        tuples = kg.enumerate_tuples("U", m)
        assert tuples == sorted(set(tuples))


# --- per-order operators ---------------------------------------------------


def test_a_first_order_vanishes(xyz_engine, zz_engine):
    for engine in (xyz_engine, zz_engine):
        assert np.max(np.abs(engine.a_order(1))) <= 1e-14


def test_a_second_order_single_term(xyz_engine):
    # single term, unit coefficient, k=3: exactly -(k/(k-1)) P0
    np.testing.assert_allclose(
        xyz_engine.a_order(2), -1.5 * xyz_engine.p0_matrix(), atol=1e-12
    )


def test_a_second_order_matrix_chain_oracle(xyz_engine):
    # independent route: full matrix products with the standalone resolvent
    h0 = np.diag(xyz_engine.energies.astype(complex))
    s1 = kg.spectral_resolvent(h0, 1)
    p0 = xyz_engine.p0_matrix()
    v = xyz_engine.v
    np.testing.assert_allclose(
        xyz_engine.a_order(2), p0 @ v @ s1 @ v @ p0, atol=1e-12
    )


def test_a_third_order_matrix_chain_oracle(xyz_engine):
    h0 = np.diag(xyz_engine.energies.astype(complex))
    s1 = kg.spectral_resolvent(h0, 1)
    s2 = kg.spectral_resolvent(h0, 2)
    s0 = kg.spectral_resolvent(h0, 0)
    p0 = xyz_engine.p0_matrix()
    v = xyz_engine.v
    # tuples at order 3 are (1,1) and (2,0)
    oracle = p0 @ v @ s1 @ v @ s1 @ v @ p0 + p0 @ v @ s2 @ v @ s0 @ v @ p0
    np.testing.assert_allclose(xyz_engine.a_order(3), oracle, atol=1e-12)


def test_a_kth_order_mimics_target(xyz_engine, xyz):
    system = xyz_engine.system
    target = kg.ideal_prefactor(3, 1.0) * mimic_target(system, xyz_engine)
    a3 = xyz_engine.a_order(3)
    assert np.linalg.norm(a3 - target) <= 1e-10 * np.linalg.norm(target)


def test_u_zeroth_order_is_ground_projector(xyz_engine):
    np.testing.assert_allclose(xyz_engine.u_order(0), xyz_engine.p0_matrix())


def test_u_first_order_matrix_chain_oracle(xyz_engine):
    h0 = np.diag(xyz_engine.energies.astype(complex))
    s1 = kg.spectral_resolvent(h0, 1)
    oracle = s1 @ xyz_engine.v @ xyz_engine.p0_matrix()
    np.testing.assert_allclose(xyz_engine.u_order(1), oracle, atol=1e-12)


def test_a_from_u_identity(xyz_engine):
    # A^(m) = P0 V U^(m-1), order by order
    p0 = xyz_engine.p0_diag
    for m in range(1, 5):
        composed = p0[:, None] * (xyz_engine.v @ xyz_engine.u_order(m - 1))
        np.testing.assert_allclose(xyz_engine.a_order(m), composed, atol=1e-12)


def test_recurrence_equals_closed_form(zz_engine, xyz_engine):
    for engine in (zz_engine, xyz_engine):
        for m in range(1, 6):
            dev = np.max(np.abs(engine.u_order(m) - engine.u_recurrence(m)))
            assert dev <= 1e-12, f"order {m}: deviation {dev}"


def test_order_cap_enforced(xyz):
    engine = kg.BlochEngine(kg.assemble(xyz, 0.05), order_cap=3)
    with pytest.raises(OrderTooHigh):
        engine.a_order(4)


def test_module_level_wrappers(xyz):
    system = kg.assemble(xyz, 0.05)
    np.testing.assert_allclose(
        kg.compute_A_order(system, 2), kg.compute_U_order(system, 0) * -1.5, atol=1e-12
    )
    np.testing.assert_allclose(
        kg.compute_U_order(system, 2), kg.compute_U_recurrence(system, 2), atol=1e-12
    )


# --- energy denominators and cross terms -----------------------------------


@pytest.mark.parametrize("k,expected", [(3, 0.25), (4, -1.0 / 36.0)])
def test_single_permutation_chain_denominators(k, expected):
    # one ordered chain of all k couplings equals the denominator product
    # prod_j 1/(-j(k-j)) times the projected k-fold product operator
    doc = {
        "n": k,
        "k": k,
        "terms": [
            {
                "coeff": 1.0,
                "factors": [
                    {"qubit": q, "axis": "X" if q % 2 == 0 else "Y"}
                    for q in range(k)
                ],
            }
        ],
    }
    h = kg.parse_hamiltonian(doc)
    system = kg.assemble(h, 0.05)
    engine = kg.BlochEngine(system)
    layout = system.layout
    sector = engine.sector
    h0 = np.diag(engine.energies.astype(complex))
    s1 = kg.spectral_resolvent(h0, 1)
    p0 = engine.p0_matrix()
    factors = []
    for j, (qubit, op) in enumerate(h.terms[0].factors):
        full = kg.embed_operators(
            {qubit: kg.axis_matrix(op), layout.ancilla_index(0, j): X},
            layout.total_qubits,
        )
        factors.append(kg.project_to_sector(full, sector))
    chain = p0.copy()
    for j, factor in enumerate(factors):
        chain = chain @ factor
        if j < k - 1:
            chain = chain @ s1
    chain = chain @ p0
    bare = p0.copy()
    for factor in factors:
        bare = bare @ factor
    bare = bare @ p0
    np.testing.assert_allclose(chain, expected * bare, atol=1e-12)
    assert expected == pytest.approx(
        np.prod([1.0 / (-j * (k - j)) for j in range(1, k)])
    )


def test_cross_register_terms_stay_in_shift(xyz_xyy):
    # at order k the two-register gadget's non-shift part is exactly the sum of
    # the per-term targets: register-mixing paths contribute nothing
    system = kg.assemble(xyz_xyy, 0.05)
    engine = kg.BlochEngine(system)
    series = kg.bloch_series(system, engine=engine)
    target = kg.ideal_prefactor(3, 1.0) * mimic_target(system, engine)
    assert np.linalg.norm(series.effective_k() - target) <= 1e-10 * np.linalg.norm(target)


# --- shift extraction ------------------------------------------------------


def test_split_shift_values(xyz_engine):
    a_terms = [xyz_engine.a_order(m) for m in range(1, 4)]
    coeffs, parts = kg.split_shift(a_terms, xyz_engine.p0_matrix(), 3)
    assert coeffs[1] == pytest.approx(0.0, abs=1e-12)
    assert coeffs[2] == pytest.approx(-1.5, abs=1e-10)
    assert np.linalg.norm(parts[0], 2) <= 1e-12
    assert np.linalg.norm(parts[1], 2) <= 1e-10


def test_split_shift_detects_non_scalar_suborder(zz):
    # synthetic coupling: two computational operators share one ancilla, so the
    # second order carries a genuine two-qubit operator, not a pure shift
    layout = kg.GadgetLayout(n_comp=2, r=1, k=3)
    h_anc = kg.build_penalty(layout)
    v = kg.embed_operators({0: X, layout.ancilla_index(0, 0): X}, 5)
    v = v + kg.embed_operators({1: X, layout.ancilla_index(0, 0): X}, 5)
    system = kg.GadgetSystem(
        layout=layout, h_anc=h_anc, v=v, lam=0.05, source=zz, lam_bound=0.1
    )
    engine = kg.BlochEngine(system)
    a_terms = [engine.a_order(m) for m in range(1, 4)]
    with pytest.raises(SubleadingNotScalar):
        kg.split_shift(a_terms, engine.p0_matrix(), 3)


def test_series_support_and_hermiticity(xyz):
    system = kg.assemble(xyz, 0.05)
    series = kg.bloch_series(system, order=6)
    engine_p0 = kg.BlochEngine(system).p0_diag
    for a in series.a_terms:
        sandwiched = engine_p0[:, None] * a * engine_p0[None, :]
        assert np.max(np.abs(sandwiched - a)) <= 1e-12
    total = series.a_total(system.lam)
    truncated = sum(
        system.lam ** (m + 1) * series.a_terms[m] for m in range(3)
    )
    assert np.max(np.abs(truncated - truncated.conj().T)) <= 1e-10
    assert total.shape == (32, 32)


def test_series_shift_polynomial(xyz):
    series = kg.bloch_series(kg.assemble(xyz, 0.05))
    np.testing.assert_allclose(series.shift_poly, [0.0, 0.0, -1.5, 0.0], atol=1e-10)
    assert series.shift_value(0.1) == pytest.approx(-1.5 * 0.01, rel=1e-9)


def test_partial_sum_tail_decay(xyz):
    # below threshold the weighted norms decay at least geometrically
    system = kg.assemble(xyz, 0.05)
    series = kg.bloch_series(system, order=6)
    cert = series.certificate
    assert cert.converges
    weighted = [
        np.linalg.norm(series.a_terms[m - 1], 2) * system.lam**m for m in range(2, 7)
    ]
    for earlier, later in zip(weighted, weighted[1:]):
        assert later < earlier
        assert later / earlier <= cert.geometric_ratio + 0.1


# --- certificate -----------------------------------------------------------


def test_certificate_examples(xyz):
    cert = kg.convergence_certificate(kg.assemble(xyz, 0.1))
    assert cert.gap == pytest.approx(2.0)
    assert cert.v_norm == pytest.approx(3.0, abs=1e-9)
    assert cert.threshold == pytest.approx(0.5)
    assert cert.lambda_v_norm == pytest.approx(0.3, abs=1e-9)
    assert cert.converges
    cert2 = kg.convergence_certificate(kg.assemble(xyz, 0.2))
    assert cert2.lambda_v_norm == pytest.approx(0.6, abs=1e-9)
    assert not cert2.converges


def test_certificate_gap_is_k_minus_one(zz, xyz, xyzz):
    for h in (zz, xyz, xyzz):
        cert = kg.convergence_certificate(kg.assemble(h, 0.01))
        assert cert.gap == pytest.approx(h.k - 1)
