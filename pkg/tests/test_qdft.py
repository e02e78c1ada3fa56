import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasekit import mub, qdft
from phasekit.numerics import fro, is_unitary, to_descending_order

import oracles

R_GRID = (0.0, 0.5, 1.0, 2.37)


def test_F_small():
    assert np.array_equal(qdft.build_F(1), [[1]])
    assert np.allclose(qdft.build_F(2), np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-16)


@pytest.mark.parametrize("d", [3, 8, 16])
def test_F_matches_oracle_and_period_four(d):
    F = qdft.build_F(d)
    assert np.abs(F - oracles.dft(d)).max() < 1e-14
    assert fro(np.linalg.matrix_power(F, 4) - np.eye(d)) < 1e-12


def test_Fra_r0_a0_is_F():
    for d in range(1, 10):
        assert np.array_equal(qdft.build_Fra(d, 0.0, 0).matrix, qdft.build_F(d))


@pytest.mark.parametrize("d,r,a", [(6, 0.5, 3), (5, 2.37, 4), (8, 1.0, 7), (9, 1.5, 2)])
def test_Fra_against_oracle(d, r, a):
    m = qdft.build_Fra(d, r, a).matrix
    assert np.abs(m - oracles.fra(d, r, a)).max() < 1e-13
    assert np.abs(m - qdft.fra_from_phase_function(d, r, a)).max() < 1e-12
    assert qdft.hadamard_residual(m) < 1e-12


def test_Fra_columns_are_ra_states():
    d, r, a = 7, 0.5, 3
    m = qdft.build_Fra(d, r, a).matrix
    for alpha in range(d):
        assert np.abs(m[:, alpha] - mub.state_j_alpha_ra(d, alpha, r, a)).max() < 1e-13


@pytest.mark.parametrize("d", range(2, 33, 3))
def test_Fra_unitary_hadamard_factorization(d):
    for a in range(d):
        for r in R_GRID:
            m = qdft.build_Fra(d, r, a).matrix
            assert is_unitary(m)[1] < 1e-12
            assert qdft.hadamard_residual(m) < 1e-12
            assert qdft.factorization_residual(d, r, a) < 1e-13


def test_Dra_diagonal_from_formula():
    d, r, a = 5, 0.7, 2
    dra = qdft.build_Dra(d, r, a)
    for m in range(d):
        e = m * (d - m) * a / 2 + (d - 1) ** 2 * r / 4 - m * (d - 1) * r / 2
        assert dra[m, m] == pytest.approx(cmath.exp(2j * math.pi * e / d), abs=1e-14)


def test_parseval_examples():
    e0 = np.eye(4)[0]
    assert qdft.parseval_check(4, 0.0, 0, e0, e0) < 1e-15
    rng = np.random.default_rng(7)
    x = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    y = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    assert qdft.parseval_check(9, 1.5, 4, x, y) < 1e-12
    # the transformed inner product is the same for any (r, a)
    v1 = np.vdot(qdft.apply_Fra(qdft.build_Fra(9, 0.0, 0).matrix, x), qdft.apply_Fra(qdft.build_Fra(9, 0.0, 0).matrix, y))
    v2 = np.vdot(qdft.apply_Fra(qdft.build_Fra(9, 0.5, 3).matrix, x), qdft.apply_Fra(qdft.build_Fra(9, 0.5, 3).matrix, y))
    assert abs(v1 - v2) < 1e-12


def test_trace_examples():
    for d in (3, 5, 8):
        assert abs(qdft.trace_Fra(d, 0.0, 2).direct - math.sqrt(d)) < 1e-11
    t = qdft.trace_Fra(4, 0.0, 1)
    assert t.residual < 1e-11
    assert abs(qdft.trace_Fra(5, 0.0, 0).direct - 1) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 24), st.floats(-3, 3), st.data())
def test_trace_identity(d, r, data):
    a = data.draw(st.integers(0, d - 1))
    t = qdft.trace_Fra(d, r, a)
    # independent route: oracle matrix trace against 40-digit Gauss sum with the same prefactor
    direct = np.trace(oracles.fra(d, r, a))
    assert abs(t.direct - direct) < 1e-12
    assert t.residual < 1e-11


def test_trace_prefactor_carries_r():
    """Without r in the prefactor the identity fails for generic r."""
    d, r, a = 5, 0.5, 1
    t = qdft.trace_Fra(d, r, a)
    bare = np.exp(1j * math.pi * (d - 1) ** 2 / (2 * d)) * oracles.gauss_sum(2 - a, d * (a - r) + r, d) / math.sqrt(d)
    assert t.residual < 1e-12
    assert abs(t.direct - bare) > 1e-3


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 13).filter(lambda p: all(p % k for k in range(2, p))), st.data())
def test_prime_cross_products_unbiased(p, data):
    a = data.draw(st.integers(0, p - 1))
    b = data.draw(st.integers(0, p - 1).filter(lambda x: x != a))
    r = data.draw(st.sampled_from(R_GRID))
    g = qdft.build_Fra(p, r, a).matrix.conj().T @ qdft.build_Fra(p, r, b).matrix
    assert np.abs(np.abs(g) - 1 / math.sqrt(p)).max() < 1e-11


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.floats(-2, 2), st.floats(-2, 2), st.data())
def test_matrix_products_are_inner_products(d, r, s, data):
    a = data.draw(st.integers(0, d - 1))
    b = data.draw(st.integers(0, d - 1))
    g = qdft.build_Fra(d, r, a).matrix.conj().T @ qdft.build_Fra(d, s, b).matrix
    for alpha in range(d):
        for beta in range(d):
            ip = np.vdot(mub.state_j_alpha_ra(d, alpha, r, a), mub.state_j_alpha_ra(d, beta, s, b))
            assert abs(g[alpha, beta] - ip) < 1e-12


# ------------------------------------------------------------------ V_ra


def test_P_X_Z_descending_displays():
    d, r = 4, 0.3
    q = cmath.exp(2j * math.pi / d)
    # rows listed d-1, ..., 0
    p = to_descending_order(qdft.build_P(d, r))
    assert np.allclose(np.diag(p), [1, 1, 1, cmath.exp(1j * math.pi * (d - 1) * r)], atol=1e-15)
    z = to_descending_order(qdft.build_Z(d))
    assert np.allclose(np.diag(z), [q**k for k in range(d)], atol=1e-15)
    x = to_descending_order(qdft.build_X(d))
    expected = np.zeros((d, d))
    for i in range(d):
        expected[i, (i + 1) % d] = 1
    assert np.array_equal(x.real, expected)


def test_vra_decomposition_exact():
    v = qdft.build_Vra(3, 0.7, 2)
    pxz = qdft.build_P(3, 0.7) @ qdft.build_X(3) @ np.linalg.matrix_power(qdft.build_Z(3), 2)
    assert fro(v - pxz) < 1e-15


def test_vra_r0_nilpotency():
    for d in (3, 4, 7):
        for a in range(d):
            v = qdft.build_Vra(d, 0.0, a)
            assert fro(np.linalg.matrix_power(v, d) - np.exp(1j * math.pi * (d - 1) * a) * np.eye(d)) < 1e-12
        assert fro(np.linalg.matrix_power(qdft.build_Vra(d, 0.0, 0), d) - np.eye(d)) < 1e-13
        assert fro(np.linalg.matrix_power(qdft.build_Z(d), d) - np.eye(d)) < 1e-13


@pytest.mark.parametrize("d", range(2, 9))
def test_vra_relations(d):
    for a in range(d):
        for r in (0.0, 0.7, 2.0 / (d - 1)):
            res = qdft.vra_relations(d, r, a)
            assert res["V = P X Z^a"] < 1e-13
            assert res["V Z = q Z V"] < 1e-12
            assert res["V^m Z^n = q^mn Z^n V^m"] < 1e-11
            assert res["V^n = q^(-n(n-1)a/2) V_r0^n Z^(an)"] < 1e-12
            assert res["V^d = exp(i pi (d-1)(r+a)) I"] < 1e-11
            if qdft.r_is_periodic(d, r):
                assert res["V X = q^-a X V"] < 1e-12


def test_vx_relation_needs_periodic_r():
    assert qdft.r_is_periodic(5, 0.5)
    assert not qdft.r_is_periodic(5, 0.3)
    assert qdft.vra_relations(5, 0.3, 1)["V X = q^-a X V"] > 1e-3


@pytest.mark.parametrize("d", [2, 3, 5, 8, 13])
def test_diagonalization(d):
    for a in range(d):
        for r in R_GRID:
            assert qdft.diagonalization_residual(d, r, a) < 1e-11
            assert qdft.endomorphism_residual(d, r, a) < 1e-11


# ----------------------------------------------------------------- Weyl pair


def test_weyl_d2_sigmas():
    pair = qdft.weyl_pair(2)
    x, z = to_descending_order(pair.X), to_descending_order(pair.Z)
    assert np.array_equal(x, [[0, 1], [1, 0]])
    assert np.array_equal(z, [[1, 0], [0, -1]])
    assert np.array_equal(x @ z, -1j * np.array([[0, -1j], [1j, 0]]))


@pytest.mark.parametrize("d", [2, 3, 5, 6, 8])
def test_weyl_relations(d):
    res = qdft.weyl_residuals(qdft.weyl_pair(d))
    assert res["XZ = qZX"] < 1e-13
    assert res["X^d = I"] < 1e-12 and res["Z^d = I"] < 1e-12
    assert res["F^dag X F = qZ"] < 1e-12
    assert res["X = shift"] == 0 and res["Z = clock"] < 1e-15


def test_pauli_d2_is_pauli_up_to_phase():
    sig = [np.eye(2), np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
    for p in qdft.pauli_basis(2):
        pp = to_descending_order(p)
        hits = [abs(abs(np.vdot(s, pp)) - 2) < 1e-14 for s in sig]
        assert sum(hits) == 1


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_pauli_gram_and_unitarity(d):
    basis = qdft.pauli_basis(d)
    assert len(basis) == d * d
    assert fro(qdft.pauli_gram(d) - d * np.eye(d * d)) < 1e-11
    for p in basis:
        assert is_unitary(p)[1] < 1e-12


@pytest.mark.parametrize("d", [2, 3, 6, 10])
def test_cyclic_group(d):
    c = qdft.cyclic_group_check(d)
    assert c["distinct"] == d and c["permutations"]
    assert c["character_sum"] == d
    assert c["multiplicity_defect"] < 1e-12


# --------------------------------------------------------------- sine algebra


def test_sine_same_index_commutes():
    res = qdft.sine_algebra_check(5, (2, 3), (2, 3))
    assert res["commutator"] == 0


def test_sine_examples():
    res = qdft.sine_algebra_check(5, (1, 0), (0, 1))
    assert res["commutator"] < 1e-12
    tm, tn, t11 = (qdft.build_T(5, n) for n in ((1, 0), (0, 1), (1, 1)))
    assert fro(tm @ tn - tn @ tm + 2j * math.sin(math.pi / 5) * t11) < 1e-12
    assert qdft.sine_algebra_check(8, (3, 2), (5, 7))["product"] < 1e-12


def test_T_half_power_uses_unreduced_pair():
    d = 3
    t = qdft.build_T(d, (1, 4))
    ref = cmath.exp(1j * math.pi * 4 / d) * qdft.weyl_pair(d).Z @ qdft.weyl_pair(d).X
    assert fro(t - ref) < 1e-14


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 8]), st.tuples(st.integers(-20, 20), st.integers(-20, 20)),
       st.tuples(st.integers(-20, 20), st.integers(-20, 20)))
def test_sine_algebra_property(d, m, n):
    res = qdft.sine_algebra_check(d, m, n)
    assert res["product"] < 1e-12 and res["commutator"] < 1e-12
