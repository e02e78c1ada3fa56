import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasekit import mub, phase
from phasekit.numerics import PhasekitError, q_half_powers

import oracles


# ---------------------------------------------------------------- Gauss sums


def test_gauss_sum_examples():
    assert mub.gauss_sum(0, 0, 5) == 5
    assert mub.gauss_sum(1, 1, 2) == 0
    s = mub.gauss_sum(2, 0, 3)
    assert s.real == 0 and s.imag == math.sqrt(3)


def test_gauss_sum_zero_w():
    with pytest.raises(PhasekitError):
        mub.gauss_sum(1, 1, 0)


def test_gauss_params_tuple():
    p = mub.GaussSumParams(1, 0, 7)
    assert abs(mub.gauss_sum(*p) - oracles.gauss_sum(1, 0, 7)) < 1e-13


ints = st.integers(-60, 60)
ws = st.integers(-40, 40).filter(bool)


@settings(max_examples=80, deadline=None)
@given(ints, ints, ws)
def test_gauss_sum_matches_oracle(u, v, w):
    s = mub.gauss_sum(u, v, w)
    assert abs(s - oracles.gauss_sum(u, v, w)) < 1e-12 * abs(w)
    assert abs(s) <= abs(w) + 1e-12


@settings(max_examples=80, deadline=None)
@given(ints, ints, ws)
def test_gauss_sum_period_in_v(u, v, w):
    assert mub.gauss_sum(u, v + 2 * w, w) == mub.gauss_sum(u, v, w)


def test_gauss_sum_real_v():
    u, v, w = 3, 2.75, 7
    ref = sum(cmath.exp(1j * math.pi * (u * k * k + v * k) / w) for k in range(w))
    assert abs(mub.gauss_sum(u, v, w) - ref) < 1e-13


# -------------------------------------------------------- quantized phases


def test_quantized_phase():
    assert mub.quantized_phase(5, 0) == 0
    assert mub.quantized_phase(3, 1) == pytest.approx(-2 * math.pi / 3, abs=1e-15)
    kappa = -1 / 6
    assert abs(kappa * mub.quantized_phase(7, 4) - math.pi * 4 / 7) < 1e-14
    with pytest.raises(PhasekitError):
        mub.quantized_phase(5, 5)


def test_state_a_alpha_basics():
    assert np.allclose(mub.state_a_alpha(4, 0, 0), np.full(4, 0.5), atol=1e-16)
    v = mub.state_a_alpha(5, 3, 2)
    assert np.abs(np.abs(v) - 1 / math.sqrt(5)).max() < 1e-15


@pytest.mark.parametrize("d", range(2, 9))
def test_state_a_alpha_is_quantized_phase_state(d):
    for a in range(d):
        phi = mub.quantized_phase(d, a)
        for alpha in range(d):
            ref = phase.phase_state_su2(d, phi, alpha).vector
            assert np.abs(mub.state_a_alpha(d, a, alpha) - ref).max() < 1e-12


def test_state_a_alpha_example_d3():
    ref = phase.phase_state_su2(3, -2 * math.pi / 3, 2).vector
    assert np.abs(mub.state_a_alpha(3, 1, 2) - ref).max() < 1e-12


def test_state_j_alpha_ra_components():
    d, alpha, r, a = 6, 4, 0.5, 3
    v = mub.state_j_alpha_ra(d, alpha, r, a)
    for n in range(d):
        e = n * (d - n) * a / 2 + (d - 1) ** 2 * r / 4 + n * (alpha - (d - 1) * r / 2)
        assert v[n] == pytest.approx(cmath.exp(2j * math.pi * e / d) / math.sqrt(d), abs=1e-14)


@pytest.mark.parametrize("d", range(2, 9))
def test_r_zero_reduces_to_a_alpha(d):
    for a in range(d):
        for alpha in range(d):
            assert np.array_equal(mub.state_j_alpha_ra(d, alpha, 0.0, a), mub.state_a_alpha(d, a, alpha))


def test_inverse_formula_round_trip():
    d, r, a = 6, 0.5, 2
    for n in range(d):
        assert np.abs(mub.canonical_from_ra(d, n, r, a) - np.eye(d)[n]).max() < 1e-12


def test_basis_is_orthonormal():
    b = mub.basis_matrix(7, 1.25, 3)
    assert np.abs(b.conj().T @ b - np.eye(7)).max() < 1e-12
    lb = mub.LabeledBasis((1.25, 3), 7, b)
    assert lb.gram_residual() < 1e-12


# ---------------------------------------------------------------------- v_ra


def test_vra_r0_a0_is_cyclic_raising():
    v = mub.build_vra(5, 0.0, 0)
    assert np.array_equal(v, np.roll(np.eye(5), 1, axis=0))


@pytest.mark.parametrize("d,a", [(5, 3), (4, 1), (6, 5), (3, 2)])
def test_Ed_is_phase_times_vra_adjoint(d, a):
    e = phase.build_Ed(d, mub.quantized_phase(d, a)).matrix
    qja = q_half_powers((d - 1) * a, d)[()]
    assert np.abs(e - qja * mub.build_vra(d, 0.0, a).conj().T).max() < 1e-12


def test_vra_power_d():
    d, r, a = 4, 0.5, 1
    v = mub.build_vra(d, r, a)
    target = cmath.exp(1j * math.pi * (d - 1) * (r + a)) * np.eye(d)
    assert np.linalg.norm(np.linalg.matrix_power(v, d) - target) < 1e-11


def test_vra_action_from_m_labels():
    d, r, a = 5, 0.3, 2
    j = (d - 1) / 2
    v = mub.build_vra(d, r, a)
    for n in range(d - 1):
        m = n - j
        assert v[n + 1, n] == pytest.approx(cmath.exp(2j * math.pi * (j - m) * a / d), abs=1e-15)
    assert v[0, d - 1] == pytest.approx(cmath.exp(2j * math.pi * j * r), abs=1e-15)


@pytest.mark.parametrize("d", range(2, 17))
@pytest.mark.parametrize("r", [0.0, 1.0, 2.5])
def test_vra_eigenvectors(d, r):
    for a in range(d):
        assert mub.vra_eigen_residual(d, r, a) < 1e-11


# ------------------------------------------------------------ inner products


def test_inner_product_examples():
    assert mub.inner_product_via_gauss(5, 2, 1, 2, 1) == pytest.approx(1, abs=1e-15)
    assert abs(mub.inner_product_via_gauss(5, 2, 1, 2, 3)) < 1e-13
    g = mub.inner_product_via_gauss(5, 1, 0, 3, 2)
    direct = np.vdot(mub.state_a_alpha(5, 1, 0), mub.state_a_alpha(5, 3, 2))
    assert abs(abs(g) - 1 / math.sqrt(5)) < 1e-12
    assert abs(g - direct) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 13), st.data())
def test_inner_product_via_gauss_matches_direct(d, data):
    a, alpha, b, beta = (data.draw(st.integers(0, d - 1)) for _ in range(4))
    direct = np.vdot(mub.state_a_alpha(d, a, alpha), mub.state_a_alpha(d, b, beta))
    assert abs(direct - mub.inner_product_via_gauss(d, a, alpha, b, beta)) < 1e-12


# ------------------------------------------------------------------ families


def test_family_d2():
    bases, rep = mub.generate_mub_family(2, 0.0)
    assert len(bases) == rep.basis_count == 3
    assert abs(rep.min_modulus - 1 / math.sqrt(2)) < 1e-12
    assert abs(rep.max_modulus - 1 / math.sqrt(2)) < 1e-12
    assert rep.passed


def test_family_d7():
    bases, rep = mub.generate_mub_family(7, 0.0)
    assert rep.basis_count == 8 and rep.passed and rep.prime
    assert bases[0].label == "canonical" and bases[3].label == (0.0, 2)
    for b in bases:
        assert b.gram_residual() < 1e-11


def test_family_d4_fails_with_witness():
    bases, rep = mub.generate_mub_family(4, 0.0)
    assert not rep.passed and rep.witness is not None
    assert rep.canonical_passed
    # brute force: some pair of B_0a bases has a cross modulus off 1/2
    worst = 0.0
    for i in range(1, 5):
        for k in range(i + 1, 5):
            g = np.abs(bases[i].columns.conj().T @ bases[k].columns)
            worst = max(worst, np.abs(g - 0.5).max())
    assert worst > 1e-9
    d = rep.to_dict()
    assert d["pass"] is False and d["canonical_unbiased"]["pass"] is True


@pytest.mark.parametrize("d", [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
@pytest.mark.parametrize("r", [0.0, 0.5])
def test_prime_families_complete(d, r):
    bases, rep = mub.generate_mub_family(d, r)
    assert rep.passed, rep.witness
    # numpy cross-check of the kernel's reduction
    stack = np.array([b.columns for b in bases])
    g = np.abs(np.einsum("ika,jkc->ijac", stack.conj(), stack))
    off = ~np.eye(len(bases), dtype=bool)
    assert np.abs(g[off] - 1 / math.sqrt(d)).max() < 1e-10


@pytest.mark.parametrize("d", [4, 6, 8, 9, 10, 12])
def test_composite_families_fail_but_canonical_unbiased(d):
    _, rep = mub.generate_mub_family(d, 0.0)
    assert not rep.passed
    assert rep.canonical_passed


def test_family_rejects_small_d():
    with pytest.raises(PhasekitError):
        mub.generate_mub_family(1)
