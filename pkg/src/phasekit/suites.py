"""Verification suites run by ``phasekit verify-all``.

Each suite returns a :class:`VerifyReport` whose checks carry the residual
and the tolerance it was held to.  Random samples come from fixed seeds so
reports are reproducible.
"""

from __future__ import annotations

import math

import numpy as np

from . import fracdft, mub, oscillator, phase, qdft
from .matrixfile import VerifyReport
from .numerics import fro, is_unitary, to_descending_order

PHI_GRID = (0.0, 0.3, 2.9)
SHIFT_PHIS = (0.4, 1.1, 2.9, -2.0, -3.1)
PHASE_PHIS = (-2.5, -0.7, 0.0, 0.4, 3.0)
SEED = 20240601


def algebra_suite() -> VerifyReport:
    rep = VerifyReport("algebra")
    for kappa in (-1 / 2, -1 / 4, -1 / 8):
        for phi in PHI_GRID:
            osc = oscillator.build_osc_rep(kappa, phi)
            res = oscillator.algebra_residuals(osc)
            tag = f"kappa={kappa:g} phi={phi:g}: "
            rep.add(tag + "[a-,a+] = I + 2 kappa N", res["[a-,a+] = I + 2 kappa N"], 1e-12)
            rep.add(tag + "[N,a+] = a+", res["[N,a+] = a+"], 1e-12)
            rep.add(tag + "[N,a-] = -a-", res["[N,a-] = -a-"], 1e-12)
            su2 = oscillator.to_su2(osc)
            rep.add(tag + "J^2 = j(j+1) I", oscillator.su2_residuals(su2)["J^2 = j(j+1) I"], 1e-11)
    return rep


def rotated_shift_suite() -> VerifyReport:
    rep = VerifyReport("rotated-shift")
    for two_j in range(1, 17):
        worst = max(oscillator.rotated_shift_check(oscillator.build_su2(two_j / 2, phi)) for phi in SHIFT_PHIS)
        rep.add(f"su(2) j={two_j}/2", worst, 1e-12)
    worst = max(oscillator.rotated_shift_check(oscillator.build_su11(1.0, phi, 16)) for phi in SHIFT_PHIS)
    rep.add("su(1,1) k=1 s=16", worst, 1e-12)
    return rep


def phase_su2_suite(samples: int = 50) -> VerifyReport:
    rep = VerifyReport("phase-su2")
    for d in range(2, 17):
        uni = eig = clo = 0.0
        for phi in PHASE_PHIS:
            op = phase.build_Ed(d, phi)
            uni = max(uni, is_unitary(op.matrix)[1])
            eig = max(eig, max(phase.eigen_residual_su2(op, s) for s in phase.phase_states_su2(d, phi)))
            clo = max(clo, phase.closure_residual_su2(d, phi))
        rep.add(f"d={d}: E_d unitary", uni, 1e-12)
        rep.add(f"d={d}: E_d eigen-relation", eig, 1e-12)
        rep.add(f"d={d}: closure", clo, 1e-12)
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(samples):
        d = int(rng.integers(2, 17))
        alpha = int(rng.integers(0, d))
        phi = float(rng.uniform(-math.pi, math.pi))
        t = float(rng.uniform(-5.0, 5.0))
        moved = phase.evolve_su2(phase.phase_state_su2(d, phi, alpha), t)
        ref = phase.phase_state_su2(d, phi + t, alpha)
        worst = max(worst, float(np.abs(moved.vector - ref.vector).max()))
    rep.add(f"temporal stability ({samples} random t)", worst, 1e-12)
    return rep


def phase_su11_suite() -> VerifyReport:
    rep = VerifyReport("phase-su11")
    s = 16
    for k in (0.5, 1.0, 2.5):
        iso = fac = eig = clo = evo = 0.0
        for phi in PHASE_PHIS:
            op = phase.build_Einf(k, phi, s)
            iso = max(iso, phase.einf_isometry_residuals(op)["E^dag E = I - |0><0|"])
            fac = max(fac, phase.einf_factorization_residual(op))
            for theta in phase.theta_grid(7):
                st = phase.phase_state_su11(k, phi, theta, s)
                eig = max(eig, phase.eigen_residual_su11(op, st))
                moved = phase.evolve_su11(st, 1.7)
                ref = phase.phase_state_su11(k, phi + 1.7, theta, s)
                evo = max(evo, float(np.abs(moved.vector - ref.vector).max()))
            clo = max(clo, phase.closure_residual_su11(k, phi, s))
        tag = f"k={k:g} s={s}: "
        # E^dag E is a 0/1 diagonal up to |exp(i x)|^2 rounding
        rep.add(tag + "E^dag E = I - |0><0|", iso, 1e-14)
        rep.add(tag + "K- = E sqrt(K+ K-)", fac, 1e-12)
        rep.add(tag + "theta-state eigen-relation", eig, 1e-12)
        rep.add(tag + "discrete closure", clo, 1e-12)
        rep.add(tag + "temporal stability", evo, 1e-12)
    return rep


def truncation_suite() -> VerifyReport:
    rep = VerifyReport("truncation")
    for kappa, dim, s in ((0.5, 8, 4), (-1 / 6, 7, 4)):
        for phi in PHI_GRID:
            osc = oscillator.build_osc_rep(kappa, phi, dim)
            res = oscillator.truncated_residuals(osc, s)["[c-,c+] truncated algebra"]
            rep.add(f"kappa={kappa:g} dim={dim} s={s} phi={phi:g}", res, 1e-13)
    return rep


def mub_suite() -> VerifyReport:
    rep = VerifyReport("mub")
    for d in (2, 3, 5, 7, 11, 13):
        for r in (0.0, 0.5):
            _, report = mub.generate_mub_family(d, r)
            rep.add(f"d={d} r={r:g}: cross moduli = 1/sqrt(d)", report.max_deviation, mub.MUB_TOL)
    for d in (4, 6, 9):
        _, report = mub.generate_mub_family(d, 0.0)
        rep.add_flag(f"d={d}: completeness fails with witness", not report.passed and report.witness is not None)
        rep.add(f"d={d}: canonical vs B_ra unbiased", report.canonical_max_deviation, mub.MUB_TOL)
    return rep


def gauss_suite(samples: int = 200) -> VerifyReport:
    rep = VerifyReport("gauss")
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for _ in range(samples):
        d = int(rng.integers(2, 14))
        a, alpha, b, beta = (int(x) for x in rng.integers(0, d, size=4))
        direct = np.vdot(mub.state_a_alpha(d, a, alpha), mub.state_a_alpha(d, b, beta))
        worst = max(worst, abs(direct - mub.inner_product_via_gauss(d, a, alpha, b, beta)))
    rep.add(f"Gauss sum vs direct inner product ({samples} tuples)", worst, 1e-12)
    return rep


def qdft_suite(dmax: int = 32) -> VerifyReport:
    rep = VerifyReport("qdft")
    uni = had = fac = dia = tr = 0.0
    for d in range(2, dmax + 1):
        for a in range(d):
            for r in (0.0, 0.5, 1.0, 2.37):
                m = qdft.build_Fra(d, r, a).matrix
                uni = max(uni, is_unitary(m)[1])
                had = max(had, qdft.hadamard_residual(m))
                fac = max(fac, qdft.factorization_residual(d, r, a))
                dia = max(dia, qdft.diagonalization_residual(d, r, a))
                tr = max(tr, qdft.trace_Fra(d, r, a).residual)
    rep.add("F_ra unitary", uni, 1e-12)
    rep.add("F_ra Hadamard", had, 1e-12)
    rep.add("F_ra = D_ra F", fac, 1e-13)
    rep.add("V_ra column eigen-relation", dia, 1e-11)
    rep.add("trace direct vs Gauss", tr, 1e-11)
    worst = max(abs(qdft.trace_Fra(d, 0.0, 2).direct - math.sqrt(d)) for d in range(3, dmax + 1))
    rep.add("tr F_02 = sqrt(d)", worst, 1e-11)
    return rep


def weyl_suite() -> VerifyReport:
    rep = VerifyReport("weyl")
    for d in (2, 3, 5, 8):
        pair = qdft.weyl_pair(d)
        res = qdft.weyl_residuals(pair)
        for name in ("XZ = qZX", "X^d = I", "Z^d = I", "F^dag X F = qZ"):
            rep.add(f"d={d}: {name}", res[name], 1e-11)
        rep.add(f"d={d}: Pauli trace-orthogonality", fro(qdft.pauli_gram(d) - d * np.eye(d * d)), 1e-11)
    pair = qdft.weyl_pair(2)
    sx = np.array([[0, 1], [1, 0]])
    sz = np.array([[1, 0], [0, -1]])
    sy = np.array([[0, -1j], [1j, 0]])
    # the sigma matrices are written with rows |1>, |0>
    X, Z = to_descending_order(pair.X), to_descending_order(pair.Z)
    rep.add("d=2: X = sigma_x", np.abs(X - sx).max(), 1e-15)
    rep.add("d=2: Z = sigma_z", np.abs(Z - sz).max(), 1e-15)
    rep.add("d=2: XZ = -i sigma_y", np.abs(X @ Z + 1j * sy).max(), 1e-15)
    return rep


def sine_suite(pairs: int = 30) -> VerifyReport:
    rep = VerifyReport("sine-algebra")
    rng = np.random.default_rng(SEED + 2)
    for d in (3, 5, 8):
        prod = comm = 0.0
        for _ in range(pairs):
            m = tuple(int(x) for x in rng.integers(-2 * d, 2 * d, size=2))
            n = tuple(int(x) for x in rng.integers(-2 * d, 2 * d, size=2))
            res = qdft.sine_algebra_check(d, m, n)
            prod = max(prod, res["product"])
            comm = max(comm, res["commutator"])
        rep.add(f"d={d}: product rule", prod, 1e-12)
        rep.add(f"d={d}: commutator", comm, 1e-12)
    return rep


def appendix_suite() -> VerifyReport:
    rep = VerifyReport("appendix")
    worst = 0.0
    for d in range(1, 65):
        worst = max(worst, fracdft.multiplicity_residual(fracdft.multiplicities(d)))
    rep.add("multiplicity/trace/determinant table d=1..64", worst, 1e-9)
    worst = 0.0
    vanish = 0.0
    for d in range(1, 33):
        for n in range(6):
            res, empty = fracdft.mehta_eigen_residual(d, n)
            if empty:
                vanish = max(vanish, res)
            else:
                worst = max(worst, res)
    rep.add("Mehta eigen-relation d<=32 n<=5", worst, 1e-8)
    rep.add("Mehta vectors vanish on empty eigenspaces", vanish, 1e-8)
    rng = np.random.default_rng(SEED + 3)
    for d in (5, 8, 13):
        plan = fracdft.build_plan(d)
        F = qdft.build_F(d)
        ends = max(
            fro(fracdft.fractional_F(plan, 0.0) - np.eye(d)),
            fro(fracdft.fractional_F(plan, 1.0) - F),
            fro(fracdft.fractional_F(plan, 2.0) - F @ F),
        )
        rep.add(f"d={d}: endpoints nu=0,1,2", ends, 1e-8)
        group = period = 0.0
        for _ in range(20):
            n1, n2 = rng.uniform(-4, 4, size=2)
            group = max(group, fro(
                fracdft.fractional_F(plan, n1) @ fracdft.fractional_F(plan, n2)
                - fracdft.fractional_F(plan, n1 + n2)
            ))
            period = max(period, fro(fracdft.fractional_F(plan, n1 + 4) - fracdft.fractional_F(plan, n1)))
        rep.add(f"d={d}: group law", group, 1e-7)
        rep.add(f"d={d}: period 4", period, 1e-7)
    return rep


SUITES = {
    "algebra": algebra_suite,
    "rotated-shift": rotated_shift_suite,
    "phase-su2": phase_su2_suite,
    "phase-su11": phase_su11_suite,
    "truncation": truncation_suite,
    "mub": mub_suite,
    "gauss": gauss_suite,
    "qdft": qdft_suite,
    "weyl": weyl_suite,
    "sine-algebra": sine_suite,
    "appendix": appendix_suite,
}


def run_all(names=None, tol: float | None = None) -> list[VerifyReport]:
    """Run the named suites (all by default); ``tol`` replaces every tolerance."""
    names = list(SUITES) if names is None else names
    reports = [SUITES[n]() for n in names]
    if tol is not None:
        for r in reports:
            for c in r.checks:
                c.tolerance = tol
    return reports
