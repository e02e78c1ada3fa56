"""Phase operators and their eigenstates.

``E_d`` is the unitary phase operator of the (2j+1)-dimensional su(2)
representation; ``E_inf`` is the non-unitary su(1,1) one, realized here on
``s`` levels.  Both act in the number basis, ``n = j + m`` resp. ``|k, k+n>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import PhasekitError, fro, frozen
from .oscillator import build_su11, structure_function


@dataclass(frozen=True)
class PhaseOperatorSU2:
    d: int
    phi: float
    matrix: np.ndarray

    @property
    def kappa(self) -> float:
        return -1.0 / (self.d - 1)


@dataclass(frozen=True)
class PhaseStateSU2:
    d: int
    alpha: int
    phi: float
    vector: np.ndarray


@dataclass(frozen=True)
class PhaseOperatorSU11:
    k: float
    phi: float
    truncation: int
    matrix: np.ndarray

    @property
    def kappa(self) -> float:
        return 1.0 / (2 * self.k)


@dataclass(frozen=True)
class PhaseStateSU11:
    k: float
    phi: float
    theta: float
    truncation: int
    vector: np.ndarray


def _check_d(d: int):
    if d < 2:
        raise PhasekitError("d must be at least 2")


def build_Ed(d: int, phi: float) -> PhaseOperatorSU2:
    """Cyclic lowering operator with phases.

    ``E|n> = exp(2i (m-1) kappa phi)|n-1>`` for ``n >= 1`` (``m = n - j``) and
    ``E|0> = exp(-i phi)|d-1>``.
    """
    _check_d(d)
    j = (d - 1) / 2
    kappa = -1.0 / (d - 1)
    e = np.zeros((d, d), dtype=np.complex128)
    n = np.arange(1, d)
    e[n - 1, n] = np.exp(2j * (n - j - 1) * kappa * phi)
    e[d - 1, 0] = np.exp(-1j * phi)
    return PhaseOperatorSU2(d, phi, frozen(e))


def phase_state_su2(d: int, phi: float, alpha: int) -> PhaseStateSU2:
    _check_d(d)
    if not 0 <= alpha < d:
        raise PhasekitError(f"alpha must lie in 0..{d - 1}")
    kappa = -1.0 / (d - 1)
    n = np.arange(d)
    # (j+m)(j-m+1) = n(d-n)
    v = np.exp(1j * n * (d - n) * kappa * phi + 2j * np.pi * alpha * n / d) / math.sqrt(d)
    return PhaseStateSU2(d, alpha, phi, frozen(v))


def phase_states_su2(d: int, phi: float) -> list[PhaseStateSU2]:
    return [phase_state_su2(d, phi, alpha) for alpha in range(d)]


def su2_hamiltonian_diag(d: int) -> np.ndarray:
    """Diagonal of H = -kappa J+ J-, which is F(n) in the number basis."""
    kappa = -1.0 / (d - 1)
    return structure_function(kappa, np.arange(d))


def evolve_su2(state: PhaseStateSU2, t: float) -> PhaseStateSU2:
    """Apply U(t) = exp(-i H t); the result is the phase state at phi + t."""
    u = np.exp(-1j * su2_hamiltonian_diag(state.d) * t)
    return PhaseStateSU2(state.d, state.alpha, state.phi + t, frozen(u * state.vector))


def eigen_residual_su2(op: PhaseOperatorSU2, state: PhaseStateSU2) -> float:
    q_alpha = np.exp(2j * np.pi * state.alpha / op.d)
    return float(np.linalg.norm(op.matrix @ state.vector - q_alpha * state.vector))


def closure_residual_su2(d: int, phi: float) -> float:
    vs = np.array([s.vector for s in phase_states_su2(d, phi)]).T
    return fro(vs @ vs.conj().T - np.eye(d))


# ------------------------------------------------------------------ su(1,1)


def _check_su11(k: float, s: int):
    if k <= 0:
        raise PhasekitError("Bargmann index k must be positive")
    if s < 2:
        raise PhasekitError("truncation s must be at least 2")


def build_Einf(k: float, phi: float, s: int) -> PhaseOperatorSU11:
    """``E|n+1> = exp(2i (k+n) kappa phi)|n>`` on levels 0..s-1, ``E|0> = 0``."""
    _check_su11(k, s)
    kappa = 1.0 / (2 * k)
    e = np.zeros((s, s), dtype=np.complex128)
    n = np.arange(s - 1)
    e[n, n + 1] = np.exp(2j * (k + n) * kappa * phi)
    return PhaseOperatorSU11(k, phi, s, frozen(e))


def einf_factorization_residual(op: PhaseOperatorSU11) -> float:
    """``||K- - E sqrt(K+ K-)||_F`` on levels 0..s-2."""
    rep = build_su11(op.k, op.phi, op.truncation)
    y = np.real(np.diag(rep.K_plus @ rep.K_minus))
    root = np.diag(np.sqrt(np.clip(y, 0.0, None)))
    b = slice(0, op.truncation - 1)
    return fro((rep.K_minus - op.matrix @ root)[b, b])


def einf_isometry_residuals(op: PhaseOperatorSU11) -> dict[str, float]:
    s = op.truncation
    e = op.matrix
    top = np.eye(s)
    top[-1, -1] = 0.0
    bottom = np.eye(s)
    bottom[0, 0] = 0.0
    return {
        "E E^dag = I - |s-1><s-1|": fro(e @ e.conj().T - top),
        "E^dag E = I - |0><0|": fro(e.conj().T @ e - bottom),
    }


def phase_state_su11(k: float, phi: float, theta: float, s: int) -> PhaseStateSU11:
    """Unnormalized circle state, components exp(i n theta - i n(2k+n-1) kappa phi)."""
    _check_su11(k, s)
    if not -math.pi <= theta < math.pi:
        raise PhasekitError("theta must lie in [-pi, pi)")
    kappa = 1.0 / (2 * k)
    n = np.arange(s)
    v = np.exp(1j * n * theta - 1j * n * (2 * k + n - 1) * kappa * phi)
    return PhaseStateSU11(k, phi, theta, s, frozen(v))


def su11_hamiltonian_diag(k: float, s: int) -> np.ndarray:
    """Diagonal of H = kappa K+ K-, again F(n)."""
    return structure_function(1.0 / (2 * k), np.arange(s))


def evolve_su11(state: PhaseStateSU11, t: float) -> PhaseStateSU11:
    u = np.exp(-1j * su11_hamiltonian_diag(state.k, state.truncation) * t)
    return PhaseStateSU11(state.k, state.phi + t, state.theta, state.truncation, frozen(u * state.vector))


def eigen_residual_su11(op: PhaseOperatorSU11, state: PhaseStateSU11) -> float:
    """Eigen-relation on components 0..s-2 (the top one is a cutoff artifact)."""
    r = op.matrix @ state.vector - np.exp(1j * state.theta) * state.vector
    return float(np.linalg.norm(r[:-1]))


def theta_grid(m: int) -> np.ndarray:
    return -math.pi + 2 * math.pi * np.arange(m) / m


def closure_residual_su11(k: float, phi: float, s: int, m: int | None = None) -> float:
    """``||(1/M) sum_m |phi,theta_m><phi,theta_m| - I_s||_F`` on a uniform grid.

    ``M`` defaults to ``2s - 1``, the smallest grid for which the discrete
    orthogonality of exponentials makes the quadrature exact.
    """
    m = 2 * s - 1 if m is None else m
    vs = np.array([phase_state_su11(k, phi, th, s).vector for th in theta_grid(m)]).T
    return fro(vs @ vs.conj().T / m - np.eye(s))
