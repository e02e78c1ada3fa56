"""Quadratic discrete Fourier transforms and the Weyl pair.

Internal index order is ascending ``n = 0..d-1``.  Matrices printed in the
literature with rows ``d-1, ..., 0`` are obtained with
:func:`phasekit.numerics.to_descending_order`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mub import _check_index, basis_matrix, build_vra, gauss_sum, r_phase
from .numerics import PhasekitError, PhaseExponent, fro, frozen, q_half_powers, to_descending_order


@dataclass(frozen=True)
class QdftMatrix:
    d: int
    r: float
    a: int
    matrix: np.ndarray


@dataclass(frozen=True)
class WeylPair:
    d: int
    X: np.ndarray
    Z: np.ndarray


def build_F(d: int) -> np.ndarray:
    """Ordinary DFT, ``F[m, n] = q^{mn} / sqrt(d)`` (plus-sign convention)."""
    if d < 1:
        raise PhasekitError("d must be positive")
    m = np.arange(d)
    return frozen(q_half_powers(2 * np.outer(m, m), d) / math.sqrt(d))


def build_Dra(d: int, r: float, a: int) -> np.ndarray:
    """Diagonal Gaussian factor with ``F_ra = D_ra F``."""
    _check_index(d, a, "a")
    m = np.arange(d)
    return frozen(np.diag(r_phase(d, r) * q_half_powers(m * (d - m) * a, d)))


def build_Fra(d: int, r: float, a: int) -> QdftMatrix:
    """Entries ``q^{n(d-n)a/2 + (d-1)^2 r/4 + n[alpha - (d-1) r/2]} / sqrt(d)``."""
    return QdftMatrix(d, r, a, frozen(basis_matrix(d, r, a)))


def fra_from_phase_function(d: int, r: float, a: int) -> np.ndarray:
    """Same matrix through ``exp(2 pi i f / d)`` with f evaluated in floats.

    f = (d-1)^2 r/4 + [2 alpha + d a - (d-1) r] n/2 - a n^2/2.
    """
    n = np.arange(d)[:, None]
    alpha = np.arange(d)[None, :]
    f = (d - 1) ** 2 * r / 4 + (2 * alpha + d * a - (d - 1) * r) * n / 2 - a * n * n / 2
    return np.exp(2j * np.pi * f / d) / math.sqrt(d)


def hadamard_residual(m: np.ndarray) -> float:
    """max | |m_ij| - 1/sqrt(d) |."""
    d = m.shape[0]
    return float(np.abs(np.abs(m) - 1 / math.sqrt(d)).max())


def factorization_residual(d: int, r: float, a: int) -> float:
    return fro(build_Fra(d, r, a).matrix - build_Dra(d, r, a) @ build_F(d))


def apply_Fra(fra: np.ndarray, x: np.ndarray) -> np.ndarray:
    """``y_n = sum_m F[m, n] x_m``."""
    return fra.T @ x


def parseval_check(d: int, r: float, a: int, x, x2) -> float:
    """``|<y, y'> - <x, x'>|`` with y, y' the quadratic transforms of x, x'."""
    x = np.asarray(x, dtype=np.complex128)
    x2 = np.asarray(x2, dtype=np.complex128)
    if x.shape != (d,) or x2.shape != (d,):
        raise PhasekitError(f"vectors must have length {d}")
    fra = build_Fra(d, r, a).matrix
    y, y2 = apply_Fra(fra, x), apply_Fra(fra, x2)
    return abs(np.vdot(y, y2) - np.vdot(x, x2))


@dataclass(frozen=True)
class TraceResult:
    direct: complex
    via_gauss: complex

    @property
    def residual(self) -> float:
        return abs(self.direct - self.via_gauss)


def trace_Fra(d: int, r: float, a: int) -> TraceResult:
    """Trace of F_ra directly and through S(2 - a, d(a - r) + r, d).

    The Gauss-sum route carries the prefactor exp(i pi (d-1)^2 r / (2d)),
    i.e. q^{(d-1)^2 r / 4}; for non-integer r the sum is taken with real v.
    """
    direct = complex(np.trace(build_Fra(d, r, a).matrix))
    pref = np.exp(1j * math.pi * (d - 1) ** 2 * r / (2 * d))
    via = pref * gauss_sum(2 - a, d * (a - r) + r, d) / math.sqrt(d)
    return TraceResult(direct, complex(via))


# ------------------------------------------------------- V_ra and Weyl pairs


def build_P(d: int, r: float) -> np.ndarray:
    """diag(exp(i pi (d-1) r), 1, ..., 1) in ascending order."""
    p = np.eye(d, dtype=np.complex128)
    p[0, 0] = np.exp(1j * math.pi * (d - 1) * r)
    return frozen(p)


def build_X(d: int) -> np.ndarray:
    """Cyclic shift ``X|n> = |n+1 mod d>``."""
    return frozen(np.roll(np.eye(d, dtype=np.complex128), 1, axis=0))


def build_Z(d: int) -> np.ndarray:
    """Clock matrix; ``Z|n> = q^{d-1-n}|n>`` so that it reads diag(1, q, ..., q^{d-1})
    once rows are listed as d-1, ..., 0."""
    n = np.arange(d)
    return frozen(np.diag(q_half_powers(2 * (d - 1 - n), d)))


def build_Vra(d: int, r: float, a: int) -> np.ndarray:
    return build_vra(d, r, a)


def r_is_periodic(d: int, r: float, tol: float = 1e-12) -> bool:
    """True when exp(i pi (d-1) r) = 1, where V_ra X = q^-a X V_ra holds."""
    x = (d - 1) * r / 2
    return abs(x - round(x)) < tol


def vra_relations(d: int, r: float, a: int) -> dict[str, float]:
    """Residuals of the algebraic relations satisfied by V_ra.

    The relation with X is only exact when exp(i pi (d-1) r) = 1; for other
    r its residual is reported but is expected to be nonzero.
    """
    v = build_Vra(d, r, a)
    X, Z = build_X(d), build_Z(d)
    q = np.exp(2j * math.pi / d)
    mp = np.linalg.matrix_power
    vmzn = max(
        fro(mp(v, m) @ mp(Z, n) - q ** (m * n) * mp(Z, n) @ mp(v, m))
        for m in range(d)
        for n in range(d)
    )
    powers = max(
        fro(mp(v, n) - q_half_powers(-n * (n - 1) * a, d)[()] * mp(build_Vra(d, r, 0), n) @ mp(Z, a * n))
        for n in range(d)
    )
    return {
        "V = P X Z^a": fro(v - build_P(d, r) @ X @ mp(Z, a)),
        "V Z = q Z V": fro(v @ Z - q * Z @ v),
        "V X = q^-a X V": fro(v @ X - q ** (-a) * X @ v),
        "V^m Z^n = q^mn Z^n V^m": vmzn,
        "V^n = q^(-n(n-1)a/2) V_r0^n Z^(an)": powers,
        "V^d = exp(i pi (d-1)(r+a)) I": fro(
            mp(v, d) - np.exp(1j * math.pi * (d - 1) * (r + a)) * np.eye(d)
        ),
    }


def diagonalization_residual(d: int, r: float, a: int) -> float:
    """max_alpha ||V_ra f_alpha - q^{j(r+a) - alpha} f_alpha|| over columns of F_ra."""
    v = build_Vra(d, r, a)
    f = build_Fra(d, r, a).matrix
    lam = q_half_powers((d - 1) * a - 2 * np.arange(d), d) * np.exp(1j * math.pi * (d - 1) * r / d)
    return float(np.linalg.norm(v @ f - f * lam, axis=0).max())


def endomorphism_residual(d: int, r: float, a: int) -> float:
    """F_ra^dag V_ra F_ra against q^{(d-1)(r+a)/2} diag(q^1, ..., q^d).

    The diagonal is the one displayed with rows d-1..0, so the conjugated
    matrix is relabeled to that order before comparing.
    """
    v = build_Vra(d, r, a)
    f = build_Fra(d, r, a).matrix
    conj = to_descending_order(f.conj().T @ v @ f)
    q = np.exp(2j * math.pi / d)
    target = np.exp(1j * math.pi * (d - 1) * (r + a) / d) * np.diag(q ** np.arange(1, d + 1))
    return fro(conj - target)


def weyl_pair(d: int) -> WeylPair:
    """X = V_00 and Z = V_00^dag V_01."""
    if d < 2:
        raise PhasekitError("d must be at least 2")
    v00 = build_vra(d, 0.0, 0)
    v01 = build_vra(d, 0.0, 1)
    return WeylPair(d, v00, frozen(v00.conj().T @ v01))


def weyl_residuals(pair: WeylPair) -> dict[str, float]:
    d, X, Z = pair.d, pair.X, pair.Z
    q = np.exp(2j * math.pi / d)
    mp = np.linalg.matrix_power
    F = build_F(d)
    return {
        "XZ = qZX": fro(X @ Z - q * Z @ X),
        "X^d = I": fro(mp(X, d) - np.eye(d)),
        "Z^d = I": fro(mp(Z, d) - np.eye(d)),
        "F^dag X F = qZ": fro(F.conj().T @ X @ F - q * Z),
        "X = shift": fro(X - build_X(d)),
        "Z = clock": fro(Z - build_Z(d)),
    }


def pauli_basis(d: int) -> list[np.ndarray]:
    """The d^2 matrices X^a Z^b, ordered with a major and b minor."""
    pair = weyl_pair(d)
    mp = np.linalg.matrix_power
    return [frozen(mp(pair.X, a) @ mp(pair.Z, b)) for a in range(d) for b in range(d)]


def pauli_gram(d: int) -> np.ndarray:
    """tr(P_i^dag P_k) over the Pauli basis; equals d I for a trace-orthogonal basis."""
    v = np.array([p.reshape(-1) for p in pauli_basis(d)])
    return v.conj() @ v.T


def cyclic_group_check(d: int) -> dict[str, float]:
    """X^n, n = 0..d-1, as the regular representation of C_d.

    Returns the number of distinct permutation matrices found, the character
    sum (must equal d) and the multiplicity defect of the trivial irrep.
    """
    X = build_X(d)
    powers = [np.linalg.matrix_power(X, n) for n in range(d)]
    distinct = len({p.real.astype(int).tobytes() for p in powers})
    perm_ok = all(np.allclose(p.sum(axis=0), 1) and np.allclose(p.sum(axis=1), 1) for p in powers)
    chars = np.array([np.trace(p) for p in powers])
    # each 1-d irrep chi_k(n) = q^{kn} occurs (1/d) sum_n conj(chi_k) chi_reg = 1 time
    q = np.exp(2j * math.pi / d)
    mult = [abs(np.sum(np.conj(q ** (k * np.arange(d))) * chars) / d - 1) for k in range(d)]
    return {
        "distinct": distinct,
        "permutations": perm_ok,
        "character_sum": float(np.real(chars.sum())),
        "multiplicity_defect": float(max(mult)),
    }


# --------------------------------------------------------------- sine algebra


def cross(m, n) -> int:
    return m[0] * n[1] - m[1] * n[0]


def build_T(d: int, n) -> np.ndarray:
    """T_n = q^{n1 n2 / 2} Z^{n1} X^{n2}.

    The half-power prefactor depends on the integer pair itself, not on it
    reduced mod d, so ``n`` is used as given.
    """
    n1, n2 = int(n[0]), int(n[1])
    pair = weyl_pair(d)
    mp = np.linalg.matrix_power
    pref = PhaseExponent.q_half_power(n1 * n2, d).to_complex()
    return pref * mp(pair.Z, n1 % d) @ mp(pair.X, n2 % d)


def sine_algebra_check(d: int, m, n) -> dict[str, float]:
    """Product rule and commutator of the T operators.

    T_m T_n = q^{-(m x n)/2} T_{m+n},
    [T_m, T_n] = -2i sin(pi (m x n) / d) T_{m+n}.
    """
    tm, tn = build_T(d, m), build_T(d, n)
    s = (m[0] + n[0], m[1] + n[1])
    tmn = build_T(d, s)
    c = cross(m, n)
    pref = PhaseExponent.q_half_power(-c, d).to_complex()
    return {
        "product": fro(tm @ tn - pref * tmn),
        "commutator": fro(tm @ tn - tn @ tm + 2j * math.sin(math.pi * c / d) * tmn),
    }
