"""Matrix realizations of the generalized oscillator algebra.

The algebra is spanned by ``a-``, ``a+`` and ``N`` with
``[a-, a+] = I + 2 kappa N``.  For ``kappa < 0`` the Fock-like space is finite
(``d = 1 - 1/kappa``) and the operators rescale to su(2); for ``kappa > 0``
the space is infinite and we work on a truncation, rescaling to su(1,1).
Everything is written in the number basis ``|n>``, ``n = 0..dim-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import PhasekitError, adjoint, commutator, diag_exp, fro, frozen

DEFAULT_TRUNCATION = 64
INTEGRALITY_TOL = 1e-9


def structure_function(kappa: float, n):
    """F(n) = n (1 + kappa (n - 1)); works elementwise on arrays."""
    n = np.asarray(n, dtype=np.float64)
    out = n * (1.0 + kappa * (n - 1.0))
    return float(out) if out.ndim == 0 else out


def su2_dimension(kappa: float) -> int:
    """d = 1 - 1/kappa, requiring -1/kappa to be a positive integer."""
    if kappa >= 0:
        raise PhasekitError("finite dimension requires kappa < 0")
    t = -1.0 / kappa
    nearest = round(t)
    if nearest < 1 or abs(t - nearest) > INTEGRALITY_TOL:
        raise PhasekitError(f"dimension not integral: -1/kappa = {t:g}")
    return nearest + 1


@dataclass(frozen=True)
class OscRep:
    kappa: float
    phi: float
    dim: int
    a_plus: np.ndarray
    a_minus: np.ndarray
    number_op: np.ndarray

    @property
    def truncated(self) -> bool:
        """True when ``dim`` is a cutoff rather than the exact dimension."""
        return self.kappa >= 0

    def F(self, n):
        return structure_function(self.kappa, n)


def _raising(kappa: float, phi: float, dim: int) -> np.ndarray:
    n = np.arange(dim - 1)
    f_next = structure_function(kappa, n + 1)
    step = f_next - structure_function(kappa, n)
    a = np.zeros((dim, dim), dtype=np.complex128)
    # clip guards sqrt against -0.0 at the closing level
    a[n + 1, n] = np.sqrt(np.clip(f_next, 0.0, None)) * np.exp(-1j * step * phi)
    return a


def build_osc_rep(kappa: float, phi: float = 0.0, dim: int | None = None) -> OscRep:
    """Build ``a+``, ``a-`` and ``N``.

    For ``kappa < 0`` ``dim`` defaults to (and must equal) ``1 - 1/kappa``.
    For ``kappa >= 0`` it is the truncation size (default 64, at least 2);
    the top level is then closed by hand, ``a+ |dim-1> = 0``.
    """
    if kappa < 0:
        d = su2_dimension(kappa)
        if dim is not None and dim != d:
            raise PhasekitError(f"kappa = {kappa:g} fixes dim = {d}, got {dim}")
        dim = d
    else:
        dim = DEFAULT_TRUNCATION if dim is None else int(dim)
        if dim < 2:
            raise PhasekitError("truncation must be at least 2")
    a_plus = _raising(kappa, phi, dim)
    a_minus = adjoint(a_plus)
    number = np.diag(np.arange(dim)).astype(np.complex128)
    return OscRep(kappa, phi, dim, frozen(a_plus), frozen(a_minus), frozen(number))


def algebra_residuals(rep: OscRep) -> dict[str, float]:
    """Frobenius residuals of the defining relations.

    On a truncation (kappa >= 0) the commutator ``[a-, a+]`` differs from
    ``I + 2 kappa N`` by exactly ``-F(dim) |dim-1><dim-1|``; that known
    defect is subtracted so every residual should vanish.
    """
    ident = np.eye(rep.dim)
    target = ident + 2 * rep.kappa * rep.number_op
    if rep.truncated:
        target = target.copy()
        target[-1, -1] -= rep.F(rep.dim)
    return {
        "[a-,a+] = I + 2 kappa N": fro(commutator(rep.a_minus, rep.a_plus) - target),
        "[N,a+] = a+": fro(commutator(rep.number_op, rep.a_plus) - rep.a_plus),
        "[N,a-] = -a-": fro(commutator(rep.number_op, rep.a_minus) + rep.a_minus),
        "a+ = (a-)^dag": fro(rep.a_plus - adjoint(rep.a_minus)),
    }


# --------------------------------------------------------------------- su(2)


@dataclass(frozen=True)
class Su2Rep:
    j: float
    kappa: float
    phi: float
    J_plus: np.ndarray
    J_minus: np.ndarray
    J_3: np.ndarray

    @property
    def dim(self) -> int:
        return int(round(2 * self.j)) + 1

    def casimir(self) -> np.ndarray:
        J3 = self.J_3
        return self.J_plus @ self.J_minus + J3 @ (J3 - np.eye(self.dim))


def to_su2(rep: OscRep) -> Su2Rep:
    if rep.kappa >= 0:
        raise PhasekitError("su(2) requires kappa < 0")
    k = rep.kappa
    s = 1.0 / math.sqrt(-k)
    J3 = (np.eye(rep.dim) + 2 * k * rep.number_op) / (2 * k)
    return Su2Rep(
        j=(rep.dim - 1) / 2,
        kappa=k,
        phi=rep.phi,
        J_plus=frozen(s * rep.a_plus),
        J_minus=frozen(s * rep.a_minus),
        J_3=frozen(J3),
    )


def build_su2(j: float, phi: float = 0.0) -> Su2Rep:
    """Spin-j generators; ``2j`` must be a positive integer."""
    two_j = round(2 * j)
    if two_j < 1 or abs(2 * j - two_j) > INTEGRALITY_TOL:
        raise PhasekitError("2j must be a positive integer")
    return to_su2(build_osc_rep(-1.0 / two_j, phi))


def su2_residuals(rep: Su2Rep) -> dict[str, float]:
    Jp, Jm, J3 = rep.J_plus, rep.J_minus, rep.J_3
    j = rep.j
    return {
        "[J+,J-] = 2 J3": fro(commutator(Jp, Jm) - 2 * J3),
        "[J3,J+] = J+": fro(commutator(J3, Jp) - Jp),
        "[J3,J-] = -J-": fro(commutator(J3, Jm) + Jm),
        "J^2 = j(j+1) I": fro(rep.casimir() - j * (j + 1) * np.eye(rep.dim)),
        "2 j kappa = -1": abs(2 * j * rep.kappa + 1),
    }


def su2_textbook(j: float, phi: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """J+ and J- straight from the phased angular-momentum matrix elements.

    Independent of the oscillator route: uses sqrt((j-m)(j+m+1)) and the
    phase exp(-2 i m kappa phi) with kappa = -1/(2j), indices n = j + m.
    """
    d = int(round(2 * j)) + 1
    kappa = -1.0 / (2 * j)
    Jp = np.zeros((d, d), dtype=np.complex128)
    for n in range(d - 1):
        m = n - j
        Jp[n + 1, n] = math.sqrt((j - m) * (j + m + 1)) * np.exp(-2j * m * kappa * phi)
    Jm = np.zeros((d, d), dtype=np.complex128)
    for n in range(1, d):
        m = n - j
        Jm[n - 1, n] = math.sqrt((j + m) * (j - m + 1)) * np.exp(2j * (m - 1) * kappa * phi)
    return Jp, Jm


# ------------------------------------------------------------------- su(1,1)


@dataclass(frozen=True)
class Su11Rep:
    k: float
    kappa: float
    phi: float
    truncation: int
    K_plus: np.ndarray
    K_minus: np.ndarray
    K_3: np.ndarray

    def casimir(self) -> np.ndarray:
        K3 = self.K_3
        return self.K_plus @ self.K_minus - K3 @ (K3 - np.eye(self.truncation))


def to_su11(rep: OscRep) -> Su11Rep:
    if rep.kappa <= 0:
        raise PhasekitError("su(1,1) requires kappa > 0")
    k = rep.kappa
    s = 1.0 / math.sqrt(k)
    K3 = (np.eye(rep.dim) + 2 * k * rep.number_op) / (2 * k)
    return Su11Rep(
        k=1.0 / (2 * k),
        kappa=k,
        phi=rep.phi,
        truncation=rep.dim,
        K_plus=frozen(s * rep.a_plus),
        K_minus=frozen(s * rep.a_minus),
        K_3=frozen(K3),
    )


def build_su11(k: float, phi: float = 0.0, s: int = DEFAULT_TRUNCATION) -> Su11Rep:
    if k <= 0:
        raise PhasekitError("Bargmann index k must be positive")
    return to_su11(build_osc_rep(1.0 / (2 * k), phi, s))


def su11_residuals(rep: Su11Rep) -> dict[str, float]:
    """Lie brackets and Casimir on levels 0..s-2 (the top level is a cutoff)."""
    s = rep.truncation
    b = slice(0, s - 1)
    Kp, Km, K3 = rep.K_plus, rep.K_minus, rep.K_3
    k = rep.k
    return {
        "[K+,K-] = -2 K3": fro((commutator(Kp, Km) + 2 * K3)[b, b]),
        "[K3,K+] = K+": fro((commutator(K3, Kp) - Kp)[b, b]),
        "[K3,K-] = -K-": fro((commutator(K3, Km) + Km)[b, b]),
        "K^2 = k(1-k) I": fro((rep.casimir() - k * (1 - k) * np.eye(s))[b, b]),
        "2 k kappa = 1": abs(2 * k * rep.kappa - 1),
    }


def su11_textbook(k: float, phi: float, s: int) -> tuple[np.ndarray, np.ndarray]:
    """K+ and K- from the phased positive-discrete-series matrix elements."""
    kappa = 1.0 / (2 * k)
    Kp = np.zeros((s, s), dtype=np.complex128)
    for n in range(s - 1):
        Kp[n + 1, n] = math.sqrt((2 * k + n) * (n + 1)) * np.exp(-2j * (k + n) * kappa * phi)
    Km = np.zeros((s, s), dtype=np.complex128)
    for n in range(1, s):
        Km[n - 1, n] = math.sqrt((2 * k + n - 1) * n) * np.exp(2j * (k + n - 1) * kappa * phi)
    return Kp, Km


# ----------------------------------------------------------- rotated shifts


def rotated_shift_check(rep: Su2Rep | Su11Rep) -> float:
    """Residual of the similarity linking phased and unphased shift operators.

    su(2):   J^_pm = exp(-i X kappa phi) J_pm exp(i X kappa phi),  X = J+ J-
    su(1,1): K^_pm = exp(i Y kappa phi) K_pm exp(-i Y kappa phi),  Y = K+ K-

    X and Y are diagonal in the number basis, so the exponentials are taken
    entrywise.  Their diagonals come from the Casimir value and J3 (resp.
    K3), X = j(j+1) - J3(J3 - 1) and Y = k(1-k) + K3(K3 - 1), which is exact
    in floating point; the product form J+ J- is checked by the Casimir
    residuals.  The unphased operators are rebuilt from scratch at phi = 0.
    For su(1,1) the residual is restricted to levels 0..s-2.
    """
    if isinstance(rep, Su2Rep):
        hat = build_su2(rep.j, 0.0)
        m = np.real(np.diag(rep.J_3))
        x = rep.j * (rep.j + 1) - m * (m - 1)
        left = diag_exp(x, -rep.kappa * rep.phi)
        right = diag_exp(x, rep.kappa * rep.phi)
        return math.hypot(
            fro(hat.J_plus - left @ rep.J_plus @ right),
            fro(hat.J_minus - left @ rep.J_minus @ right),
        )
    if isinstance(rep, Su11Rep):
        hat = build_su11(rep.k, 0.0, rep.truncation)
        k3 = np.real(np.diag(rep.K_3))
        y = rep.k * (1 - rep.k) + k3 * (k3 - 1)
        left = diag_exp(y, rep.kappa * rep.phi)
        right = diag_exp(y, -rep.kappa * rep.phi)
        b = slice(0, rep.truncation - 1)
        return math.hypot(
            fro((hat.K_plus - left @ rep.K_plus @ right)[b, b]),
            fro((hat.K_minus - left @ rep.K_minus @ right)[b, b]),
        )
    raise TypeError(f"expected Su2Rep or Su11Rep, got {type(rep).__name__}")


# ------------------------------------------------------- truncated operators


def build_truncated(rep: OscRep, s: int) -> tuple[np.ndarray, np.ndarray]:
    """The truncated ladder ``c+, c-`` keeping only levels 0..s-1."""
    if not 1 <= s <= rep.dim:
        raise PhasekitError(f"s must satisfy 1 <= s <= {rep.dim}, got {s}")
    c_plus = np.array(rep.a_plus)
    # drop a+ |n> for n >= s - 1
    c_plus[:, s - 1:] = 0.0
    return frozen(c_plus), frozen(adjoint(c_plus))


def truncated_commutator_target(rep: OscRep, s: int) -> np.ndarray:
    """I + 2 kappa N - F(s)|s-1><s-1| - sum_{n>=s} (1 + 2 kappa n)|n><n|."""
    n = np.arange(rep.dim)
    diag = 1.0 + 2.0 * rep.kappa * n
    diag[s - 1] -= rep.F(s)
    diag[s:] = 0.0
    return np.diag(diag).astype(np.complex128)


def truncated_residuals(rep: OscRep, s: int) -> dict[str, float]:
    cp, cm = build_truncated(rep, s)
    return {
        "[c-,c+] truncated algebra": fro(commutator(cm, cp) - truncated_commutator_target(rep, s)),
        "[N,c+] = c+": fro(commutator(rep.number_op, cp) - cp),
        "[N,c-] = -c-": fro(commutator(rep.number_op, cm) + cm),
    }
