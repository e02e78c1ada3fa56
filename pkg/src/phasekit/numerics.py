"""Dense complex kernels and exact root-of-unity phase arithmetic.

Matrices and vectors are plain ``numpy.ndarray`` objects of dtype
``complex128`` (row-major, dimension carried by ``shape``).  Phases that are
integer or half-integer powers of ``q = exp(2 pi i / d)`` are carried as
:class:`PhaseExponent` over modulus ``2 d`` so that products never touch
floating point until the very end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels

SINGULAR_PIVOT_TOL = 1e-13
_TWO_PI_LD = np.longdouble("6.283185307179586476925286766559005768394")


class PhasekitError(ValueError):
    """Invalid input or a violated precondition."""


@dataclass(frozen=True)
class PhaseExponent:
    """The unimodular number ``exp(2 pi i numerator / modulus)``.

    With ``modulus = 2 d`` this is ``q**(numerator / 2)``, which lets
    half-integer powers of ``q`` stay exact.
    """

    numerator: int
    modulus: int

    def __post_init__(self):
        if self.modulus <= 0:
            raise PhasekitError("modulus must be positive")
        object.__setattr__(self, "numerator", int(self.numerator) % int(self.modulus))
        object.__setattr__(self, "modulus", int(self.modulus))

    @classmethod
    def q_half_power(cls, twice_exponent: int, d: int) -> "PhaseExponent":
        """``q**(twice_exponent / 2)`` for ``q = exp(2 pi i / d)``."""
        return cls(twice_exponent, 2 * d)

    def __mul__(self, other):
        if isinstance(other, PhaseExponent):
            return phase_mul(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> "PhaseExponent":
        return PhaseExponent(self.numerator * int(k), self.modulus)

    def conjugate(self) -> "PhaseExponent":
        return PhaseExponent(-self.numerator, self.modulus)

    def to_complex(self) -> complex:
        return complex(unit_phase(self.numerator, self.modulus))


def phase_mul(p: PhaseExponent, q: PhaseExponent) -> PhaseExponent:
    if p.modulus != q.modulus:
        raise PhasekitError("modulus mismatch")
    return PhaseExponent(p.numerator + q.numerator, p.modulus)


def unit_phase(numerators, modulus: int):
    """Vectorized ``exp(2 pi i k / modulus)`` for integer ``k``.

    Numerators are reduced to ``(-modulus/2, modulus/2]`` first, the angle is
    evaluated in extended precision and rounded once, and quarter turns are
    returned exactly, so e.g. ``q**(d/2)`` is exactly ``-1``.
    """
    k = np.mod(np.asarray(numerators, dtype=np.int64), modulus)
    k = np.where(2 * k > modulus, k - modulus, k)
    theta = _TWO_PI_LD * k.astype(np.longdouble) / modulus
    out = np.cos(theta).astype(np.float64) + 1j * np.sin(theta).astype(np.float64)
    quarter = (4 * k) % modulus == 0
    if np.any(quarter):
        exact = np.array([1, 1j, -1, -1j], dtype=np.complex128)
        out = np.where(quarter, exact[(4 * k // modulus) % 4], out)
    return out


def q_half_powers(twice_exponents, d: int):
    """``q**(x / 2)`` elementwise for integer arrays ``x``."""
    return unit_phase(twice_exponents, 2 * d)


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise PhasekitError(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def frozen(a: np.ndarray) -> np.ndarray:
    """Mark an array read-only (library values are immutable)."""
    a.setflags(write=False)
    return a


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise PhasekitError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T.copy()


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def fro(a) -> float:
    return float(np.linalg.norm(a))


def inverse(a, *, return_residual: bool = False):
    """Inverse by Gauss-Jordan elimination with partial pivoting.

    Raises :class:`PhasekitError` ("singular matrix") when a pivot falls below
    ``1e-13`` times the largest entry.  With ``return_residual`` the pair
    ``(inverse, ||A A^-1 - I||_F)`` is returned.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise PhasekitError("inverse requires a square matrix")
    inv, status = _kernels.gauss_jordan_inverse(np.ascontiguousarray(a), SINGULAR_PIVOT_TOL)
    if status != _kernels.OK:
        raise PhasekitError("singular matrix")
    if return_residual:
        return inv, fro(a @ inv - np.eye(a.shape[0]))
    return inv


def det(a) -> complex:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise PhasekitError("determinant requires a square matrix")
    return complex(_kernels.lu_det(np.ascontiguousarray(a)))


def is_unitary(a, tol: float = 1e-12) -> tuple[bool, float]:
    """Return ``(||A^dag A - I||_F < tol, residual)``."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise PhasekitError("unitarity check requires a square matrix")
    res = fro(a.conj().T @ a - np.eye(a.shape[0]))
    return res < tol, res


def expi(factors, t: float) -> np.ndarray:
    """``exp(i * factors * t)`` with the angle reduced mod 2 pi in extended precision.

    Angles here reach a few hundred radians (F(n) grows like n^2); reducing
    in ``longdouble`` keeps the phase error near one ulp of 2 pi.
    """
    theta = np.asarray(factors, dtype=np.longdouble) * np.longdouble(t)
    theta = np.fmod(theta, _TWO_PI_LD)
    return np.exp(1j * theta.astype(np.float64))


def diag_exp(diagonal, t: float) -> np.ndarray:
    """``exp(i t D)`` for real ``D = diag(diagonal)``, entrywise."""
    return np.diag(expi(np.real(diagonal), t))


def reversal(d: int) -> np.ndarray:
    """Permutation matrix mapping index n to d - 1 - n."""
    return np.eye(d)[::-1].astype(np.complex128)


def to_descending_order(m) -> np.ndarray:
    """Relabel rows/columns from ascending n = 0..d-1 to descending d-1..0.

    Vectors are reversed; matrices get rows and columns reversed.  This is
    pure relabeling, so operator identities are unaffected.
    """
    m = np.asarray(m)
    if m.ndim == 1:
        return m[::-1].copy()
    return m[::-1, ::-1].copy()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            return False
    return True
