"""Quantized-phase bases, the operator v_ra, Gauss sums and MUB families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .numerics import PhasekitError, frozen, is_prime, q_half_powers

MUB_TOL = 1e-10


class GaussSumParams(NamedTuple):
    u: int
    v: int
    w: int


def gauss_sum(u, v, w) -> complex:
    """S(u, v, w) = sum_{k=0}^{|w|-1} exp(i pi (u k^2 + v k) / w).

    Integer arguments are summed exactly on the 2|w|-th roots of unity
    (numerators reduced mod 2|w| before any floating point).  A real ``u`` or
    ``v`` falls through to the direct floating-point kernel.
    """
    if w == 0:
        raise PhasekitError("w must be nonzero")
    if all(float(x).is_integer() for x in (u, v, w)):
        u, v, w = int(u), int(v), int(w)
        mod = 2 * abs(w)
        k = np.arange(abs(w), dtype=np.int64)
        num = (u * k * k + v * k) * (1 if w > 0 else -1)
        counts = np.bincount(np.mod(num, mod), minlength=mod)
        nz = np.nonzero(counts)[0]
        return complex(np.dot(counts[nz], q_half_powers(nz, abs(w))))
    return complex(_kernels.gauss_sum(float(u), float(v), float(w)))


def quantized_phase(d: int, a: int) -> float:
    """phi = -pi (d-1)/d a, i.e. kappa phi = pi a / d."""
    _check_index(d, a, "a")
    return -math.pi * (d - 1) / d * a


def _check_index(d: int, x: int, name: str):
    if not 0 <= x < d:
        raise PhasekitError(f"{name} must lie in 0..{d - 1}, got {x}")


def _quadratic_twice_exponent(d: int, a: int, alpha):
    """2 * [n(d-n) a / 2 + n alpha] as integers, shape (d,) or (d, len(alpha))."""
    n = np.arange(d)
    alpha = np.asarray(alpha)
    if alpha.ndim:
        n = n[:, None]
    return n * (d - n) * a + 2 * n * alpha


def r_phase(d: int, r: float) -> np.ndarray:
    """q^{(d-1)^2 r/4 - n(d-1) r/2} for n = 0..d-1 (floating point, r real)."""
    n = np.arange(d)
    return np.exp(2j * np.pi / d * r * ((d - 1) ** 2 / 4 - n * (d - 1) / 2))


def state_a_alpha(d: int, a: int, alpha: int) -> np.ndarray:
    _check_index(d, a, "a")
    _check_index(d, alpha, "alpha")
    return q_half_powers(_quadratic_twice_exponent(d, a, alpha), d) / math.sqrt(d)


def state_j_alpha_ra(d: int, alpha: int, r: float, a: int) -> np.ndarray:
    _check_index(d, a, "a")
    _check_index(d, alpha, "alpha")
    return r_phase(d, r) * state_a_alpha(d, a, alpha)


def basis_matrix(d: int, r: float, a: int) -> np.ndarray:
    """Columns alpha = 0..d-1 of the basis B_ra."""
    _check_index(d, a, "a")
    cols = q_half_powers(_quadratic_twice_exponent(d, a, np.arange(d)), d)
    return r_phase(d, r)[:, None] * cols / math.sqrt(d)


def canonical_from_ra(d: int, n: int, r: float, a: int) -> np.ndarray:
    """Rebuild |n> from the B_ra vectors via the inverse quadratic transform."""
    _check_index(d, n, "n")
    alpha = np.arange(d)
    coef = np.conj(r_phase(d, r)[n]) * q_half_powers(-(n * (d - n) * a) - 2 * alpha * n, d)
    return basis_matrix(d, r, a) @ coef / math.sqrt(d)


def build_vra(d: int, r: float, a: int) -> np.ndarray:
    """v_ra|n> = q^{(d-1-n) a}|n+1> for n < d-1, v_ra|d-1> = exp(i pi (d-1) r)|0>."""
    _check_index(d, a, "a")
    v = np.zeros((d, d), dtype=np.complex128)
    n = np.arange(d - 1)
    v[n + 1, n] = q_half_powers(2 * (d - 1 - n) * a, d)
    v[0, d - 1] = np.exp(1j * math.pi * (d - 1) * r)
    return frozen(v)


def vra_eigenvalue(d: int, r: float, a: int, alpha: int) -> complex:
    """q^{j(r+a) - alpha} with j = (d-1)/2."""
    exact = q_half_powers((d - 1) * a - 2 * alpha, d)
    return complex(exact * np.exp(1j * math.pi * (d - 1) * r / d))


def vra_eigen_residual(d: int, r: float, a: int) -> float:
    """max over alpha of ||v_ra x_alpha - q^{j(r+a)-alpha} x_alpha||."""
    v = build_vra(d, r, a)
    b = basis_matrix(d, r, a)
    lam = np.array([vra_eigenvalue(d, r, a, al) for al in range(d)])
    return float(np.linalg.norm(v @ b - b * lam, axis=0).max())


def inner_product_via_gauss(d: int, a: int, alpha: int, b: int, beta: int) -> complex:
    """<a alpha | b beta> = S(a-b, -(a-b) d - 2(alpha-beta), d) / d."""
    for x, name in ((a, "a"), (alpha, "alpha"), (b, "b"), (beta, "beta")):
        _check_index(d, x, name)
    u = a - b
    return gauss_sum(u, -u * d - 2 * (alpha - beta), d) / d


# ----------------------------------------------------------------- families


@dataclass(frozen=True)
class LabeledBasis:
    """An orthonormal basis; ``label`` is "canonical" or ``(r, a)``."""

    label: object
    d: int
    columns: np.ndarray

    def gram_residual(self) -> float:
        c = self.columns
        return float(np.abs(c.conj().T @ c - np.eye(self.d)).max())


@dataclass(frozen=True)
class MubReport:
    d: int
    r: float
    basis_count: int
    min_modulus: float
    max_modulus: float
    max_deviation: float
    tolerance: float
    passed: bool
    prime: bool
    canonical_max_deviation: float
    canonical_passed: bool
    witness: tuple | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "basis_count": self.basis_count,
            "min_modulus": self.min_modulus,
            "max_modulus": self.max_modulus,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "prime": self.prime,
            "canonical_unbiased": {
                "max_deviation": self.canonical_max_deviation,
                "pass": self.canonical_passed,
            },
            "witness": None if self.witness is None else [_label_json(x) for x in self.witness],
        }


def _label_json(label):
    if label == "canonical":
        return label
    r, a = label
    return {"r": r, "a": a}


def generate_mub_family(d: int, r: float = 0.0, tol: float = MUB_TOL) -> tuple[list[LabeledBasis], MubReport]:
    """Canonical basis plus B_ra for a = 0..d-1, with the unbiasedness report.

    ``passed`` is the full completeness check over all d+1 bases.  The
    canonical-vs-B_ra part, which holds for every d, is reported separately.
    When the check fails, ``witness`` names the worst pair of bases.
    """
    if d < 2:
        raise PhasekitError("d must be at least 2")
    bases = [LabeledBasis("canonical", d, frozen(np.eye(d, dtype=np.complex128)))]
    bases += [LabeledBasis((r, a), d, frozen(basis_matrix(d, r, a))) for a in range(d)]
    stack = np.ascontiguousarray(np.array([b.columns for b in bases]))
    target = 1.0 / math.sqrt(d)
    lo, hi, worst, wi, wj = _kernels.cross_overlap_scan(stack, target)
    canon_dev = float(np.abs(np.abs(stack[1:]) - target).max())
    passed = bool(worst < tol)
    report = MubReport(
        d=d,
        r=r,
        basis_count=len(bases),
        min_modulus=float(lo),
        max_modulus=float(hi),
        max_deviation=float(worst),
        tolerance=tol,
        passed=passed,
        prime=is_prime(d),
        canonical_max_deviation=canon_dev,
        canonical_passed=canon_dev < tol,
        witness=None if passed else (bases[wi].label, bases[wj].label),
    )
    return bases, report
