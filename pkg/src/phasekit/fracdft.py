"""DFT eigenspaces, Mehta functions and fractional DFT matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .numerics import PhasekitError, det, fro, frozen, inverse
from .qdft import build_F

REJECT_TOL = 1e-6
MEHTA_REL_CUTOFF = 1e-20
FOURTH_ROOTS = np.array([1, 1j, -1, -1j], dtype=np.complex128)


def hermite(n: int, x: float) -> float:
    """Physicists' Hermite polynomial by the three-term recurrence."""
    if n < 0:
        raise PhasekitError("n must be non-negative")
    h_prev, h = 1.0, 2.0 * x
    if n == 0:
        return h_prev
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def mehta_function(d: int, n: int, m: int) -> float:
    """Phi_n^(d)(m) = sum_l exp(-pi (l d + m)^2 / d) H_n(sqrt(2 pi / d)(l d + m)).

    Direct evaluation of the definition.  The l-sum grows symmetrically and
    stops once the next pair of terms is below 1e-20 of the running scale
    (the larger of |partial sum| and the largest term seen, so that sums
    which cancel to zero still terminate) and lies past the Hermite turning
    point.  H_n overflows for very large n; use :func:`mehta_vectors` there.
    """
    return _mehta_sum(d, n, m, False)


def mehta_magnitude(d: int, n: int, m: int) -> float:
    """The same l-sum over |terms|; the scale against which Phi_n(m) is small."""
    return _mehta_sum(d, n, m, True)


def _mehta_sum(d: int, n: int, m: int, absolute: bool) -> float:
    if d < 1 or n < 0 or not 0 <= m < d:
        raise PhasekitError("need d >= 1, n >= 0 and 0 <= m < d")
    scale = math.sqrt(2 * math.pi / d)
    turning = math.sqrt(2 * n + 1)

    def term(l):
        x = scale * (l * d + m)
        t = math.exp(-0.5 * x * x) * hermite(n, x)
        return abs(t) if absolute else t

    total = term(0)
    biggest = abs(total)
    l = 1
    while True:
        pair = term(l) + term(-l)
        total += pair
        size = abs(term(l)) + abs(term(-l))
        biggest = max(biggest, size)
        beyond = scale * (l * d - d) > turning
        if beyond and size < MEHTA_REL_CUTOFF * max(abs(total), biggest):
            return total
        l += 1


def mehta_eigen_residual(d: int, n: int) -> tuple[float, bool]:
    """Check F Phi_n = i^n Phi_n for the directly evaluated Mehta vector.

    Returns ``(residual, vanishing)``.  When the i^n eigenspace is empty
    (multiplicity 0 for this d) Phi_n is identically zero up to rounding;
    then ``vanishing`` is True and the residual is ||Phi_n|| relative to
    the term magnitudes.  Otherwise it is ||F Phi - i^n Phi|| / ||Phi||.
    """
    from .qdft import build_F

    v = np.array([mehta_function(d, n, m) for m in range(d)])
    if multiplicity_table(d).counts[n % 4] == 0:
        gross = np.linalg.norm([mehta_magnitude(d, n, m) for m in range(d)])
        return float(np.linalg.norm(v) / gross), True
    F = build_F(d)
    return float(np.linalg.norm(F @ v - FOURTH_ROOTS[n % 4] * v) / np.linalg.norm(v)), False


def _lmax(d: int, nmax: int) -> int:
    # past the largest turning point by 12: Gaussian tail below ~1e-31
    reach = (math.sqrt(2 * nmax + 1) + 12.0) / math.sqrt(2 * math.pi / d)
    return int(math.ceil(reach / d)) + 1


def mehta_vectors(d: int, nmax: int) -> np.ndarray:
    """Rows n = 0..nmax of Mehta vectors, each rescaled by 1/sqrt(2^n n! sqrt(pi)).

    Built from normalized Hermite functions so large n stays finite; the
    scale factor is irrelevant for eigenvectors.
    """
    return _kernels.periodized_hermite(int(d), int(nmax), _lmax(d, nmax))


# ---------------------------------------------------------- multiplicities


@dataclass(frozen=True)
class MultiplicityRecord:
    d: int
    N_plus1: int
    N_i: int
    N_minus1: int
    N_minusi: int
    trace: complex
    determinant: complex

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.N_plus1, self.N_i, self.N_minus1, self.N_minusi)


def multiplicity_table(d: int) -> MultiplicityRecord:
    """Closed-form row for d = 4J + k."""
    if d < 1:
        raise PhasekitError("d must be positive")
    J, k = divmod(d, 4)
    sign = (-1) ** J
    rows = {
        0: ((J + 1, J, J, J - 1), 1 + 1j, 1j * sign),
        1: ((J + 1, J, J, J), 1, sign),
        2: ((J + 1, J, J + 1, J), 0, -sign),
        3: ((J + 1, J + 1, J + 1, J), 1j, -1j * sign),
    }
    counts, tr, dt = rows[k]
    return MultiplicityRecord(d, *counts, complex(tr), complex(dt))


def eigen_projectors(d: int) -> list[np.ndarray]:
    """Pi_k = (1/4) sum_s (i^-k F)^s for k = 0..3."""
    F = build_F(d)
    powers = [np.eye(d, dtype=np.complex128)]
    for _ in range(3):
        powers.append(powers[-1] @ F)
    return [
        frozen(sum(FOURTH_ROOTS[(-k * s) % 4] * powers[s] for s in range(4)) / 4)
        for k in range(4)
    ]


def multiplicities(d: int) -> MultiplicityRecord:
    """Multiplicities from projector ranks, with tr F and det F computed directly."""
    F = build_F(d)
    counts = [int(round(np.trace(p).real)) for p in eigen_projectors(d)]
    return MultiplicityRecord(d, *counts, complex(np.trace(F)), det(F))


def multiplicity_residual(rec: MultiplicityRecord) -> float:
    """Distance from the closed-form row (0 for counts, |.| for tr and det)."""
    ref = multiplicity_table(rec.d)
    if rec.counts != ref.counts:
        return math.inf
    return max(abs(rec.trace - ref.trace), abs(rec.determinant - ref.determinant))


# --------------------------------------------------------------- the plan


@dataclass(frozen=True)
class FracPlan:
    """An eigenbasis of F ordered by compound label n = 4j + k.

    ``labels[i] = (k, j, n)`` describes column ``i`` of ``basis``;
    ``sources[i]`` is the Mehta index the column was drawn from.
    """

    d: int
    basis: np.ndarray
    dual: np.ndarray
    labels: tuple
    sources: tuple

    @property
    def numbers(self) -> np.ndarray:
        return np.array([n for _, _, n in self.labels], dtype=np.float64)


def build_plan(d: int) -> FracPlan:
    """Fill each eigenspace of F from the Mehta sequence.

    Mehta vector n goes to eigenspace k = n mod 4 (after projection onto it,
    which removes round-off outside the eigenspace).  Within the eigenspace
    it is orthogonalized by modified Gram-Schmidt against vectors already
    accepted and rejected as dependent when less than 1e-6 of its norm
    survives.  Drawing stops once every eigenspace holds its multiplicity.
    """
    if d < 2:
        raise PhasekitError("d must be at least 2")
    need = multiplicity_table(d).counts
    proj = eigen_projectors(d)
    limit = 4 * d
    raw = mehta_vectors(d, limit - 1)
    accepted: list[list[tuple[int, np.ndarray]]] = [[] for _ in range(4)]
    for n in range(limit):
        k = n % 4
        if len(accepted[k]) == need[k]:
            if all(len(accepted[i]) == need[i] for i in range(4)):
                break
            continue
        v = proj[k] @ raw[n].astype(np.complex128)
        norm0 = np.linalg.norm(raw[n])
        for _, u in accepted[k]:
            v = v - np.vdot(u, v) * u
        res = np.linalg.norm(v)
        if norm0 == 0 or res < REJECT_TOL * norm0:
            continue
        accepted[k].append((n, v / res))
    missing = [need[k] - len(accepted[k]) for k in range(4)]
    if any(missing):
        raise PhasekitError(
            f"Mehta candidates n < {limit} exhausted; eigenspaces short by {missing}"
        )
    cols, labels, sources = [], [], []
    entries = [(4 * j + k, k, j, src, vec) for k in range(4) for j, (src, vec) in enumerate(accepted[k])]
    for n, k, j, src, vec in sorted(entries, key=lambda e: e[0]):
        cols.append(vec)
        labels.append((k, j, n))
        sources.append(src)
    basis = np.array(cols).T
    return FracPlan(d, frozen(basis), frozen(inverse(basis)), tuple(labels), tuple(sources))


def plan_residuals(plan: FracPlan) -> dict[str, float]:
    F = build_F(plan.d)
    eig = max(
        float(np.linalg.norm(F @ plan.basis[:, i] - FOURTH_ROOTS[k] * plan.basis[:, i]))
        for i, (k, _, _) in enumerate(plan.labels)
    )
    proj = eigen_projectors(plan.d)
    pi_err = 0.0
    for k in range(4):
        idx = [i for i, lab in enumerate(plan.labels) if lab[0] == k]
        p = plan.basis[:, idx] @ plan.dual[idx, :]
        pi_err = max(pi_err, fro(p - proj[k]))
    return {
        "dual basis = I": fro(plan.dual @ plan.basis - np.eye(plan.d)),
        "F eigen-relation": eig,
        "eigenspace projectors": pi_err,
    }


def fractional_F(plan: FracPlan, nu: float, method: str = "spectral") -> np.ndarray:
    """F^nu = sum_{k,j} Y_(k,j) exp(i pi (4j+k) nu / 2) Yhat_(k,j).

    ``method="spectral"`` evaluates ``basis diag(...) dual``; ``"sum"``
    accumulates the rank-one terms one label at a time.
    """
    w = np.exp(1j * math.pi * plan.numbers * nu / 2)
    if method == "spectral":
        return (plan.basis * w) @ plan.dual
    if method == "sum":
        out = np.zeros((plan.d, plan.d), dtype=np.complex128)
        for i in range(plan.d):
            out += w[i] * np.outer(plan.basis[:, i], plan.dual[i, :])
        return out
    raise PhasekitError(f"unknown method {method!r}")


def number_matrix(plan: FracPlan) -> np.ndarray:
    """N_Y = sum Y (4j + k) Yhat; the generator of the fractional powers."""
    return frozen((plan.basis * plan.numbers) @ plan.dual)


def number_residual(plan: FracPlan) -> float:
    n_mat = number_matrix(plan)
    return float(np.linalg.norm(n_mat @ plan.basis - plan.basis * plan.numbers, axis=0).max())


def mehta_orthogonality_defect(d: int) -> dict[int, float]:
    """For each Mehta index used by the plan: the largest |cosine| with earlier
    accepted Mehta vectors in the same eigenspace (0 when it is the first)."""
    plan = build_plan(d)
    raw = mehta_vectors(d, max(plan.sources))
    out = {}
    seen: dict[int, list[np.ndarray]] = {k: [] for k in range(4)}
    for src in sorted(plan.sources):
        k = src % 4
        u = raw[src] / np.linalg.norm(raw[src])
        out[src] = max((abs(float(u @ w)) for w in seen[k]), default=0.0)
        seen[k].append(u)
    return out
