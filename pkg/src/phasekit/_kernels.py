"""Hot inner loops, each in two flavours.

Every kernel exists as an explicit-loop version compiled with numba ``@njit``
and as a vectorized pure-numpy version.  The public name (``gauss_sum``,
``periodized_hermite``, ...) is bound at import time:

* numba importable and ``PHASEKIT_USE_NUMBA`` unset or truthy -> loop version
* otherwise -> numpy version

Both flavours stay importable under ``*_jit`` / ``*_numpy`` so tests and
``benchmarks/bench_kernels.py`` can compare them directly.
"""

import math
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def _env_flag(name, default=True):
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() not in ("0", "false", "no", "off", "")


USE_NUMBA = HAVE_NUMBA and _env_flag("PHASEKIT_USE_NUMBA")

_JIT_OPTS = dict(cache=True, nogil=True)


def _jit(fn):
    if HAVE_NUMBA:
        return njit(**_JIT_OPTS)(fn)
    return fn


# ---------------------------------------------------------------- Gauss sums


@_jit
def gauss_sum_jit(u, v, w):
    n = int(abs(w))
    re = 0.0
    im = 0.0
    for k in range(n):
        theta = math.pi * (u * k * k + v * k) / w
        re += math.cos(theta)
        im += math.sin(theta)
    return complex(re, im)


def gauss_sum_numpy(u, v, w):
    k = np.arange(int(abs(w)), dtype=np.float64)
    theta = np.pi * (u * k * k + v * k) / w
    return complex(np.cos(theta).sum(), np.sin(theta).sum())


# ------------------------------------------------- periodized Hermite functions


@_jit
def periodized_hermite_jit(d, nmax, lmax):
    """Rows n = 0..nmax of sum_l psi_n(sqrt(2 pi / d) (l d + m))."""
    out = np.zeros((nmax + 1, d))
    scale = math.sqrt(2.0 * math.pi / d)
    norm0 = math.pi ** -0.25
    for m in range(d):
        for l in range(-lmax, lmax + 1):
            x = scale * (l * d + m)
            p_prev = norm0 * math.exp(-0.5 * x * x)
            out[0, m] += p_prev
            if nmax == 0:
                continue
            p_cur = math.sqrt(2.0) * x * p_prev
            out[1, m] += p_cur
            for n in range(1, nmax):
                p_next = math.sqrt(2.0 / (n + 1)) * x * p_cur - math.sqrt(n / (n + 1.0)) * p_prev
                out[n + 1, m] += p_next
                p_prev = p_cur
                p_cur = p_next
    return out


def periodized_hermite_numpy(d, nmax, lmax):
    m = np.arange(d)
    l = np.arange(-lmax, lmax + 1)[:, None]
    x = math.sqrt(2.0 * math.pi / d) * (l * d + m)
    out = np.zeros((nmax + 1, d))
    p_prev = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    out[0] = p_prev.sum(axis=0)
    if nmax == 0:
        return out
    p_cur = math.sqrt(2.0) * x * p_prev
    out[1] = p_cur.sum(axis=0)
    for n in range(1, nmax):
        p_prev, p_cur = p_cur, math.sqrt(2.0 / (n + 1)) * x * p_cur - math.sqrt(n / (n + 1.0)) * p_prev
        out[n + 1] = p_cur.sum(axis=0)
    return out


# --------------------------------------------- elimination with partial pivoting

# status codes returned by the elimination kernels
OK = 0
SINGULAR = 1


@_jit
def gauss_jordan_inverse_jit(a, rel_pivot_tol):
    n = a.shape[0]
    work = a.copy()
    inv = np.eye(n, dtype=np.complex128)
    big = 0.0
    for i in range(n):
        for j in range(n):
            if abs(work[i, j]) > big:
                big = abs(work[i, j])
    if big == 0.0:
        return inv, SINGULAR
    for col in range(n):
        piv = col
        best = abs(work[col, col])
        for row in range(col + 1, n):
            if abs(work[row, col]) > best:
                best = abs(work[row, col])
                piv = row
        if best < rel_pivot_tol * big:
            return inv, SINGULAR
        if piv != col:
            for j in range(n):
                t = work[col, j]
                work[col, j] = work[piv, j]
                work[piv, j] = t
                t = inv[col, j]
                inv[col, j] = inv[piv, j]
                inv[piv, j] = t
        p = work[col, col]
        for j in range(n):
            work[col, j] /= p
            inv[col, j] /= p
        for row in range(n):
            if row == col:
                continue
            f = work[row, col]
            if f == 0:
                continue
            for j in range(n):
                work[row, j] -= f * work[col, j]
                inv[row, j] -= f * inv[col, j]
    return inv, OK


def gauss_jordan_inverse_numpy(a, rel_pivot_tol):
    work = np.array(a, dtype=np.complex128)
    n = work.shape[0]
    inv = np.eye(n, dtype=np.complex128)
    big = np.abs(work).max() if n else 0.0
    if big == 0.0:
        return inv, SINGULAR
    for col in range(n):
        piv = col + int(np.argmax(np.abs(work[col:, col])))
        if abs(work[piv, col]) < rel_pivot_tol * big:
            return inv, SINGULAR
        if piv != col:
            work[[col, piv]] = work[[piv, col]]
            inv[[col, piv]] = inv[[piv, col]]
        p = work[col, col]
        work[col] /= p
        inv[col] /= p
        f = work[:, col].copy()
        f[col] = 0.0
        work -= np.outer(f, work[col])
        inv -= np.outer(f, inv[col])
    return inv, OK


@_jit
def lu_det_jit(a):
    n = a.shape[0]
    work = a.copy()
    det = 1.0 + 0.0j
    for col in range(n):
        piv = col
        best = abs(work[col, col])
        for row in range(col + 1, n):
            if abs(work[row, col]) > best:
                best = abs(work[row, col])
                piv = row
        if best == 0.0:
            return 0.0 + 0.0j
        if piv != col:
            for j in range(n):
                t = work[col, j]
                work[col, j] = work[piv, j]
                work[piv, j] = t
            det = -det
        p = work[col, col]
        det *= p
        for row in range(col + 1, n):
            f = work[row, col] / p
            for j in range(col, n):
                work[row, j] -= f * work[col, j]
    return det


def lu_det_numpy(a):
    work = np.array(a, dtype=np.complex128)
    n = work.shape[0]
    det = 1.0 + 0.0j
    for col in range(n):
        piv = col + int(np.argmax(np.abs(work[col:, col])))
        if work[piv, col] == 0:
            return 0.0 + 0.0j
        if piv != col:
            work[[col, piv]] = work[[piv, col]]
            det = -det
        p = work[col, col]
        det *= p
        f = work[col + 1:, col] / p
        work[col + 1:, col:] -= np.outer(f, work[col, col:])
    return complex(det)


# ------------------------------------------------- cross-basis overlap scan


@_jit
def cross_overlap_scan_jit(bases, target):
    """Scan |<b_i[:, a] | b_j[:, c]>| over every pair of distinct bases.

    Returns (min modulus, max modulus, worst |modulus - target|, i, j) where
    (i, j) is the basis pair holding the worst deviation.
    """
    nb = bases.shape[0]
    d = bases.shape[1]
    lo = np.inf
    hi = 0.0
    worst = -1.0
    wi = -1
    wj = -1
    for i in range(nb):
        for j in range(i + 1, nb):
            for a in range(d):
                for c in range(d):
                    s = 0.0 + 0.0j
                    for k in range(d):
                        s += bases[i, k, a].conjugate() * bases[j, k, c]
                    mod = abs(s)
                    if mod < lo:
                        lo = mod
                    if mod > hi:
                        hi = mod
                    dev = abs(mod - target)
                    if dev > worst:
                        worst = dev
                        wi = i
                        wj = j
    return lo, hi, worst, wi, wj


def cross_overlap_scan_numpy(bases, target):
    nb = bases.shape[0]
    lo, hi, worst, wi, wj = np.inf, 0.0, -1.0, -1, -1
    for i in range(nb - 1):
        mods = np.abs(np.einsum("ka,bkc->bac", bases[i].conj(), bases[i + 1:]))
        dev = np.abs(mods - target).reshape(nb - 1 - i, -1).max(axis=1)
        lo = min(lo, float(mods.min()))
        hi = max(hi, float(mods.max()))
        k = int(np.argmax(dev))
        if dev[k] > worst:
            worst, wi, wj = float(dev[k]), i, i + 1 + k
    return lo, hi, worst, wi, wj


if USE_NUMBA:
    gauss_sum = gauss_sum_jit
    periodized_hermite = periodized_hermite_jit
    gauss_jordan_inverse = gauss_jordan_inverse_jit
    lu_det = lu_det_jit
    cross_overlap_scan = cross_overlap_scan_jit
else:
    gauss_sum = gauss_sum_numpy
    periodized_hermite = periodized_hermite_numpy
    gauss_jordan_inverse = gauss_jordan_inverse_numpy
    lu_det = lu_det_numpy
    cross_overlap_scan = cross_overlap_scan_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
