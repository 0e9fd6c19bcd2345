"""Symmetric tridiagonal eigen-kernels.

Each kernel has a loop implementation compiled with ``numba.njit`` and a
pure-numpy implementation.  ``MORSEKG_DISABLE_NUMBA=1`` (or numba missing)
selects the numpy path; :data:`BACKEND` records which one is active.  Both
implementations are always importable through :data:`IMPLEMENTATIONS` so the
benchmark can compare them in one process.
"""

from __future__ import annotations

import os

import numpy as np

DISABLE_ENV = "MORSEKG_DISABLE_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in ("1", "true", "yes", "on")


try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

BACKEND = "numba" if (numba is not None and _numba_requested()) else "numpy"

_EPS = np.finfo(float).eps


def gershgorin_bounds(diag: np.ndarray, off: np.ndarray) -> tuple[float, float]:
    r = np.zeros_like(diag)
    r[:-1] += np.abs(off)
    r[1:] += np.abs(off)
    lo = float(np.min(diag - r))
    hi = float(np.max(diag + r))
    pad = 2 * _EPS * max(abs(lo), abs(hi)) + 1e-300
    return lo - pad, hi + pad


def pivot_floor(off: np.ndarray) -> float:
    return float(np.finfo(float).tiny * max(1.0, float(np.max(off * off)) if off.size else 1.0))


# -- loop implementations (numba-compiled when available) -------------------

def _sturm_count_loop(diag, off2, shift, pivmin):
    """Number of eigenvalues strictly below ``shift``."""
    count = 0
    d = diag[0] - shift
    if abs(d) < pivmin:
        d = -pivmin
    if d < 0:
        count += 1
    for i in range(1, diag.shape[0]):
        d = diag[i] - shift - off2[i - 1] / d
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0:
            count += 1
    return count


def _thomas_loop(sub, diag, sup, rhs):
    n = diag.shape[0]
    c = np.empty(n)
    d = np.empty(n)
    beta = diag[0]
    c[0] = sup[0] / beta if n > 1 else 0.0
    d[0] = rhs[0] / beta
    for i in range(1, n):
        beta = diag[i] - sub[i - 1] * c[i - 1]
        if beta == 0.0:
            beta = 1e-300
        if i < n - 1:
            c[i] = sup[i] / beta
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / beta
    x = np.empty(n)
    x[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


# -- numpy implementations ---------------------------------------------------

def _sturm_counts_numpy(diag, off2, shifts, pivmin):
    """Vectorised over an array of shifts; the recurrence over the matrix
    index is inherently sequential."""
    shifts = np.asarray(shifts, dtype=float)
    d = diag[0] - shifts
    d[np.abs(d) < pivmin] = -pivmin
    count = (d < 0).astype(np.int64)
    for i in range(1, diag.shape[0]):
        d = (diag[i] - shifts) - off2[i - 1] / d
        d[np.abs(d) < pivmin] = -pivmin
        count += d < 0
    return count


def _bisect_numpy(diag, off2, k, lo, hi, pivmin, rtol, atol, sections=31):
    """Multisection: each sweep evaluates ``sections`` shifts per eigenvalue."""
    target = np.arange(k)
    a = np.full(k, lo)
    b = np.full(k, hi)
    frac = np.arange(1, sections + 1) / (sections + 1)
    for _ in range(60):
        width = b - a
        active = width > rtol * np.maximum(np.abs(a), np.abs(b)) + atol
        if not np.any(active):
            break
        shifts = a[:, None] + width[:, None] * frac[None, :]
        counts = _sturm_counts_numpy(diag, off2, shifts.ravel(), pivmin).reshape(k, sections)
        above = counts > target[:, None]
        # first shift whose count exceeds j bounds eigenvalue j from above
        first = np.where(above.any(axis=1), above.argmax(axis=1), sections)
        idx = np.arange(k)
        new_b = np.where(first < sections, shifts[idx, np.minimum(first, sections - 1)], b)
        new_a = np.where(first > 0, shifts[idx, np.maximum(first - 1, 0)], a)
        a = np.where(active, new_a, a)
        b = np.where(active, new_b, b)
    return 0.5 * (a + b)


def _thomas_numpy(sub, diag, sup, rhs):
    return _thomas_loop(sub, diag, sup, rhs)


IMPLEMENTATIONS = {"numpy": {"bisect": _bisect_numpy, "thomas": _thomas_numpy,
                             "count": _sturm_counts_numpy}}

if numba is not None:
    _count_nb = numba.njit(cache=True)(_sturm_count_loop)

    @numba.njit(cache=True)
    def _bisect_nb(diag, off2, k, lo, hi, pivmin, rtol, atol):
        out = np.empty(k)
        left = lo
        for j in range(k):
            a = left
            b = hi
            for _ in range(200):
                width = b - a
                if width <= rtol * max(abs(a), abs(b)) + atol:
                    break
                mid = a + 0.5 * width
                if _count_nb(diag, off2, mid, pivmin) > j:
                    b = mid
                else:
                    a = mid
            out[j] = 0.5 * (a + b)
            left = a
        return out

    @numba.njit(cache=True)
    def _counts_nb(diag, off2, shifts, pivmin):
        out = np.empty(shifts.shape[0], dtype=np.int64)
        for s in range(shifts.shape[0]):
            out[s] = _count_nb(diag, off2, shifts[s], pivmin)
        return out

    IMPLEMENTATIONS["numba"] = {"bisect": _bisect_nb, "thomas": numba.njit(cache=True)(_thomas_loop),
                                "count": _counts_nb}


def sturm_counts(diag, off, shifts, backend: str | None = None) -> np.ndarray:
    impl = IMPLEMENTATIONS[backend or BACKEND]
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.ascontiguousarray(off, dtype=float)
    return impl["count"](diag, off * off, np.ascontiguousarray(np.atleast_1d(shifts), dtype=float),
                         pivot_floor(off))


def lowest_eigenvalues(diag, off, k: int, rtol: float = 4 * _EPS, backend: str | None = None) -> np.ndarray:
    """The ``k`` smallest eigenvalues of the symmetric tridiagonal matrix with
    diagonal ``diag`` and off-diagonal ``off``, by Sturm-sequence bisection."""
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.ascontiguousarray(off, dtype=float)
    n = diag.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    lo, hi = gershgorin_bounds(diag, off)
    impl = IMPLEMENTATIONS[backend or BACKEND]
    atol = 2 * _EPS * max(abs(lo), abs(hi))
    return np.asarray(impl["bisect"](diag, off * off, k, lo, hi, pivot_floor(off), rtol, atol))


def inverse_iteration(diag, off, eigenvalue: float, iterations: int = 3,
                      backend: str | None = None) -> np.ndarray:
    """Unit eigenvector for an (accurate) eigenvalue of the tridiagonal matrix."""
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.ascontiguousarray(off, dtype=float)
    n = diag.shape[0]
    scale = max(1.0, float(np.max(np.abs(diag))))
    shifted = diag - (eigenvalue + 64 * _EPS * scale)
    thomas = IMPLEMENTATIONS[backend or BACKEND]["thomas"]
    rng = np.random.default_rng(12345)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    for _ in range(iterations):
        v = thomas(off, shifted, off, v)
        v /= np.linalg.norm(v)
    # fix the overall sign: largest component positive
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return v
