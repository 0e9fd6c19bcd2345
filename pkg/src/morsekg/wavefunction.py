"""Series solution phi(z) = exp(p z + q z^2 / 2) * sum_n a_n z^(2n + L + 1/2).

The coefficients obey the three-term recurrence

    X_n a_n + Y_{n+1} a_{n+1} + Z_{n+2} a_{n+2} = 0,
    X_n = 2q(2n + L + 1) - A3,  Y_n = A2 + p(4n + 2L + 1),  Z_n = 4n(n + L) + 2L^2,

started from a_0 = 1 and Y_0 a_0 + Z_1 a_1 = 0 (the first row of the banded
determinant), so that the coefficient vector is exactly the null vector of
that matrix when the series terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DegenerateRecurrenceError, DivergenceError, DomainError
from .potential import ReducedParams

TRUNCATION_RTOL = 1e-9


@dataclass(frozen=True)
class RecurrenceRow:
    index: int
    x: complex
    y: complex
    z: complex


@dataclass(frozen=True)
class WavefunctionSeries:
    p: complex
    q: complex
    L: complex
    coefficients: tuple[complex, ...]
    truncation_index: int
    truncated_exactly: bool
    tail: tuple[complex, complex] = (0j, 0j)

    @property
    def a(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=complex)

    def scaled(self, factor: complex) -> "WavefunctionSeries":
        return WavefunctionSeries(
            self.p, self.q, self.L, tuple(factor * c for c in self.coefficients),
            self.truncation_index, self.truncated_exactly,
            (factor * self.tail[0], factor * self.tail[1]),
        )


def recurrence_row(n: int, rp: ReducedParams, L: complex) -> RecurrenceRow:
    if n < 0:
        raise DomainError(f"row index must be non-negative, got {n}")
    x = 2 * rp.q * (2 * n + L + 1) - rp.a3
    y = rp.a2 + rp.p * (4 * n + 2 * L + 1)
    z = 4 * n * (n + L) + 2 * L * L
    return RecurrenceRow(n, complex(x), complex(y), complex(z))


def recurrence_arrays(rp: ReducedParams, L: complex, count: int):
    """X_n, Y_n, Z_n for n = 0..count-1 together with the magnitudes of their
    constituent terms (used for cancellation-aware relative residuals)."""
    n = np.arange(count, dtype=float)
    L = complex(L)
    xt = 2 * rp.q * (2 * n + L + 1)
    yt = rp.p * (4 * n + 2 * L + 1)
    zt1 = 4 * n * (n + L)
    zt2 = 2 * L * L
    X = xt - rp.a3
    Y = rp.a2 + yt
    Z = zt1 + zt2
    return (X, Y, Z,
            np.abs(xt) + abs(rp.a3), abs(rp.a2) + np.abs(yt), np.abs(zt1) + abs(zt2))


def build_series(rp: ReducedParams, L: complex, N: int) -> WavefunctionSeries:
    """Coefficients a_0..a_N plus the two tail values a_{N+1}, a_{N+2}.

    The series counts as exactly truncated when both tail values are below
    1e-9 of the largest retained coefficient.
    """
    if N < 2:
        raise DomainError(f"series needs N >= 2, got {N}")
    X, Y, Z, *_ = recurrence_arrays(rp, L, N + 3)
    a = np.zeros(N + 3, dtype=complex)
    a[0] = 1.0
    if Z[1] == 0:
        raise DegenerateRecurrenceError(1)
    a[1] = -Y[0] * a[0] / Z[1]
    for n in range(N + 1):
        if Z[n + 2] == 0:
            raise DegenerateRecurrenceError(n + 2)
        a[n + 2] = -(X[n] * a[n] + Y[n + 1] * a[n + 1]) / Z[n + 2]
    head = a[: N + 1]
    scale = np.max(np.abs(head))
    exact = bool(abs(a[N + 1]) < TRUNCATION_RTOL * scale and abs(a[N + 2]) < TRUNCATION_RTOL * scale)
    return WavefunctionSeries(
        complex(rp.p), complex(rp.q), complex(L),
        tuple(complex(c) for c in head), N, exact, (complex(a[N + 1]), complex(a[N + 2])),
    )


def recurrence_residuals(ws: WavefunctionSeries, rp: ReducedParams) -> np.ndarray:
    """Relative residual of every interior triple of the built series."""
    a = np.concatenate([ws.a, ws.tail])
    count = len(a)
    X, Y, Z, xm, ym, zm = recurrence_arrays(rp, ws.L, count)
    n = np.arange(count - 2)
    lhs = X[n] * a[n] + Y[n + 1] * a[n + 1] + Z[n + 2] * a[n + 2]
    scale = (xm[n] * np.abs(a[n]) + ym[n + 1] * np.abs(a[n + 1]) + zm[n + 2] * np.abs(a[n + 2]))
    return np.abs(lhs) / np.where(scale > 0, scale, 1.0)


def determinant_matrix(rp: ReducedParams, L: complex, n: int) -> np.ndarray:
    """(n+1) x (n+1) banded matrix: diagonal Y_k, superdiagonal Z_{k+1},
    subdiagonal X_{k-1}."""
    X, Y, Z, *_ = recurrence_arrays(rp, L, n + 2)
    M = np.zeros((n + 1, n + 1), dtype=complex)
    k = np.arange(n + 1)
    M[k, k] = Y[: n + 1]
    M[k[:-1], k[:-1] + 1] = Z[1 : n + 1]
    M[k[1:], k[1:] - 1] = X[:n]
    return M


def determinant_residual(rp: ReducedParams, L: complex, n: int) -> float:
    """|det| of the banded matrix divided by the product of its row magnitudes.

    A row's magnitude is the Euclidean norm of its entries, each entry measured
    by the sum of its terms' absolute values, so the residual stays O(1) away
    from a root and goes to 0 on one even when the entries themselves cancel.
    The continuant is accumulated with per-row scaling to avoid overflow.
    """
    if n < 0:
        raise DomainError(f"order must be non-negative, got {n}")
    X, Y, Z, xm, ym, zm = recurrence_arrays(rp, L, n + 2)
    rows = np.empty(n + 1)
    for k in range(n + 1):
        sq = ym[k] ** 2
        if k > 0:
            sq += xm[k - 1] ** 2
        if k < n:
            sq += zm[k + 1] ** 2
        rows[k] = np.sqrt(sq)
    if np.any(rows == 0):
        return 0.0
    prev2, prev1 = 0j, 1.0 + 0j  # scaled D_{-2}, D_{-1}
    for k in range(n + 1):
        cur = Y[k] / rows[k] * prev1
        if k > 0:
            cur -= X[k - 1] * Z[k] / (rows[k] * rows[k - 1]) * prev2
        prev2, prev1 = prev1, cur
    return float(abs(prev1))


def _series_sum(a: np.ndarray, w: np.ndarray) -> np.ndarray:
    s = np.zeros_like(w, dtype=complex)
    for c in a[::-1]:
        s = s * w + c
    return s


def evaluate_phi(ws: WavefunctionSeries, z):
    """phi(z) for scalar or array z; z = 0 allowed when Re(L) + 1/2 > 0."""
    zs = np.asarray(z, dtype=complex)
    scalar = zs.ndim == 0
    zs = np.atleast_1d(zs)
    power = ws.L + 0.5
    zero = zs == 0
    if np.any(zero) and power.real <= 0:
        raise DivergenceError(f"phi diverges at z = 0 for Re(L) + 1/2 = {power.real:.6g} <= 0")
    out = np.zeros_like(zs)
    nz = ~zero
    zz = zs[nz]
    out[nz] = np.exp(ws.p * zz + 0.5 * ws.q * zz * zz) * _series_sum(ws.a, zz * zz) * zz ** power
    return out[0] if scalar else out


def evaluate_psi(ws: WavefunctionSeries, x, beta: float):
    """psi(x) = phi(exp(-beta x)) / sqrt(exp(-beta x))."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0):
        raise DomainError("psi is defined for x >= 0")
    return evaluate_phi(ws, np.exp(-beta * xs)) * np.exp(0.5 * beta * xs)


def norm_squared(ws: WavefunctionSeries, beta: float, limit: int = 200) -> float:
    """Integral of |psi|^2 over x in [0, inf), computed in z on [0, 1].

    |psi|^2 dx = z^(2 Re L - 1) g(z) dz / beta with g smooth, so the algebraic
    endpoint weight is handed to QUADPACK's QAWS routine.
    """
    alpha = 2 * ws.L.real - 1
    if ws.L.real <= 0:
        raise DivergenceError(f"|psi|^2 is not integrable at x -> inf for Re(L) = {ws.L.real:.6g}")

    def g(z):
        zc = complex(z)
        val = np.exp(ws.p * zc + 0.5 * ws.q * zc * zc) * _series_sum(ws.a, np.asarray(zc * zc))
        # |z^(L + 1/2)|^2 / z^2 = z^(2 Re L - 1) is carried by the weight
        return float(abs(val) ** 2) / beta

    value, _err = integrate.quad(g, 0.0, 1.0, weight="alg", wvar=(alpha, 0.0),
                                 limit=limit, epsabs=0.0, epsrel=1e-13)
    return value


def normalize_numeric(ws: WavefunctionSeries, beta: float, limit: int = 200) -> float:
    """Scale factor s with integral |s psi|^2 dx = 1."""
    return 1.0 / np.sqrt(norm_squared(ws, beta, limit))
