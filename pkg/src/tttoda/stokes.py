"""Solution parameters, closed-form Stokes data and monodromy.

A global radial solution is labelled either by its exponents ``m`` at t = 0
(w_i ~ -m_i log|t|) or by the exponents ``k`` of its holomorphic data. The
two are linked through 1 - m_i + m_{i-1} = (n+1)/N (k_i + 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Sequence, Union

import numpy as np
from scipy.linalg import expm

from .exterior import ext_power_group
from .roots import coxeter_diagram, elementary, ray_roots, vandermonde

SYM_TOL = 1e-12
IMAG_TOL = 1e-10


class RegionError(ValueError):
    """Parameters outside the region of global solutions."""


@dataclass(frozen=True)
class TodaParams:
    n: int
    m: tuple[float, ...]
    k: tuple[float, ...]
    N: float

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.m)

    @property
    def on_boundary(self) -> bool:
        """True if some k_i = -1, i.e. an inequality of the region is tight."""
        return any(abs(ki + 1) < 1e-12 for ki in self.k)


@dataclass(frozen=True)
class StokesVector:
    n: int
    s: tuple[complex, ...]

    def __post_init__(self):
        if len(self.s) != self.n:
            raise ValueError(f"expected {self.n} Stokes parameters, got {len(self.s)}")

    def __getitem__(self, k: int) -> complex:
        """1-based access: S[k] = s_k."""
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return self.s[k - 1]

    def is_symmetric(self, tol: float = SYM_TOL) -> bool:
        return all(abs(self.s[k] - self.s[self.n - 1 - k]) <= tol for k in range(self.n))

    def real(self) -> list[float]:
        return [float(np.real(x)) for x in self.s]


StokesLike = Union[StokesVector, Sequence[complex]]


def as_stokes(S: StokesLike, n: int | None = None) -> StokesVector:
    if isinstance(S, StokesVector):
        if n is not None and S.n != n:
            raise ValueError(f"Stokes vector has n={S.n}, expected {n}")
        return S
    vals = tuple(S)
    return StokesVector(len(vals) if n is None else n, vals)


def binomial_stokes(n: int) -> StokesVector:
    return StokesVector(n, tuple(comb(n + 1, i) for i in range(1, n + 1)))


def x0(n: int) -> np.ndarray:
    """Diagonal of the element with every simple root equal to 1."""
    return n / 2.0 - np.arange(n + 1, dtype=float)


def _validate_m(n: int, m: np.ndarray) -> None:
    if m.shape != (n + 1,):
        raise RegionError(f"m must have n+1 = {n + 1} entries, got {m.size}")
    for i in range(n + 1):
        if abs(m[i] + m[n - i]) > SYM_TOL:
            raise RegionError(f"anti-symmetry m_{i} + m_{n - i} = 0 violated "
                              f"(sum is {m[i] + m[n - i]:.3g})")
    for i in range(n):
        if m[i + 1] - m[i] > 1 + SYM_TOL:
            raise RegionError(f"m_{i + 1} - m_{i} <= 1 violated "
                              f"(difference is {m[i + 1] - m[i]:.6g})")
    if 1 - m[0] + m[n] < -SYM_TOL:
        raise RegionError(f"1 - m_0 + m_{n} >= 0 violated (value {1 - m[0] + m[n]:.6g})")


def params_from_m(n: int, m: Sequence[float], N: float | None = None) -> TodaParams:
    """Parameters from the exponents at t = 0.

    ``N`` fixes the z-coordinate scale and defaults to n + 1 (so t = z).
    """
    if int(n) != n or n < 1:
        raise ValueError(f"rank n must be an integer >= 1, got {n!r}")
    m_arr = np.asarray(m, dtype=float)
    _validate_m(n, m_arr)
    N = float(n + 1 if N is None else N)
    if N <= 0:
        raise RegionError(f"N > 0 required, got {N}")
    prev = np.roll(m_arr, 1)  # m_{i-1}, cyclic
    k = N / (n + 1) * (1 - m_arr + prev) - 1
    k = np.where(np.abs(k + 1) < SYM_TOL, -1.0, k)
    if np.all(k == -1):
        raise RegionError("trivial case N = 0 (all k_i = -1) is excluded")
    return TodaParams(n, tuple(float(x) for x in m_arr), tuple(float(x) for x in k), N)


def params_from_k(n: int, k: Sequence[float]) -> TodaParams:
    if int(n) != n or n < 1:
        raise ValueError(f"rank n must be an integer >= 1, got {n!r}")
    k_arr = np.asarray(k, dtype=float)
    if k_arr.shape != (n + 1,):
        raise RegionError(f"k must have n+1 = {n + 1} entries, got {k_arr.size}")
    for i, ki in enumerate(k_arr):
        if ki < -1 - SYM_TOL:
            raise RegionError(f"k_{i} >= -1 violated (k_{i} = {ki:.6g})")
    for i in range(1, n + 1):
        if abs(k_arr[i] - k_arr[n - i + 1]) > SYM_TOL:
            raise RegionError(f"symmetry k_{i} = k_{n - i + 1} violated")
    N = n + 1 + float(k_arr.sum())
    if N <= SYM_TOL:
        raise RegionError("trivial case N = 0 (all k_i = -1) is excluded")
    steps = 1 - (n + 1) / N * (k_arr[1:] + 1)  # m_i - m_{i-1}, i = 1..n
    m = np.concatenate([[0.0], np.cumsum(steps)])
    m -= m.mean()
    m = 0.5 * (m - m[::-1])  # exact anti-symmetry
    _validate_m(n, m)
    return TodaParams(n, tuple(float(x) for x in m), tuple(float(x) for x in k_arr), N)


def stokes_exponentials(params: TodaParams) -> np.ndarray:
    """The n+1 unit-modulus numbers whose symmetric functions are the s_k.

    Equivalently the eigenvalues of exp(2 pi i (m + x0) / (n+1)).
    """
    n = params.n
    j = np.arange(n + 1)
    m = np.asarray(params.m)
    return np.exp((2 * m + n - 2 * j) * np.pi * 1j / (n + 1))


def stokes_from_m(params: TodaParams, imag_tol: float = IMAG_TOL) -> StokesVector:
    n = params.n
    z = stokes_exponentials(params)
    coeffs = np.poly(z)
    direct = np.array([(-1) ** k * coeffs[k] for k in range(1, n + 1)])
    # character route: trace of exterior powers of the group element
    g = np.diag(z)
    via_char = np.array([np.trace(ext_power_group(g, k)) for k in range(1, n + 1)])
    gap = np.abs(direct - via_char).max()
    if gap > 1e-10:
        raise ArithmeticError(f"symmetric-function and character evaluations differ by {gap:.3e}")
    sym = 0.5 * (direct + direct[::-1])
    if np.abs(direct - direct[::-1]).max() > 1e-10:
        raise ArithmeticError("Stokes data fails s_k = s_(n+1-k)")
    s = [float(x.real) if abs(x.imag) < imag_tol else complex(x) for x in sym]
    s = [int(round(x)) if isinstance(x, float) and abs(x - round(x)) < 1e-12 else x for x in s]
    return StokesVector(n, tuple(s))


def char_poly_coeffs(S: StokesLike) -> list:
    """Coefficients (highest first) of z^(n+1) - s_1 z^n + ... + (-1)^(n+1)."""
    S = as_stokes(S)
    return [1] + [(-1) ** k * S[k] for k in range(1, S.n + 1)] + [(-1) ** (S.n + 1)]


def steinberg_monodromy(S: StokesLike, exact: bool = False) -> np.ndarray:
    """Companion matrix with characteristic polynomial given by the Stokes data.

    ``exact=True`` builds an object array (for integer or rational S).
    """
    S = as_stokes(S)
    c = char_poly_coeffs(S)
    h = S.n + 1
    if exact:
        M = np.zeros((h, h), dtype=object)
        M[:] = 0
    else:
        M = np.zeros((h, h), dtype=complex)
    for i in range(h - 1):
        M[i + 1, i] = 1
    for i in range(h):
        M[i, h - 1] = -c[h - i]
    if not exact and all(complex(x).imag == 0 for x in S.s):
        M = M.real.copy()
    return M


def apposition_root_vector(n: int, i: int, j: int) -> np.ndarray:
    """Omega E_ij Omega^-1, the root vector in the frame containing E+."""
    Om = vandermonde(n)
    return Om @ elementary(n, i, j) @ np.linalg.inv(Om)


def stokes_factor(n: int, S: StokesLike, phi: float) -> np.ndarray:
    S = as_stokes(S, n)
    roots = ray_roots(n, phi)
    if not roots:
        raise ValueError(f"angle {phi!r} is not a ray of the Coxeter plane for n={n}")
    X = np.zeros((n + 1, n + 1), dtype=complex)
    for b in roots:
        X += S[abs(b.i - b.j)] * apposition_root_vector(n, b.i, b.j)
    return expm(X)


def ray_angles(n: int) -> list[float]:
    return [ray.angle for ray in coxeter_diagram(n, 1).rays]


def stokes_factor_product(n: int, S: StokesLike) -> np.ndarray:
    """Ordered product of all Stokes factors, by increasing ray angle."""
    P = np.eye(n + 1, dtype=complex)
    for phi in ray_angles(n):
        P = P @ stokes_factor(n, S, phi)
    return P


def check_antisymmetric(w: np.ndarray, tol: float = SYM_TOL) -> None:
    gap = np.abs(w + w[..., ::-1]).max() if w.size else 0.0
    if gap > tol:
        raise ValueError(f"w must satisfy w_i + w_(n-i) = 0 (violation {gap:.3g})")


def build_W(w: Sequence[float]) -> np.ndarray:
    """Cyclic matrix with (i, i+1) entry e^(w_(i+1) - w_i) and (n, 0) entry e^(w_0 - w_n)."""
    w = np.asarray(w, dtype=float)
    check_antisymmetric(w)
    n = w.size - 1
    W = np.zeros((n + 1, n + 1))
    for i in range(n):
        W[i, i + 1] += math.exp(w[i + 1] - w[i])
    W[n, 0] += math.exp(w[0] - w[n])
    return W


def commutator_diagonal(w: Sequence[float]) -> np.ndarray:
    """diag([W^T, W]) for the cyclic matrix of ``w``."""
    W = build_W(w)
    C = W.T @ W - W @ W.T
    return np.diag(C).copy()

