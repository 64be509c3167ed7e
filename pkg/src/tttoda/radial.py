"""Newton solver for the radial tt*-Toda boundary-value problem.

In u = ln x the radial system reads

    w_uu = 2 e^{2u} R_i(w),   R_i(w) = -e^{2(w_{i+1} - w_i)} + e^{2(w_i - w_{i-1})},

with indices mod n+1 and w_i + w_{n-i} = 0. Boundary conditions are
dw/du = -m at u_min (the small-x logarithmic behaviour) and w = 0 at u_max.
Only w_0 .. w_{P-1}, P = ceil(n/2), are unknowns; the rest follow by
anti-symmetry (the middle component vanishes for even n).

The tail is compared against s_k F(L_k x), F(y) = (1/2)(pi y)^{-1/2} e^{-2y}.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve
from scipy.special import k0

from .roots import particle_mass
from .stokes import TodaParams, commutator_diagonal, stokes_from_m

log = logging.getLogger(__name__)


class ConvergenceError(RuntimeError):
    def __init__(self, msg, iterations, residual):
        super().__init__(msg)
        self.iterations = iterations
        self.residual = residual


@dataclass(frozen=True)
class RadialGrid:
    u_min: float
    u_max: float
    count: int

    def __post_init__(self):
        if not self.u_min < self.u_max:
            raise ValueError(f"need u_min < u_max, got {self.u_min}, {self.u_max}")
        if self.count < 16:
            raise ValueError(f"grid needs at least 16 nodes, got {self.count}")

    @classmethod
    def from_x(cls, x_min: float, x_max: float, count: int) -> RadialGrid:
        if x_min <= 0:
            raise ValueError(f"x_min must be positive, got {x_min}")
        return cls(math.log(x_min), math.log(x_max), count)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.u_min, self.u_max, self.count)

    @property
    def x(self) -> np.ndarray:
        return np.exp(self.nodes)

    @property
    def step(self) -> float:
        return (self.u_max - self.u_min) / (self.count - 1)


@dataclass
class RadialSolution:
    params: TodaParams
    grid: RadialGrid
    w: np.ndarray  # (count, n+1)
    newton_iterations: int
    max_residual: float
    history: list[float] = field(default_factory=list)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def boundary_flux_error(self) -> np.ndarray:
        """x dw/dx at x_min minus (-m), one-sided second-order difference."""
        h = self.grid.step
        w = self.w
        flux = (-3 * w[0] + 4 * w[1] - w[2]) / (2 * h)
        return flux + np.asarray(self.params.m)


def reduced_size(n: int) -> int:
    return (n + 1) // 2


def expansion_matrix(n: int) -> np.ndarray:
    """Linear map from reduced unknowns (P) to all n+1 components."""
    P = reduced_size(n)
    T = np.zeros((n + 1, P))
    for p in range(P):
        T[p, p] = 1.0
        T[n - p, p] = -1.0
    return T


def toda_rhs(w: np.ndarray) -> np.ndarray:
    """R_i(w) componentwise; ``w`` has shape (..., n+1)."""
    fwd = np.exp(2 * (np.roll(w, -1, axis=-1) - w))
    bwd = np.exp(2 * (w - np.roll(w, 1, axis=-1)))
    return bwd - fwd


def toda_rhs_via_W(w: np.ndarray) -> np.ndarray:
    """R_i(w) from diag([W^T, W]); ``w`` has shape (nodes, n+1) or (n+1,)."""
    w = np.asarray(w, dtype=float)
    if w.ndim == 1:
        return commutator_diagonal(w)
    return np.array([commutator_diagonal(row) for row in w])


def _rhs_jacobian(w: np.ndarray):
    """Per-node derivative blocks dR_i/dw_j, shape (nodes, n+1, n+1)."""
    nodes, h = w.shape
    fwd = np.exp(2 * (np.roll(w, -1, axis=-1) - w))
    bwd = np.exp(2 * (w - np.roll(w, 1, axis=-1)))
    J = np.zeros((nodes, h, h))
    idx = np.arange(h)
    np.add.at(J, (slice(None), idx, idx), 2 * fwd + 2 * bwd)
    np.add.at(J, (slice(None), idx, (idx + 1) % h), -2 * fwd)
    np.add.at(J, (slice(None), idx, (idx - 1) % h), -2 * bwd)
    return J


def discrete_residual(w: np.ndarray, grid: RadialGrid, m: Sequence[float],
                      rhs=toda_rhs) -> np.ndarray:
    """Residual of the discretized equation at every node, shape (nodes, n+1).

    Row 0 carries the ghost-point Robin condition, the last row the
    Dirichlet condition (w itself).
    """
    u = grid.nodes
    h = grid.step
    m = np.asarray(m, dtype=float)
    src = 2 * np.exp(2 * u)[:, None] * rhs(w)
    res = np.empty_like(w)
    res[1:-1] = (w[2:] - 2 * w[1:-1] + w[:-2]) / h**2 - src[1:-1]
    # ghost node w_{-1} = w_1 + 2 h m from (w_1 - w_{-1}) / 2h = -m
    res[0] = (2 * w[1] - 2 * w[0] + 2 * h * m) / h**2 - src[0]
    res[-1] = w[-1]
    return res


def _softminus(u: np.ndarray) -> np.ndarray:
    return -np.logaddexp(0.0, -u)


def initial_guess(params: TodaParams, grid: RadialGrid) -> np.ndarray:
    u = grid.nodes
    taper = _softminus(u) - _softminus(np.array(grid.u_max))  # vanishes at u_max
    return -np.outer(taper, np.asarray(params.m))


def _newton(w0: np.ndarray, grid: RadialGrid, m: np.ndarray, tol: float,
            max_iter: int) -> tuple[np.ndarray, int, list[float]]:
    n = w0.shape[1] - 1
    P = reduced_size(n)
    T = expansion_matrix(n)
    nodes = grid.count
    h = grid.step
    u = grid.nodes
    scale = 2 * np.exp(2 * u)

    v = w0[:, :P].copy()
    history: list[float] = []

    def full(v):
        return v @ T.T

    def reduced_res(v):
        return discrete_residual(full(v), grid, m)[:, :P]

    # second-difference part of the Jacobian, shared by every iteration
    main = np.full(nodes, -2.0 / h**2)
    upper = np.full(nodes - 1, 1.0 / h**2)
    lower = np.full(nodes - 1, 1.0 / h**2)
    upper[0] = 2.0 / h**2
    main[-1] = 1.0
    lower[-1] = 0.0
    D2 = sp.diags([lower, main, upper], [-1, 0, 1], format="csr")
    D2 = sp.kron(D2, sp.identity(P), format="csr")

    res = reduced_res(v)
    for it in range(1, max_iter + 1):
        norm = float(np.abs(res).max())
        history.append(norm)
        if norm < tol:
            return full(v), it - 1, history
        Jr = _rhs_jacobian(full(v))[:, :P, :] @ T  # (nodes, P, P)
        blocks = -scale[:, None, None] * Jr
        blocks[-1] = 0.0
        J = D2 + sp.block_diag(list(blocks), format="csr")
        delta = spsolve(J.tocsc(), -res.ravel()).reshape(nodes, P)
        step = 1.0
        while True:
            trial = v + step * delta
            with np.errstate(over="ignore", invalid="ignore"):
                tres = reduced_res(trial)
            tnorm = float(np.abs(tres).max())
            if np.isfinite(tnorm) and (tnorm < norm or step < 1e-4):
                break
            step *= 0.5
        v, res = trial, tres
        log.debug("newton %d: residual %.3e step %.3g", it, tnorm, step)
    norm = float(np.abs(res).max())
    history.append(norm)
    if norm < tol:
        return full(v), max_iter, history
    raise ConvergenceError(f"Newton did not converge in {max_iter} iterations "
                           f"(last residual {norm:.3e})", max_iter, norm)


def solve_radial(params: TodaParams, grid: RadialGrid, tol: float = 1e-8,
                 max_iter: int = 60, continuation: Sequence[float] | None = None) -> RadialSolution:
    """Solve the radial system for the global solution labelled by ``params.m``.

    Parameters on the boundary of the region are reached by continuation
    through 0.8 m and 0.9 m unless ``continuation`` says otherwise.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = params.n
    m = np.asarray(params.m, dtype=float)
    if params.is_zero:
        w = np.zeros((grid.count, n + 1))
        return RadialSolution(params, grid, w, 0, 0.0, [0.0])

    if continuation is None:
        continuation = (0.8, 0.9, 1.0) if params.on_boundary else (1.0,)
    w = initial_guess(params, grid) * continuation[0]
    total = 0
    history: list[float] = []
    for frac in continuation:
        w, its, hist = _newton(w, grid, frac * m, tol, max_iter)
        total += its
        history.extend(hist)
    res = discrete_residual(w, grid, m)
    return RadialSolution(params, grid, w, total, float(np.abs(res).max()), history)


@dataclass
class ResidualReport:
    componentwise: np.ndarray
    via_commutator: np.ndarray

    @property
    def route_gap(self) -> float:
        return float(np.abs(self.componentwise - self.via_commutator).max())

    @property
    def max_residual(self) -> float:
        return float(max(np.abs(self.componentwise).max(), np.abs(self.via_commutator).max()))


def residual(solution: RadialSolution) -> ResidualReport:
    """Discrete residual from R_i directly and from diag([W^T, W])."""
    g, m = solution.grid, solution.params.m
    a = discrete_residual(solution.w, g, m, rhs=toda_rhs)
    b = discrete_residual(solution.w, g, m, rhs=toda_rhs_via_W)
    return ResidualReport(a, b)


def asymptotic_components(solution: RadialSolution) -> np.ndarray:
    """u_k(x) = -(4/(n+1)) sum_p w_p sin((2p+1) k pi/(n+1)); shape (nodes, K)."""
    return asymptotic_combination(solution.w, solution.params.n)


def asymptotic_combination(w: np.ndarray, n: int) -> np.ndarray:
    K = (n + 1) // 2
    ps = np.arange((n - 1) // 2 + 1)
    ks = np.arange(1, K + 1)
    S = np.sin(np.outer(2 * ps + 1, ks) * np.pi / (n + 1))  # (p, k)
    return -(4.0 / (n + 1)) * (w[:, ps] @ S)


def F(y):
    """Leading one-soliton profile (1/2)(pi y)^(-1/2) e^(-2y)."""
    y = np.asarray(y, dtype=float)
    return 0.5 / np.sqrt(np.pi * y) * np.exp(-2 * y)


def bessel_template(y):
    """(1/pi) K_0(2y); its large-y expansion starts with F(y)."""
    return k0(2 * np.asarray(y, dtype=float)) / np.pi


TEMPLATES = {"f": F, "bessel": bessel_template}


@dataclass
class AsymptoticFit:
    s_hat: list[float]
    windows: list[tuple[float, float]]
    spread: list[float]  # (max - min) / |mean| of the per-node ratio
    template: str
    nodes_used: list[int]

    def sign(self) -> list[int]:
        return [int(np.sign(s)) for s in self.s_hat]


def extract_stokes(solution: RadialSolution, window: tuple[float, float] = (1.5, 3.5),
                   template: str = "bessel") -> AsymptoticFit:
    """Estimate s_k by averaging u_k(x) / T(L_k x) over the window."""
    if template not in TEMPLATES:
        raise ValueError(f"unknown template {template!r}; choose from {sorted(TEMPLATES)}")
    xa, xb = window
    x = solution.x
    if not (x[0] <= xa < xb <= x[-1]):
        raise ValueError(f"window [{xa}, {xb}] lies outside the grid [{x[0]:.4g}, {x[-1]:.4g}]")
    mask = (x >= xa) & (x <= xb)
    if mask.sum() < 2:
        raise ValueError("fit window contains fewer than two grid nodes")
    n = solution.params.n
    T = TEMPLATES[template]
    u = asymptotic_components(solution)
    s_hat, spread = [], []
    for k in range(1, u.shape[1] + 1):
        ref = T(particle_mass(n, k) * x[mask])
        ratio = u[mask, k - 1] / ref
        mean = float(ratio.mean())
        s_hat.append(mean)
        rng = float(ratio.max() - ratio.min())
        spread.append(rng / abs(mean) if mean != 0 else (0.0 if rng == 0 else math.inf))
    K = u.shape[1]
    return AsymptoticFit(s_hat, [(xa, xb)] * K, spread, template, [int(mask.sum())] * K)


@dataclass
class SolverConfig:
    x_min: float = 1e-3
    x_max: float = 8.0
    nodes: int = 2000
    tol: float = 1e-8
    window: tuple[float, float] = (1.5, 3.5)
    template: str = "bessel"
    rel_tol: float = 0.10
    abs_tol: float = 1e-6

    def grid(self) -> RadialGrid:
        return RadialGrid.from_x(self.x_min, self.x_max, self.nodes)


@dataclass
class VerifyReport:
    params: TodaParams
    s_closed: list[float]
    s_hat: list[float]
    errors: list[float]  # relative, or absolute where the closed form is zero
    passed: list[bool]
    sign_agrees: list[bool]
    fit: AsymptoticFit
    solution: RadialSolution

    @property
    def ok(self) -> bool:
        return all(self.passed)


def verify_asymptotics(params: TodaParams, config: SolverConfig | None = None) -> VerifyReport:
    """Solve numerically and compare the fitted tail against the closed-form s_k."""
    config = config or SolverConfig()
    sol = solve_radial(params, config.grid(), config.tol)
    fit = extract_stokes(sol, config.window, config.template)
    closed = [float(np.real(x)) for x in stokes_from_m(params).s[: len(fit.s_hat)]]
    errors, passed, signs = [], [], []
    for c, s in zip(closed, fit.s_hat):
        if abs(c) < config.abs_tol:
            err = abs(s - c)
            passed.append(err < config.abs_tol)
            signs.append(True)
        else:
            err = abs(s - c) / abs(c)
            passed.append(err < config.rel_tol)
            signs.append(bool(np.sign(s) == np.sign(c)))
        errors.append(err)
    return VerifyReport(params, closed, fit.s_hat, errors, passed, signs, fit, sol)
