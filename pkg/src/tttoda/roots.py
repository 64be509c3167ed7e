"""Type A_n roots, the cyclic Coxeter element and Coxeter-plane geometry.

Roots x_i - x_j are projected to the complex plane by evaluating them on
``-d`` where ``d = diag(1, z, ..., z^n)`` and ``z = exp(2 pi i / (n+1))``.
Spin order ``r`` evaluates on ``(-d)^r`` instead.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

ANGLE_TOL = 1e-9
RADIUS_TOL = 1e-9


@dataclass(frozen=True, order=True)
class RootA:
    """The root x_i - x_j of sl(n+1)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError(f"x_{self.i} - x_{self.j} is not a root")

    def __neg__(self) -> RootA:
        return RootA(self.j, self.i)

    @property
    def label(self) -> str:
        return f"x{self.i}-x{self.j}"


@dataclass(frozen=True)
class ParticleClass:
    k: int
    mass: float


@dataclass
class DiagramPoint:
    position: complex
    sources: list  # RootA instances or weight index tuples


@dataclass
class Ray:
    angle: float
    members: list[int]  # indices into CoxeterDiagram.points


@dataclass
class Wheel:
    radius: float
    members: list[int]


@dataclass
class CoxeterDiagram:
    n: int
    spin_order: int
    points: list[DiagramPoint]
    rays: list[Ray] = field(default_factory=list)
    wheels: list[Wheel] = field(default_factory=list)


def _check_rank(n: int) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f"rank n must be an integer >= 1, got {n!r}")


def unit_root(n: int) -> complex:
    return cmath.exp(2j * math.pi / (n + 1))


def roots_An(n: int) -> list[RootA]:
    _check_rank(n)
    return [RootA(i, j) for i in range(n + 1) for j in range(n + 1) if i != j]


def coxeter_image(n: int, root: RootA, times: int = 1) -> RootA:
    """Apply the Coxeter element (n n-1 ... 1 0), i.e. i -> i-1 mod n+1."""
    h = n + 1
    return RootA((root.i - times) % h, (root.j - times) % h)


def coxeter_orbits(n: int) -> list[list[RootA]]:
    """Partition the roots into n orbits of size n+1.

    Orbit ``d - 1`` holds the roots with ``(i - j) mod (n+1) == d``.
    """
    _check_rank(n)
    h = n + 1
    orbits: list[list[RootA]] = []
    for d in range(1, h):
        start = RootA(d, 0)
        orbits.append([coxeter_image(n, start, t) for t in range(h)])
    return orbits


def project_root(n: int, root: RootA, r: int = 1) -> complex:
    _check_rank(n)
    if not 1 <= r <= n:
        raise ValueError(f"spin order r must lie in 1..{n}, got {r}")
    if not (0 <= root.i <= n and 0 <= root.j <= n):
        raise ValueError(f"{root.label} is not a root of A_{n}")
    z = unit_root(n)
    return (-1) ** r * (z ** (r * root.i) - z ** (r * root.j))


def class_index(n: int, d: int) -> int:
    d = abs(d) % (n + 1)
    return min(d, n + 1 - d)


def particle_mass(n: int, k: int) -> float:
    return 2.0 * math.sin(k * math.pi / (n + 1))


def particle_class(n: int, root: RootA) -> ParticleClass:
    k = class_index(n, root.i - root.j)
    return ParticleClass(k, particle_mass(n, k))


def particle_classes(n: int) -> list[ParticleClass]:
    _check_rank(n)
    return [ParticleClass(k, particle_mass(n, k)) for k in range(1, (n + 1) // 2 + 1)]


def spin_table(n: int) -> np.ndarray:
    """Signed r-spins; row k-1, column r-1 holds 2 sin(r k pi / (n+1))."""
    _check_rank(n)
    ks = np.arange(1, (n + 1) // 2 + 1)[:, None]
    rs = np.arange(1, n + 1)[None, :]
    return 2.0 * np.sin(rs * ks * np.pi / (n + 1))


def canonical_angle(zeta: complex) -> float:
    """Argument in (-pi, pi]."""
    a = math.atan2(zeta.imag, zeta.real)
    if a <= -math.pi + ANGLE_TOL:
        a = math.pi
    return a


def _cluster(values: Sequence[float], tol: float) -> list[float]:
    reps: list[float] = []
    for v in sorted(values):
        if not reps or v - reps[-1] > tol:
            reps.append(v)
    return reps


def _nearest(reps: Sequence[float], v: float) -> int:
    return min(range(len(reps)), key=lambda i: abs(reps[i] - v))


def _source_key(src: Any) -> str:
    return src.label if isinstance(src, RootA) else "".join(map(str, src))


def build_diagram(n: int, r: int, items: Sequence[tuple[complex, Any]]) -> CoxeterDiagram:
    """Group projected items into points, rays and wheels.

    Coincident positions (within tolerance) merge into one point carrying
    every source. The origin belongs to no ray and no wheel.
    """
    merged: list[DiagramPoint] = []
    for pos, src in items:
        for p in merged:
            if abs(p.position - pos) < RADIUS_TOL:
                p.sources.append(src)
                break
        else:
            merged.append(DiagramPoint(complex(pos), [src]))

    for p in merged:
        p.sources.sort(key=_source_key)

    def sort_key(p: DiagramPoint):
        if abs(p.position) < RADIUS_TOL:
            return (-math.inf, 0.0, _source_key(p.sources[0]))
        return (round(canonical_angle(p.position), 9), round(abs(p.position), 9),
                _source_key(p.sources[0]))

    merged.sort(key=sort_key)

    nonzero = [idx for idx, p in enumerate(merged) if abs(p.position) >= RADIUS_TOL]
    angles = {idx: canonical_angle(merged[idx].position) for idx in nonzero}
    radii = {idx: abs(merged[idx].position) for idx in nonzero}

    ray_reps = _cluster(list(angles.values()), ANGLE_TOL)
    wheel_reps = _cluster(list(radii.values()), RADIUS_TOL)
    rays = [Ray(a, []) for a in ray_reps]
    wheels = [Wheel(rad, []) for rad in wheel_reps]
    for idx in nonzero:
        rays[_nearest(ray_reps, angles[idx])].members.append(idx)
        wheels[_nearest(wheel_reps, radii[idx])].members.append(idx)
    return CoxeterDiagram(n, r, merged, rays, wheels)


def coxeter_diagram(n: int, r: int = 1) -> CoxeterDiagram:
    """Projections of all n(n+1) roots into the r-th Coxeter plane."""
    items = [(project_root(n, b, r), b) for b in roots_An(n)]
    return build_diagram(n, r, items)


def ray_roots(n: int, phi: float) -> list[RootA]:
    """Roots whose r=1 projection lies on the ray with argument ``phi``."""
    out = []
    for b in roots_An(n):
        a = canonical_angle(project_root(n, b, 1))
        diff = abs((a - phi + math.pi) % (2 * math.pi) - math.pi)
        if diff < ANGLE_TOL:
            out.append(b)
    return out


# Module constants: the cyclic matrices and the Vandermonde frame change.

def E_plus(n: int) -> np.ndarray:
    """E_{n,0} + sum_i E_{i,i+1}."""
    h = n + 1
    E = np.zeros((h, h))
    for i in range(n):
        E[i, i + 1] += 1.0
    E[n, 0] += 1.0
    return E


def E_minus(n: int) -> np.ndarray:
    return E_plus(n).T.copy()


def vandermonde(n: int) -> np.ndarray:
    idx = np.arange(n + 1)
    return np.exp(2j * np.pi * np.outer(idx, idx) / (n + 1))


def d_matrix(n: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(n + 1) / (n + 1)))


def elementary(n: int, i: int, j: int) -> np.ndarray:
    E = np.zeros((n + 1, n + 1))
    E[i, j] = 1.0
    return E


def mass_operator(n: int) -> np.ndarray:
    """Matrix of w -> [E+, [E-, w]] on traceless diagonals.

    Basis: H_j = E_jj - E_{j+1,j+1}, j = 0..n-1.
    """
    _check_rank(n)
    Ep, Em = E_plus(n), E_minus(n)
    basis = [elementary(n, j, j) - elementary(n, j + 1, j + 1) for j in range(n)]
    B = np.array([np.diag(H) for H in basis]).T  # (n+1) x n
    cols = []
    for H in basis:
        inner = Em @ H - H @ Em
        image = Ep @ inner - inner @ Ep
        offdiag = image - np.diag(np.diag(image))
        if np.abs(offdiag).max() > 1e-12:
            raise ArithmeticError("[E+, [E-, w]] left the diagonal subalgebra")
        coeffs, *_ = np.linalg.lstsq(B, np.diag(image), rcond=None)
        cols.append(coeffs)
    return np.array(cols).T


def mass_operator_spectrum(n: int) -> np.ndarray:
    ev = np.linalg.eigvals(mass_operator(n))
    return np.sort(ev.real)
