"""The k-th exterior power applied to the same Toda data.

Weights of the k-th exterior power are index sets {i_1 < ... < i_k}; their
Coxeter-plane images are -(z^i_1 + ... + z^i_k). Two weights are joined by a
soliton when they differ by a single root.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from .exterior import exact_rank, ext_power_algebra, ext_power_group, subsets
from .roots import RootA, build_diagram, class_index, particle_mass, unit_root
from .stokes import StokesLike, as_stokes, binomial_stokes, steinberg_monodromy

WeightIndexSet = tuple  # sorted tuple of distinct ints in 0..n


def _check_nk(n: int, k: int) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f"rank n must be an integer >= 1, got {n!r}")
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")


def weights_of_ext(n: int, k: int) -> list[WeightIndexSet]:
    _check_nk(n, k)
    return list(subsets(n + 1, k))


def project_weight(n: int, S: Sequence[int]) -> complex:
    z = unit_root(n)
    return -sum(z ** i for i in S)


def weight_label(S: Sequence[int]) -> str:
    return "".join(str(i) for i in S)


@dataclass
class SolitonEdge:
    u: int  # vertex indices, u < v
    v: int
    root: RootA  # weight(u) - weight(v)
    particle: int
    mass: float
    multiplicity: complex


@dataclass
class SolitonGraph:
    n: int
    k: int
    vertices: list[WeightIndexSet]
    positions: list[complex]
    edges: list[SolitonEdge] = field(default_factory=list)

    def find_edge(self, a: Sequence[int], b: Sequence[int]) -> SolitonEdge | None:
        ia = self.vertices.index(tuple(a))
        ib = self.vertices.index(tuple(b))
        u, v = min(ia, ib), max(ia, ib)
        for e in self.edges:
            if (e.u, e.v) == (u, v):
                return e
        return None

    def degree(self, idx: int) -> int:
        return sum(1 for e in self.edges if idx in (e.u, e.v))

    def distinct_positions(self):
        """Diagram of vertex positions, with coincident weights merged."""
        return build_diagram(self.n, 1, list(zip(self.positions, self.vertices)))


def soliton_graph(n: int, k: int, S: StokesLike | None = None) -> SolitonGraph:
    """Soliton polytope of the k-th exterior power.

    Defaults to the binomial Stokes data of the m = -x0 solution.
    """
    _check_nk(n, k)
    S = binomial_stokes(n) if S is None else as_stokes(S, n)
    verts = weights_of_ext(n, k)
    pos = [project_weight(n, V) for V in verts]
    graph = SolitonGraph(n, k, verts, pos)
    for u in range(len(verts)):
        su = set(verts[u])
        for v in range(u + 1, len(verts)):
            sv = set(verts[v])
            if len(su & sv) != k - 1:
                continue
            (a,) = su - sv
            (b,) = sv - su
            root = RootA(a, b)
            c = class_index(n, a - b)
            graph.edges.append(SolitonEdge(u, v, root, c, particle_mass(n, c), S[c]))
    return graph


@dataclass(frozen=True)
class EtaConnection:
    """Holomorphic data eta(z) dz / lambda with cyclic entries z^k_i.

    The 1/lambda factor is carried as metadata only.
    """

    n: int
    k: tuple[float, ...]
    spectral_factor: str = "1/lambda"

    def __post_init__(self):
        if len(self.k) != self.n + 1:
            raise ValueError(f"need n+1 = {self.n + 1} exponents, got {len(self.k)}")
        for i in range(1, self.n + 1):
            if abs(self.k[i] - self.k[self.n - i + 1]) > 1e-12:
                raise ValueError(f"symmetry k_{i} = k_{self.n - i + 1} violated")


def cpn(n: int) -> EtaConnection:
    return EtaConnection(n, (0.0,) + (-1.0,) * n)


def eta_matrix(conn: EtaConnection, z: float, dz_over_z: bool = False) -> np.ndarray:
    """Evaluate eta at a positive real z.

    ``dz_over_z=True`` returns z * eta(z), the presentation against dz/z
    (for the CP^n data: a single entry z, the others 1).
    """
    if not z > 0:
        raise ValueError(f"eta is evaluated on the positive real axis only, got z={z}")
    n = conn.n
    shift = 1.0 if dz_over_z else 0.0
    E = np.zeros((n + 1, n + 1))
    E[0, n] = z ** (conn.k[0] + shift)
    for i in range(1, n + 1):
        E[i, i - 1] = z ** (conn.k[i] + shift)
    return E


def _sort_complex(v: np.ndarray, digits: int = 7) -> np.ndarray:
    keys = [(round(x.real, digits) + 0.0, round(x.imag, digits) + 0.0) for x in v]
    order = sorted(range(len(v)), key=lambda i: keys[i])
    return np.asarray(v)[order]


def ksum_spectrum(eigs: Sequence[complex], k: int) -> np.ndarray:
    """All sums of k eigenvalues at distinct positions (brute force)."""
    eigs = list(eigs)
    return np.array([sum(eigs[i] for i in I) for I in subsets(len(eigs), k)])


def unipotent_jordan_type(n: int, k: int) -> list[int]:
    """Jordan block sizes of the k-th exterior power of one (n+1)-block.

    Weights of the principal sl2 on the exterior power are sums of k distinct
    entries of (n, n-2, ..., -n); strings are peeled from the top weight.
    """
    weights = Counter(sum(n - 2 * i for i in I) for I in subsets(n + 1, k))
    blocks = []
    while weights:
        top = max(weights)
        blocks.append(top + 1)
        for w in range(top, -top - 1, -2):
            weights[w] -= 1
            if weights[w] == 0:
                del weights[w]
    return sorted(blocks, reverse=True)


def jordan_ranks(blocks: Sequence[int], j: int) -> int:
    """rank (A - I)^j for a unipotent A with the given block sizes."""
    return sum(max(b - j, 0) for b in blocks)


@dataclass
class SatakeReport:
    n: int
    k: int
    checks: dict = field(default_factory=dict)  # name -> (passed, detail)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())


def satake_check(n: int, k: int, S: StokesLike | None = None,
                 zs: Sequence[float] = (0.5, 1.0, 2.0), tol: float = 1e-8) -> SatakeReport:
    """Check the exterior-power functor on monodromy and holomorphic data.

    (a) trace of the k-th power of M equals s_k;
    (b) the spectrum of the derivation action of the CP^n eta(z) equals all
        k-fold sums of distinct eigenvalues of eta(z);
    (c) for binomial S, the k-th power of M is unipotent with the Jordan type
        of the principal sl2 on that exterior power (one block iff k in {1, n}).
    """
    _check_nk(n, k)
    S = binomial_stokes(n) if S is None else as_stokes(S, n)
    rep = SatakeReport(n, k)

    M = steinberg_monodromy(S)
    tr = complex(np.trace(ext_power_group(M, k)))
    err = abs(tr - S[k])
    rep.checks["trace"] = (err < tol, f"|tr - s_{k}| = {err:.3e}")

    conn = cpn(n)
    worst = 0.0
    for z in zs:
        eta = eta_matrix(conn, z, dz_over_z=True)
        got = _sort_complex(np.linalg.eigvals(ext_power_algebra(eta, k)))
        want = _sort_complex(ksum_spectrum(np.linalg.eigvals(eta), k))
        worst = max(worst, float(np.abs(got - want).max()))
    rep.checks["spectrum"] = (worst < tol, f"max spectral mismatch {worst:.3e}")

    binom = binomial_stokes(n)
    if all(abs(S[i] - binom[i]) < tol for i in range(1, n + 1)):
        Mx = steinberg_monodromy(binom, exact=True)
        Tk = ext_power_group(Mx, k)
        dim = comb(n + 1, k)
        D = Tk - np.identity(dim, dtype=int).astype(object)
        blocks = unipotent_jordan_type(n, k)
        P = np.identity(dim, dtype=int).astype(object)
        ranks, expected = [], []
        for j in range(1, max(blocks) + 1):
            P = P.dot(D)
            ranks.append(exact_rank(P.tolist()))
            expected.append(jordan_ranks(blocks, j))
        ok = ranks == expected and ranks[-1] == 0
        rep.checks["unipotent"] = (ok, f"blocks {blocks}; ranks {ranks} vs {expected}")
    return rep

