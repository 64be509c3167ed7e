import cmath
import itertools
import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tttoda.exterior import ext_power_group
from tttoda.roots import coxeter_diagram
from tttoda.stokes import (
    RegionError,
    StokesVector,
    apposition_root_vector,
    binomial_stokes,
    build_W,
    char_poly_coeffs,
    commutator_diagonal,
    params_from_k,
    params_from_m,
    ray_angles,
    steinberg_monodromy,
    stokes_factor,
    stokes_factor_product,
    stokes_from_m,
    x0,
)


def esym_bruteforce(values, k):
    return sum(np.prod([values[i] for i in I]) for I in itertools.combinations(range(len(values)), k))


# --- parameters ---------------------------------------------------------------

def test_symmetric_point():
    p = params_from_m(2, (0, 0, 0), N=3)
    assert p.k == (0.0, 0.0, 0.0) and p.N == 3


def test_cpn_from_k():
    p = params_from_k(4, (0, -1, -1, -1, -1))
    assert p.N == pytest.approx(1.0)
    assert p.m == pytest.approx((-2, -1, 0, 1, 2))


def test_k_from_m_substitution():
    m = (-0.9, -0.3, 0.3, 0.9)
    p = params_from_m(3, m, N=4)
    # 1 - m_i + m_{i-1} = (n+1)/N (k_i + 1) with n+1 = N = 4
    want = [m[3] - m[0], m[0] - m[1], m[1] - m[2], m[2] - m[3]]
    assert p.k == pytest.approx(want)
    assert p.N == pytest.approx(3 + 1 + sum(p.k))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**31 - 1), st.floats(0.5, 5.0))
def test_round_trip(n, seed, N):
    rng = np.random.default_rng(seed)
    # random point of the region: anti-symmetric, steps <= 1, cyclic gap >= 0
    while True:
        half = rng.uniform(-1, 1, size=n + 1)
        m = 0.5 * (half - half[::-1])
        try:
            p = params_from_m(n, m, N=N)
            break
        except RegionError:
            continue
    back = params_from_k(n, p.k)
    assert back.N == pytest.approx(N)
    np.testing.assert_allclose(back.m, m, atol=1e-12)
    np.testing.assert_allclose(params_from_m(n, back.m, N=back.N).k, p.k, atol=1e-12)
    for i in range(1, n + 1):
        assert p.k[i] == pytest.approx(p.k[n - i + 1])


@pytest.mark.parametrize("m, fragment", [
    ((-0.6, 0.6), "m_1 - m_0 <= 1"),
    ((0.6, -0.6), "1 - m_0 + m_1 >= 0"),
    ((0.1, 0.2), "anti-symmetry"),
])
def test_region_violations(m, fragment):
    with pytest.raises(RegionError, match=fragment.replace("+", r"\+")):
        params_from_m(1, m)


def test_k_violations():
    with pytest.raises(RegionError):
        params_from_k(2, (-1.5, 0, 0))
    with pytest.raises(RegionError):
        params_from_k(2, (0, 0, 1))
    with pytest.raises(RegionError, match="N = 0"):
        params_from_k(2, (-1, -1, -1))
    with pytest.raises(RegionError):
        params_from_m(1, (-0.5, 0.5), N=0)


@pytest.mark.parametrize("n", range(1, 9))
def test_boundary_accepted(n):
    p = params_from_m(n, -x0(n))
    assert p.on_boundary


# --- Stokes data ----------------------------------------------------------------

def test_cp1_and_cp3():
    assert stokes_from_m(params_from_m(1, (-0.5, 0.5))).s == (2, 2)[:1]
    assert stokes_from_m(params_from_m(3, (-1.5, -0.5, 0.5, 1.5))).s == (4, 6, 4)


def test_cube_roots():
    assert stokes_from_m(params_from_m(2, (0, 0, 0))).s == (0, 0)


def test_interior_n3_against_trig():
    # z_j = e^{+-0.3 pi i}, e^{+-0.1 pi i}
    s = stokes_from_m(params_from_m(3, (-0.9, -0.3, 0.3, 0.9)))
    s1 = 2 * math.cos(0.3 * math.pi) + 2 * math.cos(0.1 * math.pi)
    s2 = 2 + 2 * math.cos(0.4 * math.pi) + 2 * math.cos(0.2 * math.pi)
    assert s.real() == pytest.approx([s1, s2, s1], abs=1e-12)


@pytest.mark.parametrize("n", range(1, 9))
def test_binomial_exact(n):
    s = stokes_from_m(params_from_m(n, -x0(n)))
    assert s.s == tuple(comb(n + 1, k) for k in range(1, n + 1))
    assert s == binomial_stokes(n) or list(s.s) == list(binomial_stokes(n).s)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_symmetry_and_reality(n, seed):
    rng = np.random.default_rng(seed)
    while True:
        half = rng.uniform(-1.2, 1.2, size=n + 1)
        try:
            p = params_from_m(n, 0.5 * (half - half[::-1]))
            break
        except RegionError:
            continue
    S = stokes_from_m(p)
    for k in range(1, n + 1):
        assert S[k] == S[n + 1 - k]
        assert abs(S[k].imag) < 1e-10
    z = [cmath.exp((2 * p.m[j] + n - 2 * j) * math.pi * 1j / (n + 1)) for j in range(n + 1)]
    for k in range(1, n + 1):
        assert S[k] == pytest.approx(esym_bruteforce(z, k), abs=1e-10)


# --- monodromy ------------------------------------------------------------------

def test_monodromy_cp1():
    M = steinberg_monodromy((2,))
    assert np.trace(M) == pytest.approx(2) and np.linalg.det(M) == pytest.approx(1)
    np.testing.assert_allclose(np.poly(M), [1, -2, 1])


def test_monodromy_rotation():
    M = steinberg_monodromy((0,))
    np.testing.assert_allclose(np.sort_complex(np.linalg.eigvals(M)), [-1j, 1j], atol=1e-14)


def test_monodromy_regular_unipotent():
    M = steinberg_monodromy((4, 6, 4))
    # (z - 1)^4 = z^4 - 4z^3 + 6z^2 - 4z + 1
    np.testing.assert_allclose(np.poly(M), [1, -4, 6, -4, 1], atol=1e-10)
    N = M - np.eye(4)
    assert np.linalg.matrix_rank(N) == 3
    assert np.abs(np.linalg.matrix_power(N, 4)).max() == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**31 - 1))
def test_cross_section_property(n, seed):
    rng = np.random.default_rng(seed)
    s = rng.normal(size=n) + 1j * rng.normal(size=n)
    S = StokesVector(n, tuple(0.5 * (s + s[::-1])))
    M = steinberg_monodromy(S)
    assert np.linalg.det(M) == pytest.approx(1, abs=1e-9)
    for k in range(1, n + 1):
        assert np.trace(ext_power_group(M, k)) == pytest.approx(S[k], abs=1e-8)
    np.testing.assert_allclose(np.poly(M), np.array(char_poly_coeffs(S), dtype=complex), atol=1e-8)
    # regular: every eigenvalue has a one-dimensional eigenspace
    for lam in np.linalg.eigvals(M):
        assert np.linalg.matrix_rank(M - lam * np.eye(n + 1), tol=1e-6) == n


# --- Stokes factors -------------------------------------------------------------

def test_stokes_factor_zero():
    for phi in ray_angles(3):
        np.testing.assert_allclose(stokes_factor(3, (0, 0, 0), phi), np.eye(4), atol=1e-14)


def test_stokes_factor_cp1():
    Q = stokes_factor(1, (2,), 0.0)
    P = apposition_root_vector(1, 1, 0)
    np.testing.assert_allclose(P @ P, 0, atol=1e-14)
    np.testing.assert_allclose(Q, np.eye(2) + 2 * P, atol=1e-13)


def test_stokes_factors_n2_rank_one():
    s = 1.7
    angles = ray_angles(2)
    assert len(angles) == 6
    for phi in angles:
        assert len([p for p in coxeter_diagram(2).rays if abs(p.angle - phi) < 1e-12][0].members) == 1
        Q = stokes_factor(2, (s, s), phi)
        assert np.linalg.matrix_rank(Q - np.eye(3), tol=1e-9) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_stokes_factors_unipotent(n):
    S = binomial_stokes(n)
    for phi in ray_angles(n):
        Q = stokes_factor(n, S, phi)
        N = Q - np.eye(n + 1)
        assert np.abs(np.linalg.matrix_power(N, n + 1)).max() < 1e-8 * max(1, np.abs(N).max()) ** (n + 1)
    assert stokes_factor_product(n, S).shape == (n + 1, n + 1)


def test_stokes_factor_bad_angle():
    with pytest.raises(ValueError):
        stokes_factor(2, (1, 1), 0.123)


# --- the cyclic matrix W --------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_W_at_zero(n):
    W = build_W(np.zeros(n + 1))
    ev = np.linalg.eigvals(W)
    roots = np.exp(2j * np.pi * np.arange(n + 1) / (n + 1))
    for r in roots:
        assert np.abs(ev - r).min() < 1e-12


def test_W_n1():
    W = build_W((-0.3, 0.3))
    assert W[0, 1] == pytest.approx(math.exp(0.6)) and W[1, 0] == pytest.approx(math.exp(-0.6))
    np.testing.assert_allclose(np.poly(W), [1, 0, -1], atol=1e-12)


def test_W_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        build_W((0.1, 0.2, 0.3))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**31 - 1))
def test_commutator_identity(n, seed):
    rng = np.random.default_rng(seed)
    w = rng.normal(size=n + 1)
    w = 0.5 * (w - w[::-1])
    W = build_W(w)
    C = W.T @ W - W @ W.T
    assert np.abs(C - np.diag(np.diag(C))).max() == 0
    assert abs(np.trace(C)) < 1e-10 * max(1, np.abs(C).max())
    want = [-math.exp(2 * (w[(i + 1) % (n + 1)] - w[i])) + math.exp(2 * (w[i] - w[i - 1]))
            for i in range(n + 1)]
    np.testing.assert_allclose(commutator_diagonal(w), want, rtol=1e-13, atol=1e-13)
    coeffs = np.poly(W)
    want_poly = np.zeros(n + 2)
    want_poly[0], want_poly[-1] = 1, -1
    np.testing.assert_allclose(coeffs, want_poly, atol=1e-9 * max(1, np.abs(W).max()) ** (n + 1))
