import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tttoda.roots import (
    E_minus,
    E_plus,
    RootA,
    canonical_angle,
    coxeter_diagram,
    coxeter_image,
    coxeter_orbits,
    d_matrix,
    mass_operator_spectrum,
    particle_class,
    particle_classes,
    project_root,
    roots_An,
    spin_table,
    vandermonde,
)


@pytest.mark.parametrize("n, count", [(1, 2), (2, 6), (5, 30)])
def test_root_count(n, count):
    roots = roots_An(n)
    assert len(roots) == count
    assert set(roots) == {-b for b in roots}


def test_roots_n1():
    assert set(roots_An(1)) == {RootA(0, 1), RootA(1, 0)}


def test_rank_errors():
    with pytest.raises(ValueError):
        roots_An(0)
    with pytest.raises(ValueError):
        RootA(2, 2)
    with pytest.raises(ValueError):
        project_root(3, RootA(0, 1), r=4)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_coxeter_orbits_partition(n):
    orbits = coxeter_orbits(n)
    assert len(orbits) == n
    assert all(len(o) == n + 1 for o in orbits)
    flat = [b for o in orbits for b in o]
    assert sorted(flat) == sorted(roots_An(n))
    for o in orbits:
        assert len({(b.i - b.j) % (n + 1) for b in o}) == 1
        # closed under the Coxeter element
        assert {coxeter_image(n, b) for b in o} == set(o)


def test_orbits_d_and_complement_share_wheel():
    n = 5
    radii = {}
    for o in coxeter_orbits(n):
        d = (o[0].i - o[0].j) % (n + 1)
        radii[d] = sorted(round(abs(project_root(n, b)), 12) for b in o)
    for d in range(1, n + 1):
        assert radii[d] == radii[n + 1 - d]


def test_projection_examples():
    assert project_root(5, RootA(0, 3)) == pytest.approx(-2.0)
    assert abs(project_root(2, RootA(1, 2))) == pytest.approx(math.sqrt(3))
    for b in roots_An(5):
        if abs(b.i - b.j) == 2:
            assert abs(project_root(5, b)) == pytest.approx(math.sqrt(3), abs=1e-14)


@pytest.mark.parametrize("n", range(1, 13))
def test_projection_modulus(n):
    for b in roots_An(n):
        want = 2 * math.sin(abs(b.i - b.j) * math.pi / (n + 1))
        assert abs(abs(project_root(n, b)) - want) < 1e-13


def test_projection_spin_modulus():
    n = 6
    for r in range(1, n + 1):
        for b in roots_An(n):
            want = 2 * abs(math.sin(r * (b.i - b.j) * math.pi / (n + 1)))
            assert abs(abs(project_root(n, b, r)) - want) < 1e-13


def test_projection_matches_root_evaluated_on_minus_d():
    # beta(-d^r) computed from the diagonal matrix itself
    n = 4
    d = np.diag(d_matrix(n))
    for r in (1, 2, 3):
        D = (-d) ** r
        for b in roots_An(n):
            assert project_root(n, b, r) == pytest.approx(D[b.i] - D[b.j], abs=1e-13)


@given(st.integers(1, 10), st.data())
def test_projection_odd(n, data):
    roots = roots_An(n)
    b = data.draw(st.sampled_from(roots))
    r = data.draw(st.integers(1, n))
    assert project_root(n, -b, r) == pytest.approx(-project_root(n, b, r), abs=1e-13)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_coxeter_rotation_permutes_points(n):
    rot = cmath.exp(-2j * math.pi / (n + 1))
    pts = [project_root(n, b) for b in roots_An(n)]
    for b in roots_An(n):
        image = project_root(n, coxeter_image(n, b))
        assert image == pytest.approx(rot * project_root(n, b), abs=1e-13)
    rotated = [rot * p for p in pts]
    for q in rotated:
        assert min(abs(q - p) for p in pts) < 1e-12


@pytest.mark.parametrize("n, root, k, mass", [
    (5, RootA(0, 1), 1, 1.0),
    (5, RootA(0, 2), 2, math.sqrt(3)),
    (5, RootA(0, 3), 3, 2.0),
    (5, RootA(0, 5), 1, 1.0),
])
def test_particle_class(n, root, k, mass):
    pc = particle_class(n, root)
    assert pc.k == k
    assert pc.mass == pytest.approx(mass, abs=1e-14)


@pytest.mark.parametrize("n", range(1, 10))
def test_particle_classes(n):
    pcs = particle_classes(n)
    assert len(pcs) == (n + 1) // 2
    masses = [p.mass for p in pcs]
    assert masses == sorted(masses) and len(set(masses)) == len(masses)
    assert {particle_class(n, b).k for b in roots_An(n)} == {p.k for p in pcs}
    for k in range(1, n + 1):
        assert 2 * math.sin(k * math.pi / (n + 1)) == pytest.approx(
            2 * math.sin((n + 1 - k) * math.pi / (n + 1)))


def test_spin_table():
    t5 = spin_table(5)
    assert t5.shape == (3, 5)
    assert t5[0, 0] == pytest.approx(1.0)
    assert t5[2, 1] == pytest.approx(0.0, abs=1e-14)
    assert spin_table(3)[1, 2] == pytest.approx(-2.0)
    np.testing.assert_allclose(t5[:, 0], [p.mass for p in particle_classes(5)])


def _brute_points(n, r=1):
    z = cmath.exp(2j * math.pi / (n + 1))
    return [(-1) ** r * (z ** (r * i) - z ** (r * j))
            for i in range(n + 1) for j in range(n + 1) if i != j]


def test_diagram_n2():
    d = coxeter_diagram(2)
    brute = _brute_points(2)
    assert len(d.points) == len(brute) == 6
    assert len(d.wheels) == 1 and d.wheels[0].radius == pytest.approx(math.sqrt(3))
    assert len(d.rays) == len({round(canonical_angle(p), 9) for p in brute}) == 6


def test_diagram_n5_wheels():
    d = coxeter_diagram(5)
    assert [w.radius for w in d.wheels] == pytest.approx([1.0, math.sqrt(3), 2.0])


def test_diagram_n1():
    d = coxeter_diagram(1)
    assert sorted(p.position.real for p in d.points) == pytest.approx([-2.0, 2.0])
    assert len(d.wheels) == 1 and len(d.rays) == 2


@pytest.mark.parametrize("n, r", [(n, r) for n in range(1, 9) for r in (1, 2, 3) if r <= n])
def test_diagram_invariants(n, r):
    d = coxeter_diagram(n, r)
    nonzero = [i for i, p in enumerate(d.points) if abs(p.position) > 1e-9]
    on_rays = sorted(i for ray in d.rays for i in ray.members)
    on_wheels = sorted(i for w in d.wheels for i in w.members)
    assert on_rays == nonzero and on_wheels == nonzero
    # antipodal rays
    angles = [ray.angle for ray in d.rays]
    for a in angles:
        opp = a - math.pi if a > 0 else a + math.pi
        assert min(abs(opp - b) for b in angles) < 1e-9
    assert sum(len(p.sources) for p in d.points) == n * (n + 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_wheel_population(n):
    # n odd: each wheel carries n+1 distinct positions; n even: 2(n+1)
    d = coxeter_diagram(n)
    for w in d.wheels:
        count = n + 1 if n % 2 else 2 * (n + 1)
        assert len(w.members) == count
        angles = sorted(canonical_angle(d.points[i].position) for i in w.members)
        gaps = np.diff(angles + [angles[0] + 2 * math.pi])
        np.testing.assert_allclose(gaps, 2 * math.pi / count, atol=1e-9)


def test_vandermonde_diagonalises_E_plus():
    for n in (1, 3, 5):
        Om = vandermonde(n)
        np.testing.assert_allclose(np.linalg.inv(Om) @ E_plus(n) @ Om, d_matrix(n), atol=1e-12)
        np.testing.assert_allclose(E_minus(n), E_plus(n).T)


def _mass_oracle(n):
    """Dense eigensolve of the map on all diagonals, trace direction removed."""
    Ep, Em = E_plus(n), E_minus(n)
    cols = []
    for j in range(n + 1):
        w = np.zeros((n + 1, n + 1))
        w[j, j] = 1.0
        inner = Em @ w - w @ Em
        cols.append(np.diag(Ep @ inner - inner @ Ep))
    ev = np.sort(np.linalg.eigvals(np.array(cols).T).real)
    assert abs(ev[0]) < 1e-12  # the identity
    return ev[1:]


def test_mass_spectrum_small():
    assert mass_operator_spectrum(1) == pytest.approx([4.0])
    assert mass_operator_spectrum(2) == pytest.approx([3.0, 3.0])
    assert mass_operator_spectrum(5) == pytest.approx([1, 1, 3, 3, 4])


@pytest.mark.parametrize("n", range(1, 9))
def test_mass_spectrum_matches_oracle(n):
    np.testing.assert_allclose(mass_operator_spectrum(n), _mass_oracle(n), atol=1e-10)
    want = np.sort(4 * np.sin(np.arange(1, n + 1) * np.pi / (n + 1)) ** 2)
    np.testing.assert_allclose(mass_operator_spectrum(n), want, atol=1e-10)
