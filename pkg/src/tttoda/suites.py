"""Named verification checks behind ``tttoda verify``.

Each check returns (passed, detail dict). Suites map to sorted check names.
"""
from __future__ import annotations

from math import comb

import numpy as np

from .exterior import ext_power_group
from .functor import satake_check, soliton_graph
from .radial import SolverConfig, toda_rhs, toda_rhs_via_W, verify_asymptotics
from .roots import mass_operator_spectrum
from .stokes import (
    StokesVector,
    char_poly_coeffs,
    params_from_m,
    steinberg_monodromy,
    stokes_from_m,
    x0,
)


def random_symmetric_stokes(n: int, rng: np.random.Generator) -> StokesVector:
    s = rng.normal(size=n) + 1j * rng.normal(size=n)
    s = 0.5 * (s + s[::-1])
    return StokesVector(n, tuple(complex(x) for x in s))


def random_antisymmetric(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    w = rng.normal(scale=scale, size=n + 1)
    return 0.5 * (w - w[::-1])


def check_binomial_stokes(max_n: int = 8):
    worst = 0.0
    for n in range(1, max_n + 1):
        s = stokes_from_m(params_from_m(n, -x0(n)))
        worst = max(worst, max(abs(s[k] - comb(n + 1, k)) for k in range(1, n + 1)))
    return worst < 1e-10, {"max_error": worst}


def check_cross_section(max_n: int = 6, samples: int = 200, seed: int = 0):
    rng = np.random.default_rng(seed)
    worst_trace = worst_poly = 0.0
    for n in range(1, max_n + 1):
        for _ in range(samples):
            S = random_symmetric_stokes(n, rng)
            M = steinberg_monodromy(S)
            for k in range(1, n + 1):
                worst_trace = max(worst_trace, abs(np.trace(ext_power_group(M, k)) - S[k]))
            poly = np.poly(M)
            want = np.array(char_poly_coeffs(S), dtype=complex)
            worst_poly = max(worst_poly, float(np.abs(poly - want).max()))
    ok = worst_trace < 1e-8 and worst_poly < 1e-8
    return ok, {"max_trace_error": worst_trace, "max_charpoly_error": worst_poly}


def check_mass_spectrum(max_n: int = 8):
    worst = 0.0
    for n in range(1, max_n + 1):
        want = np.sort(4 * np.sin(np.arange(1, n + 1) * np.pi / (n + 1)) ** 2)
        worst = max(worst, float(np.abs(mass_operator_spectrum(n) - want).max()))
    return worst < 1e-10, {"max_error": worst}


def check_offshell_identity(max_n: int = 6, samples: int = 100, seed: int = 1):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(1, max_n + 1):
        for _ in range(samples):
            w = random_antisymmetric(n, rng)
            a, b = toda_rhs(w), toda_rhs_via_W(w)
            worst = max(worst, float(np.abs(a - b).max() / max(1.0, np.abs(a).max())))
    return worst < 1e-12, {"max_relative_gap": worst}


def check_gr36():
    g = soliton_graph(5, 3, (6, 15, 20, 15, 6))
    diagram = g.distinct_positions()
    radii = sorted(round(abs(p.position), 9) for p in diagram.points)
    e = g.find_edge((0, 2, 5), (2, 4, 5))
    ok = (len(diagram.points) == 13
          and radii == [0.0] + [1.0] * 6 + [2.0] * 6
          and e is not None and e.particle == 2 and abs(e.mass - 3 ** 0.5) < 1e-12
          and e.multiplicity == 15
          and g.find_edge((0, 2, 4), (1, 3, 5)) is None
          and g.find_edge((0, 3, 4), (2, 4, 5)) is None)
    return ok, {"distinct_positions": len(diagram.points)}


def check_satake(max_n: int = 6):
    failures = []
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            rep = satake_check(n, k)
            if not rep.passed:
                failures.append({"n": n, "k": k,
                                 "checks": {name: d for name, (ok, d) in rep.checks.items()
                                            if not ok}})
    return not failures, {"cases": sum(range(1, max_n + 1)), "failures": failures}


ASYMPTOTIC_CASES = {
    "asymptotics_n1_cp1": (1, (-0.5, 0.5)),
    "asymptotics_n2": (2, (-0.5, 0.0, 0.5)),
    "asymptotics_n3_interior": (3, (-0.9, -0.3, 0.3, 0.9)),
    "asymptotics_zero": (3, (0.0, 0.0, 0.0, 0.0)),
}


def check_asymptotics(n, m, config: SolverConfig | None = None):
    rep = verify_asymptotics(params_from_m(n, m), config)
    return rep.ok, {
        "s_closed": rep.s_closed,
        "s_hat": rep.s_hat,
        "errors": rep.errors,
        "spread": rep.fit.spread,
        "sign_agrees": rep.sign_agrees,
    }


SUITES = {
    "algebra": {
        "binomial_stokes": check_binomial_stokes,
        "cross_section": check_cross_section,
        "gr36_example": check_gr36,
        "mass_spectrum": check_mass_spectrum,
        "offshell_identity": check_offshell_identity,
    },
    "satake": {"satake_exterior_powers": check_satake},
    "asymptotics": {name: (lambda n=n, m=m: check_asymptotics(n, m))
                    for name, (n, m) in ASYMPTOTIC_CASES.items()},
}


def run_suite(name: str) -> dict:
    if name == "all":
        checks = {k: v for suite in SUITES.values() for k, v in suite.items()}
    elif name in SUITES:
        checks = SUITES[name]
    else:
        raise KeyError(f"unknown suite {name!r}")
    results = {}
    for check in sorted(checks):
        ok, detail = checks[check]()
        results[check] = {"passed": bool(ok), "detail": detail}
    return results
