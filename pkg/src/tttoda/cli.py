"""Command-line interface: ``tttoda {coxeter,polytope,stokes,solve,verify}``.

JSON goes to stdout (or --out), sorted keys, complex numbers as [re, im].
Exit codes: 0 success, 1 failed verification, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .functor import soliton_graph, weight_label
from .radial import ConvergenceError, SolverConfig, verify_asymptotics
from .roots import RootA, coxeter_diagram
from .stokes import (
    RegionError,
    StokesVector,
    binomial_stokes,
    params_from_k,
    params_from_m,
    steinberg_monodromy,
    stokes_factor,
    stokes_factor_product,
    stokes_from_m,
)
from .suites import run_suite
from .svg import RenderSpec, render_coxeter, render_polytope

log = logging.getLogger("tttoda")

DIGITS = 12


class UsageError(Exception):
    pass


def clean(obj):
    """Make ``obj`` JSON-ready: rounded floats, complex as [re, im]."""
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [clean(obj.real), clean(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        v = round(float(obj), DIGITS)
        return 0.0 if v == 0 else v
    if isinstance(obj, RootA):
        return obj.label
    return obj


def dumps(obj) -> str:
    return json.dumps(clean(obj), sort_keys=True, indent=2) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"could not parse {what} list {text!r}")


def need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required")
    return value


def resolve_params(args):
    n = need(args, "n")
    if args.preset == "cpn":
        return params_from_k(n, [0.0] + [-1.0] * n)
    if args.preset is not None:
        raise UsageError(f"unknown preset {args.preset!r} (expected 'cpn')")
    if args.m is None:
        raise UsageError("give --m or --preset cpn")
    return params_from_m(n, parse_floats(args.m, "m"), args.N)


def diagram_json(d) -> dict:
    return {
        "n": d.n,
        "spin": d.spin_order,
        "points": [{"position": p.position,
                    "sources": [s.label if isinstance(s, RootA) else weight_label(s)
                                for s in p.sources]} for p in d.points],
        "rays": [{"angle": r.angle, "members": r.members} for r in d.rays],
        "wheels": [{"radius": w.radius, "members": w.members} for w in d.wheels],
    }


def render_spec(args) -> RenderSpec:
    return RenderSpec(labels=not args.no_labels)


def cmd_coxeter(args) -> int:
    n = need(args, "n")
    if not 1 <= args.spin <= n:
        raise UsageError(f"--spin must lie in 1..{n}")
    d = coxeter_diagram(n, args.spin)
    if args.format == "svg":
        emit(render_coxeter(d, render_spec(args)), args.out)
    else:
        emit(dumps(diagram_json(d)), args.out)
    return 0


def cmd_polytope(args) -> int:
    n, k = need(args, "n"), need(args, "k")
    if not 1 <= k <= n:
        raise UsageError(f"--k must lie in 1..{n}")
    if args.s is not None:
        vals = parse_floats(args.s, "s")
        if len(vals) != n:
            raise UsageError(f"--s needs {n} values, got {len(vals)}")
        S = StokesVector(n, tuple(vals))
    elif args.preset in (None, "binomial", "cpn"):
        S = binomial_stokes(n)
    else:
        raise UsageError(f"unknown preset {args.preset!r} (expected 'binomial')")
    g = soliton_graph(n, k, S)
    if args.format == "svg":
        emit(render_polytope(g, render_spec(args)), args.out)
        return 0
    d = g.distinct_positions()
    doc = {
        "n": n,
        "k": k,
        "s": list(S.s),
        "vertices": [{"label": weight_label(v), "position": p}
                     for v, p in zip(g.vertices, g.positions)],
        "positions": [{"position": p.position,
                       "label": "|".join(weight_label(s) for s in p.sources)}
                      for p in d.points],
        "edges": [{"from": weight_label(g.vertices[e.u]), "to": weight_label(g.vertices[e.v]),
                   "root": e.root.label, "particle": e.particle, "mass": e.mass,
                   "multiplicity": e.multiplicity} for e in g.edges],
    }
    emit(dumps(doc), args.out)
    return 0


def cmd_stokes(args) -> int:
    p = resolve_params(args)
    S = stokes_from_m(p)
    doc = {"n": p.n, "m": p.m, "k": p.k, "N": p.N, "s": list(S.s)}
    if args.monodromy:
        doc["monodromy"] = steinberg_monodromy(S)
        doc["stokes_factors"] = {
            f"{phi:.12f}": stokes_factor(p.n, S, phi)
            for phi in [r.angle for r in coxeter_diagram(p.n, 1).rays]}
        doc["stokes_factor_product"] = stokes_factor_product(p.n, S)
    emit(dumps(doc), args.out)
    return 0


def solver_config(args) -> SolverConfig:
    cfg = SolverConfig()
    for name in ("xmin", "xmax", "nodes", "tol", "template"):
        val = getattr(args, name)
        if val is not None:
            setattr(cfg, {"xmin": "x_min", "xmax": "x_max"}.get(name, name), val)
    if args.window is not None:
        w = parse_floats(args.window, "window")
        if len(w) != 2:
            raise UsageError("--window takes two values a,b")
        cfg.window = (w[0], w[1])
    return cfg


def solution_csv(sol) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    n = sol.params.n
    writer.writerow(["x"] + [f"w_{i}" for i in range(n + 1)])
    for x, row in zip(sol.x, sol.w):
        writer.writerow([repr(float(x))] + [repr(float(v)) for v in row])
    return buf.getvalue()


def cmd_solve(args) -> int:
    p = resolve_params(args)
    cfg = solver_config(args)
    try:
        rep = verify_asymptotics(p, cfg)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sol = rep.solution
    if args.out:
        Path(args.out).write_text(solution_csv(sol))
    doc = {
        "params": {"n": p.n, "m": p.m, "k": p.k, "N": p.N},
        "grid": {"x_min": cfg.x_min, "x_max": cfg.x_max, "nodes": cfg.nodes},
        "newton_iterations": sol.newton_iterations,
        "max_residual": sol.max_residual,
        "boundary_flux_error": sol.boundary_flux_error(),
        "fit": {"template": rep.fit.template, "window": list(cfg.window),
                "s_hat": rep.s_hat, "spread": rep.fit.spread, "sign": rep.fit.sign()},
        "s_closed_form": rep.s_closed,
        "relative_error": rep.errors,
        "sign_agrees": rep.sign_agrees,
        "passed": rep.ok,
    }
    sys.stdout.write(dumps(doc))
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite)
    ok = all(r["passed"] for r in results.values())
    emit(dumps({"suite": args.suite, "passed": ok, "checks": results}), args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tttoda", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=False):
        p.add_argument("--n", type=int)
        p.add_argument("--out")
        if fmt:
            p.add_argument("--format", choices=["svg", "json"], default="json")
            p.add_argument("--no-labels", action="store_true")

    p = sub.add_parser("coxeter", help="roots in the r-th Coxeter plane")
    common(p, fmt=True)
    p.add_argument("--spin", type=int, default=1)
    p.set_defaults(func=cmd_coxeter)

    p = sub.add_parser("polytope", help="soliton polytope of Gr_k(C^(n+1))")
    common(p, fmt=True)
    p.add_argument("--k", type=int)
    p.add_argument("--preset", help="'binomial' (default)")
    p.add_argument("--s", help="explicit Stokes data s_1,...,s_n")
    p.set_defaults(func=cmd_polytope)

    for name, func, helptext in (("stokes", cmd_stokes, "closed-form Stokes data"),
                                 ("solve", cmd_solve, "numerical radial solution and fit")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--m", help="comma-separated m_0,...,m_n")
        p.add_argument("--N", type=float, help="scale N for m -> k (default n+1)")
        p.add_argument("--preset", help="'cpn' for m = -x0")
        p.set_defaults(func=func)
        if name == "stokes":
            p.add_argument("--monodromy", action="store_true",
                           help="also print M, the Stokes factors and their ordered product")
        else:
            p.add_argument("--xmin", type=float)
            p.add_argument("--xmax", type=float)
            p.add_argument("--nodes", type=int)
            p.add_argument("--tol", type=float)
            p.add_argument("--window", help="fit window a,b in x")
            p.add_argument("--template", choices=["f", "bessel"])

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["satake", "asymptotics", "algebra", "all"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


LIST_FLAGS = ("--m", "--s", "--window")


def join_list_flags(argv):
    """Glue ``--m -0.5,0.5`` into ``--m=-0.5,0.5``; argparse would read it as a flag."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in LIST_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(join_list_flags(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, RegionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
