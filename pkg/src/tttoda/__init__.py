"""Stokes data, Coxeter-plane geometry and radial solutions of the A_n tt*-Toda equations."""
from .functor import (
    EtaConnection,
    SolitonGraph,
    cpn,
    eta_matrix,
    project_weight,
    satake_check,
    soliton_graph,
    weights_of_ext,
)
from .exterior import ext_power_algebra, ext_power_group
from .radial import (
    AsymptoticFit,
    RadialGrid,
    RadialSolution,
    SolverConfig,
    asymptotic_components,
    extract_stokes,
    residual,
    solve_radial,
    verify_asymptotics,
)
from .roots import (
    CoxeterDiagram,
    ParticleClass,
    RootA,
    coxeter_diagram,
    coxeter_orbits,
    mass_operator_spectrum,
    particle_class,
    project_root,
    roots_An,
    spin_table,
)
from .stokes import (
    RegionError,
    StokesVector,
    TodaParams,
    build_W,
    params_from_k,
    params_from_m,
    steinberg_monodromy,
    stokes_factor,
    stokes_from_m,
)

__version__ = "0.1.0"
