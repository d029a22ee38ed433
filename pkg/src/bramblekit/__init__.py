"""Brambles, path systems and congestion-bounded disjoint paths in digraphs."""

from bramblekit.certificates import (
    Bramble,
    PathSystem,
    bramble_order_exact,
    build_path_system,
    congestion,
    verify_bramble,
    verify_path_system,
)
from bramblekit.congestion import build_reduced_instance, route_via_bramble, translate_solution
from bramblekit.ddp import DdpInstance, DdpSolution, Infeasible, dichotomy_check, solve_exact, verify_solution
from bramblekit.digraph import (
    Digraph,
    is_k_strong,
    local_connectivity,
    menger_paths_and_separator,
    strong_components,
    strong_connectivity,
)
from bramblekit.errors import BramblekitError, CapExceeded, GuardExceeded, PreconditionError
from bramblekit.lll import degeneracy, rainbow_independent_set
from bramblekit.pipeline import classify_case, compute_parameters

__version__ = "0.1.0"

__all__ = [
    "Bramble",
    "BramblekitError",
    "CapExceeded",
    "DdpInstance",
    "DdpSolution",
    "Digraph",
    "GuardExceeded",
    "Infeasible",
    "PathSystem",
    "PreconditionError",
    "bramble_order_exact",
    "build_path_system",
    "build_reduced_instance",
    "classify_case",
    "compute_parameters",
    "congestion",
    "degeneracy",
    "dichotomy_check",
    "is_k_strong",
    "local_connectivity",
    "menger_paths_and_separator",
    "rainbow_independent_set",
    "route_via_bramble",
    "solve_exact",
    "strong_components",
    "strong_connectivity",
    "translate_solution",
    "verify_bramble",
    "verify_path_system",
    "verify_solution",
]
