"""coverkit: capacitated set cover via max-flow greedy, small
epsilon-nets for axis-parallel rectangles, and hitting sets by iterative
reweighting — with built-in exact oracles for every nontrivial claim."""

from ._kernels import BACKEND as kernel_backend
from .epsnet import NetConfig, PointSet, build_epsnet
from .errors import (
    BgDivergenceError,
    BudgetExceededError,
    CoverkitError,
    DegenerateInputError,
    InfeasibleError,
    MalformedInputError,
    NetSampleFailureError,
)
from .flowcheck import is_feasible, marginal_gain, max_cover_value
from .greedy import harmonic, solve_capacitated, solve_uncapacitated
from .hitting import RectSet, solve_hitting, verify_hitting, weighted_net
from .setsystem import (
    AssignmentCover,
    SetCoverInstance,
    SetEntry,
    cover_cost,
    is_complete,
    load_instance,
    make_instance,
    save_instance,
    validate_cover,
)

__version__ = "0.1.0"

__all__ = [
    "AssignmentCover",
    "BgDivergenceError",
    "BudgetExceededError",
    "CoverkitError",
    "DegenerateInputError",
    "InfeasibleError",
    "MalformedInputError",
    "NetConfig",
    "NetSampleFailureError",
    "PointSet",
    "RectSet",
    "SetCoverInstance",
    "SetEntry",
    "build_epsnet",
    "cover_cost",
    "harmonic",
    "is_complete",
    "is_feasible",
    "kernel_backend",
    "load_instance",
    "make_instance",
    "marginal_gain",
    "max_cover_value",
    "save_instance",
    "solve_capacitated",
    "solve_hitting",
    "solve_uncapacitated",
    "validate_cover",
    "verify_hitting",
    "weighted_net",
    "__version__",
]
