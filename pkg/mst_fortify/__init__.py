from .approx import DiscreteSolution, budgeted_approx, targeted_approx
from .config import Limits, current_limits
from .decomposition import decompose_and_verify, verify_legacy_lift
from .errors import FortifyError
from .flows import FlowNetwork, max_flow, min_cost_flow, mmf_upgrade, msp_upgrade
from .graph import Perturbation, WeightedGraph, compact, coverage, mst_edges, mst_weight, sm_eq
from .instance import format_instance, parse_instance, parse_network
from .raise_mst import BreakpointCurve, Trace, curve, invert_curve, raise_mst
from .strength import min_inc_cost_set, strength, tolerance
from .uniform import (
    min_i_cut,
    uniform_budgeted_exact,
    uniform_halfeps_approx,
    uniform_targeted_exact,
)

__ALL__ = [
    BreakpointCurve,
    DiscreteSolution,
    FlowNetwork,
    FortifyError,
    Limits,
    Perturbation,
    Trace,
    WeightedGraph,
    budgeted_approx,
    compact,
    coverage,
    current_limits,
    curve,
    decompose_and_verify,
    format_instance,
    invert_curve,
    max_flow,
    min_cost_flow,
    min_i_cut,
    min_inc_cost_set,
    mmf_upgrade,
    msp_upgrade,
    mst_edges,
    mst_weight,
    parse_instance,
    parse_network,
    raise_mst,
    sm_eq,
    strength,
    targeted_approx,
    tolerance,
    uniform_budgeted_exact,
    uniform_halfeps_approx,
    uniform_targeted_exact,
    verify_legacy_lift,
]
