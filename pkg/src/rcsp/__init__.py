"""Resource-constrained shortest paths: exact labeling, preprocessing,
approximation schemes, approximate Pareto frontiers, ranked paths and a
small column generation loop."""
from .core import (
    Arc, Instance, InstanceError, Mode, Path, PathOverflowError, Wait,
    enumerate_all_paths, feasible_paths, final_to_windows, is_feasible, make_path,
    path_consumption, topological_order,
)
from .io import InstanceFormatError, dump, load, parse_instance, serialize_instance
from .generate import desk_suite, random_instance
from .preprocess import pretraitement, reduce_windows, shortest_path_tree
from .labeling import (
    acyclic_labeling, dominates, label_correcting, label_setting, pareto_filter, solve_exact,
)
from .fptas import approx_test, bounds_lorenz_raz, dicho, exact_cost_dp, fptas_solve, scale
from .pareto import (
    MAX, MIN, MultiInstance, acyclic_m, criterion_bounds, pareto_frontier_approx,
    pareto_frontier_oracle, quadrillage, scale_m, test_m,
)
from .kpaths import first_feasible_by_rank, k_shortest
from .colgen import colgen_loop, full_enumeration_lp, reduced_costs, solve_master_lp

__version__ = "0.1.0"
