"""Randomized network coding subspace toolkit."""

from _ncsim import (  # noqa: F401
    Field,
    Network,
    RowSpace,
    SessionMetrics,
    SimError,
    Trace,
    communication_cost,
    distance,
    gaussian_binomial,
    infer_general_json,
    infer_tree_json,
    locate_single_adversary,
    make_line,
    make_random_dag,
    make_random_tree,
    run,
    run_session,
    set_distance,
    subspace_bits,
    transfer_rank,
    verify_suites,
)

__all__ = [
    "Field", "Network", "RowSpace", "SessionMetrics", "SimError", "Trace",
    "communication_cost", "distance", "gaussian_binomial", "infer_general_json",
    "infer_tree_json", "locate_single_adversary", "make_line", "make_random_dag",
    "make_random_tree", "run", "run_session", "set_distance", "subspace_bits",
    "transfer_rank", "verify_suites",
]
