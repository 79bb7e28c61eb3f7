"""Group-action query-complexity laboratory (python bindings)."""

from symq._core import (
    GroupAction,
    PartialFn,
    SymqError,
    __version__,
    apply_perm,
    approx_degree,
    cost_lower_proxy,
    det_query_complexity,
    enumerate_small_range,
    fn,
    group,
    hard_distribution,
    is_symmetric_under,
    shuffle_simulate,
    small_range_count,
    symmetrize,
)

__all__ = [
    "GroupAction",
    "PartialFn",
    "SymqError",
    "__version__",
    "apply_perm",
    "approx_degree",
    "cost_lower_proxy",
    "det_query_complexity",
    "enumerate_small_range",
    "fn",
    "group",
    "hard_distribution",
    "is_symmetric_under",
    "shuffle_simulate",
    "small_range_count",
    "symmetrize",
]
