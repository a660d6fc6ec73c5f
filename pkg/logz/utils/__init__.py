"""Utility modules."""
from logz.utils.helpers import (
    ceil_tol,
    num_steps,
    round_up_to_multiple,
    is_multiple,
    stable_mean,
    sample_variance,
    accumulate_log,
    format_float,
)
from logz.utils.parallel import ordered_map, split_blocks
from logz.utils.debug import format_error, log_error, profile_function

__all__ = [
    "ceil_tol",
    "num_steps",
    "round_up_to_multiple",
    "is_multiple",
    "stable_mean",
    "sample_variance",
    "accumulate_log",
    "format_float",
    "ordered_map",
    "split_blocks",
    "format_error",
    "log_error",
    "profile_function",
]
