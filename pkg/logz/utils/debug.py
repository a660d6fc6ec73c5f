"""
Debugging utilities for logz.

This module provides error formatting for the command line and a timing
decorator for the expensive library entry points.

Example:
    >>> from logz.utils.debug import format_error, profile_function
    >>> print(format_error(error))
"""

import functools
import json
import logging
import time
import traceback
from datetime import datetime, timezone
from typing import Any, Dict, Optional


logger = logging.getLogger(__name__)


def format_timestamp() -> str:
    """
    Get current timestamp in ISO format.

    Returns:
        str: ISO formatted timestamp
    """
    return datetime.now(timezone.utc).isoformat()


def format_error(
    error: Exception,
    include_traceback: bool = True
) -> Dict[str, Any]:
    """
    Format exception into readable error information.

    Args:
        error: Exception to format
        include_traceback: Whether to include full traceback

    Returns:
        dict: Formatted error information

    Example:
        >>> try:
        ...     build_schedule(2, 1.0, 1.0, 0.0)
        ... except ValidationException as e:
        ...     error_info = format_error(e, include_traceback=False)
    """
    error_dict = {
        "error_type": type(error).__name__,
        "message": str(error),
        "timestamp": format_timestamp(),
    }

    exit_code = getattr(error, "exit_code", None)
    if exit_code is not None:
        error_dict["exit_code"] = exit_code

    stage = getattr(error, "stage", None)
    if stage is not None:
        error_dict["stage"] = stage

    if include_traceback:
        error_dict["traceback"] = "".join(
            traceback.format_exception(type(error), error, error.__traceback__)
        )

    return error_dict


def log_error(
    error: Exception,
    context: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Log exception with context information.

    Args:
        error: Exception to log
        context: Optional context dictionary

    Example:
        >>> try:
        ...     pipeline.run(rng)
        ... except StageFailureException as e:
        ...     log_error(e, context={"command": "estimate"})
    """
    error_info = format_error(error)

    log_message = f"Error: {error_info['error_type']} - {error_info['message']}"

    if context:
        log_message += f" | Context: {json.dumps(context, default=str)}"

    logger.error(log_message)
    logger.debug(f"Full traceback: {error_info.get('traceback', 'N/A')}")



def profile_function(func):
    """
    Decorator to profile a function's execution time.

    Args:
        func: Function to profile

    Returns:
        Decorated function

    Example:
        >>> @profile_function
        ... def run_stage():
        ...     pass
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()

        result = func(*args, **kwargs)

        elapsed_time = (time.perf_counter() - start_time) * 1000

        logger.debug(
            f"Function '{func.__qualname__}' took {elapsed_time:.2f}ms"
        )

        return result

    return wrapper
