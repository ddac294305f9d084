"""
工具模块
"""
from .logger import setup_logger, get_logger, add_file_handler
from .decorators import timing, stage_timer
from .parallel import parallel_map, pairwise_sum, pairwise_mean, memory_estimate, reduction_check
from .exceptions import (
    SpinScrambleError,
    ConfigValidationError,
    CapExceededError,
    NumericalInvariantError,
    GeometryError,
    FitError,
)

__all__ = [
    'setup_logger', 'get_logger', 'add_file_handler',
    'timing', 'stage_timer',
    'parallel_map', 'pairwise_sum', 'pairwise_mean', 'memory_estimate', 'reduction_check',
    'SpinScrambleError', 'ConfigValidationError', 'CapExceededError',
    'NumericalInvariantError', 'GeometryError', 'FitError',
]
