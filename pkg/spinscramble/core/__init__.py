"""
量子核心模块: 自旋算符代数, 哈密顿量与精确传播
"""
from .operators import (
    Axis,
    SpinSystem,
    OperatorMatrix,
    pauli,
    initial_state,
    collective_x,
    partial_trace_environment,
    DEFAULT_ORACLE_CAP,
)
from .hamiltonians import (
    CouplingSet,
    CouplingUnits,
    TogglingMode,
    TogglingParams,
    build_h_se,
    build_h_e,
    mrev8_scaling_factor,
    total_environment_magnetization,
)
from .propagation import EigenPropagator, propagator, conjugate, commutator

__all__ = [
    'Axis', 'SpinSystem', 'OperatorMatrix', 'pauli', 'initial_state', 'collective_x',
    'partial_trace_environment', 'DEFAULT_ORACLE_CAP',
    'CouplingSet', 'CouplingUnits', 'TogglingMode', 'TogglingParams',
    'build_h_se', 'build_h_e', 'mrev8_scaling_factor', 'total_environment_magnetization',
    'EigenPropagator', 'propagator', 'conjugate', 'commutator',
]
