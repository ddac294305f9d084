"""
分子几何模块: 结构, 取向采样与偶极耦合
"""
from .structure import (
    Site,
    Geometry,
    GAMMA_P31,
    GAMMA_H1,
    dipolar_prefactor,
    parse_geometry,
    load_geometry,
    model_geometry,
)
from .orientation import Orientation, EnsembleSpec, sample_orientations
from .couplings import (
    MAGIC_ANGLE,
    dipolar_coupling,
    couplings_for,
    connected_group_size,
    connected_group_curve,
    ensemble_couplings,
)

__all__ = [
    'Site', 'Geometry', 'GAMMA_P31', 'GAMMA_H1', 'dipolar_prefactor', 'parse_geometry',
    'load_geometry', 'model_geometry',
    'Orientation', 'EnsembleSpec', 'sample_orientations',
    'MAGIC_ANGLE', 'dipolar_coupling', 'couplings_for', 'connected_group_size',
    'connected_group_curve', 'ensemble_couplings',
]
