"""
OTOC 模块: 环境扰动下中心自旋回波的时间无序关联
"""
from .surface import OtocPoint, OtocSurface, Normalization, ENSEMBLE_LABEL
from .echo import OtocOracle, otoc, otoc_dense, otoc_commutator_check
from .ensemble import ensemble_otoc

__all__ = [
    'OtocPoint', 'OtocSurface', 'Normalization', 'ENSEMBLE_LABEL',
    'OtocOracle', 'otoc', 'otoc_dense', 'otoc_commutator_check', 'ensemble_otoc',
]
