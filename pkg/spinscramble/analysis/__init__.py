"""
分析模块: 曲线拟合, OTOC 重参数化, 免疫因子与能级统计
"""
from .fitting import FitFamily, FitResult, fit_gaussian, fit_exponential, fit_linear
from .reparameterize import (
    SpreadCurve,
    ImmunityFactor,
    DEFAULT_WINDOW_FRACTION,
    early_window,
    monotone_prefix,
    reparameterize_otoc,
    compare_decay_models,
    scrambling_immunity_factor,
    immunity_frame,
)
from .levels import (
    SpacingHistogram,
    wigner_surmise,
    wigner_cdf,
    poisson_density,
    ks_distance_wigner,
    ks_distance_poisson,
    ratio_statistic,
    unfold_spacings,
    magnetization_sectors,
    sector_block,
    sector_levels,
    level_spacings,
    pooled_spacings,
    sample_goe_levels,
    sample_poisson_levels,
    random_coupling_set,
)

__all__ = [
    'FitFamily', 'FitResult', 'fit_gaussian', 'fit_exponential', 'fit_linear',
    'SpreadCurve', 'ImmunityFactor', 'DEFAULT_WINDOW_FRACTION', 'early_window',
    'monotone_prefix', 'reparameterize_otoc', 'compare_decay_models',
    'scrambling_immunity_factor', 'immunity_frame',
    'SpacingHistogram', 'wigner_surmise', 'wigner_cdf', 'poisson_density',
    'ks_distance_wigner', 'ks_distance_poisson', 'ratio_statistic', 'unfold_spacings',
    'magnetization_sectors', 'sector_block', 'sector_levels', 'level_spacings',
    'pooled_spacings', 'sample_goe_levels', 'sample_poisson_levels', 'random_coupling_set',
]
