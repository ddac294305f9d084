"""
MCD 模块: 多自旋关联探测回波, 相关阶谱与团簇权重
"""
from .spectrum import PhaseGrid, OrderSpectrum, ClusterWeights, mean_spectrum, DEFAULT_PHASES
from .signal import (
    EchoOracle,
    mcd_signal,
    mcd_signal_grid,
    mcd_signal_oracle,
    precession_angles,
    correlation_probabilities,
)
from .orders import (
    extract_spectrum,
    extract_spectrum_oracle,
    spectrum_from_signal,
    cluster_weights,
    poisson_binomial_pmf,
    hamming_weight_spread,
    analytic_spread,
    largest_order,
    order_spectrum_from_clusters,
)
from .ensemble import (
    orientation_spectra,
    average_spectra,
    ensemble_mcd,
    spread_statistics,
    ensemble_spread_statistics,
    spectrum_metrics,
    spectra_frame,
)

__all__ = [
    'PhaseGrid', 'OrderSpectrum', 'ClusterWeights', 'mean_spectrum', 'DEFAULT_PHASES',
    'EchoOracle', 'mcd_signal', 'mcd_signal_grid', 'mcd_signal_oracle', 'precession_angles',
    'correlation_probabilities',
    'extract_spectrum', 'extract_spectrum_oracle', 'spectrum_from_signal', 'cluster_weights',
    'poisson_binomial_pmf', 'hamming_weight_spread', 'analytic_spread', 'largest_order',
    'order_spectrum_from_clusters',
    'orientation_spectra', 'average_spectra', 'ensemble_mcd', 'spread_statistics',
    'ensemble_spread_statistics', 'spectrum_metrics', 'spectra_frame',
]
