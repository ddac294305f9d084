"""
相关阶谱提取, 团簇权重与 Hamming 权重展宽
"""
from typing import Optional

import numpy as np
from scipy.special import comb

from ..core.hamiltonians import CouplingSet, TogglingParams
from ..utils.exceptions import NumericalInvariantError
from .signal import EchoOracle, correlation_probabilities, mcd_signal_grid
from .spectrum import ClusterWeights, OrderSpectrum, PhaseGrid


IMAG_RESIDUE_TOL = 1e-9
NORMALIZATION_TOL = 1e-6
DEFAULT_FLOOR = 1e-4


def spectrum_from_signal(signal: np.ndarray, n_env: int, T: float = 0.0) -> OrderSpectrum:
    # C_n = (1/M) Σ_m S(φ_m) e^{-i n φ_m}
    M = len(signal)
    coefficients = np.fft.fft(np.asarray(signal, dtype=float)) / M
    orders = np.arange(-n_env, n_env + 1)
    selected = coefficients[orders % M]
    residue = np.max(np.abs(selected.imag))
    if residue > IMAG_RESIDUE_TOL:
        raise NumericalInvariantError(
            f"DFT 虚部残差 {residue:.3e} 超过 {IMAG_RESIDUE_TOL:g}", invariant="imaginary-residue"
        )
    return OrderSpectrum(amplitudes=selected.real, T=T)


def extract_spectrum(c: CouplingSet, T: float, grid: Optional[PhaseGrid] = None,
                     alpha: float = 1.0, oracle: Optional[EchoOracle] = None) -> OrderSpectrum:
    grid = grid or PhaseGrid.for_size(c.n_env)
    grid.check(c.n_env)
    if oracle is not None:
        signal = oracle.signals(T, grid.angles)
    else:
        signal = mcd_signal_grid(c, T, grid.angles, alpha)
    return spectrum_from_signal(signal, c.n_env, T)


def extract_spectrum_oracle(c: CouplingSet, T: float, grid: Optional[PhaseGrid] = None,
                            tog: Optional[TogglingParams] = None) -> OrderSpectrum:
    return extract_spectrum(c, T, grid, oracle=EchoOracle(c, tog))


def poisson_binomial_pmf(probabilities: np.ndarray) -> np.ndarray:
    # 生成函数 Π_j (1 - p_j + p_j x) 的系数
    pmf = np.array([1.0])
    for p in np.asarray(probabilities, dtype=float):
        step = np.zeros(pmf.size + 1)
        step[:-1] = pmf * (1.0 - p)
        step[1:] += pmf * p
        pmf = step
    return pmf


def cluster_weights(c: CouplingSet, T: float, alpha: float = 1.0) -> ClusterWeights:
    pmf = poisson_binomial_pmf(correlation_probabilities(c, T, alpha))
    return ClusterWeights(probabilities=pmf, T=T)


def hamming_weight_spread(s: OrderSpectrum) -> float:
    total = s.total()
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NumericalInvariantError(
            f"相关阶谱未归一化: Σ|C_n|^2 = {total:.12f}", invariant="spectrum-normalized"
        )
    return s.second_moment()


def analytic_spread(c: CouplingSet, T: float, alpha: float = 1.0) -> float:
    return float(np.sum(correlation_probabilities(c, T, alpha)))


def largest_order(s: OrderSpectrum, floor: float = DEFAULT_FLOOR) -> int:
    if floor <= 0:
        raise ValueError(f"检测阈值必须 > 0, 实际为 {floor}")
    orders = s.orders[s.amplitudes >= floor]
    if orders.size == 0:
        return 0
    return int(np.max(np.abs(orders)))


def order_spectrum_from_clusters(weights: ClusterWeights) -> OrderSpectrum:
    # n 自旋团簇按 binomial(n, k)/2^n 分配到相关阶 n - 2k
    n_env = weights.n_env
    amplitudes = np.zeros(2 * n_env + 1)
    for n, p in enumerate(weights.probabilities):
        if p == 0:
            continue
        k = np.arange(n + 1)
        amplitudes[n - 2 * k + n_env] += p * comb(n, k) / 2.0 ** n
    return OrderSpectrum(amplitudes=amplitudes, T=weights.T)
