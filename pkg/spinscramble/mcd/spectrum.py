"""
相关阶谱与团簇权重数据结构
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from ..utils.exceptions import ConfigValidationError, NumericalInvariantError


DEFAULT_PHASES = 64
NEGATIVE_CLIP_TOL = 1e-9
SYMMETRY_TOL = 1e-9
CLUSTER_SUM_TOL = 1e-12


@dataclass(frozen=True)
class PhaseGrid:
    M: int = DEFAULT_PHASES
    
    def __post_init__(self):
        if self.M < 2:
            raise ConfigValidationError(f"相位网格点数必须 >= 2, 实际为 {self.M}",
                                        invariant="phase-grid")
    
    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.M) / self.M
    
    def check(self, n_env: int) -> None:
        if self.M < 2 * n_env + 2:
            raise ConfigValidationError(
                f"相位网格 M={self.M} 不足以无混叠分辨 N={n_env} 的全部相关阶 (需要 M >= {2 * n_env + 2})",
                invariant="phase-grid-aliasing",
            )
    
    @classmethod
    def for_size(cls, n_env: int) -> 'PhaseGrid':
        # 不小于 2N+2 的 2 的幂, 下限为默认值
        M = int(2 ** np.ceil(np.log2(2 * n_env + 2)))
        return cls(M=max(DEFAULT_PHASES, M))


@dataclass(frozen=True)
class OrderSpectrum:
    amplitudes: np.ndarray
    T: float = 0.0
    
    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=float).reshape(-1)
        if amplitudes.size % 2 == 0:
            raise ValueError(f"相关阶谱长度必须为奇数 2N+1, 实际为 {amplitudes.size}")
        if np.any(amplitudes < -NEGATIVE_CLIP_TOL):
            raise NumericalInvariantError(
                f"相关阶幅度出现负值 {amplitudes.min():.3e}", invariant="nonnegative-amplitude"
            )
        amplitudes = np.clip(amplitudes, 0.0, None)
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)
        object.__setattr__(self, 'T', float(self.T))
    
    @property
    def n_env(self) -> int:
        return (self.amplitudes.size - 1) // 2
    
    @property
    def orders(self) -> np.ndarray:
        return np.arange(-self.n_env, self.n_env + 1)
    
    def amplitude(self, n: int) -> float:
        if abs(n) > self.n_env:
            return 0.0
        return float(self.amplitudes[n + self.n_env])
    
    def total(self) -> float:
        return float(np.sum(self.amplitudes))
    
    def symmetry_error(self) -> float:
        return float(np.max(np.abs(self.amplitudes - self.amplitudes[::-1])))
    
    def check_symmetry(self) -> None:
        if self.symmetry_error() > SYMMETRY_TOL:
            raise NumericalInvariantError(
                f"相关阶谱不对称: max||C_n|^2 - |C_-n|^2| = {self.symmetry_error():.3e}",
                invariant="spectrum-symmetry",
            )
    
    def moment(self, power: int) -> float:
        return float(np.sum(self.orders.astype(float) ** power * self.amplitudes))
    
    def second_moment(self) -> float:
        return self.moment(2)
    
    def fourth_moment(self) -> float:
        return self.moment(4)
    
    def excess_kurtosis(self) -> float:
        m2 = self.second_moment()
        if m2 <= 0:
            return float('nan')
        return self.fourth_moment() / m2 ** 2 - 3.0
    
    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'T': self.T, 'n': self.orders, 'amplitude': self.amplitudes})


@dataclass(frozen=True)
class ClusterWeights:
    probabilities: np.ndarray
    T: float = 0.0
    
    def __post_init__(self):
        probabilities = np.array(self.probabilities, dtype=float).reshape(-1)
        if np.any(probabilities < 0):
            raise NumericalInvariantError("团簇权重出现负值", invariant="cluster-nonnegative")
        if abs(probabilities.sum() - 1.0) > CLUSTER_SUM_TOL:
            raise NumericalInvariantError(
                f"团簇权重之和为 {probabilities.sum():.15f}, 不等于 1", invariant="cluster-normalized"
            )
        probabilities.setflags(write=False)
        object.__setattr__(self, 'probabilities', probabilities)
        object.__setattr__(self, 'T', float(self.T))
    
    @property
    def n_env(self) -> int:
        return self.probabilities.size - 1
    
    def mean_size(self) -> float:
        return float(np.dot(np.arange(self.probabilities.size), self.probabilities))
    
    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'T': self.T, 'n': np.arange(self.probabilities.size),
                             'probability': self.probabilities})


def mean_spectrum(spectra, T: Optional[float] = None) -> OrderSpectrum:
    spectra = list(spectra)
    stacked = np.stack([s.amplitudes for s in spectra])
    return OrderSpectrum(amplitudes=stacked.mean(axis=0), T=spectra[0].T if T is None else T)
