"""
能级统计: 磁化扇区, 展开, Wigner surmise 与 KS 距离
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy import linalg, stats

from ..core.hamiltonians import CouplingSet
from ..core.operators import HERMITIAN_TOL, OperatorMatrix
from ..utils.exceptions import ConfigValidationError, NumericalInvariantError
from ..utils.logger import get_logger

logger = get_logger()


UNFOLD_DEGREE = 7
EDGE_TRIM = 0.05
MIN_LEVELS = 50
DEFAULT_BINS = 30
HISTOGRAM_RANGE = (0.0, 4.0)
AUTO_SECTOR = "auto"


@dataclass
class SpacingHistogram:
    spacings: np.ndarray
    bins: int = DEFAULT_BINS
    edges: np.ndarray = field(init=False)
    density: np.ndarray = field(init=False)
    
    def __post_init__(self):
        self.spacings = np.asarray(self.spacings, dtype=float).reshape(-1)
        if np.any(self.spacings < 0):
            raise NumericalInvariantError("展开后的能级间距出现负值", invariant="spacing-nonnegative")
        self.density, self.edges = np.histogram(self.spacings, bins=self.bins,
                                                range=HISTOGRAM_RANGE, density=True)
    
    @property
    def size(self) -> int:
        return self.spacings.size
    
    @property
    def mean(self) -> float:
        return float(np.mean(self.spacings))
    
    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])
    
    def ks_wigner(self) -> float:
        return ks_distance_wigner(self.spacings)
    
    def ks_poisson(self) -> float:
        return ks_distance_poisson(self.spacings)
    
    @classmethod
    def pooled(cls, histograms: Iterable['SpacingHistogram'], bins: int = DEFAULT_BINS) -> 'SpacingHistogram':
        return cls(np.concatenate([h.spacings for h in histograms]), bins=bins)
    
    def metadata(self) -> dict:
        return {'bins': self.bins, 'range': list(HISTOGRAM_RANGE), 'n_spacings': self.size,
                'edges': self.edges.tolist(), 'density': self.density.tolist()}


def wigner_surmise(s):
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("Wigner surmise 仅对 s >= 0 定义")
    value = 0.5 * np.pi * s * np.exp(-0.25 * np.pi * s ** 2)
    return float(value) if value.ndim == 0 else value


def wigner_cdf(s):
    s = np.clip(np.asarray(s, dtype=float), 0.0, None)
    return 1.0 - np.exp(-0.25 * np.pi * s ** 2)


def poisson_density(s):
    s = np.asarray(s, dtype=float)
    return np.where(s >= 0, np.exp(-s), 0.0)


def ks_distance_wigner(spacings) -> float:
    return float(stats.kstest(np.asarray(spacings, dtype=float), wigner_cdf).statistic)


def ks_distance_poisson(spacings) -> float:
    return float(stats.kstest(np.asarray(spacings, dtype=float), 'expon').statistic)


def ratio_statistic(levels) -> float:
    """Mean of min/max of consecutive raw spacings; needs no unfolding."""
    spacings = np.diff(np.sort(np.asarray(levels, dtype=float)))
    left, right = spacings[:-1], spacings[1:]
    upper = np.maximum(left, right)
    keep = upper > 0
    return float(np.mean(np.minimum(left, right)[keep] / upper[keep]))


def unfold_spacings(levels, degree: int = UNFOLD_DEGREE, trim: float = EDGE_TRIM) -> np.ndarray:
    levels = np.sort(np.asarray(levels, dtype=float))
    n = levels.size
    if n < MIN_LEVELS:
        raise ValueError(f"能级数 {n} 少于 {MIN_LEVELS}, 统计量无意义")
    staircase = np.arange(1, n + 1, dtype=float)
    smooth = Polynomial.fit(levels, staircase, deg=degree)
    unfolded = np.sort(smooth(levels))
    cut = int(trim * n)
    unfolded = unfolded[cut:n - cut]
    spacings = np.diff(unfolded)
    return spacings / np.mean(spacings)


def magnetization_sectors(n_sites: int) -> np.ndarray:
    indices = np.arange(2 ** n_sites)
    down = np.zeros(indices.size, dtype=int)
    for site in range(n_sites):
        down += (indices >> site) & 1
    return n_sites - 2 * down


def default_sector(n_sites: int) -> int:
    return 0 if n_sites % 2 == 0 else 1


def sector_block(h: OperatorMatrix, sector: Union[int, str, None] = AUTO_SECTOR,
                 parity: Optional[str] = AUTO_SECTOR) -> np.ndarray:
    if h.hermiticity_error() > HERMITIAN_TOL:
        raise NumericalInvariantError("能级统计要求厄米矩阵", invariant="hermitian-input")
    matrix = h.matrix
    if sector is None:
        return matrix
    n_sites = h.n_sites if h.n_sites is not None else int(round(np.log2(h.dim)))
    if sector == AUTO_SECTOR:
        sector = default_sector(n_sites)
    sector = int(sector)
    indices = np.flatnonzero(magnetization_sectors(n_sites) == sector)
    if indices.size == 0:
        raise ValueError(f"磁化扇区 {sector} 为空")
    block = matrix[np.ix_(indices, indices)]
    
    if sector != 0 or parity is None:
        return block
    # 零磁化扇区中全局自旋翻转 Π σ_X 与 H 对易, 投影到偶(奇)宇称子空间
    sign = -1.0 if parity == "odd" else 1.0
    position = {state: i for i, state in enumerate(indices)}
    mask = 2 ** n_sites - 1
    partners = np.array([position[state ^ mask] for state in indices])
    representatives = np.flatnonzero(indices < indices[partners])
    a = representatives
    b = partners[representatives]
    projected = 0.5 * (block[np.ix_(a, a)] + sign * block[np.ix_(a, b)]
                       + sign * block[np.ix_(b, a)] + block[np.ix_(b, b)])
    return projected


def level_spacings(h: OperatorMatrix, sector: Union[int, str, None] = AUTO_SECTOR,
                   parity: Optional[str] = AUTO_SECTOR, degree: int = UNFOLD_DEGREE,
                   trim: float = EDGE_TRIM, bins: int = DEFAULT_BINS) -> SpacingHistogram:
    block = sector_block(h, sector, parity)
    if block.shape[0] < MIN_LEVELS:
        raise ConfigValidationError(f"扇区仅含 {block.shape[0]} 个能级, 少于 {MIN_LEVELS}",
                                    invariant="sector-size")
    levels = linalg.eigvalsh(block)
    return SpacingHistogram(unfold_spacings(levels, degree, trim), bins=bins)


def sector_levels(h: OperatorMatrix, sector: Union[int, str, None] = AUTO_SECTOR,
                  parity: Optional[str] = AUTO_SECTOR) -> np.ndarray:
    return linalg.eigvalsh(sector_block(h, sector, parity))


def sample_goe_levels(n: int, seed: Optional[int] = None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    return linalg.eigvalsh(0.5 * (a + a.T))


def sample_poisson_levels(n: int, seed: Optional[int] = None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.sort(rng.uniform(0.0, float(n), size=n))


def random_coupling_set(n_env: int, seed: Optional[int] = None) -> CouplingSet:
    # 全连接高斯随机同核耦合, 无几何对称性
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.standard_normal((n_env, n_env)), k=1)
    return CouplingSet(hetero=np.zeros(n_env), homo=upper + upper.T)


def pooled_spacings(hamiltonians: Iterable[OperatorMatrix],
                    sector: Union[int, str, None] = AUTO_SECTOR,
                    parity: Optional[str] = AUTO_SECTOR,
                    bins: int = DEFAULT_BINS) -> SpacingHistogram:
    histograms: List[SpacingHistogram] = [level_spacings(h, sector, parity, bins=bins)
                                          for h in hamiltonians]
    logger.info(f"合并 {len(histograms)} 个样本的能级间距")
    return SpacingHistogram.pooled(histograms, bins=bins)
