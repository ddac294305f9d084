"""
OTOC 数据结构: 单点与 (T, τ) 网格曲面
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from ..utils.exceptions import NumericalInvariantError


ENSEMBLE_LABEL = "ensemble"
BOUND_TOL = 1e-9


class Normalization(Enum):
    POINTWISE = "pointwise"
    SCALAR = "scalar"


@dataclass(frozen=True)
class OtocPoint:
    T: float
    tau: float
    F: float
    source: Union[int, str] = ENSEMBLE_LABEL
    
    def __post_init__(self):
        if abs(self.F) > 1.0 + BOUND_TOL:
            raise NumericalInvariantError(f"OTOC 超出 [-1, 1]: F = {self.F:.12f}",
                                          invariant="otoc-bound")
    
    def to_dict(self) -> dict:
        return {'T': self.T, 'tau': self.tau, 'F': self.F, 'source': self.source}


@dataclass
class OtocSurface:
    T_grid: np.ndarray
    tau_grid: np.ndarray
    raw: np.ndarray
    reference: np.ndarray
    normalization: Normalization = Normalization.POINTWISE
    source: Union[int, str] = ENSEMBLE_LABEL
    spread: Optional[np.ndarray] = None
    metadata: dict = field(default_factory=dict)
    
    def __post_init__(self):
        self.T_grid = np.asarray(self.T_grid, dtype=float)
        self.tau_grid = np.asarray(self.tau_grid, dtype=float)
        self.raw = np.asarray(self.raw, dtype=float)
        self.reference = np.asarray(self.reference, dtype=float)
        self.normalization = Normalization(self.normalization)
        if self.raw.shape != (self.tau_grid.size, self.T_grid.size):
            raise ValueError(f"OTOC 曲面形状 {self.raw.shape} 与网格 "
                             f"({self.tau_grid.size}, {self.T_grid.size}) 不一致")
        if self.reference.shape != (self.T_grid.size,):
            raise ValueError("τ=0 参考曲线长度与 T 网格不一致")
        if np.any(np.abs(self.raw) > 1.0 + BOUND_TOL):
            raise NumericalInvariantError("OTOC 曲面存在 |F| > 1 的点", invariant="otoc-bound")
    
    @property
    def normalized(self) -> np.ndarray:
        if self.normalization == Normalization.POINTWISE:
            values = self.raw / self.reference[None, :]
        else:
            values = self.raw / float(np.mean(self.reference))
        # τ=0 行按构造恒为 1
        values[self.tau_grid == 0, :] = 1.0
        return values
    
    def curve(self, tau: float, normalized: bool = True) -> np.ndarray:
        matches = np.flatnonzero(np.isclose(self.tau_grid, tau))
        if matches.size == 0:
            raise KeyError(f"τ = {tau} 不在网格中")
        values = self.normalized if normalized else self.raw
        return values[matches[0]].copy()
    
    def points(self, normalized: bool = True) -> List[OtocPoint]:
        values = self.normalized if normalized else self.raw
        return [OtocPoint(T=float(T), tau=float(tau), F=float(values[i, j]), source=self.source)
                for i, tau in enumerate(self.tau_grid) for j, T in enumerate(self.T_grid)]
    
    def to_frame(self) -> pd.DataFrame:
        tau, T = np.meshgrid(self.tau_grid, self.T_grid, indexing='ij')
        return pd.DataFrame({'tau': tau.ravel(), 'T': T.ravel(),
                             'F_raw': self.raw.ravel(), 'F_normalized': self.normalized.ravel()})
    
    def spread_frame(self) -> pd.DataFrame:
        if self.spread is None:
            raise ValueError("曲面未携带 Hamming 权重展宽数据")
        normalized = self.normalized
        rows = []
        for i, tau in enumerate(self.tau_grid):
            for j, T in enumerate(self.T_grid):
                rows.append({'tau': float(tau), 'T': float(T), 'spread': float(self.spread[j]),
                             'F': float(normalized[i, j])})
        return pd.DataFrame(rows, columns=['tau', 'T', 'spread', 'F'])
