"""
OTOC 以 Hamming 权重展宽为自变量的重参数化与扰乱免疫因子
"""
from dataclasses import dataclass
from typing import Dict, Optional, Union

import numpy as np
import pandas as pd

from ..otoc.surface import OtocSurface
from ..utils.exceptions import FitError
from ..utils.logger import get_logger
from .fitting import MIN_POINTS, FitResult, fit_exponential, fit_gaussian

logger = get_logger()


DEFAULT_WINDOW_FRACTION = 0.2


@dataclass(frozen=True)
class SpreadCurve:
    tau: float
    T: np.ndarray
    spread: np.ndarray
    F: np.ndarray
    
    def window(self, fraction: float = DEFAULT_WINDOW_FRACTION) -> 'SpreadCurve':
        n = early_window(self.F, fraction)
        return SpreadCurve(self.tau, self.T[:n], self.spread[:n], self.F[:n])
    
    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'tau': self.tau, 'T': self.T, 'spread': self.spread, 'F': self.F})


@dataclass(frozen=True)
class ImmunityFactor:
    tau: float
    kappa: float
    unscrambled: bool
    fit: Optional[FitResult] = None
    
    def to_dict(self) -> dict:
        return {'tau': self.tau, 'kappa': self.kappa, 'unscrambled': self.unscrambled}


def early_window(y, fraction: float = DEFAULT_WINDOW_FRACTION, min_points: int = MIN_POINTS) -> int:
    """Length of the leading run with y >= fraction * y[0], at least ``min_points``."""
    y = np.asarray(y, dtype=float)
    if not 0 <= fraction < 1:
        raise ValueError(f"早期窗口比例必须位于 [0, 1), 实际为 {fraction}")
    below = np.flatnonzero(y < fraction * y[0])
    n = int(below[0]) if below.size else y.size
    return min(max(n, min_points), y.size)


def monotone_prefix(values) -> int:
    values = np.asarray(values, dtype=float)
    steps = np.diff(values) > 0
    stops = np.flatnonzero(~steps)
    return int(stops[0]) + 1 if stops.size else values.size


def reparameterize_otoc(surface: OtocSurface, spread_curve=None,
                        normalized: bool = True) -> Dict[float, SpreadCurve]:
    if spread_curve is None:
        spread_curve = surface.spread
    if spread_curve is None:
        raise ValueError("缺少 Hamming 权重展宽曲线")
    if callable(spread_curve):
        spread = np.array([spread_curve(T) for T in surface.T_grid], dtype=float)
    else:
        spread = np.asarray(spread_curve, dtype=float).reshape(-1)
    if spread.size != surface.T_grid.size:
        raise ValueError(f"展宽曲线长度 {spread.size} 与 T 网格长度 {surface.T_grid.size} 不一致")
    
    # 仅保留展宽严格递增的前缀, 保证 T -> spread 单射
    n = monotone_prefix(spread)
    if n < 2:
        raise FitError("展宽曲线在起始处不单调, 无法重参数化", invariant="spread-injective")
    if n < spread.size:
        logger.info(f"展宽在第 {n} 个时间点后饱和或回落, 截断到单调窗口")
    
    values = surface.normalized if normalized else surface.raw
    return {float(tau): SpreadCurve(float(tau), surface.T_grid[:n].copy(), spread[:n].copy(),
                                    values[i, :n].copy())
            for i, tau in enumerate(surface.tau_grid)}


def compare_decay_models(x, y) -> Dict[str, FitResult]:
    return {'exponential': fit_exponential(x, y), 'gaussian': fit_gaussian(x, y)}


def scrambling_immunity_factor(curves: Dict[float, Union[SpreadCurve, tuple]],
                               n_env: Optional[int] = None,
                               fraction: Optional[float] = DEFAULT_WINDOW_FRACTION,
                               skip_failures: bool = False) -> Dict[float, ImmunityFactor]:
    factors = {}
    for tau, curve in sorted(curves.items()):
        if isinstance(curve, SpreadCurve):
            x, y = curve.spread, curve.F
        else:
            x, y = (np.asarray(v, dtype=float) for v in curve)
        if fraction is not None:
            n = early_window(y, fraction)
            x, y = x[:n], y[:n]
        try:
            fit = fit_exponential(x, y)
        except FitError as e:
            if not skip_failures:
                raise
            logger.warning(f"τ={tau}: 免疫因子拟合失败, 跳过 ({e})")
            continue
        kappa = fit.scale
        unscrambled = bool(n_env is not None and kappa > n_env)
        factors[float(tau)] = ImmunityFactor(float(tau), kappa, unscrambled, fit)
        logger.debug(f"τ={tau}: κ={kappa:.6g}{' (未扰乱)' if unscrambled else ''}")
    return factors


def immunity_frame(factors: Dict[float, ImmunityFactor]) -> pd.DataFrame:
    return pd.DataFrame([f.to_dict() for f in factors.values()],
                        columns=['tau', 'kappa', 'unscrambled'])
