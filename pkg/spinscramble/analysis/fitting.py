"""
曲线拟合: 高斯, 指数与线性模型
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict

import numpy as np
from scipy.optimize import curve_fit
from sklearn.metrics import r2_score

from ..utils.exceptions import FitError
from ..utils.logger import get_logger

logger = get_logger()


MIN_POINTS = 4
CONSTANT_TOL = 1e-12
FIT_TOL = 1e-14


class FitFamily(Enum):
    GAUSSIAN = "gaussian"
    EXPONENTIAL = "exponential"
    LINEAR = "linear"


@dataclass(frozen=True)
class FitResult:
    family: FitFamily
    amplitude: float
    scale: float
    residual_norm: float
    r2: float
    n_points: int
    
    @property
    def decays(self) -> bool:
        return np.isfinite(self.scale)
    
    def predict(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.family == FitFamily.LINEAR:
            return self.amplitude + self.scale * x
        if not np.isfinite(self.scale):
            return np.full_like(x, self.amplitude)
        if self.family == FitFamily.EXPONENTIAL:
            return self.amplitude * np.exp(-x / self.scale)
        return self.amplitude * np.exp(-x ** 2 / (2.0 * self.scale ** 2))
    
    def to_dict(self) -> Dict:
        return {
            'model': self.family.value,
            'amplitude': self.amplitude,
            'scale': self.scale,
            'residual_norm': self.residual_norm,
            'r2': self.r2,
            'n_points': self.n_points,
        }


def _prepare(x, y, min_points: int = MIN_POINTS, positive: bool = True):
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.size != y.size:
        raise FitError(f"x 与 y 长度不一致: {x.size} != {y.size}", invariant="fit-input")
    if x.size < min_points:
        raise FitError(f"拟合至少需要 {min_points} 个点, 实际 {x.size} 个", invariant="fit-input")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise FitError("拟合数据包含非有限值", invariant="fit-input")
    if positive and np.any(y <= 0):
        raise FitError("对数线性化要求 y > 0", invariant="fit-positive")
    return x, y


def _result(family: FitFamily, amplitude: float, scale: float, x: np.ndarray,
            y: np.ndarray) -> FitResult:
    result = FitResult(family, float(amplitude), float(scale), 0.0, 1.0, x.size)
    prediction = result.predict(x)
    residual = float(np.linalg.norm(y - prediction))
    if not np.isfinite(residual):
        raise FitError("拟合残差非有限", invariant="fit-residual")
    r2 = 1.0 if np.ptp(y) == 0 and residual == 0 else float(r2_score(y, prediction))
    return FitResult(family, float(amplitude), float(scale), residual, r2, x.size)


def _fit_decay(family: FitFamily, x, y, feature: Callable[[np.ndarray], np.ndarray],
               rate_to_scale: Callable[[float], float]) -> FitResult:
    x, y = _prepare(x, y)
    if np.ptp(y) <= CONSTANT_TOL * np.max(np.abs(y)):
        return _result(family, float(np.mean(y)), np.inf, x, y)
    
    u = feature(x)
    if np.ptp(u) == 0:
        raise FitError("自变量退化, 线性方程组奇异", invariant="fit-singular")
    # 对数空间加权初值, 权重 y 抵消对数变换对小值的放大
    slope, intercept = np.polyfit(u, np.log(y), 1, w=y)
    
    def model(values, amplitude, rate):
        return amplitude * np.exp(-rate * values)
    
    try:
        popt, _ = curve_fit(model, u, y, p0=[np.exp(intercept), -slope], method='lm',
                            xtol=FIT_TOL, ftol=FIT_TOL, gtol=FIT_TOL, maxfev=20000)
    except (RuntimeError, ValueError) as e:
        raise FitError(f"{family.value} 拟合不收敛: {e}", invariant="fit-convergence")
    amplitude, rate = popt
    scale = rate_to_scale(rate) if rate > 0 else np.inf
    logger.debug(f"{family.value} 拟合: A={amplitude:.6g}, scale={scale:.6g}")
    return _result(family, amplitude, scale, x, y)


def fit_exponential(x, y) -> FitResult:
    return _fit_decay(FitFamily.EXPONENTIAL, x, y, lambda v: v, lambda r: 1.0 / r)


def fit_gaussian(x, y) -> FitResult:
    return _fit_decay(FitFamily.GAUSSIAN, x, y, lambda v: v ** 2,
                      lambda r: float(np.sqrt(1.0 / (2.0 * r))))


def fit_linear(x, y) -> FitResult:
    x, y = _prepare(x, y, min_points=2, positive=False)
    if np.ptp(x) == 0:
        raise FitError("自变量退化, 线性方程组奇异", invariant="fit-singular")
    slope, intercept = np.polyfit(x, y, 1)
    return _result(FitFamily.LINEAR, intercept, slope, x, y)
