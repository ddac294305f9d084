"""
交换免疫因子: 重叠幅度随 k 的指数衰减
"""
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from ..analysis.fitting import FitResult, fit_exponential, fit_linear
from ..utils.exceptions import FitError
from ..utils.logger import get_logger
from .game import CoinParams, coin_monte_carlo, overlap_amplitude

logger = get_logger()


def swap_immunity_factor(k, overlaps) -> float:
    return swap_immunity_fit(k, overlaps).scale


def swap_immunity_fit(k, overlaps) -> FitResult:
    return fit_exponential(np.asarray(k, dtype=float), np.asarray(overlaps, dtype=float))


def overlap_curve(N: int, ks: Iterable[int], m: int) -> np.ndarray:
    return np.array([overlap_amplitude(N, k, m) for k in ks])


def swap_immunity_table(N: int, ks: Iterable[int], ms: Iterable[int]) -> pd.DataFrame:
    ks = list(ks)
    rows = []
    for m in ms:
        try:
            kappa = swap_immunity_factor(ks, overlap_curve(N, ks, m))
        except FitError as e:
            logger.warning(f"m={m}: κ 拟合失败 ({e}), 记为 NaN")
            kappa = np.nan
        rows.append({'m': int(m), 'kappa': kappa})
    return pd.DataFrame(rows, columns=['m', 'kappa'])


def immunity_decay_fits(table: pd.DataFrame, m_min: int = 5) -> dict:
    """Exponential and linear fits of κ(m) beyond ``m_min``."""
    tail = table[(table['m'] >= m_min) & np.isfinite(table['kappa'])]
    return {'exponential': fit_exponential(tail['m'], tail['kappa']),
            'linear': fit_linear(tail['m'], tail['kappa'])}


def coin_table(N: int, ks: Iterable[int], ms: Iterable[int], trials: int, seed: int,
               threads: int = 1) -> pd.DataFrame:
    rows = []
    for m in ms:
        for k in ks:
            result = coin_monte_carlo(CoinParams(N=N, k=int(k), m=int(m), trials=trials,
                                                 seed=seed), threads=threads)
            rows.append(result.to_dict())
    logger.info(f"硬币游戏表: N={N}, {len(rows)} 个 (k, m) 组合, 每组 {trials} 次试验")
    return pd.DataFrame(rows, columns=['N', 'k', 'm', 'A_analytic', 'A_mc', 'stderr'])
