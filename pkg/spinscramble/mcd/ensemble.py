"""
MCD 系综平均: 对随机取向分子的相关阶谱取平均
"""
from typing import Iterable, List, Optional

import numpy as np
import pandas as pd

from ..core.hamiltonians import TogglingParams
from ..geometry.couplings import couplings_for
from ..geometry.orientation import EnsembleSpec, sample_orientations
from ..utils.logger import get_logger
from ..utils.parallel import pairwise_mean, parallel_map
from .orders import extract_spectrum, hamming_weight_spread, largest_order
from .signal import EchoOracle
from .spectrum import OrderSpectrum, PhaseGrid

logger = get_logger()


def orientation_spectra(spec: EnsembleSpec, T_grid: Iterable[float], grid: PhaseGrid,
                        alpha: float = 1.0, tog: Optional[TogglingParams] = None,
                        threads: int = 1, progress: bool = False) -> np.ndarray:
    """Per-orientation spectra, shape (n_orientations, n_T, 2N+1)."""
    T_grid = [float(T) for T in T_grid]
    use_oracle = tog is not None and not tog.analytic
    alpha = tog.alpha if tog is not None else alpha
    mode = tog.mode.value if tog is not None else "analytic"
    geometry = spec.geometry
    grid.check(geometry.n_env)
    
    def work(orientation) -> np.ndarray:
        c = couplings_for(orientation, geometry)
        oracle = EchoOracle(c, tog) if use_oracle else None
        return np.stack([extract_spectrum(c, T, grid, alpha, oracle=oracle).amplitudes
                         for T in T_grid])
    
    orientations = sample_orientations(spec)
    logger.info(f"MCD 系综: {len(orientations)} 个取向, {len(T_grid)} 个时间点, "
                f"N={geometry.n_env}, 模式 {mode}")
    return np.stack(parallel_map(work, orientations, threads=threads, progress=progress,
                                 desc="MCD"))


def average_spectra(stack: np.ndarray, T_grid: Iterable[float]) -> List[OrderSpectrum]:
    mean = pairwise_mean(list(stack))
    return [OrderSpectrum(amplitudes=row, T=T) for row, T in zip(mean, T_grid)]


def ensemble_mcd(spec: EnsembleSpec, T_grid: Iterable[float], grid: PhaseGrid,
                 alpha: float = 1.0, tog: Optional[TogglingParams] = None,
                 threads: int = 1, progress: bool = False) -> List[OrderSpectrum]:
    T_grid = list(T_grid)
    stack = orientation_spectra(spec, T_grid, grid, alpha, tog, threads, progress)
    return average_spectra(stack, T_grid)


def spread_statistics(stack: np.ndarray, T_grid: Iterable[float]) -> pd.DataFrame:
    n_env = (stack.shape[-1] - 1) // 2
    orders = np.arange(-n_env, n_env + 1, dtype=float)
    spreads = np.sum(stack * orders ** 2, axis=-1)
    n = spreads.shape[0]
    stderr = spreads.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.zeros(spreads.shape[1])
    return pd.DataFrame({'T': list(T_grid), 'spread_mean': spreads.mean(axis=0),
                         'spread_stderr': stderr})


def ensemble_spread_statistics(spec: EnsembleSpec, T_grid: Iterable[float], grid: PhaseGrid,
                               alpha: float = 1.0, tog: Optional[TogglingParams] = None,
                               threads: int = 1, progress: bool = False) -> pd.DataFrame:
    T_grid = list(T_grid)
    stack = orientation_spectra(spec, T_grid, grid, alpha, tog, threads, progress)
    return spread_statistics(stack, T_grid)


def spectrum_metrics(spectra: List[OrderSpectrum], floor: float = 1e-4,
                     spread_stderr: Optional[np.ndarray] = None) -> pd.DataFrame:
    rows = []
    for i, s in enumerate(spectra):
        rows.append({
            'T': s.T,
            'spread': hamming_weight_spread(s),
            'spread_stderr': float(spread_stderr[i]) if spread_stderr is not None else 0.0,
            'largest_order': largest_order(s, floor),
            'excess_kurtosis': s.excess_kurtosis(),
        })
    return pd.DataFrame(rows, columns=['T', 'spread', 'spread_stderr', 'largest_order',
                                       'excess_kurtosis'])


def spectra_frame(spectra: List[OrderSpectrum]) -> pd.DataFrame:
    return pd.concat([s.to_frame() for s in spectra], ignore_index=True)
