"""
实验流水线: couplings, mcd, otoc, coingame, chaos
"""
from abc import ABC, abstractmethod
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from ..analysis.fitting import FitResult, fit_exponential, fit_gaussian
from ..analysis.levels import (
    ks_distance_poisson,
    ks_distance_wigner,
    pooled_spacings,
    ratio_statistic,
    sector_levels,
)
from ..analysis.reparameterize import (
    early_window,
    immunity_frame,
    reparameterize_otoc,
    scrambling_immunity_factor,
)
from ..coingame.game import KMapping, k_from_spread, successful_swap_probability
from ..coingame.immunity import coin_table, immunity_decay_fits, swap_immunity_table
from ..core.hamiltonians import build_h_e
from ..core.operators import SpinSystem
from ..geometry.couplings import connected_group_curve, couplings_for
from ..geometry.orientation import sample_orientations
from ..mcd.ensemble import (
    average_spectra,
    orientation_spectra,
    spectra_frame,
    spectrum_metrics,
    spread_statistics,
)
from ..otoc.ensemble import ensemble_otoc
from ..utils.decorators import stage_timer
from ..utils.exceptions import FitError
from ..utils.logger import get_logger
from ..utils.parallel import parallel_map, reduction_check
from .run_config import Experiment, RunConfig
from .storage import ResultStorage

logger = get_logger()


class BasePipeline(ABC):
    experiment: Experiment
    
    def __init__(self, rc: RunConfig, storage: ResultStorage, timings: Dict[str, float]):
        self.rc = rc
        self.config = rc.config
        self.storage = storage
        self.timings = timings
        self.geometry_hash = ""
        self.reduction: Optional[Dict] = None
    
    @property
    def name(self) -> str:
        return self.experiment.value
    
    @property
    def threads(self) -> int:
        return int(self.config.output.threads)
    
    @property
    def progress(self) -> bool:
        return bool(self.config.output.progress)
    
    def stage(self, name: str):
        return stage_timer(self.timings, f"{self.name}.{name}")
    
    def metadata(self) -> Dict:
        return {'experiment': self.name, 'seed': self.rc.seed, 'geometry_hash': self.geometry_hash}
    
    @abstractmethod
    def run(self) -> Dict:
        pass


class CouplingsPipeline(BasePipeline):
    experiment = Experiment.COUPLINGS
    
    def run(self) -> Dict:
        geometry = self.rc.geometry()
        self.geometry_hash = geometry.digest
        spec = self.rc.ensemble_spec(geometry)
        alpha = self.rc.toggling().alpha
        labels = [geometry.sites[i].label for i in geometry.env_indices]
        
        with self.stage("couplings"):
            rows = []
            for orientation in sample_orientations(spec):
                c = couplings_for(orientation, geometry)
                for label, omega in zip(labels, c.hetero):
                    rows.append({'orientation': orientation.index, 'site': label, 'hetero': omega})
            self.storage.save_dataframe(pd.DataFrame(rows, columns=['orientation', 'site', 'hetero']),
                                        'couplings.csv')
        with self.stage("connected_group"):
            curve = connected_group_curve(spec, self.rc.T_grid, alpha)
            self.storage.save_dataframe(curve, 'connected_group.csv')
        return {'n_env': geometry.n_env, 'n_orientations': spec.n_orientations,
                'plateau_mean_size': float(curve['mean_size'].iloc[-1])}


class McdPipeline(BasePipeline):
    experiment = Experiment.MCD
    
    def run(self) -> Dict:
        geometry = self.rc.geometry()
        self.geometry_hash = geometry.digest
        spec = self.rc.ensemble_spec(geometry)
        tog = self.rc.toggling()
        grid = self.rc.phase_grid
        T_grid = self.rc.T_grid
        
        with self.stage("spectra"):
            stack = orientation_spectra(spec, T_grid, grid, tog=tog, threads=self.threads,
                                        progress=self.progress)
            spectra = average_spectra(stack, T_grid)
            self.reduction = reduction_check(list(stack))
        with self.stage("metrics"):
            stats = spread_statistics(stack, T_grid)
            metrics = spectrum_metrics(spectra, float(self.config.grid.floor),
                                       stats['spread_stderr'].to_numpy())
        
        self.storage.save_dataframe(spectra_frame(spectra), 'mcd_spectra.csv')
        self.storage.save_dataframe(metrics, 'mcd_metrics.csv')
        self.storage.save_json({
            **self.metadata(),
            'n_env': geometry.n_env,
            'n_orientations': spec.n_orientations,
            'alpha': tog.alpha,
            'mode': tog.mode.value,
            'phases': grid.M,
            'floor': float(self.config.grid.floor),
            'T_grid': T_grid.tolist(),
            'units': geometry.units.value,
        }, 'mcd.json')
        return {'n_env': geometry.n_env, 'max_spread': float(metrics['spread'].max()),
                'max_largest_order': int(metrics['largest_order'].max())}


def _fit_rows(tau: float, variable: str, x: np.ndarray, y: np.ndarray) -> List[Dict]:
    rows = []
    for fitter in (fit_exponential, fit_gaussian):
        try:
            fit: FitResult = fitter(x, y)
        except FitError as e:
            logger.warning(f"τ={tau}, 变量 {variable}: 拟合失败 ({e})")
            continue
        rows.append({'tau': tau, 'variable': variable, **fit.to_dict()})
    return rows


class OtocPipeline(BasePipeline):
    experiment = Experiment.OTOC
    
    def run(self) -> Dict:
        geometry = self.rc.geometry()
        self.geometry_hash = geometry.digest
        spec = self.rc.ensemble_spec(geometry)
        tog = self.rc.toggling()
        sys = SpinSystem(geometry.n_env, max_env=int(self.config.system.oracle_cap))
        fraction = float(self.config.grid.window_fraction)
        
        with self.stage("surface"):
            surface = ensemble_otoc(spec, self.rc.T_grid, self.rc.tau_grid, sys, tog,
                                    normalization=self.rc.normalization, threads=self.threads,
                                    progress=self.progress)
            self.reduction = surface.metadata['reduction_check']
        self.storage.save_dataframe(surface.to_frame(), 'otoc.csv')
        self.storage.save_dataframe(surface.spread_frame(), 'otoc_spread.csv')
        
        fit_rows: List[Dict] = []
        factors = {}
        with self.stage("fits"):
            normalized = surface.normalized
            for i, tau in enumerate(surface.tau_grid):
                n = early_window(normalized[i], fraction)
                fit_rows += _fit_rows(float(tau), 'T', surface.T_grid[:n], normalized[i, :n])
            try:
                curves = reparameterize_otoc(surface)
            except FitError as e:
                logger.warning(f"展宽曲线无法重参数化: {e}")
                curves = {}
            for tau, curve in curves.items():
                window = curve.window(fraction)
                fit_rows += _fit_rows(tau, 'spread', window.spread, window.F)
            factors = scrambling_immunity_factor(curves, n_env=geometry.n_env, fraction=fraction,
                                                 skip_failures=True)
        
        fit_columns = ['tau', 'variable', 'model', 'amplitude', 'scale', 'residual_norm', 'r2',
                       'n_points']
        self.storage.save_dataframe(pd.DataFrame(fit_rows, columns=fit_columns), 'otoc_fits.csv')
        self.storage.save_dataframe(immunity_frame(factors), 'immunity.csv')
        self.storage.save_json({
            **self.metadata(),
            'n_env': geometry.n_env,
            'n_orientations': spec.n_orientations,
            'mode': tog.mode.value,
            'alpha': tog.alpha,
            'normalization': surface.normalization.value,
            'window_fraction': fraction,
            'T_grid': surface.T_grid.tolist(),
            'tau_grid': surface.tau_grid.tolist(),
            'units': geometry.units.value,
        }, 'otoc.json')
        return {'n_env': geometry.n_env,
                'min_F': float(np.min(surface.normalized)),
                'unscrambled_tau': [f.tau for f in factors.values() if f.unscrambled]}


class CoinGamePipeline(BasePipeline):
    experiment = Experiment.COINGAME
    
    def ks(self) -> List[int]:
        game = self.config.coingame
        spreads = getattr(game, 'spreads', None)
        if spreads:
            mapping = KMapping(game.k_mapping)
            return sorted({k_from_spread(float(s), int(game.N), mapping) for s in spreads})
        return [int(k) for k in game.k]
    
    def run(self) -> Dict:
        game = self.config.coingame
        N = int(game.N)
        ks = self.ks()
        ms = [int(m) for m in game.m]
        
        with self.stage("monte_carlo"):
            table = coin_table(N, ks, ms, int(game.trials), int(game.seed), threads=self.threads)
        with self.stage("immunity"):
            immunity = swap_immunity_table(N, ks, ms) if len(ks) >= 4 else pd.DataFrame(columns=['m', 'kappa'])
            decay = {}
            if len(immunity) and (immunity['m'] >= 5).sum() >= 4:
                try:
                    decay = {name: fit.to_dict() for name, fit in immunity_decay_fits(immunity).items()}
                except FitError as e:
                    logger.warning(f"κ(m) 拟合失败: {e}")
        
        self.storage.save_dataframe(table, 'coingame.csv')
        self.storage.save_dataframe(immunity, 'swap_immunity.csv')
        self.storage.save_json({
            'experiment': self.name,
            'N': N,
            'k': ks,
            'm': ms,
            'trials': int(game.trials),
            'seed': int(game.seed),
            'k_mapping': game.k_mapping,
            'successful_swap_probability': {str(k): successful_swap_probability(N, k) for k in ks},
            'kappa_decay_fits': decay,
        }, 'coingame.json')
        return {'N': N, 'max_abs_mc_error': float(np.max(np.abs(table['A_mc'] - table['A_analytic'])))}


class ChaosPipeline(BasePipeline):
    experiment = Experiment.CHAOS
    
    def run(self) -> Dict:
        geometry = self.rc.geometry()
        self.geometry_hash = geometry.digest
        chaos = self.config.chaos
        spec = self.rc.ensemble_spec(geometry, n_orientations=int(chaos.n_samples))
        sector = 'auto' if chaos.sector is None else int(chaos.sector)
        sys = SpinSystem(geometry.n_env, max_env=int(self.config.system.oracle_cap))
        bins = int(chaos.bins)
        
        def spectra(orientation):
            c = couplings_for(orientation, geometry)
            full = build_h_e(c, sys, include_central=False)
            zz = build_h_e(c, sys, include_central=False, flip_flop=False)
            return full, zz
        
        results = {}
        frames = []
        with self.stage("spectra"):
            pairs = parallel_map(spectra, sample_orientations(spec), threads=self.threads,
                                 progress=self.progress, desc="H_E")
            for label, index in (('full', 0), ('zz_only', 1)):
                hamiltonians = [pair[index] for pair in pairs]
                histogram = pooled_spacings(hamiltonians, sector, bins=bins)
                ratios = [ratio_statistic(sector_levels(h, sector)) for h in hamiltonians]
                results[label] = {
                    'ks_wigner': ks_distance_wigner(histogram.spacings),
                    'ks_poisson': ks_distance_poisson(histogram.spacings),
                    'ratio_statistic': float(np.mean(ratios)),
                    'histogram': histogram.metadata(),
                }
                frames.append(pd.DataFrame({'model': label, 's': histogram.spacings}))
        
        self.storage.save_dataframe(pd.concat(frames, ignore_index=True), 'spacings.csv')
        self.storage.save_json({
            **self.metadata(),
            'n_env': geometry.n_env,
            'n_samples': spec.n_orientations,
            'sector': sector,
            'models': results,
        }, 'chaos.json')
        return {label: {'ks_wigner': r['ks_wigner'], 'ks_poisson': r['ks_poisson']}
                for label, r in results.items()}


PIPELINES = {
    Experiment.COUPLINGS: CouplingsPipeline,
    Experiment.MCD: McdPipeline,
    Experiment.OTOC: OtocPipeline,
    Experiment.COINGAME: CoinGamePipeline,
    Experiment.CHAOS: ChaosPipeline,
}
