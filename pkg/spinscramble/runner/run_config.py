"""
运行配置: 实验选择与网格, 几何, toggling 参数的解析
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

import numpy as np

from ..config.config import Config
from ..core.hamiltonians import CouplingUnits, TogglingMode, TogglingParams
from ..geometry.orientation import EnsembleSpec
from ..geometry.structure import Geometry, load_geometry, model_geometry
from ..mcd.spectrum import PhaseGrid
from ..otoc.surface import Normalization
from ..utils.exceptions import ConfigValidationError


MODEL_GEOMETRY = "model"


class Experiment(Enum):
    COUPLINGS = "couplings"
    MCD = "mcd"
    OTOC = "otoc"
    COINGAME = "coingame"
    CHAOS = "chaos"


@dataclass
class RunConfig:
    experiment: Experiment
    config: Config = field(default_factory=Config)
    
    def __post_init__(self):
        try:
            self.experiment = Experiment(self.experiment)
        except ValueError:
            raise ConfigValidationError(f"未知实验: {self.experiment}", invariant="experiment")
    
    @property
    def output_dir(self) -> str:
        return self.config.output.output_dir
    
    @property
    def seed(self) -> int:
        return int(self.config.ensemble.seed)
    
    @property
    def T_grid(self) -> np.ndarray:
        grid = self.config.grid
        return np.linspace(float(grid.T_start), float(grid.T_stop), int(grid.T_count))
    
    @property
    def tau_grid(self) -> np.ndarray:
        return np.asarray(self.config.grid.tau, dtype=float)
    
    @property
    def phase_grid(self) -> PhaseGrid:
        return PhaseGrid(int(self.config.grid.phases))
    
    @property
    def normalization(self) -> Normalization:
        return Normalization(self.config.otoc.normalization)
    
    def toggling(self) -> TogglingParams:
        section = self.config.toggling
        return TogglingParams(mode=TogglingMode(section.mode), t_p=float(section.t_p),
                              tau_c=float(section.tau_c), scale=section.alpha)
    
    def requested_n_env(self) -> Optional[int]:
        system_n = self.config.system.n_env
        if system_n is not None:
            return int(system_n)
        if self.experiment == Experiment.OTOC:
            return int(self.config.otoc.n_env)
        if self.experiment == Experiment.CHAOS:
            return int(self.config.chaos.n_env)
        return None
    
    def base_geometry(self) -> Geometry:
        system = self.config.system
        if system.geometry == MODEL_GEOMETRY:
            geometry = model_geometry()
        else:
            geometry = load_geometry(system.geometry, central_index=int(system.central_index))
        return geometry.with_units(CouplingUnits(system.units), float(system.scale))
    
    def geometry(self) -> Geometry:
        geometry = self.base_geometry()
        requested = self.requested_n_env()
        if requested is not None and requested > geometry.n_env:
            raise ConfigValidationError(
                f"请求 N={requested}, 但几何结构只有 {geometry.n_env} 个环境格点",
                invariant="n-env-override",
            )
        return geometry.subset(requested)
    
    def ensemble_spec(self, geometry: Optional[Geometry] = None,
                      n_orientations: Optional[int] = None) -> EnsembleSpec:
        return EnsembleSpec(
            n_orientations=int(n_orientations or self.config.ensemble.n_orientations),
            seed=self.seed,
            geometry=geometry or self.geometry(),
        )
    
    def to_dict(self) -> Dict:
        return {'experiment': self.experiment.value, **self.config.to_dict()}
