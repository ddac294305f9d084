"""
系统配置模块
"""
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional
import json
import os

from ..utils.exceptions import ConfigValidationError


DEFAULT_CONFIG_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "default_config.json")
OUTPUT_DIR_ENV = "SPINSCRAMBLE_OUTPUT_DIR"


@dataclass
class SystemConfig:
    geometry: str = "model"
    central_index: int = 0
    n_env: Optional[int] = None
    units: str = "physical"
    scale: float = 1.0
    oracle_cap: int = 12
    memory_budget_gb: float = 8.0


@dataclass
class EnsembleConfig:
    n_orientations: int = 200
    seed: int = 20240101


@dataclass
class GridConfig:
    T_start: float = 0.0
    T_stop: float = 5e-4
    T_count: int = 26
    tau: List[float] = field(default_factory=lambda: [0.0, 2e-5, 4e-5, 6e-5, 8e-5])
    phases: int = 64
    floor: float = 1e-4
    window_fraction: float = 0.2


@dataclass
class TogglingConfig:
    mode: str = "ideal"
    t_p: float = 0.0
    tau_c: float = 1.0
    alpha: Optional[float] = None


@dataclass
class OtocConfig:
    n_env: int = 8
    normalization: str = "pointwise"


@dataclass
class CoinGameConfig:
    N: int = 15
    k: List[int] = field(default_factory=lambda: list(range(1, 9)))
    m: List[int] = field(default_factory=lambda: list(range(0, 11)))
    trials: int = 10000
    seed: int = 7
    k_mapping: str = "spread"
    spreads: Optional[List[float]] = None


@dataclass
class ChaosConfig:
    n_env: int = 10
    sector: Optional[int] = None
    n_samples: int = 20
    bins: int = 30


@dataclass
class OutputConfig:
    output_dir: str = "results"
    threads: int = 1
    log_level: str = "INFO"
    progress: bool = True


SECTIONS = {
    'system': SystemConfig,
    'ensemble': EnsembleConfig,
    'grid': GridConfig,
    'toggling': TogglingConfig,
    'otoc': OtocConfig,
    'coingame': CoinGameConfig,
    'chaos': ChaosConfig,
    'output': OutputConfig,
}


class Config:
    def __init__(self, config_file: str = None):
        self.system = SystemConfig()
        self.ensemble = EnsembleConfig()
        self.grid = GridConfig()
        self.toggling = TogglingConfig()
        self.otoc = OtocConfig()
        self.coingame = CoinGameConfig()
        self.chaos = ChaosConfig()
        self.output = OutputConfig()
        
        env_output = os.environ.get(OUTPUT_DIR_ENV)
        if env_output:
            self.output.output_dir = env_output
        
        if config_file:
            if not os.path.exists(config_file):
                raise ConfigValidationError(f"配置文件不存在: {config_file}", invariant="config-file")
            self.load_from_file(config_file)
    
    def load_from_file(self, config_file: str):
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                config_data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigValidationError(f"配置文件不是合法 JSON: {e}", invariant="config-schema")
        self.update(config_data)
    
    def update(self, config_data: Dict):
        if not isinstance(config_data, dict):
            raise ConfigValidationError("配置顶层必须为对象", invariant="config-schema")
        for name, values in config_data.items():
            if name not in SECTIONS:
                raise ConfigValidationError(f"未知配置段: {name}", invariant="config-schema")
            if not isinstance(values, dict):
                raise ConfigValidationError(f"配置段 {name} 必须为对象", invariant="config-schema")
            section = getattr(self, name)
            for key, value in values.items():
                if not hasattr(section, key):
                    raise ConfigValidationError(f"配置段 {name} 中未知字段: {key}",
                                                invariant="config-schema")
                setattr(section, key, value)
    
    def to_dict(self) -> Dict:
        return {name: asdict(getattr(self, name)) for name in SECTIONS}
    
    def save_to_file(self, config_file: str):
        with open(config_file, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=4, ensure_ascii=False)
    
    @classmethod
    def from_dict(cls, config_data: Dict) -> 'Config':
        config = cls()
        config.update(config_data)
        return config


def load_default_config() -> Config:
    return Config(DEFAULT_CONFIG_FILE)
