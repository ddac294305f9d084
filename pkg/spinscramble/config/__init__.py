"""
配置模块
"""
from .config import (
    Config,
    SystemConfig,
    EnsembleConfig,
    GridConfig,
    TogglingConfig,
    OtocConfig,
    CoinGameConfig,
    ChaosConfig,
    OutputConfig,
    SECTIONS,
    DEFAULT_CONFIG_FILE,
    OUTPUT_DIR_ENV,
    load_default_config,
)

__all__ = [
    'Config', 'SystemConfig', 'EnsembleConfig', 'GridConfig', 'TogglingConfig',
    'OtocConfig', 'CoinGameConfig', 'ChaosConfig', 'OutputConfig', 'SECTIONS',
    'DEFAULT_CONFIG_FILE', 'OUTPUT_DIR_ENV', 'load_default_config',
]
