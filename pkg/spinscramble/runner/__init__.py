"""
实验运行模块
"""
from .manifest import RunManifest
from .pipelines import (
    PIPELINES,
    BasePipeline,
    ChaosPipeline,
    CoinGamePipeline,
    CouplingsPipeline,
    McdPipeline,
    OtocPipeline,
)
from .run_config import Experiment, RunConfig
from .runner import run
from .storage import ResultStorage
from .validate import Problem, ValidationReport, validate

__all__ = [
    'RunManifest', 'PIPELINES', 'BasePipeline', 'ChaosPipeline', 'CoinGamePipeline',
    'CouplingsPipeline', 'McdPipeline', 'OtocPipeline', 'Experiment', 'RunConfig', 'run',
    'ResultStorage', 'Problem', 'ValidationReport', 'validate',
]
