"""
测试公共夹具
"""
import numpy as np
import pytest

from spinscramble.core.hamiltonians import CouplingSet, CouplingUnits
from spinscramble.geometry.structure import Geometry, Site, model_geometry


def make_couplings(n_env: int, seed: int, homo: bool = True) -> CouplingSet:
    rng = np.random.default_rng(seed)
    hetero = rng.uniform(-1.0, 1.0, size=n_env)
    upper = np.triu(rng.uniform(-1.0, 1.0, size=(n_env, n_env)), k=1) if homo else np.zeros((n_env, n_env))
    return CouplingSet(hetero=hetero, homo=upper + upper.T)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def random_couplings():
    return make_couplings


@pytest.fixture
def pi_quarter_pair() -> CouplingSet:
    # αω_jT = π/4 at T = π/4
    return CouplingSet.from_hetero([1.0, 1.0])


@pytest.fixture
def dimensionless_model() -> Geometry:
    return model_geometry().with_units(CouplingUnits.DIMENSIONLESS, 1.0)


@pytest.fixture
def symmetric_pair_geometry() -> Geometry:
    # 两个环境格点关于中心对称, 任意取向下异核耦合相等
    sites = (Site("P", 0.0, 0.0, 0.0), Site("H1", 0.0, 0.0, 1.0), Site("H2", 0.0, 0.0, -1.0))
    return Geometry(sites=sites, units=CouplingUnits.DIMENSIONLESS)
