"""
哈密顿量构建器: 异核偶极耦合 H_SE 与环境同核偶极耦合 H_E
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .operators import (
    Axis,
    OperatorMatrix,
    SpinSystem,
    single_site_matrix,
    site_bits,
    z_values,
)


FULL_TOGGLING_PREFACTOR = 0.36
SYMMETRY_TOL = 1e-12


class CouplingUnits(Enum):
    PHYSICAL = "physical"
    DIMENSIONLESS = "dimensionless"


class TogglingMode(Enum):
    IDEAL = "ideal"
    SCALED = "scaled"
    FULL_TOGGLING = "full_toggling"


@dataclass(frozen=True)
class CouplingSet:
    hetero: np.ndarray
    homo: np.ndarray
    units: CouplingUnits = CouplingUnits.DIMENSIONLESS
    
    def __post_init__(self):
        hetero = np.array(self.hetero, dtype=float).reshape(-1)
        homo = np.array(self.homo, dtype=float)
        n_env = hetero.size
        
        if homo.shape != (n_env, n_env):
            raise ValueError(f"同核耦合矩阵形状 {homo.shape} 与异核耦合长度 {n_env} 不一致")
        if not np.all(np.isfinite(hetero)) or not np.all(np.isfinite(homo)):
            raise ValueError("耦合常数必须为有限实数")
        if np.max(np.abs(homo - homo.T), initial=0.0) > SYMMETRY_TOL * max(1.0, np.max(np.abs(homo), initial=0.0)):
            raise ValueError("同核耦合矩阵必须对称")
        if np.any(np.diag(homo) != 0):
            raise ValueError("同核耦合矩阵对角元必须为 0")
        
        hetero.setflags(write=False)
        homo.setflags(write=False)
        object.__setattr__(self, 'hetero', hetero)
        object.__setattr__(self, 'homo', homo)
        object.__setattr__(self, 'units', CouplingUnits(self.units))
    
    @property
    def n_env(self) -> int:
        return self.hetero.size
    
    @classmethod
    def from_hetero(cls, hetero, units: CouplingUnits = CouplingUnits.DIMENSIONLESS) -> 'CouplingSet':
        hetero = np.asarray(hetero, dtype=float).reshape(-1)
        return cls(hetero=hetero, homo=np.zeros((hetero.size, hetero.size)), units=units)
    
    def with_hetero_sign_flipped(self) -> 'CouplingSet':
        return CouplingSet(hetero=-self.hetero, homo=self.homo, units=self.units)
    
    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.hetero), initial=0.0),
                         np.max(np.abs(self.homo), initial=0.0)))


def mrev8_scaling_factor(t_p: float, tau_c: float) -> float:
    if tau_c <= 0:
        raise ValueError("MREV-8 周期长度必须 > 0")
    return float(np.sqrt(2.0) * (1.0 + 2.0 * (3.0 * t_p / tau_c) * (4.0 / np.pi - 1.0)) / 3.0)


@dataclass(frozen=True)
class TogglingParams:
    mode: TogglingMode = TogglingMode.IDEAL
    t_p: float = 0.0
    tau_c: float = 1.0
    scale: Optional[float] = None
    
    def __post_init__(self):
        object.__setattr__(self, 'mode', TogglingMode(self.mode))
        if not 0 <= self.t_p < self.tau_c:
            raise ValueError(f"要求 0 <= t_p < tau_c, 实际 t_p={self.t_p}, tau_c={self.tau_c}")
        if self.mode == TogglingMode.SCALED:
            alpha = self.alpha
            if not 0 < alpha < 1:
                raise ValueError(f"缩放因子 alpha 必须位于 (0, 1), 实际为 {alpha}")
    
    @property
    def alpha(self) -> float:
        if self.mode == TogglingMode.IDEAL:
            return 1.0
        if self.mode == TogglingMode.SCALED:
            if self.scale is not None:
                return float(self.scale)
            return mrev8_scaling_factor(self.t_p, self.tau_c)
        # full_toggling 模式的前因子直接写在哈密顿量中
        return 1.0
    
    @property
    def analytic(self) -> bool:
        return self.mode != TogglingMode.FULL_TOGGLING
    
    @classmethod
    def ideal(cls) -> 'TogglingParams':
        return cls(mode=TogglingMode.IDEAL)
    
    @classmethod
    def scaled(cls, alpha: Optional[float] = None, t_p: float = 0.0,
               tau_c: float = 1.0) -> 'TogglingParams':
        return cls(mode=TogglingMode.SCALED, t_p=t_p, tau_c=tau_c, scale=alpha)
    
    @classmethod
    def full_toggling(cls) -> 'TogglingParams':
        return cls(mode=TogglingMode.FULL_TOGGLING)


def h_se_diagonal(hetero: np.ndarray, n_sites: int) -> np.ndarray:
    z_cs = z_values(0, n_sites)
    diag = np.zeros(2 ** n_sites)
    for j, omega in enumerate(hetero, start=1):
        if omega != 0:
            diag += omega * z_cs * z_values(j, n_sites)
    return diag


def build_h_se(c: CouplingSet, sys: SpinSystem, tog: TogglingParams) -> OperatorMatrix:
    if c.n_env != sys.n_env:
        raise ValueError(f"异核耦合长度 {c.n_env} 与环境自旋数 {sys.n_env} 不一致")
    if not isinstance(tog, TogglingParams):
        raise ValueError(f"无效的 toggling 参数: {tog!r}")
    sys.check_cap()
    
    if tog.mode in (TogglingMode.IDEAL, TogglingMode.SCALED):
        diag = h_se_diagonal(tog.alpha * c.hetero, sys.n_sites)
        return OperatorMatrix.trusted(np.diag(diag).astype(np.complex128), hermitian=True,
                                      n_sites=sys.n_sites, diagonal=True)
    
    if tog.mode == TogglingMode.FULL_TOGGLING:
        z_cs = z_values(0, sys.n_sites)[:, None]
        matrix = np.zeros((sys.dim, sys.dim), dtype=np.complex128)
        for j, omega in enumerate(c.hetero, start=1):
            if omega == 0:
                continue
            env_term = (single_site_matrix(j, Axis.X, sys.n_sites)
                        + single_site_matrix(j, Axis.Z, sys.n_sites))
            matrix += omega * (z_cs * env_term)
        return OperatorMatrix(FULL_TOGGLING_PREFACTOR * matrix, hermitian=True,
                              n_sites=sys.n_sites)
    
    raise ValueError(f"无效的 toggling 模式: {tog.mode!r}")


def build_h_e(c: CouplingSet, sys: SpinSystem, include_central: bool = True,
              flip_flop: bool = True) -> OperatorMatrix:
    """Σ_{j<k} Ω_jk [σZ^j σZ^k − ¼(σ+^j σ−^k + σ−^j σ+^k)], σ± = σX ± iσY.

    With ``include_central=False`` the operator acts on the environment alone
    (dimension 2^N, site indices shifted down by one).
    """
    if c.n_env != sys.n_env:
        raise ValueError(f"同核耦合维度 {c.n_env} 与环境自旋数 {sys.n_env} 不一致")
    homo = c.homo
    if np.max(np.abs(homo - homo.T), initial=0.0) > SYMMETRY_TOL * max(1.0, np.max(np.abs(homo), initial=0.0)):
        raise ValueError("同核耦合矩阵必须对称")
    sys.check_cap()
    
    offset = 1 if include_central else 0
    n_sites = sys.n_env + offset
    dim = 2 ** n_sites
    indices = np.arange(dim)
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    diag = np.zeros(dim)
    
    for j in range(sys.n_env):
        for k in range(j + 1, sys.n_env):
            omega = homo[j, k]
            if omega == 0:
                continue
            bits_j = site_bits(j + offset, n_sites)
            bits_k = site_bits(k + offset, n_sites)
            diag += omega * (1.0 - 2.0 * bits_j) * (1.0 - 2.0 * bits_k)
            if flip_flop:
                # ¼(σ+σ− + σ−σ+) = ½(σXσX + σYσY): |↑↓> <-> |↓↑> 单位幅度
                differ = bits_j != bits_k
                mask = (1 << (n_sites - 1 - j - offset)) | (1 << (n_sites - 1 - k - offset))
                source = indices[differ]
                matrix[source ^ mask, source] -= omega
    
    matrix[indices, indices] += diag
    return OperatorMatrix.trusted(matrix, hermitian=True, n_sites=n_sites,
                                  diagonal=not flip_flop)


def total_environment_magnetization(sys: SpinSystem, include_central: bool = True) -> OperatorMatrix:
    offset = 1 if include_central else 0
    n_sites = sys.n_env + offset
    diag = np.zeros(2 ** n_sites)
    for j in range(offset, n_sites):
        diag += z_values(j, n_sites)
    return OperatorMatrix.trusted(np.diag(diag).astype(np.complex128), hermitian=True,
                                  n_sites=n_sites, diagonal=True)
