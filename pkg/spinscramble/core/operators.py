"""
自旋算符与系统定义

基矢约定: 大端张量序, 中心自旋 (site 0) 为最高位; 比特 0 表示自旋向上 (σ_Z = +1).
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from ..utils.exceptions import CapExceededError, NumericalInvariantError


DEFAULT_ORACLE_CAP = 12
HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10


class Axis(Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


@dataclass(frozen=True)
class SpinSystem:
    n_env: int
    max_env: int = DEFAULT_ORACLE_CAP
    
    def __post_init__(self):
        if self.n_env < 1:
            raise ValueError(f"环境自旋数必须 >= 1, 实际为 {self.n_env}")
    
    @property
    def n_sites(self) -> int:
        return self.n_env + 1
    
    @property
    def dim(self) -> int:
        return 2 ** self.n_sites
    
    @property
    def env_dim(self) -> int:
        return 2 ** self.n_env
    
    def check_cap(self) -> None:
        if self.n_env > self.max_env:
            raise CapExceededError(
                f"精确传播要求 N <= {self.max_env}, 实际 N = {self.n_env} "
                f"(维度 {self.dim})",
                invariant="oracle-cap",
            )


@dataclass(frozen=True)
class OperatorMatrix:
    matrix: np.ndarray
    hermitian: bool = False
    unitary: bool = False
    n_sites: Optional[int] = None
    diagonal: bool = field(default=False)
    
    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"算符必须为方阵, 实际形状 {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)
        self.check_tags()
    
    @classmethod
    def trusted(cls, matrix: np.ndarray, hermitian: bool = False, unitary: bool = False,
                n_sites: Optional[int] = None, diagonal: bool = False) -> 'OperatorMatrix':
        # 内部热路径: 跳过 O(dim^3) 的标签校验
        obj = object.__new__(cls)
        matrix = np.array(matrix, dtype=np.complex128)
        matrix.setflags(write=False)
        object.__setattr__(obj, 'matrix', matrix)
        object.__setattr__(obj, 'hermitian', hermitian)
        object.__setattr__(obj, 'unitary', unitary)
        object.__setattr__(obj, 'n_sites', n_sites)
        object.__setattr__(obj, 'diagonal', diagonal)
        return obj
    
    @property
    def dim(self) -> int:
        return self.matrix.shape[0]
    
    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T))) if self.dim else 0.0
    
    def unitarity_error(self) -> float:
        product = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(product - np.eye(self.dim))))
    
    def check_tags(self) -> None:
        if self.hermitian:
            error = self.hermiticity_error()
            if error > HERMITIAN_TOL:
                raise NumericalInvariantError(
                    f"算符标记为厄米, 但 max|A - A†| = {error:.3e}", invariant="hermitian-tag"
                )
        if self.unitary:
            error = self.unitarity_error()
            if error > UNITARY_TOL:
                raise NumericalInvariantError(
                    f"算符标记为幺正, 但 max|U†U - 1| = {error:.3e}", invariant="unitary-tag"
                )
        if self.diagonal:
            off = self.matrix - np.diag(np.diag(self.matrix))
            if np.any(off != 0):
                raise NumericalInvariantError("算符标记为对角, 但存在非对角元",
                                              invariant="diagonal-tag")
    
    def diag(self) -> np.ndarray:
        return np.diag(self.matrix).copy()
    
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))
    
    def __matmul__(self, other: 'OperatorMatrix') -> np.ndarray:
        return self.matrix @ other.matrix
    
    def __repr__(self) -> str:
        tags = [name for name, flag in (('hermitian', self.hermitian), ('unitary', self.unitary),
                                        ('diagonal', self.diagonal)) if flag]
        return f"OperatorMatrix(dim={self.dim}, tags={tags})"


def site_bits(site: int, n_sites: int) -> np.ndarray:
    indices = np.arange(2 ** n_sites)
    return (indices >> (n_sites - 1 - site)) & 1


def z_values(site: int, n_sites: int) -> np.ndarray:
    return 1.0 - 2.0 * site_bits(site, n_sites)


def single_site_matrix(site: int, axis: Axis, n_sites: int) -> np.ndarray:
    dim = 2 ** n_sites
    indices = np.arange(dim)
    bits = site_bits(site, n_sites)
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    
    if axis == Axis.Z:
        matrix[indices, indices] = 1.0 - 2.0 * bits
        return matrix
    
    flipped = indices ^ (1 << (n_sites - 1 - site))
    if axis == Axis.X:
        matrix[flipped, indices] = 1.0
    else:
        # σ_Y|↑> = i|↓>, σ_Y|↓> = -i|↑>
        matrix[flipped, indices] = np.where(bits == 0, 1j, -1j)
    return matrix


def pauli(site: int, axis: Axis, sys: SpinSystem) -> OperatorMatrix:
    if not 0 <= site <= sys.n_env:
        raise ValueError(f"格点索引 {site} 超出范围 [0, {sys.n_env}]")
    axis = Axis(axis) if not isinstance(axis, Axis) else axis
    sys.check_cap()
    matrix = single_site_matrix(site, axis, sys.n_sites)
    return OperatorMatrix.trusted(matrix, hermitian=True, unitary=True,
                                  n_sites=sys.n_sites, diagonal=axis == Axis.Z)


def initial_state(sys: SpinSystem) -> OperatorMatrix:
    sys.check_cap()
    matrix = single_site_matrix(0, Axis.X, sys.n_sites) / sys.dim
    return OperatorMatrix(matrix, hermitian=True, n_sites=sys.n_sites)


def collective_x(sys: SpinSystem) -> OperatorMatrix:
    sys.check_cap()
    matrix = np.zeros((sys.dim, sys.dim), dtype=np.complex128)
    for site in range(1, sys.n_sites):
        matrix += single_site_matrix(site, Axis.X, sys.n_sites)
    return OperatorMatrix.trusted(matrix, hermitian=True, n_sites=sys.n_sites)


def central_flip_permutation(n_sites: int) -> np.ndarray:
    # σ_X^cs 作用于基矢: 翻转最高位
    return np.arange(2 ** n_sites) ^ (1 << (n_sites - 1))


def partial_trace_environment(op: OperatorMatrix) -> np.ndarray:
    n_sites = op.n_sites if op.n_sites is not None else int(np.log2(op.dim))
    env_dim = 2 ** (n_sites - 1)
    blocks = op.matrix.reshape(2, env_dim, 2, env_dim)
    return np.einsum('ajbj->ab', blocks)
