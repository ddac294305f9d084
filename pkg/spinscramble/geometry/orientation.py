"""
取向采样: 静磁场在分子坐标系中的方向
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .structure import Geometry


NORM_TOL = 1e-12


@dataclass(frozen=True)
class Orientation:
    vector: np.ndarray
    seed: Optional[int] = None
    index: Optional[int] = None
    
    def __post_init__(self):
        vector = np.array(self.vector, dtype=float).reshape(-1)
        if vector.size != 3:
            raise ValueError(f"取向向量必须为 3 维, 实际为 {vector.size} 维")
        if abs(np.linalg.norm(vector) - 1.0) > NORM_TOL:
            raise ValueError(f"取向向量必须为单位向量, |b| = {np.linalg.norm(vector):.15f}")
        vector.setflags(write=False)
        object.__setattr__(self, 'vector', vector)
    
    @classmethod
    def from_vector(cls, vector, seed: Optional[int] = None,
                    index: Optional[int] = None) -> 'Orientation':
        vector = np.asarray(vector, dtype=float)
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise ValueError("零向量无法定义取向")
        return cls(vector=vector / norm, seed=seed, index=index)
    
    @classmethod
    def along_z(cls) -> 'Orientation':
        return cls(vector=np.array([0.0, 0.0, 1.0]))
    
    def rotated(self, rotation: np.ndarray) -> 'Orientation':
        return Orientation.from_vector(np.asarray(rotation, dtype=float) @ self.vector,
                                       seed=self.seed, index=self.index)


@dataclass(frozen=True)
class EnsembleSpec:
    n_orientations: int
    seed: int
    geometry: Geometry
    
    def __post_init__(self):
        if self.n_orientations < 1:
            raise ValueError(f"取向数必须 >= 1, 实际为 {self.n_orientations}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError(f"随机种子必须为 64 位无符号整数, 实际为 {self.seed}")


def sample_orientations(spec: EnsembleSpec) -> List[Orientation]:
    # 各向同性高斯向量归一化即为球面均匀分布; 同一 seed 下较小系综是较大系综的前缀
    rng = np.random.default_rng(spec.seed)
    raw = rng.standard_normal((spec.n_orientations, 3))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    return [Orientation(vector=raw[i], seed=spec.seed, index=i)
            for i in range(spec.n_orientations)]
