"""
分子几何结构: 格点坐标, 旋磁比与内置模型几何
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import hashlib
import os

import numpy as np
from scipy import constants

from ..core.hamiltonians import CouplingUnits
from ..utils.exceptions import GeometryError
from ..utils.logger import get_logger

logger = get_logger()


GAMMA_P31 = 1.0839e8
GAMMA_H1 = constants.physical_constants['proton gyromag. ratio'][0]
ANGSTROM = 1e-10

P_C_BOND = 1.83
C_C_BOND = 1.39
C_H_BOND = 1.08
C_P_C_ANGLE = 103.0
PROPELLER_TWIST = 35.0


@dataclass(frozen=True)
class Site:
    label: str
    x: float
    y: float
    z: float
    
    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class Geometry:
    sites: Tuple[Site, ...]
    central_index: int = 0
    gyro_central: float = GAMMA_P31
    gyro_env: float = GAMMA_H1
    units: CouplingUnits = CouplingUnits.PHYSICAL
    dimensionless_scale: float = 1.0
    digest: str = field(default="")
    
    def __post_init__(self):
        sites = tuple(self.sites)
        object.__setattr__(self, 'sites', sites)
        object.__setattr__(self, 'units', CouplingUnits(self.units))
        if len(sites) < 2:
            raise GeometryError("几何结构至少需要 2 个格点", invariant="geometry-size")
        if not 0 <= self.central_index < len(sites):
            raise GeometryError(f"中心格点索引 {self.central_index} 无效", invariant="central-index")
        positions = self.positions
        diffs = positions[:, None, :] - positions[None, :, :]
        distances = np.linalg.norm(diffs, axis=-1)
        np.fill_diagonal(distances, np.inf)
        if np.min(distances) <= 0:
            raise GeometryError("存在重合的格点 (两点距离为 0)", invariant="pairwise-distance")
        if not self.digest:
            object.__setattr__(self, 'digest', hashlib.sha256(self.to_text().encode('utf-8')).hexdigest())
    
    @property
    def positions(self) -> np.ndarray:
        return np.array([site.position for site in self.sites])
    
    @property
    def n_env(self) -> int:
        return len(self.sites) - 1
    
    @property
    def env_indices(self) -> List[int]:
        return [i for i in range(len(self.sites)) if i != self.central_index]
    
    @property
    def central(self) -> Site:
        return self.sites[self.central_index]
    
    def env_positions(self) -> np.ndarray:
        return self.positions[self.env_indices]
    
    def hetero_scale(self) -> float:
        if self.units == CouplingUnits.PHYSICAL:
            return dipolar_prefactor(self.gyro_central, self.gyro_env)
        return self.dimensionless_scale
    
    def homo_scale(self) -> float:
        if self.units == CouplingUnits.PHYSICAL:
            return dipolar_prefactor(self.gyro_env, self.gyro_env)
        return self.dimensionless_scale
    
    def subset(self, n_env: Optional[int]) -> 'Geometry':
        # 保留距离中心最近的 n_env 个环境格点
        if n_env is None or n_env == self.n_env:
            return self
        if not 1 <= n_env <= self.n_env:
            raise GeometryError(f"请求的环境自旋数 {n_env} 超出几何结构的 {self.n_env} 个",
                                invariant="n-env-override")
        center = self.central.position
        env = self.env_indices
        distances = [np.linalg.norm(self.sites[i].position - center) for i in env]
        order = np.argsort(distances, kind='stable')[:n_env]
        keep = sorted(env[i] for i in order)
        sites = [self.central] + [self.sites[i] for i in keep]
        return Geometry(sites=tuple(sites), central_index=0, gyro_central=self.gyro_central,
                        gyro_env=self.gyro_env, units=self.units,
                        dimensionless_scale=self.dimensionless_scale,
                        digest=f"{self.digest}:n{n_env}")
    
    def with_units(self, units: CouplingUnits, dimensionless_scale: float = 1.0) -> 'Geometry':
        return Geometry(sites=self.sites, central_index=self.central_index,
                        gyro_central=self.gyro_central, gyro_env=self.gyro_env,
                        units=units, dimensionless_scale=dimensionless_scale, digest=self.digest)
    
    def translated(self, shift) -> 'Geometry':
        shift = np.asarray(shift, dtype=float)
        sites = tuple(Site(s.label, *(s.position + shift)) for s in self.sites)
        return Geometry(sites=sites, central_index=self.central_index,
                        gyro_central=self.gyro_central, gyro_env=self.gyro_env,
                        units=self.units, dimensionless_scale=self.dimensionless_scale)
    
    def to_text(self) -> str:
        lines = [f"# central {self.central_index}"]
        for site in self.sites:
            lines.append(f"{site.label} {site.x:.6f} {site.y:.6f} {site.z:.6f}")
        return "\n".join(lines) + "\n"


def dipolar_prefactor(gamma_1: float, gamma_2: float) -> float:
    # μ0 γ1 γ2 ħ / (8π), 距离单位 Å
    return constants.mu_0 * gamma_1 * gamma_2 * constants.hbar / (8.0 * np.pi) / ANGSTROM ** 3


def parse_geometry(text: str, central_index: int = 0, **kwargs) -> Geometry:
    sites = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise GeometryError(f"第 {line_no} 行格式错误, 应为 'label x y z': {raw!r}",
                                invariant="geometry-format")
        try:
            x, y, z = (float(v) for v in parts[1:])
        except ValueError:
            raise GeometryError(f"第 {line_no} 行坐标无法解析: {raw!r}", invariant="geometry-format")
        sites.append(Site(parts[0], x, y, z))
    digest = hashlib.sha256(text.encode('utf-8')).hexdigest()
    return Geometry(sites=tuple(sites), central_index=central_index, digest=digest, **kwargs)


def load_geometry(path: str, central_index: int = 0, **kwargs) -> Geometry:
    if not os.path.exists(path):
        raise GeometryError(f"几何文件不存在: {path}", invariant="geometry-file")
    with open(path, 'rb') as f:
        raw = f.read()
    geometry = parse_geometry(raw.decode('utf-8'), central_index=central_index, **kwargs)
    logger.info(f"载入几何结构 {path}: {len(geometry.sites)} 个格点, 中心 {geometry.central.label}")
    return geometry


def _ring_frame(axis: np.ndarray, twist_deg: float) -> Tuple[np.ndarray, np.ndarray]:
    tangential = np.cross([0.0, 0.0, 1.0], axis)
    tangential /= np.linalg.norm(tangential)
    binormal = np.cross(axis, tangential)
    twist = np.deg2rad(twist_deg)
    in_plane = np.cos(twist) * tangential + np.sin(twist) * binormal
    return axis, in_plane


def model_geometry() -> Geometry:
    """Triphenylphosphine-like MODEL: P at the origin, three phenyl rings in a
    propeller arrangement, 15 ring protons. Approximate, not crystal data."""
    cos_angle = np.cos(np.deg2rad(C_P_C_ANGLE))
    cos_beta = np.sqrt((cos_angle + 0.5) / 1.5)
    sin_beta = np.sqrt(1.0 - cos_beta ** 2)
    
    sites = [Site("P", 0.0, 0.0, 0.0)]
    position_names = ["o1", "m1", "p", "m2", "o2"]
    for ring in range(3):
        phi = 2.0 * np.pi * ring / 3.0
        axis = np.array([sin_beta * np.cos(phi), sin_beta * np.sin(phi), -cos_beta])
        ipso = P_C_BOND * axis
        center = ipso + C_C_BOND * axis
        radial, in_plane = _ring_frame(axis, PROPELLER_TWIST)
        for k in range(1, 6):
            angle = np.pi * k / 3.0
            direction = -np.cos(angle) * radial + np.sin(angle) * in_plane
            h = center + (C_C_BOND + C_H_BOND) * direction
            sites.append(Site(f"H{ring + 1}{position_names[k - 1]}", *h))
    return Geometry(sites=tuple(sites), central_index=0)
