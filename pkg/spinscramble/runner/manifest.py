"""
运行清单: 配置回显, 几何哈希, 版本, 各阶段耗时与输出文件
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .. import __version__


@dataclass
class RunManifest:
    experiment: str
    config: Dict[str, Any]
    geometry_hash: str
    version: str = __version__
    timings: Dict[str, float] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    reduction_check: Optional[Dict[str, Any]] = None
    summary: Dict[str, Any] = field(default_factory=dict)
    
    def to_dict(self) -> Dict:
        return {
            'experiment': self.experiment,
            'version': self.version,
            'geometry_hash': self.geometry_hash,
            'config': self.config,
            'timings': self.timings,
            'outputs': self.outputs,
            'reduction_check': self.reduction_check,
            'summary': self.summary,
        }
    
    @classmethod
    def from_dict(cls, data: Dict) -> 'RunManifest':
        return cls(
            experiment=data['experiment'],
            config=data['config'],
            geometry_hash=data.get('geometry_hash', ''),
            version=data.get('version', __version__),
            timings=data.get('timings', {}),
            outputs=data.get('outputs', []),
            reduction_check=data.get('reduction_check'),
            summary=data.get('summary', {}),
        )
    
    def __str__(self) -> str:
        return (f"RunManifest({self.experiment}, outputs={len(self.outputs)}, "
                f"geometry={self.geometry_hash[:12]})")
