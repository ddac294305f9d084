"""
实验运行器: 校验 -> 流水线 -> 结果与清单落盘
"""
from typing import Dict

from ..utils.decorators import timing
from ..utils.logger import get_logger
from .manifest import RunManifest
from .pipelines import PIPELINES
from .run_config import RunConfig
from .storage import ResultStorage
from .validate import validate

logger = get_logger()

MANIFEST_FILE = "manifest.json"


@timing
def run(rc: RunConfig) -> RunManifest:
    report = validate(rc)
    if not report.ok:
        for problem in report.problems:
            logger.error(f"配置校验失败: {problem}")
    report.raise_for_problems()
    
    storage = ResultStorage(rc.output_dir)
    timings: Dict[str, float] = {}
    pipeline = PIPELINES[rc.experiment](rc, storage, timings)
    logger.info(f"运行实验 {rc.experiment.value}, 输出目录 {rc.output_dir}")
    summary = pipeline.run()
    
    manifest = RunManifest(
        experiment=rc.experiment.value,
        config=rc.to_dict(),
        geometry_hash=pipeline.geometry_hash,
        timings=timings,
        outputs=list(storage.written),
        reduction_check=pipeline.reduction,
        summary=summary,
    )
    if manifest.reduction_check is not None and not manifest.reduction_check['passed']:
        logger.warning(f"并行归约检查未通过: {manifest.reduction_check}")
    storage.save_json(manifest.to_dict(), MANIFEST_FILE)
    logger.info(f"实验完成: {manifest}")
    return manifest
