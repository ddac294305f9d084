"""
配置校验: 模式检查与资源估算 (不执行计算)
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..coingame.game import KMapping
from ..core.hamiltonians import CouplingUnits, TogglingMode
from ..otoc.surface import Normalization
from ..utils.exceptions import CapExceededError, ConfigValidationError, SpinScrambleError
from ..utils.parallel import memory_estimate
from .run_config import Experiment, RunConfig

SCHEMA = "schema"
CAP = "cap"
GIB = 1024 ** 3


@dataclass
class Problem:
    kind: str
    invariant: str
    message: str
    
    def __str__(self) -> str:
        return f"[{self.kind}:{self.invariant}] {self.message}"


@dataclass
class ValidationReport:
    experiment: str
    problems: List[Problem] = field(default_factory=list)
    estimates: Dict = field(default_factory=dict)
    
    @property
    def ok(self) -> bool:
        return not self.problems
    
    def add(self, kind: str, invariant: str, message: str):
        self.problems.append(Problem(kind, invariant, message))
    
    def error(self) -> Optional[SpinScrambleError]:
        if self.ok:
            return None
        first = self.problems[0]
        cls = CapExceededError if first.kind == CAP else ConfigValidationError
        return cls(first.message, invariant=first.invariant)
    
    def raise_for_problems(self):
        error = self.error()
        if error is not None:
            raise error
    
    def to_dict(self) -> Dict:
        return {'experiment': self.experiment, 'ok': self.ok,
                'problems': [p.__dict__ for p in self.problems], 'estimates': self.estimates}
    
    def __str__(self) -> str:
        lines = [f"实验 {self.experiment}: {'OK' if self.ok else '存在问题'}"]
        lines += [f"  {key} = {value}" for key, value in self.estimates.items()]
        lines += [f"  {problem}" for problem in self.problems]
        return "\n".join(lines)


def _check_grids(rc: RunConfig, report: ValidationReport):
    grid = rc.config.grid
    if int(grid.T_count) < 1:
        report.add(SCHEMA, "t-grid", "T 网格为空 (T_count < 1)")
    elif float(grid.T_start) < 0:
        report.add(SCHEMA, "t-grid", f"T_start 必须 >= 0, 实际为 {grid.T_start}")
    elif int(grid.T_count) > 1 and not float(grid.T_stop) > float(grid.T_start):
        report.add(SCHEMA, "t-grid", "T 网格必须递增 (T_stop > T_start)")
    if rc.experiment == Experiment.OTOC:
        tau = np.asarray(grid.tau, dtype=float)
        if tau.size == 0:
            report.add(SCHEMA, "tau-grid", "τ 网格为空")
        elif np.any(tau < 0) or np.any(np.diff(tau) <= 0):
            report.add(SCHEMA, "tau-grid", "τ 网格必须非负且严格递增")
    if not 0 <= float(grid.window_fraction) < 1:
        report.add(SCHEMA, "window-fraction", "早期窗口比例必须位于 [0, 1)")
    if float(grid.floor) <= 0:
        report.add(SCHEMA, "order-floor", "相关阶检测阈值必须 > 0")


def _check_enums(rc: RunConfig, report: ValidationReport):
    checks = [
        (CouplingUnits, rc.config.system.units, "units"),
        (TogglingMode, rc.config.toggling.mode, "toggling-mode"),
        (Normalization, rc.config.otoc.normalization, "normalization"),
        (KMapping, rc.config.coingame.k_mapping, "k-mapping"),
    ]
    for enum, value, invariant in checks:
        try:
            enum(value)
        except ValueError:
            allowed = ", ".join(member.value for member in enum)
            report.add(SCHEMA, invariant, f"无效取值 {value!r}, 可选: {allowed}")
    if not report.problems:
        try:
            rc.toggling()
        except ValueError as e:
            report.add(SCHEMA, "toggling-params", str(e))


def _check_ensemble(rc: RunConfig, report: ValidationReport):
    seed = rc.config.ensemble.seed
    if seed is None or isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        report.add(SCHEMA, "seed", f"随机种子必须为整数, 实际为 {seed!r}")
    elif not 0 <= int(seed) < 2 ** 64:
        report.add(SCHEMA, "seed", "随机种子必须为 64 位无符号整数")
    if int(rc.config.ensemble.n_orientations) < 1:
        report.add(SCHEMA, "n-orientations", "取向数必须 >= 1")
    if int(rc.config.output.threads) < 1:
        report.add(SCHEMA, "threads", "线程数必须 >= 1")


def _check_coingame(rc: RunConfig, report: ValidationReport):
    game = rc.config.coingame
    if int(game.N) < 2:
        report.add(SCHEMA, "coin-n", "硬币数 N 必须 >= 2")
        return
    if not game.k or any(not 0 <= int(k) <= int(game.N) for k in game.k):
        report.add(SCHEMA, "coin-k", "k 列表必须非空且每个 k 位于 [0, N]")
    if not game.m or any(int(m) < 0 for m in game.m):
        report.add(SCHEMA, "coin-m", "m 列表必须非空且每个 m >= 0")
    if int(game.trials) < 1:
        report.add(SCHEMA, "coin-trials", "试验次数必须 >= 1")
    if game.spreads is not None and any(float(s) < 0 for s in game.spreads):
        report.add(SCHEMA, "coin-spreads", "展宽列表中的值必须 >= 0")


def _dense_plan(rc: RunConfig) -> bool:
    return rc.experiment in (Experiment.OTOC, Experiment.CHAOS) or (
        rc.experiment == Experiment.MCD and rc.config.toggling.mode == TogglingMode.FULL_TOGGLING.value)


def _check_cap(rc: RunConfig, report: ValidationReport, n_env: int) -> bool:
    cap = int(rc.config.system.oracle_cap)
    dim = 2 ** (n_env + 1) if rc.experiment != Experiment.CHAOS else 2 ** n_env
    estimate = memory_estimate(dim, workers=int(rc.config.output.threads))
    report.estimates['dense_dim'] = dim
    report.estimates['memory_bytes'] = estimate
    if n_env > cap:
        report.add(CAP, "oracle-cap",
                   f"精确传播要求 N <= {cap}, 实际 N = {n_env} (维度 {dim}, 预计内存 {estimate / GIB:.1f} GiB)")
        return False
    if estimate > float(rc.config.system.memory_budget_gb) * GIB:
        report.add(CAP, "memory-budget",
                   f"预计内存 {estimate / GIB:.1f} GiB 超出预算 {rc.config.system.memory_budget_gb} GiB")
        return False
    return True


def _check_resources(rc: RunConfig, report: ValidationReport):
    requested = rc.requested_n_env()
    if _dense_plan(rc) and requested is not None and not _check_cap(rc, report, requested):
        return
    try:
        geometry = rc.geometry()
    except SpinScrambleError as e:
        report.add(SCHEMA, e.invariant or "geometry", str(e))
        return
    n_env = geometry.n_env
    report.estimates['n_env'] = n_env
    report.estimates['n_orientations'] = int(rc.config.ensemble.n_orientations)
    report.estimates['geometry_hash'] = geometry.digest
    
    if rc.experiment == Experiment.MCD and int(rc.config.grid.phases) < 2 * n_env + 2:
        report.add(SCHEMA, "phase-grid-aliasing",
                   f"相位网格 M={rc.config.grid.phases} < 2N+2 = {2 * n_env + 2}")
    
    if _dense_plan(rc):
        _check_cap(rc, report, n_env)


def validate(rc: RunConfig) -> ValidationReport:
    report = ValidationReport(experiment=rc.experiment.value)
    _check_grids(rc, report)
    _check_enums(rc, report)
    _check_ensemble(rc, report)
    if rc.experiment == Experiment.COINGAME:
        _check_coingame(rc, report)
    elif rc.experiment == Experiment.CHAOS and int(rc.config.chaos.n_samples) < 1:
        report.add(SCHEMA, "chaos-samples", "样本数必须 >= 1")
    if rc.experiment != Experiment.COINGAME and not report.problems:
        _check_resources(rc, report)
    return report
