"""
命令行入口
"""
import argparse
import json
import logging
import os
import sys
from typing import Dict, List, Optional

from .config.config import DEFAULT_CONFIG_FILE, Config
from .runner.run_config import Experiment, RunConfig
from .runner.runner import run
from .runner.validate import validate
from .utils.exceptions import SpinScrambleError
from .utils.logger import add_file_handler, setup_logger

LOG_FILE = "spinscramble.log"

# 命令行参数 -> (配置段, 字段)
OVERRIDES = {
    'geometry': ('system', 'geometry'),
    'central': ('system', 'central_index'),
    'N': ('system', 'n_env'),
    'units': ('system', 'units'),
    'scale': ('system', 'scale'),
    'oracle_cap': ('system', 'oracle_cap'),
    'orientations': ('ensemble', 'n_orientations'),
    'seed': ('ensemble', 'seed'),
    'T_start': ('grid', 'T_start'),
    'T_stop': ('grid', 'T_stop'),
    'T_count': ('grid', 'T_count'),
    'tau': ('grid', 'tau'),
    'phases': ('grid', 'phases'),
    'floor': ('grid', 'floor'),
    'mode': ('toggling', 'mode'),
    'alpha': ('toggling', 'alpha'),
    't_p': ('toggling', 't_p'),
    'tau_c': ('toggling', 'tau_c'),
    'normalization': ('otoc', 'normalization'),
    'trials': ('coingame', 'trials'),
    'k': ('coingame', 'k'),
    'm': ('coingame', 'm'),
    'spreads': ('coingame', 'spreads'),
    'k_mapping': ('coingame', 'k_mapping'),
    'samples': ('chaos', 'n_samples'),
    'sector': ('chaos', 'sector'),
    'bins': ('chaos', 'bins'),
    'output_dir': ('output', 'output_dir'),
    'threads': ('output', 'threads'),
    'log_level': ('output', 'log_level'),
}


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument('--config', default=None, help='JSON 配置文件 (默认使用内置配置)')
    parser.add_argument('--geometry', help='几何文件路径或 model')
    parser.add_argument('--central', type=int, help='中心自旋格点序号')
    parser.add_argument('--N', type=int, help='环境自旋数 (取最近邻子集)')
    parser.add_argument('--units', choices=['physical', 'dimensionless'])
    parser.add_argument('--scale', type=float, help='无量纲单位下的偶极耦合尺度')
    parser.add_argument('--oracle-cap', type=int, help='精确传播允许的最大 N')
    parser.add_argument('--orientations', type=int, help='取向系综大小')
    parser.add_argument('--seed', type=int, help='取向与蒙特卡洛随机种子')
    parser.add_argument('--T-start', type=float)
    parser.add_argument('--T-stop', type=float)
    parser.add_argument('--T-count', type=int)
    parser.add_argument('--tau', type=float, nargs='+', action='extend', help='OTOC 的 τ 列表')
    parser.add_argument('--phases', type=int, help='相位网格点数 M')
    parser.add_argument('--floor', type=float, help='最大关联阶数的幅度阈值')
    parser.add_argument('--mode', choices=['ideal', 'scaled', 'full_toggling'])
    parser.add_argument('--alpha', type=float, help='toggling 缩放因子')
    parser.add_argument('--t-p', type=float, help='脉冲宽度')
    parser.add_argument('--tau-c', type=float, help='MREV-8 周期')
    parser.add_argument('--normalization', choices=['pointwise', 'scalar'])
    parser.add_argument('--trials', type=int, help='硬币游戏试验次数')
    parser.add_argument('--k', type=int, nargs='+', action='extend', help='翻转硬币数列表')
    parser.add_argument('--m', type=int, nargs='+', action='extend', help='交换次数列表')
    parser.add_argument('--spreads', type=float, nargs='+', action='extend',
                        help='由展宽推导 k 列表')
    parser.add_argument('--k-mapping', choices=['spread', 'sqrt'])
    parser.add_argument('--samples', type=int, help='能级统计的取向样本数')
    parser.add_argument('--sector', type=int, help='磁化扇区 (默认自动)')
    parser.add_argument('--bins', type=int, help='间距直方图分箱数')
    parser.add_argument('--output-dir', help='结果输出目录')
    parser.add_argument('--threads', type=int, help='并行线程数')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--no-progress', action='store_true', help='关闭进度条')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='spinscramble',
                                     description='中心自旋体系的信息扰乱数值实验')
    subparsers = parser.add_subparsers(dest='command', required=True)

    for experiment in Experiment:
        sub = subparsers.add_parser(experiment.value, help=f'运行 {experiment.value} 实验')
        _add_common(sub)

    for command in ('run', 'validate'):
        sub = subparsers.add_parser(command, help='按名称运行实验' if command == 'run'
                                    else '只校验配置与资源估算, 不计算')
        sub.add_argument('--experiment', required=True, choices=[e.value for e in Experiment])
        _add_common(sub)
    return parser


def overrides_from_args(args: argparse.Namespace, experiment: Optional[str] = None) -> Dict[str, Dict]:
    overrides: Dict[str, Dict] = {}
    for dest, (section, key) in OVERRIDES.items():
        if dest == 'N' and experiment == Experiment.COINGAME.value:
            # 硬币游戏中 --N 为硬币数
            section, key = 'coingame', 'N'
        value = getattr(args, dest, None)
        if value is not None:
            overrides.setdefault(section, {})[key] = value
    if getattr(args, 'no_progress', False):
        overrides.setdefault('output', {})['progress'] = False
    return overrides


def build_run_config(args: argparse.Namespace) -> RunConfig:
    experiment = args.experiment if args.command in ('run', 'validate') else args.command
    config = Config(args.config or DEFAULT_CONFIG_FILE)
    config.update(overrides_from_args(args, experiment))
    return RunConfig(experiment=experiment, config=config)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger = setup_logger(level=getattr(logging, args.log_level or 'INFO'))

    try:
        rc = build_run_config(args)
        level = getattr(logging, str(rc.config.output.log_level).upper(), logging.INFO)
        logger.setLevel(level)
        for handler in logger.handlers:
            handler.setLevel(level)
        if args.command == 'validate':
            report = validate(rc)
            print(json.dumps(report.to_dict(), indent=4, ensure_ascii=False))
            report.raise_for_problems()
            return 0
        add_file_handler(logger, os.path.join(rc.output_dir, LOG_FILE), level)
        manifest = run(rc)
        print(f"完成: {manifest.experiment}, 输出 {len(manifest.outputs)} 个文件 -> {rc.output_dir}")
        return 0
    except SpinScrambleError as e:
        logger.error(f"{type(e).__name__}: {e.diagnostic()}")
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())
