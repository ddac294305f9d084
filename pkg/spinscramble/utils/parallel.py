"""
并行工具: 保序线程映射与固定顺序的两两归约
"""
from typing import Callable, List, Optional, Sequence, TypeVar

import numpy as np
from tqdm import tqdm
from tqdm.contrib.concurrent import thread_map

T = TypeVar('T')
R = TypeVar('R')

REDUCTION_TOL = 1e-10


def parallel_map(func: Callable[[T], R], items: Sequence[T], threads: int = 1,
                 progress: bool = False, desc: Optional[str] = None) -> List[R]:
    # 结果顺序与输入一致, 与线程调度无关
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in tqdm(items, desc=desc, disable=not progress)]
    return list(thread_map(func, items, max_workers=threads, desc=desc,
                           disable=not progress, chunksize=1))


def pairwise_sum(arrays: Sequence[np.ndarray]) -> np.ndarray:
    arrays = list(arrays)
    if not arrays:
        raise ValueError("归约需要至少一个数组")
    while len(arrays) > 1:
        paired = [arrays[i] + arrays[i + 1] for i in range(0, len(arrays) - 1, 2)]
        if len(arrays) % 2:
            paired.append(arrays[-1])
        arrays = paired
    return np.array(arrays[0], copy=True)


def pairwise_mean(arrays: Sequence[np.ndarray]) -> np.ndarray:
    arrays = list(arrays)
    return pairwise_sum(arrays) / len(arrays)


def memory_estimate(dim: int, workers: int = 1, matrices: int = 4) -> int:
    # 每个工作线程同时持有若干个 dim x dim 复数稠密矩阵
    return int(16 * dim * dim * matrices * max(workers, 1))


def reduction_check(blocks: Sequence[np.ndarray], tolerance: float = REDUCTION_TOL) -> dict:
    # 固定顺序两两归约与顺序求平均之差
    blocks = list(blocks)
    tree = pairwise_mean(blocks)
    sequential = np.mean(np.stack(blocks), axis=0)
    difference = float(np.max(np.abs(tree - sequential))) if tree.size else 0.0
    return {'max_abs_diff': difference, 'tolerance': tolerance,
            'passed': bool(difference <= tolerance), 'n_blocks': len(blocks)}
