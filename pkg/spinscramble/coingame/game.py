"""
硬币游戏: 成功交换概率, 重叠幅度解析式与蒙特卡洛模拟
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..utils.logger import get_logger
from ..utils.parallel import parallel_map

logger = get_logger()


CHUNK_TRIALS = 10000


class KMapping(Enum):
    SPREAD = "spread"
    SQRT = "sqrt"


@dataclass(frozen=True)
class CoinParams:
    N: int
    k: int
    m: int
    trials: int = 10000
    seed: int = 0
    
    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"硬币数 N 必须 >= 2, 实际为 {self.N}")
        if not 0 <= self.k <= self.N:
            raise ValueError(f"翻转数 k 必须位于 [0, N], 实际为 {self.k}")
        if self.m < 0:
            raise ValueError(f"交换次数 m 必须 >= 0, 实际为 {self.m}")
        if self.trials < 1:
            raise ValueError(f"试验次数必须 >= 1, 实际为 {self.trials}")


@dataclass(frozen=True)
class CoinResult:
    params: CoinParams
    analytic: float
    mc_mean: float
    mc_stderr: float
    
    def to_dict(self) -> dict:
        return {'N': self.params.N, 'k': self.params.k, 'm': self.params.m,
                'A_analytic': self.analytic, 'A_mc': self.mc_mean, 'stderr': self.mc_stderr}


def successful_swap_probability(N: int, k: int) -> float:
    if N < 2:
        raise ValueError(f"硬币数 N 必须 >= 2, 实际为 {N}")
    if not 0 <= k <= N:
        raise ValueError(f"翻转数 k 必须位于 [0, N], 实际为 {k}")
    return 2.0 * (k * N - k * k) / (N * N - N)


def overlap_amplitude(N: int, k: int, m: int) -> float:
    # 多次交换同一对硬币的情形被忽略, 大 m 时线性项可能为负, 截断到 0
    base = 1.0 - (2.0 * m / N) * successful_swap_probability(N, k)
    return float(np.clip(max(base, 0.0) ** 2, 0.0, 1.0))


def _simulate_chunk(N: int, k: int, m: int, trials: int, seed_sequence) -> np.ndarray:
    rng = np.random.default_rng(seed_sequence)
    rows = np.arange(trials)
    flipped = np.argsort(rng.random((trials, N)), axis=1)[:, :k]
    state = np.zeros((trials, N), dtype=bool)
    state[rows[:, None], flipped] = True
    for _ in range(m):
        i = rng.integers(0, N, size=trials)
        j = (i + rng.integers(1, N, size=trials)) % N
        held = state[rows, i].copy()
        state[rows, i] = state[rows, j]
        state[rows, j] = held
    state[rows[:, None], flipped] ^= True
    return 1.0 - state.mean(axis=1)


def coin_monte_carlo(p: CoinParams, threads: int = 1) -> CoinResult:
    """Monte Carlo overlap: square of the mean fraction of coins back in the initial state.

    Trials run in fixed-size chunks; chunk c draws from SeedSequence([seed, c]),
    so the estimate does not depend on the thread count. The standard error of the
    squared mean follows from the delta method, 2·f̄·se(f).
    """
    n_chunks = -(-p.trials // CHUNK_TRIALS)
    sizes = [min(CHUNK_TRIALS, p.trials - c * CHUNK_TRIALS) for c in range(n_chunks)]
    
    def work(chunk: int) -> np.ndarray:
        seed_sequence = np.random.SeedSequence([p.seed, chunk])
        return _simulate_chunk(p.N, p.k, p.m, sizes[chunk], seed_sequence)
    
    samples = np.concatenate(parallel_map(work, range(n_chunks), threads=threads))
    fraction = float(np.mean(samples))
    fraction_se = float(samples.std(ddof=1) / np.sqrt(samples.size)) if samples.size > 1 else 0.0
    mean = fraction ** 2
    stderr = 2.0 * fraction * fraction_se
    logger.debug(f"硬币游戏 N={p.N}, k={p.k}, m={p.m}: MC={mean:.6f} ± {stderr:.6f}")
    return CoinResult(params=p, analytic=overlap_amplitude(p.N, p.k, p.m),
                      mc_mean=mean, mc_stderr=stderr)


def k_from_spread(spread: float, N: int, mode: KMapping = KMapping.SPREAD) -> int:
    mode = KMapping(mode)
    if spread < 0:
        raise ValueError(f"Hamming 权重展宽必须 >= 0, 实际为 {spread}")
    value = spread if mode == KMapping.SPREAD else np.sqrt(spread)
    return int(np.clip(np.rint(value), 0, N))
