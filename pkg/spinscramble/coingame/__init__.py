"""
硬币游戏模块: 扰乱机制的经典类比
"""
from .game import (
    KMapping,
    CoinParams,
    CoinResult,
    successful_swap_probability,
    overlap_amplitude,
    coin_monte_carlo,
    k_from_spread,
)
from .immunity import (
    swap_immunity_factor,
    swap_immunity_fit,
    overlap_curve,
    swap_immunity_table,
    immunity_decay_fits,
    coin_table,
)

__all__ = [
    'KMapping', 'CoinParams', 'CoinResult', 'successful_swap_probability',
    'overlap_amplitude', 'coin_monte_carlo', 'k_from_spread',
    'swap_immunity_factor', 'swap_immunity_fit', 'overlap_curve', 'swap_immunity_table',
    'immunity_decay_fits', 'coin_table',
]
