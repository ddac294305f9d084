"""
硬币游戏测试
"""
import numpy as np
import pandas as pd
import pytest

from spinscramble.coingame import (
    CoinParams,
    KMapping,
    coin_monte_carlo,
    coin_table,
    immunity_decay_fits,
    k_from_spread,
    overlap_amplitude,
    overlap_curve,
    successful_swap_probability,
    swap_immunity_factor,
    swap_immunity_table,
)
from spinscramble.utils.exceptions import FitError

KS = [1, 2, 3, 4, 5]


def displaced_probability(N: int, m: int) -> float:
    # 某一位置上的硬币在 m 次随机交换后来自其他位置的概率
    stay = 1.0
    for _ in range(m):
        stay = stay * (1.0 - 2.0 / N) + (1.0 - stay) * (2.0 / N) / (N - 1)
    return 1.0 - stay


def exact_overlap(N: int, k: int, m: int) -> float:
    """Square of the exact mean matching fraction."""
    return (1.0 - successful_swap_probability(N, k) * displaced_probability(N, m)) ** 2


class TestSwapProbability:
    def test_values(self):
        assert successful_swap_probability(15, 7) == pytest.approx(8 / 15)
        assert successful_swap_probability(15, 1) == pytest.approx(28 / 210)
        assert successful_swap_probability(2, 1) == pytest.approx(1.0)
        assert successful_swap_probability(15, 0) == 0.0
        assert successful_swap_probability(15, 15) == 0.0
    
    def test_symmetric_in_k(self):
        for k in range(16):
            assert successful_swap_probability(15, k) == pytest.approx(
                successful_swap_probability(15, 15 - k))
    
    def test_invalid(self):
        with pytest.raises(ValueError):
            successful_swap_probability(1, 0)
        with pytest.raises(ValueError):
            successful_swap_probability(5, 6)


class TestOverlapAmplitude:
    def test_no_swaps(self):
        for k in range(16):
            assert overlap_amplitude(15, k, 0) == 1.0
    
    def test_single_swap(self):
        assert overlap_amplitude(15, 1, 1) == pytest.approx((1547 / 1575) ** 2)
        assert overlap_amplitude(15, 7, 1) == pytest.approx(0.86288, abs=1e-4)
    
    def test_clipped_at_zero(self):
        assert overlap_amplitude(4, 2, 10) == 0.0
    
    def test_decreasing_in_m(self):
        values = [overlap_amplitude(15, 3, m) for m in range(10)]
        assert np.all(np.diff(values) < 0)


class TestMonteCarlo:
    def test_no_swaps(self):
        result = coin_monte_carlo(CoinParams(N=15, k=4, m=0, trials=500, seed=1))
        assert result.mc_mean == 1.0
        assert result.mc_stderr == 0.0
        assert result.analytic == 1.0
    
    def test_two_coins(self):
        # N = 2 时每次交换都成功
        once = coin_monte_carlo(CoinParams(N=2, k=1, m=1, trials=200, seed=3))
        assert once.mc_mean == 0.0
        assert once.analytic == 0.0
        twice = coin_monte_carlo(CoinParams(N=2, k=1, m=2, trials=200, seed=3))
        assert twice.mc_mean == 1.0
    
    def test_single_swap_expectation(self):
        N, k = 15, 2
        result = coin_monte_carlo(CoinParams(N=N, k=k, m=1, trials=20000, seed=11))
        p = successful_swap_probability(N, k)
        exact = (1.0 - 2.0 * p / N) ** 2
        assert exact == pytest.approx(result.analytic)
        assert exact_overlap(N, k, 1) == pytest.approx(exact)
        assert result.mc_stderr > 0
        assert abs(result.mc_mean - exact) < 5 * result.mc_stderr

    def test_stderr_from_mean_fraction(self):
        result = coin_monte_carlo(CoinParams(N=15, k=5, m=3, trials=30000, seed=9))
        fraction = np.sqrt(result.mc_mean)
        assert 0.0 < result.mc_stderr < 2.0 * fraction * 0.01
    
    def test_threads_do_not_change_results(self):
        params = CoinParams(N=10, k=3, m=4, trials=25000, seed=5)
        serial = coin_monte_carlo(params, threads=1)
        threaded = coin_monte_carlo(params, threads=3)
        assert serial.mc_mean == threaded.mc_mean
        assert serial.mc_stderr == threaded.mc_stderr
    
    def test_seed_matters(self):
        a = coin_monte_carlo(CoinParams(N=10, k=3, m=4, trials=2000, seed=1))
        b = coin_monte_carlo(CoinParams(N=10, k=3, m=4, trials=2000, seed=2))
        assert a.mc_mean != b.mc_mean
    
    def test_to_dict(self):
        row = coin_monte_carlo(CoinParams(N=5, k=1, m=1, trials=10, seed=0)).to_dict()
        assert list(row) == ['N', 'k', 'm', 'A_analytic', 'A_mc', 'stderr']
    
    @pytest.mark.parametrize("kwargs", [
        dict(N=1, k=0, m=0),
        dict(N=5, k=6, m=0),
        dict(N=5, k=1, m=-1),
        dict(N=5, k=1, m=1, trials=0),
    ])
    def test_invalid_params(self, kwargs):
        with pytest.raises(ValueError):
            CoinParams(**kwargs)


class TestKFromSpread:
    def test_spread_mapping(self):
        assert k_from_spread(3.4, 15) == 3
        assert k_from_spread(3.6, 15) == 4
        assert k_from_spread(40.0, 15) == 15
        assert k_from_spread(0.0, 15) == 0
    
    def test_sqrt_mapping(self):
        assert k_from_spread(9.0, 15, KMapping.SQRT) == 3
        assert k_from_spread(9.0, 15, "sqrt") == 3
    
    def test_negative(self):
        with pytest.raises(ValueError):
            k_from_spread(-0.1, 15)


class TestSwapImmunity:
    def test_synthetic(self):
        k = np.arange(1, 8)
        assert swap_immunity_factor(k, np.exp(-k / 3.0)) == pytest.approx(3.0, rel=1e-8)
    
    def test_no_swaps_is_immune(self):
        assert np.isinf(swap_immunity_factor(KS, overlap_curve(15, KS, 0)))
    
    def test_more_swaps_less_immunity(self):
        kappa_6 = swap_immunity_factor(KS, overlap_curve(15, KS, 6))
        kappa_8 = swap_immunity_factor(KS, overlap_curve(15, KS, 8))
        assert np.isfinite(kappa_6)
        assert kappa_6 > kappa_8 > 0
    
    def test_table_records_failures(self):
        table = swap_immunity_table(15, KS, [0, 5, 20])
        assert list(table.columns) == ['m', 'kappa']
        assert table['m'].tolist() == [0, 5, 20]
        assert np.isinf(table['kappa'].iloc[0])
        assert np.isfinite(table['kappa'].iloc[1])
        assert np.isnan(table['kappa'].iloc[2])
    
    def test_decay_fits(self):
        table = swap_immunity_table(15, KS, range(11))
        fits = immunity_decay_fits(table)
        assert fits['exponential'].n_points == 6
        assert np.isfinite(fits['exponential'].scale)
        assert fits['linear'].scale < 0
    
    def test_decay_fits_need_points(self):
        table = pd.DataFrame({'m': [5, 6, 7], 'kappa': [3.0, 2.5, 2.0]})
        with pytest.raises(FitError):
            immunity_decay_fits(table)


class TestCoinTable:
    def test_table(self):
        table = coin_table(8, [1, 2], [0, 3], trials=300, seed=4)
        assert list(table.columns) == ['N', 'k', 'm', 'A_analytic', 'A_mc', 'stderr']
        assert len(table) == 4
        assert table.loc[table['m'] == 0, 'A_mc'].tolist() == [1.0, 1.0]
        assert table['A_mc'].between(0.0, 1.0).all()


class TestAgainstAnalytic:
    @pytest.mark.parametrize("m", [1, 2])
    @pytest.mark.parametrize("k", range(1, 8))
    def test_monte_carlo_close_to_analytic(self, k, m):
        result = coin_monte_carlo(CoinParams(N=15, k=k, m=m, trials=100000, seed=13))
        assert abs(result.mc_mean - result.analytic) < 0.02
        assert abs(result.mc_mean - exact_overlap(15, k, m)) < 5 * result.mc_stderr
    
    def test_kappa_decays_exponentially(self):
        table = swap_immunity_table(15, range(1, 9), range(0, 11))
        kappa = table.loc[table['m'] >= 1, 'kappa'].to_numpy()
        assert np.all(np.isfinite(kappa))
        assert np.all(np.diff(kappa) < 0)
        fits = immunity_decay_fits(table)
        assert fits['exponential'].r2 > fits['linear'].r2
