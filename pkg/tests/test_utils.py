"""
工具模块测试: 并行映射, 归约, 计时与异常
"""
import logging
import threading

import numpy as np
import pytest

from spinscramble.utils import (
    CapExceededError,
    ConfigValidationError,
    FitError,
    GeometryError,
    NumericalInvariantError,
    SpinScrambleError,
    add_file_handler,
    memory_estimate,
    pairwise_mean,
    pairwise_sum,
    parallel_map,
    reduction_check,
    setup_logger,
    stage_timer,
    timing,
)


class TestParallelMap:
    def test_preserves_order(self):
        assert parallel_map(lambda x: x * x, range(20), threads=4) == [x * x for x in range(20)]
    
    def test_serial(self):
        assert parallel_map(lambda x: x + 1, [1, 2, 3]) == [2, 3, 4]
        assert parallel_map(lambda x: x, []) == []
    
    def test_uses_threads(self):
        names = parallel_map(lambda _: threading.current_thread().name, range(8), threads=2)
        assert len(names) == 8


class TestReduction:
    def test_pairwise_sum(self):
        arrays = [np.full(3, float(i)) for i in range(7)]
        assert np.array_equal(pairwise_sum(arrays), np.full(3, 21.0))
        assert np.array_equal(pairwise_mean(arrays), np.full(3, 3.0))
    
    def test_does_not_alias_input(self):
        a = np.ones(2)
        total = pairwise_sum([a])
        total += 1
        assert a[0] == 1.0
    
    def test_empty(self):
        with pytest.raises(ValueError):
            pairwise_sum([])
    
    def test_reduction_check(self):
        rng = np.random.default_rng(0)
        blocks = [rng.random((4, 5)) for _ in range(9)]
        check = reduction_check(blocks)
        assert check['passed']
        assert check['n_blocks'] == 9
        assert check['max_abs_diff'] < 1e-12
    
    def test_memory_estimate(self):
        assert memory_estimate(2, workers=1, matrices=1) == 64
        assert memory_estimate(2, workers=3, matrices=1) == 192


class TestTiming:
    def test_stage_timer(self):
        timings = {}
        with stage_timer(timings, "mcd.spectra"):
            pass
        with stage_timer(timings, "mcd.spectra"):
            pass
        assert list(timings) == ["mcd.spectra"]
        assert timings["mcd.spectra"] >= 0.0
    
    def test_stage_timer_records_on_error(self):
        timings = {}
        with pytest.raises(RuntimeError):
            with stage_timer(timings, "otoc.fits"):
                raise RuntimeError("boom")
        assert "otoc.fits" in timings
    
    def test_timing_decorator(self):
        @timing
        def work(x, timings=None):
            return 2 * x
        
        timings = {}
        assert work(3, timings=timings) == 6
        assert "work" in timings


class TestExceptions:
    @pytest.mark.parametrize("cls, code", [
        (SpinScrambleError, 1),
        (ConfigValidationError, 2),
        (GeometryError, 2),
        (CapExceededError, 3),
        (NumericalInvariantError, 4),
        (FitError, 4),
    ])
    def test_exit_codes(self, cls, code):
        assert cls("x").exit_code == code
    
    def test_diagnostic(self):
        assert ConfigValidationError("bad grid", invariant="t-grid").diagnostic() == "[t-grid] bad grid"
        assert SpinScrambleError("plain").diagnostic() == "plain"
    
    def test_hierarchy(self):
        assert issubclass(ConfigValidationError, ValueError)
        assert issubclass(NumericalInvariantError, ArithmeticError)
        assert issubclass(CapExceededError, SpinScrambleError)


class TestLogger:
    def test_file_handler_added_once(self, tmp_path):
        logger = setup_logger("SpinScrambleTest", level=logging.DEBUG)
        path = str(tmp_path / "logs" / "run.log")
        add_file_handler(logger, path)
        add_file_handler(logger, path)
        file_handlers = [h for h in logger.handlers if isinstance(h, logging.FileHandler)]
        assert len(file_handlers) == 1
        logger.info("测试日志")
        for handler in file_handlers:
            handler.flush()
            logger.removeHandler(handler)
            handler.close()
        assert "测试日志" in (tmp_path / "logs" / "run.log").read_text(encoding="utf-8")
