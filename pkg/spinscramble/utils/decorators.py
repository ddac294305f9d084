"""
装饰器工具
"""
import time
import functools
from contextlib import contextmanager
from typing import Callable, Any, Dict, Iterator, Optional
from .logger import get_logger

logger = get_logger()


def timing(func: Callable) -> Callable:
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        timings: Optional[Dict[str, float]] = kwargs.get('timings')
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        execution_time = time.perf_counter() - start_time
        
        if timings is not None:
            timings[func.__name__] = timings.get(func.__name__, 0.0) + execution_time
        logger.info(f"函数 {func.__name__} 执行时间: {execution_time:.4f} 秒")
        
        return result
    
    return wrapper


@contextmanager
def stage_timer(timings: Dict[str, float], stage: str) -> Iterator[None]:
    start_time = time.perf_counter()
    logger.info(f"阶段 {stage} 开始")
    try:
        yield
    finally:
        elapsed = time.perf_counter() - start_time
        timings[stage] = timings.get(stage, 0.0) + elapsed
        logger.info(f"阶段 {stage} 完成, 用时 {elapsed:.4f} 秒")
