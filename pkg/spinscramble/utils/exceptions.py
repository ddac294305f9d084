"""
异常定义
"""


class SpinScrambleError(Exception):
    exit_code = 1
    
    def __init__(self, message: str, invariant: str = ""):
        super().__init__(message)
        self.invariant = invariant
    
    def diagnostic(self) -> str:
        if self.invariant:
            return f"[{self.invariant}] {self}"
        return str(self)


class ConfigValidationError(SpinScrambleError, ValueError):
    exit_code = 2


class CapExceededError(SpinScrambleError):
    exit_code = 3


class NumericalInvariantError(SpinScrambleError, ArithmeticError):
    exit_code = 4


class GeometryError(SpinScrambleError, ValueError):
    exit_code = 2


class FitError(SpinScrambleError, ValueError):
    exit_code = 4
