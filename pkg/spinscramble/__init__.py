"""
SpinScramble - 中心自旋模型回波实验模拟器
"""

__version__ = "1.0.0"
__author__ = "SpinScramble Team"
