"""
WeberEval - η、Weber 函数与类不变量的任意精度求值
"""

from .eta import (
    BigComplex,
    PrecisionConfig,
    eta,
    weber_f,
    weber_f1,
    weber_f2,
    weber_product,
    zeta48,
)
from .invariants import (
    CMPoint,
    Gamma02Element,
    chi,
    chi_invariance_check,
    class_invariant,
    epsilon_D,
)

__all__ = [
    "BigComplex",
    "PrecisionConfig",
    "eta",
    "weber_f",
    "weber_f1",
    "weber_f2",
    "weber_product",
    "zeta48",
    "CMPoint",
    "Gamma02Element",
    "chi",
    "chi_invariance_check",
    "class_invariant",
    "epsilon_D",
]
