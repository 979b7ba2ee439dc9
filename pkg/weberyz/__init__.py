"""
weberyz - Weber 类不变量的判别式与结式赋值

计算 Weber 类不变量的精确类多项式，分解其判别式与两两结式，
并与由局部密度、理想计数给出的预测赋值逐素数比较。
"""

__version__ = "1.0.0"
__author__ = "weberyz Contributors"

from .arith import FactorizationMap, factorize
from .errors import DomainError, PrecisionError, ResourceError, UsageError, WeberYZError
from .predictions import PredictionContext, predicted_factorization
from .report import SweepReport, VerificationReport
from .verifier import VerificationPipeline

__all__ = [
    "FactorizationMap",
    "factorize",
    "WeberYZError",
    "DomainError",
    "PrecisionError",
    "ResourceError",
    "UsageError",
    "PredictionContext",
    "predicted_factorization",
    "VerificationReport",
    "SweepReport",
    "VerificationPipeline",
]
