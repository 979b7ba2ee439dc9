"""
Errors - 异常层级
所有模块抛出的异常都继承自 WeberYZError，CLI 在命令边界统一映射为退出码
"""


class WeberYZError(Exception):
    """weberyz 异常基类"""


class DomainError(WeberYZError, ValueError):
    """输入不满足前置条件（n = 0、Im τ ≤ 0、非判别式等）"""


class PrecisionError(WeberYZError):
    """精度提升到上限后仍无法可靠取整"""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ResourceError(WeberYZError):
    """有界搜索在上限内没有找到结果"""


class UsageError(WeberYZError):
    """命令行或配置使用错误"""
