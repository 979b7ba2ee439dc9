"""
weberyz 测试公共夹具
"""

from fractions import Fraction

import pytest

from weberyz.quadorders.forms import class_group
from weberyz.settings import load_config
from weberyz.webereval.eta import PREC_ENV, PrecisionConfig

# D = -31, s = 1 的类多项式（升幂系数）
POLY_31 = (-1, 9642, -165, 1)
DISC_31_VALUE = -1054527216039
DISC_31 = {3: 12, 11: 2, 23: 2, 31: 1}
# (D1, D2) = (-7, -175), s = 1 的结式
RES_7_175 = {3: 14, 5: 1, 7: 2, 19: 3, 31: 1}

HALF = Fraction(1, 2)


@pytest.fixture(autouse=True)
def _no_prec_env(monkeypatch):
    """测试不受外部 WEBER_YZ_PREC 影响"""
    monkeypatch.delenv(PREC_ENV, raising=False)


@pytest.fixture(scope="session")
def precision():
    return PrecisionConfig()


@pytest.fixture(scope="session")
def group31():
    return class_group(-31)


@pytest.fixture
def config(tmp_path):
    """默认配置，输出与缓存放在临时目录"""
    cfg = load_config()
    cfg["output"]["directory"] = str(tmp_path / "output")
    cfg["cache"]["path"] = str(tmp_path / "cache" / "polynomials.db")
    return cfg
