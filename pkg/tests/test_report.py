"""
配置与报告测试
"""

import json

import pytest

from conftest import DISC_31, DISC_31_VALUE, HALF
from weberyz.arith import FactorizationMap, factorize
from weberyz.errors import UsageError
from weberyz.report import SCHEMA_VERSION, SweepReport, VerificationReport
from weberyz.settings import DEFAULT_CONFIG, load_config
from weberyz.webereval.eta import PREC_ENV


def _report(predicted=None):
    numeric = factorize(DISC_31_VALUE)
    return VerificationReport(
        command="verify-disc",
        inputs={"D": "-31", "s": "1"},
        numeric=numeric,
        predicted=predicted or FactorizationMap.from_exponents(DISC_31),
        precision_used=192,
        timings={"polynomial": 12.5},
        details={"rounding": {"max_error": "1e-40"}},
    )


# ---------------------------------------------------------------------------
# 配置
# ---------------------------------------------------------------------------

def test_defaults():
    """测试 1: 无配置文件时使用默认值"""
    config = load_config()
    assert config == DEFAULT_CONFIG
    assert config is not DEFAULT_CONFIG
    assert config["precision"]["default_bits"] == 192


def test_config_file_merges(tmp_path):
    """测试 2: 配置文件只覆盖给出的键，下划线键被忽略"""
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "_comment": "ignored",
        "precision": {"cap_bits": 4096},
        "sweep": {"jobs": 3},
    }), encoding="utf-8")
    config = load_config(str(path))
    assert config["precision"] == {"default_bits": 192, "cap_bits": 4096, "guard_bits": 16}
    assert config["sweep"]["jobs"] == 3
    assert config["sweep"]["dmin"] == DEFAULT_CONFIG["sweep"]["dmin"]
    assert "_comment" not in config
    # 默认值本身不被修改
    assert DEFAULT_CONFIG["precision"]["cap_bits"] == 65536


@pytest.mark.parametrize("content", ["{not json", "[1, 2]"])
def test_config_file_errors(tmp_path, content):
    """测试 3: 坏的配置文件"""
    path = tmp_path / "config.json"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(UsageError):
        load_config(str(path))
    with pytest.raises(UsageError):
        load_config(str(tmp_path / "missing.json"))


def test_env_override(monkeypatch):
    """测试 4: WEBER_YZ_PREC 覆盖默认精度"""
    monkeypatch.setenv(PREC_ENV, "256")
    assert load_config()["precision"]["default_bits"] == 256
    for bad in ("abc", "0", "-5"):
        monkeypatch.setenv(PREC_ENV, bad)
        with pytest.raises(UsageError):
            load_config()


# ---------------------------------------------------------------------------
# 报告
# ---------------------------------------------------------------------------

def test_report_match_and_serialization():
    """测试 5: 数字都写成字符串，往返后一致"""
    report = _report()
    assert report.match
    assert report.mismatched_primes() == []

    data = report.to_dict()
    assert data["schema"] == SCHEMA_VERSION
    assert data["match"] is True
    assert data["precision_used"] == "192"
    assert data["timings"] == {"polynomial": "12.500"}
    assert data["numeric"]["sign"] == "-1"
    assert data["numeric"]["entries"]["3"] == "12"
    assert data["predicted"]["entries"]["31"] == "1"

    again = VerificationReport.from_json(report.to_json())
    assert again.match
    assert again.numeric.same_exponents(report.numeric)
    assert again.predicted.entries == report.predicted.entries
    assert again.precision_used == 192
    assert "timings" not in report.to_dict(include_timings=False)


def test_report_mismatch():
    """测试 6: 指数不同的素数被列出"""
    predicted = FactorizationMap.from_exponents({**DISC_31, 31: HALF})
    report = _report(predicted)
    assert not report.match
    assert report.mismatched_primes() == [31]


def test_report_rejects_inconsistent_flag():
    """测试 7: match 字段与分解不符时拒绝"""
    data = _report().to_dict()
    data["match"] = False
    with pytest.raises(UsageError):
        VerificationReport.from_dict(data)
    del data["numeric"]
    with pytest.raises(UsageError):
        VerificationReport.from_dict(data)


def test_sweep_report_summary():
    """测试 8: 扫描汇总"""
    good = _report()
    bad = _report(FactorizationMap.from_exponents({3: 12}))
    sweep = SweepReport(-40, -1, [1], cases=[good, bad],
                        failures=[{"D": "-39", "s": "1", "error": "UsageError: x"}])
    assert sweep.passed == 1
    assert sweep.failed == 2
    assert not sweep.ok

    data = sweep.to_dict()
    assert data["summary"] == {"cases": "3", "passed": "1", "failed": "2"}
    assert all("timings" not in c for c in data["cases"])

    again = SweepReport.from_dict(json.loads(sweep.to_json()))
    assert (again.dmin, again.dmax, again.s_list) == (-40, -1, [1])
    assert again.to_dict() == data


def test_empty_sweep_is_ok():
    """测试 9: 空扫描"""
    sweep = SweepReport(-30, -25, [1])
    assert sweep.ok
    assert sweep.to_dict()["summary"]["cases"] == "0"
    with pytest.raises(UsageError):
        SweepReport.from_dict({"range": {}})
