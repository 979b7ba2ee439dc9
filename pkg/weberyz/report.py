"""
Report - 验证报告
数值分解与预测分解的对照结果，以及 JSON 序列化（所有数字写成十进制字符串）
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .arith import FactorizationMap
from .errors import UsageError

SCHEMA_VERSION = "1"


@dataclass
class VerificationReport:
    """单次验证（判别式或结式）的结果"""
    command: str
    inputs: Dict[str, str]
    numeric: FactorizationMap
    predicted: FactorizationMap
    precision_used: int = 0
    timings: Dict[str, float] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def match(self) -> bool:
        """两份分解的指数完全相同（符号不参与比较）"""
        return self.numeric.same_exponents(self.predicted)

    def mismatched_primes(self) -> List[int]:
        primes = set(self.numeric.primes()) | set(self.predicted.primes())
        return sorted(p for p in primes
                      if self.numeric.exponent(p) != self.predicted.exponent(p))

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        data = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": dict(self.inputs),
            "numeric": self.numeric.to_json(),
            "predicted": self.predicted.to_json(),
            "match": self.match,
            "precision_used": str(self.precision_used),
            "details": self.details,
        }
        if include_timings:
            data["timings"] = {k: f"{v:.3f}" for k, v in self.timings.items()}
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        try:
            report = cls(
                command=data["command"],
                inputs=dict(data["inputs"]),
                numeric=FactorizationMap.from_json(data["numeric"]),
                predicted=FactorizationMap.from_json(data["predicted"]),
                precision_used=int(data.get("precision_used", "0")),
                timings={k: float(v) for k, v in data.get("timings", {}).items()},
                details=data.get("details", {}),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"malformed verification report: {e}") from None
        if "match" in data and bool(data["match"]) != report.match:
            raise UsageError("report 'match' flag disagrees with its factorizations")
        return report

    def to_json(self, indent: Optional[int] = 2, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), indent=indent, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))


@dataclass
class SweepReport:
    """批量扫描的汇总；不含计时字段，故输出与并行度无关"""
    dmin: int
    dmax: int
    s_list: List[int]
    cases: List[VerificationReport] = field(default_factory=list)
    failures: List[Dict[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c.match)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed + len(self.failures)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "command": "sweep",
            "range": {"dmin": str(self.dmin), "dmax": str(self.dmax)},
            "s_list": [str(s) for s in self.s_list],
            "summary": {
                "cases": str(len(self.cases) + len(self.failures)),
                "passed": str(self.passed),
                "failed": str(self.failed),
            },
            "cases": [c.to_dict(include_timings=False) for c in self.cases],
            "failures": list(self.failures),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SweepReport":
        try:
            return cls(
                dmin=int(data["range"]["dmin"]),
                dmax=int(data["range"]["dmax"]),
                s_list=[int(s) for s in data["s_list"]],
                cases=[VerificationReport.from_dict(c) for c in data["cases"]],
                failures=list(data.get("failures", [])),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"malformed sweep report: {e}") from None

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)
