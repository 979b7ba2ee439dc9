"""
Verifier - 验证流水线
精确类多项式 → 判别式/结式分解 → 预测赋值 → 逐素数比较
"""

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, TextIO, Tuple

import mpmath as mp
from tqdm import tqdm

from .arith import FactorizationMap, factorize, kronecker
from .classpoly.polynomial import (
    DiscClassResult,
    check_unit,
    disc_class_norms,
    discriminant_via_resultant,
    max_prime_factor,
    minimal_polynomial,
    poly_discriminant,
    resultant,
)
from .errors import DomainError, UsageError, WeberYZError
from .localdensity.whittaker import (
    LocalSetup,
    WhittakerComparison,
    compare_with_oracle,
    suggested_depth,
)
from .predictions.context import PredictionContext
from .predictions.formulas import predicted_disc_class, predicted_factorization
from .quadorders.forms import as_discriminant, class_group
from .report import SweepReport, VerificationReport
from .settings import load_config
from .webereval.eta import PrecisionConfig


def admissible_discriminants(dmin: int, dmax: int) -> List[int]:
    """[dmin, dmax] 中全部可容许的基本判别式，按绝对值递增"""
    found = []
    for D in range(max(dmax, dmin), min(dmin, dmax) - 1, -1):
        if D >= 0 or D % 8 != 1 or D % 3 == 0:
            continue
        if as_discriminant(D).is_fundamental:
            found.append(D)
    return found


def _nonresidue(p: int) -> int:
    n = 2
    while kronecker(n, p) != -1:
        n += 1
    return n


def whittaker_grid(primes: Sequence[int] = (3, 5, 7, 11)) -> Iterator[Tuple[LocalSetup, Fraction]]:
    """闭式核对用的 (局部数据, m) 网格"""
    for p in primes:
        u = _nonresidue(p)
        for Delta in (1, u, p, p * u):
            for kappa in (1, u, p):
                mus = ((0, 0), (Fraction(1, kappa), 0), (0, Fraction(1, kappa * Delta)))
                for mu1, mu2 in mus:
                    for m in (0, 1, u, p, p * u, p * p, Fraction(1, p)):
                        yield LocalSetup(p, Delta, kappa, mu1, mu2), Fraction(m)


class VerificationPipeline:
    """
    验证流水线

    工作流：
    1. ClassPoly - 数值求类不变量，取整得到精确极小多项式
    2. 精确判别式 / 结式及其分解
    3. Predictions - 一般公式与理想对计数给出的预测赋值
    4. 逐素数比较
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None, quiet: bool = False,
                 stream: Optional[TextIO] = None, use_cache: Optional[bool] = None,
                 prec: Optional[int] = None):
        self.config = config if config is not None else load_config()
        self.quiet = quiet
        self.stream = stream or sys.stdout
        self.use_cache = self.config["cache"]["enabled"] if use_cache is None else use_cache
        self.prec = prec

        # 各阶段懒加载
        self._precision = None
        self._cache = None

    @property
    def precision(self) -> PrecisionConfig:
        """懒加载精度配置"""
        if self._precision is None:
            section = dict(self.config["precision"])
            if self.prec is not None:
                if self.prec <= 0:
                    raise UsageError(f"--prec must be positive, got {self.prec}")
                section["default_bits"] = self.prec
            base = PrecisionConfig.from_config(section)
            if self.prec is not None:
                base = PrecisionConfig(self.prec, base.cap_bits, base.guard_bits)
            self._precision = base
        return self._precision

    @property
    def cache(self):
        """懒加载多项式缓存"""
        if self._cache is None and self.use_cache:
            from .classpoly.cache import PolynomialCache
            self._cache = PolynomialCache(self.config["cache"]["path"])
        return self._cache

    def _log(self, message: str = "") -> None:
        if not self.quiet:
            print(message, file=self.stream)

    def _banner(self, title: str) -> None:
        self._log(f"\n{'='*60}")
        self._log(title)
        self._log(f"{'='*60}\n")

    @contextmanager
    def _timed(self, timings: Dict[str, float], stage: str):
        start = time.perf_counter()
        yield
        timings[stage] = (time.perf_counter() - start) * 1000.0

    @staticmethod
    def _context(D1: int, D2: int, s: int) -> PredictionContext:
        try:
            return PredictionContext(D1, D2, s)
        except DomainError as e:
            raise UsageError(str(e)) from None

    # ------------------------------------------------------------------
    # 判别式
    # ------------------------------------------------------------------

    def verify_disc(self, D: int, s: int, class_index: Optional[int] = None,
                    check_routes: bool = True, check_norms: bool = True) -> VerificationReport:
        """
        验证 disc(D; s) 的分解

        Args:
            D: 可容许的基本判别式
            s: 24 的因子
            class_index: 只在逐类表中列出第 k 个类（class_group 顺序）
            check_routes: 逐类比较一般公式与理想对计数
            check_norms: 逐类数值计算 disc(D; s, Ã) 的范数，与两倍预测比较

        Returns:
            VerificationReport
        """
        ctx = self._context(D, D, s)
        group = class_group(D)
        if class_index is not None and not 1 <= class_index < len(group):
            raise UsageError(f"--class-index must be in 1..{len(group) - 1}, got {class_index}")
        timings: Dict[str, float] = {}

        self._banner(f"🔢 weberyz - 验证判别式 disc(D={D}; s={s})")

        self._log("[1/4] 🧮 计算类多项式...")
        with self._timed(timings, "polynomial"):
            poly, rounding = minimal_polynomial(D, s, precision=self.precision, cache=self.cache)
        self._log(f"      P(X) = {poly}")
        self._log(f"      精度 {rounding.prec_used} bits，最大取整偏差 {mp.nstr(rounding.max_offset, 3)}")

        self._log("[2/4] 📐 精确判别式...")
        with self._timed(timings, "discriminant"):
            disc = poly_discriminant(poly)
            numeric = factorize(disc)
            checks = {
                "unit": check_unit(poly),
                "prime_bound": max_prime_factor(disc) <= abs(D),
                "resultant_discriminant": discriminant_via_resultant(poly) == disc,
            }
        self._log(f"      disc = {numeric}")

        norms: Dict[Any, DiscClassResult] = {}
        if check_norms:
            listed = group.nontrivial() if class_index is None else [group[class_index]]
            with self._timed(timings, "class_norms"):
                for result in disc_class_norms(D, s, listed, prec=rounding.prec_used,
                                               precision=self.precision):
                    norms[result.atilde] = result
            if class_index is None:
                product = 1
                for result in norms.values():
                    product *= result.norm
                # ∏ Nm disc(D; s, Ã) = Nm disc(D; s) = disc²
                checks["norm_product"] = product == disc * disc

        self._log("[3/4] 🔮 预测赋值...")
        per_class: Dict[str, Any] = {}
        with self._timed(timings, "prediction"):
            predicted = FactorizationMap.from_exponents({})
            for k, A in enumerate(group.nontrivial(), start=1):
                main = predicted_disc_class(ctx, A, "main")
                predicted = predicted + main
                if class_index is not None and k != class_index:
                    continue
                row = {"index": str(k), "main": main.to_json()}
                if check_routes:
                    pairs = predicted_disc_class(ctx, A, "pairs")
                    row["pairs"] = pairs.to_json()
                    row["routes_agree"] = pairs.same_exponents(main)
                if A in norms:
                    norm = factorize(norms[A].norm)
                    row["norm"] = norm.to_json()
                    row["pairing"] = norms[A].pairing
                    row["norm_agrees"] = norm.same_exponents(main + main)
                per_class[A.label] = row
                self._log(f"      {A.label}: {main}")

        report = VerificationReport(
            command="verify-disc",
            inputs={"D": str(D), "s": str(s),
                    "classes": [A.label for A in group.nontrivial()]},
            numeric=numeric,
            predicted=predicted,
            precision_used=rounding.prec_used,
            timings=timings,
            details={
                "polynomial": poly.to_json(),
                "polynomial_text": str(poly),
                "discriminant": str(disc),
                "rounding": rounding.to_json(),
                "checks": checks,
                "per_class": per_class,
                "routes_agree": all(row.get("routes_agree", True) for row in per_class.values()),
                "norms_agree": all(row.get("norm_agrees", True) for row in per_class.values()),
            },
        )

        self._log("[4/4] ✅ 比较..." if report.match else "[4/4] ❌ 比较...")
        self._summary(report)
        return report

    # ------------------------------------------------------------------
    # 结式
    # ------------------------------------------------------------------

    def verify_resultant(self, D1: int, D2: int, s: int,
                         check_routes: bool = True) -> VerificationReport:
        """
        验证 Res(P₁, P₂) 的分解

        Args:
            D1: 可容许判别式
            D2: 可容许判别式，D₁D₂ 为平方数且 D₁ ≠ D₂
            s: 24 的因子
            check_routes: 同时用一般公式按纤维求和作交叉核对

        Returns:
            VerificationReport
        """
        if D1 == D2:
            raise UsageError("verify-resultant needs D1 != D2 (t = 1 is the discriminant case)")
        ctx = self._context(D1, D2, s)
        split = [p for p in factorize(ctx.t).primes() if kronecker(ctx.D0, p) == 1]
        if split:
            raise UsageError(f"primes {split} dividing t = {ctx.t} split in Q(√{ctx.D0})")
        timings: Dict[str, float] = {}

        self._banner(f"🔢 weberyz - 验证结式 Res(P[{D1}], P[{D2}]), s={s}")

        self._log("[1/4] 🧮 计算两个类多项式...")
        with self._timed(timings, "polynomial"):
            P1, r1 = minimal_polynomial(D1, s, precision=self.precision, cache=self.cache)
            P2, r2 = minimal_polynomial(D2, s, precision=self.precision, cache=self.cache)
        self._log(f"      P₁(X) = {P1}")
        self._log(f"      P₂(X) = {P2}")

        self._log("[2/4] 📐 精确结式...")
        with self._timed(timings, "resultant"):
            value = resultant(P1, P2)
            if value == 0:
                raise DomainError(f"Res(P[{D1}], P[{D2}]) vanishes")
            numeric = factorize(value)
        self._log(f"      Res = {numeric}")

        self._log("[3/4] 🔮 预测赋值...")
        details: Dict[str, Any] = {}
        with self._timed(timings, "prediction"):
            predicted = predicted_factorization(ctx)
            if check_routes:
                main = predicted_factorization(ctx, route="main")
                details["main_route"] = main.to_json()
                details["routes_agree"] = main.same_exponents(predicted)
        self._log(f"      预测 = {predicted}")

        details.update({
            "polynomials": [P1.to_json(), P2.to_json()],
            "polynomial_texts": [str(P1), str(P2)],
            "resultant": str(value),
            "rounding": [r1.to_json(), r2.to_json()],
            "checks": {
                "unit": check_unit(P1) and check_unit(P2),
                "prime_bound": max_prime_factor(value) <= abs(ctx.D0) * ctx.t,
            },
        })
        report = VerificationReport(
            command="verify-resultant",
            inputs={"D1": str(D1), "D2": str(D2), "s": str(s)},
            numeric=numeric,
            predicted=predicted,
            precision_used=max(r1.prec_used, r2.prec_used),
            timings=timings,
            details=details,
        )
        self._log("[4/4] ✅ 比较..." if report.match else "[4/4] ❌ 比较...")
        self._summary(report)
        return report

    def _summary(self, report: VerificationReport) -> None:
        self._log(f"\n{'='*60}")
        if report.match:
            self._log(f"🎉 一致: {report.numeric}")
        else:
            self._log(f"⚠️ 不一致，涉及素数 {report.mismatched_primes()}")
            self._log(f"   数值: {report.numeric}")
            self._log(f"   预测: {report.predicted}")
        self._log(f"{'='*60}\n")

    # ------------------------------------------------------------------
    # 批量扫描
    # ------------------------------------------------------------------

    def sweep_cases(self, dmin: int, dmax: int, s_list: Sequence[int],
                    jobs: int = 1) -> SweepReport:
        """
        对区间内全部可容许基本判别式和每个 s 做判别式验证

        Args:
            dmin: 区间下端（负数）
            dmax: 区间上端（负数）
            s_list: 24 的因子列表
            jobs: 进程数

        Returns:
            SweepReport: 单个用例的失败被收集，不中断扫描
        """
        if dmin > dmax:
            raise UsageError(f"empty range: dmin = {dmin} > dmax = {dmax}")
        if jobs < 1:
            raise UsageError(f"--jobs must be positive, got {jobs}")
        for s in s_list:
            if s <= 0 or 24 % s:
                raise UsageError(f"s must divide 24, got {s}")
        tasks = [(D, s) for D in admissible_discriminants(dmin, dmax) for s in s_list]

        self._banner(f"🔁 weberyz - 扫描 D ∈ [{dmin}, {dmax}]，s ∈ {list(s_list)}")
        self._log(f"      共 {len(tasks)} 个用例，{jobs} 个进程")

        payload = [(self.config, self.prec, D, s) for D, s in tasks]
        if jobs == 1:
            outcomes = [_sweep_case(item) for item in
                        tqdm(payload, desc="sweep", disable=self.quiet, file=sys.stderr)]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(tqdm(pool.map(_sweep_case, payload), total=len(payload),
                                     desc="sweep", disable=self.quiet, file=sys.stderr))

        report = SweepReport(dmin, dmax, list(s_list))
        for (D, s), (case, failure) in zip(tasks, outcomes):
            if failure is not None:
                report.failures.append(failure)
            elif case is not None:
                report.cases.append(VerificationReport.from_dict(case))

        self._log(f"\n{'='*60}")
        self._log(f"{'🎉' if report.ok else '⚠️'} 通过 {report.passed}，失败 {report.failed}")
        self._log(f"{'='*60}\n")
        return report

    # ------------------------------------------------------------------
    # Whittaker
    # ------------------------------------------------------------------

    def whittaker_compare(self, p: int, Delta, kappa, m, mu1=0, mu2=0,
                          depth: Optional[int] = None) -> WhittakerComparison:
        """闭式与暴力核对的比较"""
        if p == 2:
            raise UsageError("p = 2 is not supported")
        try:
            setup = LocalSetup(p, Fraction(Delta), Fraction(kappa), Fraction(mu1), Fraction(mu2))
        except DomainError as e:
            raise UsageError(str(e)) from None
        cap = self.config["whittaker"]["oracle_cap"]
        if depth is None:
            depth = min(self.config["whittaker"]["default_depth"],
                        suggested_depth(setup, Fraction(m), cap))
        result = compare_with_oracle(setup, Fraction(m), depth, cap=cap)
        self._log(f"闭式: {result.closed}")
        self._log(f"核对: {result.oracle}")
        self._log(f"agree={result.agree} printed_agree={result.printed_agree}")
        return result

    def whittaker_sweep(self, primes: Sequence[int] = (3, 5, 7, 11),
                        cap: Optional[int] = None) -> List[WhittakerComparison]:
        """在网格上逐一核对，深度按 cap 自动截断"""
        cap = cap or self.config["whittaker"]["oracle_cap"]
        grid = list(whittaker_grid(primes))
        results = [compare_with_oracle(setup, m, cap=cap)
                   for setup, m in tqdm(grid, desc="whittaker", disable=self.quiet,
                                        file=sys.stderr)]
        bad = [r for r in results if not r.agree]
        self._log(f"核对 {len(results)} 个配置，不一致 {len(bad)} 个，"
                  f"印刷形式不一致 {sum(1 for r in results if not r.printed_agree)} 个")
        return results

    def save(self, text: str, name: str) -> Path:
        """写入 output.directory"""
        out_dir = Path(self.config["output"]["directory"])
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / name
        path.write_text(text, encoding="utf-8")
        return path


def _sweep_case(item) -> Tuple[Optional[Dict[str, Any]], Optional[Dict[str, str]]]:
    """进程池中的单个用例；结果不含计时"""
    config, prec, D, s = item
    pipeline = VerificationPipeline(config, quiet=True, prec=prec)
    try:
        report = pipeline.verify_disc(D, s)
    except WeberYZError as e:
        return None, {"D": str(D), "s": str(s), "error": f"{type(e).__name__}: {e}"}
    report.timings = {}
    problems = case_problems(report)
    failure = None
    if problems:
        failure = {"D": str(D), "s": str(s), "error": "; ".join(problems)}
    return report.to_dict(include_timings=False), failure


def case_problems(report: VerificationReport) -> List[str]:
    """verify-disc 报告中除预测不一致外的全部问题，按发现顺序"""
    problems = []
    if not report.details.get("routes_agree", True):
        problems.append("general formula and pair counting disagree")
    if not report.details.get("norms_agree", True):
        problems.append("class norms disagree with twice the per-class prediction")
    failed = [k for k, v in report.details.get("checks", {}).items() if not v]
    if failed:
        problems.append(f"structural checks failed: {failed}")
    return problems
