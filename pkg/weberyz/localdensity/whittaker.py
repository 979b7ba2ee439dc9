"""
Whittaker - 局部 Whittaker 函数 W_m(s, μ)
闭式按 μ 的位置分三族；暴力核对把 b 积分拆成壳层，每层化为 p^j 剩余计数
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import log
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from ..arith import INF, Rational, as_fraction, hilbert_symbol, legendre_unit, residue, valuation
from ..errors import DomainError, ResourceError

Coeffs = Tuple[Fraction, ...]

ORACLE_CAP = 1 << 21
DEFAULT_DEPTH = 12


def _trim(coeffs: Sequence[Rational]) -> Coeffs:
    out = [as_fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _add(*polys: Sequence[Fraction]) -> Coeffs:
    size = max((len(p) for p in polys), default=0)
    out = [Fraction(0)] * size
    for poly in polys:
        for k, c in enumerate(poly):
            out[k] += c
    return _trim(out)


def _mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Coeffs:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _mono(coef: Rational, exp: int) -> Coeffs:
    if exp < 0:
        raise DomainError(f"negative power X^{exp}")
    return _trim([0] * exp + [coef])


def _geometric(coef: Fraction, step: int, count: int) -> Coeffs:
    """Σ_{0≤n<count} (coef·X^step)^n"""
    return _add(*(_mono(coef ** n, step * n) for n in range(max(count, 0))))


def _head(q: Fraction, count: int) -> Coeffs:
    """(1 − X) Σ_{0≤n<count} (qX)^n"""
    return _mul((Fraction(1), Fraction(-1)), _geometric(q, 1, count))


def _tail(q: Fraction, ok: int, count: int) -> Coeffs:
    """(1 − X²)(qX)^{o(κ)} Σ_{0≤n<count} (qX²)^n"""
    if count <= 0:
        return ()
    return _mul(_mul((Fraction(1), Fraction(0), Fraction(-1)), _mono(q ** ok, ok)),
                _geometric(q, 2, count))


def _linear(c: Rational) -> Coeffs:
    """1 + cX"""
    return _trim([1, c])


def _render_poly(coeffs: Coeffs) -> str:
    if not coeffs:
        return "0"
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = "X" if k == 1 else f"X^{k}"
            body = power if mag == 1 else f"{mag}·{power}"
        terms.append(("-" if c < 0 else "+", body))
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class WhittakerSeries:
    """p^{k/2} · N(X) / (1 − χX)，X = p^{−s}"""
    p: int
    prefactor_halfpow: int
    poly: Coeffs
    chi: int = 0

    def __post_init__(self):
        object.__setattr__(self, "poly", _trim(self.poly))
        if self.chi not in (-1, 0, 1):
            raise DomainError(f"denominator character must be 0 or ±1, got {self.chi}")

    @classmethod
    def zero(cls, p: int, prefactor_halfpow: int = 0) -> "WhittakerSeries":
        return cls(p, prefactor_halfpow, ())

    @property
    def is_zero(self) -> bool:
        return not self.poly

    def coefficient(self, n: int) -> Fraction:
        """展开后 X^n 的系数（不含 p^{k/2}）"""
        if self.chi == 0:
            return self.poly[n] if n < len(self.poly) else Fraction(0)
        total = Fraction(0)
        for k in range(min(n, len(self.poly) - 1) + 1):
            total += self.poly[k] * self.chi ** (n - k)
        return total

    def coefficients(self, depth: int) -> List[Fraction]:
        return [self.coefficient(n) for n in range(depth + 1)]

    def value_at_one(self) -> Fraction:
        """s = 0 处的值（不含 p^{k/2}）"""
        if self.chi == 1:
            raise DomainError("series has a pole at X = 1")
        return sum(self.poly, Fraction(0)) / (1 - self.chi)

    def derivative_at_one(self) -> Fraction:
        """d/dX 在 X = 1 处的值（不含 p^{k/2}）"""
        if self.chi == 1:
            raise DomainError("series has a pole at X = 1")
        value = sum(self.poly, Fraction(0))
        slope = sum((k * c for k, c in enumerate(self.poly)), Fraction(0))
        denom = 1 - self.chi
        return slope / denom + self.chi * value / (denom * denom)

    def derivative_in_s(self) -> float:
        """W′(0) = −log p · X d/dX 在 X = 1，含 p^{k/2}"""
        return -log(self.p) * float(self.derivative_at_one()) * self.p ** (self.prefactor_halfpow / 2)

    def times_linear(self, c: Rational) -> "WhittakerSeries":
        """乘以 (1 + cX)；c = −χ 时约去几何分母"""
        c = as_fraction(c)
        if self.chi and c == -self.chi:
            return WhittakerSeries(self.p, self.prefactor_halfpow, self.poly, 0)
        return WhittakerSeries(self.p, self.prefactor_halfpow, _mul(self.poly, _linear(c)), self.chi)

    def to_json(self) -> Dict:
        return {
            "p": str(self.p),
            "prefactor_halfpow": str(self.prefactor_halfpow),
            "coefficients": [str(c) for c in self.poly],
            "denominator_chi": str(self.chi),
        }

    def render(self) -> str:
        """如 5^(-1/2) · (1 - X)"""
        k = self.prefactor_halfpow
        if k == 0:
            head = ""
        elif k % 2 == 0:
            head = f"{self.p}^{k // 2} · "
        else:
            head = f"{self.p}^({k}/2) · "
        body = f"({_render_poly(self.poly)})"
        if self.chi:
            body += f" / (1 {'-' if self.chi > 0 else '+'} X)"
        return head + body

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class LocalSetup:
    """F = ℚ_p 上的局部数据：Δ、κ 与 μ = μ₁ + μ₂√Δ ∈ (1/(κ√Δ))𝒪_Δ"""
    p: int
    Delta: Fraction
    kappa: Fraction
    mu1: Fraction = Fraction(0)
    mu2: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("Delta", "kappa", "mu1", "mu2"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.p == 2:
            raise DomainError("p = 2 is not supported by the local Whittaker formulas")
        if not isprime(self.p):
            raise DomainError(f"{self.p} is not prime")
        for name in ("Delta", "kappa"):
            value = getattr(self, name)
            if value == 0 or valuation(value, self.p) < 0:
                raise DomainError(f"{name} must be a nonzero p-integral number, got {value}")
        if self.mu1 and valuation(self.mu1, self.p) < -self.ok:
            raise DomainError(f"mu1 = {self.mu1} is not in (1/κ)𝒪")
        if self.mu2 and valuation(self.mu2, self.p) < -(self.ok + self.od):
            raise DomainError(f"mu2 = {self.mu2} is not in (1/(κΔ))𝒪")

    @property
    def od(self) -> int:
        return valuation(self.Delta, self.p)

    @property
    def ok(self) -> int:
        return valuation(self.kappa, self.p)

    def chi_at_pi(self) -> int:
        """χ_Δ(π)：分歧为 0，否则为单位部分的 Legendre 符号"""
        if self.od % 2:
            return 0
        return legendre_unit(self.Delta, self.p)

    def alpha(self, m: Rational) -> Fraction:
        """α(μ, m) = m − κμμ̄"""
        return as_fraction(m) - self.kappa * (self.mu1 ** 2 - self.Delta * self.mu2 ** 2)

    def normalized(self) -> "LocalSetup":
        """把整的 μ 分量平移为 0（W 只依赖 μ + 𝒪_Δ）"""
        mu1 = self.mu1 if self.mu1 and valuation(self.mu1, self.p) < 0 else Fraction(0)
        mu2 = self.mu2 if self.mu2 and valuation(self.mu2, self.p) < 0 else Fraction(0)
        return LocalSetup(self.p, self.Delta, self.kappa, mu1, mu2)

    def to_json(self) -> Dict:
        return {k: str(getattr(self, k)) for k in ("p", "Delta", "kappa", "mu1", "mu2")}


def _integral(x: Fraction, p: int) -> bool:
    return x == 0 or valuation(x, p) >= 0


def _unramified_or_zero(s: LocalSetup, m: Fraction, pre: int) -> WhittakerSeries:
    """μ ∈ 𝒪_Δ"""
    p, q = s.p, Fraction(s.p)
    od, ok = s.od, s.ok
    if not _integral(m, p):
        return WhittakerSeries.zero(p, pre)
    if m == 0:
        half = od // 2
        chi = s.chi_at_pi()
        head = _add(_head(q, ok), _tail(q, ok, half))
        last = _mul(_mono(q ** ((2 * ok + od) // 2), ok + 2 * half), _linear(-chi / q))
        return WhittakerSeries(p, pre, _add(_mul(head, _linear(-chi)), last), chi)
    om = valuation(m, p)
    d = om - ok
    if d < 0:
        return WhittakerSeries(p, pre, _head(q, om + 1))
    if d < od:
        poly = _add(_head(q, ok), _tail(q, ok, (d + 1) // 2))
        if d % 2 == 0:
            last = _mul(_mono(q ** ((om + ok) // 2), om), _linear(legendre_unit(m * s.kappa, p)))
            poly = _add(poly, last)
        return WhittakerSeries(p, pre, poly)
    if od % 2 == 0:
        chi = s.chi_at_pi()
        geo = _add(*(_mono(Fraction(chi) ** n, n) for n in range(od, d + 1)))
        last = _mul(_mul(_mono(q ** ((2 * ok + od) // 2), ok), _linear(-chi / q)), geo)
        return WhittakerSeries(p, pre, _add(_head(q, ok), _tail(q, ok, od // 2), last))
    sign = hilbert_symbol(m * s.kappa, s.Delta, p)
    bracket = _add((Fraction(1),), _mono(sign, d - od + 2))
    last = _mul(_mono(q ** ((2 * ok + od - 1) // 2), ok + od - 1), bracket)
    return WhittakerSeries(p, pre, _add(_head(q, ok), _tail(q, ok, (od - 1) // 2), last))


def _imaginary_coset(s: LocalSetup, m: Fraction, pre: int,
                     as_printed: bool) -> WhittakerSeries:
    """μ₁ = 0 且 o(Δμ₂) ≥ 0"""
    p, q = s.p, Fraction(s.p)
    ok = s.ok
    alpha = s.alpha(m)
    if not _integral(alpha, p):
        return WhittakerSeries.zero(p, pre)
    oa = valuation(alpha, p)
    omm = oa - ok
    omu = valuation(s.Delta * s.mu2, p)
    if omm < 0:
        return WhittakerSeries(p, pre, _head(q, oa + 1))
    if omm < omu:
        poly = _add(_head(q, ok), _tail(q, ok, (omm + 1) // 2))
        if omm % 2 == 0:
            exp = omm if as_printed else ok + omm
            last = _mul(_mono(q ** (ok + omm // 2), exp),
                        _linear(legendre_unit(s.kappa * alpha, p)))
            poly = _add(poly, last)
        return WhittakerSeries(p, pre, poly)
    half = omu // 2
    head = _head(q, ok + 1 if as_printed else ok)
    return WhittakerSeries(p, pre, _add(head, _tail(q, ok, half),
                                        _mono(q ** (half + ok), 2 * half + ok)))


def _general_coset(s: LocalSetup, m: Fraction, pre: int) -> WhittakerSeries:
    """μ₁ ∉ 𝒪 或 o(Δμ₂) < 0"""
    p, q = s.p, Fraction(s.p)
    ok = s.ok
    parts = []
    if s.mu1:
        parts.append(valuation(s.mu1, p))
    if s.mu2:
        parts.append(valuation(s.mu2 * s.Delta, p))
    omu = min(parts)
    alpha = s.alpha(m)
    oa = valuation(alpha, p)
    if oa - ok < omu:
        if oa < 0:
            return WhittakerSeries.zero(p, pre)
        return WhittakerSeries(p, pre, _head(q, oa + 1))
    top = ok + omu
    return WhittakerSeries(p, pre, _add(_head(q, top), _mono(q ** top, top)))


def whittaker_closed(setup: LocalSetup, m: Rational, as_printed: bool = False) -> WhittakerSeries:
    """
    W_m(s, μ) 的闭式

    Args:
        setup: 局部数据（p 奇）
        m: 有理数
        as_printed: 对 μ₁ = 0、o(Δμ₂) ≥ 0 一族使用原始印刷形式
                    （第三种情形的求和上界 n ≤ o(κ)，第二种情形的单项式 X^{o(μ,m)}）

    Returns:
        WhittakerSeries: 前因子为 |Δ|^{1/2}，即 prefactor_halfpow = −o(Δ)
    """
    m = as_fraction(m)
    s = setup.normalized()
    pre = -s.od
    if s.mu1 == 0 and s.mu2 == 0:
        return _unramified_or_zero(s, m, pre)
    if s.mu1 == 0 and valuation(s.Delta * s.mu2, s.p) >= 0:
        return _imaginary_coset(s, m, pre, as_printed)
    return _general_coset(s, m, pre)


def max_oracle_depth(p: int, cap: int = ORACLE_CAP) -> int:
    """满足 p^depth ≤ cap 的最大 depth"""
    depth = 0
    while p ** (depth + 1) <= cap:
        depth += 1
    return depth


def suggested_depth(setup: LocalSetup, m: Rational, cap: int = ORACLE_CAP) -> int:
    """闭式系数在 o(α/κ) + o(Δ) + 2 之后消失或呈几何形，再加 2"""
    alpha = setup.alpha(m)
    base = max(valuation(alpha, setup.p), 0) if alpha else 0
    wanted = max(1, base + setup.od + setup.ok + 4)
    return max(1, min(wanted, max_oracle_depth(setup.p, cap)))


def _count_solutions(p: int, j: int, lin1: int, quad1: int, lin2: int, quad2: int,
                     alpha: Fraction) -> int:
    """#{(y₁, y₂) mod p^j : h₁(y₁) − h₂(y₂) ≡ α}"""
    M = p ** j
    y = np.arange(M, dtype=np.int64)
    sq = (y * y) % M
    h1 = ((lin1 % M) * y + (quad1 % M) * sq) % M
    h2 = ((lin2 % M) * y + (quad2 % M) * sq) % M
    c1 = np.bincount(h1, minlength=M)
    c2 = np.bincount(h2, minlength=M)
    return int(np.dot(c1, np.roll(c2, residue(alpha, M))))


def whittaker_oracle(setup: LocalSetup, m: Rational, depth: int,
                     cap: int = ORACLE_CAP) -> WhittakerSeries:
    """
    由积分定义直接计算 |Δ|^{−1/2}W 的前 depth+1 个系数

    Args:
        setup: 局部数据
        m: 有理数
        depth: 壳层数（≥ 1）
        cap: p^depth 的上限

    Returns:
        WhittakerSeries: 截断到 X^depth 的精确有理系数
    """
    if depth < 1:
        raise DomainError(f"depth must be positive, got {depth}")
    p = setup.p
    if p ** depth > cap:
        raise ResourceError(f"{p}^{depth} residues exceed the oracle cap {cap}")
    pre = -setup.od
    alpha = setup.alpha(m)
    if not _integral(alpha, p):
        return WhittakerSeries.zero(p, pre)
    kappa, Delta = setup.kappa, setup.Delta
    terms = {}
    for name, value in (("lin1", 2 * kappa * setup.mu1), ("quad1", kappa),
                        ("lin2", 2 * kappa * Delta * setup.mu2), ("quad2", kappa * Delta)):
        terms[name] = value
    coeffs = [Fraction(1)]
    previous = Fraction(1)
    for j in range(1, depth + 1):
        M = p ** j
        count = _count_solutions(p, j, *(residue(terms[k], M) for k in
                                         ("lin1", "quad1", "lin2", "quad2")), alpha)
        density = Fraction(count, M)
        coeffs.append(density - previous)
        previous = density
    return WhittakerSeries(p, pre, tuple(coeffs))


@dataclass
class WhittakerComparison:
    """闭式与暴力核对的逐系数比较"""
    setup: LocalSetup
    m: Fraction
    depth: int
    closed: WhittakerSeries
    printed: WhittakerSeries
    oracle: WhittakerSeries
    mismatches: List[int] = field(default_factory=list)
    printed_mismatches: List[int] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.mismatches

    @property
    def printed_agree(self) -> bool:
        return not self.printed_mismatches

    def to_json(self) -> Dict:
        return {
            "setup": self.setup.to_json(),
            "m": str(self.m),
            "depth": str(self.depth),
            "closed": self.closed.to_json(),
            "closed_text": self.closed.render(),
            "oracle": self.oracle.to_json(),
            "agree": self.agree,
            "printed_agree": self.printed_agree,
            "mismatched_degrees": [str(k) for k in self.mismatches],
        }


def compare_with_oracle(setup: LocalSetup, m: Rational, depth: Optional[int] = None,
                        cap: int = ORACLE_CAP) -> WhittakerComparison:
    """
    闭式（含印刷形式）与暴力核对

    Args:
        setup: 局部数据
        m: 有理数
        depth: 壳层数，默认 suggested_depth
        cap: 剩余计数上限

    Returns:
        WhittakerComparison
    """
    m = as_fraction(m)
    depth = depth or suggested_depth(setup, m, cap)
    closed = whittaker_closed(setup, m)
    printed = whittaker_closed(setup, m, as_printed=True)
    oracle = whittaker_oracle(setup, m, depth, cap)
    truth = oracle.coefficients(depth)
    return WhittakerComparison(
        setup, m, depth, closed, printed, oracle,
        [k for k, c in enumerate(closed.coefficients(depth)) if c != truth[k]],
        [k for k, c in enumerate(printed.coefficients(depth)) if c != truth[k]],
    )
