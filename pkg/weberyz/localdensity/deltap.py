"""
DeltaP - p | D 处的局部因子 δ_p、δ′_p 与 ρ′
按 (r, r₀, o_p(n), α̃ 的赋值) 查表；另提供经由 Whittaker 闭式的独立计算
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Tuple

from ..arith import Rational, as_fraction, kronecker, legendre_unit, valuation
from ..errors import DomainError
from ..quadorders.counting import diff_set, rho_p
from .whittaker import LocalSetup, WhittakerSeries, whittaker_closed

AlphaPair = Tuple[Rational, Rational]


@dataclass(frozen=True)
class DeltaValues:
    """(δ_p, δ′_p)"""
    value: Fraction
    derivative: Fraction


def _check_prime(D0: int, t: int, p: int) -> None:
    if (D0 * t * t) % p:
        raise DomainError(f"{p} does not divide D = {D0 * t * t}")
    if p == 2:
        raise DomainError("δ_p is only defined for odd p | D")


class _Local:
    """一次查表所需的 p 进数据"""

    def __init__(self, D0: int, t: int, a: int, n: Rational, alpha: AlphaPair, p: int):
        self.p = p
        self.D0, self.t, self.a = D0, t, a
        self.n = as_fraction(n)
        self.a1, self.a2 = as_fraction(alpha[0]), as_fraction(alpha[1])
        self.r = valuation(D0 * t, p)
        self.r0 = valuation(D0, p)
        self.on = valuation(self.n, p)
        self.o1 = valuation(self.a1, p)
        self.o2 = valuation(self.a2, p)
        self.alpha = 1 - self.a2 ** 2 / (a * t)
        self.oa = valuation(self.alpha, p)
        self.eps = kronecker(D0, p)

    @property
    def in_sqrt_D(self) -> bool:
        """α̃ ∈ √D𝒪"""
        return self.o1 >= self.r and self.o2 >= self.r - self.r0

    @property
    def in_t_O(self) -> bool:
        ot = self.r - self.r0
        return self.o1 >= ot and self.o2 >= ot

    @property
    def inv_L(self) -> Fraction:
        """1/L(1, ε) = 1 − ε(p)/p"""
        return 1 - Fraction(self.eps, self.p)

    def chi(self, x: Fraction) -> int:
        return legendre_unit(x, self.p)


def _value_table(loc: _Local) -> Fraction:
    p, r, r0, on = loc.p, loc.r, loc.r0, loc.on
    q = Fraction(p)
    if loc.in_sqrt_D:
        if 2 * r - r0 <= on < 2 * r and (on - r0) % 2 == 0:
            return q ** ((on - r0) // 2) * (1 + loc.chi(loc.a * loc.n / loc.D0))
        if 2 * r <= on and loc.eps == 1:
            return q ** (r - r0 // 2) * loc.inv_L * (on - 2 * r + 1)
        if 2 * r <= on:
            return q ** (r - ceil(r0 / 2)) * loc.inv_L * (2 + loc.eps)
    oa, o1 = loc.oa, loc.o1
    if r == r0 and 0 <= oa < o1 < r and oa % 2 == 0:
        return q ** oa * (1 + loc.chi(-loc.a * loc.t * loc.alpha))
    if r == r0 and o1 <= min(oa, r - 1):
        return q ** (o1 // 2)
    if r0 < r and min(loc.o1, loc.o2) == 0:
        return Fraction(1)
    return Fraction(0)


def _derivative_table(loc: _Local) -> Fraction:
    p, r, r0, on = loc.p, loc.r, loc.r0, loc.on
    q = Fraction(p)
    if loc.in_sqrt_D:
        if r <= on < 2 * r - r0:
            return (q ** (on - r + 1) - 1) / (p - 1)
        if 2 * r - r0 <= on < 2 * r:
            k = on - r0 + 1
            return (q ** ((k + 1) // 2) + q ** (k // 2) - q ** (r - r0) - 1) / (p - 1)
        if 2 * r <= on:
            top = q ** (r - ceil(r0 / 2))
            head = (2 * top - q ** (r - r0) - 1) / (p - 1)
            return head + (2 + loc.eps) * top * loc.inv_L / 2 * (on - 2 * (r0 // 2) + r0 - 2 * r + 1)
    if loc.in_t_O and not loc.in_sqrt_D and r0 < r:
        return Fraction(1)
    oa, o1 = loc.oa, loc.o1
    if r == r0 and oa < o1 < r:
        even = Fraction(p) ** (oa // 2) if oa % 2 == 0 else 0
        return 2 * (q ** ceil(oa / 2) - 1) / (p - 1) + even
    if 0 < min(loc.o1, loc.o2) < r - r0:
        return Fraction(1)
    return Fraction(0)


def delta_values(D0: int, t: int, a: int, n: Rational, alpha: AlphaPair, p: int) -> DeltaValues:
    """
    δ_p(n, α̃) 与 δ′_p(n, α̃)

    Args:
        D0: 基本判别式
        t: 导子
        a: ã₀ 的范数（与 D 互素）
        n: 非负有理数
        alpha: α̃ = α̃₁ + α̃₂√D₀，满足 Nm(α̃)/a = −D₀t − n
        p: 奇素数，p | D₀t²

    Returns:
        DeltaValues: p ∈ Diff 时 value = 0，否则 derivative = 0
    """
    _check_prime(D0, t, p)
    n = as_fraction(n)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    loc = _Local(D0, t, a, n, alpha, p)
    if n == 0:
        if loc.r0 > 1:
            raise DomainError("the n = 0 case needs o_p(D₀) ≤ 1")
        if loc.r == loc.r0:
            return DeltaValues(Fraction(int(loc.in_sqrt_D)), Fraction(0))
        return DeltaValues(Fraction(0), Fraction(1 - loc.eps))
    if p in diff_set(D0, t, a, n):
        return DeltaValues(Fraction(0), _derivative_table(loc))
    return DeltaValues(_value_table(loc), Fraction(0))


def delta_p(D0: int, t: int, a: int, n: Rational, alpha: AlphaPair, p: int) -> Fraction:
    return delta_values(D0, t, a, n, alpha, p).value


def delta_p_prime(D0: int, t: int, a: int, n: Rational, alpha: AlphaPair, p: int) -> Fraction:
    return delta_values(D0, t, a, n, alpha, p).derivative


def whittaker_route_series(D0: int, t: int, a: int, n: Rational, alpha: AlphaPair,
                           p: int) -> WhittakerSeries:
    """Δ = D₀, κ = −t/a, m = −n/(D₀t), μ = −α̃/√D 时的 |Δ|^{−1/2}W 级数"""
    a1, a2 = as_fraction(alpha[0]), as_fraction(alpha[1])
    setup = LocalSetup(p, Fraction(D0), Fraction(-t, a), -a2 / t, -a1 / (t * D0))
    series = whittaker_closed(setup, -as_fraction(n) / (D0 * t))
    if as_fraction(n) == 0:
        series = series.times_linear(-kronecker(D0, p))
    return series


def delta_p_whittaker(D0: int, t: int, a: int, n: Rational, alpha: AlphaPair,
                      p: int) -> DeltaValues:
    """
    由 Whittaker 闭式计算 (δ_p, δ′_p)

    δ_p 为 X = 1 处的值，δ′_p = −d/dX 在 X = 1 处的值；
    n = 0 时先乘以 1/L_p(s, ε) = 1 − ε(p)X。
    """
    _check_prime(D0, t, p)
    series = whittaker_route_series(D0, t, a, n, alpha, p)
    return DeltaValues(series.value_at_one(), -series.derivative_at_one())


def delta_fundamental(D0: int, a: int, n: Rational, p: int) -> Fraction:
    """t = 1 时的 δ_p(n, ·)：与 α̃ 无关"""
    _check_prime(D0, 1, p)
    n = as_fraction(n)
    if n <= 0:
        raise DomainError(f"n must be positive, got {n}")
    if p in diff_set(D0, 1, a, n):
        return Fraction(0)
    return Fraction(2) if valuation(n, p) >= 1 else Fraction(1)


def delta_prime_fundamental(D0: int, a: int, n: Rational, p: int) -> Fraction:
    """t = 1 时的 δ′_p(n, ·) = o_p(n)·[p ∈ Diff]"""
    _check_prime(D0, 1, p)
    n = as_fraction(n)
    if n <= 0:
        raise DomainError(f"n must be positive, got {n}")
    if p in diff_set(D0, 1, a, n):
        return Fraction(valuation(n, p))
    return Fraction(0)


def rho_prime(D: int, p: int, m: Rational) -> Fraction:
    """
    ρ′_p(m) = 2Σ_{j≥1} ρ_p(m/p^{2j−1})

    Args:
        D: 基本判别式
        p: 不整除 D 的素数
        m: 正有理数

    Returns:
        Fraction: p 惰性且 o_p(m) 为正奇数时为 o_p(m) + 1，否则为 0
    """
    if D % p == 0:
        raise DomainError(f"ρ′_p needs p ∤ D, got p = {p}, D = {D}")
    m = as_fraction(m)
    if m <= 0:
        raise DomainError(f"ρ′ needs m > 0, got {m}")
    o = valuation(m, p)
    if kronecker(D, p) != -1 or o < 0 or o % 2 == 0:
        return Fraction(0)
    return Fraction(o + 1)


def rho_prime_sum(D: int, p: int, m: Rational) -> Fraction:
    """2Σ_{j≥1} ρ_p(m/p^{2j−1})，直接求和"""
    m = as_fraction(m)
    o = valuation(m, p)
    total = Fraction(0)
    j = 1
    while 2 * j - 1 <= o:
        total += rho_p(D, m / Fraction(p) ** (2 * j - 1), p)
        j += 1
    return 2 * total


def rho_prime_3s3(D: int, m: Rational, s3: int) -> Fraction:
    """ρ′_{3s₃}(m) = (o₃(m/s₃)+1)/2，3 惰性且 o₃(m) 为正奇数时"""
    if s3 not in (1, 3):
        raise DomainError(f"s3 must divide 3, got {s3}")
    if D % 3 == 0:
        raise DomainError(f"3 divides D = {D}")
    m = as_fraction(m)
    if m == 0:
        return Fraction(0)
    o = valuation(m, 3)
    if kronecker(D, 3) != -1 or o < 1 or o % 2 == 0:
        return Fraction(0)
    return Fraction(valuation(m / s3, 3) + 1, 2)
