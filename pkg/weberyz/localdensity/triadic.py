"""
Triadic - 3 进因子 δ₃(m, α; d₃) 与 δ′₃
分裂与惰性两种情形；s₃ | 3 的两种计数侧写法
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from ..arith import INF, Rational, as_fraction, divisors, kronecker, valuation
from ..errors import DomainError
from .dyadic import congruent

Valuation = Union[int, float]


@dataclass(frozen=True)
class TriadicAlpha:
    """α 的两个 3 进坐标赋值；惰性时 v₁ = v₂"""
    v1: Valuation
    v2: Valuation

    def divisible(self, e: int) -> bool:
        return min(self.v1, self.v2) >= e


def _split_type(D: int) -> int:
    if D % 3 == 0:
        raise DomainError(f"3 divides D = {D}")
    return kronecker(D, 3)


def triadic_alphas(D: int, m: Rational) -> List[TriadicAlpha]:
    """所有满足 o₃(Nm α) = o₃(1 − m) 的 α 赋值类"""
    eps = _split_type(D)
    mt = 1 - as_fraction(m)
    if mt == 0:
        return [TriadicAlpha(INF, INF)]
    k = valuation(mt, 3)
    if k < 0:
        return []
    if eps == 1:
        return [TriadicAlpha(i, k - i) for i in range(k + 1)]
    if k % 2:
        return []
    return [TriadicAlpha(k // 2, k // 2)]


def rho3(D: int, x: Rational) -> Fraction:
    """ρ₃：分裂 o+1，惰性 [o 偶]，非整为 0，ρ₃(0) = 1"""
    eps = _split_type(D)
    x = as_fraction(x)
    if x == 0:
        return Fraction(1)
    o = valuation(x, 3)
    if o < 0:
        return Fraction(0)
    if eps == 1:
        return Fraction(o + 1)
    return Fraction(1 - o % 2)


def delta3_table(d3: int, D: int, m: Rational, alpha: TriadicAlpha) -> Fraction:
    """
    δ₃(m, α; d₃)

    Args:
        d3: 1 或 3
        D: 3 ∤ D 的判别式
        m: 3 整有理数
        alpha: α 的 3 进赋值类

    Returns:
        Fraction
    """
    if d3 not in (1, 3):
        raise DomainError(f"d3 must divide 3, got {d3}")
    eps = _split_type(D)
    m = as_fraction(m)
    if d3 == 1:
        return rho3(D, m)
    if m == 0:
        return Fraction(2)
    om = valuation(m, 3)
    if om < 0:
        return Fraction(0)
    omm = om + valuation(1 - m, 3)
    if eps == 1:
        if omm == 0:
            return Fraction(2)
        if om >= 1:
            return Fraction(2 * (om - 2))
        if omm > om == 0:
            return Fraction(3 * int(alpha.divisible(1)) - 1)
        return Fraction(0)
    if omm == 0:
        return Fraction(-1)
    if omm == INF or omm % 2 == 0:
        return Fraction(2)
    return Fraction(0)


def delta3_prime_table(d3: int, D: int, m: Rational) -> Fraction:
    """δ′₃(m; d₃)：3 惰性且 o₃(m) 为正奇数时非零"""
    if d3 not in (1, 3):
        raise DomainError(f"d3 must divide 3, got {d3}")
    eps = _split_type(D)
    m = as_fraction(m)
    if eps == 1 or m == 0:
        return Fraction(0)
    o = valuation(m, 3)
    if o < 1 or o % 2 == 0:
        return Fraction(0)
    return Fraction(o + 1, 2) if d3 == 1 else Fraction(2 * o - 1, 2)


def delta3_table_sum(s3: int, D: int, m: Rational, alpha: TriadicAlpha) -> Fraction:
    return sum((delta3_table(d, D, m, alpha) for d in divisors(s3)), Fraction(0))


def delta3_sum(s3: int, D: int, m: Rational, alpha: TriadicAlpha) -> Fraction:
    """
    计数侧 s₃·Σ_{s₃′|r₃|s₃} Σ_{AB=r₃} ρ₃(m/A²)·[B | α]

    r₃ 只取 mm̃/r₃² ≡ 1 mod s₃/r₃ 的因子；s₃′ 在惰性时为 s₃，分裂时为 1。
    """
    if s3 not in (1, 3):
        raise DomainError(f"s3 must divide 3, got {s3}")
    eps = _split_type(D)
    m = as_fraction(m)
    mt = 1 - m
    lower = s3 if eps == -1 else 1
    total = Fraction(0)
    for r3 in divisors(s3):
        if r3 % lower:
            continue
        if not congruent(m * mt / (r3 * r3), 1, s3 // r3, p=3):
            continue
        for A in divisors(r3):
            B = r3 // A
            if alpha.divisible(valuation(B, 3)):
                total += rho3(D, m / (A * A))
    return s3 * total


def delta3_sum_inert(s3: int, D: int, m: Rational) -> Fraction:
    """惰性时的另一写法 s₃·ρ₃(m(1−m)/s₃²)"""
    if _split_type(D) != -1:
        raise DomainError(f"3 is not inert for D = {D}")
    m = as_fraction(m)
    return s3 * rho3(D, m * (1 - m) / (s3 * s3))


def delta3_sum_prime(s3: int, D: int, m: Rational) -> Fraction:
    """Σ_{d₃|s₃} δ′₃(m; d₃) = s₃·(o₃(m/s₃)+1)/2"""
    if s3 not in (1, 3):
        raise DomainError(f"s3 must divide 3, got {s3}")
    eps = _split_type(D)
    m = as_fraction(m)
    if eps == 1 or m == 0:
        return Fraction(0)
    o = valuation(m, 3)
    if o < 1 or o % 2 == 0:
        return Fraction(0)
    return s3 * Fraction(valuation(m / s3, 3) + 1, 2)
