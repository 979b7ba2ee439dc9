"""
Dyadic - 2 进因子 δ₂(m, α; d₂)
逐 d₂ | 8 的查表值，以及它们的和所满足的计数恒等式
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from ..arith import INF, Rational, as_fraction, divisors, residue, valuation
from ..errors import DomainError

Valuation = Union[int, float]

# mm̃/(4r²) 在 r 求和中的同余常数（19 mod 24 的 2 部分）
DYADIC_CONSTANT = 3

# d₂ = 4、8 的表值分别带因子 2、4
_SCALE = {1: 1, 2: 1, 4: 2, 8: 4}


@dataclass(frozen=True)
class DyadicAlpha:
    """
    α 在 ℤ₂ × ℤ₂ 中两个坐标的 2 进赋值 (v₁, v₂)

    格为 M = {x₁ ≡ x₂ mod 2}，故 2^e | α 表示 α/2^e ∈ M。
    """
    v1: Valuation
    v2: Valuation

    def __post_init__(self):
        lo, hi = sorted((self.v1, self.v2))
        if lo < 0:
            raise DomainError(f"valuations must be nonnegative, got {self.v1}, {self.v2}")
        if lo == 0 and hi != 0:
            raise DomainError(f"({self.v1}, {self.v2}) is not in x1 ≡ x2 mod 2")

    def divisible(self, e: int) -> bool:
        """2^e | α"""
        lo, hi = sorted((self.v1, self.v2))
        if lo < e:
            return False
        return lo > e or hi == e

    def exact(self, e: int) -> bool:
        """2^e ∥ α"""
        return self.divisible(e) and not self.divisible(e + 1)

    @property
    def norm_valuation(self) -> Valuation:
        return self.v1 + self.v2


def dyadic_alphas(m: Rational) -> List[DyadicAlpha]:
    """所有满足 o₂(Nm α) = o₂(1 − m) 的 α 赋值类"""
    mt = 1 - as_fraction(m)
    if mt == 0:
        return [DyadicAlpha(INF, INF)]
    k = valuation(mt, 2)
    if k < 0:
        return []
    if k == 0:
        return [DyadicAlpha(0, 0)]
    return [DyadicAlpha(i, k - i) for i in range(1, k)]


def rho2(x: Rational) -> Fraction:
    """2 分裂时的 ρ₂：o₂(x)+1，非整为 0，ρ₂(0) = 1"""
    x = as_fraction(x)
    if x == 0:
        return Fraction(1)
    o = valuation(x, 2)
    return Fraction(o + 1) if o >= 0 else Fraction(0)


def _table_1(m, om, alpha) -> int:
    if om == 0 and alpha.divisible(1):
        return 1
    if om >= 2:
        return om - 1
    return 0


def _table_2(m, om, alpha) -> int:
    if alpha.divisible(2):
        return 1
    if alpha.exact(1):
        if residue(m, 8) == 5:
            return 1
        if residue(m, 8) == 1:
            return -1
    if om == 2:
        return 1
    if om >= 3:
        return om - 5
    return 0


def _table_4(m, om, alpha) -> int:
    mt = 1 - m
    if alpha.divisible(3):
        return 1
    if alpha.exact(2):
        if residue(m, 32) == 17:
            return 1
        if residue(m, 32) == 1:
            return -1
    if residue(m, 8) == 5:
        if residue(mt, 16) == 4:
            return -1
        if residue(mt, 16) == 12:
            return 1
    if residue(m, 16) == 4:
        return -1
    if residue(m, 16) == 12:
        return 1
    if om == 4:
        return 1
    if om >= 5:
        return om - 7
    return 0


def _table_8(m, om, alpha, printed: bool) -> int:
    mt = 1 - m
    flip = -1 if printed else 1
    if alpha.divisible(4):
        return 1
    if alpha.exact(3):
        if residue(m, 128) == 65:
            return 1
        if residue(m, 128) == 1:
            return -1
    if alpha.exact(2):
        if residue(m, 64) == 17:
            return 1
        if residue(m, 64) == 49:
            return -1
    if residue(m, 8) == 5:
        if residue(mt, 32) == 28:
            return flip
        if residue(mt, 32) == 12:
            return -flip
    if residue(m, 32) == 12:
        return -flip
    if residue(m, 32) == 28:
        return flip
    if residue(m, 64) == 16:
        return -1
    if residue(m, 64) == 48:
        return 1
    if om == 6:
        return 1
    if om >= 7:
        return om - 9
    return 0


def delta2_table(d2: int, m: Rational, alpha: DyadicAlpha, printed: bool = False) -> Fraction:
    """
    δ₂(m, α; d₂)

    Args:
        d2: 8 的因子
        m: 2 整有理数
        alpha: α 的 2 进赋值类
        printed: d₂ = 8 时使用印刷版本的两组符号

    Returns:
        Fraction: 未列出的情形为 0
    """
    if d2 not in (1, 2, 4, 8):
        raise DomainError(f"d2 must divide 8, got {d2}")
    m = as_fraction(m)
    if m == 0:
        return Fraction(_SCALE[d2])
    om = valuation(m, 2)
    if om < 0:
        return Fraction(0)
    if d2 == 1:
        return Fraction(_table_1(m, om, alpha))
    if d2 == 2:
        return Fraction(_table_2(m, om, alpha))
    if d2 == 4:
        return Fraction(_SCALE[4] * _table_4(m, om, alpha))
    return Fraction(_SCALE[8] * _table_8(m, om, alpha, printed))


def delta2_table_sum(s2: int, m: Rational, alpha: DyadicAlpha, printed: bool = False) -> Fraction:
    """Σ_{d₂ | s₂} δ₂(m, α; d₂)"""
    return sum((delta2_table(d, m, alpha, printed) for d in divisors(s2)), Fraction(0))


def congruent(x: Fraction, c: int, modulus: int, p: int = 2) -> bool:
    """x ∈ ℤ₍ₚ₎ 且 x ≡ c mod modulus（modulus 为 p 的幂）；modulus = 1 时只要求整"""
    try:
        return residue(x, modulus * p) % modulus == c % modulus
    except DomainError:
        return False


def delta2_sum(s2: int, m: Rational, alpha: DyadicAlpha,
               constant: int = DYADIC_CONSTANT) -> Fraction:
    """
    计数侧 s₂·Σ_{r₂|s₂} Σ_{AB=2r₂} ρ₂(m/A²)·[B | α]

    r₂ 只取 mm̃/(4r₂²) ≡ constant mod s₂/r₂ 的因子。

    Args:
        s2: 8 的因子
        m: 2 整有理数
        alpha: α 的 2 进赋值类
        constant: 同余常数（3 与修正后的表一致，7 与印刷版本一致）

    Returns:
        Fraction
    """
    if s2 not in (1, 2, 4, 8):
        raise DomainError(f"s2 must divide 8, got {s2}")
    m = as_fraction(m)
    mt = 1 - m
    total = Fraction(0)
    for r2 in divisors(s2):
        if not congruent(m * mt / (4 * r2 * r2), constant, s2 // r2):
            continue
        for A in divisors(2 * r2):
            B = 2 * r2 // A
            if alpha.divisible(valuation(B, 2)):
                total += rho2(m / (A * A))
    return s2 * total
