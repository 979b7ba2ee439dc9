"""
Counting - 理想计数函数
ρ、ρ_p、ρ^{(M)}、r_A、ρ_g，以及 Diff/S(D, n) 集合
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Tuple

from ..arith import (
    Rational,
    as_fraction,
    hilbert_symbol,
    is_integral,
    kronecker,
    prime_factors,
    valuation,
)
from ..errors import DomainError
from .forms import QuadClass, as_discriminant, class_group
from .ideals import ideals_of_norm

HALF = Fraction(1, 2)


def _fundamental(D) -> int:
    disc = as_discriminant(D)
    if not disc.is_fundamental:
        raise DomainError(f"{disc.D} is not a fundamental discriminant")
    return disc.D


def rho_p(D, n: Rational, p: int) -> Fraction:
    """
    局部因子 ρ_p(n)

    Args:
        D: 基本判别式
        n: 非负有理数
        p: 素数

    Returns:
        Fraction: 分裂 o+1，惰性 (1+(−1)^o)/2，分歧 1；n 在 p 处非整时为 0
    """
    D = _fundamental(D)
    n = as_fraction(n)
    if n < 0:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    o = valuation(n, p)
    if o < 0:
        return Fraction(0)
    eps = kronecker(D, p)
    if eps == 1:
        return Fraction(o + 1)
    if eps == -1:
        return Fraction(1 - o % 2)
    return Fraction(1)


def rho(D, n: Rational) -> Fraction:
    """ρ(n)：范数为 n 的整理想个数；ρ(0) = h/2，非整或负数为 0"""
    D = _fundamental(D)
    n = as_fraction(n)
    if n == 0:
        return Fraction(len(class_group(D)), 2)
    if n < 0 or not is_integral(n):
        return Fraction(0)
    result = Fraction(1)
    for p in (prime_factors(int(n)) if n > 1 else ()):
        result *= rho_p(D, n, p)
        if result == 0:
            break
    return result


def rho_M(D, n: Rational, M: int) -> Fraction:
    """ρ^{(M)}(n) = ∏_{p∤M} ρ_p(n)；n = 0 时返回 ρ(0)"""
    D = _fundamental(D)
    n = as_fraction(n)
    if n == 0:
        return rho(D, 0)
    if n < 0:
        return Fraction(0)
    bad = set(prime_factors(M)) if abs(M) > 1 else set()
    result = Fraction(1)
    for part in (n.numerator, n.denominator):
        for p in (prime_factors(part) if part > 1 else ()):
            if p in bad:
                continue
            result *= rho_p(D, n, p)
            if result == 0:
                return result
    return result


@lru_cache(maxsize=65536)
def class_counts(D: int, n: int) -> Tuple[int, ...]:
    """按类统计范数为 n 的理想数（顺序同 class_group(D).elements）"""
    group = class_group(D)
    counts = [0] * len(group)
    for ideal in ideals_of_norm(D, n):
        counts[group.index(ideal.quad_class())] += 1
    return tuple(counts)


def r_class(D, A: QuadClass, n: Rational) -> Fraction:
    """r_A(n)：类 A 中范数为 n 的整理想个数；r_A(0) = 1/2"""
    D = as_discriminant(D).D
    n = as_fraction(n)
    if n == 0:
        return HALF
    if n < 0 or not is_integral(n):
        return Fraction(0)
    return Fraction(class_counts(D, int(n))[class_group(D).index(A)])


def brute_rho(D, n: int) -> int:
    """直接枚举的 ρ(n)，只用于交叉校验"""
    return len(ideals_of_norm(as_discriminant(D).D, n))


def genus_of(D0, A: QuadClass) -> Tuple[int, ...]:
    """类 A 的亏格向量 (χ_p(n_A))_{p | D₀}"""
    D0 = _fundamental(D0)
    n_A = A.value_prime_to(2 * D0)
    return tuple(kronecker(n_A, p) for p in prime_factors(D0))


def genus_represents(D0, A: QuadClass, c: Rational) -> bool:
    """A 所在亏格是否表示 c：对所有 p | D₀ 有 (c·n_A, D₀)_p = 1"""
    D0 = _fundamental(D0)
    c = as_fraction(c)
    if c == 0:
        raise DomainError("genus condition needs c != 0")
    n_A = A.value_prime_to(2 * D0)
    return all(hilbert_symbol(c * n_A, D0, p) == 1 for p in prime_factors(D0))


def rho_genus(D0, m: Rational, c: Rational) -> Fraction:
    """
    ρ_g(m; c)：只统计亏格表示 c 的类

    Args:
        D0: 基本判别式
        m: 非负有理数（非整为 0）
        c: 非零有理数

    Returns:
        Fraction: Σ r_A(m)，A 过亏格表示 c 的类
    """
    D0 = _fundamental(D0)
    c = as_fraction(c)
    if c == 0:
        raise DomainError("rho_genus needs c != 0")
    m = as_fraction(m)
    if m < 0 or not is_integral(m):
        return Fraction(0)
    total = Fraction(0)
    for A in class_group(D0):
        if genus_represents(D0, A, c):
            total += r_class(D0, A, m)
    return total


def S_set(D, n: Rational) -> FrozenSet[int]:
    """
    S(D, n) = {p < ∞ : ε_p(n) = −1}，ε_p(n) = (n, D)_p

    Args:
        D: 判别式
        n: 非零有理数

    Returns:
        frozenset: 素数集合；n < 0 时其基数为奇数
    """
    D = as_discriminant(D).D
    n = as_fraction(n)
    if n == 0:
        raise DomainError("S(D, 0) is undefined")
    candidates = {2}
    for x in (n.numerator, n.denominator, D):
        if abs(x) > 1:
            candidates.update(prime_factors(x))
    result = frozenset(p for p in candidates if hilbert_symbol(n, D, p) == -1)
    if n < 0:
        assert len(result) % 2 == 1, f"S({D}, {n}) = {sorted(result)} has even size"
    return result


def diff_set(D0: int, t: int, a: int, n: Rational) -> FrozenSet[int]:
    """Diff(−n/(D₀t), 𝒩) = S(D₀, −na)"""
    return S_set(D0, -as_fraction(n) * a)


def class_counts_by_label(D: int, n: int) -> Dict[str, int]:
    group = class_group(D)
    return {f.label: c for f, c in zip(group.elements, class_counts(D, n))}
