"""
SmallCM - 小 CM 点的代表理想
选取范数为素数的代表 𝔞₁、𝔞₂，构造 ã₀ = ⟨a₁a₂, (−b̃+√D₀)/2⟩ 并枚举其中给定范数的元素
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from math import gcd, isqrt
from typing import Iterator, List, NamedTuple, Optional, Tuple

from sympy import primerange, sqrt_mod
from sympy.ntheory.modular import solve_congruence

from ..arith import kronecker
from ..errors import DomainError, ResourceError
from .forms import QuadClass, as_discriminant

SEARCH_BOUND = 10 ** 6


@dataclass(frozen=True)
class IdealData:
    """
    具体理想数据

    tilde_b 为空时表示 𝔞 = ⟨a, t(b+√D₀)/2⟩ ⊂ 𝒪_{D₀t²}；
    否则表示 ã₀ = ⟨a, (−b̃+√D₀)/2⟩ ⊂ 𝒪_{D₀}。
    """
    a: int
    b: int
    D0: int
    tilde_b: Optional[int] = None
    t: int = 1

    @property
    def D(self) -> int:
        return self.D0 * self.t * self.t

    @property
    def beta(self) -> int:
        """格 ⟨a, (β+√D₀)/2⟩ 中的 β"""
        if self.tilde_b is not None:
            return -self.tilde_b
        if self.t != 1:
            raise DomainError("only ideals of the maximal order have a β-lattice")
        return self.b

    def form(self) -> QuadClass:
        if self.tilde_b is not None:
            return QuadClass.from_ab(self.a, -self.tilde_b, self.D0)
        return QuadClass.from_ab(self.a, self.t * self.b, self.D)

    def quad_class(self) -> QuadClass:
        return self.form().reduced()

    @classmethod
    def from_form(cls, form: QuadClass) -> "IdealData":
        """基本判别式下 (a, b, c) ↦ ⟨a, (b+√D₀)/2⟩，以 ã₀ 形式存放"""
        return cls(form.a, form.b, form.D, tilde_b=-form.b)


class SmallCMPair(NamedTuple):
    """(𝔞₁, 𝔞₂, ã₀)"""
    first: IdealData
    second: IdealData
    tilde: IdealData


def project_class(A: QuadClass, D0: int) -> QuadClass:
    """Cl(D₀t²) → Cl(D₀) 的自然映射 𝔞 ↦ 𝔞𝒪_{D₀}"""
    D = A.D
    if D == D0:
        return A.reduced()
    t2, rem = divmod(D, D0)
    t = isqrt(t2)
    if rem or t * t != t2:
        raise DomainError(f"{D} is not {D0} times a square")
    a = A.value_prime_to(2 * t)
    # 同类中取首项系数 a 的型
    form = _form_with_leading(A, a)
    # a 为奇数，b₀ 与 D₀ 同奇偶
    b0 = form.b * pow(t, -1, 2 * a) % (2 * a)
    return QuadClass.from_ab(a, b0, D0).reduced()


def _form_with_leading(A: QuadClass, a: int) -> QuadClass:
    """A 类中首项系数为 a 的型（a 必须被 A 本原表示）"""
    D = A.D
    target = A.reduced()
    for b in range(-a + 1, a + 1):
        if (b * b - D) % (4 * a) == 0 and QuadClass.from_ab(a, b, D).reduced() == target:
            return QuadClass.from_ab(a, b, D)
    raise DomainError(f"{a} is not properly represented by {A.label}")


def _prime_candidates(A: QuadClass, D0: int, t: int, excluded: int,
                      bound: int) -> Iterator[Tuple[int, int]]:
    """素数 a ≡ t mod 48、(D₀|a)=1、a ∤ excluded，且 (a, t·b_a, ·) 约化为 A"""
    target = A.reduced()
    D = D0 * t * t
    for p in primerange(5, bound):
        if p % 48 != t % 48 or excluded % p == 0 or kronecker(D0, p) != 1:
            continue
        r = int(sqrt_mod(D0, p))
        for root in (r, p - r):
            b_p = root if root % 2 else root + p
            if QuadClass.from_ab(p, t * b_p, D).reduced() == target:
                yield p, b_p
                break


def make_small_cm_pair(A1: QuadClass, A2: QuadClass, skip: int = 0,
                       bound: int = SEARCH_BOUND) -> SmallCMPair:
    """
    构造满足小 CM 条件的代表理想

    Args:
        A1: Cl(D₁) 中的类
        A2: Cl(D₂) 中的类
        skip: 跳过前 skip 组代表（用于检验代表无关性）
        bound: 素数搜索上限

    Returns:
        SmallCMPair: (𝔞₁, 𝔞₂, ã₀)，ã₀ 的类为 A₁⁻¹A₂ 在 Cl(D₀) 中的像
    """
    d1, d2 = as_discriminant(A1.D), as_discriminant(A2.D)
    for d in (d1, d2):
        if not d.yz_admissible:
            raise DomainError(f"discriminant {d.D} is not admissible")
    D0 = d1.fundamental
    if d2.fundamental != D0:
        raise DomainError(f"{d1.D}·{d2.D} is not a square")
    t1, t2 = d1.conductor, d2.conductor
    t = t1 * t2
    excluded = 6 * d1.D * d2.D

    firsts = list(islice(_prime_candidates(A1, D0, t1, excluded, bound), skip + 2))
    seconds = list(islice(_prime_candidates(A2, D0, t2, excluded, bound), skip + 2))
    if len(firsts) <= skip or len(seconds) <= skip:
        raise ResourceError(f"no representatives below {bound} for {A1.label}, {A2.label}")
    (a1, b1), (a2, b2) = firsts[skip], seconds[skip]
    if a1 == a2:
        if len(seconds) <= skip + 1:
            raise ResourceError(f"no distinct representatives below {bound}")
        a2, b2 = seconds[skip + 1]

    b, _ = solve_congruence((b1, 2 * a1), (b2, 2 * a2), (1, 48))
    b = int(b)
    tilde_b, _ = solve_congruence((b, 2 * a1), (-b, 2 * a2), (b, 4 * abs(D0) * t * t))
    tilde_b = int(tilde_b)

    first = IdealData(a1, b, D0, t=t1)
    second = IdealData(a2, b, D0, t=t2)
    tilde = IdealData(a1 * a2, b, D0, tilde_b=tilde_b)
    _check_conditions(first, second, tilde, d1.D * d2.D)
    return SmallCMPair(first, second, tilde)


def _check_conditions(first: IdealData, second: IdealData, tilde: IdealData,
                      D1D2: int) -> None:
    b = first.b
    for ideal in (first, second):
        a = ideal.a
        assert (b * b - ideal.D0) % (4 * a) == 0
        assert gcd(a, 6 * b * D1D2) == 1
        assert (a - ideal.t) % 48 == 0
    assert (b - 1) % 48 == 0
    assert gcd(first.a, second.a) == 1
    tb = tilde.tilde_b
    assert (tb - b) % (2 * first.a) == 0 and (tb + b) % (2 * second.a) == 0
    assert (tb * tb - tilde.D0) % (4 * tilde.a) == 0


def enumerate_elements(ideal: IdealData, N: int) -> List[Tuple[Fraction, Fraction]]:
    """
    枚举 ideal 中范数为 N 的元素 α̃ = α̃₁ + α̃₂√D₀

    Args:
        ideal: 𝒪_{D₀} 中的格 ⟨a, (β+√D₀)/2⟩
        N: 正整数

    Returns:
        list: (α̃₁, α̃₂) ∈ ½ℤ × ½ℤ，含 ±α̃
    """
    if N <= 0:
        raise DomainError(f"norm must be positive, got {N}")
    a, beta, D0 = ideal.a, ideal.beta, ideal.D0
    absD = -D0
    found = []
    y_max = isqrt(4 * N // absD)
    for y in range(-y_max, y_max + 1):
        rest = 4 * N - absD * y * y
        if rest < 0:
            continue
        u = isqrt(rest)
        if u * u != rest:
            continue
        for uu in ((u, -u) if u else (0,)):
            # u = 2xa + yβ
            if (uu - y * beta) % (2 * a) == 0:
                found.append((Fraction(uu, 2), Fraction(y, 2)))
    return found


def count_elements(ideal: IdealData, N: int) -> int:
    return len(enumerate_elements(ideal, N))
