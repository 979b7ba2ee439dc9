"""
Ideals - 虚二次序 𝒪_D 中的整理想
Hermite 标准形 ℤ·A + ℤ·(B + C·ω)，ω = (D+√D)/2
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, List, Tuple

from sympy import gcdex

from ..arith import divisors
from ..errors import DomainError
from .forms import QuadClass, as_discriminant

# 𝒪_D 的元素记作 (x, y) ↔ x + y·ω
Element = Tuple[int, int]


def multiply_elements(D: int, u: Element, v: Element) -> Element:
    """(x₁ + y₁ω)(x₂ + y₂ω)，ω² = Dω − (D² − D)/4"""
    x1, y1 = u
    x2, y2 = v
    n = (D * D - D) // 4
    return (x1 * x2 - y1 * y2 * n, x1 * y2 + x2 * y1 + y1 * y2 * D)


def _hnf(vectors: Iterable[Element]) -> Tuple[int, int, int]:
    """ℤ² 中满秩格的 Hermite 标准形 (A, B, C)"""
    x0, y0 = 0, 0
    A = 0
    for x, y in vectors:
        if y == 0:
            A = gcd(A, x)
            continue
        if y0 == 0:
            A = gcd(A, x0)
            x0, y0 = x, y
            continue
        u, v, g = gcdex(y0, y)
        u, v, g = int(u), int(v), int(g)
        A = gcd(A, (y // g) * x0 - (y0 // g) * x)
        x0, y0 = u * x0 + v * x, g
    if y0 < 0:
        x0, y0 = -x0, -y0
    A = abs(A)
    if A == 0 or y0 == 0:
        raise DomainError("lattice is not of full rank")
    return A, x0 % A, y0


@dataclass(frozen=True)
class OrderIdeal:
    """𝒪_D 的整理想 ℤ·A + ℤ·(B + C·ω)"""
    D: int
    A: int
    B: int
    C: int

    def __post_init__(self):
        A, B, C, D = self.A, self.B, self.C, self.D
        if A <= 0 or C <= 0 or not 0 <= B < A or A % C or B % C:
            raise DomainError(f"({A}, {B}, {C}) is not in Hermite normal form")
        y = B // C + D
        if (-C * (D * D - D) // 4 - y * B) % A:
            raise DomainError(f"({A}, {B}, {C}) is not an ideal of discriminant {D}")

    @classmethod
    def unit(cls, D: int) -> "OrderIdeal":
        return cls(D, 1, 0, 1)

    @classmethod
    def from_form(cls, form: QuadClass) -> "OrderIdeal":
        """(a, b, c) ↦ [a, (b+√D)/2]"""
        D = form.D
        if (form.b - D) % 2:
            raise DomainError(f"{form.label} has the wrong parity")
        beta = (form.b - D) // 2
        return cls(D, form.a, beta % form.a, 1)

    @classmethod
    def from_generators(cls, D: int, generators: Iterable[Element]) -> "OrderIdeal":
        """由生成元（作为理想）生成"""
        vectors = []
        for g in generators:
            vectors.append(g)
            vectors.append(multiply_elements(D, g, (0, 1)))
        A, B, C = _hnf(vectors)
        return cls(D, A, B, C)

    @classmethod
    def principal(cls, D: int, alpha: Element) -> "OrderIdeal":
        return cls.from_generators(D, [alpha])

    @property
    def generators(self) -> Tuple[Element, Element]:
        return (self.A, 0), (self.B, self.C)

    @property
    def norm(self) -> int:
        return self.A * self.C

    @property
    def content(self) -> int:
        return gcd(self.A, self.B, self.C)

    def divide(self, c: int) -> "OrderIdeal":
        """𝔞/c（要求 c | content）"""
        if c <= 0 or self.content % c:
            raise DomainError(f"{c} does not divide the content of {self}")
        return OrderIdeal(self.D, self.A // c, self.B // c, self.C // c)

    def scale(self, k: int) -> "OrderIdeal":
        return OrderIdeal(self.D, k * self.A, k * self.B, k * self.C)

    def primitive_part(self) -> "OrderIdeal":
        return self.divide(self.C)

    def multiply(self, other: "OrderIdeal") -> "OrderIdeal":
        if self.D != other.D:
            raise DomainError("ideals live in different orders")
        prods = [multiply_elements(self.D, g, h)
                 for g in self.generators for h in other.generators]
        A, B, C = _hnf(prods)
        return OrderIdeal(self.D, A, B, C)

    __mul__ = multiply

    def contains(self, alpha: Element) -> bool:
        x, y = alpha
        if y % self.C:
            return False
        return (x - (y // self.C) * self.B) % self.A == 0

    def quad_class(self) -> QuadClass:
        """理想类对应的约化型（[a, β+ω] ↦ (a, 2β+D, ·)）"""
        p = self.primitive_part()
        return QuadClass.from_ab(p.A, 2 * p.B + self.D, self.D).reduced()

    def __str__(self) -> str:
        return f"[{self.A}, {self.B}+{self.C}ω]_{self.D}"


def content(ideal: OrderIdeal) -> int:
    """c(𝔞)：使 𝔞/c 仍为整理想的最大整数 c"""
    return ideal.content


@lru_cache(maxsize=16384)
def ideals_of_norm(D: int, N: int) -> Tuple[OrderIdeal, ...]:
    """
    枚举范数为 N 的全部整理想

    Args:
        D: 判别式
        N: 正整数

    Returns:
        tuple: OrderIdeal 列表（按 (C, B) 排序）
    """
    D = as_discriminant(D).D
    if N <= 0:
        raise DomainError(f"ideal norm must be positive, got {N}")
    n = (D * D - D) // 4
    found: List[OrderIdeal] = []
    for C in divisors(N):
        A = N // C
        if A % C:
            continue
        for B in range(0, A, C):
            y = B // C + D
            if (-C * n - y * B) % A == 0:
                found.append(OrderIdeal(D, A, B, C))
    return tuple(found)
