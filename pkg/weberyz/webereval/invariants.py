"""
Invariants - CM 点、Γ₀(2) 特征 χ 与类不变量 f(𝔞)
"""

from dataclasses import dataclass
from typing import Union

import mpmath as mp

from ..arith import kronecker
from ..errors import DomainError
from ..quadorders.forms import QuadClass, as_discriminant
from .eta import BigComplex, Number, _as_value, weber_f, weber_f1, weber_f2, zeta48


@dataclass(frozen=True)
class CMPoint:
    """理想 [a, (b+√D)/2] 的 CM 点 z = (−b+√D)/(2a)"""
    a: int
    b: int
    D: int

    def __post_init__(self):
        as_discriminant(self.D)
        if self.a <= 0:
            raise DomainError(f"a must be positive, got {self.a}")
        if (self.b * self.b - self.D) % (4 * self.a):
            raise DomainError(f"b^2 != D mod 4a for ({self.a}, {self.b}, {self.D})")

    @classmethod
    def from_form(cls, form: QuadClass) -> "CMPoint":
        return cls(form.a, form.b, form.D)

    @property
    def c(self) -> int:
        return (self.b * self.b - self.D) // (4 * self.a)

    def tau(self, prec: int) -> mp.mpc:
        with mp.workprec(prec):
            return mp.mpc(-self.b, mp.sqrt(-self.D)) / (2 * self.a)


@dataclass(frozen=True)
class Gamma02Element:
    """Γ₀(2) 中的矩阵 (a b; c d)"""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"det of ({self.a} {self.b}; {self.c} {self.d}) is not 1")
        if self.c % 2:
            raise DomainError(f"lower-left entry {self.c} is odd")

    @classmethod
    def identity(cls) -> "Gamma02Element":
        return cls(1, 0, 0, 1)

    @classmethod
    def T(cls) -> "Gamma02Element":
        return cls(1, 1, 0, 1)

    def __mul__(self, other: "Gamma02Element") -> "Gamma02Element":
        return Gamma02Element(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def act(self, tau: Number, prec: int) -> mp.mpc:
        with mp.workprec(prec):
            t = mp.mpc(_as_value(tau))
            return (self.a * t + self.b) / (self.c * t + self.d)


def chi(g: Gamma02Element) -> int:
    """
    𝔣₂ 的 Γ₀(2) 特征 χ = χ₂χ₃，返回 e 使 χ(g) = ζ₄₈^e

    χ₂ = (2/a)·ζ₈^{3a(b+c/2)}，χ₃ = ζ₃^{−(a+d)c + bd(c²−1)}
    """
    a, b, c, d = g.a, g.b, g.c, g.d
    if c % 2:
        raise DomainError(f"lower-left entry {c} is odd")
    e2 = 6 * ((3 * a * (b + c // 2)) % 8)
    if kronecker(2, a) == -1:
        e2 += 24
    e3 = 16 * ((-(a + d) * c + b * d * (c * c - 1)) % 3)
    return (e2 + e3) % 48


def chi_invariance_check(g: Gamma02Element, tau: Number, prec: int) -> bool:
    """𝔣₂(gτ) 与 χ(g)𝔣₂(τ) 是否在容差内一致"""
    lhs = weber_f2(g.act(tau, prec + 16), prec)
    with mp.workprec(prec + 16):
        rhs = BigComplex.from_value(weber_f2(tau, prec).value * zeta48(chi(g), prec + 16), prec)
    return lhs.is_close(rhs)


def epsilon_D(D: int) -> int:
    """ε_D = (−1)^{(D−1)/8}"""
    return -1 if ((D - 1) // 8) % 2 else 1


def class_invariant(form: Union[QuadClass, CMPoint], prec: int) -> BigComplex:
    """
    类不变量 f(𝔞)，𝔞 = [a, (b+√D)/2]

    Args:
        form: 任意代表 (a, b)（不必约化）
        prec: 精度（比特）

    Returns:
        BigComplex: 按 a、c 奇偶分三种情形
    """
    point = form if isinstance(form, CMPoint) else CMPoint.from_form(form)
    a, b, c, D = point.a, point.b, point.c, point.D
    if not as_discriminant(D).yz_admissible:
        raise DomainError(f"discriminant {D} is not admissible")
    if a % 2 and c % 2:
        raise DomainError(f"a={a} and c={c} are both odd, impossible for D={D}")
    work = prec + 16
    eps = epsilon_D(D)
    with mp.workprec(work):
        z = point.tau(work)
        if a % 2 == 0 and c % 2 == 0:
            value = weber_f(z, work).value * zeta48(b * (a - c - a * c * c), work)
        elif a % 2 == 0:
            value = eps * weber_f1(z, work).value * zeta48(b * (a - c - a * c * c), work)
        else:
            value = eps * weber_f2(z, work).value * zeta48(b * (a - c + a * a * c), work)
        return BigComplex.from_value(value, prec)
