"""
Forms - 二元二次型与类群
约化、Gauss 合成、类群枚举与环类数公式 h_{D₀t²}
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Dict, Iterator, List, Optional, Tuple

from ..arith import factorize, kronecker, prime_factors
from ..errors import DomainError


@lru_cache(maxsize=4096)
def _fundamental_part(D: int) -> Tuple[int, int]:
    """D = D₀t²，返回 (D₀, t)"""
    t = 1
    core = -1 if D < 0 else 1
    for p, k in factorize(D).doubled.items():
        e = k // 2
        t *= p ** (e // 2)
        if e % 2:
            core *= p
    if core % 4 != 1:
        core *= 4
        t //= 2
    return core, t


@dataclass(frozen=True)
class Discriminant:
    """负判别式 D = D₀t²"""
    D: int

    def __post_init__(self):
        if self.D >= 0 or self.D % 4 not in (0, 1):
            raise DomainError(f"{self.D} is not a negative discriminant")

    @property
    def fundamental(self) -> int:
        return _fundamental_part(self.D)[0]

    @property
    def conductor(self) -> int:
        return _fundamental_part(self.D)[1]

    @property
    def is_fundamental(self) -> bool:
        return self.conductor == 1

    @property
    def yz_admissible(self) -> bool:
        """D ≡ 1 mod 8 且 3 ∤ D"""
        return self.D % 8 == 1 and self.D % 3 != 0

    def __int__(self) -> int:
        return self.D

    def __str__(self) -> str:
        return str(self.D)


def as_discriminant(D) -> Discriminant:
    return D if isinstance(D, Discriminant) else Discriminant(int(D))


def solve_mod(a: int, b: int, m: int) -> Tuple[int, int]:
    """解 a·x ≡ b (mod m)，返回 (x₀, m/g)，通解为 x₀ + k·m/g"""
    g = gcd(a, m)
    if b % g:
        raise DomainError(f"{a}x = {b} mod {m} has no solution")
    step = m // g
    if step == 1:
        return 0, 1
    x0 = (b // g) * pow(a // g, -1, step) % step
    return x0, step


@dataclass(frozen=True)
class QuadClass:
    """
    正定二元二次型 (a, b, c)，对应理想 [a, (b+√D)/2]

    作为类的代表时总是约化形式：|b| ≤ a ≤ c，且 |b| = a 或 a = c 时 b ≥ 0。
    """
    a: int
    b: int
    c: int

    @classmethod
    def from_ab(cls, a: int, b: int, D: int) -> "QuadClass":
        num = b * b - int(D)
        if a <= 0 or num % (4 * a):
            raise DomainError(f"no form ({a}, {b}, ·) of discriminant {D}")
        return cls(a, b, num // (4 * a))

    @classmethod
    def principal(cls, D: int) -> "QuadClass":
        D = int(D)
        return cls.from_ab(1, D % 2, D).reduced()

    @property
    def D(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd(self.a, self.b, self.c)

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 or (abs(b) != a and a != c)

    @property
    def is_principal(self) -> bool:
        return self.reduced().a == 1

    @property
    def label(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"

    def normalized(self) -> "QuadClass":
        a, b, c = self.a, self.b, self.c
        if -a < b <= a:
            return self
        r = (a - b) // (2 * a)
        return QuadClass(a, b + 2 * r * a, a * r * r + b * r + c)

    def reduced(self) -> "QuadClass":
        f = self.normalized()
        a, b, c = f.a, f.b, f.c
        while a > c or (a == c and b < 0):
            s = (c + b) // (c + c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        return QuadClass(a, b, c).normalized()

    def inverse(self) -> "QuadClass":
        return QuadClass(self.a, -self.b, self.c).reduced()

    def evaluate(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def compose(self, other: "QuadClass") -> "QuadClass":
        """
        Gauss 合成（同一判别式的本原型）

        Args:
            other: 同判别式的二次型

        Returns:
            QuadClass: 约化后的合成型
        """
        if self.D != other.D:
            raise DomainError(f"cannot compose forms of discriminant {self.D} and {other.D}")
        f1, f2 = self.reduced(), other.reduced()
        a1, b1, c1 = f1.a, f1.b, f1.c
        a2, b2 = f2.a, f2.b

        g = (b2 + b1) // 2
        h = (b2 - b1) // 2
        w = gcd(a1, a2, g)
        s, t, u = a1 // w, a2 // w, g // w

        # k·t − l·s = h,  k·u − m·s = c₂,  l·u − m·t = c₁
        k_temp, factor = solve_mod(t * u, h * u + s * c1, s * t)
        n, _ = solve_mod(t * factor, h - t * k_temp, s)
        k = k_temp + factor * n
        l = (t * k - h) // s
        m = (t * u * k - h * u - s * c1) // (s * t)

        a3 = s * t
        b3 = w * u - (k * t + l * s)
        c3 = k * l - w * m
        return QuadClass(a3, b3, c3).reduced()

    __mul__ = compose

    def value_prime_to(self, modulus: int, bound: int = 64) -> int:
        """找一个与 modulus 互素、由本型本原表示的正整数"""
        for radius in range(1, bound):
            for x in range(-radius, radius + 1):
                for y in (radius - abs(x), abs(x) - radius):
                    if gcd(x, y) != 1:
                        continue
                    v = self.evaluate(x, y)
                    if v > 0 and gcd(v, modulus) == 1:
                        return v
        raise DomainError(f"{self.label} represents nothing prime to {modulus} below the search bound")

    def __str__(self) -> str:
        return self.label


def reduced_forms(D: int) -> List[QuadClass]:
    """全部约化本原型，按 (a, b) 字典序"""
    D = as_discriminant(D).D
    forms = []
    a_max = isqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(a, b, c) != 1:
                continue
            forms.append(QuadClass(a, b, c))
    forms.sort(key=lambda f: (f.a, f.b))
    return forms


class ClassGroup:
    """
    Cl(D)：约化型列表 + 合成表

    元素顺序为 (a, b) 字典序，单位元（主类）在首位。
    """

    def __init__(self, discriminant: Discriminant, elements: List[QuadClass]):
        self.discriminant = discriminant
        self.elements: Tuple[QuadClass, ...] = tuple(elements)
        self._index: Dict[QuadClass, int] = {f: i for i, f in enumerate(self.elements)}
        self._table: Optional[List[List[int]]] = None

    @property
    def D(self) -> int:
        return self.discriminant.D

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[QuadClass]:
        return iter(self.elements)

    def __getitem__(self, i: int) -> QuadClass:
        return self.elements[i]

    @property
    def identity(self) -> QuadClass:
        return self.elements[0]

    def index(self, form: QuadClass) -> int:
        f = form.reduced()
        if f not in self._index:
            raise DomainError(f"{form.label} is not a primitive form of discriminant {self.D}")
        return self._index[f]

    @property
    def table(self) -> List[List[int]]:
        """懒加载合成表 table[i][j] = index(e_i · e_j)"""
        if self._table is None:
            self._table = [
                [self.index(x.compose(y)) for y in self.elements]
                for x in self.elements
            ]
        return self._table

    def multiply(self, x: QuadClass, y: QuadClass) -> QuadClass:
        return self.elements[self.table[self.index(x)][self.index(y)]]

    def inverse(self, x: QuadClass) -> QuadClass:
        return x.inverse()

    def nontrivial(self) -> List[QuadClass]:
        return list(self.elements[1:])


@lru_cache(maxsize=1024)
def class_group(D) -> ClassGroup:
    """
    枚举 Cl(D)

    Args:
        D: 负判别式（int 或 Discriminant）

    Returns:
        ClassGroup: 约化本原型及其合成
    """
    disc = as_discriminant(D)
    return ClassGroup(disc, reduced_forms(disc.D))


def class_number(D) -> int:
    return len(class_group(D))


def class_number_formula(D0: int, t: int) -> int:
    """h_{D₀t²} = h_{D₀}·t·∏_{p|t}(1 − ε(p)/p) / [𝒪_{D₀}^× : 𝒪^×]"""
    h = Fraction(class_number(D0) * t)
    for p in (prime_factors(t) if t > 1 else ()):
        h *= 1 - Fraction(kronecker(D0, p), p)
    if t > 1:
        h /= {-3: 3, -4: 2}.get(D0, 1)
    if h.denominator != 1:
        raise DomainError(f"class number formula gave {h} for D0={D0}, t={t}")
    return int(h)
