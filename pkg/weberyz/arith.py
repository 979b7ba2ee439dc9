"""
Arith - 整数/有理数基础运算
素因子分解、Kronecker 符号、p 进赋值、除数函数与局部 Hilbert 符号
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple, Union

from sympy import divisors as _sympy_divisors
from sympy import factorint, isprime, jacobi_symbol, multiplicity

from .errors import DomainError

# o(0) = ∞
INF = math.inf

Rational = Union[int, Fraction]


def as_fraction(x: Rational) -> Fraction:
    """统一转成 Fraction"""
    return x if isinstance(x, Fraction) else Fraction(x)


def is_integral(x: Rational) -> bool:
    """x ∈ ℤ"""
    return as_fraction(x).denominator == 1


@lru_cache(maxsize=65536)
def _factor(n: int) -> Tuple[Tuple[int, int], ...]:
    """|n| 的 (p, e) 元组，按素数升序"""
    return tuple(sorted(factorint(abs(n)).items()))


@dataclass(frozen=True)
class PrimePower:
    """素数幂 p^e"""
    p: int
    e: int

    def __post_init__(self):
        if self.e < 0 or not isprime(self.p):
            raise DomainError(f"invalid prime power {self.p}^{self.e}")

    @property
    def value(self) -> int:
        return self.p ** self.e


def prime_powers(n: int) -> List[PrimePower]:
    """n ≠ 0 的素数幂分解"""
    if n == 0:
        raise DomainError("cannot factor 0")
    return [PrimePower(p, e) for p, e in _factor(n)]


def prime_factors(n: int) -> Tuple[int, ...]:
    """|n| 的素因子（升序）"""
    if n == 0:
        raise DomainError("cannot factor 0")
    return tuple(p for p, _ in _factor(n))


@lru_cache(maxsize=65536)
def divisors(n: int) -> Tuple[int, ...]:
    """|n| 的全部正因子（升序）"""
    if n == 0:
        raise DomainError("0 has infinitely many divisors")
    return tuple(_sympy_divisors(abs(n)))


@dataclass
class FactorizationMap:
    """
    素数 → 半整数指数 的有限映射，附带符号

    内部只保存翻倍后的整数指数，渲染时才写成 p^(k/2)。
    """
    doubled: Dict[int, int] = field(default_factory=dict)
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be ±1, got {self.sign}")
        cleaned = {}
        for p, k in sorted(self.doubled.items()):
            if k == 0:
                continue
            if not isprime(p):
                raise DomainError(f"{p} is not prime")
            cleaned[int(p)] = int(k)
        self.doubled = cleaned

    @classmethod
    def from_integer(cls, n: int) -> "FactorizationMap":
        return factorize(n)

    @classmethod
    def from_exponents(cls, exponents: Dict[int, Rational],
                       sign: int = 1) -> "FactorizationMap":
        """由 {p: e} 构造，e 的分母必须整除 2"""
        doubled = {}
        for p, e in exponents.items():
            twice = 2 * as_fraction(e)
            if twice.denominator != 1:
                raise DomainError(f"exponent {e} at {p} is not a half-integer")
            doubled[p] = int(twice)
        return cls(doubled, sign)

    @property
    def entries(self) -> Dict[int, Fraction]:
        return {p: Fraction(k, 2) for p, k in self.doubled.items()}

    def exponent(self, p: int) -> Fraction:
        return Fraction(self.doubled.get(p, 0), 2)

    def primes(self) -> List[int]:
        return list(self.doubled)

    def is_integral(self) -> bool:
        return all(k % 2 == 0 for k in self.doubled.values())

    def add(self, other: "FactorizationMap") -> "FactorizationMap":
        """指数相加、符号相乘（对应数值相乘）"""
        merged = dict(self.doubled)
        for p, k in other.doubled.items():
            merged[p] = merged.get(p, 0) + k
        return FactorizationMap(merged, self.sign * other.sign)

    __add__ = add

    def add_exponent(self, p: int, e: Rational) -> "FactorizationMap":
        return self.add(FactorizationMap.from_exponents({p: e}))

    def unsigned(self) -> "FactorizationMap":
        return FactorizationMap(dict(self.doubled), 1)

    def same_exponents(self, other: "FactorizationMap") -> bool:
        """忽略符号比较"""
        return self.doubled == other.doubled

    def value(self) -> int:
        """整数指数时还原为整数"""
        if not self.is_integral():
            raise DomainError("half-integer exponents have no integer value")
        result = self.sign
        for p, k in self.doubled.items():
            result *= p ** (k // 2)
        return result

    def to_json(self) -> Dict:
        """JSON 形式，所有数字都是十进制字符串"""
        return {
            "sign": str(self.sign),
            "entries": {str(p): str(Fraction(k, 2)) for p, k in self.doubled.items()},
        }

    @classmethod
    def from_json(cls, data: Dict) -> "FactorizationMap":
        exps = {int(p): Fraction(e) for p, e in data.get("entries", {}).items()}
        return cls.from_exponents(exps, int(data.get("sign", "1")))

    def render(self) -> str:
        """人类可读形式，如 -3^12 · 31^(1/2)"""
        parts = []
        for p, k in self.doubled.items():
            if k == 2:
                parts.append(f"{p}")
            elif k % 2 == 0:
                parts.append(f"{p}^{k // 2}")
            else:
                parts.append(f"{p}^({k}/2)")
        body = " · ".join(parts) if parts else "1"
        return ("-" if self.sign < 0 else "") + body

    @classmethod
    def parse(cls, text: str) -> "FactorizationMap":
        """render 的逆：'-3^12 · 11^2 · 31^(1/2)' → FactorizationMap"""
        body = text.strip()
        sign = 1
        if body.startswith("-"):
            sign, body = -1, body[1:].strip()
        if body == "1":
            return cls({}, sign)
        exponents: Dict[int, Fraction] = {}
        for part in body.split("·"):
            base, _, exp = part.strip().partition("^")
            try:
                p = int(base)
                e = Fraction(exp.strip("()")) if exp else Fraction(1)
            except ValueError:
                raise DomainError(f"cannot parse factor {part.strip()!r}") from None
            if p in exponents:
                raise DomainError(f"prime {p} appears twice in {text!r}")
            exponents[p] = e
        return cls.from_exponents(exponents, sign)

    def __str__(self) -> str:
        return self.render()


def factorize(n: int) -> FactorizationMap:
    """
    整数分解

    Args:
        n: 非零整数

    Returns:
        FactorizationMap: 键按素数升序，sign 为 n 的符号
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    return FactorizationMap({p: 2 * e for p, e in _factor(n)}, 1 if n > 0 else -1)


def kronecker(a: int, n: int) -> int:
    """Kronecker 符号 (a|n)，对 n 完全积性"""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


def valuation(x: Rational, p: int) -> Union[int, float]:
    """
    p 进赋值 o_p(x)

    Args:
        x: 整数或有理数
        p: 素数

    Returns:
        int: 分子赋值减分母赋值；x = 0 时返回 INF
    """
    x = as_fraction(x)
    if x == 0:
        return INF
    return int(multiplicity(p, abs(x.numerator))) - int(multiplicity(p, x.denominator))


def sigma0(n: int) -> int:
    """除数个数 σ(n)"""
    if n <= 0:
        raise DomainError(f"sigma0 needs n >= 1, got {n}")
    return len(divisors(n))


def unit_part(x: Rational, p: int) -> Fraction:
    """x / p^{o_p(x)}"""
    x = as_fraction(x)
    if x == 0:
        raise DomainError("0 has no unit part")
    return x / Fraction(p) ** valuation(x, p)


def residue(x: Rational, modulus: int) -> int:
    """p 整有理数模 modulus 的剩余"""
    x = as_fraction(x)
    if modulus == 1:
        return 0
    try:
        inv = pow(x.denominator, -1, modulus)
    except ValueError:
        raise DomainError(f"{x} is not integral at the primes of {modulus}") from None
    return (x.numerator * inv) % modulus


def legendre_unit(x: Rational, p: int) -> int:
    """x 的单位部分的 Legendre 符号（p 奇）"""
    u = unit_part(x, p)
    return kronecker(u.numerator * u.denominator, p)


def _square_class(x: Rational) -> int:
    """同一平方类中的整数代表"""
    x = as_fraction(x)
    if x == 0:
        raise DomainError("Hilbert symbol of 0")
    return x.numerator * x.denominator


def hilbert_symbol(a: Rational, b: Rational, p: int) -> int:
    """
    ℚ_p 上的 Hilbert 符号 (a, b)_p

    Args:
        a, b: 非零有理数
        p: 素数（含 2）

    Returns:
        int: ±1
    """
    a, b = _square_class(a), _square_class(b)
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p ** alpha, b // p ** beta
    if p != 2:
        e = (alpha * beta * ((p - 1) // 2)) % 2
        result = -1 if e else 1
        if beta % 2:
            result *= kronecker(u, p)
        if alpha % 2:
            result *= kronecker(v, p)
        return result

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
    return -1 if e % 2 else 1
