"""
Context - 一次预测所需的判别式数据
D₁ = D₀t₁²、D₂ = D₀t₂²、s | 24，以及派生量 t、s′、s_ℓ、D_{0,t}、D₀′、κ_ℓ
"""

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterator, List

from sympy import primerange

from ..arith import kronecker, prime_factors, valuation
from ..errors import DomainError, ResourceError
from ..quadorders.forms import Discriminant, as_discriminant

KAPPA_SEARCH_BOUND = 10 ** 6


def ell_part(s: int, ell: int) -> int:
    """s 中 ℓ 的精确幂"""
    return ell ** valuation(s, ell)


def kappa_candidates(D0: int, ell: int, bound: int = KAPPA_SEARCH_BOUND) -> Iterator[int]:
    """
    依 |κ| 递增给出全部可用的 κ_ℓ

    κ < 0、gcd(κ, D₀) = 1，且对每个 p | D₀ 有 (κ|p) = 1 ⇔ p ≠ ℓ。
    """
    primes = prime_factors(D0)
    for k in range(1, bound):
        kappa = -k
        if gcd(k, D0) != 1:
            continue
        if all((kronecker(kappa, p) == 1) == (p != ell) for p in primes):
            yield kappa


def kappa_ell(D0: int, ell: int, choice: int = 0) -> int:
    """第 choice 个（默认绝对值最小的）κ_ℓ"""
    for k, kappa in enumerate(kappa_candidates(D0, ell)):
        if k == choice:
            return kappa
    raise ResourceError(f"no κ_{ell} for D0 = {D0} below {KAPPA_SEARCH_BOUND}")


@dataclass(frozen=True)
class PredictionContext:
    """
    预测上下文

    D₁D₂ 必须是平方数，两者都可容许；D = lcm(D₁, D₂) = D₀t²。
    """
    D1: int
    D2: int
    s: int
    first: Discriminant = field(init=False, repr=False)
    second: Discriminant = field(init=False, repr=False)

    def __post_init__(self):
        first, second = as_discriminant(self.D1), as_discriminant(self.D2)
        for d in (first, second):
            if not d.yz_admissible:
                raise DomainError(f"discriminant {d.D} is not admissible (need D ≡ 1 mod 8, 3 ∤ D)")
        prod = first.D * second.D
        if isqrt(prod) ** 2 != prod:
            raise DomainError(f"{first.D}·{second.D} is not a square")
        if first.D == second.D:
            if not first.is_fundamental:
                raise DomainError(f"discriminant mode needs a fundamental D, got {first.D}")
        elif gcd(first.conductor, second.conductor) != 1:
            raise DomainError(f"conductors of {first.D} and {second.D} are not coprime")
        if self.s <= 0 or 24 % self.s:
            raise DomainError(f"s must divide 24, got {self.s}")
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)

    @classmethod
    def fundamental(cls, D: int, s: int) -> "PredictionContext":
        """D₁ = D₂ = D 的判别式情形"""
        return cls(D, D, s)

    @property
    def D0(self) -> int:
        return self.first.fundamental

    @property
    def t1(self) -> int:
        return self.first.conductor

    @property
    def t2(self) -> int:
        return self.second.conductor

    @property
    def t(self) -> int:
        """t = t₁t₂，lcm(D₁, D₂) = D₀t²；判别式情形为 1"""
        if self.D1 == self.D2:
            return 1
        return self.t1 * self.t2

    @property
    def D(self) -> int:
        return self.D0 * self.t * self.t

    @property
    def s_prime(self) -> int:
        """s′ = gcd(s, 3^{1−(D|3)})"""
        return gcd(self.s, 3 ** (1 - kronecker(self.D0, 3)))

    @property
    def D0t(self) -> int:
        return gcd(abs(self.D0), self.t)

    @property
    def D0_prime(self) -> int:
        return self.D0 // self.D0t

    @property
    def is_discriminant_case(self) -> bool:
        return self.D1 == self.D2

    def s_ell(self, ell: int) -> int:
        return ell_part(self.s, ell)

    def kappa(self, ell: int, choice: int = 0) -> int:
        return kappa_ell(self.D0, ell, choice)

    def candidate_primes(self) -> List[int]:
        """所有 ℓ ≤ |D₀t| 的非分裂素数"""
        bound = abs(self.D0) * self.t
        return [ell for ell in primerange(2, bound + 1)
                if kronecker(self.D0, ell) != 1]

    def to_json(self) -> dict:
        return {"D1": str(self.D1), "D2": str(self.D2), "s": str(self.s)}
