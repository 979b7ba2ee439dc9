"""
Formulas - 预测赋值 ord_ℓ
一般公式（按 ã₀ 中元素求和）、理想对计数、|D| 为素数时的推论，以及结式的三个显式公式
"""

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional

from sympy import isprime

from ..arith import (
    FactorizationMap,
    Rational,
    divisors,
    is_integral,
    kronecker,
    prime_factors,
    sigma0,
    valuation,
)
from ..errors import DomainError
from ..localdensity.deltap import (
    delta_fundamental,
    delta_prime_fundamental,
    delta_values,
    rho_prime,
    rho_prime_3s3,
)
from ..quadorders.counting import S_set, r_class, rho, rho_M, rho_genus
from ..quadorders.forms import QuadClass, class_group
from ..quadorders.ideals import OrderIdeal, ideals_of_norm
from ..quadorders.smallcm import IdealData, enumerate_elements, make_small_cm_pair, project_class
from .context import PredictionContext, ell_part

# mm̃/(4r²) 在 r 求和中的同余常数
CONGRUENCE_CONSTANT = 19


def _check_prime(ell: int) -> None:
    if not isprime(ell):
        raise DomainError(f"{ell} is not a prime")


def _congruent(x: Fraction, modulus: int) -> bool:
    """x ∈ ℤ 且 x ≡ 19 mod modulus"""
    return is_integral(x) and (int(x) - CONGRUENCE_CONSTANT) % modulus == 0


def _r_values(S: int, lower: int, n: int, n_tilde: int) -> List[int]:
    """满足 lower | r | S 且 nñ/(4r²) ≡ 19 mod S/r 的 r"""
    return [r for r in divisors(S)
            if r % lower == 0 and _congruent(Fraction(n * n_tilde, 4 * r * r), S // r)]


def _norm_prime_to(A: QuadClass, modulus: int) -> int:
    return A.value_prime_to(modulus)


def w_weight(D: int, ell: int, n: int) -> int:
    """
    w(ℓ, n)

    Args:
        D: 基本判别式
        ell: 素数
        n: 正整数

    Returns:
        int: S(D, −n) = {ℓ} 时为 σ₀(gcd(n, |D|/gcd(ℓ, |D|)))，否则为 0
    """
    if n <= 0:
        raise DomainError(f"w(ℓ, n) needs n > 0, got {n}")
    if S_set(D, -n) != frozenset({ell}):
        return 0
    return sigma0(gcd(n, abs(D) // gcd(ell, abs(D))))


# ---------------------------------------------------------------------------
# 一般公式
# ---------------------------------------------------------------------------

def _ell_factor_fundamental(D0: int, a: int, n: int, ell: int, s3: int) -> Fraction:
    if ell == 3:
        return rho_prime_3s3(D0, n, s3)
    if D0 % ell:
        return rho_prime(D0, ell, n) / 2
    return delta_prime_fundamental(D0, a, n, ell)


def _local_fundamental(D0: int, a: int, n: int, ell: int, s3: int) -> Fraction:
    """t = 1 时与 α̃ 无关的局部因子之积"""
    total = _ell_factor_fundamental(D0, a, n, ell, s3)
    for p in prime_factors(D0):
        if total == 0:
            break
        if p != ell:
            total *= delta_fundamental(D0, a, n, p)
    return total


def _local_general(ctx: PredictionContext, a: int, n: int, alpha, ell: int,
                   s3: int) -> Fraction:
    D0, t = ctx.D0, ctx.t
    if ell == 3:
        total = rho_prime_3s3(D0, n, s3)
    elif ctx.D % ell:
        total = rho_prime(D0, ell, n) / 2
    else:
        total = delta_values(D0, t, a, n, alpha, ell).derivative
    for p in prime_factors(ctx.D):
        if total == 0:
            break
        if p != ell:
            total *= delta_values(D0, t, a, n, alpha, p).value
    return total


@lru_cache(maxsize=4096)
def _tilde_ideal(A1: QuadClass, A2: QuadClass, skip: int) -> IdealData:
    return make_small_cm_pair(A1, A2, skip=skip).tilde


def _endpoint(ctx: PredictionContext, tilde: IdealData, ell: int) -> Fraction:
    """n = 0 的端点项：只有 t 是 ℓ 的幂时非零"""
    t = ctx.t
    if t == 1 or prime_factors(t) != (ell,):
        return Fraction(0)
    N = abs(ctx.D0) * t
    count = len(enumerate_elements(tilde, tilde.a * N))
    return rho(ctx.D0, 0) * (1 - kronecker(ctx.D0, ell)) * Fraction(count, 2)


def ord_disc_main(ctx: PredictionContext, A1: QuadClass, A2: QuadClass, ell: int,
                  skip: int = 0) -> Fraction:
    """
    ord_ℓ ∏_𝔅 (f(𝔄₁𝔅)^{24/s} − f(𝔄₂𝔅)^{24/s})，按 ã₀ 中元素求和的一般公式

    Args:
        ctx: 预测上下文
        A1: Cl(D₁) 中的类
        A2: Cl(D₂) 中的类（D₁ = D₂ 时须与 A1 不同）
        ell: 素数
        skip: 传给 make_small_cm_pair，选用另一组代表

    Returns:
        Fraction: 可能为半整数
    """
    _check_prime(ell)
    if A1.D != ctx.D1 or A2.D != ctx.D2:
        raise DomainError(f"classes {A1.label}, {A2.label} do not match ({ctx.D1}, {ctx.D2})")
    if ctx.is_discriminant_case and A1.reduced() == A2.reduced():
        raise DomainError("A1 = A2 gives a vanishing factor")
    D0, t, s = ctx.D0, ctx.t, ctx.s
    if kronecker(D0, ell) == 1:
        return Fraction(0)
    if ell == 3 and ctx.D % 3 == 0:
        raise DomainError("ℓ = 3 cannot divide an admissible D")

    tilde = _tilde_ideal(A1, A2, skip)
    a = tilde.a
    tilde_class = tilde.quad_class()
    S = s // ell_part(s, ell)
    sp = ctx.s_prime
    lower = sp // ell_part(sp, ell)
    s3 = ell_part(s, 3)
    total_n = abs(D0) * t

    total = Fraction(0)
    for n in range(1, total_n + 1):
        n_tilde = total_n - n
        for r in _r_values(S, lower, n, n_tilde):
            for A in divisors(2 * r):
                B = 2 * r // A
                weight = rho_M(D0, Fraction(n, A * A), ctx.D * ell)
                if weight == 0 or n_tilde % (B * B):
                    continue
                N = n_tilde // (B * B)
                if t == 1:
                    count = 1 if N == 0 else 2 * r_class(D0, tilde_class, N)
                    total += weight * count * _local_fundamental(D0, a, n, ell, s3)
                    continue
                elements = [(Fraction(0), Fraction(0))] if N == 0 else enumerate_elements(tilde, a * N)
                for x, y in elements:
                    total += weight * _local_general(ctx, a, n, (B * x, B * y), ell, s3)
    return total / 2 + _endpoint(ctx, tilde, ell)


# ---------------------------------------------------------------------------
# 理想对计数（D 为基本判别式）
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealPairWitness:
    """ℓ^j·Nm(𝔟₁) + Nm(𝔟₂) = |D| 的一组理想对"""
    b1: OrderIdeal
    b2: OrderIdeal
    j: int
    content_check: bool
    weight: int

    def to_json(self) -> Dict:
        return {
            "b1": str(self.b1),
            "b2": str(self.b2),
            "j": str(self.j),
            "content_check": self.content_check,
            "weight": str(self.weight),
        }


def _check_discriminant_context(ctx: PredictionContext, Atilde: QuadClass) -> None:
    if not ctx.is_discriminant_case:
        raise DomainError("pair counting needs D1 = D2")
    if Atilde.D != ctx.D0:
        raise DomainError(f"{Atilde.label} is not a class of discriminant {ctx.D0}")
    if Atilde.reduced() == class_group(ctx.D0).identity:
        raise DomainError("Ã must be non-trivial")


def _content_ok(ideal: OrderIdeal, ell_power: int, modulus: int) -> bool:
    c = ideal.content
    return c * (ell_power * ideal.norm // (c * c) + 5) % modulus == 0


def pair_witnesses(ctx: PredictionContext, Atilde: QuadClass, ell: int) -> List[IdealPairWitness]:
    """
    枚举 ℓ^j·Nm(𝔟₁) + Nm(𝔟₂) = |D|、[𝔟₂] = Ã 且 𝔟₁𝔟₂ 被 2s′ 整除的全部理想对

    content_check 记录 c(𝔞)(ℓ^j·Nm(𝔞)/c(𝔞)² + 5) ≡ 0 mod s/s′，
    其中 𝔞 = 𝔟₁𝔟₂/(2s′)；weight 为 w(ℓ, (|D| − Nm 𝔟₂)·a)。
    """
    _check_discriminant_context(ctx, Atilde)
    _check_prime(ell)
    D = ctx.D0
    absD = abs(D)
    sp = ctx.s_prime
    modulus = ctx.s // sp
    a = _norm_prime_to(Atilde, 2 * D * ell)
    target = Atilde.reduced()
    witnesses: List[IdealPairWitness] = []
    j = 1
    while ell ** j < absD:
        power = ell ** j
        for N1 in range(1, (absD - 1) // power + 1):
            N2 = absD - power * N1
            seconds = [b2 for b2 in ideals_of_norm(D, N2) if b2.quad_class() == target]
            if not seconds:
                continue
            weight = w_weight(D, ell, power * N1 * a)
            for b1 in ideals_of_norm(D, N1):
                for b2 in seconds:
                    prod = b1.multiply(b2)
                    if prod.content % (2 * sp):
                        continue
                    check = _content_ok(prod.divide(2 * sp), power, modulus)
                    witnesses.append(IdealPairWitness(b1, b2, j, check, weight))
        j += 1
    return witnesses


def _ord3_displayed(ctx: PredictionContext, Atilde: QuadClass, weighted: bool) -> Fraction:
    """ℓ = 3 惰性时的显式和"""
    D = ctx.D0
    absD = abs(D)
    s3 = ell_part(ctx.s, 3)
    S = ctx.s // s3
    a = _norm_prime_to(Atilde, 6 * D)
    total = Fraction(0)
    for n in range(1, absD + 1):
        n_tilde = absD - n
        if weighted:
            factor = Fraction(w_weight(D, 3, n * a))
        else:
            o = valuation(n, 3)
            if n_tilde == 0 or o < 1 or o % 2 == 0:
                continue
            factor = Fraction(valuation(Fraction(n, s3), 3) + 1, 2)
        if factor == 0:
            continue
        for r in _r_values(S, 1, n, n_tilde):
            for A in divisors(2 * r):
                B = 2 * r // A
                count = r_class(D, Atilde, Fraction(n_tilde, B * B))
                if count == 0:
                    continue
                if weighted:
                    inner = Fraction(0)
                    j = 1
                    while n % 3 ** j == 0:
                        inner += rho(D, Fraction(n, 3 ** j * A * A))
                        inner += rho(D, Fraction(n, 3 ** j * s3 * A * A))
                        j += 1
                else:
                    inner = rho_M(D, Fraction(n, A * A), 3)
                total += factor * inner * count
    return total / 2 if weighted else total


def ord_disc_pairs(ctx: PredictionContext, Atilde: QuadClass, ell: int) -> Fraction:
    """
    ord_ℓ disc(D; s, Ã)，由理想对计数得到

    Args:
        ctx: D₁ = D₂ = D 的上下文
        Atilde: 非平凡类
        ell: 素数

    Returns:
        Fraction: 分裂 0；ℓ = 3 用显式和；其余为带权理想对个数（ℓ | D 时另加 ½w(ℓ, |D|a)）
    """
    _check_discriminant_context(ctx, Atilde)
    _check_prime(ell)
    D = ctx.D0
    eps = kronecker(D, ell)
    if eps == 1:
        return Fraction(0)
    if ell == 3:
        return _ord3_displayed(ctx, Atilde, weighted=True)
    total = Fraction(sum(w.weight for w in pair_witnesses(ctx, Atilde, ell) if w.content_check))
    if eps == 0:
        a = _norm_prime_to(Atilde, 2 * D * ell)
        total += Fraction(w_weight(D, ell, abs(D) * a), 2)
    return total


def ord_disc_prime(ctx: PredictionContext, Atilde: QuadClass, ell: int) -> Fraction:
    """|D| 为素数时的不加权版本"""
    _check_discriminant_context(ctx, Atilde)
    _check_prime(ell)
    D = ctx.D0
    if not isprime(-D):
        raise DomainError(f"|D| = {-D} is not a prime")
    eps = kronecker(D, ell)
    if eps == 1:
        return Fraction(0)
    if eps == 0:
        return Fraction(1, 2)
    if ell == 3:
        return _ord3_displayed(ctx, Atilde, weighted=False)
    return Fraction(sum(1 for w in pair_witnesses(ctx, Atilde, ell) if w.content_check))


# ---------------------------------------------------------------------------
# 结式
# ---------------------------------------------------------------------------

def _ell_free(n: int, ell: int) -> int:
    """n^{(ℓ)} = n/ℓ^{o_ℓ(n)}"""
    while n % ell == 0:
        n //= ell
    return n


def _rho_tower(D0: int, x: Fraction, ell: int, start: int) -> Fraction:
    """Σ_{j ≥ start} ρ(x/ℓ^j)"""
    total = Fraction(0)
    j = start
    while True:
        y = x / Fraction(ell) ** j
        if not is_integral(y) or y == 0:
            return total
        total += rho(D0, y)
        j += 1


def _resultant_coprime(ctx: PredictionContext, ell: int) -> Fraction:
    """ℓ ∤ 3t"""
    D0, t, s = ctx.D0, ctx.t, ctx.s
    D0t, D0p = ctx.D0t, abs(ctx.D0_prime)
    kappa = ctx.kappa(ell)
    start = valuation(D0, ell)
    total_n = abs(D0) * t
    total = Fraction(0)
    for n in range(1, total_n):
        n_tilde = total_n - n
        if D0t % gcd(n, t * t):
            continue
        sigma = sigma0(gcd(n, D0p // gcd(ell, D0p)))
        for r in _r_values(s, ctx.s_prime, n, n_tilde):
            for A in divisors(2 * r):
                B = 2 * r // A
                g = rho_genus(D0, Fraction(n_tilde, B * B), -kappa * n)
                if g:
                    total += sigma * _rho_tower(D0, Fraction(n, A * A), ell, start) * g
    return total


def _resultant_conductor(ctx: PredictionContext, ell: int) -> Fraction:
    """ℓ | t"""
    D0, t, s = ctx.D0, ctx.t, ctx.s
    D0t, D0p = ctx.D0t, abs(ctx.D0_prime)
    kappa = ctx.kappa(ell)
    total_n = abs(D0) * t
    shift = ell * gcd(ell, D0t)
    total = Fraction(0)
    for n in range(1, total_n + 1):
        n_tilde = total_n - n
        if D0t % gcd(_ell_free(n, ell), t * t):
            continue
        sigma = sigma0(gcd(n, D0p))
        for r in _r_values(s, ctx.s_prime, n, n_tilde):
            for A in divisors(2 * r):
                B = 2 * r // A
                g = rho_genus(D0, Fraction(n_tilde, B * B), -kappa * n)
                if g:
                    total += sigma * rho(D0, Fraction(n, A * A * shift)) * g
    if prime_factors(t) == (ell,):
        total += rho(D0, 0) * (1 - kronecker(D0, ell)) * rho(D0, total_n)
    return total


def _resultant_three(ctx: PredictionContext) -> Fraction:
    """ℓ = 3"""
    D0, t, s = ctx.D0, ctx.t, ctx.s
    D0t, D0p = ctx.D0t, abs(ctx.D0_prime)
    s3 = ell_part(s, 3)
    s2 = s // s3
    total_n = abs(D0) * t
    total = Fraction(0)
    for n in range(1, total_n):
        n_tilde = total_n - n
        if D0t % gcd(n, t * t):
            continue
        sigma = Fraction(sigma0(gcd(n, D0p)), 2)
        for r in _r_values(s2, 1, n, n_tilde):
            for A in divisors(2 * r):
                B = 2 * r // A
                g = rho_genus(D0, Fraction(n_tilde, B * B), -n)
                if not g:
                    continue
                tower = (_rho_tower(D0, Fraction(n, A * A), 3, 1)
                         + _rho_tower(D0, Fraction(n, s3 * A * A), 3, 1))
                total += sigma * tower * g
    return total


def ord_resultant(ctx: PredictionContext, ell: int) -> Fraction:
    """
    ord_ℓ Res(P₁, P₂)

    Args:
        ctx: D₁ ≠ D₂ 的上下文，t > 1 且 t 的素因子都不分裂
        ell: 素数

    Returns:
        Fraction: 分裂素数返回 0
    """
    _check_prime(ell)
    t, D0 = ctx.t, ctx.D0
    if ctx.is_discriminant_case or t == 1:
        raise DomainError("resultant formulas need t > 1")
    split = [p for p in prime_factors(t) if kronecker(D0, p) == 1]
    if split:
        raise DomainError(f"primes {split} dividing t split in Q(√{D0})")
    if kronecker(D0, ell) == 1:
        return Fraction(0)
    if ell == 3:
        return _resultant_three(ctx)
    if t % ell == 0:
        return _resultant_conductor(ctx, ell)
    return _resultant_coprime(ctx, ell)


def ord_resultant_main(ctx: PredictionContext, ell: int) -> Fraction:
    """
    用一般公式计算 ord_ℓ Res(P₁, P₂)

    Cl(D₁) × Cl(D₂) 按 Cl(D₀) 中的像 𝔄₁⁻¹𝔄₂ 分成纤维，每条纤维恰为一个 ∏_𝔅 乘积。
    """
    if ctx.is_discriminant_case:
        raise DomainError("resultant needs D1 != D2")
    base = class_group(ctx.D1).identity
    base_image = project_class(base, ctx.D0)
    seen = set()
    total = Fraction(0)
    for A2 in class_group(ctx.D2):
        image = class_group(ctx.D0).multiply(base_image.inverse(), project_class(A2, ctx.D0))
        if image in seen:
            continue
        seen.add(image)
        total += ord_disc_main(ctx, base, A2, ell)
    return total


# ---------------------------------------------------------------------------
# 汇总
# ---------------------------------------------------------------------------

DISC_ROUTES = ("main", "pairs")
RESULTANT_ROUTES = ("explicit", "main")


def predicted_disc_class(ctx: PredictionContext, Atilde: QuadClass,
                         route: str = "main") -> FactorizationMap:
    """单个非平凡类 Ã 的预测分解 ∏ ℓ^{ord_ℓ disc(D; s, Ã)}"""
    _check_discriminant_context(ctx, Atilde)
    principal = class_group(ctx.D0).identity
    exponents: Dict[int, Rational] = {}
    for ell in ctx.candidate_primes():
        if route == "pairs":
            value = ord_disc_pairs(ctx, Atilde, ell)
        else:
            value = ord_disc_main(ctx, principal, Atilde, ell)
        if value:
            exponents[ell] = value
    return FactorizationMap.from_exponents(exponents)


def predicted_factorization(ctx: PredictionContext, Atilde: Optional[QuadClass] = None,
                            route: Optional[str] = None) -> FactorizationMap:
    """
    预测分解

    Args:
        ctx: 预测上下文
        Atilde: 判别式情形下只算这一类；为空时对全部非平凡类求和
        route: 判别式情形 "main"（默认）或 "pairs"；
               结式情形 "explicit"（默认，三个显式公式）或 "main"

    Returns:
        FactorizationMap: 无符号，键为 ℓ ≤ |D₀t| 的非分裂素数
    """
    if ctx.is_discriminant_case:
        route = route or "main"
        if route not in DISC_ROUTES:
            raise DomainError(f"unknown route {route!r} for a discriminant")
        if Atilde is not None:
            return predicted_disc_class(ctx, Atilde, route)
        result = FactorizationMap.from_exponents({})
        for A in class_group(ctx.D0).nontrivial():
            result = result + predicted_disc_class(ctx, A, route)
        return result

    route = route or "explicit"
    if route not in RESULTANT_ROUTES:
        raise DomainError(f"unknown route {route!r} for a resultant")
    ord_fn = ord_resultant if route == "explicit" else ord_resultant_main
    exponents: Dict[int, Rational] = {}
    for ell in ctx.candidate_primes():
        value = ord_fn(ctx, ell)
        if value:
            exponents[ell] = value
    return FactorizationMap.from_exponents(exponents)
