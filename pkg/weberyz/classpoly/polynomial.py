"""
Polynomial - 由数值根得到精确整系数多项式
类多项式 ∏(X − f(𝔄)^{24/s})、判别式、结式，以及逐类的 disc(D; s, Ã)
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath as mp
from sympy import Poly, ZZ, Symbol

from ..arith import factorize
from ..errors import DomainError, PrecisionError
from ..quadorders.forms import QuadClass, as_discriminant, class_group
from ..webereval.eta import BigComplex, PrecisionConfig
from ..webereval.invariants import class_invariant

X = Symbol("X")


@dataclass(frozen=True)
class IntPolynomial:
    """整系数多项式，系数按升幂排列"""
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if not coeffs or coeffs[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    @property
    def constant(self) -> int:
        return self.coefficients[0]

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self.coefficients)), X, domain=ZZ)

    @classmethod
    def from_sympy(cls, poly: Poly) -> "IntPolynomial":
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            raise DomainError("derivative of a constant")
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coefficients) if k))

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "IntPolynomial":
        return cls(tuple(int(c) for c in data))

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if mag == 1 and k else str(mag)
            if k:
                body += "X" if k == 1 else f"X^{k}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


ROUNDING_MARGIN = mp.mpf(1) / 4


@dataclass
class RoundingReport:
    """数值系数取整报告"""
    max_offset: mp.mpf
    prec_used: int
    attempts: List[int] = field(default_factory=list)
    error_bound: mp.mpf = mp.mpf(0)

    @property
    def accepted(self) -> bool:
        """每个误差区间 [c − err, c + err] 都落在最近整数的 1/4 邻域内"""
        return self.max_offset + self.error_bound < ROUNDING_MARGIN

    def to_json(self) -> Dict:
        return {
            "max_offset": mp.nstr(self.max_offset, 6),
            "error_bound": mp.nstr(self.error_bound, 6),
            "prec_used": str(self.prec_used),
            "attempts": [str(b) for b in self.attempts],
        }


def root_error(work: int) -> mp.mpf:
    """f(𝔄)^{24/s} 在 work 比特下的相对误差上界（幂次至多 24）"""
    return 25 * mp.ldexp(1, 4 - work)


def class_roots(D: int, s: int, prec: int) -> List[BigComplex]:
    """按 class_group(D) 的顺序返回 f(𝔄)^{24/s}"""
    if s <= 0 or 24 % s:
        raise DomainError(f"s must divide 24, got {s}")
    power = 24 // s
    return [class_invariant(A, prec) ** power for A in class_group(D)]


def _expand(roots: Sequence[BigComplex], prec: int) -> Tuple[List[mp.mpc], List[mp.mpf]]:
    """
    ∏(X − r) 的升幂系数及逐项误差上界

    根的相对误差 δ 使第 k 项至多偏离 2dδ·M_k，M_k 为 ∏(X + |r|) 的第 k 项系数
    """
    with mp.workprec(prec):
        coeffs = [mp.mpc(1)]
        bounds = [mp.mpf(1)]
        for r in roots:
            rv = r.value
            mag = abs(rv)
            nxt = [mp.mpc(0)] * (len(coeffs) + 1)
            nxt_bound = [mp.mpf(0)] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                nxt[k + 1] += c
                nxt[k] -= rv * c
                nxt_bound[k + 1] += bounds[k]
                nxt_bound[k] += mag * bounds[k]
            coeffs, bounds = nxt, nxt_bound
        d = len(roots)
        delta = root_error(prec) + d * mp.ldexp(1, -prec)
        return coeffs, [2 * d * delta * M for M in bounds]


def _round(values: Sequence[mp.mpc], bounds: Sequence[mp.mpf],
           prec: int) -> Tuple[List[int], mp.mpf, mp.mpf]:
    """就近取整，返回 (整数, 最大偏差, 最大误差上界)；虚部计入偏差"""
    with mp.workprec(prec):
        ints = []
        worst = mp.mpf(0)
        for v in values:
            n = int(mp.nint(v.real))
            worst = max(worst, abs(v.real - n), abs(v.imag))
            ints.append(n)
        return ints, worst, max(bounds)


def minimal_polynomial(D, s: int, prec: Optional[int] = None,
                       precision: Optional[PrecisionConfig] = None,
                       cache=None) -> Tuple[IntPolynomial, RoundingReport]:
    """
    类不变量 f(𝔄)^{24/s} 的极小多项式

    Args:
        D: 可容许判别式
        s: 24 的因子
        prec: 起始精度（默认取 precision.default_bits）
        precision: 精度配置（翻倍阶梯与上限）
        cache: 可选 PolynomialCache

    Returns:
        (IntPolynomial, RoundingReport)
    """
    D = as_discriminant(D)
    if not D.yz_admissible:
        raise DomainError(f"discriminant {D.D} is not admissible")
    if cache is not None:
        hit = cache.get(D.D, s)
        if hit is not None:
            return hit
    precision = precision or PrecisionConfig()
    attempts: List[int] = []
    report = None
    for bits in precision.ladder(prec):
        attempts.append(bits)
        work = bits + precision.guard_bits
        roots = class_roots(D.D, s, work)
        coeffs, bounds = _expand(roots, work)
        ints, offset, error = _round(coeffs, bounds, work)
        report = RoundingReport(offset, bits, list(attempts), error)
        if report.accepted:
            poly = IntPolynomial(tuple(ints))
            if cache is not None:
                cache.put(D.D, s, poly, report)
            return poly, report
    raise PrecisionError(
        f"coefficients of the class polynomial for D={D.D}, s={s} did not round "
        f"below {precision.cap_bits} bits", report)


def poly_discriminant(P: IntPolynomial) -> int:
    """精确判别式（一次多项式约定为 1）"""
    if P.degree < 1:
        raise DomainError("discriminant needs degree >= 1")
    if P.degree == 1:
        return 1
    return int(P.to_sympy().discriminant())


def resultant(P1: IntPolynomial, P2: IntPolynomial) -> int:
    """精确结式 Res(P₁, P₂)，首一时等于 ∏(r₁ − r₂)"""
    return int(P1.to_sympy().resultant(P2.to_sympy()))


def discriminant_via_resultant(P: IntPolynomial) -> int:
    """(−1)^{d(d−1)/2} Res(P, P′)/lc(P)"""
    d = P.degree
    if d == 1:
        return 1
    r = resultant(P, P.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, P.leading)
    if rem:
        raise DomainError("Res(P, P') is not divisible by the leading coefficient")
    return q


def check_unit(P: IntPolynomial) -> bool:
    """常数项为 ±1"""
    return abs(P.constant) == 1


def max_prime_factor(n: int) -> int:
    """|n| 的最大素因子（±1 时为 1）"""
    primes = factorize(n).primes()
    return max(primes) if primes else 1


@dataclass
class DiscClassResult:
    """
    disc(D; s, Ã) 的数值结果及其到 ℚ 的范数

    pairing 为 "inverse"（Ã ≠ Ã⁻¹，范数取 disc(Ã)·disc(Ã⁻¹)）
    或 "conjugate"（Ã = Ã⁻¹，范数取 disc(Ã)·conj(disc(Ã))）；
    conjugate_matches 记录 conj(disc(Ã)) 与 disc(Ã⁻¹) 是否数值一致
    """
    D: int
    s: int
    atilde: QuadClass
    value: BigComplex
    norm: int
    pairing: str
    conjugate_matches: bool
    report: RoundingReport


def _product_disc(roots: Sequence[BigComplex], table_row: Sequence[int],
                  prec: int) -> Tuple[BigComplex, mp.mpf]:
    """∏(r_i − r_{σ(i)}) 及其相对误差上界"""
    delta = root_error(prec)
    with mp.workprec(prec):
        prod = mp.mpc(1)
        rel = mp.mpf(0)
        for i, j in enumerate(table_row):
            ri, rj = roots[i].value, roots[j].value
            diff = ri - rj
            prod *= diff
            rel += delta * (abs(ri) + abs(rj)) / abs(diff) + mp.ldexp(1, -prec)
        return BigComplex.from_value(prod, prec), rel


def _disc_class_results(D, s: int, classes: Sequence[QuadClass], prec: Optional[int],
                        precision: Optional[PrecisionConfig]) -> List[DiscClassResult]:
    D = as_discriminant(D)
    if not D.yz_admissible:
        raise DomainError(f"discriminant {D.D} is not admissible")
    group = class_group(D.D)
    indices = []
    for A in classes:
        k = group.index(A)
        if k == 0:
            raise DomainError("disc(D; s, Ã) needs a non-trivial class")
        indices.append((k, group.index(group[k].inverse())))
    table = group.table
    precision = precision or PrecisionConfig()
    attempts: List[int] = []
    report = None
    for bits in precision.ladder(prec):
        attempts.append(bits)
        work = bits + precision.guard_bits
        roots = class_roots(D.D, s, work)
        results = []
        for k, k_inv in indices:
            value, rel = _product_disc(roots, [row[k] for row in table], work)
            inverse, rel_inv = _product_disc(roots, [row[k_inv] for row in table], work)
            conjugate_matches = value.conjugate().is_close(inverse)
            if k_inv != k:
                norm_value, pairing = value * inverse, "inverse"
            else:
                norm_value, pairing = value * value.conjugate(), "conjugate"
                rel_inv = rel
            error = abs(norm_value) * (rel + rel_inv)
            (n,), offset, _ = _round([norm_value.value], [error], work)
            report = RoundingReport(offset, bits, list(attempts), error)
            if not report.accepted or n == 0:
                break
            results.append(DiscClassResult(D.D, s, group[k], BigComplex.from_value(value.value, bits),
                                           n, pairing, conjugate_matches, report))
        else:
            return results
    raise PrecisionError(f"norms of disc({D.D}; {s}, Ã) did not round "
                         f"below {precision.cap_bits} bits", report)


def disc_class_numeric(D, s: int, Atilde: QuadClass, prec: Optional[int] = None,
                       precision: Optional[PrecisionConfig] = None) -> DiscClassResult:
    """
    disc(D; s, Ã) = ∏_𝔄 (f(𝔄)^{24/s} − f(𝔄Ã)^{24/s}) 及其到 ℚ 的范数

    Args:
        D: 可容许判别式
        s: 24 的因子
        Atilde: 非平凡类
        prec: 起始精度
        precision: 精度配置

    Returns:
        DiscClassResult
    """
    return _disc_class_results(D, s, [Atilde], prec, precision)[0]


def disc_class_norms(D, s: int, classes: Optional[Sequence[QuadClass]] = None,
                     prec: Optional[int] = None,
                     precision: Optional[PrecisionConfig] = None) -> List[DiscClassResult]:
    """对多个非平凡类（默认全部）共用同一组根计算 disc_class_numeric"""
    if classes is None:
        classes = list(class_group(as_discriminant(D).D).nontrivial())
    if not classes:
        return []
    return _disc_class_results(D, s, classes, prec, precision)
