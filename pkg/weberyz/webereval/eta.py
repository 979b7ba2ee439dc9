"""
Eta - 任意精度 Dedekind η 与 Weber 函数
η 用五边形数稀疏级数求值，𝔣、𝔣₁、𝔣₂ 用 η 商或无穷乘积求值
"""

import os
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Union

import mpmath as mp

from ..errors import DomainError, UsageError

PREC_ENV = "WEBER_YZ_PREC"


@dataclass(frozen=True)
class PrecisionConfig:
    """工作精度配置（比特）"""
    default_bits: int = 192
    cap_bits: int = 65536
    guard_bits: int = 16

    def ladder(self, start: Optional[int] = None) -> Iterator[int]:
        """从 start 起逐次翻倍直到上限"""
        bits = start or self.default_bits
        while bits <= self.cap_bits:
            yield bits
            bits *= 2

    @classmethod
    def from_config(cls, section: Optional[Dict] = None) -> "PrecisionConfig":
        """
        从配置字典构造，环境变量 WEBER_YZ_PREC 覆盖 default_bits

        Args:
            section: config['precision']

        Returns:
            PrecisionConfig
        """
        section = section or {}
        default = int(section.get("default_bits", cls.default_bits))
        env = os.environ.get(PREC_ENV)
        if env:
            try:
                default = int(env)
            except ValueError:
                raise UsageError(f"{PREC_ENV} must be an integer, got {env!r}") from None
        if default <= 0:
            raise UsageError(f"precision must be positive, got {default}")
        return cls(default_bits=default,
                   cap_bits=int(section.get("cap_bits", cls.cap_bits)),
                   guard_bits=int(section.get("guard_bits", cls.guard_bits)))


@dataclass(frozen=True)
class BigComplex:
    """带工作精度的任意精度复数"""
    re: mp.mpf
    im: mp.mpf
    prec: int

    @classmethod
    def from_value(cls, z, prec: int) -> "BigComplex":
        with mp.workprec(prec):
            z = mp.mpc(z)
            return cls(+z.real, +z.imag, prec)

    @property
    def value(self) -> mp.mpc:
        # mpc(re, im) 按当前上下文精度舍入
        with mp.workprec(self.prec):
            return mp.mpc(self.re, self.im)

    def _binary(self, other, op) -> "BigComplex":
        if isinstance(other, BigComplex):
            prec = min(self.prec, other.prec)
            rhs = other.value
        else:
            prec = self.prec
            rhs = other
        with mp.workprec(prec):
            return BigComplex.from_value(op(self.value, rhs), prec)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._binary(other, lambda x, y: y - x)

    def __mul__(self, other):
        return self._binary(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda x, y: x / y)

    def __neg__(self):
        return BigComplex(-self.re, -self.im, self.prec)

    def __pow__(self, n: int) -> "BigComplex":
        with mp.workprec(self.prec):
            return BigComplex.from_value(self.value ** n, self.prec)

    def __abs__(self):
        with mp.workprec(self.prec):
            return abs(self.value)

    def conjugate(self) -> "BigComplex":
        return BigComplex(self.re, -self.im, self.prec)

    def tolerance(self) -> mp.mpf:
        return mp.mpf(2) ** (-(self.prec // 2))

    def is_close(self, other, tol=None) -> bool:
        """|self − other| ≤ tol（默认 2^(−prec/2)，按量级相对放宽）"""
        with mp.workprec(self.prec):
            other_value = other.value if isinstance(other, BigComplex) else mp.mpc(other)
            tol = self.tolerance() if tol is None else mp.mpf(tol)
            scale = max(mp.mpf(1), abs(self.value), abs(other_value))
            return abs(self.value - other_value) <= tol * scale

    def __complex__(self) -> complex:
        return complex(self.value)

    def __str__(self) -> str:
        return mp.nstr(self.value, 20)


Number = Union[BigComplex, complex, mp.mpc]


def _as_value(tau: Number) -> mp.mpc:
    return tau.value if isinstance(tau, BigComplex) else mp.mpc(tau)


def _check_upper(tau: mp.mpc) -> None:
    if tau.imag <= 0:
        raise DomainError(f"tau must lie in the upper half-plane, got {tau}")


def zeta48(k: int, prec: int) -> mp.mpc:
    with mp.workprec(prec):
        return mp.expjpi(mp.mpf(k % 48) / 24)


def _eta_value(tau: mp.mpc, prec: int) -> mp.mpc:
    """η(τ) = q^{1/24} Σ (−1)^k q^{k(3k−1)/2}，在 workprec 内调用"""
    q = mp.expjpi(2 * tau)
    absq = abs(q)
    eps = mp.mpf(2) ** (-prec - 8)
    total = mp.mpc(1)
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        if absq ** e1 < eps:
            break
        e2 = e1 + k
        term = q ** e1 + q ** e2
        total = total - term if k % 2 else total + term
        k += 1
    return mp.expjpi(tau / 12) * total


def eta(tau: Number, prec: int) -> BigComplex:
    """
    Dedekind η 函数

    Args:
        tau: 上半平面中的点
        prec: 精度（比特）

    Returns:
        BigComplex: η(τ)，绝对误差约 2^(−prec+4)
    """
    t = _as_value(tau)
    _check_upper(t)
    with mp.workprec(prec + 16):
        value = _eta_value(mp.mpc(t), prec)
    return BigComplex.from_value(value, prec)


def weber_f(tau: Number, prec: int) -> BigComplex:
    """𝔣(τ) = ζ₄₈⁻¹ η((τ+1)/2)/η(τ)"""
    t = _as_value(tau)
    _check_upper(t)
    with mp.workprec(prec + 16):
        t = mp.mpc(t)
        value = zeta48(-1, prec + 16) * _eta_value((t + 1) / 2, prec) / _eta_value(t, prec)
    return BigComplex.from_value(value, prec)


def weber_f1(tau: Number, prec: int) -> BigComplex:
    """𝔣₁(τ) = η(τ/2)/η(τ)"""
    t = _as_value(tau)
    _check_upper(t)
    with mp.workprec(prec + 16):
        t = mp.mpc(t)
        value = _eta_value(t / 2, prec) / _eta_value(t, prec)
    return BigComplex.from_value(value, prec)


def weber_f2(tau: Number, prec: int) -> BigComplex:
    """𝔣₂(τ) = √2 η(2τ)/η(τ)"""
    t = _as_value(tau)
    _check_upper(t)
    with mp.workprec(prec + 16):
        t = mp.mpc(t)
        value = mp.sqrt(2) * _eta_value(2 * t, prec) / _eta_value(t, prec)
    return BigComplex.from_value(value, prec)


WEBER_FUNCTIONS = {"f": weber_f, "f1": weber_f1, "f2": weber_f2}


def weber_product(kind: str, tau: Number, prec: int) -> BigComplex:
    """
    Weber 函数的无穷乘积展开（与 η 商独立的第二条求值路径）

    Args:
        kind: "f" | "f1" | "f2"
        tau: 上半平面中的点
        prec: 精度

    Returns:
        BigComplex
    """
    if kind not in WEBER_FUNCTIONS:
        raise DomainError(f"unknown Weber function {kind!r}")
    t = _as_value(tau)
    _check_upper(t)
    with mp.workprec(prec + 16):
        t = mp.mpc(t)
        half = mp.expjpi(t)
        q = half * half
        eps = mp.mpf(2) ** (-prec - 8)
        if kind == "f2":
            prod = mp.mpc(1)
            qn = q
            while abs(qn) >= eps:
                prod *= 1 + qn
                qn *= q
            value = mp.sqrt(2) * mp.expjpi(t / 12) * prod
        else:
            sign = 1 if kind == "f" else -1
            prod = mp.mpc(1)
            qn = half
            while abs(qn) >= eps:
                prod *= 1 + sign * qn
                qn *= q
            value = mp.expjpi(-t / 24) * prod
    return BigComplex.from_value(value, prec)
