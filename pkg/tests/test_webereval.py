"""
webereval 测试
η 函数、Weber 函数恒等式、Γ₀(2) 特征与类不变量
"""

from math import gcd

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import POLY_31
from weberyz.errors import DomainError
from weberyz.quadorders.forms import QuadClass, class_group
from weberyz.verifier import admissible_discriminants
from weberyz.webereval.eta import (
    BigComplex,
    PrecisionConfig,
    eta,
    weber_f,
    weber_f1,
    weber_f2,
    weber_product,
)
from weberyz.webereval.invariants import (
    CMPoint,
    Gamma02Element,
    chi,
    chi_invariance_check,
    class_invariant,
    epsilon_D,
)

PREC = 160
SAMPLE_TAUS = [1j, 0.3 + 1.1j, -0.45 + 0.8j, mp.mpc(0.5, mp.sqrt(31) / 2)]


def test_eta_at_i():
    """测试: η(i) = Γ(1/4)/(2π^{3/4})"""
    with mp.workprec(PREC):
        expected = mp.gamma(mp.mpf(1) / 4) / (2 * mp.pi ** (mp.mpf(3) / 4))
    assert eta(1j, PREC).is_close(expected)


def test_eta_rejects_lower_half_plane():
    """测试: Im τ ≤ 0 被拒绝"""
    with pytest.raises(DomainError):
        eta(-1j, PREC)
    with pytest.raises(DomainError):
        weber_f(0.5, PREC)


@pytest.mark.parametrize("tau", SAMPLE_TAUS)
def test_weber_identities(tau):
    """测试: 𝔣𝔣₁𝔣₂ = √2 且 𝔣⁸ = 𝔣₁⁸ + 𝔣₂⁸"""
    f, f1, f2 = weber_f(tau, PREC), weber_f1(tau, PREC), weber_f2(tau, PREC)
    with mp.workprec(PREC):
        assert (f * f1 * f2).is_close(mp.sqrt(2))
    assert (f ** 8).is_close(f1 ** 8 + f2 ** 8)


@pytest.mark.parametrize("kind, fn", [("f", weber_f), ("f1", weber_f1), ("f2", weber_f2)])
@pytest.mark.parametrize("tau", SAMPLE_TAUS)
def test_product_matches_eta_quotient(kind, fn, tau):
    """测试: 无穷乘积与 η 商两条路径一致"""
    assert weber_product(kind, tau, PREC).is_close(fn(tau, PREC))


def test_weber_product_unknown_kind():
    """测试: 未知函数名"""
    with pytest.raises(DomainError):
        weber_product("g", 1j, PREC)


@st.composite
def gamma02(draw, bound=10):
    """|c| ≤ 2·bound 的随机 Γ₀(2) 元素"""
    c = 2 * draw(st.integers(min_value=-bound, max_value=bound))
    if c == 0:
        a = draw(st.sampled_from([1, -1]))
        return Gamma02Element(a, draw(st.integers(min_value=-5, max_value=5)), 0, a)
    a = draw(st.integers(min_value=-bound, max_value=bound)
             .map(lambda n: 2 * n + 1)
             .filter(lambda n: gcd(n, c) == 1))
    d = pow(a, -1, abs(c)) + abs(c) * draw(st.integers(min_value=-3, max_value=3))
    return Gamma02Element(a, (a * d - 1) // c, c, d)


def test_chi_values():
    """测试: χ(T) = ζ₂₄、χ(B) = ζ₂₄⁻¹ 与合法性检查"""
    T = Gamma02Element.T()
    assert chi(Gamma02Element.identity()) == 0
    assert chi(T) == 2
    assert chi(Gamma02Element(1, 0, -2, 1)) == 46
    assert chi(Gamma02Element(1, 0, 2, 1)) == 2
    assert chi(Gamma02Element(-1, 0, 0, -1)) == 0
    assert chi(T * Gamma02Element(1, 0, -2, 1)) == 0
    with pytest.raises(DomainError):
        Gamma02Element(1, 1, 1, 2)
    with pytest.raises(DomainError):
        Gamma02Element(2, 1, 2, 1)


@settings(max_examples=100)
@given(gamma02(), gamma02())
def test_chi_is_homomorphism(g1, g2):
    """测试: χ(γ₁γ₂) = χ(γ₁)χ(γ₂)"""
    assert chi(g1 * g2) == (chi(g1) + chi(g2)) % 48


@settings(max_examples=20, deadline=None)
@given(gamma02())
def test_chi_invariance(g):
    """测试: 𝔣₂(gτ) = χ(g)𝔣₂(τ)，τ 取在 |cτ + d| = 1 上"""
    if g.c > 0:
        tau = complex(-g.d, 1) / g.c
    elif g.c < 0:
        tau = complex(-g.d, -1) / g.c
    else:
        tau = 0.1 + 1.3j
    assert chi_invariance_check(g, tau, PREC)


def test_cm_point():
    """测试: CM 点与合法性检查"""
    point = CMPoint.from_form(QuadClass(2, 1, 4))
    assert point.c == 4
    with mp.workprec(PREC):
        tau = point.tau(PREC)
        assert mp.almosteq(tau, mp.mpc(-0.25, mp.sqrt(31) / 4), mp.mpf(2) ** -100)
    with pytest.raises(DomainError):
        CMPoint(2, 2, -31)


def test_epsilon_D():
    assert epsilon_D(-7) == -1
    assert epsilon_D(-23) == -1
    assert epsilon_D(-31) == 1
    assert epsilon_D(-15) == 1


def test_principal_invariant_is_root():
    """测试: f(𝒪)^24 是 D = −31 类多项式的根"""
    r = class_invariant(QuadClass.principal(-31), PREC) ** 24
    with mp.workprec(PREC):
        value = sum(c * r.value ** k for k, c in enumerate(POLY_31))
        assert abs(value) < mp.mpf(2) ** -80
        assert abs(r.value.imag) < mp.mpf(2) ** -80
        assert abs(r.value.real - mp.mpf("1.0371e-4")) < mp.mpf("1e-8")


def test_invariants_are_roots_at_400_bits(group31):
    """测试: 400 比特下每个类的 f(𝔄)^24 都是 P(X) 的根，残差远小于双精度"""
    for A in group31:
        r = class_invariant(A, 400) ** 24
        assert r.prec == 400
        with mp.workprec(400):
            residual = abs(sum(c * r.value ** k for k, c in enumerate(POLY_31)))
        assert residual < mp.mpf(2) ** -300


def test_big_complex_keeps_precision():
    """测试: BigComplex 的值与运算在默认 53 位上下文中不丢精度"""
    with mp.workprec(400):
        third = mp.mpf(1) / 3
    z = BigComplex.from_value(mp.mpc(third, third), 400)
    assert z.value.real == third
    assert (z * 1).re == third
    assert (z + 0).im == third
    assert z.is_close(z + mp.mpf(2) ** -150) is False


SWEEP_DISCRIMINANTS = admissible_discriminants(-400, -1)


@pytest.mark.parametrize("D", SWEEP_DISCRIMINANTS)
def test_invariant_independent_of_representative(D):
    """测试: 同类的平移代表 (a, b + 2ka) 与交换代表 (c, −b, a) 给出相同的 f(𝔞)"""
    for A in class_group(D):
        expected = class_invariant(A, PREC)
        others = [CMPoint(A.a, A.b + 2 * k * A.a, D) for k in (-1, 1, 2)]
        others.append(CMPoint(A.c, -A.b, D))
        for point in others:
            assert class_invariant(point, PREC).is_close(expected), (A.label, point)


def test_inadmissible_invariant():
    with pytest.raises(DomainError):
        class_invariant(QuadClass.principal(-15), PREC)


def test_big_complex_arithmetic():
    """测试: BigComplex 运算保持精度"""
    z = BigComplex.from_value(mp.mpc(1, 2), PREC)
    w = BigComplex.from_value(mp.mpc(3, -1), 64)
    assert (z * w).prec == 64
    assert (z + 1).is_close(mp.mpc(2, 2))
    assert (1 - z).is_close(mp.mpc(0, -2))
    assert (z / z).is_close(1)
    assert z.conjugate().is_close(mp.mpc(1, -2))


def test_precision_ladder():
    """测试: 精度按翻倍阶梯直到上限"""
    assert list(PrecisionConfig(192, 1536).ladder()) == [192, 384, 768, 1536]
    assert list(PrecisionConfig(100, 150).ladder()) == [100]
