"""
quadorders 测试
类群、理想枚举、计数函数与小 CM 代表理想
"""

from collections import Counter
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weberyz.errors import DomainError
from weberyz.quadorders.counting import (
    S_set,
    brute_rho,
    diff_set,
    r_class,
    rho,
    rho_M,
    rho_genus,
    rho_p,
)
from weberyz.quadorders.forms import (
    QuadClass,
    as_discriminant,
    class_group,
    class_number,
    class_number_formula,
)
from weberyz.quadorders.ideals import OrderIdeal, _hnf, ideals_of_norm
from weberyz.quadorders.smallcm import (
    IdealData,
    count_elements,
    make_small_cm_pair,
    project_class,
)


@pytest.mark.parametrize("D, h", [(-7, 1), (-23, 3), (-31, 3), (-47, 5), (-71, 7), (-4, 1), (-20, 2)])
def test_class_numbers(D, h):
    """测试: 已知类数"""
    assert class_number(D) == h


@pytest.mark.parametrize("D0, t", [(-7, 5), (-31, 3), (-23, 5), (-4, 3), (-7, 3)])
def test_class_number_formula_matches_enumeration(D0, t):
    """测试: h_{D₀t²} 公式与直接枚举一致"""
    assert class_number(D0 * t * t) == class_number_formula(D0, t)


def test_discriminant_decomposition():
    """测试: D = D₀t² 与可容许性"""
    d = as_discriminant(-175)
    assert (d.fundamental, d.conductor) == (-7, 5)
    assert d.yz_admissible
    assert not as_discriminant(-15).yz_admissible
    assert not as_discriminant(-279).yz_admissible
    with pytest.raises(DomainError):
        as_discriminant(-5)
    with pytest.raises(DomainError):
        as_discriminant(12)


def test_class_group_minus_31(group31):
    """测试: Cl(−31) 的元素与单位元"""
    assert [f.label for f in group31] == ["[1,1,8]", "[2,-1,4]", "[2,1,4]"]
    assert group31.identity == QuadClass.principal(-31)
    assert all(f.is_reduced for f in group31)


@pytest.mark.parametrize("D", [-31, -71, -175, -279])
def test_group_axioms(D):
    """测试: 合成满足群公理"""
    group = class_group(D)
    e = group.identity
    for x in group:
        assert x.compose(e) == x
        assert x.compose(x.inverse()) == e
        for y in group:
            assert x.compose(y) == y.compose(x)
    elems = list(group)[:6]
    for x in elems:
        for y in elems:
            for z in elems:
                assert x.compose(y).compose(z) == x.compose(y.compose(z))


@pytest.mark.parametrize("D", [-7, -23, -31, -47])
def test_rho_matches_ideal_enumeration(D):
    """测试: ρ(n) 等于直接枚举的理想个数"""
    for n in range(1, 121):
        assert rho(D, n) == brute_rho(D, n)


@pytest.mark.parametrize("D", [-23, -31, -71])
def test_r_class_sums_to_rho(D):
    """测试: Σ_A r_A(n) = ρ(n)，且 r_A = r_{A⁻¹}"""
    group = class_group(D)
    for n in range(1, 80):
        assert sum(r_class(D, A, n) for A in group) == rho(D, n)
        for A in group:
            assert r_class(D, A, n) == r_class(D, A.inverse(), n)


def test_counting_conventions():
    """测试: 0、负数与非整数处的约定"""
    assert rho(-31, 0) == Fraction(3, 2)
    assert rho(-31, -5) == 0
    assert rho(-31, Fraction(1, 2)) == 0
    assert r_class(-31, QuadClass.principal(-31), 0) == Fraction(1, 2)
    assert rho_M(-31, 0, 3) == Fraction(3, 2)
    assert rho_p(-31, 8, 2) == 4
    assert rho_p(-31, 9, 3) == 1
    assert rho_p(-31, 3, 3) == 0
    assert rho_p(-31, 31, 31) == 1


@settings(max_examples=100)
@given(st.integers(min_value=1, max_value=3000))
def test_rho_M_drops_primes(n):
    """测试: ρ = ρ^{(M)}·∏_{p|M} ρ_p"""
    assert rho_M(-31, n, 6) * rho_p(-31, n, 2) * rho_p(-31, n, 3) == rho(-31, n)


def test_rho_genus_single_genus():
    """测试: 素判别式只有一个亏格"""
    for m in range(1, 40):
        assert rho_genus(-31, m, 1) == rho(-31, m)
    assert rho_genus(-31, Fraction(1, 3), 1) == 0


def test_rho_genus_two_genera():
    """测试: 两个亏格时按亏格拆分 ρ"""
    principal, other = class_group(-20)
    for m in range(1, 60):
        assert rho_genus(-20, m, 1) == r_class(-20, principal, m)
        assert rho_genus(-20, m, 3) == r_class(-20, other, m)


def test_S_set_parity():
    """测试: n < 0 时 S(D, n) 的基数为奇数"""
    assert S_set(-31, -1) == frozenset({31})
    for n in range(1, 60):
        assert len(S_set(-31, -n)) % 2 == 1
        assert len(S_set(-7, -n)) % 2 == 1
    assert diff_set(-31, 1, 5, 3) == S_set(-31, -15)
    with pytest.raises(DomainError):
        S_set(-31, 0)


def test_ideal_products():
    """测试: 𝔭·𝔭̄ = (2)"""
    first, second = ideals_of_norm(-31, 2)
    prod = first * second
    assert prod.norm == 4
    assert prod.content == 2
    assert prod.quad_class() == QuadClass.principal(-31)
    assert {first.quad_class(), second.quad_class()} == {QuadClass(2, -1, 4), QuadClass(2, 1, 4)}
    assert first.quad_class() == second.quad_class().inverse()


def test_ideal_hnf_validation():
    """测试: 非理想的格被拒绝"""
    assert OrderIdeal.unit(-31).norm == 1
    with pytest.raises(DomainError):
        OrderIdeal(-31, 3, 1, 1)


def test_hnf_extended_gcd():
    """测试: 扩展欧几里得合并两个生成元，负坐标也得到唯一的 HNF"""
    assert _hnf([(6, 4), (3, -6)]) == (24, 15, 2)
    assert _hnf([(5, 0), (2, 3), (1, 3)]) == (1, 0, 3)
    with pytest.raises(DomainError):
        _hnf([(2, 0), (4, 0)])


@pytest.mark.parametrize("D", [-23, -31, -47])
def test_elements_of_norm_in_ideal(D):
    """测试: 𝔞 中范数 N(𝔞)·n 的元素个数为 2·r_A(n)"""
    for A in class_group(D):
        ideal = IdealData.from_form(A)
        for n in range(1, 40):
            assert count_elements(ideal, A.a * n) == 2 * r_class(D, A, n)


def test_project_class_fibers():
    """测试: Cl(D₀t²) → Cl(D₀) 各纤维等大"""
    assert set(project_class(A, -7) for A in class_group(-175)) == {QuadClass.principal(-7)}
    fibers = Counter(project_class(A, -31) for A in class_group(-31 * 25))
    assert set(fibers) == set(class_group(-31))
    assert len(set(fibers.values())) == 1
    assert project_class(QuadClass(2, 1, 4), -31) == QuadClass(2, 1, 4)


def test_make_small_cm_pair(group31):
    """测试: 代表理想满足同余条件"""
    A1, A2 = group31[0], group31[2]
    pair = make_small_cm_pair(A1, A2)
    first, second, tilde = pair
    assert first.a % 48 == 1 and second.a % 48 == 1
    assert gcd(first.a, second.a) == 1
    assert first.quad_class() == A1 and second.quad_class() == A2
    assert tilde.a == first.a * second.a
    assert tilde.quad_class() in {A1.inverse().compose(A2), A2.inverse().compose(A1)}
    other = make_small_cm_pair(A1, A2, skip=1)
    assert other.first.a != first.a or other.second.a != second.a


def test_make_small_cm_pair_with_conductor():
    """测试: 不同阶的代表 (t₂ = 5)"""
    A1 = QuadClass.principal(-7)
    for A2 in class_group(-175).nontrivial()[:2]:
        pair = make_small_cm_pair(A1, A2)
        assert pair.second.t == 5
        assert (pair.second.a - 5) % 48 == 0
        assert pair.second.quad_class() == A2


def test_small_cm_pair_rejects_inadmissible():
    """测试: 非可容许判别式被拒绝"""
    with pytest.raises(DomainError):
        make_small_cm_pair(QuadClass.principal(-15), QuadClass.principal(-15))
