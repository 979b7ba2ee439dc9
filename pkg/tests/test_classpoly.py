"""
classpoly 测试
类多项式取整、判别式/结式、逐类 disc 的范数与 SQLite 缓存
"""

import mpmath as mp
import pytest

from conftest import DISC_31, DISC_31_VALUE, POLY_31, RES_7_175
from weberyz.arith import factorize
from weberyz.classpoly.cache import PolynomialCache
from weberyz.classpoly.polynomial import (
    IntPolynomial,
    RoundingReport,
    check_unit,
    disc_class_norms,
    disc_class_numeric,
    discriminant_via_resultant,
    max_prime_factor,
    minimal_polynomial,
    poly_discriminant,
    resultant,
)
from weberyz.errors import DomainError, PrecisionError
from weberyz.quadorders.forms import class_group
from weberyz.webereval.eta import PrecisionConfig


def test_minimal_polynomial_minus_31():
    """测试: D = −31, s = 1 的类多项式"""
    poly, report = minimal_polynomial(-31, 1)
    assert poly == IntPolynomial(POLY_31)
    assert str(poly) == "X^3 - 165X^2 + 9642X - 1"
    assert report.accepted
    assert report.prec_used == 192
    assert report.max_offset + report.error_bound < mp.mpf(2) ** -100


def test_discriminant_minus_31():
    """测试: disc = −3¹²·11²·23²·31"""
    poly = IntPolynomial(POLY_31)
    disc = poly_discriminant(poly)
    assert disc == DISC_31_VALUE
    assert discriminant_via_resultant(poly) == disc
    assert factorize(disc).entries == DISC_31
    assert max_prime_factor(disc) == 31
    assert check_unit(poly)


@pytest.mark.parametrize("D", [-23, -47, -71, -79])
@pytest.mark.parametrize("s", [1, 3, 8, 24])
def test_class_polynomial_structure(D, s):
    """测试: 次数 h、单位常数项、判别式素因子 ≤ |D|"""
    poly, _ = minimal_polynomial(D, s)
    assert poly.degree == len(class_group(D))
    assert poly.is_monic
    assert check_unit(poly)
    disc = poly_discriminant(poly)
    assert disc != 0
    assert max_prime_factor(disc) <= abs(D)
    assert discriminant_via_resultant(poly) == disc


def test_degree_one_polynomial():
    """测试: h = 1 时判别式约定为 1"""
    poly, _ = minimal_polynomial(-7, 24)
    assert poly.degree == 1
    assert poly_discriminant(poly) == 1
    assert discriminant_via_resultant(poly) == 1


def test_resultant_minus_7_minus_175():
    """测试: Res(P[−7], P[−175]) = −3¹⁴·5·7²·19³·31"""
    P1, _ = minimal_polynomial(-7, 1)
    P2, _ = minimal_polynomial(-175, 1)
    assert P2.degree == 6
    value = resultant(P1, P2)
    assert factorize(value).entries == RES_7_175
    assert max_prime_factor(value) <= 7 * 5


def test_inadmissible_rejected():
    """测试: 非可容许判别式"""
    with pytest.raises(DomainError):
        minimal_polynomial(-15, 1)
    with pytest.raises(DomainError):
        minimal_polynomial(-279, 1)


def test_precision_cap_raises():
    """测试: 精度上限内取整失败"""
    tight = PrecisionConfig(default_bits=32, cap_bits=48, guard_bits=0)
    with pytest.raises(PrecisionError) as info:
        minimal_polynomial(-71, 1, precision=tight)
    assert isinstance(info.value.report, RoundingReport)
    assert info.value.report.attempts == [32]


def test_rounding_report_high_rungs():
    """测试: 偏差与误差上界在高精度下不下溢"""
    tiny = RoundingReport(mp.mpf(2) ** -20000, 65536, [65536], mp.mpf(2) ** -19000)
    assert tiny.accepted
    assert tiny.to_json()["prec_used"] == "65536"
    assert RoundingReport(mp.mpf("0.2"), 192, [192], mp.mpf("0.1")).accepted is False
    assert RoundingReport(mp.mpf(0), 192, [192], mp.mpf("0.3")).accepted is False


@pytest.mark.parametrize("D", [-23, -47, -71])
@pytest.mark.parametrize("s", [1, 24])
def test_precision_stable_across_rungs(D, s):
    """测试: 相邻两级精度取整得到同一个多项式"""
    low, low_report = minimal_polynomial(D, s, prec=192)
    high, high_report = minimal_polynomial(D, s, prec=384)
    assert low == high
    assert low_report.prec_used == 192
    assert high_report.prec_used == 384
    assert high_report.error_bound < low_report.error_bound


@pytest.mark.parametrize("D", [-23, -31])
def test_disc_class_norm(D):
    """测试: h = 3 时 disc(Ã)·disc(Ã⁻¹) = |disc P|，且与复共轭配对一致"""
    group = class_group(D)
    disc = abs(poly_discriminant(minimal_polynomial(D, 1)[0]))
    for A in group.nontrivial():
        result = disc_class_numeric(D, 1, A)
        assert result.norm == disc
        assert result.atilde == A
        assert result.pairing == "inverse"
        assert result.conjugate_matches
        assert result.report.accepted
    with pytest.raises(DomainError):
        disc_class_numeric(D, 1, group.identity)


def test_disc_class_norms_order_two():
    """测试: D = −55（Cl ≅ ℤ/4），2 阶类用共轭配对，范数之积等于 disc²"""
    group = class_group(-55)
    disc = poly_discriminant(minimal_polynomial(-55, 1)[0])
    results = disc_class_norms(-55, 1)
    assert [r.atilde for r in results] == group.nontrivial()
    pairings = {r.atilde.label: r.pairing for r in results}
    assert pairings == {"[2,-1,7]": "inverse", "[2,1,7]": "inverse", "[4,3,4]": "conjugate"}
    assert all(r.conjugate_matches for r in results)
    product = 1
    for r in results:
        product *= r.norm
    assert product == disc * disc
    assert disc_class_norms(-7, 1) == []


def test_int_polynomial_json():
    """测试: 多项式 JSON 为十进制字符串"""
    poly = IntPolynomial(POLY_31)
    assert poly.to_json() == ["-1", "9642", "-165", "1"]
    assert IntPolynomial.from_json(poly.to_json()) == poly
    assert poly.derivative() == IntPolynomial((9642, -330, 3))
    with pytest.raises(DomainError):
        IntPolynomial((1, 0))


def test_polynomial_cache(tmp_path):
    """测试: 缓存写入、命中与清空"""
    cache = PolynomialCache(str(tmp_path / "cache" / "poly.db"))
    assert cache.get(-31, 1) is None
    poly, report = minimal_polynomial(-31, 1, cache=cache)
    hit = cache.get(-31, 1)
    assert hit is not None and hit[0] == poly
    assert hit[1].prec_used == report.prec_used
    assert hit[1].accepted
    again, _ = minimal_polynomial(-31, 1, cache=cache)
    assert again == poly
    stats = cache.get_stats()
    assert stats["polynomial_count"] == 1
    assert stats["discriminant_count"] == 1
    cache.clear()
    assert cache.get(-31, 1) is None
