"""
predictions 测试
D = -31 与 (-7, -175) 的预测赋值、不同路线之间的一致性
"""

from fractions import Fraction

import pytest

from conftest import DISC_31, HALF, RES_7_175
from weberyz.arith import kronecker
from weberyz.errors import DomainError
from weberyz.predictions import (
    PredictionContext,
    kappa_candidates,
    kappa_ell,
    ord_disc_main,
    ord_disc_pairs,
    ord_disc_prime,
    ord_resultant,
    ord_resultant_main,
    pair_witnesses,
    predicted_disc_class,
    predicted_factorization,
    w_weight,
)
from weberyz.predictions.formulas import (
    _resultant_conductor,
    _resultant_coprime,
    _resultant_three,
)
from weberyz.quadorders.forms import class_group

PER_CLASS_31 = {3: 6, 11: 1, 23: 1, 31: HALF}


@pytest.fixture(scope="module")
def ctx31():
    return PredictionContext.fundamental(-31, 1)


@pytest.fixture(scope="module")
def ctx_res():
    return PredictionContext(-7, -175, 1)


# ---------------------------------------------------------------------------
# 上下文
# ---------------------------------------------------------------------------

def test_context_derived_values(ctx31, ctx_res):
    """测试 1: 派生量"""
    assert ctx31.is_discriminant_case
    assert (ctx31.D0, ctx31.t, ctx31.D) == (-31, 1, -31)
    assert ctx31.s_prime == 1

    assert not ctx_res.is_discriminant_case
    assert (ctx_res.D0, ctx_res.t1, ctx_res.t2, ctx_res.t) == (-7, 1, 5, 5)
    assert ctx_res.D == -175
    assert ctx_res.D0t == 1
    assert ctx_res.D0_prime == -7
    assert ctx_res.candidate_primes() == [3, 5, 7, 13, 17, 19, 31]

    # (-31 | 3) = -1，s′ = gcd(s, 9)
    assert PredictionContext.fundamental(-31, 24).s_prime == 3
    assert PredictionContext.fundamental(-31, 24).s_ell(2) == 8


@pytest.mark.parametrize("D1, D2, s", [
    (-279, -279, 1),   # 3 | D
    (-15, -15, 1),     # D ≢ 1 mod 8
    (-31, -279, 1),
    (-7, -23, 1),      # 乘积不是平方数
    (-175, -175, 1),   # 非基本判别式
    (-31, -31, 5),     # 5 ∤ 24
    (-31, -31, 0),
])
def test_context_rejects(D1, D2, s):
    """测试 2: 不可容许的输入"""
    with pytest.raises(DomainError):
        PredictionContext(D1, D2, s)


def test_kappa_choice():
    """测试 3: κ_ℓ 取绝对值最小者"""
    for ell in (3, 5, 7, 19):
        kappa = kappa_ell(-7, ell)
        assert kappa < 0
        # 对 p = 7：(κ|7) = 1 ⇔ 7 ≠ ℓ
        assert (kronecker(kappa, 7) == 1) == (ell != 7)
    # (-1|7) = -1，(-3|7) = 1
    assert kappa_ell(-7, 7) == -1
    assert kappa_ell(-7, 3) == -3
    first_three = []
    for kappa in kappa_candidates(-7, 5):
        first_three.append(kappa)
        if len(first_three) == 3:
            break
    assert first_three[0] == kappa_ell(-7, 5)
    assert first_three == sorted(first_three, reverse=True)


def test_w_weight():
    """测试 4: w(ℓ, n)"""
    # S(-31, -1) = {31}
    assert w_weight(-31, 31, 1) == 1
    assert w_weight(-31, 3, 1) == 0
    with pytest.raises(DomainError):
        w_weight(-31, 3, 0)


# ---------------------------------------------------------------------------
# 判别式
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("route", ["main", "pairs"])
def test_disc_31_per_class(ctx31, group31, route):
    """测试 5: D = -31 每个非平凡类的预测"""
    for A in group31.nontrivial():
        predicted = predicted_disc_class(ctx31, A, route)
        assert predicted.entries == PER_CLASS_31, (A.label, route)


def test_disc_31_total(ctx31):
    """测试 6: 对全部非平凡类求和"""
    total = predicted_factorization(ctx31)
    assert total.entries == DISC_31
    assert total.same_exponents(predicted_factorization(ctx31, route="pairs"))


def test_split_prime_is_zero(ctx31, group31):
    """测试 7: 分裂素数的赋值为 0"""
    A = group31.nontrivial()[0]
    # (-31 | 2) = 1，(-31 | 5) = 1，(-31 | 7) = 1
    for ell in (2, 5, 7):
        assert ord_disc_main(ctx31, group31.identity, A, ell) == 0
        assert ord_disc_pairs(ctx31, A, ell) == 0


@pytest.mark.parametrize("D", [-23, -31, -47, -71])
def test_prime_discriminant_unweighted_count(D):
    """测试 8: |D| 为素数时的不加权计数与加权计数一致"""
    ctx = PredictionContext.fundamental(D, 1)
    for A in class_group(D).nontrivial():
        for ell in ctx.candidate_primes():
            assert ord_disc_prime(ctx, A, ell) == ord_disc_pairs(ctx, A, ell), (D, A.label, ell)


def test_ramified_prime_gives_half(ctx31, group31):
    """测试 9: ℓ = |D| 时恰为 1/2"""
    for A in group31.nontrivial():
        assert ord_disc_prime(ctx31, A, 31) == HALF
        assert ord_disc_main(ctx31, group31.identity, A, 31) == HALF


def test_pair_witnesses_content(ctx31, group31):
    """测试 10: 理想对满足 ℓ^j·Nm(𝔟₁) + Nm(𝔟₂) = |D|"""
    A = group31.nontrivial()[0]
    witnesses = pair_witnesses(ctx31, A, 11)
    assert witnesses
    for w in witnesses:
        assert 11 ** w.j * w.b1.norm + w.b2.norm == 31
        assert w.b2.quad_class() == A.reduced()
    assert sum(w.weight for w in witnesses if w.content_check) == 1


def test_representative_independence(ctx31, group31):
    """测试 11: 换一组小 CM 代表，一般公式的值不变"""
    principal = group31.identity
    for A in group31.nontrivial():
        for ell in (3, 11, 23, 31):
            assert (ord_disc_main(ctx31, principal, A, ell, skip=1)
                    == ord_disc_main(ctx31, principal, A, ell))


@pytest.mark.parametrize("s", [2, 3, 8, 24])
def test_disc_routes_agree_for_s(s):
    """测试 12: 不同 s 下两条路线一致"""
    ctx = PredictionContext.fundamental(-23, s)
    for A in class_group(-23).nontrivial():
        main = predicted_factorization(ctx, A, route="main")
        pairs = predicted_factorization(ctx, A, route="pairs")
        assert main.same_exponents(pairs), (s, A.label)


def test_disc_argument_errors(ctx31, group31):
    """测试 13: 参数检查"""
    A = group31.nontrivial()[0]
    with pytest.raises(DomainError):
        ord_disc_main(ctx31, A, A, 3)
    with pytest.raises(DomainError):
        ord_disc_pairs(ctx31, group31.identity, 3)
    with pytest.raises(DomainError):
        ord_disc_pairs(ctx31, A, 9)
    with pytest.raises(DomainError):
        ord_disc_prime(PredictionContext.fundamental(-119, 1),
                       class_group(-119).nontrivial()[0], 3)
    with pytest.raises(DomainError):
        predicted_factorization(ctx31, route="explicit")


# ---------------------------------------------------------------------------
# 结式
# ---------------------------------------------------------------------------

def test_resultant_explicit(ctx_res):
    """测试 14: (-7, -175) 的三个显式公式"""
    predicted = predicted_factorization(ctx_res)
    assert predicted.entries == RES_7_175
    assert ord_resultant(ctx_res, 3) == 14
    assert ord_resultant(ctx_res, 11) == 0


@pytest.mark.parametrize("ell", [5, 19])
def test_resultant_main_route(ctx_res, ell):
    """测试 15: 按纤维求和的一般公式与显式公式一致"""
    assert ord_resultant_main(ctx_res, ell) == ord_resultant(ctx_res, ell) == RES_7_175[ell]


@pytest.mark.parametrize("ell", [5, 7, 19])
def test_kappa_independence(ctx_res, ell, monkeypatch):
    """测试 16: 换用其它 κ_ℓ，显式公式的值不变"""
    expected = ord_resultant(ctx_res, ell)
    for choice in (1, 2):
        monkeypatch.setattr(PredictionContext, "kappa",
                            lambda self, l, c=0, k=choice: kappa_ell(self.D0, l, k))
        assert ord_resultant(ctx_res, ell) == expected, (ell, choice)


def test_resultant_rejects():
    """测试 17: 结式公式的前提"""
    with pytest.raises(DomainError):
        ord_resultant(PredictionContext.fundamental(-31, 1), 3)
    with pytest.raises(DomainError):
        ord_resultant_main(PredictionContext.fundamental(-31, 1), 3)
    # (-7 | 11) = 1：t = 11 分裂
    with pytest.raises(DomainError):
        ord_resultant(PredictionContext(-7, -847, 1), 3)
    with pytest.raises(DomainError):
        predicted_factorization(PredictionContext(-7, -175, 1), route="pairs")


def test_resultant_exponents_integral(ctx_res):
    """测试 18: 结式的赋值都是整数"""
    predicted = predicted_factorization(ctx_res)
    assert predicted.is_integral()
    assert all(isinstance(e, Fraction) for e in predicted.entries.values())


def test_resultant_case_helpers(ctx_res):
    """测试 19: ℓ ∤ 3t、ℓ | t、ℓ = 3 三种情形各自的公式"""
    assert _resultant_coprime(ctx_res, 19) == RES_7_175[19]
    assert _resultant_coprime(ctx_res, 31) == RES_7_175[31]
    assert _resultant_coprime(ctx_res, 13) == 0
    assert _resultant_conductor(ctx_res, 5) == RES_7_175[5]
    assert _resultant_three(ctx_res) == RES_7_175[3]
