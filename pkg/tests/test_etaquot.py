import random
from fractions import Fraction
from math import gcd

import gmpy2
import pytest

from qcong.congruence import G_ETA, H_ETA
from qcong.etaquot import (
    EtaQuotient,
    character_is_trivial,
    character_value,
    check_24_conditions,
    condition_sums,
    cusp_order,
    cusp_orders,
    divisors,
    kronecker,
    modularity_verdict,
    q_expansion,
    sturm_bound,
    weight,
)
from qcong.qproducts import cubic_partition_series, qpochhammer_inf
from qcong.series import invert, mul, power, shift

from oracles import jacobi_brute, legendre_brute

ETA = EtaQuotient(1, {1: 1})


def test_weights():
    assert weight(G_ETA) == 4
    assert weight(H_ETA) == 6
    assert weight(EtaQuotient(6)) == 0
    assert weight(EtaQuotient(2, {1: 1, 2: 2})) == Fraction(3, 2)


def test_exponent_keys_must_divide_level():
    with pytest.raises(ValueError):
        EtaQuotient(50, {3: 1})


def test_24_conditions():
    assert condition_sums(G_ETA) == (9 - 2 - 5 * 2 + 25 + 50, 50 * 9 - 25 - 10 * 2 + 2 + 1)
    assert condition_sums(G_ETA) == (72, 408)
    assert check_24_conditions(G_ETA) == (True, True)
    assert condition_sums(H_ETA)[0] == 13 - 2 - 2 * 7 + 49 + 98 == 144
    assert condition_sums(H_ETA)[1] == 98 * 13 - 49 - 14 * 2 + 2 + 1
    assert check_24_conditions(H_ETA) == (True, True)
    assert check_24_conditions(ETA) == (False, False)


def test_kronecker_degenerate():
    assert kronecker(0, 7) == 0
    assert all(kronecker(1, n) == 1 for n in range(-20, 21))


def test_kronecker_mod7():
    assert kronecker(2, 7) == 1
    assert kronecker(3, 7) == -1
    assert [kronecker(r, 7) for r in range(7)] == [legendre_brute(r, 7) for r in range(7)]


@pytest.mark.parametrize("n", [3, 5, 7, 9, 15, 21, 45, 49, 99, 105, 343])
def test_kronecker_matches_jacobi_oracle(n):
    for m in range(-60, 61):
        assert kronecker(m, n) == jacobi_brute(m, n)


def test_kronecker_full_extension():
    # independent implementation in GMP covers even and negative n
    rng = random.Random(7)
    for _ in range(3000):
        m = rng.randint(-500, 500)
        n = rng.randint(-500, 500)
        assert kronecker(m, n) == gmpy2.kronecker(m, n), (m, n)


def test_kronecker_25_trivial_on_units_mod_50():
    assert all(kronecker(25, d) == 1 for d in range(1, 5000) if gcd(d, 50) == 1)


def test_character_trivial_for_pipeline_forms():
    assert all(character_value(G_ETA, d) == 1 for d in range(1, 501) if gcd(d, 50) == 1)
    assert all(character_value(H_ETA, d) == 1 for d in range(1, 981) if gcd(d, 98) == 1)
    assert character_is_trivial(G_ETA) and character_is_trivial(H_ETA)


def test_character_at_one():
    for eq in (G_ETA, H_ETA, EtaQuotient(4, {1: 8, 4: -4}), EtaQuotient(12, {3: 2, 12: 2})):
        assert character_value(eq, 1) == 1


def test_character_rejects_half_integral_weight():
    with pytest.raises(ValueError):
        character_value(ETA, 5)


def test_character_nontrivial_example():
    eq = EtaQuotient(2, {1: 2, 2: 2})  # weight 2, s = 4: trivial
    assert character_is_trivial(eq)
    eq = EtaQuotient(2, {1: 3, 2: 1})  # weight 2, s = 2
    assert [character_value(eq, d) for d in (1, 3, 5, 7)] == [1, -1, -1, 1]
    assert not character_is_trivial(eq)


@pytest.mark.parametrize("eq", [G_ETA, H_ETA, EtaQuotient(4, {1: 8, 4: -4}),
                                EtaQuotient(30, {1: 3, 2: -1, 15: 2, 30: 4})])
def test_character_completely_multiplicative(eq):
    if weight(eq).denominator != 1:
        pytest.skip("half-integral weight")
    n = eq.level
    rng = random.Random(11)
    units = [d for d in range(1, 40 * n) if gcd(d, n) == 1]
    for _ in range(300):
        a, b = rng.choice(units), rng.choice(units)
        assert character_value(eq, a * b) == character_value(eq, a) * character_value(eq, b)


def _cusp_formula_by_hand(eq, d):
    n = eq.level
    total = Fraction(0)
    for delta, r in eq.exponents.items():
        total += Fraction(gcd(d, delta) ** 2 * r, gcd(d, n // d) * d * delta)
    return Fraction(n, 24) * total


def test_cusp_orders_g():
    assert cusp_order(G_ETA, 1) == 17 == Fraction(408, 24)
    assert cusp_order(G_ETA, 50) == 3 == Fraction(72, 24)
    rep = cusp_orders(G_ETA)
    assert set(rep.orders) == set(divisors(50))
    assert rep.all_nonnegative
    for d, v in rep.orders.items():
        assert isinstance(v, Fraction)
        assert v == _cusp_formula_by_hand(G_ETA, d)


def test_cusp_orders_h():
    rep = cusp_orders(H_ETA)
    assert rep.all_nonnegative
    s1, s2 = condition_sums(H_ETA)
    assert rep.orders[1] == Fraction(s2, 24)
    assert rep.orders[98] == Fraction(s1, 24)


def test_cusp_order_rejects_non_divisor():
    with pytest.raises(ValueError):
        cusp_order(G_ETA, 3)


def test_cusp_order_can_be_negative():
    eq = EtaQuotient(2, {1: -24, 2: 24})
    assert cusp_order(eq, 1) == -1
    assert not modularity_verdict(eq).is_modular_form


def test_verdicts():
    vg = modularity_verdict(G_ETA)
    assert vg.is_modular_form and vg.weight == 4 and vg.level == 50
    vh = modularity_verdict(H_ETA)
    assert vh.is_modular_form and vh.weight == 6 and vh.level == 98
    assert vh.character_is_trivial
    assert not modularity_verdict(ETA).is_modular_form


def test_delta_function_is_modular():
    # eta(z)^24 is the weight-12 cusp form of level 1
    v = modularity_verdict(EtaQuotient(1, {1: 24}))
    assert v.is_modular_form and v.weight == 12
    assert v.cusp_report.orders[1] == 1


def test_sturm_bounds():
    b = sturm_bound(4, 50)
    assert b.exact == 30 and b.floor == 30 and b.endpoint == 31
    b = sturm_bound(6, 4802)
    assert b.exact == 4116 and b.endpoint == 4117
    assert sturm_bound(4, 50).exact < sturm_bound(6, 4802).exact
    for k in range(1, 40):
        assert sturm_bound(k, 1).floor == k // 12
    assert sturm_bound(2, 11).exact == Fraction(2 * 11 * 12, 12 * 11)


def test_q_expansion_g_leading_term():
    g = q_expansion(G_ETA, 200)
    assert g.leading_exponent() == 3 and g[3] == 1


def test_q_expansion_h_leading_term():
    h = q_expansion(H_ETA, 200)
    assert h.leading_exponent() == 6 and h[6] == 1


def test_q_expansion_eta24():
    e = q_expansion(EtaQuotient(24, {24: 1}), 100)
    assert e == shift(qpochhammer_inf(24, 100), 1)


def test_q_expansion_rejects_fractional_offset():
    with pytest.raises(ValueError, match="24"):
        q_expansion(ETA, 10)


def test_q_expansion_matches_product_construction():
    n = 600
    qp = lambda d: qpochhammer_inf(d, n)
    # (q^25;q^25)(q^50;q^50) ((q;q)^5/(q^5;q^5))^2 * sum a(n) q^(n+3)
    direct = mul(mul(qp(25), qp(50)), power(mul(power(qp(1), 5), invert(qp(5))), 2))
    direct = mul(direct, shift(cubic_partition_series(n), 3))
    assert q_expansion(G_ETA, n) == direct
    direct_h = mul(mul(qp(49), qp(98)), power(mul(power(qp(1), 7), invert(qp(7))), 2))
    direct_h = mul(direct_h, shift(cubic_partition_series(n), 6))
    assert q_expansion(H_ETA, n) == direct_h


def test_q_expansion_modular_matches_exact():
    exact = q_expansion(G_ETA, 400)
    assert q_expansion(G_ETA, 400, modulus=5).coeffs == tuple(c % 5 for c in exact)


def test_json_roundtrip():
    eq = EtaQuotient.from_json('{"level": 50, "exponents": {"1": 9, "2": -1, "5": -2, "25": 1, "50": 1}}')
    assert eq == G_ETA
    assert EtaQuotient.from_json(__import__("json").dumps(eq.to_dict())) == eq
