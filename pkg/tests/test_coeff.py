from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bbhilb.coeff import (
    QQ,
    UNIT_IDEAL,
    ZERO_IDEAL,
    CoeffIdeal,
    DualNumber,
    DualRing,
    coeff_ideal,
    ring_of,
)
from bbhilb.errors import DivisionByNonUnit, MixedRings

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)


def duals(order):
    return st.lists(fractions, min_size=order, max_size=order).map(lambda c: DualNumber(c, order))


def test_rational_sum():
    assert QQ.add(Fraction(2, 3), Fraction(1, 6)) == Fraction(5, 6)


def test_dual_product_cancels():
    eps = DualNumber.eps(2)
    assert (1 + eps) * (1 - eps) == 1


def test_eps_is_not_a_unit():
    R = DualRing(2)
    assert not R.is_unit(R.eps())
    assert R.is_unit(1 + R.eps())


@pytest.mark.parametrize(
    "gens, ring, expected",
    [
        ([0, 0], QQ, ZERO_IDEAL),
        ([Fraction(3, 2)], QQ, UNIT_IDEAL),
        ([DualNumber.eps(2), DualNumber([0], 2)], DualRing(2), CoeffIdeal(1)),
    ],
)
def test_coeff_ideal_examples(gens, ring, expected):
    assert coeff_ideal(gens, ring) == expected


def test_coeff_ideal_strings():
    assert str(ZERO_IDEAL) == "0"
    assert str(UNIT_IDEAL) == "<1>"
    assert str(CoeffIdeal(1)) == "<eps>"
    assert str(CoeffIdeal(3)) == "<eps^3>"


def test_mixed_orders_rejected():
    with pytest.raises(MixedRings):
        DualNumber.eps(2) + DualNumber.eps(3)
    with pytest.raises(MixedRings):
        QQ.check(DualNumber.eps(2))
    with pytest.raises(MixedRings):
        DualRing(2).check(Fraction(1))
    with pytest.raises(MixedRings):
        coeff_ideal([Fraction(1), DualNumber.eps(2)])


def test_division_by_non_unit():
    with pytest.raises(DivisionByNonUnit):
        QQ.div(1, 0)
    with pytest.raises(DivisionByNonUnit):
        DualRing(2).div(DualNumber([1], 2), DualNumber.eps(2))
    one = DualNumber([1], 3)
    assert DualRing(3).div(one, one + DualNumber.eps(3)) == DualNumber([1, -1, 1])


def test_truncation_and_printing():
    e = DualNumber.eps(3)
    assert e * e * e == 0
    assert str(1 + e) == "1 + eps"
    assert str(2 - e * e) == "2 - eps^2"
    assert (e * e).valuation() == 2
    assert ring_of(e) == DualRing(3)
    assert ring_of(Fraction(1)) is QQ


def test_order_cap():
    with pytest.raises(ValueError):
        DualRing(17)


@given(fractions, fractions, fractions)
def test_field_axioms(a, b, c):
    assert QQ.add(QQ.add(a, b), c) == QQ.add(a, QQ.add(b, c))
    assert QQ.mul(a, b) == QQ.mul(b, a)
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    # normalization is idempotent
    q = QQ.coerce(a)
    assert QQ.coerce(q) == q and q.denominator > 0


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(duals(n), duals(n))))
def test_dual_product_is_truncated_polynomial_product(pair):
    a, b = pair
    N = a.order
    full = [Fraction(0)] * (2 * N)
    for i, x in enumerate(a.coefficients):
        for j, y in enumerate(b.coefficients):
            full[i + j] += x * y
    assert (a * b).coefficients == tuple(full[:N])


@given(duals(3))
def test_inverse_of_units(a):
    if a.is_unit():
        assert a * a.inverse() == 1
    else:
        with pytest.raises(DivisionByNonUnit):
            a.inverse()


@given(st.lists(duals(4), max_size=4), duals(4))
def test_coeff_ideal_monotone(gens, extra):
    R = DualRing(4)
    small = coeff_ideal(gens, R)
    big = coeff_ideal(gens + [extra], R)
    assert big.contains(small)
