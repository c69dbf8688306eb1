import itertools
import random

import pytest
from hypothesis import given, strategies as st

from bbhilb.errors import DimensionMismatch, ParseError, UndeterminedPolarity, ZeroPolynomial
from bbhilb.order import (
    Cmp,
    QHOrder,
    SignedOrder,
    canonical_pair,
    clear_weight,
    initial_form,
    parse_order,
)

from helpers import P


def test_weight_comparison():
    assert QHOrder((1, -1)).compare((1, 0), (0, 1)) is Cmp.GREATER


def test_signed_tiebreak_and_reversal():
    tb = SignedOrder((1, -1), (0, 1))
    plus = QHOrder((0, 0), tb, 1)
    minus = QHOrder((0, 0), tb, -1)
    assert plus.compare((1, 1), (2, 0)) is Cmp.LESS
    assert minus.compare((1, 1), (2, 0)) is Cmp.GREATER


def test_partial_order_ties_are_incomparable():
    o = QHOrder((1, 1))
    assert o.compare((1, 0), (0, 1)) is Cmp.INCOMPARABLE
    assert o.compare((1, 0), (1, 0)) is Cmp.EQUAL
    with pytest.raises(DimensionMismatch):
        o.compare((1,), (1, 0))


def test_variable_polarity():
    assert QHOrder((1, -1)).variable_polarity() == (1, -1)
    o = QHOrder((0, 1), SignedOrder((-1, 1), (0, 1)), 1)
    assert o.negative_variables() == [0]
    assert QHOrder((0, 1), SignedOrder((-1, 1), (0, 1)), -1).negative_variables() == []
    with pytest.raises(UndeterminedPolarity):
        QHOrder((0, 1)).variable_polarity()


def test_initial_forms():
    assert initial_form(P("x1 + x2", 2), QHOrder((1, -1))) == P("x1", 2)
    assert initial_form(P("x1^2 + x1^3", 1), QHOrder((-1,))) == P("x1^2", 1)
    plus, _ = canonical_pair((1, -1))
    assert initial_form(P("1 + x1*x2", 2), plus) == P("x1*x2", 2)
    with pytest.raises(ZeroPolynomial):
        initial_form(P("0", 2), plus)


def test_canonical_pair_examples():
    plus, minus = canonical_pair((1, -1))
    assert plus.less((0, 0), (1, 1)) and minus.less((1, 1), (0, 0))
    for o in (plus, minus):
        assert o.less((0, 0), (1, 0)) and o.less((0, 1), (0, 0))
        assert o.compare((2, 3), (2, 3)) is Cmp.EQUAL
    p1, m1 = canonical_pair((-1,))
    box = [(k,) for k in range(6)]
    assert p1.sorted(box) == m1.sorted(box)


def test_weight_clearing_and_text_form():
    assert clear_weight(["1/2", "-1/3"]) == (3, -2)
    o = parse_order("w=(1,-1);tiebreak=+1,-2;polarity=-")
    assert o.weight == (1, -1) and o.tiebreak == SignedOrder((1, -1), (0, 1)) and o.polarity == -1
    assert str(o) == "w=(1,-1);tiebreak=+1,-2;polarity=-"
    assert parse_order("w=(2,1);tiebreak=-2,+1").tiebreak.perm == (1, 0)
    assert not parse_order("w=(1,1)").is_total
    for bad in ("tiebreak=+1", "w=(1,1);tiebreak=+1", "w=(1,a)", "w=(1);polarity=0"):
        with pytest.raises(ParseError):
            parse_order(bad)


def _random_total(rng, d):
    w = tuple(rng.randint(-3, 3) for _ in range(d))
    perm = list(range(d))
    rng.shuffle(perm)
    signs = tuple(rng.choice((1, -1)) for _ in range(d))
    return QHOrder(w, SignedOrder(signs, tuple(perm)), rng.choice((1, -1)))


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_total_orders_are_strict_total(d, seed):
    o = _random_total(random.Random(seed), d)
    box = list(itertools.product(range(4), repeat=d))
    for a, b in itertools.product(box, repeat=2):
        c = o.compare(a, b)
        assert (c is Cmp.EQUAL) == (a == b)
        assert c is not Cmp.INCOMPARABLE
        rev = o.compare(b, a)
        assert {c, rev} in ({Cmp.EQUAL}, {Cmp.LESS, Cmp.GREATER})
    # transitivity via sorting consistency
    s = o.sorted(box)
    assert all(o.less(s[k], s[k + 1]) for k in range(len(s) - 1))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_plus_minus_dichotomy(w):
    plus, minus = canonical_pair(w)
    box = list(itertools.product(range(3), repeat=len(w)))
    for a, b in itertools.combinations(box, 2):
        if plus.f(a) != plus.f(b):
            assert plus.compare(a, b) is minus.compare(a, b)
        else:
            assert plus.less(a, b) == minus.less(b, a)


@given(st.integers(0, 10**6))
def test_total_initial_form_refines_partial(seed):
    rng = random.Random(seed)
    o = _random_total(rng, 2)
    terms = {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 5) for _ in range(4)}
    from bbhilb.poly import Polynomial

    f = Polynomial(terms, 2)
    t = initial_form(f, o)
    p = initial_form(f, QHOrder(o.weight))
    assert len(t) == 1
    assert o.f(t.support()[0]) == o.f(p.support()[0])
