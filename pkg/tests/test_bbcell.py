import random

import pytest
from hypothesis import given, settings, strategies as st

from bbhilb.bbcell import (
    bb_membership,
    boundedness,
    delta_monic,
    division,
    flat_limit,
    in_coeff_ideal_dual,
    in_coeff_ideals,
    initial_staircase,
    monic_pattern,
    oracle_bb,
    residue_ideal,
    verify_pure_power,
    xn_membership_check,
)
from bbhilb.coeff import DualRing
from bbhilb.corpus import random_sample
from bbhilb.errors import BoundNotVerified, IterationLimit, MixedRings, NotBounded
from bbhilb.gb import Ideal, normal_form
from bbhilb.order import QHOrder, SignedOrder, canonical_pair
from bbhilb.poly import Polynomial
from bbhilb.staircase import box, enumerate_standard_sets

from helpers import P, S, ideal

seeds = st.integers(0, 10**6)
EX1_DELTA = S("{(0,0),(0,1)}")


@pytest.fixture
def ex1():
    return ideal("x1 + x2", "x2^2", d=2)


def test_boundedness_ex1(ex1):
    plus, _ = canonical_pair((1, -1))
    cert = boundedness(ex1, plus)
    assert cert.exponents == (2, 2)
    assert cert.witnesses[1] == P("x2^2", 2)
    assert cert.pure_powers() == {1: P("x2^2", 2)}


def test_remark_is_not_bounded():
    plus, _ = canonical_pair((-1,))
    with pytest.raises(NotBounded) as info:
        boundedness(ideal("x1^2 + x1^3", d=1), plus)
    assert "x1" in str(info.value)


def test_monomial_ideals_are_bounded_for_every_order():
    D = S("{(0,0),(1,0),(0,1),(0,2)}")
    I = Ideal.monomial(D)
    for w in [(1, 1), (-1, 2), (-3, -1), (0, 1), (0, -2)]:
        for o in canonical_pair(w):
            boundedness(I, o)
            res = initial_staircase(I, o)
            assert res.staircase == D
            assert all(len(g) == 1 for g in res.reduced_basis)


def test_initial_staircase_ex1(ex1):
    plus, minus = canonical_pair((1, -1))
    res = initial_staircase(ex1, plus)
    assert res.staircase == EX1_DELTA
    assert res.corners == [(1, 0), (0, 2)]
    assert res.reduced_basis == [P("x1 + x2", 2), P("x2^2", 2)]
    assert initial_staircase(ex1, minus).staircase == EX1_DELTA
    # cached on the ideal
    assert initial_staircase(ex1, plus) is res


def test_delta_monic_ex1(ex1):
    plus, _ = canonical_pair((1, -1))
    r = delta_monic(ex1, plus, EX1_DELTA)
    assert r and r.diagnosis == ""


def test_delta_monic_remark():
    plus, _ = canonical_pair((-1,))
    r = delta_monic(ideal("x1^2 + x1^3", d=1), plus, S("{(0),(1)}"))
    assert not r
    assert [f.clause for f in r.failures] == ["rank", "bounded"]
    assert r.diagnosis == "quotient rank 3 ≠ 2; not bounded"


def test_delta_monic_wrong_staircase():
    I = Ideal.monomial(S("{(0,0),(1,0)}"))
    r = delta_monic(I, canonical_pair((1, 1))[0], S("{(0,0),(0,1)}"))
    assert not r and [f.clause for f in r.failures] == ["staircase"]
    assert r.diagnosis.startswith("initial staircase")


def test_division_examples(ex1):
    res = initial_staircase(ex1, canonical_pair((1, -1))[0])
    d = division(P("x1", 2), res)
    assert d.quotients == [P("1", 2), P("0", 2)]
    assert d.remainder_delta == P("-x2", 2)
    assert d.remainder_rest.is_zero()
    d = division(P("x2", 2), res)
    assert all(q.is_zero() for q in d.quotients) and d.remainder_delta == P("x2", 2)
    assert division(P("x1 + x2", 2), res).remainder_delta.is_zero()


def test_division_iteration_limit(ex1):
    res = initial_staircase(ex1, canonical_pair((1, -1))[0])
    with pytest.raises(IterationLimit):
        division(P("x1^5*x2^0 + x1^4", 2), res, max_iter=1)


def test_division_rejects_foreign_delta(ex1):
    res = initial_staircase(ex1, canonical_pair((1, -1))[0])
    with pytest.raises(ValueError):
        division(P("x1", 2), res, delta=S("{(0,0),(1,0)}"))


def test_xn_membership_ex1(ex1):
    plus, _ = canonical_pair((1, -1))
    assert xn_membership_check(ex1, plus, EX1_DELTA) == {1: True}


def test_bb_examples(ex1):
    r = bb_membership(ex1, (1, -1), EX1_DELTA)
    assert r.holds and oracle_bb(ex1, (1, -1), EX1_DELTA)
    r = bb_membership(ideal("x1^2 + x1^3", d=1), (-1,), S("{(0),(1)}"))
    assert not r.holds
    assert r.diagnosis == "quotient rank 3 ≠ 2; not bounded"


def test_bb_failure_in_one_order_is_tagged():
    # x2 has weight 0: negative only in the minus order, where x2 - 1 is not nilpotent
    I = ideal("x1", "x2 - 1", d=2)
    r = bb_membership(I, (1, 0), S("{(0,0)}"))
    assert not r.holds
    assert r.plus.holds and not r.minus.holds
    assert r.diagnosis == "not bounded (minus order)"
    assert not oracle_bb(I, (1, 0), S("{(0,0)}"))


def test_flat_limit_ex1(ex1):
    lim = flat_limit(ex1, (1, -1), cross_check=True)
    assert set(lim.reduced_gb()) == {P("x1", 2), P("x2^2", 2)}
    assert lim.staircase == EX1_DELTA


def test_flat_limit_homogeneous_ideal_is_itself():
    I = ideal("x1^2 - 3*x2", "x2^2", "x1*x2", d=2)
    lim = flat_limit(I, (1, 2), cross_check=True)
    assert lim.reduced_gb() == I.artifacts.global_gb
    assert lim.staircase is None  # not a monomial ideal


def test_flat_limit_unbounded():
    with pytest.raises(NotBounded):
        flat_limit(ideal("x1 - 1", d=1), (-1,))


# ---------------------------------------------------------- dual numbers


def test_dual_probe():
    R = DualRing(2)
    I = ideal("x1 - eps", "x1^2", d=1, ring=R)
    o = canonical_pair((-1,))[0]
    assert str(in_coeff_ideal_dual(I, (0,), o, (2,))) == "<eps>"
    assert in_coeff_ideal_dual(I, (2,), o, (2,)).is_unit
    # eps*x = x*(x - eps) - x^2 lies in I, while x itself does not
    assert str(in_coeff_ideal_dual(I, (1,), o, (2,))) == "<eps>"
    assert verify_pure_power(I, 0, 2)
    desc = in_coeff_ideals(I, o, (2,))
    assert not monic_pattern(desc, S("{(0)}"))


def test_bound_not_verified():
    R = DualRing(2)
    I = ideal("x1 - 1", d=1, ring=R)
    with pytest.raises(BoundNotVerified):
        in_coeff_ideals(I, canonical_pair((-1,))[0], (3,))


def test_residue_needs_dual_ring(ex1):
    with pytest.raises(MixedRings):
        residue_ideal(ex1)


def _translated_monomial(rng, D, N):
    """I^D moved by x_i -> x_i + c_i eps, a flat deformation over Q[eps]/eps^N.

    Every proper divisor of a corner lies in D, so each generator is its
    corner plus an eps-tail supported in D.
    """
    from bbhilb.staircase import outer_corners

    R = DualRing(N)
    d = D.d
    shifts = [Polynomial.variable(i, d, R) + R.eps(1) * rng.randint(-2, 2) for i in range(d)]
    gens = []
    for c in outer_corners(D):
        g = Polynomial.constant(R.one(), d, R)
        for i, k in enumerate(c):
            for _ in range(k):
                g = g * shifts[i]
        gens.append(g)
    return Ideal(gens, d, R)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_dual_descriptors_on_deformed_monomial_ideals(seed):
    rng = random.Random(seed)
    d = rng.choice((1, 2))
    N = rng.choice((2, 3))
    D = rng.choice(list(enumerate_standard_sets(d, rng.randint(1, 3))))
    o = canonical_pair(tuple(rng.choice((1, 2)) for _ in range(d)))[0]
    I = _translated_monomial(rng, D, N)
    bounds = tuple(D.n + N - 1 for _ in range(d))
    desc = in_coeff_ideals(I, o, bounds)
    assert monic_pattern(desc, D)
    # all descriptors are zero or unit, so they survive eps -> 0
    res = in_coeff_ideals(residue_ideal(I), o, bounds)
    assert {m: (c.is_zero, c.is_unit) for m, c in desc.items()} == {
        m: (c.is_zero, c.is_unit) for m, c in res.items()
    }


# ------------------------------------------------------------ properties


def _same_class_tiebreak(rng, order):
    """A random total order with the same weight and the same variable signs."""
    d = order.d
    pol = rng.choice((1, -1))
    perm = list(range(d))
    rng.shuffle(perm)
    target = order.variable_polarity()
    signs = tuple(target[i] * pol if order.weight[i] == 0 else rng.choice((1, -1)) for i in range(d))
    return QHOrder(order.weight, SignedOrder(signs, tuple(perm)), pol)


def _sample(seed, max_n=5):
    rng = random.Random(seed)
    return rng, random_sample(rng, rng.choice((1, 2, 3)), max_n)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_two_routes_agree(seed):
    rng, s = _sample(seed)
    plus, _ = canonical_pair(s.weight)
    try:
        D = initial_staircase(s.ideal, plus).staircase
    except NotBounded:
        D = next(iter(enumerate_standard_sets(s.ideal.d, s.n)))
    assert bb_membership(s.ideal, s.weight, D).holds == oracle_bb(s.ideal, s.weight, D)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_division_contract(seed):
    rng, s = _sample(seed)
    plus, _ = canonical_pair(s.weight)
    try:
        res = initial_staircase(s.ideal, plus)
    except NotBounded:
        return
    D = res.staircase
    art = s.ideal.artifacts
    alts = []
    for _ in range(3):
        o = _same_class_tiebreak(rng, plus)
        if delta_monic(s.ideal, o, D):
            alts.append(initial_staircase(s.ideal, o))
    for _ in range(5):
        f = Polynomial(
            {tuple(rng.randint(0, 3) for _ in range(s.ideal.d)): rng.randint(-3, 3) for _ in range(4)},
            s.ideal.d,
        )
        if rng.random() < 0.3:
            f = f * s.ideal.generators[0]
        dv = division(f, res)
        assert dv.reassemble() == f
        assert all(e in D for e in dv.remainder_delta.support())
        top = min(plus.f(e) for e in D)
        assert all(plus.f(e) < top for e in dv.remainder_rest.support())
        assert dv.remainder_delta.is_zero() == (not any(normal_form(f, art)))
        for alt in alts:
            assert division(f, alt).remainder_delta == dv.remainder_delta


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_order_stability(seed):
    rng, s = _sample(seed)
    plus, _ = canonical_pair(s.weight)
    try:
        res = initial_staircase(s.ideal, plus)
    except NotBounded:
        return
    E = list(box(res.box_bounds))
    for _ in range(3):
        o = _same_class_tiebreak(rng, plus)
        if o.sorted(E) == plus.sorted(E):
            assert initial_staircase(s.ideal, o).staircase == res.staircase


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_monic_implies_bounded_and_xn(seed):
    rng, s = _sample(seed)
    w = tuple(v or 1 for v in s.weight)
    for o in canonical_pair(w):
        try:
            D = initial_staircase(s.ideal, o).staircase
        except NotBounded:
            continue
        r = delta_monic(s.ideal, o, D)
        assert r.holds
        boundedness(s.ideal, o)
        assert all(xn_membership_check(s.ideal, o, D).values())


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_flat_limit_of_members(seed):
    rng, s = _sample(seed)
    plus, _ = canonical_pair(s.weight)
    try:
        D = initial_staircase(s.ideal, plus).staircase
    except NotBounded:
        return
    lim = flat_limit(s.ideal, s.weight, cross_check=True)
    assert lim.ideal.quotient_dimension() == s.n
    if bb_membership(s.ideal, s.weight, D):
        for c in initial_staircase(Ideal.monomial(D), plus).corners:
            assert lim.ideal.contains(Polynomial.monomial(c))
