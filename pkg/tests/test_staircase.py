import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bbhilb.errors import NotDownwardClosed, ParseError
from bbhilb.order import canonical_pair
from bbhilb.staircase import (
    StandardSet,
    cumulative_heights,
    enumerate_standard_sets,
    height,
    heights,
    in_complement_of,
    outer_corners,
    parse_standard_set,
    validate_standard_set,
)

FIVE = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)]
PARTITIONS = [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_validate_examples():
    assert validate_standard_set([(0, 0)]).n == 1
    with pytest.raises(NotDownwardClosed) as exc:
        validate_standard_set([(0, 0), (1, 1)])
    assert (exc.value.element, exc.value.missing) == ((1, 1), (1, 0))
    assert validate_standard_set(FIVE).n == 5


def test_outer_corner_examples():
    assert outer_corners(StandardSet([(0, 0)])) == [(0, 1), (1, 0)]
    assert outer_corners(StandardSet(FIVE)) == [(0, 2), (2, 1), (3, 0)]
    assert outer_corners(StandardSet([(0,), (1,)])) == [(2,)]


def test_height_examples():
    D = StandardSet(FIVE)
    h = heights(D, 0)
    assert h == {(0, 0): 3, (0, 1): 2}
    assert height(D, 0, (0, 2)) == 0
    assert sum(h.values()) == 5
    line = StandardSet([(k,) for k in range(4)])
    assert heights(line, 0) == {(0,): 4}


def test_cumulative_heights():
    D = StandardSet(FIVE)
    plus, _ = canonical_pair((1, -1))
    # heads x1^h(m) m are x1^3 (weight 3) and x1^2*x2 (weight 1)
    H = cumulative_heights(D, 0, [1], plus.key)
    assert H == {(0, 1): 2, (0, 0): 5}


def test_enumeration_examples():
    assert [s.elements for s in enumerate_standard_sets(1, 3)] == [((0,), (1,), (2,))]
    two = {s.elements for s in enumerate_standard_sets(2, 2)}
    assert two == {((0, 0), (1, 0)), ((0, 0), (0, 1))}
    assert len(list(enumerate_standard_sets(2, 4))) == 5


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_counts_partitions(n):
    sets = list(enumerate_standard_sets(2, n))
    assert len(sets) == PARTITIONS[n]
    assert len(set(sets)) == len(sets)


def test_enumeration_counts_plane_partitions():
    # plane partitions of n
    assert [len(list(enumerate_standard_sets(3, n))) for n in range(1, 7)] == [1, 3, 6, 13, 24, 48]


def test_enumeration_is_exhaustive_by_brute_force():
    d, n = 3, 4
    found = set()
    cells = list(itertools.product(range(n), repeat=d))
    for combo in itertools.combinations(cells, n):
        try:
            found.add(validate_standard_set(combo, d))
        except NotDownwardClosed:
            pass
    assert found == set(enumerate_standard_sets(d, n))


def test_parse_and_print():
    D = parse_standard_set("{(0,0),(0,1)}")
    assert str(D) == "{(0,0),(0,1)}"
    assert parse_standard_set("[[0,1],[0,0]]") == D
    assert parse_standard_set("{(0),(1)}") == StandardSet([(0,), (1,)])
    with pytest.raises(ParseError):
        parse_standard_set("{(0,0),(1,")
    with pytest.raises(NotDownwardClosed):
        parse_standard_set("{(1,0)}")


@settings(max_examples=60)
@given(st.integers(1, 3), st.integers(1, 6), st.data())
def test_corners_and_heights_properties(d, n, data):
    sets = list(enumerate_standard_sets(d, n))
    D = data.draw(st.sampled_from(sets))
    corners = outer_corners(D)
    # antichain
    for a, b in itertools.permutations(corners, 2):
        assert not all(x <= y for x, y in zip(a, b))
    # corners regenerate the complement on the box [0, n+1]^d
    for e in itertools.product(range(n + 2), repeat=d):
        assert in_complement_of(corners, e) == (e not in D)
    for i in range(d):
        assert sum(heights(D, i).values()) == n
    assert all(v < n for e in D for v in e)
