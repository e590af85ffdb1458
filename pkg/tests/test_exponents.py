import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpseries.errors import (
    DimensionMismatch,
    NonPositiveSupportElement,
    SingularOrderMatrix,
)
from gpseries.exponents import (
    Box,
    Cone,
    TermOrder,
    box_intersect,
    certify_cone_below,
    lex_order,
    make_cone,
    parse_order,
    power_exhaustion_bound,
    validate_order,
)

G1 = parse_order("1,0;0,1")  # X-major
G2 = parse_order("0,1;1,0")  # Y-major


def test_validate_identity_is_lex():
    o = validate_order([[1, 0], [0, 1]])
    assert o.compare((1, 0), (0, 1)) == 1
    assert o.compare((0, 3), (0, 2)) == 1


def test_validate_swapped_rows_is_second_major():
    o = validate_order([[0, 1], [1, 0]])
    assert o.compare((1, 0), (0, 1)) == -1


def test_singular_matrix_rejected():
    with pytest.raises(SingularOrderMatrix):
        validate_order([[1, 1], [1, 1]])


def test_compare_examples():
    assert G1.compare((1, 0), (0, 1)) == 1
    assert G1.compare((0, 0), (0, 0)) == 0
    assert G2.compare((1, 0), (0, 1)) == -1


def test_compare_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        G1.compare((1, 0, 0), (0, 1, 0))


def test_is_positive():
    assert G1.is_positive((1, -3))
    assert not G1.is_positive((0, 0))
    assert not G1.is_positive((0, -1))


square2 = st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
                   min_size=2, max_size=2)
exp2 = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


@given(square2, exp2, exp2, exp2)
def test_order_trichotomy_and_translation(m, a, b, c):
    try:
        o = validate_order(m)
    except SingularOrderMatrix:
        return
    cmp = o.compare(a, b)
    assert cmp in (-1, 0, 1)
    assert (cmp == 0) == (a == b)
    shifted = o.compare(tuple(x + y for x, y in zip(a, c)),
                        tuple(x + y for x, y in zip(b, c)))
    assert cmp == shifted


@given(square2, exp2, st.integers(1, 5), st.integers(6, 10))
def test_positive_multiples_increase(m, v, i, j):
    try:
        o = validate_order(m)
    except SingularOrderMatrix:
        return
    if not o.is_positive(v):
        return
    vi = tuple(i * x for x in v)
    vj = tuple(j * x for x in v)
    assert o.compare(vi, vj) == -1


def test_bound_single_generator():
    box = Box((-5, -5), (5, 5))
    assert power_exhaustion_bound(G1, [(1, 0)], box) == 5


def test_bound_mixed_support_vs_enumeration():
    # oracle: exhaustive search finds sums of up to 15 summands in the box
    support = [(0, 1), (1, -1)]
    box = Box((0, -5), (5, 5))
    bound = power_exhaustion_bound(G1, support, box)
    assert bound >= 15
    for t in range(bound + 1, bound + 4):
        hit = False
        for c0 in range(t + 1):
            c1 = t - c0
            s = (c1, c0 - c1)
            if box.contains(s):
                hit = True
        assert not hit


def test_bound_empty_support():
    assert power_exhaustion_bound(G1, [], Box((-5, -5), (5, 5))) == 0


def test_bound_rejects_nonpositive():
    with pytest.raises(NonPositiveSupportElement):
        power_exhaustion_bound(G1, [(0, -1)], Box((-5, -5), (5, 5)))


@settings(max_examples=60)
@given(st.lists(exp2, min_size=1, max_size=3), st.integers(1, 4))
def test_bound_sound_against_brute_force(gens, r):
    gens = [g for g in gens if G1.is_positive(g)]
    if not gens:
        return
    box = Box((-r, -r), (r, r))
    bound = power_exhaustion_bound(G1, gens, box)
    # no sum of more than `bound` elements may land in the box
    limit = bound + 3
    frontier = {(0, 0)}
    for i in range(1, limit + 1):
        frontier = {(a[0] + g[0], a[1] + g[1])
                    for a in frontier for g in gens}
        # prune far outside to keep this cheap; only below-box escape matters
        frontier = {v for v in frontier
                    if all(x <= r + 8 * len(gens) for x in
                           (G1.key(v)[0],))}
        if i > bound:
            assert not any(box.contains(v) for v in frontier)


def test_box_basics():
    b = Box((0, -1), (2, 1))
    assert b.contains((1, 0))
    assert not b.contains((3, 0))
    assert b.lattice_count() == 9
    assert b.shift((1, 1)) == Box((1, 0), (3, 2))
    assert len(list(b.points())) == 9


def test_box_intersect():
    a = Box((0, 0), (4, 4))
    b = Box((2, -1), (6, 3))
    assert box_intersect(a, b) == Box((2, 0), (4, 3))
    assert box_intersect(None, a) == a
    with pytest.raises(ValueError):
        box_intersect(a, Box((5, 5), (6, 6)))


def test_make_cone_drops_zero_and_duplicates():
    c = make_cone(G1, (0, 0), [(1, 0), (1, 0), (0, 0), (0, 1)])
    assert sorted(c.generators) == [(0, 1), (1, 0)]


def test_certify_cone_below():
    # all cone points below (2,0) are inside the box
    c = Cone((0, 0), ((1, 0),))
    assert certify_cone_below(G1, c, (2, 0), Box((0, 0), (5, 0)))
    # generator escapes the box while still below the bound
    c2 = Cone((0, 0), ((0, 1),))
    assert not certify_cone_below(G1, c2, (2, 0), Box((0, 0), (0, 0)))


def test_order_string_round_trip():
    assert parse_order(G2.to_string()).matrix == G2.matrix
    assert lex_order(3).to_string() == "1,0,0;0,1,0;0,0,1"
