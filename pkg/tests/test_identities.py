import itertools
import math
import random
from fractions import Fraction

import pytest

from gpseries import Box
from gpseries.errors import BadDimension
from gpseries.identities import (
    DysonInstance,
    cramer_identity_check,
    dyson_lhs,
    dyson_rhs,
    dyson_verify,
    egorychev_parameters,
    egorychev_wedge_check,
    euler_identity_check,
    lagrange_interpolation_check,
    wilson_parameters,
    wilson_wedge_check,
)
from gpseries.residues import is_regular

# frozen oracle: constant terms of prod_{i != j} (1 - X_i/X_j)^{a_i},
# brute-forced by expanding the rational function symbolically
BRUTE_CT = {
    (1, 1): 2,
    (2, 1): 3,
    (1, 1, 1): 6,
    (2, 1, 1): 12,
    (2, 2, 2): 90,
}


def test_instance_validation():
    with pytest.raises(BadDimension):
        DysonInstance((3,))
    with pytest.raises(BadDimension):
        DysonInstance((1, -1))
    assert DysonInstance([2, 0, 1]).n == 3


def test_rhs_multinomial():
    assert dyson_rhs(DysonInstance((2, 1))) == 3
    assert dyson_rhs(DysonInstance((2, 2, 2))) == Fraction(
        math.factorial(6), 8)


def test_direct_against_brute_force():
    for a, ct in BRUTE_CT.items():
        assert dyson_lhs(DysonInstance(a)) == ct


def test_direct_matches_multinomial():
    for a in [(0, 0), (3, 2), (1, 2, 3), (2, 2, 1, 1)]:
        lhs, rhs, ok = dyson_verify(DysonInstance(a), "direct")
        assert ok, (a, lhs, rhs)


def test_direct_symmetric_in_exponents():
    rng = random.Random(11)
    for _ in range(6):
        n = rng.choice((2, 3))
        a = tuple(rng.randint(0, 3) for _ in range(n))
        base = dyson_lhs(DysonInstance(a))
        for perm in itertools.permutations(a):
            assert dyson_lhs(DysonInstance(perm)) == base


def test_methods_agree():
    for a in [(1, 1), (2, 1), (3, 2), (1, 1, 1), (2, 1, 1), (2, 2, 2)]:
        inst = DysonInstance(a)
        direct = dyson_verify(inst, "direct")
        wilson = dyson_verify(inst, "wilson")
        egor = dyson_verify(inst, "egorychev")
        assert direct[0] == wilson[0] == egor[0] == direct[1]
        assert direct[2] and wilson[2] and egor[2]


def test_unknown_method():
    with pytest.raises(ValueError):
        dyson_verify(DysonInstance((1, 1)), "guess")


def test_wilson_determinants():
    for n in range(2, 7):
        p = wilson_parameters(n)
        assert p.det == (-1) ** (n - 1) * math.factorial(n - 1)
    assert is_regular(wilson_parameters(2))
    assert not is_regular(wilson_parameters(3))


def test_egorychev_determinants():
    for n in range(2, 7):
        p = egorychev_parameters(n)
        assert p.det == math.factorial(n) * (n - 1) // 2


def test_lagrange_interpolation():
    assert lagrange_interpolation_check(2, Box((-4, -4), (4, 4)))
    assert lagrange_interpolation_check(3, Box((-3,) * 3, (3,) * 3))


def test_wilson_wedge_identity():
    for n in range(2, 5):
        assert wilson_wedge_check(n)


def test_egorychev_wedge_identity():
    for n in range(2, 5):
        assert egorychev_wedge_check(n)


def test_cramer_identities():
    for n in range(2, 6):
        assert cramer_identity_check(n)


def test_euler_identity():
    for n in range(2, 6):
        assert euler_identity_check(n)
