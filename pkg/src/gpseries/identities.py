"""Constant-term identities checked through residues.

Implements the Dyson constant-term verifier three ways: direct Laurent
expansion, Wilson's route through the parameters (X_1, Phi_2, ..., Phi_n)
with Phi_i the inverted products prod_{j != i} (1 - X_i/X_j), and the
Egorychev route through the alternants Upsilon_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadDimension
from .exponents import Box, GroupSplit, TermOrder, exp_add, zero_exp
from .residues import ParameterSystem, check_parameters
from .series import Ambient, Series, add, invert, mul, power
from .fields import QQ


@dataclass(frozen=True)
class DysonInstance:
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if len(self.a) < 2:
            raise BadDimension("need at least two exponents")
        if any(x < 0 or not isinstance(x, int) for x in self.a):
            raise BadDimension("exponents must be nonnegative integers")

    @property
    def n(self) -> int:
        return len(self.a)


def _int_convolve(p: dict, q: dict) -> dict:
    out = {}
    for g1, c1 in p.items():
        for g2, c2 in q.items():
            g = exp_add(g1, g2)
            out[g] = out.get(g, 0) + c1 * c2
    return {g: c for g, c in out.items() if c}


def dyson_lhs(inst: DysonInstance) -> Fraction:
    """Constant term of prod_{i != j} (1 - X_i/X_j)^{a_i}, by exact
    expansion of the Laurent polynomial over plain integers."""
    n = inst.n
    prod = {zero_exp(n): 1}
    for i in range(n):
        ai = inst.a[i]
        if ai == 0:
            continue
        for j in range(n):
            if j == i:
                continue
            step = tuple((1 if c == i else -1 if c == j else 0)
                         for c in range(n))
            factor = {}
            for t in range(ai + 1):
                g = tuple(t * v for v in step)
                factor[g] = (-1) ** t * math.comb(ai, t)
            prod = _int_convolve(prod, factor)
    return Fraction(prod.get(zero_exp(n), 0))


def dyson_rhs(inst: DysonInstance) -> Fraction:
    total = math.factorial(sum(inst.a))
    for x in inst.a:
        total //= math.factorial(x)
    return Fraction(total)


# -- Wilson's parameters ------------------------------------------------

def _wilson_ambient(n: int) -> Ambient:
    # log X_1 > ... > log X_n: plain lexicographic order
    return Ambient(GroupSplit(0, n), TermOrder(
        tuple(tuple(1 if c == r else 0 for c in range(n)) for r in range(n))), QQ)


def _cross_product(ambient: Ambient, i: int) -> Series:
    """prod_{j != i} (1 - X_i / X_j) as an exact Laurent polynomial."""
    n = ambient.split.n
    out = ambient.one()
    for j in range(1, n + 1):
        if j == i:
            continue
        g = tuple((1 if c == i - 1 else -1 if c == j - 1 else 0)
                  for c in range(n))
        out = mul(out, add(ambient.one(), ambient.monomial(-1, g)))
    return out


def wilson_parameters(n: int, box: Box = None) -> ParameterSystem:
    """(X_1, Phi_2, ..., Phi_n) with Phi_i = (prod_{j != i}(1 - X_i/X_j))^-1.

    Without a box each Phi_i is truncated to just its leading term, which
    is all the multiplicity determinant needs."""
    if n < 2:
        raise BadDimension("need n >= 2")
    ambient = _wilson_ambient(n)
    members = [ambient.var(1)]
    for i in range(2, n + 1):
        p = _cross_product(ambient, i)
        if box is None:
            lead = ambient.order.min(p.coeffs)
            target = Box(tuple(-v for v in lead), tuple(-v for v in lead))
        else:
            target = box
        members.append(invert(p, target))
    return check_parameters(members)


def lagrange_interpolation_check(n: int, box: Box) -> bool:
    """sum_i Phi_i = 1 within the box."""
    ambient = _wilson_ambient(n)
    total = ambient.zero()
    for i in range(1, n + 1):
        total = add(total, invert(_cross_product(ambient, i), box))
    return total.eq_within(ambient.one())


def wilson_wedge_check(n: int) -> bool:
    """dlog X_1 ^ dlog Phi_2 ^ ... ^ dlog Phi_n = (n-1)!(-1)^(n-1) Phi_1 dlog X
    with scalar 1, verified as the equivalent exact Laurent identity
    J(X_1, P_2, ..., P_n) * P_1 * X_2...X_n = (n-1)! * P_2...P_n
    where P_i = prod_{j != i}(1 - X_i/X_j) = 1/Phi_i."""
    from .calculus import jacobian
    ambient = _wilson_ambient(n)
    ps = [_cross_product(ambient, i) for i in range(1, n + 1)]
    jac = jacobian([ambient.var(1)] + ps[1:])
    lhs = mul(jac, ps[0])
    for j in range(2, n + 1):
        lhs = mul(lhs, ambient.var(j))
    rhs = ambient.constant(math.factorial(n - 1))
    for p in ps[1:]:
        rhs = mul(rhs, p)
    return lhs.eq_within(rhs)


def _wilson_lhs(inst: DysonInstance) -> Fraction:
    """Constant term of X_2^-a_2 ... X_n^-a_n (1 - X_2 - ... - X_n)^-(a_1+1),
    the reduction of the Dyson constant term through the Wilson parameters."""
    n = inst.n
    ambient = _wilson_ambient(n)
    rest = sum(inst.a[1:])
    box = Box((0,) * n, (0,) + (rest,) * (n - 1))
    f = ambient.one()
    for j in range(2, n + 1):
        f = add(f, ambient.var(j).scale(-1))
    g = power(f, -(inst.a[0] + 1), box)
    target = (0,) + tuple(inst.a[1:])
    return g.coefficient_at(target)


# -- Egorychev's parameters ---------------------------------------------

def _egorychev_ambient(n: int) -> Ambient:
    # log X_1 < ... < log X_n: lexicographic on reversed coordinates
    return Ambient(GroupSplit(0, n), TermOrder(
        tuple(tuple(1 if c == n - 1 - r else 0 for c in range(n))
              for r in range(n))), QQ)


def _upsilon(ambient: Ambient, i: int) -> Series:
    """(-1)^(i-1) X_i^(n-1) prod_{j<k, j,k != i} (X_j - X_k)."""
    n = ambient.split.n
    out = ambient.monomial((-1) ** (i - 1), tuple(
        n - 1 if c == i - 1 else 0 for c in range(n)))
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            if i in (j, k):
                continue
            out = mul(out, add(ambient.var(j), ambient.var(k).scale(-1)))
    return out


def egorychev_parameters(n: int) -> ParameterSystem:
    if n < 2:
        raise BadDimension("need n >= 2")
    ambient = _egorychev_ambient(n)
    return check_parameters([_upsilon(ambient, i) for i in range(1, n + 1)])


def vandermonde_delta(ambient: Ambient) -> Series:
    n = ambient.split.n
    out = ambient.one()
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            out = mul(out, add(ambient.var(j), ambient.var(k).scale(-1)))
    return out


def cramer_identity_check(n: int) -> bool:
    """sum_l Upsilon_l / X_l^i = Delta for i = 0 and 0 for 1 <= i <= n-1,
    as exact Laurent polynomial identities."""
    ambient = _egorychev_ambient(n)
    ups = [_upsilon(ambient, i) for i in range(1, n + 1)]
    delta = vandermonde_delta(ambient)
    for i in range(n):
        total = ambient.zero()
        for l in range(1, n + 1):
            shift = tuple(-i if c == l - 1 else 0 for c in range(n))
            total = add(total, ups[l - 1].shift(shift))
        expect = delta if i == 0 else ambient.zero()
        if not total.eq_within(expect):
            return False
    return True


def euler_identity_check(n: int) -> bool:
    """sum_i X_i dDelta/dX_i = C(n,2) Delta exactly."""
    from .calculus import partial
    ambient = _egorychev_ambient(n)
    delta = vandermonde_delta(ambient)
    total = ambient.zero()
    for i in range(1, n + 1):
        total = add(total, mul(ambient.var(i), partial(delta, i)))
    return total.eq_within(delta.scale(math.comb(n, 2)))


def egorychev_wedge_check(n: int) -> bool:
    """X_1...X_n J(Upsilons) = (n!(n-1)/2) Upsilon_1...Upsilon_n, the exact
    polynomial form of dlog Upsilon = (n!(n-1)/2) dlog X."""
    from .calculus import jacobian
    ambient = _egorychev_ambient(n)
    ups = [_upsilon(ambient, i) for i in range(1, n + 1)]
    lhs = jacobian(ups)
    for i in range(1, n + 1):
        lhs = mul(lhs, ambient.var(i))
    rhs = ambient.constant(Fraction(math.factorial(n) * (n - 1), 2))
    for u in ups:
        rhs = mul(rhs, u)
    return lhs.eq_within(rhs)


def _egorychev_lhs(inst: DysonInstance) -> Fraction:
    """Constant term of Psi(Upsilon) = (sum Upsilon)^(sum a) / prod
    Upsilon_i^(a_i), computed with a single certified inversion."""
    n = inst.n
    ambient = _egorychev_ambient(n)
    ups = [_upsilon(ambient, i) for i in range(1, n + 1)]
    total = sum(inst.a)
    s = ambient.zero()
    for u in ups:
        s = add(s, u)
    numer = s ** total
    denom = ambient.one()
    for u, ai in zip(ups, inst.a):
        denom = mul(denom, u ** ai)
    # the answer sits at exponent 0; size the box from the numerator hull
    k = ambient.k
    if numer.coeffs:
        ehi = tuple(max(g[c] for g in numer.coeffs) for c in range(k))
        elo = tuple(min(g[c] for g in numer.coeffs) for c in range(k))
    else:
        ehi = elo = zero_exp(k)
    box = Box(tuple(-h - 1 for h in ehi), tuple(-l + 1 for l in elo))
    return mul(numer, invert(denom, box)).coefficient_at(zero_exp(k))


def dyson_verify(inst: DysonInstance, method: str = "direct"):
    """Returns (lhs, rhs, equal) for the chosen evaluation route."""
    if method == "direct":
        lhs = dyson_lhs(inst)
    elif method == "wilson":
        lhs = _wilson_lhs(inst)
    elif method == "egorychev":
        lhs = _egorychev_lhs(inst)
    else:
        raise ValueError(f"unknown method {method!r}")
    rhs = dyson_rhs(inst)
    return lhs, rhs, lhs == rhs
