"""Truncated exact arithmetic for generalized power series.

A ``Series`` stores a finite coefficient map together with an exactness box:
inside the box the stored coefficients (default zero) are guaranteed to be
the true coefficients of the represented element of kappa[[e^G]].  A box of
``None`` means Everywhere: the series is exactly the stored finite sum.
Truncated series additionally carry a cone certificate bounding the true
support, which is what makes inversion and substitution terminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BoxNotContained,
    BoxUnderflow,
    IncompatibleAmbient,
    LeadingTermUncertain,
    NotPositive,
    OutsideBox,
    PositiveCharacteristic,
    ZeroSeries,
)
from .exponents import (
    Box,
    Cone,
    GroupSplit,
    TermOrder,
    box_intersect,
    certify_cone_below,
    cone_hull,
    exp_add,
    exp_neg,
    exp_sub,
    make_cone,
    parse_order,
    power_exhaustion_bound,
    zero_exp,
)
from .fields import field_from_name


@dataclass(frozen=True)
class Ambient:
    """The trio (group split, term order, coefficient field)."""

    split: GroupSplit
    order: TermOrder
    field: object

    def __post_init__(self):
        if self.order.k != self.split.k:
            raise IncompatibleAmbient("order matrix size != m + n")

    @property
    def k(self) -> int:
        return self.split.k

    def zero(self) -> "Series":
        return Series(self, {}, None, None)

    def one(self) -> "Series":
        return self.monomial(1, zero_exp(self.k))

    def constant(self, a) -> "Series":
        return self.monomial(a, zero_exp(self.k))

    def monomial(self, a, g) -> "Series":
        a = self.field.coerce(a)
        coeffs = {} if a == 0 else {tuple(g): a}
        return Series(self, coeffs, None, None)

    def var(self, i: int, power: int = 1) -> "Series":
        """The i-th variable X_i (1-based) raised to an integer power."""
        u = self.split.unit(i)
        return self.monomial(1, tuple(power * v for v in u))

    def series(self, coeffs, box=None, cone=None) -> "Series":
        clean = {}
        for g, c in coeffs.items():
            c = self.field.coerce(c)
            if c == 0:
                continue
            g = tuple(g)
            if box is not None and not box.contains(g):
                raise OutsideBox(f"term {g} lies outside the box")
            clean[g] = c
        return Series(self, clean, box, cone)


@dataclass(frozen=True, eq=False)
class Series:
    """Element of kappa[[e^G]], exact within ``box``.

    ``coeffs`` maps exponents to nonzero scalars and must not be mutated.
    ``cone`` may be None for a truncated series, meaning no support
    certificate is available; such series can be read and combined linearly
    but cannot certify multiplicative results.

    ``hull`` is an optional per-coordinate bound ((lo, hi), ...) on the true
    support, with None ends meaning unbounded.  Products and sums propagate
    it; it is often tighter than the cone's hull, whose generators pick up
    spurious directions when cones from exact summands are merged.
    """

    ambient: Ambient
    coeffs: dict
    box: object  # Box | None (None = Everywhere)
    cone: object  # Cone | None
    hull: object = None  # tuple of (lo | None, hi | None) per coordinate

    @property
    def split(self) -> GroupSplit:
        return self.ambient.split

    @property
    def order(self) -> TermOrder:
        return self.ambient.order

    @property
    def field(self):
        return self.ambient.field

    @property
    def is_exact_everywhere(self) -> bool:
        return self.box is None

    def is_zero(self) -> bool:
        """True iff certainly zero (empty and exact everywhere)."""
        return not self.coeffs and self.box is None

    def sorted_terms(self):
        return [(g, self.coeffs[g]) for g in self.order.sorted(self.coeffs)]

    def coefficient_at(self, g):
        g = tuple(g)
        if self.box is not None and not self.box.contains(g):
            raise OutsideBox(f"{g} is outside the exactness box")
        return self.coeffs.get(g, self.field.zero())

    def scale(self, a) -> "Series":
        a = self.field.coerce(a)
        if a == 0:
            return Series(self.ambient, {}, self.box, self.cone, self.hull)
        return Series(self.ambient, {g: a * c for g, c in self.coeffs.items()},
                      self.box, self.cone, self.hull)

    def shift(self, v) -> "Series":
        """Exact multiplication by the monomial e^v."""
        v = tuple(v)
        coeffs = {exp_add(g, v): c for g, c in self.coeffs.items()}
        box = self.box.shift(v) if self.box is not None else None
        cone = self.cone.shift(v) if self.cone is not None else None
        hull = None
        if self.hull is not None:
            hull = tuple((None if lo is None else lo + d,
                          None if hi is None else hi + d)
                         for (lo, hi), d in zip(self.hull, v))
        return Series(self.ambient, coeffs, box, cone, hull)

    # -- operators -------------------------------------------------------
    def __add__(self, other):
        return add(self, _coerce_operand(self, other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, _coerce_operand(self, other).scale(-1))

    def __rsub__(self, other):
        return add(self.scale(-1), _coerce_operand(self, other))

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __neg__(self):
        return self.scale(-1)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need a target box; use power()")
        out = self.ambient.one()
        for _ in range(k):
            out = mul(out, self)
        return out

    def eq_within(self, other, box=None) -> bool:
        """Coefficientwise equality on the common exactness box."""
        other = _coerce_operand(self, other)
        try:
            common = box_intersect(self.box, other.box)
            if box is not None:
                common = box_intersect(common, box)
        except ValueError:
            return True  # empty comparison region
        inside = (lambda g: True) if common is None else common.contains
        for g, c in self.coeffs.items():
            if inside(g) and other.coeffs.get(g) != c:
                return False
        for g, c in other.coeffs.items():
            if inside(g) and self.coeffs.get(g) != c:
                return False
        return True

    def __repr__(self):
        terms = ", ".join(f"{g}: {c}" for g, c in self.sorted_terms()[:8])
        more = "..." if len(self.coeffs) > 8 else ""
        boxs = "everywhere" if self.box is None else f"[{self.box.lo}..{self.box.hi}]"
        return f"Series({{{terms}{more}}}, box={boxs})"


def _coerce_operand(f: Series, other):
    if isinstance(other, Series):
        return other
    return f.ambient.constant(other)


def _check_ambient(f: Series, g: Series):
    if f.ambient != g.ambient:
        raise IncompatibleAmbient("operands live over different ambients")


def _effective_cone(f: Series):
    """Support certificate: stored cone, or one derived from an exact sum.

    Returns None for an exact zero series (empty support needs no cone) and
    raises BoxUnderflow for a truncated series without a certificate.
    """
    if f.box is None:
        if not f.coeffs:
            return None
        offset = f.order.min(f.coeffs)
        gens = [exp_sub(g, offset) for g in f.coeffs if g != offset]
        return make_cone(f.order, offset, gens)
    if f.cone is None:
        raise BoxUnderflow("truncated series carries no cone certificate")
    return f.cone


def _merge_cones(order: TermOrder, c1, c2):
    if c1 is None:
        return c2
    if c2 is None:
        return c1
    cmp = order.compare(c1.offset, c2.offset)
    offset = c1.offset if cmp <= 0 else c2.offset
    gens = list(c1.generators) + list(c2.generators)
    for off in (c1.offset, c2.offset):
        d = exp_sub(off, offset)
        if any(d):
            gens.append(d)
    return make_cone(order, offset, gens)


def _convolve(a: dict, b: dict, keep=None) -> dict:
    """Coefficient convolution; ``keep`` filters result exponents."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for g1, c1 in a.items():
        for g2, c2 in b.items():
            g = exp_add(g1, g2)
            if keep is not None and not keep(g):
                continue
            prod = c1 * c2
            cur = out.get(g)
            if cur is None:
                out[g] = prod
            else:
                cur = cur + prod
                if cur == 0:
                    del out[g]
                else:
                    out[g] = cur
    return {g: c for g, c in out.items() if c != 0}


def monomial(ambient: Ambient, a, g) -> Series:
    return ambient.monomial(a, g)


def add(f: Series, g: Series) -> Series:
    _check_ambient(f, g)
    try:
        box = box_intersect(f.box, g.box)
    except ValueError:
        raise BoxUnderflow("summand boxes do not overlap") from None
    coeffs = dict(f.coeffs)
    for e, c in g.coeffs.items():
        cur = coeffs.get(e)
        s = c if cur is None else cur + c
        if s == 0:
            coeffs.pop(e, None)
        else:
            coeffs[e] = s
    if box is not None:
        coeffs = {e: c for e, c in coeffs.items() if box.contains(e)}
        cone = _merge_cones(f.order, _safe_cone(f), _safe_cone(g))
        hull = _hull_union(_operand_hull(f), _operand_hull(g))
    else:
        cone = None
        hull = None
    return Series(f.ambient, coeffs, box, cone, hull)


def _safe_cone(f: Series):
    try:
        return _effective_cone(f)
    except BoxUnderflow:
        return None


def _key_hull(coeffs, k):
    if not coeffs:
        return None
    lo = [min(g[c] for g in coeffs) for c in range(k)]
    hi = [max(g[c] for g in coeffs) for c in range(k)]
    return lo, hi


def _operand_hull(s: Series):
    """Tightest available per-coordinate support bound for s, or None."""
    k = s.order.k
    if s.box is None:
        kh = _key_hull(s.coeffs, k)
        if kh is None:
            return tuple((0, 0) for _ in range(k))
        return tuple(zip(kh[0], kh[1]))
    if s.hull is not None:
        return s.hull
    cone = _safe_cone(s)
    if cone is None:
        return None
    return tuple(cone_hull(cone))


def _hull_union(h1, h2):
    if h1 is None or h2 is None:
        return None
    out = []
    for (l1, u1), (l2, u2) in zip(h1, h2):
        lo = None if l1 is None or l2 is None else min(l1, l2)
        hi = None if u1 is None or u2 is None else max(u1, u2)
        out.append((lo, hi))
    return tuple(out)


def _hull_sum(h1, h2):
    if h1 is None or h2 is None:
        return None
    out = []
    for (l1, u1), (l2, u2) in zip(h1, h2):
        lo = None if l1 is None or l2 is None else l1 + l2
        hi = None if u1 is None or u2 is None else u1 + u2
        out.append((lo, hi))
    return tuple(out)


def mul(f: Series, g: Series) -> Series:
    _check_ambient(f, g)
    if f.box is None and g.box is None:
        return Series(f.ambient, _convolve(f.coeffs, g.coeffs), None, None)
    if f.box is None and not f.coeffs:
        return f.ambient.zero()
    if g.box is None and not g.coeffs:
        return g.ambient.zero()
    k = f.order.k
    c1 = _effective_cone(f)
    c2 = _effective_cone(g)
    h1 = _operand_hull(f)
    h2 = _operand_hull(g)
    tlo = [None] * k  # None = unbounded
    thi = [None] * k
    for mine, mine_hull, other_hull in ((f, h1, h2), (g, h2, h1)):
        if mine.box is None:
            continue
        for c in range(k):
            mlo, mhi = mine_hull[c]
            olo, ohi = other_hull[c]
            # every contributing exponent of `mine` must be >= its box.lo
            if mlo is None or mlo < mine.box.lo[c]:
                if ohi is None:
                    raise BoxUnderflow(
                        f"cannot certify coordinate {c}: unbounded overlap below")
                cand = mine.box.lo[c] + ohi
                if tlo[c] is None or cand > tlo[c]:
                    tlo[c] = cand
            # ... and <= its box.hi
            if mhi is None or mhi > mine.box.hi[c]:
                if olo is None:
                    raise BoxUnderflow(
                        f"cannot certify coordinate {c}: unbounded overlap above")
                cand = mine.box.hi[c] + olo
                if thi[c] is None or cand < thi[c]:
                    thi[c] = cand
    # a None end means any bound in that direction is certifiable; fall back
    # to the sum of the operands' box (or key-hull) extents
    fb_lo = [0] * k
    fb_hi = [0] * k
    for s in (f, g):
        if s.box is not None:
            ext = (s.box.lo, s.box.hi)
        else:
            ext = _key_hull(s.coeffs, k)
        for c in range(k):
            fb_lo[c] += ext[0][c]
            fb_hi[c] += ext[1][c]
    lo = list(tlo)
    hi = list(thi)
    for c in range(k):
        if lo[c] is None:
            lo[c] = fb_lo[c] if hi[c] is None else min(fb_lo[c], hi[c])
        if hi[c] is None:
            hi[c] = max(fb_hi[c], lo[c])
        if lo[c] > hi[c]:
            raise BoxUnderflow(f"certified product box is empty in coordinate {c}")
    box = Box(tuple(lo), tuple(hi))
    coeffs = _convolve(f.coeffs, g.coeffs, box.contains)
    cone = make_cone(f.order, exp_add(c1.offset, c2.offset),
                     list(c1.generators) + list(c2.generators)) \
        if c1 is not None and c2 is not None else None
    if cone is None:
        cone = c1 if c1 is not None else c2  # zero operand: any cone is sound
    if cone is None:
        cone = make_cone(f.order, zero_exp(k), [])
    return Series(f.ambient, coeffs, box, cone, _hull_sum(h1, h2))


def truncate(f: Series, smaller_box: Box) -> Series:
    if f.box is not None and not f.box.contains_box(smaller_box):
        raise BoxNotContained("target box is not contained in the current box")
    coeffs = {g: c for g, c in f.coeffs.items() if smaller_box.contains(g)}
    cone = f.cone if f.box is not None else _safe_cone(f)
    if cone is None:
        cone = make_cone(f.order, zero_exp(f.order.k), []) if not f.coeffs else None
    return Series(f.ambient, coeffs, smaller_box, cone, _operand_hull(f))


def factorize(f: Series):
    """Unique factorization f = a * e^g * (1 + tail), tail positive.

    Returns (a, g, tail).  For truncated series the minimality of g is
    certified by checking that every cone point below the least stored key
    lies inside the box.
    """
    order = f.order
    if not f.coeffs:
        if f.box is None:
            raise ZeroSeries("cannot factorize the zero series")
        if f.cone is not None and certify_cone_below(order, f.cone, None, f.box):
            raise ZeroSeries("series is certifiably zero")
        raise LeadingTermUncertain("empty within box but support may exist outside")
    g = order.min(f.coeffs)
    if f.box is not None:
        if f.cone is None:
            raise LeadingTermUncertain("no cone certificate")
        if not certify_cone_below(order, f.cone, g, f.box):
            raise LeadingTermUncertain(
                "box cannot certify that the least stored term is the leading term")
    a = f.coeffs[g]
    tail_coeffs = {exp_sub(e, g): c / a for e, c in f.coeffs.items() if e != g}
    if f.box is None:
        tail = Series(f.ambient, tail_coeffs, None, None)
    else:
        tail_box = f.box.shift(exp_neg(g))
        tail_cone = Cone(exp_sub(f.cone.offset, g), f.cone.generators)
        tail = Series(f.ambient, tail_coeffs, tail_box, tail_cone)
    return a, g, tail


def multiplicity_exponent(f: Series):
    """Leading exponent g of f (min of the true support), certified."""
    _, g, _ = factorize(f)
    return g


def is_positive_series(f: Series) -> bool:
    """True iff supp f > 0, certified.  Raises LeadingTermUncertain when the
    box cannot decide."""
    try:
        _, g, _ = factorize(f)
    except ZeroSeries:
        return True  # empty support is vacuously positive
    return f.order.is_positive(g)


def _element_hull(f: Series):
    """Per-coordinate hull of the possible support elements of f."""
    if f.box is None:
        kh = _key_hull(f.coeffs, f.order.k)
        if kh is None:
            return [(0, 0)] * f.order.k
        return list(zip(kh[0], kh[1]))
    return cone_hull(_effective_cone(f))


def _bound_support_set(f: Series):
    """Finite positive set whose sums cover all sums of supp-f elements.

    For an exact series this is its key set.  For a truncated positive
    series with cone offset o: if o > 0 every element is o plus generators;
    if o = 0 every (positive, hence nonzero) element is a nonzero generator
    combination; otherwise no finite bound set is certifiable.
    """
    if f.box is None:
        return list(f.coeffs)
    cone = _effective_cone(f)
    if f.order.is_positive(cone.offset):
        return [cone.offset] + list(cone.generators)
    if not any(cone.offset):
        return list(cone.generators)
    raise LeadingTermUncertain(
        "cone offset is not positive; cannot bound powers of this series")


def _region_filter(lo, hi):
    """Membership test for a coordinate region with optional infinite ends."""
    def keep(g):
        for v, a, b in zip(g, lo, hi):
            if a is not None and v < a:
                return False
            if b is not None and v > b:
                return False
        return True
    return keep


def _sum_powers(cfn, f: Series, i_max: int, box: Box) -> Series:
    """Exact-in-box evaluation of sum_i cfn(i) * f^i for positive f.

    Powers are accumulated with pruning: after i factors, only exponents
    that can still reach the box with the remaining i_max - i factors are
    kept.  When f is truncated, the window of exponents any single factor
    can contribute must be covered by f's box.
    """
    ambient = f.ambient
    fld = f.field
    k = f.order.k
    hull = _element_hull(f)
    if f.box is not None and i_max >= 1:
        for c in range(k):
            mu, nu = hull[c]
            wlo = None if nu is None else box.lo[c] - max(0, (i_max - 1) * nu)
            whi = None if mu is None else box.hi[c] - min(0, (i_max - 1) * mu)
            if mu is not None and (wlo is None or mu > wlo):
                wlo = mu
            if nu is not None and (whi is None or nu < whi):
                whi = nu
            if wlo is not None and whi is not None and wlo > whi:
                i_max = 0  # no single factor fits: only the constant term
                break
            if wlo is None or whi is None or wlo < f.box.lo[c] or whi > f.box.hi[c]:
                raise BoxUnderflow(
                    f"operand box does not cover the factor window in coordinate {c}")
    acc = {}
    c0 = fld.coerce(cfn(0))
    if c0 != 0 and box.contains(zero_exp(k)):
        acc[zero_exp(k)] = c0
    pw = {zero_exp(k): fld.one()}
    for i in range(1, i_max + 1):
        t = i_max - i
        rlo = []
        rhi = []
        for c in range(k):
            mu, nu = hull[c]
            rlo.append(None if nu is None else box.lo[c] - max(0, t * nu))
            rhi.append(None if mu is None else box.hi[c] - min(0, t * mu))
        pw = _convolve(pw, f.coeffs, _region_filter(rlo, rhi))
        if not pw:
            break
        ci = fld.coerce(cfn(i))
        if ci == 0:
            continue
        for g, v in pw.items():
            if not box.contains(g):
                continue
            cur = acc.get(g)
            s = ci * v if cur is None else cur + ci * v
            if s == 0:
                acc.pop(g, None)
            else:
                acc[g] = s
    elems = _bound_support_set(f)
    cone = make_cone(f.order, zero_exp(k), elems)
    return Series(ambient, {g: c for g, c in acc.items() if c != 0}, box, cone)


def substitute(c, f: Series, target_box=None) -> Series:
    """sum_i c_i f^i for a positive series f.

    ``c`` is a finite sequence or a callable i -> scalar.  A target box is
    required unless ``c`` is finite (the polynomial case).
    """
    if not is_positive_series(f):
        raise NotPositive("substitution base must be a positive series")
    if target_box is None:
        if callable(c):
            if f.is_zero():
                return f.ambient.constant(c(0))
            raise BoxUnderflow("target box required for an infinite coefficient list")
        out = f.ambient.zero()
        pw = f.ambient.one()
        for i, ci in enumerate(c):
            if i > 0:
                pw = mul(pw, f)
            out = add(out, pw.scale(ci))
        return out
    cfn = c if callable(c) else (lambda i: c[i] if i < len(c) else 0)
    if f.is_zero():
        i_max = 0
    else:
        elems = _bound_support_set(f)
        i_max = power_exhaustion_bound(f.order, elems, target_box)
        if not callable(c):
            i_max = min(i_max, len(c) - 1)
    return _sum_powers(cfn, f, i_max, target_box)


def invert(f: Series, target_box=None) -> Series:
    """Inverse via the factorization f = a e^g (1 + tail):
    a^-1 e^-g (1 - tail + tail^2 - ...), exact in the target box."""
    a, g, tail = factorize(f)
    ainv = f.field.inv(a)
    if tail.is_zero() or not tail.coeffs and tail.box is not None and \
            certify_cone_below(f.order, tail.cone, None, tail.box):
        return f.ambient.monomial(ainv, exp_neg(g))
    if target_box is None:
        raise BoxUnderflow("inverting a non-monomial requires a target box")
    shifted = target_box.shift(g)
    geom = substitute(lambda i: (-1) ** i, tail, shifted)
    return geom.scale(ainv).shift(exp_neg(g))


def power(f: Series, k: int, target_box=None) -> Series:
    """Integer power; negative exponents invert into the target box."""
    if k >= 0:
        return f ** k
    inv = invert(f, target_box)
    return inv ** (-k)


def log1p(f: Series, target_box=None) -> Series:
    """log(1 + f) = f - f^2/2 + f^3/3 - ...; characteristic zero only."""
    if f.field.characteristic != 0:
        raise PositiveCharacteristic("log is undefined in positive characteristic")
    if f.is_zero():
        return f.ambient.zero()
    return substitute(
        lambda i: Fraction((-1) ** (i + 1), i) if i > 0 else 0, f, target_box)


def coefficient_at(f: Series, g):
    return f.coefficient_at(g)


def h_coefficient_at(f: Series, monomial_exps) -> Series:
    """kappa[[e^H]]-coefficient at X_1^{j_1}...X_n^{j_n}, as a series whose
    support has all variable coordinates zero."""
    split = f.split
    j = tuple(monomial_exps)
    if len(j) != split.n:
        raise OutsideBox(f"expected {split.n} monomial exponents, got {len(j)}")
    if f.box is not None:
        for i, ji in enumerate(j):
            if not (f.box.lo[split.m + i] <= ji <= f.box.hi[split.m + i]):
                raise OutsideBox(f"variable slice {j} is outside the box")
    zeros = (0,) * split.n
    coeffs = {}
    for g, c in f.coeffs.items():
        if split.var_part(g) == j:
            coeffs[split.h_part(g) + zeros] = c
    if f.box is None:
        return Series(f.ambient, coeffs, None, None)
    box = Box(f.box.lo[:split.m] + zeros, f.box.hi[:split.m] + zeros)
    return Series(f.ambient, coeffs, box, None)


def constant_scalar(f: Series):
    """The kappa-coefficient at e^0 (requires 0 inside the box)."""
    return f.coefficient_at(zero_exp(f.order.k))


# -- JSON schema --------------------------------------------------------

def series_to_json(f: Series) -> dict:
    if f.box is None:
        box = "everywhere"
    else:
        box = {"lo": list(f.box.lo), "hi": list(f.box.hi)}
    return {
        "order": f.order.to_string(),
        "split": {"m": f.split.m, "n": f.split.n},
        "field": f.field.name,
        "box": box,
        "terms": [{"exp": list(g), "coeff": f.field.format(c)}
                  for g, c in f.sorted_terms()],
    }


def series_from_json(data: dict) -> Series:
    order = parse_order(data["order"])
    split = GroupSplit(data["split"]["m"], data["split"]["n"])
    fld = field_from_name(data["field"])
    ambient = Ambient(split, order, fld)
    box = None
    if data["box"] != "everywhere":
        box = Box(tuple(data["box"]["lo"]), tuple(data["box"]["hi"]))
    coeffs = {tuple(t["exp"]): fld.parse(t["coeff"]) for t in data["terms"]}
    return ambient.series(coeffs, box=box)
