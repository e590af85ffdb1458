"""Exponent group Z^k, matrix term orders, boxes and cone certificates.

Exponents are plain tuples of Python ints (arbitrary precision).  A term
order is a full-rank integer matrix M; a > b iff M(a-b) is lexicographically
positive.  Boxes are coordinate intervals used as exactness windows; cones
are finitely generated certificates containing the true support of a
truncated series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    NonPositiveSupportElement,
    SingularOrderMatrix,
)

Exponent = tuple  # tuple[int, ...]


def exp_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def exp_neg(a: Exponent) -> Exponent:
    return tuple(-x for x in a)


def zero_exp(k: int) -> Exponent:
    return (0,) * k


def int_det(rows) -> int:
    """Exact determinant of a square integer matrix (fraction-free)."""
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1, m[col][col])
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    assert det.denominator == 1
    return det.numerator


def int_matrix_inverse(rows):
    """Inverse of a square integer matrix as a matrix of Fractions."""
    n = len(rows)
    m = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise SingularOrderMatrix("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        d = m[col][col]
        m[col] = [v / d for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [r[n:] for r in m]


@dataclass(frozen=True)
class GroupSplit:
    """G = Z^k with H the first m coordinates and n variable coordinates."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 1:
            raise DimensionMismatch("need m >= 0 and n >= 1")

    @property
    def k(self) -> int:
        return self.m + self.n

    def unit(self, i: int) -> Exponent:
        """Exponent of the i-th variable (1-based)."""
        if not 1 <= i <= self.n:
            raise DimensionMismatch(f"variable index {i} out of 1..{self.n}")
        return tuple(1 if j == self.m + i - 1 else 0 for j in range(self.k))

    def var_part(self, g: Exponent) -> Exponent:
        return g[self.m:]

    def h_part(self, g: Exponent) -> Exponent:
        return g[:self.m]


@dataclass(frozen=True)
class TermOrder:
    """Total order on Z^k: a > b iff M(a-b) is lex-positive."""

    matrix: tuple  # tuple of row tuples

    @property
    def k(self) -> int:
        return len(self.matrix)

    def key(self, v: Exponent):
        """M*v; sorting exponents by this tuple sorts them by the order."""
        if len(v) != self.k:
            raise DimensionMismatch(f"exponent length {len(v)} != {self.k}")
        return tuple(sum(r[i] * v[i] for i in range(self.k)) for r in self.matrix)

    def compare(self, a: Exponent, b: Exponent) -> int:
        """-1, 0 or 1 as a <, =, > b."""
        ka = self.key(a)
        kb = self.key(b)
        return (ka > kb) - (ka < kb)

    def is_positive(self, v: Exponent) -> bool:
        return self.key(v) > (0,) * self.k

    def min(self, exps):
        return min(exps, key=self.key)

    def sorted(self, exps):
        return sorted(exps, key=self.key)

    def to_string(self) -> str:
        return ";".join(",".join(str(v) for v in row) for row in self.matrix)


def validate_order(matrix) -> TermOrder:
    """Build a TermOrder, rejecting singular matrices."""
    rows = tuple(tuple(int(v) for v in row) for row in matrix)
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise DimensionMismatch("order matrix must be square")
    if int_det(rows) == 0:
        raise SingularOrderMatrix("order matrix has determinant 0")
    return TermOrder(rows)


def lex_order(k: int) -> TermOrder:
    return TermOrder(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))


def parse_order(spec: str) -> TermOrder:
    """Parse "r11,r12,...;r21,...;..." into a TermOrder."""
    rows = [[int(v) for v in row.split(",")] for row in spec.split(";")]
    return validate_order(rows)


@dataclass(frozen=True)
class Box:
    """Componentwise interval [lo, hi] in Z^k."""

    lo: Exponent
    hi: Exponent

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise DimensionMismatch("box corners have different lengths")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise DimensionMismatch("box lower corner exceeds upper corner")

    @property
    def k(self) -> int:
        return len(self.lo)

    def contains(self, g: Exponent) -> bool:
        return all(a <= v <= b for a, v, b in zip(self.lo, g, self.hi))

    def contains_box(self, other: "Box") -> bool:
        return self.contains(other.lo) and self.contains(other.hi)

    def lattice_count(self) -> int:
        count = 1
        for a, b in zip(self.lo, self.hi):
            count *= b - a + 1
        return count

    def points(self):
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))

    def shift(self, v: Exponent) -> "Box":
        return Box(exp_add(self.lo, v), exp_add(self.hi, v))


def box_intersect(a, b):
    """Intersection of two boxes; None is the Everywhere box and absorbs.

    Returns None only if both inputs are None.  Raises ValueError if the
    intersection is empty.
    """
    if a is None:
        return b
    if b is None:
        return a
    lo = tuple(max(x, y) for x, y in zip(a.lo, b.lo))
    hi = tuple(min(x, y) for x, y in zip(a.hi, b.hi))
    if any(x > y for x, y in zip(lo, hi)):
        raise ValueError("empty box intersection")
    return Box(lo, hi)


@dataclass(frozen=True)
class Cone:
    """Certified support superset: offset + N-span of positive generators."""

    offset: Exponent
    generators: tuple  # tuple of Exponents, each > 0 under the ambient order

    def shift(self, v: Exponent) -> "Cone":
        return Cone(exp_add(self.offset, v), self.generators)


def make_cone(order: TermOrder, offset: Exponent, generators) -> Cone:
    """Cone with zero generators dropped and positivity checked."""
    gens = []
    seen = set()
    for g in generators:
        if all(v == 0 for v in g) or g in seen:
            continue
        if not order.is_positive(g):
            raise NonPositiveSupportElement(f"cone generator {g} is not positive")
        seen.add(g)
        gens.append(g)
    return Cone(tuple(offset), tuple(gens))


def cone_hull(cone: Cone):
    """Per-coordinate hull (lo, hi) of the cone; None means unbounded."""
    lo = list(cone.offset)
    hi = list(cone.offset)
    for g in cone.generators:
        for c, v in enumerate(g):
            if v > 0:
                hi[c] = None
            elif v < 0:
                lo[c] = None
    return list(zip(lo, hi))


def functional_range(row, box: Box):
    """Min and max of the linear functional <row, .> over the box."""
    lo = 0
    hi = 0
    for coeff, a, b in zip(row, box.lo, box.hi):
        lo += min(coeff * a, coeff * b)
        hi += max(coeff * a, coeff * b)
    return lo, hi


def power_exhaustion_bound(order: TermOrder, support, box: Box) -> int:
    """Upper bound on how many positive summands from ``support`` can sum
    into ``box``.

    Soundness: classify each summand by its level (first order-matrix row
    with a nonzero, hence positive, value).  Level-j summands contribute at
    least their minimum row-j value and nothing to earlier rows; summands of
    earlier levels can offset row j by at most their worst negative value.
    Bounding the per-level counts top-down bounds the total.
    """
    support = [tuple(s) for s in support]
    if not support:
        return 0
    k = order.k
    levels = {}
    for v in support:
        key = order.key(v)
        lvl = next((j for j, x in enumerate(key) if x != 0), None)
        if lvl is None or key[lvl] < 0:
            raise NonPositiveSupportElement(f"support element {v} is not positive")
        levels.setdefault(lvl, []).append((v, key))
    counts = {}
    total = 0
    for j in range(k):
        if j not in levels:
            continue
        _, row_hi = functional_range(order.matrix[j], box)
        cap = row_hi
        for j2, n2 in counts.items():
            worst = max(max(0, -key[j]) for _, key in levels[j2])
            cap += n2 * worst
        minpos = min(key[j] for _, key in levels[j])
        n_j = max(0, cap // minpos) if cap >= 0 else 0
        counts[j] = n_j
        total += n_j
    return total


def certify_cone_below(order: TermOrder, cone: Cone, bound, box,
                       budget: int = 200_000) -> bool:
    """Check that every cone point strictly below ``bound`` lies in ``box``.

    ``bound`` may be None, meaning check all cone points.  Enumeration walks
    the cone from its offset along generators; points at or above the bound
    are pruned (their successors only grow).  Returns False if a point
    escapes the box or the enumeration budget is exhausted (the certificate
    then fails, it never lies).
    """
    if box is not None:
        budget = min(budget, 4 * box.lattice_count() * (len(cone.generators) + 1) + 64)
    bound_key = order.key(bound) if bound is not None else None
    seen = {cone.offset}
    frontier = [cone.offset]
    visited = 0
    while frontier:
        pt = frontier.pop()
        visited += 1
        if visited > budget:
            return False
        if bound_key is not None and order.key(pt) >= bound_key:
            continue
        if box is None or not box.contains(pt):
            return False
        for g in cone.generators:
            nxt = exp_add(pt, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return True
