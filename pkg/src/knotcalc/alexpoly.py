"""Alexander-Conway polynomials of PD codes.

The polynomial is computed from the Wirtinger presentation: one relation
per crossing, one generator per over-arc, Fox-differentiated and
abelianized, then a size-(n-1) minor determinant.  Exponents may be
half-integers for links, so they are stored doubled internally.

Normalization: knots are scaled to satisfy D(T) = D(1/T) and D(1) = 1;
links are symmetrized with positive leading coefficient (the overall
sign for 2+ components is a documented convention choice).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import pdcode
from .pdcode import PDCode


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial in T with half-integer exponents
    (stored doubled: key 2e holds the coefficient of T^e)."""

    coeffs: tuple[tuple[int, int], ...]  # sorted (doubled exponent, coefficient)

    @staticmethod
    def from_dict(d: dict[int, int]) -> "LaurentPolynomial":
        items = tuple(sorted((e, c) for e, c in d.items() if c != 0))
        return LaurentPolynomial(items)

    @staticmethod
    def constant(c: int) -> "LaurentPolynomial":
        return LaurentPolynomial.from_dict({0: c})

    @staticmethod
    def t_power(e2: int, c: int = 1) -> "LaurentPolynomial":
        """c * T^(e2/2)."""
        return LaurentPolynomial.from_dict({e2: c})

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPolynomial.from_dict(d)

    def __sub__(self, other):
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) - c
        return LaurentPolynomial.from_dict(d)

    def __neg__(self):
        return LaurentPolynomial(tuple((e, -c) for e, c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(tuple((e, c * other) for e, c in self.coeffs) if other else ())
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPolynomial.from_dict(d)

    __rmul__ = __mul__

    def shift(self, e2: int) -> "LaurentPolynomial":
        """Multiply by T^(e2/2)."""
        return LaurentPolynomial(tuple((e + e2, c) for e, c in self.coeffs))

    def reciprocal(self) -> "LaurentPolynomial":
        """T -> 1/T."""
        return LaurentPolynomial(tuple(sorted((-e, c) for e, c in self.coeffs)))

    def min_exp2(self) -> int:
        return self.coeffs[0][0]

    def max_exp2(self) -> int:
        return self.coeffs[-1][0]

    def coefficient(self, exponent) -> int:
        e2 = int(2 * Fraction(exponent))
        return self.as_dict().get(e2, 0)

    def eval_at_one(self) -> int:
        return sum(c for _, c in self.coeffs)

    def abs_at_minus_one(self) -> int:
        """|D(-1)|, using T^(1/2) = i; the value of a symmetric
        polynomial is real or purely imaginary."""
        re = im = 0
        for e, c in self.coeffs:
            k = e % 4
            if k == 0:
                re += c
            elif k == 1:
                im += c
            elif k == 2:
                re -= c
            else:
                im -= c
        if re and im:
            raise ValueError("polynomial is not symmetric enough to evaluate at -1")
        return abs(re) if re else abs(im)

    def is_symmetric(self) -> bool:
        return self == self.reciprocal() or self == -self.reciprocal()

    def to_pairs(self) -> list[tuple[str, int]]:
        """Serialized form: sorted (exact rational exponent, coefficient)."""
        return [(str(Fraction(e, 2)), c) for e, c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in reversed(self.coeffs):
            exp = Fraction(e, 2)
            if exp == 0:
                term = str(abs(c))
            else:
                tpow = "T" if exp == 1 else f"T^{exp}"
                term = tpow if abs(c) == 1 else f"{abs(c)}*{tpow}"
            parts.append(("- " if c < 0 else "+ ") + term)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


ONE = LaurentPolynomial.constant(1)
ZERO = LaurentPolynomial.constant(0)


# -- Wirtinger route -------------------------------------------------------


def _wirtinger_arcs(d: PDCode) -> dict[int, int]:
    """Map each edge to its over-arc representative (edges are glued
    where they pass over a crossing)."""
    parent = {e: e for e in d.edge_set()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, c in enumerate(d.crossings):
        a, b = c[d.over_in_slot(i)], c[d.over_out_slot(i)]
        parent[find(a)] = find(b)
    return {e: find(e) for e in parent}


def _alexander_minor(d: PDCode) -> LaurentPolynomial:
    """Determinant of the reduced, abelianized Wirtinger matrix.

    Rows with sign -1 are rescaled by T to clear negative exponents, so
    the determinant is interpolated from integer evaluations and the
    scaling is divided back out at the end.
    """
    arcs = _wirtinger_arcs(d)
    names = sorted(set(arcs.values()))
    col = {a: k for k, a in enumerate(names)}
    n = len(d.crossings)
    assert len(names) == n

    # rows[i]: dict col -> (c0, c1) meaning c0 + c1*T  (after row scaling)
    rows = []
    neg_rows = 0
    for i, c in enumerate(d.crossings):
        over = col[arcs[c[d.over_in_slot(i)]]]
        uin = col[arcs[c[0]]]
        uout = col[arcs[c[2]]]
        row: dict[int, tuple[int, int]] = {}

        def add(j, c0, c1):
            a0, a1 = row.get(j, (0, 0))
            row[j] = (a0 + c0, a1 + c1)

        if d.signs[i] == 1:
            add(over, 1, -1)   # 1 - T
            add(uin, 0, 1)     # T
            add(uout, -1, 0)   # -1
        else:
            neg_rows += 1
            add(over, -1, 1)   # T*(1 - 1/T) = T - 1
            add(uin, 1, 0)     # T*(1/T) = 1
            add(uout, 0, -1)   # T*(-1) = -T
        rows.append(row)

    m = n - 1
    if m == 0:
        det_poly = {0: 1}
    else:
        # interpolate det(T) of the m x m minor; degree <= m
        xs = list(range(2, 2 + m + 1))
        ys = []
        for x in xs:
            mat = [[0] * m for _ in range(m)]
            for i in range(m):
                for j, (c0, c1) in rows[i].items():
                    if j < m:
                        mat[i][j] = c0 + c1 * x
            ys.append(_int_det(mat))
        det_poly = _interpolate_int_poly(xs, ys)

    out = {2 * (e - neg_rows): c for e, c in det_poly.items() if c}
    return LaurentPolynomial.from_dict(out)


def _int_det(a) -> int:
    a = [row[:] for row in a]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for j in range(k + 1, n):
                if a[j][k]:
                    a[k], a[j] = a[j], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def _interpolate_int_poly(xs, ys) -> dict[int, int]:
    """Lagrange interpolation with exact rational arithmetic; the result
    must have integer coefficients."""
    total = [Fraction(0)] * len(xs)
    for x0, y0 in zip(xs, ys):
        num = [Fraction(1)]
        denom = Fraction(1)
        for x1 in xs:
            if x1 == x0:
                continue
            denom *= x0 - x1
            new = [Fraction(0)] * (len(num) + 1)
            for k, c in enumerate(num):
                new[k + 1] += c
                new[k] -= c * x1
            num = new
        scale = y0 / denom
        for k, c in enumerate(num):
            total[k] += c * scale
    out = {}
    for k, c in enumerate(total):
        assert c.denominator == 1, "interpolation did not yield integers"
        if c:
            out[k] = int(c)
    return out


def _symmetrize(p: LaurentPolynomial) -> LaurentPolynomial:
    """Shift by a (half-)integer power of T so the exponent range is
    centered at 0; the result satisfies q = +/- q(1/T)."""
    span = p.min_exp2() + p.max_exp2()
    assert span % 2 == 0
    q = p.shift(-span // 2)
    assert q == q.reciprocal() or q == -q.reciprocal(), "minor is not symmetrizable"
    return q


def alexander(d: PDCode) -> LaurentPolynomial:
    """Normalized Alexander-Conway polynomial of the link.

    Knots are scaled so that D(T) = D(1/T) and D(1) = 1.  For links the
    symmetric representative with positive leading coefficient is
    returned (sign ambiguity for 2+ components is a convention choice).
    """
    d = pdcode.validate(d)
    if not d.crossings:
        return ONE if d.components == 1 else ZERO
    minor = _alexander_minor(d)
    if d.components == 1:
        q = _symmetrize(minor)
        s = q.eval_at_one()
        assert abs(s) == 1, f"knot normalization failed: D(1) = {s}"
        return q if s == 1 else -q
    if minor.is_zero():
        return ZERO
    q = _symmetrize(minor)
    return q if q.coeffs[-1][1] > 0 else -q


def conway(d: PDCode) -> LaurentPolynomial:
    """Conway polynomial in z, normalized by conway(unknot) = 1 and the
    substitution z = T^(1/2) - T^(-1/2)."""
    return conway_from_alexander(alexander(d))


def conway_from_alexander(delta: LaurentPolynomial) -> LaurentPolynomial:
    """Rewrite a symmetric Laurent polynomial in the basis of powers of
    y = T^(1/2) - T^(-1/2); returns the z-polynomial (z-exponent k is
    stored at key 2k)."""
    if delta.is_zero():
        return ZERO
    y = LaurentPolynomial.from_dict({1: 1, -1: -1})
    rem = delta
    out: dict[int, int] = {}
    ypows: list[LaurentPolynomial] = [ONE]
    while not rem.is_zero():
        k = rem.max_exp2()
        if k < 0:
            raise ValueError("polynomial is not symmetric")
        c = rem.coeffs[-1][1]
        while len(ypows) <= k:
            ypows.append(ypows[-1] * y)
        out[2 * k] = out.get(2 * k, 0) + c
        rem = rem - c * ypows[k]
    return LaurentPolynomial.from_dict(out)


def half_degree(p: LaurentPolynomial):
    """Highest power of T; an integer when possible, else a Fraction."""
    if p.is_zero():
        raise ValueError("undefined degree: zero polynomial")
    e = Fraction(p.max_exp2(), 2)
    return int(e) if e.denominator == 1 else e


def check_satellite_identity(companion: PDCode, r: int, t: int):
    """Test the companion-independence of the satellite's polynomial.

    Returns (equal, satellite_poly, reference_poly) where the reference
    is the same pattern and twisting applied to the unknot.
    """
    from .linkdiag import satellite

    lhs = alexander(satellite(companion, r, t))
    rhs = alexander(satellite(pdcode.UNKNOT, r, t))
    return lhs == rhs, lhs, rhs
