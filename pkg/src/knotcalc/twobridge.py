"""Two-bridge links, continued fractions, Goeritz forms, and signatures.

The chain family used throughout the package is C(k) :=
C(-2,-2,...,-2) with k coefficients; C(2r) is a knot and C(2r+1) a
2-component link.  Determinants follow the numerators of the continued
fractions [2,2,...,2].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import pdcode
from ._plat import plat_closure, twobridge_word
from .pdcode import DiagramError, PDCode


class DegenerateError(ValueError):
    pass


@dataclass(frozen=True)
class ContinuedFraction:
    coefficients: tuple[int, ...]
    p: int
    q: int


def cf_evaluate(coeffs) -> tuple[int, int]:
    """Evaluate b_1 + 1/(b_2 + 1/(... + 1/b_n)) as a reduced fraction
    with positive denominator."""
    cs = list(coeffs)
    if not cs:
        raise DegenerateError("degenerate continued fraction: empty coefficient list")
    x = Fraction(cs[-1])
    for b in reversed(cs[:-1]):
        if x == 0:
            raise DegenerateError("degenerate continued fraction: zero intermediate denominator")
        x = b + 1 / x
    p, q = x.numerator, x.denominator
    if q < 0:
        p, q = -p, -q
    return p, q


def continued_fraction(coeffs) -> ContinuedFraction:
    p, q = cf_evaluate(coeffs)
    return ContinuedFraction(tuple(int(c) for c in coeffs), p, q)


def pr_qr(r: int) -> tuple[int, int]:
    """(p_r, q_r) for the fraction [2,2,...,2] with 2r+1 twos."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return cf_evaluate([2] * (2 * r + 1))


def two_bridge_pd(coeffs) -> PDCode:
    """PD code of the 2-bridge link C(b_1, ..., b_n) in Conway normal form.

    For 2-component links the components are oriented so their linking
    number is non-negative (the orientation bounding the usual chain of
    bands, which has signature -1 for the C(2r+1) family).
    """
    d = plat_closure(twobridge_word(coeffs), 4)
    if d.components == 2:
        lk = pdcode.linking_matrix(d)[0][1]
        if lk < 0:
            d = pdcode.validate(pdcode.reverse_component(d, 1))
    return d


def chain_link_pd(k: int) -> PDCode:
    """C(k) := C(-2, ..., -2) with k coefficients (k >= 0; C(0) is the unknot)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return pdcode.UNKNOT
    return two_bridge_pd([-2] * k)


# -- Goeritz matrix and determinant ---------------------------------------


def _checkerboard(d: PDCode):
    """Faces of the diagram 2-colored; returns (faces, colors, corner_face).

    corner_face[(i, k)] is the face at the corner of crossing i between
    slots k and k+1.
    """
    face_list = pdcode.faces(d)
    corner_face: dict[tuple[int, int], int] = {}
    for fi, face in enumerate(face_list):
        for (i, slot) in face:
            corner_face[(i, slot)] = fi
    # adjacency: faces at corners (i, k) and (i, k+1) share the edge at slot k+1
    colors = {0: 0}
    stack = [0]
    adj: dict[int, set[int]] = {fi: set() for fi in range(len(face_list))}
    for i in range(len(d.crossings)):
        for k in range(4):
            a = corner_face[(i, k)]
            b = corner_face[(i, (k + 1) % 4)]
            adj[a].add(b)
            adj[b].add(a)
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if g not in colors:
                colors[g] = 1 - colors[f]
                stack.append(g)
            elif colors[g] == colors[f]:
                raise DiagramError("diagram is not checkerboard colorable")
    return face_list, colors, corner_face


def _goeritz_data(d: PDCode):
    """White-face Goeritz matrix plus per-crossing (u, v, eta, type2) info."""
    face_list, colors, corner_face = _checkerboard(d)
    whites = sorted(f for f, c in colors.items() if c == 0)
    index = {f: k for k, f in enumerate(whites)}
    m = len(whites)
    G = [[0] * m for _ in range(m)]
    correction = 0
    for i in range(len(d.crossings)):
        cf = [corner_face[(i, k)] for k in range(4)]
        if colors[cf[0]] == 0:
            white_pair, eta = (cf[0], cf[2]), 1
        else:
            white_pair, eta = (cf[1], cf[3]), -1
        # Gordon-Litherland type II crossings are the ones whose incidence
        # sign matches the oriented crossing sign; they feed the
        # correction term of the signature formula.
        s = d.signs[i]
        if eta == s:
            correction += eta
        u, v = white_pair
        if u != v:
            a, b = index[u], index[v]
            G[a][b] -= eta
            G[b][a] -= eta
            G[a][a] += eta
            G[b][b] += eta
    return G, correction


def _int_det(rows) -> int:
    """Fraction-free determinant (Bareiss)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for j in range(k + 1, n):
                if a[j][k] != 0:
                    a[k], a[j] = a[j], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(d: PDCode) -> int:
    """|Delta_L(-1)| computed from a Goeritz matrix of a checkerboard
    coloring (independent of the Alexander-polynomial route)."""
    d = pdcode.validate(d)
    if not d.crossings:
        return 1 if d.components == 1 else 0
    G, _ = _goeritz_data(d)
    minor = [row[:-1] for row in G[:-1]]
    return abs(_int_det(minor))


def signature_of_diagram(d: PDCode) -> int:
    """Link signature via the Goeritz form with the Gordon-Litherland
    correction term."""
    d = pdcode.validate(d)
    if not d.crossings:
        return 0
    G, correction = _goeritz_data(d)
    minor = [row[:-1] for row in G[:-1]]
    if not minor:
        return -correction
    sig = signature(SymmetricIntegerMatrix(tuple(tuple(r) for r in minor)))
    return sig - correction


# -- symmetric forms and signatures ---------------------------------------


@dataclass(frozen=True)
class SymmetricIntegerMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)


def seifert_form_Fr(r: int) -> SymmetricIntegerMatrix:
    """The (2r+1) x (2r+1) tridiagonal symmetrized Seifert form of the
    chain link C(2r+1): diagonal alternates -2, 4, -2, ..., -2 with 1 on
    the off-diagonals."""
    if r < 0:
        raise ValueError("r must be non-negative")
    n = 2 * r + 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -2 if i % 2 == 0 else 4
        if i + 1 < n:
            rows[i][i + 1] = 1
            rows[i + 1][i] = 1
    return SymmetricIntegerMatrix(tuple(tuple(r_) for r_ in rows))


def signature(m: SymmetricIntegerMatrix) -> int:
    """Signature by exact symmetric (congruence) elimination.

    Equivalent to sign-change counting on leading principal minors;
    vanishing pivots are repaired by symmetric swaps or row+column
    additions, which are congruences and preserve the signature.
    """
    n = m.size
    if n == 0:
        return 0
    if _int_det(m.entries) == 0:
        raise DegenerateError("degenerate form")
    a = [[Fraction(x) for x in row] for row in m.entries]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((t for t in range(k + 1, n) if a[t][t] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((t for t in range(k + 1, n) if a[t][k] != 0), None)
                if j is None:
                    raise DegenerateError("degenerate form")
                for t in range(n):
                    a[k][t] += a[j][t]
                for t in range(n):
                    a[t][k] += a[t][j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        # Schur complement of the pivot (keeps the block symmetric)
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
        for i in range(k + 1, n):
            a[i][k] = Fraction(0)
            a[k][i] = Fraction(0)
    return pos - neg
