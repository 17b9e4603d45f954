"""Knot Floer homology over F2 from grid diagrams.

The fully blocked complex is generated by one lattice point per
row/column pair; the differential counts empty rectangles avoiding all
markings, preserves the Alexander grading and drops the Maslov grading
by one.  Its homology is the hat invariant tensored with K = n - l
copies of a two-dimensional bigraded vector space, which is divided out
exactly by bigraded rank arithmetic.

The tau invariant uses the larger complex whose rectangles may cross X
markings; the Alexander grading then only filters, and the filtration
level of the surviving Maslov-zero generator after filtered reduction
is the invariant.

Alexander gradings are stored doubled (as integers) so links, whose
gradings may be half-integers, need no special casing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .grid import GridDiagram, components_of_grid, validate_grid


class BudgetError(RuntimeError):
    """A computation was refused because the grid exceeds the budget."""


@dataclass
class Budget:
    max_full: int = 10      # full state enumeration (homology)
    max_euler: int = 10     # chain-level Euler characteristics
    max_top: int = 14       # top-stratum branch and bound
    max_tau: int = 8
    max_nodes: int = 40_000_000

    def check(self, n: int, cap: int, what: str):
        if n > cap:
            raise BudgetError(
                f"grid size {n} exceeds the {what} budget of {cap}; "
                "raise the budget explicitly to proceed"
            )


DEFAULT_BUDGET = Budget()


# -- gradings ---------------------------------------------------------------


def _sw_comparable(p, q) -> int:
    """1 when one point is strictly southwest of the other."""
    return int((p[0] < q[0] and p[1] < q[1]) or (q[0] < p[0] and q[1] < p[1]))


def _j_self(points) -> int:
    """J(P, P): the number of unordered southwest-comparable pairs."""
    pts = list(points)
    return sum(
        _sw_comparable(pts[i], pts[j])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
    )


class Gradings:
    """Precomputed grading and marking data for one grid."""

    def __init__(self, g: GridDiagram):
        g = validate_grid(g)
        self.grid = g
        self.n = n = g.n
        self.ncomp = components_of_grid(g)
        half = Fraction(1, 2)
        xs = [(i + half, g.X[i] + half) for i in range(n)]
        os_ = [(i + half, g.O[i] + half) for i in range(n)]
        self._os = os_
        # W2[c][r] = 2J(point, X) - 2J(point, O) at lattice point (c, r)
        self.W2 = [
            [
                sum(_sw_comparable((c, r), m) for m in xs)
                - sum(_sw_comparable((c, r), m) for m in os_)
                for r in range(n)
            ]
            for c in range(n)
        ]
        self._joo = _j_self(os_)
        self._jxx = _j_self(xs)
        self._a_const2 = self._joo - self._jxx - (n - self.ncomp)
        self.prefX = self._prefix(g.X)
        self.prefO = self._prefix(g.O)

    @staticmethod
    def _prefix(marks):
        n = len(marks)
        pref = [[0] * (n + 1) for _ in range(n + 1)]
        for c in range(n):
            for r in range(n):
                pref[c + 1][r + 1] = (
                    pref[c][r + 1] + pref[c + 1][r] - pref[c][r]
                    + (1 if marks[c] == r else 0)
                )
        return pref

    @staticmethod
    def _box(pref, c1, c2, r1, r2) -> int:
        return pref[c2][r2] - pref[c1][r2] - pref[c2][r1] + pref[c1][r1]

    def alexander2(self, state) -> int:
        """Twice the Alexander grading."""
        W = self.W2
        return sum(W[i][state[i]] for i in range(self.n)) + self._a_const2

    def maslov(self, state) -> int:
        pts = [(i, state[i]) for i in range(self.n)]
        jxx = _j_self(pts)
        jxo2 = sum(_sw_comparable(p, m) for p in pts for m in self._os)
        # M = J(x,x) - 2J(x,O) + J(O,O) + 1 and jxo2 counts 2J(x,O)
        return jxx - jxo2 + self._joo + 1

    def gradings(self, state):
        a = Fraction(self.alexander2(tuple(state)), 2)
        return (int(a) if a.denominator == 1 else a), self.maslov(tuple(state))


def gradings(g: GridDiagram, state):
    """Absolute (Alexander, Maslov) grading of one grid state."""
    return Gradings(g).gradings(tuple(state))


# -- rectangles --------------------------------------------------------------


def _split(start, length, n):
    """A cyclic interval [start, start+length) as plain intervals."""
    if start + length <= n:
        return ((start, start + length),)
    return ((start, n), (0, start + length - n))


def _count_cyc(gr: Gradings, pref, c1, clen, r1, rlen) -> int:
    tot = 0
    for (ca, cb) in _split(c1, clen, gr.n):
        for (ra, rb) in _split(r1, rlen, gr.n):
            tot += gr._box(pref, ca, cb, ra, rb)
    return tot


def rectangle_targets(gr: Gradings, state, allow_x: bool):
    """Differential targets from `state` with F2 multiplicities.

    Yields (target_state, x_count) for each empty rectangle containing
    no O markings and no interior state points; X markings are permitted
    only when allow_x is set (each crossed X drops the Alexander grading
    by one).  Pairs of rectangles to the same target cancel over F2 and
    are handled by the caller.
    """
    n = gr.n
    for i in range(n):
        for j in range(i + 1, n):
            si, sj = state[i], state[j]
            for (c1, clen, r1, rlen) in (
                (i, j - i, si, (sj - si) % n),
                (j, i + n - j, sj, (si - sj) % n),
            ):
                blocked = False
                for k in range(c1 + 1, c1 + clen):
                    if (state[k % n] - r1) % n < rlen:
                        blocked = True
                        break
                if blocked:
                    continue
                if _count_cyc(gr, gr.prefO, c1 % n, clen, r1 % n, rlen):
                    continue
                xs = _count_cyc(gr, gr.prefX, c1 % n, clen, r1 % n, rlen)
                if xs and not allow_x:
                    continue
                t = list(state)
                t[i], t[j] = sj, si
                yield tuple(t), xs


def _target_sets(gr: Gradings, state, allow_x: bool):
    """Targets with even multiplicities removed (F2 coefficients)."""
    acc: set = set()
    for t, _ in rectangle_targets(gr, state, allow_x):
        acc ^= {t}
    return acc


# -- complexes ---------------------------------------------------------------


@dataclass
class FilteredComplex:
    """Basis of grid states with a square-zero differential that never
    raises the Alexander grading."""

    basis: list
    alexander2: list
    maslov: list
    diff: dict  # index -> frozenset of target indices
    grid: GridDiagram

    def d_squared_is_zero(self) -> bool:
        for x, ys in self.diff.items():
            acc: set = set()
            for y in ys:
                acc ^= set(self.diff.get(y, ()))
            if acc:
                return False
        return True


def _build_complex(g: GridDiagram, allow_x: bool, budget: Budget, cap: int,
                   what: str) -> FilteredComplex:
    gr = Gradings(g)
    budget.check(gr.n, cap, what)
    basis = list(itertools.permutations(range(gr.n)))
    index = {s: k for k, s in enumerate(basis)}
    a2 = [gr.alexander2(s) for s in basis]
    mm = [gr.maslov(s) for s in basis]
    diff = {}
    for k, s in enumerate(basis):
        ts = _target_sets(gr, s, allow_x)
        if ts:
            diff[k] = frozenset(index[t] for t in ts)
    return FilteredComplex(basis, a2, mm, diff, g)


def differential(g: GridDiagram, budget: Budget = DEFAULT_BUDGET) -> FilteredComplex:
    """The fully blocked complex: empty rectangles avoiding all
    markings.  Preserves the Alexander grading; drops Maslov by one."""
    return _build_complex(g, False, budget, budget.max_full, "full-complex")


def filtered_complex(g: GridDiagram, budget: Budget = DEFAULT_BUDGET) -> FilteredComplex:
    """The Alexander-filtered complex whose rectangles may cross X
    markings (used for the tau invariant)."""
    return _build_complex(g, True, budget, budget.max_tau, "filtered-complex")


# -- homology over F2 --------------------------------------------------------


def _gf2_rank(rows) -> int:
    pivots: list[int] = []
    rank = 0
    for row in rows:
        for p in pivots:
            if row ^ p < row:
                row ^= p
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def _block_ranks(states_by_m, diff_map):
    """{M: rank of the differential leaving Maslov level M}."""
    ranks = {}
    for m, xs in states_by_m.items():
        cols: dict = {}
        rows = []
        for x in xs:
            mask = 0
            for y in diff_map.get(x, ()):
                if y not in cols:
                    cols[y] = 1 << len(cols)
                mask |= cols[y]
            if mask:
                rows.append(mask)
        if rows:
            ranks[m] = _gf2_rank(rows)
    return ranks


@dataclass(frozen=True)
class BigradedRanks:
    """Map (Alexander, Maslov) -> F2 rank; Alexander stored doubled."""

    ranks: tuple  # sorted ((a2, m), rank) pairs
    grid_size: int
    components: int

    def rank(self, a, m) -> int:
        a2 = int(2 * Fraction(a))
        return dict(self.ranks).get((a2, m), 0)

    def items(self):
        for (a2, m), r in self.ranks:
            a = Fraction(a2, 2)
            yield (int(a) if a.denominator == 1 else a), m, r

    def total_rank(self) -> int:
        return sum(r for _, r in self.ranks)

    def top_alexander(self):
        a = Fraction(max(a2 for (a2, _), _ in self.ranks), 2)
        return int(a) if a.denominator == 1 else a

    def to_json(self):
        out = []
        for (a2, m), r in sorted(self.ranks):
            a = Fraction(a2, 2)
            out.append(
                {"A": int(a) if a.denominator == 1 else str(a), "M": m, "rank": r}
            )
        return out

    def euler_polynomial(self):
        from .alexpoly import LaurentPolynomial

        d: dict[int, int] = {}
        for (a2, m), r in self.ranks:
            d[a2] = d.get(a2, 0) + (r if m % 2 == 0 else -r)
        return LaurentPolynomial.from_dict(d)


def _divide_tensor_factor(table: dict, K: int) -> dict:
    """Solve  tilde = hat * V^K  for the hat table, where V contributes
    bigrading shifts (A2, M) -> (A2 - 2k, M - k) with weight C(K, k)."""
    from math import comb

    out: dict = {}
    for (a2, m) in sorted(table, key=lambda t: (-t[0], -t[1])):
        val = table[(a2, m)]
        for k in range(1, K + 1):
            val -= comb(K, k) * out.get((a2 + 2 * k, m + k), 0)
    # second pass is unnecessary: traversal order guarantees dependencies
        if val < 0:
            raise AssertionError("tensor-factor division failed")
        if val:
            out[(a2, m)] = val
    return out


def hfk_hat(g: GridDiagram, budget: Budget = DEFAULT_BUDGET) -> BigradedRanks:
    """Bigraded F2 ranks of the hat invariant."""
    cx = differential(g, budget)
    gr = Gradings(g)
    by_a: dict[int, dict[int, list[int]]] = {}
    for k in range(len(cx.basis)):
        by_a.setdefault(cx.alexander2[k], {}).setdefault(cx.maslov[k], []).append(k)
    table = {}
    for a2, by_m in by_a.items():
        ranks = _block_ranks(by_m, cx.diff)
        for m, xs in by_m.items():
            h = len(xs) - ranks.get(m, 0) - ranks.get(m + 1, 0)
            assert h >= 0
            if h:
                table[(a2, m)] = h
    hat = _divide_tensor_factor(table, gr.n - gr.ncomp)
    return BigradedRanks(tuple(sorted(hat.items())), gr.n, gr.ncomp)


def euler_polynomial(g: GridDiagram, budget: Budget = DEFAULT_BUDGET):
    """Graded Euler characteristic of the hat invariant, computed at the
    chain level (no homology needed): the blocked model's characteristic
    divided by (1 - 1/T)^(n-l)."""
    from .alexpoly import LaurentPolynomial

    gr = Gradings(g)
    budget.check(gr.n, budget.max_euler, "euler-characteristic")
    chi: dict[int, int] = {}
    for s in itertools.permutations(range(gr.n)):
        a2 = gr.alexander2(s)
        chi[a2] = chi.get(a2, 0) + (1 if gr.maslov(s) % 2 == 0 else -1)
    poly = LaurentPolynomial.from_dict(chi)
    denom = LaurentPolynomial.from_dict({0: 1, -2: -1})
    for _ in range(gr.n - gr.ncomp):
        poly = _exact_poly_div(poly, denom)
    return poly


def _exact_poly_div(p, q):
    from .alexpoly import LaurentPolynomial

    if p.is_zero():
        return p
    out: dict[int, int] = {}
    rem = p.as_dict()
    qtop, qc = q.coeffs[-1]
    while rem:
        e = max(rem)
        c = rem[e]
        assert c % qc == 0, "non-exact polynomial division"
        k = e - qtop
        f = c // qc
        out[k] = f
        for qe, qcf in q.coeffs:
            ne = qe + k
            v = rem.get(ne, 0) - qcf * f
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return LaurentPolynomial.from_dict(out)


def genus(g: GridDiagram, budget: Budget = DEFAULT_BUDGET) -> int:
    """Seifert genus: the top Alexander grading carrying homology."""
    if components_of_grid(g) != 1:
        raise ValueError("genus is defined here for knots only")
    top = hfk_hat(g, budget).top_alexander()
    return int(top)


# -- top-stratum computation -------------------------------------------------


def _search_states(gr: Gradings, budget: Budget, collect_at=None):
    """Branch-and-bound over the winding matrix.

    With collect_at=None, returns the maximal doubled Alexander grading.
    Otherwise returns all states whose doubled grading is >= collect_at.
    """
    n = gr.n
    W = gr.W2
    suffix = [0] * (n + 1)
    for c in range(n - 1, -1, -1):
        suffix[c] = suffix[c + 1] + max(W[c])

    nodes = 0
    best = -(10 ** 9)
    target = None if collect_at is None else collect_at - gr._a_const2
    out: list[tuple] = []
    perm: list[int] = []

    def search(col, used, acc):
        nonlocal nodes, best
        nodes += 1
        if nodes > budget.max_nodes:
            raise BudgetError("top-stratum search exceeded the node budget")
        if col == n:
            if target is None:
                best = max(best, acc)
            else:
                out.append(tuple(perm))
            return
        bound = acc + suffix[col]
        if target is None:
            if bound < best:
                return
        elif bound < target:
            return
        for r in range(n):
            bit = 1 << r
            if not used & bit:
                perm.append(r)
                search(col + 1, used | bit, acc + W[col][r])
                perm.pop()

    search(0, 0, 0)
    if target is None:
        return best + gr._a_const2
    return out


def top_grading_ranks(g: GridDiagram, budget: Budget = DEFAULT_BUDGET):
    """Homology at the top nonzero Alexander grading, computed stratum
    by stratum without materializing the full state set.

    Returns (A_top, {maslov: rank}).
    """
    gr = Gradings(g)
    budget.check(gr.n, budget.max_top, "top-stratum")
    a2 = _search_states(gr, budget)
    while True:
        states = [
            s for s in _search_states(gr, budget, collect_at=a2)
            if gr.alexander2(s) == a2
        ]
        if not states:
            a2 -= 1
            continue
        index = {s: k for k, s in enumerate(states)}
        diff = {}
        for k, s in enumerate(states):
            ts = _target_sets(gr, s, allow_x=False)
            if ts:
                diff[k] = frozenset(index[t] for t in ts)
        by_m: dict[int, list[int]] = {}
        for k, s in enumerate(states):
            by_m.setdefault(gr.maslov(s), []).append(k)
        ranks = _block_ranks(by_m, diff)
        out = {}
        for m, xs in by_m.items():
            h = len(xs) - ranks.get(m, 0) - ranks.get(m + 1, 0)
            if h:
                out[m] = h
        if out:
            a = Fraction(a2, 2)
            return (int(a) if a.denominator == 1 else a), out
        a2 -= 1


# -- tau ---------------------------------------------------------------------


def _filtered_reduce(cx: FilteredComplex):
    """Morse reduction cancelling minimal-filtration-drop edges first.

    Cancelling an edge whose Alexander drop is minimal produces only new
    edges with at least that drop, so every intermediate complex stays
    filtered and the final generators carry meaningful filtration
    levels.  Returns the surviving indices (zero differential).
    """
    diff: dict[int, set] = {x: set(ys) for x, ys in cx.diff.items()}
    din: dict[int, set] = {}
    a2 = cx.alexander2
    buckets: dict[int, set] = {}

    def drop(x, y):
        return a2[x] - a2[y]

    for x, ys in diff.items():
        for y in ys:
            din.setdefault(y, set()).add(x)
            buckets.setdefault(drop(x, y), set()).add((x, y))

    alive = set(range(len(cx.basis)))

    def del_edge(x, y):
        buckets[drop(x, y)].discard((x, y))
        diff[x].discard(y)
        if not diff[x]:
            del diff[x]
        din[y].discard(x)
        if not din[y]:
            del din[y]

    def add_edge(x, y):
        buckets.setdefault(drop(x, y), set()).add((x, y))
        diff.setdefault(x, set()).add(y)
        din.setdefault(y, set()).add(x)

    while True:
        level = None
        for d in sorted(buckets):
            if buckets[d]:
                level = d
                break
        if level is None:
            return alive
        a, b = min(buckets[level])
        da = frozenset(diff[a])
        ins = frozenset(din.get(b, ())) - {a}
        # d(u) += d(a) over F2 for every other u hitting b
        for u in ins:
            for y in da:
                if y in diff.get(u, ()):
                    del_edge(u, y)
                else:
                    add_edge(u, y)
        # delete the pair and every edge touching it
        for y in list(diff.get(a, ())):
            del_edge(a, y)
        for u in list(din.get(a, ())):
            del_edge(u, a)
        for y in list(diff.get(b, ())):
            del_edge(b, y)
        for u in list(din.get(b, ())):
            del_edge(u, b)
        alive.discard(a)
        alive.discard(b)


def tau(g: GridDiagram, budget: Budget = DEFAULT_BUDGET) -> int:
    """The concordance invariant read from the Alexander filtration: the
    filtration level of the Maslov-zero generator surviving filtered
    reduction."""
    if components_of_grid(g) != 1:
        raise ValueError("tau is defined for knots")
    cx = filtered_complex(g, budget)
    alive = _filtered_reduce(cx)
    zeros = [k for k in alive if cx.maslov[k] == 0]
    assert len(zeros) == 1, f"expected one Maslov-zero survivor, got {len(zeros)}"
    a2 = cx.alexander2[zeros[0]]
    assert a2 % 2 == 0
    return a2 // 2


def tau_by_subcomplex_scan(g: GridDiagram, budget: Budget = DEFAULT_BUDGET) -> int:
    """Independent route to tau: the smallest filtration level m whose
    subcomplex carries a Maslov-zero cycle that is not a boundary in the
    full complex."""
    if components_of_grid(g) != 1:
        raise ValueError("tau is defined for knots")
    cx = filtered_complex(g, budget)
    m0 = [k for k in range(len(cx.basis)) if cx.maslov[k] == 0]
    m1 = [k for k in range(len(cx.basis)) if cx.maslov[k] == 1]
    col = {k: 1 << i for i, k in enumerate(sorted(m0))}

    boundary_rows = []
    for x in m1:
        mask = 0
        for y in cx.diff.get(x, ()):
            mask |= col[y]
        if mask:
            boundary_rows.append(mask)

    def kernel_vectors(indices):
        """Basis of cycles supported on the given M=0 states."""
        tcol: dict = {}
        rows = []
        for x in indices:
            mask = 0
            for y in cx.diff.get(x, ()):
                if y not in tcol:
                    tcol[y] = 1 << len(tcol)
                mask |= tcol[y]
            rows.append((mask, col[x]))
        # Gaussian elimination tracking combinations
        pivots: list[tuple[int, int]] = []
        kers = []
        for mask, tag in rows:
            for pm, pt in pivots:
                if mask ^ pm < mask:
                    mask ^= pm
                    tag ^= pt
            if mask:
                pivots.append((mask, tag))
                pivots.sort(key=lambda t: -t[0])
            else:
                kers.append(tag)
        return kers

    levels = sorted({cx.alexander2[k] for k in m0})
    base = _gf2_rank(list(boundary_rows))
    for a2 in levels:
        sub = [k for k in m0 if cx.alexander2[k] <= a2]
        kers = kernel_vectors(sub)
        if kers and _gf2_rank(boundary_rows + kers) > base:
            assert a2 % 2 == 0
            return a2 // 2
    raise AssertionError("no surviving Maslov-zero class found")
