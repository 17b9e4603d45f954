"""Grid diagrams: n x n presentations of links by X and O markings.

Conventions: X[i] and O[i] are the rows of the markings in column i,
vertical segments are oriented from X to O, horizontal segments from O
to X, and verticals always cross over horizontals.  Rows are indexed
from the bottom.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ._cells import Builder
from .pdcode import DiagramError, PDCode


@dataclass(frozen=True)
class GridDiagram:
    X: tuple[int, ...]
    O: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(self.X))
        object.__setattr__(self, "O", tuple(self.O))

    @property
    def n(self) -> int:
        return len(self.X)

    def __str__(self) -> str:
        return emit_grid(self)

    def ascii_art(self) -> str:
        rows = []
        for r in range(self.n - 1, -1, -1):
            row = []
            for c in range(self.n):
                row.append("X" if self.X[c] == r else "O" if self.O[c] == r else ".")
            rows.append(" ".join(row))
        return "\n".join(rows)


def validate_grid(g: GridDiagram) -> GridDiagram:
    n = g.n
    if n < 2:
        raise DiagramError("grid size must be at least 2")
    if len(g.O) != n:
        raise DiagramError("X and O have different lengths")
    for name, perm in (("X", g.X), ("O", g.O)):
        if sorted(perm) != list(range(n)):
            raise DiagramError(f"{name} is not a permutation of 0..{n - 1}")
    for i in range(n):
        if g.X[i] == g.O[i]:
            raise DiagramError(f"shared cell in column {i}")
    return g


def emit_grid(g: GridDiagram) -> str:
    xs = ",".join(str(v) for v in g.X)
    os_ = ",".join(str(v) for v in g.O)
    return f"X:{xs} / O:{os_}"


def parse_grid(text: str) -> GridDiagram:
    try:
        xpart, opart = text.split("/")
        xs = xpart.strip()
        os_ = opart.strip()
        assert xs.startswith("X:") and os_.startswith("O:")
        X = tuple(int(v) for v in xs[2:].split(","))
        O = tuple(int(v) for v in os_[2:].split(","))
    except (ValueError, AssertionError) as exc:
        raise DiagramError(f"malformed grid string: {text!r}") from exc
    return validate_grid(GridDiagram(X, O))


def grid_components(g: GridDiagram) -> list[list[int]]:
    """Column cycles of the link components (column -> row -> column)."""
    seen = set()
    comps = []
    for start in range(g.n):
        if start in seen:
            continue
        cyc = []
        c = start
        while c not in seen:
            seen.add(c)
            cyc.append(c)
            c = g.X.index(g.O[c])
        comps.append(cyc)
    return comps


def components_of_grid(g: GridDiagram) -> int:
    return len(grid_components(g))


def reverse_grid_component(g: GridDiagram, comp_index: int) -> GridDiagram:
    """Reverse the orientation of one component by exchanging its X and
    O markings (every row met by the component belongs to it, so the
    swap stays column- and row-valid)."""
    cols = grid_components(g)[comp_index]
    X, O = list(g.X), list(g.O)
    for c in cols:
        X[c], O[c] = O[c], X[c]
    return validate_grid(GridDiagram(tuple(X), tuple(O)))


def grid_to_pd(g: GridDiagram) -> PDCode:
    """Convert to a PD code; verticals cross over horizontals."""
    g = validate_grid(g)
    n = g.n
    xcol = {g.X[i]: i for i in range(n)}  # row -> column of its X
    ocol = {g.O[i]: i for i in range(n)}

    def between(v, a, b):
        lo, hi = (a, b) if a < b else (b, a)
        return lo < v < hi

    crossings = [
        (i, r)
        for i in range(n)
        for r in range(n)
        if between(r, g.X[i], g.O[i]) and between(i, ocol[r], xcol[r])
    ]

    b = Builder()
    vrows = {i: sorted(r for (c, r) in crossings if c == i) for i in range(n)}
    hcols = {r: sorted(c for (c, r2) in crossings if r2 == r) for r in range(n)}
    vpieces = {i: [b.fresh() for _ in range(len(vrows[i]) + 1)] for i in range(n)}
    hpieces = {r: [b.fresh() for _ in range(len(hcols[r]) + 1)] for r in range(n)}

    head_slots = []
    for ci, (i, r) in enumerate(crossings):
        vi = vrows[i].index(r)
        hi = hcols[r].index(i)
        south, north = vpieces[i][vi], vpieces[i][vi + 1]
        west, east = hpieces[r][hi], hpieces[r][hi + 1]
        # counterclockwise (S, E, N, W); the vertical pair (slots 0, 2) is over
        b.cross((south, east, north, west), 0)
        # orientation hints: verticals flow X -> O, horizontals O -> X
        head_slots.append((ci, 0 if g.X[i] < g.O[i] else 2))
        head_slots.append((ci, 3 if ocol[r] < xcol[r] else 1))

    for i in range(n):
        for r, piece in (
            (min(g.X[i], g.O[i]), vpieces[i][0]),
            (max(g.X[i], g.O[i]), vpieces[i][-1]),
        ):
            lo, hi = sorted((ocol[r], xcol[r]))
            assert i in (lo, hi)
            b.weld(piece, hpieces[r][0] if i == lo else hpieces[r][-1])

    return b.finish(head_slots=head_slots)


# -- moves -----------------------------------------------------------------


def rotate_grid(g: GridDiagram, dc: int, dr: int) -> GridDiagram:
    """Cyclically translate columns by dc and rows by dr (a torus move)."""
    n = g.n
    X = [0] * n
    O = [0] * n
    for i in range(n):
        X[(i + dc) % n] = (g.X[i] + dr) % n
        O[(i + dc) % n] = (g.O[i] + dr) % n
    return GridDiagram(tuple(X), tuple(O))


def stabilize(g: GridDiagram, col: int) -> GridDiagram:
    """Stabilize at the X marking in `col`: replace it by a 2x2 corner
    with markings O(i,j), X(i,j+1), X(i+1,j), enlarging the grid."""
    n = g.n
    i, j = col, g.X[col]
    X2 = [None] * (n + 1)
    O2 = [None] * (n + 1)
    for k in range(n):
        nk = k + (1 if k >= i else 0)
        X2[nk] = g.X[k] + (1 if g.X[k] >= j else 0)
        O2[nk] = g.O[k] + (1 if g.O[k] >= j else 0)
    assert X2[i + 1] == j + 1
    X2[i + 1] = j
    X2[i] = j + 1
    O2[i] = j
    return validate_grid(GridDiagram(tuple(X2), tuple(O2)))


_BLOCK = ((0, 0), (0, 1), (1, 0), (1, 1))


def _destabilize_at_origin(g: GridDiagram):
    """Destabilize the 2x2 block with lower-left cell (0,0), if legal."""
    cells = {}
    for (i, j) in _BLOCK:
        if g.X[i] == j:
            cells[(i, j)] = "X"
        elif g.O[i] == j:
            cells[(i, j)] = "O"
    if len(cells) != 3:
        return None
    empty = next(c for c in _BLOCK if c not in cells)
    odd_pos = (1 - empty[0], 1 - empty[1])
    odd = cells[odd_pos]
    majors = [k for c, k in cells.items() if c != odd_pos]
    if majors[0] != majors[1] or majors[0] == odd:
        return None
    oc, orow = odd_pos

    def shift(v):
        return None if v is None else v - (1 if v > orow else 0)

    X2, O2 = [], []
    for k in range(g.n):
        if k == oc:
            continue
        xv, ov = g.X[k], g.O[k]
        if k <= 1 and (k, xv) in cells:
            xv = None
        if k <= 1 and (k, ov) in cells:
            ov = None
        X2.append(shift(xv))
        O2.append(shift(ov))
    target = X2 if majors[0] == "X" else O2
    if target[0] is not None:
        return None
    target[0] = 0
    if any(v is None for v in X2) or any(v is None for v in O2):
        return None
    try:
        return validate_grid(GridDiagram(tuple(X2), tuple(O2)))
    except DiagramError:
        return None


def destabilizations(g: GridDiagram) -> list[GridDiagram]:
    """All grids reachable by one destabilization, searched over torus
    translations (deterministic order)."""
    n = g.n
    seen = set()
    out = []
    for dc in range(n):
        for dr in range(n):
            d = _destabilize_at_origin(rotate_grid(g, dc, dr))
            if d is not None and (d.X, d.O) not in seen:
                seen.add((d.X, d.O))
                out.append(d)
    return out


def _commutable_cols(g: GridDiagram, i: int) -> bool:
    """Columns i, i+1 commute when their row spans are strictly nested
    or disjoint (shared endpoints are conservatively rejected)."""
    j = (i + 1) % g.n
    a = sorted((g.X[i], g.O[i]))
    b = sorted((g.X[j], g.O[j]))
    if a[1] < b[0] or b[1] < a[0]:
        return True
    if (a[0] < b[0] and b[1] < a[1]) or (b[0] < a[0] and a[1] < b[1]):
        return True
    return False


def commute_cols(g: GridDiagram, i: int) -> GridDiagram:
    j = (i + 1) % g.n
    X, O = list(g.X), list(g.O)
    X[i], X[j] = X[j], X[i]
    O[i], O[j] = O[j], O[i]
    return GridDiagram(tuple(X), tuple(O))


def transpose_grid(g: GridDiagram) -> GridDiagram:
    """Exchange the roles of rows and columns (same link)."""
    n = g.n
    X = [0] * n
    O = [0] * n
    for i in range(n):
        X[g.X[i]] = i
        O[g.O[i]] = i
    return GridDiagram(tuple(X), tuple(O))


def simplify(g: GridDiagram, seed: int = 2024, rounds: int = 600) -> GridDiagram:
    """Shrink the grid by destabilizations, stirring with commutations
    and translations; deterministic for a fixed seed."""
    rng = random.Random(seed)
    cur = best = g
    stale = 0
    for _ in range(rounds):
        ds = destabilizations(cur)
        if ds:
            cur = rng.choice(ds)
            if cur.n < best.n:
                best, stale = cur, 0
            continue
        stale += 1
        if stale > 80:
            break
        n = cur.n
        choices = [("c", i) for i in range(n) if _commutable_cols(cur, i)]
        t = transpose_grid(cur)
        choices += [("r", i) for i in range(n) if _commutable_cols(t, i)]
        choices.append(("rot", (rng.randrange(n), rng.randrange(n))))
        kind, arg = rng.choice(choices)
        if kind == "c":
            cur = commute_cols(cur, arg)
        elif kind == "r":
            cur = transpose_grid(commute_cols(transpose_grid(cur), arg))
        else:
            cur = rotate_grid(cur, *arg)
    return best


def random_grid(n: int, rng: random.Random) -> GridDiagram:
    """A uniformly random valid grid of size n."""
    while True:
        X = list(range(n))
        O = list(range(n))
        rng.shuffle(X)
        rng.shuffle(O)
        if all(x != o for x, o in zip(X, O)):
            return GridDiagram(tuple(X), tuple(O))


# -- rectilinear builder (plat words to grids) -----------------------------


class _Rect:
    """Rectilinear curve collector: one vertical per column, one
    horizontal per row; converted to a grid at the end.  Build rows
    increase downward and are flipped on output."""

    def __init__(self):
        self.verticals: list[tuple[Fraction, int, int]] = []
        self.horizontals: list[tuple[int, Fraction, Fraction]] = []

    def to_grid(self) -> GridDiagram:
        xs = sorted({v[0] for v in self.verticals})
        rows = sorted({h[0] for h in self.horizontals})
        if len(xs) != len(self.verticals):
            raise DiagramError("rectilinear build reused a column")
        if len(rows) != len(self.horizontals):
            raise DiagramError("rectilinear build reused a row")
        if len(xs) != len(rows):
            raise DiagramError("rectilinear build is not square")
        xi = {x: k for k, x in enumerate(xs)}
        m = len(rows)
        ri = {r: m - 1 - k for k, r in enumerate(rows)}

        corners: dict[tuple[int, int], list] = {}
        segs = []
        for (x, r1, r2) in self.verticals:
            s = ("v", xi[x], ri[r1], ri[r2])
            segs.append(s)
            corners.setdefault((xi[x], ri[r1]), []).append(s)
            corners.setdefault((xi[x], ri[r2]), []).append(s)
        for (r, x1, x2) in self.horizontals:
            s = ("h", ri[r], xi[x1], xi[x2])
            segs.append(s)
            corners.setdefault((xi[x1], ri[r]), []).append(s)
            corners.setdefault((xi[x2], ri[r]), []).append(s)
        for c, ss in corners.items():
            if len(ss) != 2 or ss[0][0] == ss[1][0]:
                raise DiagramError(f"rectilinear curve does not close up at {c}")

        n = len(xs)
        X = [None] * n
        O = [None] * n
        visited = set()
        for start in segs:
            if start in visited or start[0] != "v":
                continue
            seg = start
            pos = (seg[1], max(seg[2], seg[3]))
            while seg not in visited:
                visited.add(seg)
                if seg[0] == "v":
                    ends = [(seg[1], seg[2]), (seg[1], seg[3])]
                else:
                    ends = [(seg[2], seg[1]), (seg[3], seg[1])]
                end = ends[0] if ends[1] == pos else ends[1]
                if seg[0] == "v":
                    X[seg[1]] = pos[1]
                    O[seg[1]] = end[1]
                seg = next(s for s in corners[end] if s != seg)
                pos = end
        if any(v is None for v in X) or any(v is None for v in O):
            raise DiagramError("rectilinear traversal missed segments")
        return validate_grid(GridDiagram(tuple(X), tuple(O)))


def grid_from_plat_word(word, width: int = 4) -> GridDiagram:
    """Grid diagram of the plat closure of a braid word (syllables act
    on adjacent strands)."""
    if width % 2:
        raise ValueError("plat needs even width")
    rect = _Rect()
    used: set[Fraction] = set()
    row = 0
    lanes: list[tuple[Fraction, int]] = []  # (column, row its vertical began)

    def fresh_between(lo: Fraction, hi: Fraction) -> Fraction:
        x = (lo + hi) / 2
        while x in used:
            x = (lo + x) / 2
        used.add(x)
        return x

    for k in range(0, width, 2):
        xa, xb = Fraction(k), Fraction(k + 1)
        used.update((xa, xb))
        rect.horizontals.append((row, xa, xb))
        lanes.append((xa, row))
        lanes.append((xb, row))
        row += 1
    for (pos, exp) in word:
        p = pos - 1
        if not 0 <= p < len(lanes) - 1:
            raise ValueError(f"braid position {pos} out of range")
        for _ in range(abs(exp)):
            (xl, rl), (xr, rr) = lanes[p], lanes[p + 1]
            if exp > 0:
                # right lane stays (over strand); left lane jogs across it
                bound = lanes[p + 2][0] if p + 2 < len(lanes) else xr + 1
                xnew = fresh_between(xr, bound)
                rect.verticals.append((xl, rl, row))
                rect.horizontals.append((row, xl, xnew))
                lanes[p], lanes[p + 1] = (xr, rr), (xnew, row)
            else:
                bound = lanes[p - 1][0] if p - 1 >= 0 else xl - 1
                xnew = fresh_between(bound, xl)
                rect.verticals.append((xr, rr, row))
                rect.horizontals.append((row, xnew, xr))
                lanes[p], lanes[p + 1] = (xnew, row), (xl, rl)
            row += 1
    for k in range(0, width, 2):
        (xa, ra), (xb, rb) = lanes[k], lanes[k + 1]
        rect.verticals.append((xa, ra, row))
        rect.verticals.append((xb, rb, row))
        rect.horizontals.append((row, xa, xb))
        row += 1
    return rect.to_grid()
