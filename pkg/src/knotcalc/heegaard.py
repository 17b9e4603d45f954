"""Doubly-pointed Heegaard diagrams as combinatorial region complexes.

A diagram is a polygonal decomposition of a closed oriented surface:
regions are cyclic lists of oriented edge sides, edges lie on named
alpha or beta curves, and vertices are the intersection points between
one alpha and one beta curve.  Two marked regions hold the basepoints.

Domains are integer vectors over regions.  The module provides the
polygon Euler measure, point measures at generators, the combinatorial
Maslov index e(D) + n_x(D) + n_y(D), an exact integer solver for
domains connecting two generators, and the lattice of periodic domains.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction


class HeegaardError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    curve: str
    tail: str
    head: str


class HeegaardDiagram:
    def __init__(self, name, alpha, beta, edges, regions, basepoints):
        self.name = name
        self.alpha = tuple(alpha)
        self.beta = tuple(beta)
        self.edges: dict[str, Edge] = {
            k: Edge(v["curve"], v["from"], v["to"]) for k, v in edges.items()
        }
        self.regions: dict[str, tuple] = {
            k: tuple(self._parse_side(s) for s in sides) for k, sides in regions.items()
        }
        self.basepoints = dict(basepoints)
        self.region_names = sorted(self.regions)
        self._validate()

    @staticmethod
    def _parse_side(s: str):
        if s.startswith("+"):
            return (1, s[1:])
        if s.startswith("-"):
            return (-1, s[1:])
        raise HeegaardError(f"region side {s!r} must begin with + or -")

    # -- structure -----------------------------------------------------

    def curve_family(self, curve: str) -> str:
        if curve in self.alpha:
            return "alpha"
        if curve in self.beta:
            return "beta"
        raise HeegaardError(f"unknown curve {curve!r}")

    def curve_edges(self, curve: str) -> list[str]:
        return sorted(e for e, ed in self.edges.items() if ed.curve == curve)

    def vertices(self) -> list[str]:
        vs = set()
        for ed in self.edges.values():
            vs.add(ed.tail)
            vs.add(ed.head)
        return sorted(vs)

    def _validate(self):
        # every edge used exactly once per side
        sides: dict[tuple, str] = {}
        for rname, boundary in self.regions.items():
            for (sign, e) in boundary:
                if e not in self.edges:
                    raise HeegaardError(f"region {rname} uses unknown edge {e}")
                key = (e, sign)
                if key in sides:
                    raise HeegaardError(f"non-manifold gluing: edge side {key} reused")
                sides[key] = rname
        for e in self.edges:
            for sign in (1, -1):
                if (e, sign) not in sides:
                    raise HeegaardError(
                        f"non-manifold gluing: edge {e} is missing its "
                        f"{'positive' if sign > 0 else 'negative'} side"
                    )
        self._side_region = sides

        # region boundaries must be closed edge paths; collect corners
        self._corners: dict[str, list] = {v: [] for v in self.vertices()}
        for rname, boundary in self.regions.items():
            k = len(boundary)
            for idx in range(k):
                s1, e1 = boundary[idx]
                s2, e2 = boundary[(idx + 1) % k]
                v = self.edges[e1].head if s1 > 0 else self.edges[e1].tail
                v2 = self.edges[e2].tail if s2 > 0 else self.edges[e2].head
                if v != v2:
                    raise HeegaardError(
                        f"region {rname} boundary breaks at {e1}->{e2}"
                    )
                # corner between the incoming end of e1 and outgoing end of e2
                end_in = (e1, "head" if s1 > 0 else "tail")
                end_out = (e2, "tail" if s2 > 0 else "head")
                self._corners[v].append((rname, idx, end_in, end_out))

        for v, cs in self._corners.items():
            if len(cs) != 4:
                raise HeegaardError(f"vertex {v} has {len(cs)} corners, expected 4")

        # the corner adjacencies must close into a 4-cycle of edge ends
        # alternating between the alpha and the beta family
        self._vertex_curves = {}
        for v, cs in self._corners.items():
            nxt = {}
            for (_, _, end_in, end_out) in cs:
                if end_in in nxt:
                    raise HeegaardError(f"vertex {v} corner structure is not a disk fan")
                nxt[end_in] = end_out
            ends = list(nxt)
            if len(ends) != 4:
                raise HeegaardError(f"vertex {v} has a degenerate rotation")
            start = ends[0]
            cyc = [start]
            cur = nxt[start]
            while cur != start:
                # the next corner starts at the same physical end
                cyc.append(cur)
                if cur not in nxt:
                    raise HeegaardError(f"vertex {v} rotation does not close up")
                cur = nxt[cur]
                if len(cyc) > 4:
                    raise HeegaardError(f"vertex {v} rotation does not close up")
            if len(cyc) != 4:
                raise HeegaardError(f"vertex {v} rotation splits; not a single 4-cycle")
            fams = [self.curve_family(self.edges[e].curve) for (e, _) in cyc]
            if fams[0] == fams[1] or fams[1] != fams[3] or fams[0] != fams[2]:
                raise HeegaardError(
                    f"vertex {v} ends do not alternate between alpha and beta curves"
                )
            curves = {self.edges[e].curve for (e, _) in cyc}
            acs = [c for c in curves if self.curve_family(c) == "alpha"]
            bcs = [c for c in curves if self.curve_family(c) == "beta"]
            if len(acs) != 1 or len(bcs) != 1:
                raise HeegaardError(f"vertex {v} must join exactly one alpha and one beta curve")
            self._vertex_curves[v] = (acs[0], bcs[0])

        # every curve is a coherently oriented cycle
        for curve in self.alpha + self.beta:
            ce = self.curve_edges(curve)
            if not ce:
                raise HeegaardError(f"curve {curve} has no edges")
            outs = {}
            for e in ce:
                ed = self.edges[e]
                if ed.tail in outs:
                    raise HeegaardError(f"curve {curve} is not coherently oriented")
                outs[ed.tail] = e
            start = self.edges[ce[0]].tail
            seen = set()
            v = start
            while True:
                e = outs.get(v)
                if e is None or e in seen:
                    break
                seen.add(e)
                v = self.edges[e].head
            if len(seen) != len(ce) or v != start:
                raise HeegaardError(f"curve {curve} does not close into one cycle")

        if len(self.alpha) != len(self.beta):
            raise HeegaardError("alpha and beta curve counts differ")

        V = len(self.vertices())
        E = len(self.edges)
        F = len(self.regions)
        chi = V - E + F
        if chi % 2 != 0 or chi > 0:
            raise HeegaardError(f"Euler characteristic {chi} is not that of a closed surface of positive genus")
        self.genus = (2 - chi) // 2
        if len(self.alpha) != self.genus:
            raise HeegaardError(
                f"curve inventory ({len(self.alpha)} alpha) does not match genus {self.genus}"
            )

        for bp in ("z", "w"):
            if bp not in self.basepoints:
                raise HeegaardError(f"missing basepoint {bp}")
            if self.basepoints[bp] not in self.regions:
                raise HeegaardError(f"basepoint {bp} does not lie in a region")

    # -- generators ------------------------------------------------------

    def generator(self, points) -> tuple:
        """Validate a tuple of vertices as a generator: one point on each
        alpha curve, hitting every beta curve once."""
        pts = tuple(points)
        if len(pts) != self.genus:
            raise HeegaardError("generator needs one point per alpha curve")
        acs = [self._vertex_curves[p][0] for p in pts]
        bcs = [self._vertex_curves[p][1] for p in pts]
        if sorted(acs) != sorted(self.alpha) or sorted(bcs) != sorted(self.beta):
            raise HeegaardError("generator must cover every curve exactly once")
        return pts

    # -- measures --------------------------------------------------------

    def euler_measure(self, domain: dict) -> Fraction:
        """Sum of multiplicities times 1 - n/2 over the 2n-gon regions."""
        tot = Fraction(0)
        for rname, mult in domain.items():
            if not mult:
                continue
            size = len(self.regions[rname])
            if size % 2:
                raise HeegaardError(f"region {rname} is not an even polygon")
            tot += mult * (1 - Fraction(size, 4))
        return tot

    def point_measure_vertex(self, domain: dict, v: str) -> Fraction:
        """Average multiplicity of the four regions at the corners of v."""
        tot = Fraction(0)
        for (rname, _, _, _) in self._corners[v]:
            tot += domain.get(rname, 0)
        return tot / 4

    def point_measure(self, domain: dict, generator) -> Fraction:
        pts = self.generator(generator)
        return sum((self.point_measure_vertex(domain, p) for p in pts), Fraction(0))

    def multiplicity(self, domain: dict, basepoint: str) -> int:
        return domain.get(self.basepoints[basepoint], 0)

    # -- boundary structure ------------------------------------------------

    def edge_jump(self, domain: dict, e: str) -> int:
        """Coefficient of edge e in the boundary of the domain."""
        left = self._side_region[(e, 1)]
        right = self._side_region[(e, -1)]
        return domain.get(left, 0) - domain.get(right, 0)

    def boundary_connects(self, domain: dict, x, y) -> bool:
        """Does the boundary run from x to y along alpha curves and from
        y to x along beta curves?"""
        x = self.generator(x)
        y = self.generator(y)
        try:
            self._check_boundary(domain, x, y)
        except HeegaardError:
            return False
        return True

    def _check_boundary(self, domain, x, y):
        for curve in self.alpha + self.beta:
            fam = self.curve_family(curve)
            for v in self.vertices():
                if self._vertex_curves[v][0 if fam == "alpha" else 1] != curve:
                    continue
                flow = 0
                for e in self.curve_edges(curve):
                    ed = self.edges[e]
                    if ed.head == v:
                        flow += self.edge_jump(domain, e)
                    if ed.tail == v:
                        flow -= self.edge_jump(domain, e)
                if fam == "alpha":
                    want = (1 if v in y else 0) - (1 if v in x else 0)
                else:
                    want = (1 if v in x else 0) - (1 if v in y else 0)
                if flow != want:
                    raise HeegaardError(
                        f"boundary mismatch at {v} on {curve}: flow {flow}, expected {want}"
                    )

    def maslov_index(self, domain: dict, x, y) -> Fraction:
        """The combinatorial index e(D) + n_x(D) + n_y(D) for a domain
        connecting x to y."""
        x = self.generator(x)
        y = self.generator(y)
        self._check_boundary(domain, x, y)
        return self.euler_measure(domain) + self.point_measure(domain, x) + self.point_measure(domain, y)

    # -- json ------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "edges": {
                e: {"curve": ed.curve, "from": ed.tail, "to": ed.head}
                for e, ed in sorted(self.edges.items())
            },
            "vertices": self.vertices(),
            "regions": {
                r: [("+" if s > 0 else "-") + e for (s, e) in sides]
                for r, sides in sorted(self.regions.items())
            },
            "basepoints": dict(sorted(self.basepoints.items())),
        }

    @staticmethod
    def from_json(data: dict) -> "HeegaardDiagram":
        return HeegaardDiagram(
            data.get("name", "diagram"),
            data["alpha"],
            data["beta"],
            data["edges"],
            data["regions"],
            data["basepoints"],
        )


def load_diagram(path) -> HeegaardDiagram:
    with open(path) as fh:
        return HeegaardDiagram.from_json(json.load(fh))


def validate_diagram(h: HeegaardDiagram):
    """Validation happens at construction; returns (diagram, genus)."""
    return h, h.genus


# -- integer linear algebra ---------------------------------------------


def _smith_solve(rows, rhs):
    """Solve A x = b over the integers.

    Returns (particular_solution, kernel_basis) or None if unsolvable.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    A = [list(r) for r in rows]
    b = list(rhs)
    # V tracks column operations so kernel/solution return to原 basis
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i1, i2, k):
        A[i2] = [a - k * c for a, c in zip(A[i2], A[i1])]
        b[i2] -= k * b[i1]

    def col_op(j1, j2, k):
        for r in A:
            r[j2] -= k * r[j1]
        for r in V:
            r[j2] -= k * r[j1]

    def swap_rows(i1, i2):
        A[i1], A[i2] = A[i2], A[i1]
        b[i1], b[i2] = b[i2], b[i1]

    def swap_cols(j1, j2):
        for r in A:
            r[j1], r[j2] = r[j2], r[j1]
        for r in V:
            r[j1], r[j2] = r[j2], r[j1]

    t = 0
    while t < min(m, n):
        # find a pivot
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    k = A[i][t] // A[t][t]
                    row_op(t, i, k)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    k = A[t][j] // A[t][t]
                    col_op(t, j, k)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        t += 1

    rank = t
    z = [0] * n
    for i in range(rank):
        if b[i] % A[i][i]:
            return None
        z[i] = b[i] // A[i][i]
    for i in range(rank, m):
        if b[i]:
            return None
    x = [sum(V[r][c] * z[c] for c in range(n)) for r in range(n)]
    kernel = [[V[r][c] for r in range(n)] for c in range(rank, n)]
    return x, kernel


# -- domain operations ----------------------------------------------------


def euler_measure(h: HeegaardDiagram, domain: dict) -> Fraction:
    return h.euler_measure(domain)


def point_measure(h: HeegaardDiagram, domain: dict, generator) -> Fraction:
    return h.point_measure(domain, generator)


def maslov_index(h: HeegaardDiagram, domain: dict, x, y) -> Fraction:
    return h.maslov_index(domain, x, y)


@dataclass
class ConnectingDomain:
    domain: dict
    delta_alexander: int
    delta_maslov: Fraction | None
    alexander_well_defined: bool
    maslov_well_defined: bool


def _domain_equations(h: HeegaardDiagram, x, y):
    """Linear system over region multiplicities expressing that the
    boundary connects x to y."""
    names = h.region_names
    col = {r: k for k, r in enumerate(names)}
    rows = []
    rhs = []
    for curve in h.alpha + h.beta:
        fam = h.curve_family(curve)
        ce = h.curve_edges(curve)
        for v in h.vertices():
            if h._vertex_curves[v][0 if fam == "alpha" else 1] != curve:
                continue
            row = [0] * len(names)
            for e in ce:
                ed = h.edges[e]
                coeff = 0
                if ed.head == v:
                    coeff += 1
                if ed.tail == v:
                    coeff -= 1
                if coeff:
                    left = h._side_region[(e, 1)]
                    right = h._side_region[(e, -1)]
                    row[col[left]] += coeff
                    row[col[right]] -= coeff
            if fam == "alpha":
                want = (1 if v in y else 0) - (1 if v in x else 0)
            else:
                want = (1 if v in x else 0) - (1 if v in y else 0)
            rows.append(row)
            rhs.append(want)
    return names, rows, rhs


def connecting_domain(h: HeegaardDiagram, x, y) -> ConnectingDomain | None:
    """Solve for a domain from x to y; returns the relative gradings.

    delta_alexander is n_z - n_w and delta_maslov is mu - 2 n_w; each is
    reported together with whether it is independent of the choice of
    solution (it is whenever the relevant measures vanish on the kernel
    lattice of the system).
    """
    x = h.generator(x)
    y = h.generator(y)
    names, rows, rhs = _domain_equations(h, x, y)
    sol = _smith_solve(rows, rhs)
    if sol is None:
        return None
    x0, kernel = sol
    dom = {r: v for r, v in zip(names, x0) if v}
    nz = h.multiplicity(dom, "z")
    nw = h.multiplicity(dom, "w")
    mu = h.maslov_index(dom, x, y)

    a_ok = True
    m_ok = True
    for kv in kernel:
        kdom = {r: v for r, v in zip(names, kv) if v}
        knz = h.multiplicity(kdom, "z")
        knw = h.multiplicity(kdom, "w")
        if knz - knw != 0:
            a_ok = False
        # the index of a periodic-type domain shifts mu by e + 2 n_p(x)
        kmu = h.euler_measure(kdom) + h.point_measure(kdom, x) + h.point_measure(kdom, y)
        if kmu - 2 * knw != 0:
            m_ok = False
    return ConnectingDomain(
        domain=dom,
        delta_alexander=nz - nw,
        delta_maslov=(mu - 2 * nw) if m_ok else None,
        alexander_well_defined=a_ok,
        maslov_well_defined=m_ok,
    )


@dataclass
class PeriodicDomain:
    domain: dict
    curve_coefficients: dict
    n_z: int
    n_w: int


def periodic_domains(h: HeegaardDiagram) -> list[PeriodicDomain]:
    """Integer basis of the lattice of domains whose boundary is a sum
    of full curves and whose w-multiplicity vanishes."""
    names = h.region_names
    col = {r: k for k, r in enumerate(names)}
    curves = list(h.alpha + h.beta)
    ncur = len(curves)
    nreg = len(names)
    rows = []
    # unknowns: region multiplicities followed by one coefficient per curve
    for curve_idx, curve in enumerate(curves):
        for e in h.curve_edges(curve):
            row = [0] * (nreg + ncur)
            left = h._side_region[(e, 1)]
            right = h._side_region[(e, -1)]
            row[col[left]] += 1
            row[col[right]] -= 1
            row[nreg + curve_idx] -= 1
            rows.append(row)
    # w-multiplicity vanishes
    wrow = [0] * (nreg + ncur)
    wrow[col[h.basepoints["w"]]] = 1
    rows.append(wrow)
    rhs = [0] * len(rows)
    sol = _smith_solve(rows, rhs)
    assert sol is not None
    _, kernel = sol
    out = []
    for kv in kernel:
        dom = {r: kv[col[r]] for r in names if kv[col[r]]}
        coeffs = {curves[i]: kv[nreg + i] for i in range(ncur) if kv[nreg + i]}
        if not dom and not coeffs:
            continue
        out.append(
            PeriodicDomain(
                domain=dom,
                curve_coefficients=coeffs,
                n_z=h.multiplicity(dom, "z"),
                n_w=h.multiplicity(dom, "w"),
            )
        )
    return out
