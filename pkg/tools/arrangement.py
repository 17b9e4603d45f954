#!/usr/bin/env python3
"""Compute the genus-2 pattern-diagram region complexes from explicit
plane coordinates.

The sphere is the plane plus infinity; the front hemisphere is the unit
disk.  Four portal disks near the boundary circle are glued in pairs
(A-D and B-C) into handles.  Curves are sampled polylines; portal
circles participate in the arrangement and are dissolved after the
handle rectangles are glued in, leaving the honest region complex of
the curve system on the closed genus-2 surface.

Every face of the planar subdivision is a disk, so the only possible
non-disk regions arise from the dissolution step, which is checked.
"""

from __future__ import annotations

import math
from collections import defaultdict

TAU = 2 * math.pi


def ang(deg):
    return deg * math.pi / 180.0


def circle(center, radius, n=180, start=0.0, end=TAU):
    cx, cy = center
    pts = []
    for k in range(n + 1):
        t = start + (end - start) * k / n
        pts.append((cx + radius * math.cos(t), cy + radius * math.sin(t)))
    return pts


def arc(radius, deg_from, deg_to, n=240):
    return [
        (
            radius * math.cos(ang(deg_from + (deg_to - deg_from) * k / n)),
            radius * math.sin(ang(deg_from + (deg_to - deg_from) * k / n)),
        )
        for k in range(n + 1)
    ]


def chord(deg_a, deg_b, n=200):
    ax, ay = math.cos(ang(deg_a)), math.sin(ang(deg_a))
    bx, by = math.cos(ang(deg_b)), math.sin(ang(deg_b))
    return [(ax + (bx - ax) * k / n, ay + (by - ay) * k / n) for k in range(n + 1)]


def outer_arc(deg_a, deg_b, bulge, n=240):
    """Arc outside the unit circle from boundary angle a to b, going
    through radius `bulge` (angles swept monotonically a -> b)."""
    pts = []
    for k in range(n + 1):
        t = k / n
        d = ang(deg_a + (deg_b - deg_a) * t)
        r = 1.0 + (bulge - 1.0) * math.sin(math.pi * t)
        pts.append((r * math.cos(d), r * math.sin(d)))
    return pts


def radial(deg, r_from, r_to, n=40):
    return [
        (
            (r_from + (r_to - r_from) * k / n) * math.cos(ang(deg)),
            (r_from + (r_to - r_from) * k / n) * math.sin(ang(deg)),
        )
        for k in range(n + 1)
    ]


def path(*pieces):
    out = list(pieces[0])
    for p in pieces[1:]:
        out.extend(p[1:])
    return out


# -- the concrete picture ----------------------------------------------------

FOOT_R = 0.93
PORTAL_R = 0.03
MARK = {"A": 90.0, "u1": 54.0, "u2": 18.0, "B": -18.0, "s1": -54.0,
        "C": -90.0, "v1": -126.0, "D": -198.0, "v2": -162.0, "t1": 126.0}
# equator order A(0) u1(1) u2(2) B(3) s1(4) C(5) v1(6) v2(7) D(8) t1(9)
# page angle of mark k: 90 - 36k


def foot_center(name):
    return (FOOT_R * math.cos(ang(MARK[name])), FOOT_R * math.sin(ang(MARK[name])))


def portal_point(name, toward_origin=True):
    cx, cy = foot_center(name)
    r = PORTAL_R
    n = math.hypot(cx, cy)
    ux, uy = cx / n, cy / n
    return (cx - r * ux, cy - r * uy) if toward_origin else (cx + r * ux, cy + r * uy)


def build_curves():
    """Curve polylines (name, family, polyline, open_ends)."""
    curves = []

    # beta0: the splitting curve; front chords and back (outer) arcs
    beta0 = path(
        chord(54, 126),                 # F1: u1 -> t1 around A
        outer_arc(126, 198, 1.18),      # B3: t1 -> v2 around D (+198 == -162)
        chord(198, 18),                 # F2: v2 -> u2 across the middle
        outer_arc(18, -54, 1.12),       # B1: u2 -> s1 around B
        chord(-54, -126),               # F3: s1 -> v1 around C
        outer_arc(-126, -306, 2.6),     # B2: v1 -> u1 the long way (through D side)
    )
    curves.append(("beta0", "beta", beta0, None))

    # mu: a small circle around the B foot
    curves.append(("mu", "beta", circle(foot_center("B"), 0.05), None))

    # mu_P0: the meridian around the feet A and B
    mu_p = path(
        arc(0.87, -36, 108),            # front part, under the A and B feet
        radial(108, 0.87, 2.0),
        [
            (2.0 * math.cos(ang(108 + 216 * k / 200)),
             2.0 * math.sin(ang(108 + 216 * k / 200)))
            for k in range(201)
        ],                               # back part at radius 2: 108 -> 324
        radial(324, 2.0, 0.87),
    )
    curves.append(("mu_P0", "alpha", mu_p, None))

    # alpha: two strands at radius 0.90 ending on the portals
    ba = [portal_point("B")] + arc(0.90, -15.0, 87.0)[0:] + [portal_point("A")]
    dc = [portal_point("D")] + arc(0.90, -195.0, -93.0)[0:] + [portal_point("C")]
    curves.append(("alpha", "alpha", ba, ("pB", "pA")))
    curves.append(("alpha", "alpha", dc, ("pD", "pC")))

    # portal circles (virtual)
    for name in "ABCD":
        curves.append((f"p{name}", "portal", circle(foot_center(name), PORTAL_R, 120), None))
    return curves


# -- planar arrangement ------------------------------------------------------

EPS = 1e-12


def seg_hit(p1, p2, p3, p4):
    x1, y1 = p1
    x2, y2 = p2
    x3, y3 = p3
    x4, y4 = p4
    d = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
    if abs(d) < EPS:
        return None
    t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / d
    u = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / d
    if -1e-9 < t < 1 + 1e-9 and -1e-9 < u < 1 + 1e-9:
        return (x1 + t * (x2 - x1), y1 + t * (y2 - y1)), t, u
    return None


class Planar:
    def __init__(self, curves):
        self.curves = curves
        self.vertices = []      # positions
        self.edges = []         # (curve, family, v_from, v_to, polyline)

    def vertex(self, p, tol=1e-7):
        for i, q in enumerate(self.vertices):
            if math.hypot(p[0] - q[0], p[1] - q[1]) < tol:
                return i
        self.vertices.append(p)
        return len(self.vertices) - 1

    def run(self):
        # collect cut parameters along each curve
        cuts = [[] for _ in self.curves]
        for i in range(len(self.curves)):
            ni, fi, pi, openi = self.curves[i]
            for j in range(i + 1, len(self.curves)):
                nj, fj, pj, openj = self.curves[j]
                if ni == nj:
                    continue
                for a in range(len(pi) - 1):
                    for b in range(len(pj) - 1):
                        hit = seg_hit(pi[a], pi[a + 1], pj[b], pj[b + 1])
                        if hit:
                            p, t, u = hit
                            v = self.vertex(p)
                            cuts[i].append((a + min(max(t, 0), 1), v))
                            cuts[j].append((b + min(max(u, 0), 1), v))
        for i, (name, fam, poly, open_ends) in enumerate(self.curves):
            marks = sorted(set(cuts[i]))
            # drop duplicate vertices at coincident parameters
            dedup = []
            for m in marks:
                if not dedup or (m[1] != dedup[-1][1]):
                    dedup.append(m)
            marks = dedup
            if open_ends is not None:
                v0 = self.vertex(poly[0])
                v1 = self.vertex(poly[-1])
                seq = [(0.0, v0)] + [m for m in marks if m[1] not in (v0, v1)] + [
                    (len(poly) - 1.0, v1)
                ]
                closed = False
            else:
                if not marks:
                    raise RuntimeError(f"curve {name} meets nothing")
                seq = marks
                closed = True
            k = len(seq) if closed else len(seq) - 1
            for s in range(k):
                t0, va = seq[s]
                t1, vb = seq[(s + 1) % len(seq)]
                mid = self._subpoly(poly, t0, t1, closed)
                self.edges.append((name, fam, va, vb, mid))
        return self

    @staticmethod
    def _subpoly(poly, t0, t1, closed):
        n = len(poly) - 1

        def interp(t):
            s = min(int(t), n - 1)
            f = t - s
            p, q = poly[s], poly[s + 1]
            return (p[0] + f * (q[0] - p[0]), p[1] + f * (q[1] - p[1]))

        pts = [interp(t0)]
        s = int(t0) + 1
        if closed and t1 <= t0:
            t1 += n
        while s <= t1:
            pts.append(poly[(s - 1) % n + 1])
            s += 1
        pts.append(interp(t1 % n if closed else t1))
        return pts

    def faces(self):
        """Planar faces as dart cycles; darts are (edge index, +-1)."""
        at = defaultdict(list)
        for ei, (name, fam, va, vb, poly) in enumerate(self.edges):
            d0 = math.atan2(poly[1][1] - poly[0][1], poly[1][0] - poly[0][0])
            d1 = math.atan2(poly[-2][1] - poly[-1][1], poly[-2][0] - poly[-1][0])
            at[va].append((d0, (ei, 1)))
            at[vb].append((d1, (ei, -1)))
        rot = {v: [d for _, d in sorted(items)] for v, items in at.items()}

        visited = set()
        faces = []
        for ei in range(len(self.edges)):
            for f0 in (1, -1):
                d = (ei, f0)
                if d in visited:
                    continue
                face = []
                while d not in visited:
                    visited.add(d)
                    face.append(d)
                    e, f = d
                    _, _, va, vb, _ = self.edges[e]
                    v = vb if f > 0 else va
                    rv = rot[v]
                    i = rv.index((e, -f))
                    d = rv[(i + 1) % len(rv)]
                faces.append(face)
        return faces
