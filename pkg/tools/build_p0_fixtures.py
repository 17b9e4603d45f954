#!/usr/bin/env python3
"""Build the r=0 pattern Heegaard fixtures from explicit coordinates.

Runs the planar arrangement of the curve system (splitting curve beta0,
small meridian mu, solid-torus meridian mu_P or longitude lambda_P, and
the two strands of the through-handles curve alpha), glues the two
handles, dissolves the portal circles, and emits region complexes for
the two pattern diagrams.  The published facts about the diagrams are
then verified through the knotcalc validator and solvers.
"""

from __future__ import annotations

import json
import math
import sys
from collections import defaultdict
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from arrangement import Planar, ang, arc, chord, circle, outer_arc, radial, path
from knotcalc.heegaard import (HeegaardDiagram, HeegaardError,
                               periodic_domains, connecting_domain)

OUT = Path(__file__).resolve().parent.parent / "src" / "knotcalc" / "fixtures"

FOOT_R = 1.0
PORTAL_R = 0.03
MARKDEG = {"A": 90.0, "B": -18.0, "C": -90.0, "D": 162.0}


def foot(name):
    return (math.cos(ang(MARKDEG[name])), math.sin(ang(MARKDEG[name])))


def spike(mark_deg, r_out, r_in):
    return radial(mark_deg, r_out, r_in, 30)


def seg(p, q, n=30):
    return [(p[0] + (q[0] - p[0]) * k / n, p[1] + (q[1] - p[1]) * k / n)
            for k in range(n + 1)]


def curves_for(variant):
    cs = []
    beta0 = path(
        chord(54, 126),                # around the A foot
        outer_arc(126, 198, 1.18),     # around D
        chord(198, 18.02),             # middle chord
        outer_arc(18.02, -54, 1.12),   # around B
        chord(-54, -126),              # around C
        outer_arc(-126, -306, 2.6),    # long way around the back
    )
    cs.append(("beta0", "beta", beta0, None))
    cs.append(("mu", "beta", circle(foot("B"), 0.05), None))

    def stub_in(pname, from_pt):
        """Radial stub from a point outside the portal to 0.45R inside."""
        c = foot(pname)
        dx, dy = from_pt[0] - c[0], from_pt[1] - c[1]
        n = math.hypot(dx, dy)
        inner = (c[0] + 0.45 * PORTAL_R * dx / n, c[1] + 0.45 * PORTAL_R * dy / n)
        return seg(from_pt, inner)

    if variant == "mu_P":
        mu_p = path(
            arc(0.87, -36, 108),
            radial(108, 0.87, 2.0),
            arc(2.0, 108, 324),
            radial(324, 2.0, 0.87),
        )
        cs.append(("mu_P0", "alpha", mu_p, None))
    else:
        p_a = (0.92 * math.cos(ang(94)), 0.92 * math.sin(ang(94)))
        p_d = (0.92 * math.cos(ang(158)), 0.92 * math.sin(ang(158)))
        lam = path(
            stub_in("A", p_a)[::-1],
            arc(0.92, 94, 158)[1:],
            stub_in("D", p_d)[1:],
        )
        cs.append(("lambda_P0", "alpha", lam, ("pA", "pD")))

    ba = path(spike(-18, FOOT_R, 0.92), arc(0.92, -18, 90)[1:], spike(90, 0.92, FOOT_R)[1:])
    dc = path(spike(162, FOOT_R, 0.92), arc(0.92, 162, 270)[1:], spike(270, 0.92, FOOT_R)[1:])
    cs.append(("alpha", "alpha", ba, ("pB", "pA")))
    cs.append(("alpha", "alpha", dc, ("pD", "pC")))

    for name in "ABCD":
        cs.append((f"p{name}", "portal", circle(foot(name), PORTAL_R, 90), None))
    return cs


def build(variant):
    pl = Planar(curves_for(variant)).run()
    faces = pl.faces()
    edges = list(pl.edges)

    centers = {name: foot(name) for name in "ABCD"}

    def inside_portal(v):
        x, y = pl.vertices[v]
        for name, (cx, cy) in centers.items():
            if math.hypot(x - cx, y - cy) < PORTAL_R * 0.8:
                return name
        return None

    def on_portal(v):
        x, y = pl.vertices[v]
        for name, (cx, cy) in centers.items():
            if abs(math.hypot(x - cx, y - cy) - PORTAL_R) < PORTAL_R * 0.2:
                return name
        return None

    portal_edges = {ei for ei, e in enumerate(edges) if e[1] == "portal"}
    spikes = {}
    for ei, (cname, fam, va, vb, poly) in enumerate(edges):
        if fam == "portal":
            continue
        pa, pb = inside_portal(va), inside_portal(vb)
        if pa or pb:
            rim = vb if pa else va
            spikes[ei] = (pa or pb, cname, rim)

    face_of = {}
    for fi, face in enumerate(faces):
        for d in face:
            face_of[d] = fi
    dead = {face_of[(ei, s)] for ei in spikes for s in (1, -1)}

    # passages through the handles
    new_edges = list(edges)
    handle_of = {"A": ("A", "D"), "D": ("A", "D"), "B": ("B", "C"), "C": ("B", "C")}
    passage = {}
    for (pa, pb) in (("A", "D"), ("B", "C")):
        names_a = {c for ei, (pn, c, r) in spikes.items() if pn == pa}
        names_b = {c for ei, (pn, c, r) in spikes.items() if pn == pb}
        for cname in sorted(names_a & names_b):
            ra = next(r for ei, (pn, c, r) in spikes.items() if pn == pa and c == cname)
            rb = next(r for ei, (pn, c, r) in spikes.items() if pn == pb and c == cname)
            fam = "alpha"
            new_edges.append((cname, fam, ra, rb, None))
            passage[(pa, pb, cname)] = len(new_edges) - 1

    # interior-side darts of the portal-circle edges
    def dead_darts_of_portal(pname):
        out = {}
        for ei in portal_edges:
            if edges[ei][0] != f"p{pname}":
                continue
            for s in (1, -1):
                if face_of[(ei, s)] in dead:
                    _, _, va, vb, _ = edges[ei]
                    start = va if s > 0 else vb
                    out[start] = (ei, s)
        return out

    extra_faces = []
    for (pa, pb) in (("A", "D"), ("B", "C")):
        keys = sorted(k for k in passage if k[0] == pa)
        da = dead_darts_of_portal(pa)
        db = dead_darts_of_portal(pb)
        used = set()
        for key in keys:
            cname = key[2]
            pe = passage[key]
            ra = new_edges[pe][2]
            rb = new_edges[pe][3]
            dart_b = db[rb]
            # follow the interior side of portal pb from rb to the next rim
        # assemble rectangles: walk passage -> portal-b arc -> passage back -> portal-a arc
        remaining = dict(db)
        for key in keys:
            pe = passage[key]
            ra, rb = new_edges[pe][2], new_edges[pe][3]
            dart_b = db[rb]
            _, _, bva, bvb, _ = edges[dart_b[0]]
            end_b = bvb if dart_b[1] > 0 else bva
            # the passage whose pb-rim is end_b
            key2 = next(k for k in keys
                        if new_edges[passage[k]][3] == end_b)
            pe2 = passage[key2]
            ra2 = new_edges[pe2][2]
            dart_a = da[ra2]
            _, _, ava, avb, _ = edges[dart_a[0]]
            end_a = avb if dart_a[1] > 0 else ava
            if end_a != ra:
                raise RuntimeError("handle gluing is not consistent")
            extra_faces.append([(pe, 1), dart_b, (pe2, -1), dart_a])

    # dedupe rectangles (each was built once per passage; with two
    # passages the walk above already yields each rectangle once)
    uniq = []
    seen = set()
    for f in extra_faces:
        key = frozenset(f)
        if key not in seen:
            seen.add(key)
            uniq.append(f)
    extra_faces = uniq

    kept = [f for fi, f in enumerate(faces) if fi not in dead]
    all_faces = kept + extra_faces

    succ = {}
    for face in all_faces:
        for k, d in enumerate(face):
            succ[d] = face[(k + 1) % len(face)]

    face_index = {}
    for fi, face in enumerate(all_faces):
        for d in face:
            face_index[d] = fi

    parent = list(range(len(all_faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ei in portal_edges:
        for s in (1, -1):
            pass
    for ei in portal_edges:
        d1, d2 = (ei, 1), (ei, -1)
        if d1 in face_index and d2 in face_index:
            parent[find(face_index[d1])] = find(face_index[d2])

    def is_portal_dart(d):
        return d[0] in portal_edges

    def skip_succ(d):
        s = succ[d]
        guard = 0
        while is_portal_dart(s):
            s = succ[(s[0], -s[1])]
            guard += 1
            assert guard < 10000
        return s

    visited = set()
    cycles = []
    for d0 in sorted(succ):
        if is_portal_dart(d0) or d0 in visited:
            continue
        cyc = []
        d = d0
        while d not in visited:
            visited.add(d)
            cyc.append(d)
            d = skip_succ(d)
        cycles.append(cyc)

    groups = defaultdict(list)
    for ci, cyc in enumerate(cycles):
        groups[find(face_index[cyc[0]])].append(ci)
    nondisk = {fi: cis for fi, cis in groups.items() if len(cis) > 1}
    if nondisk:
        raise RuntimeError(f"non-disk regions: {nondisk}")

    # map every kept planar face (index into all_faces) to its region
    face_region = {}
    for ci, cyc in enumerate(cycles):
        for d in cyc:
            face_region[find(face_index[d])] = ci
    extras = {
        "all_faces": all_faces,
        "n_kept": len(kept),
        "find": find,
        "face_index": face_index,
        "face_region": face_region,
    }

    # contract rim vertices: merge the two non-portal edges at each rim
    rims = {r for (_, _, r) in spikes.values()}
    emap = list(range(len(new_edges)))

    def efind(x):
        while emap[x] != x:
            emap[x] = emap[emap[x]]
            x = emap[x]
        return x

    # represent merged edges as chains; build dart-level successor for
    # curve edges along rims
    # simpler: relabel regions at emission time by walking darts and
    # dropping rim vertices; merged edge identity = set of constituent
    # edges.  Build chains:
    incident = defaultdict(list)
    for ei, (cname, fam, va, vb, poly) in enumerate(new_edges):
        if ei in portal_edges or ei in spikes:
            continue
        incident[va].append((ei, 1))
        incident[vb].append((ei, -1))
    for r in rims:
        ends = incident[r]
        assert len(ends) == 2, (r, ends)
        (e1, s1), (e2, s2) = ends
        emap[efind(max(e1, e2))] = efind(min(e1, e2))

    # canonical names for merged edges and orientation fixing
    return pl, edges, new_edges, spikes, portal_edges, rims, cycles, emap, efind, extras


def emit(variant, result, vertex_names, basepoints):
    pl, edges, new_edges, spikes, portal_edges, rims, cycles, emap, efind = result[:9]

    # orientation of each merged edge: walk its chain from the start
    # vertex (a non-rim endpoint) through rims
    members = defaultdict(list)
    for ei in range(len(new_edges)):
        if ei in portal_edges or ei in spikes:
            continue
        members[efind(ei)].append(ei)

    chain_info = {}
    for root, eis in members.items():
        # find endpoints that are not rims
        degree = defaultdict(int)
        for ei in eis:
            _, _, va, vb, _ = new_edges[ei]
            degree[va] += 1
            degree[vb] += 1
        outer = [v for v, d in degree.items() if d == 1 and v not in rims]
        curve = new_edges[eis[0]][0]
        if not outer:
            # closed chain: based at its single crossing vertex
            base = [v for v in degree if v not in rims]
            assert len(base) == 1, "closed chain must pass one crossing"
            outer = base
        # orient the chain from the first outer endpoint following the
        # constituent edges' own orientations where possible
        start = min(outer)
        v = start
        dart_dirs = {}
        seen = set()
        while True:
            nxt = [
                (ei, 1 if new_edges[ei][2] == v else -1)
                for ei in eis
                if ei not in seen and v in (new_edges[ei][2], new_edges[ei][3])
            ]
            if not nxt:
                break
            ei, s = nxt[0]
            seen.add(ei)
            dart_dirs[ei] = s
            v = new_edges[ei][3] if s > 0 else new_edges[ei][2]
        chain_info[root] = (curve, start, v, dart_dirs)

    # orient every curve coherently: walk merged chains head to tail
    by_curve = defaultdict(list)
    for root, (curve, va, vb, dd) in chain_info.items():
        by_curve[curve].append(root)
    for curve, roots in by_curve.items():
        ends = defaultdict(list)
        for root in roots:
            _, va, vb, _ = chain_info[root]
            ends[va].append(root)
            ends[vb].append(root)
        start_root = min(roots)
        _, v0, v1, _ = chain_info[start_root]
        if v0 == v1 and len(roots) == 1:
            continue
        done = {start_root}
        v = v1
        while len(done) < len(roots):
            nxt = next(r for r in ends[v] if r not in done)
            curve_, a, b2, dd = chain_info[nxt]
            if a != v:
                chain_info[nxt] = (curve_, b2, a, {e: -s for e, s in dd.items()})
            done.add(nxt)
            v = chain_info[nxt][2]

    # JSON edges
    edge_name = {}
    counters = defaultdict(int)
    out_edges = {}
    for root, (curve, va, vb, dart_dirs) in sorted(chain_info.items()):
        name = f"{curve}_{counters[curve]}"
        counters[curve] += 1
        edge_name[root] = name
        out_edges[name] = {
            "curve": curve,
            "from": vertex_names[va],
            "to": vertex_names[vb],
        }

    regions = {}
    for k, cyc in enumerate(cycles):
        sides = []
        for (ei, s) in cyc:
            root = efind(ei)
            _, _, _, dart_dirs = chain_info[root]
            rel = dart_dirs[ei] * s
            name = edge_name[root]
            entry = ("+" if rel > 0 else "-") + name
            if sides and sides[-1] == entry:
                continue
            sides.append(entry)
        dedup = []
        for s_ in sides:
            if not dedup or dedup[-1] != s_:
                dedup.append(s_)
        # collapse chains: consecutive identical entries collapse to one
        regions[f"R{k}"] = dedup

    alpha = sorted({v["curve"] for v in out_edges.values()
                    if v["curve"] in ("alpha", "mu_P0", "lambda_P0")})
    beta = sorted({v["curve"] for v in out_edges.values()
                   if v["curve"] in ("beta0", "mu")})
    data = {
        "name": f"hd_{'s1s2' if variant == 'mu_P' else 's3'}_p0",
        "alpha": alpha,
        "beta": beta,
        "edges": out_edges,
        "regions": regions,
        "basepoints": basepoints,
    }
    return data


def classify_vertices(pl, edges, new_edges, spikes, portal_edges, rims, variant):
    """Name the crossing vertices by their expected coordinates."""
    expected = {
        "x": (0.95 * math.cos(ang(-18)), 0.95 * math.sin(ang(-18))),
        "c1": (0.92 * math.cos(ang(61.6)), 0.92 * math.sin(ang(61.6))),
        "c2": (0.92 * math.cos(ang(18.02)), 0.92 * math.sin(ang(18.02))),
        "c3": (0.92 * math.cos(ang(198.02)), 0.92 * math.sin(ang(198.02))),
        "c4": (0.92 * math.cos(ang(-118.4)), 0.92 * math.sin(ang(-118.4))),
    }
    if variant == "mu_P":
        expected.update({
            "q1": (0.87 * math.cos(ang(68.4)), 0.87 * math.sin(ang(68.4))),
            "q2": (0.87 * math.cos(ang(18.02)), 0.87 * math.sin(ang(18.02))),
            "q3": (1.084 * math.cos(ang(-36)), 1.084 * math.sin(ang(-36))),
            "q4": (2.0 * math.cos(ang(195.4)), 2.0 * math.sin(ang(195.4))),
        })
    else:
        expected["y1"] = (0.92 * math.cos(ang(118.4)), 0.92 * math.sin(ang(118.4)))

    used = set()
    names = {}
    for label, (ex, ey) in expected.items():
        best, bd = None, 1e9
        for vi, (vx, vy) in enumerate(pl.vertices):
            if vi in used:
                continue
            d = math.hypot(vx - ex, vy - ey)
            if d < bd:
                best, bd = vi, d
        if bd > 0.2:
            raise RuntimeError(f"vertex {label} not located (best {bd})")
        names[best] = label
        used.add(best)
    return names


def run_variant(variant):
    result = build(variant)
    pl, edges, new_edges, spikes, portal_edges, rims, cycles, emap, efind = result
    names = classify_vertices(pl, edges, new_edges, spikes, portal_edges, rims, variant)
    data = emit(variant, result, names, {"z": "R0", "w": "R0"})
    return data


def region_points(result):
    """A representative planar point inside every final region."""
    pl, edges, new_edges, spikes, portal_edges, rims, cycles, emap, efind = result[:9]

    def polygon_of_dart(d):
        ei, s = d
        poly = new_edges[ei][4]
        return poly if s > 0 else poly[::-1] if poly else None

    pts = {}
    for k, cyc in enumerate(cycles):
        # midpoint of the longest constituent polyline, nudged left
        best = None
        for d in cyc:
            poly = polygon_of_dart(d)
            if poly and (best is None or len(poly) > len(best)):
                best = poly
        m = len(best) // 2
        (x1, y1), (x2, y2) = best[m - 1], best[m + 1] if m + 1 < len(best) else best[m]
        dx, dy = x2 - x1, y2 - y1
        n = math.hypot(dx, dy) or 1.0
        px, py = best[m]
        pts[f"R{k}"] = (px - dy / n * 1e-3, py + dx / n * 1e-3)
    return pts


def locate(result, point):
    """Name of the final region containing a planar point, found via the
    planar faces (closed polygons) and the face-to-region map."""
    pl, edges, new_edges, spikes, portal_edges, rims, cycles, emap, efind = result[:9]
    extras = result[9]

    def polygon(face):
        poly = []
        for (ei, s) in face:
            p = new_edges[ei][4] if ei < len(new_edges) else None
            if ei < len(edges):
                p = edges[ei][4]
            else:
                p = None
            if p:
                poly.extend(p if s > 0 else p[::-1])
        return poly

    def winding(poly, pt):
        w = 0.0
        for i in range(len(poly) - 1):
            x1, y1 = poly[i][0] - pt[0], poly[i][1] - pt[1]
            x2, y2 = poly[i + 1][0] - pt[0], poly[i + 1][1] - pt[1]
            w += math.atan2(x1 * y2 - y1 * x2, x1 * x2 + y1 * y2)
        return w

    for fi in range(extras["n_kept"]):
        face = extras["all_faces"][fi]
        poly = polygon(face)
        if len(poly) > 2 and abs(winding(poly, point)) > math.pi:
            ci = extras["face_region"][extras["find"](fi)]
            return f"R{ci}"
    # not inside any bounded planar face: the unbounded one
    areas = []
    for fi in range(extras["n_kept"]):
        poly = polygon(extras["all_faces"][fi])
        a = sum(poly[i][0] * poly[i + 1][1] - poly[i + 1][0] * poly[i][1]
                for i in range(len(poly) - 1))
        areas.append((a, fi))
    fi = min(areas)[1]  # most negative signed area encloses infinity
    ci = extras["face_region"][extras["find"](fi)]
    return f"R{ci}"


def bigon_square_torus():
    """A genus-1 diagram whose two curves cross four times, containing
    bigon regions (used by the index examples)."""
    from gen_fixtures import build_rotation_diagram
    import itertools as it

    for types in it.product((1, -1), repeat=4):
        vt = dict(zip(["p1", "p2", "p3", "p4"], types))
        try:
            data, regions = build_rotation_diagram(
                "bigon_torus", alpha=["alpha1"], beta=["beta1"],
                curve_cycles={"alpha1": ["p1", "p2", "p3", "p4"],
                              "beta1": ["p1", "p2", "p3", "p4"]},
                vertex_types=vt, basepoints={"z": "R0", "w": "R0"})
        except Exception:
            continue
        sizes = sorted(len(v) for v in regions.values())
        if len(regions) == 4 and sizes[0] == 2:
            names = sorted(regions)
            big = [r for r in names if len(regions[r]) == max(map(len, regions.values()))]
            zw = {"z": big[0], "w": big[-1] if len(big) > 1 else names[-1]}
            d2 = dict(data)
            d2["basepoints"] = zw
            try:
                HeegaardDiagram.from_json(d2)
            except HeegaardError:
                continue
            return d2
    raise RuntimeError("no bigon torus found")


def trivial_torus():
    """Genus-1 diagram of the three-sphere: one alpha, one beta, one
    crossing, a single square region."""
    return {
        "name": "torus_s3",
        "alpha": ["alpha1"],
        "beta": ["beta1"],
        "edges": {
            "a0": {"curve": "alpha1", "from": "p", "to": "p"},
            "b0": {"curve": "beta1", "from": "p", "to": "p"},
        },
        "regions": {"R0": ["+a0", "+b0", "-a0", "-b0"]},
        "basepoints": {"z": "R0", "w": "R0"},
    }


RENAME = {"q4": "a1", "q1": "am1", "q3": "a2", "q2": "am2"}


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    res2 = build("mu_P")
    names2 = classify_vertices(res2[0], res2[1], res2[2], res2[3], res2[4], res2[5], "mu_P")
    names2 = {v: RENAME.get(lbl, lbl) for v, lbl in names2.items()}
    data2 = emit("mu_P", res2, names2, {"z": "R4", "w": "R6"})
    with open(OUT / "hd_s1s2_p0.json", "w") as fh:
        json.dump(data2, fh, indent=1, sort_keys=True)
    print("wrote hd_s1s2_p0.json; regions:",
          {k: len(v) for k, v in data2["regions"].items()})

    pts2 = region_points(res2)
    res1 = build("lambda")
    names1 = classify_vertices(res1[0], res1[1], res1[2], res1[3], res1[4], res1[5], "lambda")
    zreg = locate(res1, pts2["R4"])
    wreg = locate(res1, pts2["R6"])
    print("lambda-variant basepoints from shared points:", zreg, wreg)
    assert zreg and wreg and zreg != wreg
    data1 = emit("lambda", res1, names1, {"z": zreg, "w": wreg})
    with open(OUT / "hd_s3_p0.json", "w") as fh:
        json.dump(data1, fh, indent=1, sort_keys=True)
    print("wrote hd_s3_p0.json; regions:",
          {k: len(v) for k, v in data1["regions"].items()})

    with open(OUT / "hd_torus_s3.json", "w") as fh:
        json.dump(trivial_torus(), fh, indent=1, sort_keys=True)
    with open(OUT / "hd_bigon_torus.json", "w") as fh:
        json.dump(bigon_square_torus(), fh, indent=1, sort_keys=True)
    print("wrote torus fixtures")


if __name__ == "__main__":
    main()
