"""Planar diagram (PD) codes for oriented links.

A crossing is a 4-tuple of edge labels listed counterclockwise from the
incoming under-strand (Knot Atlas style).  Together with a per-crossing
sign this fixes the orientation of every strand: the under-strand runs
slot 0 -> slot 2, and the over-strand enters at slot 3 for a positive
crossing and at slot 1 for a negative one.

Edge labels name the edges of the underlying 4-valent graph, so each
label occurs exactly twice across the whole code.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DiagramError(ValueError):
    """Raised when diagram data violates a structural invariant."""


@dataclass(frozen=True)
class PDCode:
    """An oriented link diagram given by its PD code.

    crossings: 4-tuples of edge labels, counterclockwise from the
        incoming under-strand.
    signs: +1 or -1 per crossing.
    components: number of link components (required so that the
        0-crossing unknot is representable).
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...]
    components: int

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(c) for c in self.crossings))
        object.__setattr__(self, "signs", tuple(self.signs))

    def __len__(self) -> int:
        return len(self.crossings)

    # -- role helpers ---------------------------------------------------

    def over_in_slot(self, i: int) -> int:
        return 3 if self.signs[i] == 1 else 1

    def over_out_slot(self, i: int) -> int:
        return 1 if self.signs[i] == 1 else 3

    def in_edges(self, i: int) -> tuple[int, int]:
        c = self.crossings[i]
        return c[0], c[self.over_in_slot(i)]

    def out_edges(self, i: int) -> tuple[int, int]:
        c = self.crossings[i]
        return c[2], c[self.over_out_slot(i)]

    def edge_set(self) -> set[int]:
        return {e for c in self.crossings for e in c}

    def __str__(self) -> str:
        return emit_pd(self)


def _edge_ends(d: PDCode):
    """Map each edge to its (tail, head) ends as (crossing, slot) pairs.

    The tail is the end where the edge leaves a crossing (out role); the
    head is where it arrives (in role).
    """
    tails: dict[int, tuple[int, int]] = {}
    heads: dict[int, tuple[int, int]] = {}
    for i, c in enumerate(d.crossings):
        for slot in range(4):
            e = c[slot]
            is_in = slot == 0 or slot == d.over_in_slot(i)
            table = heads if is_in else tails
            if e in table:
                raise DiagramError(
                    f"duplicate arc: edge {e} has two {'incoming' if is_in else 'outgoing'} ends"
                )
            table[e] = (i, slot)
    if set(tails) != set(heads):
        missing = set(tails) ^ set(heads)
        raise DiagramError(f"open traversal: edges {sorted(missing)} lack a matching end")
    return tails, heads


def _successor_map(d: PDCode) -> dict[int, int]:
    """edge -> next edge along the orientation."""
    nxt: dict[int, int] = {}
    for i, c in enumerate(d.crossings):
        nxt[c[0]] = c[2]
        nxt[c[d.over_in_slot(i)]] = c[d.over_out_slot(i)]
    return nxt


def component_cycles(d: PDCode) -> list[list[int]]:
    """Decompose the edge set into oriented cycles (one per component)."""
    nxt = _successor_map(d)
    seen: set[int] = set()
    cycles = []
    for start in sorted(nxt):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        e = nxt[start]
        while e != start:
            if e in seen:
                raise DiagramError("open traversal: edge successor structure is not a permutation")
            cyc.append(e)
            seen.add(e)
            e = nxt[e]
        cycles.append(cyc)
    return cycles


def faces(d: PDCode) -> list[list[tuple[int, int]]]:
    """Faces of the planar embedding defined by the rotation system.

    Each face is a cyclic list of corners (crossing, slot), recording the
    dart arrivals along the face boundary; the face touches the corner
    between `slot` and `slot+1`.  Assumes a connected diagram with at
    least one crossing.
    """
    tails, heads = _edge_ends(d)

    def target(dart):
        e, fwd = dart
        return heads[e] if fwd else tails[e]

    out_dart: dict[tuple[int, int], tuple[int, bool]] = {}
    for e, (i, slot) in tails.items():
        out_dart[(i, slot)] = (e, True)
    for e, (i, slot) in heads.items():
        out_dart[(i, slot)] = (e, False)

    result = []
    visited: set[tuple[int, bool]] = set()
    for e0 in sorted(tails):
        for fwd0 in (True, False):
            if (e0, fwd0) in visited:
                continue
            face = []
            dart = (e0, fwd0)
            while dart not in visited:
                visited.add(dart)
                i, slot = target(dart)
                face.append((i, slot))
                dart = out_dart[(i, (slot + 1) % 4)]
            result.append(face)
    return result


def _check_connected(d: PDCode) -> None:
    if not d.crossings:
        return
    adj: dict[int, set[int]] = {i: set() for i in range(len(d.crossings))}
    where: dict[int, list[int]] = {}
    for i, c in enumerate(d.crossings):
        for e in c:
            where.setdefault(e, []).append(i)
    for ends in where.values():
        if len(ends) == 2:
            adj[ends[0]].add(ends[1])
            adj[ends[1]].add(ends[0])
    stack, seen = [0], {0}
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(d.crossings):
        raise DiagramError("disconnected diagram: split PD codes are not supported")


def validate(d: PDCode) -> PDCode:
    """Check all PDCode invariants and return a canonically relabeled copy.

    Verifies: every edge label occurs exactly twice, once incoming and
    once outgoing (this is the sign/orientation consistency check); the
    traversal closes into `components` cycles; the rotation system is
    planar (F = n + 2 for a connected diagram).
    """
    for i, c in enumerate(d.crossings):
        if len(c) != 4:
            raise DiagramError(f"crossing {i} does not have 4 edges")
        if d.signs[i] not in (1, -1):
            raise DiagramError(f"crossing {i} has sign {d.signs[i]}, expected +1 or -1")
    if len(d.signs) != len(d.crossings):
        raise DiagramError("signs and crossings length mismatch")

    if not d.crossings:
        if d.components < 1:
            raise DiagramError("empty diagram must have at least one component")
        return d

    counts: dict[int, int] = {}
    for c in d.crossings:
        for e in c:
            counts[e] = counts.get(e, 0) + 1
    bad = [e for e, k in counts.items() if k != 2]
    if bad:
        raise DiagramError(f"duplicate arc: edge {bad[0]} occurs {counts[bad[0]]} times")

    _check_connected(d)
    cycles = component_cycles(d)
    if len(cycles) != d.components:
        raise DiagramError(
            f"component count mismatch: traversal gives {len(cycles)}, declared {d.components}"
        )
    if len(faces(d)) != len(d.crossings) + 2:
        raise DiagramError("rotation system is not planar")

    return relabel(d)


def relabel(d: PDCode) -> PDCode:
    """Renumber edges 1..2n in traversal order (deterministic)."""
    if not d.crossings:
        return d
    cycles = component_cycles(d)
    cycles.sort(key=lambda cyc: min(cyc))
    new: dict[int, int] = {}
    k = 1
    for cyc in cycles:
        # start each cycle at its smallest old label
        j = cyc.index(min(cyc))
        for e in cyc[j:] + cyc[:j]:
            new[e] = k
            k += 1
    crossings = tuple(tuple(new[e] for e in c) for c in d.crossings)
    return PDCode(crossings, d.signs, d.components)


def writhe(d: PDCode) -> int:
    """Sum of crossing signs."""
    return sum(d.signs)


def mirror(d: PDCode) -> PDCode:
    """Swap over- and under-strands at every crossing (signs flip)."""
    crossings = []
    signs = []
    for c, s in zip(d.crossings, d.signs):
        a, b, cc, dd = c
        if s == 1:
            crossings.append((dd, a, b, cc))
        else:
            crossings.append((b, cc, dd, a))
        signs.append(-s)
    return PDCode(tuple(crossings), tuple(signs), d.components)


def reverse(d: PDCode) -> PDCode:
    """Reverse the orientation of every component (signs unchanged)."""
    crossings = tuple((c[2], c[3], c[0], c[1]) for c in d.crossings)
    return PDCode(crossings, d.signs, d.components)


def component_of_edge(d: PDCode) -> dict[int, int]:
    out = {}
    for ci, cyc in enumerate(component_cycles(d)):
        for e in cyc:
            out[e] = ci
    return out


def linking_matrix(d: PDCode) -> list[list[int]]:
    """Pairwise linking numbers (half the signed inter-component
    crossing count); diagonal entries are zero."""
    comp = component_of_edge(d)
    m = d.components
    mat = [[0] * m for _ in range(m)]
    for i, c in enumerate(d.crossings):
        a = comp[c[0]]
        b = comp[c[d.over_in_slot(i)]]
        if a != b:
            mat[a][b] += d.signs[i]
            mat[b][a] += d.signs[i]
    return [[v // 2 for v in row] for row in mat]


def reverse_component(d: PDCode, comp_index: int) -> PDCode:
    """Reverse the orientation of a single component."""
    comp = component_of_edge(d)
    crossings = []
    signs = []
    for i, c in enumerate(d.crossings):
        under_rev = comp[c[0]] == comp_index
        over_rev = comp[c[d.over_in_slot(i)]] == comp_index
        t, s = c, d.signs[i]
        if under_rev:
            t = (c[2], c[3], c[0], c[1])
        if under_rev != over_rev:
            s = -s
        crossings.append(t)
        signs.append(s)
    return PDCode(tuple(crossings), tuple(signs), d.components)


def switch_crossing(d: PDCode, i: int) -> PDCode:
    """Exchange the over- and under-strand at crossing i."""
    crossings = list(d.crossings)
    signs = list(d.signs)
    a, b, c, e = crossings[i]
    if signs[i] == 1:
        crossings[i] = (e, a, b, c)
    else:
        crossings[i] = (b, c, e, a)
    signs[i] = -signs[i]
    return PDCode(tuple(crossings), tuple(signs), d.components)


def smooth_crossing(d: PDCode, i: int) -> PDCode:
    """Oriented resolution of crossing i (the skein L_0)."""
    a, b, c, e = d.crossings[i]
    s = d.signs[i]
    pairs = ((a, b), (e, c)) if s == 1 else ((a, e), (b, c))

    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    loops = 0
    for (u, v) in pairs:
        ru, rv = find(u), find(v)
        if ru == rv:
            loops += 1
        else:
            parent[ru] = rv
    crossings = []
    signs = []
    for k, cr in enumerate(d.crossings):
        if k == i:
            continue
        crossings.append(tuple(find(x) for x in cr))
        signs.append(d.signs[k])
    out = PDCode(tuple(crossings), tuple(signs), 1)
    if crossings:
        comps = len(component_cycles(out)) + loops
    else:
        comps = loops
    return validate(PDCode(tuple(crossings), tuple(signs), comps))


UNKNOT = PDCode((), (), 1)


# -- text format ---------------------------------------------------------

_PD_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def emit_pd(d: PDCode) -> str:
    if not d.crossings:
        return f"PD[unknot:{d.components}]"
    body = ",".join(f"X({a},{b},{c},{e})" for a, b, c, e in d.crossings)
    return f"PD[{body}]"


def parse_pd(text: str) -> PDCode:
    """Parse `PD[X(a,b,c,d),...]`, inferring orientations and signs.

    Slot 0 is the incoming under-strand.  The over-strand direction at
    each crossing is recovered by demanding that every edge has exactly
    one incoming and one outgoing end; any leftover freedom (components
    that never pass under) is resolved toward positive crossings.
    """
    text = text.strip()
    if not text.startswith("PD[") or not text.endswith("]"):
        raise DiagramError("malformed PD string: expected PD[...]")
    inner = text[3:-1]
    m = re.fullmatch(r"unknot:(\d+)", inner.strip())
    if m:
        return PDCode((), (), int(m.group(1)))
    crossings = [tuple(int(g) for g in mm.groups()) for mm in _PD_RE.finditer(inner)]
    cleaned = re.sub(_PD_RE, "", inner).replace(",", "").strip()
    if cleaned or not crossings:
        raise DiagramError("malformed PD string: unparsed content")

    # Constraint propagation for the over-strand direction per crossing.
    # v[i] in {1, 3} is the over-in slot; +1 sign <=> v == 3.
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for i, c in enumerate(crossings):
        for slot in range(4):
            occurrences.setdefault(c[slot], []).append((i, slot))
    for e, occ in occurrences.items():
        if len(occ) != 2:
            raise DiagramError(f"duplicate arc: edge {e} occurs {len(occ)} times")

    v: dict[int, int] = {}

    def assign(i: int, val: int) -> None:
        if v.get(i, val) != val:
            raise DiagramError(f"inconsistent orientation at crossing {i}")
        if i in v:
            return
        v[i] = val
        propagate(i)

    def propagate(i: int) -> None:
        c = crossings[i]
        for slot in (1, 3):
            e = c[slot]
            incoming = slot == v[i]
            other = [(j, s) for (j, s) in occurrences[e] if (j, s) != (i, slot)]
            j, s = other[0]
            if s == 0:
                if incoming:
                    raise DiagramError(f"inconsistent orientation at edge {e}")
            elif s == 2:
                if not incoming:
                    raise DiagramError(f"inconsistent orientation at edge {e}")
            else:
                # partner at slot1/slot3 of j must take the opposite role
                assign(j, {1: 3, 3: 1}[s] if incoming else s)

    # seed from forced ends (slots 0 and 2)
    for i, c in enumerate(crossings):
        for slot, need_out in ((0, True), (2, False)):
            e = c[slot]
            other = [(j, s) for (j, s) in occurrences[e] if (j, s) != (i, slot)]
            if not other:
                raise DiagramError(f"duplicate arc: edge {e} occurs once")
            j, s = other[0]
            if s in (1, 3):
                # need_out: partner is the over-out slot, so over-in is the other one
                assign(j, {1: 3, 3: 1}[s] if need_out else s)
    for i in range(len(crossings)):
        if i not in v:
            assign(i, 3)

    signs = tuple(1 if v[i] == 3 else -1 for i in range(len(crossings)))
    comp = len(component_cycles(PDCode(tuple(crossings), signs, 1)))
    return validate(PDCode(tuple(crossings), signs, comp))
