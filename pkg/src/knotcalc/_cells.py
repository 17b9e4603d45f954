"""Low-level builder for link diagrams.

Diagrams are assembled from unoriented crossings whose four edge handles
are listed counterclockwise; a flag records which diagonal is the
over-strand.  Handles are welded together to route strands, and
`finish()` orients every component and emits an oriented, validated
PDCode.  Orientation-dependent data (crossing signs) is derived at the
end, so construction code never has to reason about strand directions.
"""

from __future__ import annotations

from .pdcode import DiagramError, PDCode, validate


class Builder:
    def __init__(self):
        self._parent: list[int] = []
        self.crossings: list[tuple[int, int, int, int]] = []
        self.over: list[int] = []  # 0: slots (0,2) over; 1: slots (1,3) over
        self.free_loops = 0

    def fresh(self) -> int:
        h = len(self._parent)
        self._parent.append(h)
        return h

    def _find(self, h: int) -> int:
        while self._parent[h] != h:
            self._parent[h] = self._parent[self._parent[h]]
            h = self._parent[h]
        return h

    def weld(self, a: int, b: int) -> None:
        """Join two handles into one edge; welding an edge to itself
        closes a crossing-free loop."""
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            self.free_loops += 1
        else:
            self._parent[ra] = rb

    def cross(self, ccw: tuple[int, int, int, int], over: int) -> None:
        """Add a crossing; `ccw` lists handles counterclockwise and
        `over` picks the over-diagonal (0 for slots 0/2, 1 for 1/3)."""
        assert over in (0, 1)
        self.crossings.append(tuple(ccw))
        self.over.append(over)

    def finish(self, extra_components: int = 0, head_slots=()) -> PDCode:
        """Resolve handles, orient components, and emit a valid PDCode.

        `head_slots` lists (crossing, slot) positions whose incident edge
        must point INTO that slot; components containing such a hint are
        reversed if the default walk disagrees.
        """
        n = len(self.crossings)
        resolved = [tuple(self._find(h) for h in c) for c in self.crossings]
        occ: dict[int, list[tuple[int, int]]] = {}
        for i, c in enumerate(resolved):
            for slot in range(4):
                occ.setdefault(c[slot], []).append((i, slot))
        for root, ends in occ.items():
            if len(ends) != 2:
                raise DiagramError(f"builder edge used {len(ends)} times, expected 2")

        if n == 0:
            total = self.free_loops + extra_components
            if total < 1:
                raise DiagramError("empty diagram")
            return PDCode((), (), total)

        # Orient components: walk strands, continuing straight through
        # each crossing (slot k exits at slot k+2).
        head: dict[int, tuple[int, int]] = {}
        visited: set[int] = set()
        cycles: list[list[int]] = []
        ncomp = 0
        for start in sorted(occ):
            if start in visited:
                continue
            ncomp += 1
            cyc = []
            e = start
            end = occ[start][1]  # first occurrence is the tail
            while True:
                visited.add(e)
                head[e] = end
                cyc.append(e)
                i, slot = end
                out_slot = (slot + 2) % 4
                e2 = resolved[i][out_slot]
                a, b = occ[e2]
                end2 = b if a == (i, out_slot) else a
                if e2 == start and end2 == occ[start][1]:
                    break
                e, end = e2, end2
                if e == start:
                    break
            cycles.append(cyc)

        hints = set(head_slots)
        if hints:
            for cyc in cycles:
                flip = None
                for e in cyc:
                    for end in occ[e]:
                        if end in hints:
                            flip = head[e] != end
                            break
                    if flip is not None:
                        break
                if flip:
                    for e in cyc:
                        a, b = occ[e]
                        head[e] = a if head[e] == b else b

        # Renumber edges and emit oriented crossings.
        names = {root: k + 1 for k, root in enumerate(sorted(occ))}
        crossings = []
        signs = []
        for i, c in enumerate(resolved):
            under = (1, 3) if self.over[i] == 0 else (0, 2)
            into = [s for s in under if head[c[s]] == (i, s)]
            if len(into) != 1:
                raise DiagramError("strand orientation does not traverse the crossing")
            u_in = into[0]
            o_slots = (0, 2) if self.over[i] == 0 else (1, 3)
            o_into = [s for s in o_slots if head[c[s]] == (i, s)]
            if len(o_into) != 1:
                raise DiagramError("strand orientation does not traverse the crossing")
            o_in = o_into[0]
            rotated = tuple(names[c[(u_in + k) % 4]] for k in range(4))
            signs.append(1 if (o_in - u_in) % 4 == 3 else -1)
            crossings.append(rotated)

        pd = PDCode(tuple(crossings), tuple(signs), ncomp + self.free_loops + extra_components)
        return validate(pd)
