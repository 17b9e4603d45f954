"""Link diagram operations and the satellite constructor.

The satellite of a companion knot is built by doubling the companion
diagram into two anti-parallel parallel strands (blackboard framing),
inserting full twists to correct the framing to t, and splicing in the
clasp-and-twist pattern block.  The pattern winds zero times around the
companion, so each companion crossing contributes two positive and two
negative crossings and the Alexander polynomial of the result is
independent of the companion.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import pdcode
from ._cells import Builder
from ._plat import twobridge_word
from .grid import (GridDiagram, grid_to_pd, parse_grid, emit_grid,
                   validate_grid)
from .pdcode import (PDCode, DiagramError, UNKNOT, mirror, reverse, writhe,
                     parse_pd, emit_pd, linking_matrix, reverse_component)


def validate(d):
    """Validate a PDCode or GridDiagram, whichever is given."""
    if isinstance(d, PDCode):
        return pdcode.validate(d)
    if isinstance(d, GridDiagram):
        return validate_grid(d)
    raise TypeError(f"cannot validate {type(d).__name__}")


@dataclass(frozen=True)
class PatternTemplate:
    """The winding-number-zero pattern with 2r+1 alternating full-twist
    blocks; closing the solid torus trivially yields the chain knot with
    2r coefficients, and the r = 0 block is the standard clasp."""

    r: int

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("pattern index r must be non-negative")

    @property
    def blocks(self) -> tuple[int, ...]:
        """Signed full-twist count per block (sign alternates, odd
        blocks negative)."""
        return tuple(-1 if k % 2 == 0 else 1 for k in range(2 * self.r + 1))

    def word(self):
        return twobridge_word([-2] * (2 * self.r + 1))

    def emit(self, b: Builder):
        """Add the tangle block to a builder; returns the four boundary
        handles (A, B, C, D) in boundary order.

        The two strands inside pair A with B and C with D, so connecting
        A-D and B-C through the solid torus closes the pattern into a
        single winding-number-zero circle.
        """
        tips = [b.fresh() for _ in range(4)]
        tops = list(tips)
        for pos, exp in self.word():
            i = pos - 1
            flag = 0 if exp > 0 else 1
            for _ in range(abs(exp)):
                ne, nw = tips[i + 1], tips[i]
                sw, se = b.fresh(), b.fresh()
                b.cross((ne, nw, sw, se), flag)
                tips[i], tips[i + 1] = sw, se
        b.weld(tops[2], tops[3])      # cap joining the top of strands 3,4
        b.weld(tips[0], tips[1])      # cap joining the bottom of strands 1,2
        # free ends: tops of strands 1,2 and bottoms of 3,4
        return tops[0], tops[1], tips[3], tips[2]  # A, B, C, D


def _twist_cells(b: Builder, full_twists: int, tops):
    """Insert |full_twists| full twists (two crossings each) between the
    two annulus strands; positive twists raise the band framing by one.

    The cells are emitted clockwise because the annulus band is traversed
    with the opposite co-orientation from the pattern block's braid frame.
    """
    tips = list(tops)
    flag = 1 if full_twists > 0 else 0
    for _ in range(2 * abs(full_twists)):
        ne, nw = tips[1], tips[0]
        sw, se = b.fresh(), b.fresh()
        b.cross((se, sw, nw, ne), flag)
        tips[0], tips[1] = sw, se
    return tips


def satellite(companion: PDCode, r: int, t: int) -> PDCode:
    """Diagram of the t-twisted satellite of `companion` with the
    2r+1-block pattern.

    The companion is doubled with the blackboard framing, t - writhe
    framing-correction twists are inserted, and the pattern block is
    spliced into the two parallel strands.
    """
    companion = pdcode.validate(companion)
    if companion.components != 1:
        raise DiagramError("satellite companion must be a knot (one component)")
    template = PatternTemplate(r)
    tw = t - writhe(companion)
    b = Builder()
    boxA, boxB, boxC, boxD = template.emit(b)

    if not companion.crossings:
        u_top, l_top = b.fresh(), b.fresh()
        u_bot, l_bot = _twist_cells(b, tw, (u_top, l_top))
        # close the annulus directly; one end of the twist block faces
        # the A/B ports, the other the D/C ports
        b.weld(boxA, u_top)
        b.weld(boxB, l_top)
        b.weld(u_bot, boxD)
        b.weld(l_bot, boxC)
        out = b.finish()
        if out.components != 1:
            raise DiagramError("satellite construction produced a split diagram")
        return out

    edges = sorted(companion.edge_set())
    estar = edges[0]
    A = {e: b.fresh() for e in edges if e != estar}
    B = {e: b.fresh() for e in edges if e != estar}
    a_tail, a_head = b.fresh(), b.fresh()
    b_tail, b_head = b.fresh(), b.fresh()

    def pieceA(e, at_head):
        if e != estar:
            return A[e]
        return a_head if at_head else a_tail

    def pieceB(e, at_head):
        if e != estar:
            return B[e]
        return b_head if at_head else b_tail

    for i, c in enumerate(companion.crossings):
        e0, e1, e2, e3 = c
        s = companion.signs[i]
        mW, mE, mS, mN = (b.fresh() for _ in range(4))
        A0, B0 = pieceA(e0, True), pieceB(e0, True)
        A2, B2 = pieceA(e2, False), pieceB(e2, False)
        h1 = s == -1    # e1 arrives here exactly for negative crossings
        A1, B1 = pieceA(e1, h1), pieceB(e1, h1)
        A3, B3 = pieceA(e3, not h1), pieceB(e3, not h1)
        # cells are emitted in the annulus band's co-orientation, which is
        # reversed from the pattern block's frame; this also exchanges
        # which parallel copy runs on which side
        if s == 1:
            b.cross((A3, mW, mS, B0), 0)   # south-west corner
            b.cross((mS, mE, A1, A0), 0)   # south-east
            b.cross((B3, B2, mN, mW), 0)   # north-west
            b.cross((mN, A2, B1, mE), 0)   # north-east
        else:
            b.cross((B3, mW, mS, B0), 0)
            b.cross((mS, mE, B1, A0), 0)
            b.cross((A3, B2, mN, mW), 0)
            b.cross((mN, A2, A1, mE), 0)

    u_bot, l_bot = _twist_cells(b, tw, (a_tail, b_tail))
    b.weld(u_bot, boxD)
    b.weld(l_bot, boxC)
    b.weld(boxA, a_head)
    b.weld(boxB, b_head)

    out = b.finish()
    if out.components != 1:
        raise DiagramError("satellite construction produced a split diagram")
    return out
