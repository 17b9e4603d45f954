"""Canonical diagram and grid fixtures used by the tests and the
verification harness.

Grids for the two-bridge family are produced from the plat words and
simplified; every constructor cross-checks the grid against the PD
reference (Alexander polynomial, determinant, component count, and for
knots the signature), so a fixture cannot silently present the wrong
link.
"""

from __future__ import annotations

from functools import lru_cache

from . import alexpoly, grid, linkdiag, pdcode, twobridge
from ._plat import braid_closure, twobridge_word
from .grid import GridDiagram
from .pdcode import UNKNOT, PDCode


def trefoil_pd(right: bool = True) -> PDCode:
    """The (2,3) torus knot as a braid closure (writhe +3 when right)."""
    d = braid_closure([(1, 3)], 2)
    return d if right else pdcode.mirror(d)


def figure8_pd() -> PDCode:
    return twobridge.chain_link_pd(2)


def hopf_pd(positive: bool = True) -> PDCode:
    d = braid_closure([(1, 2)], 2)
    return d if positive else pdcode.mirror(d)


def unknot_grid() -> GridDiagram:
    return GridDiagram((0, 1), (1, 0))


def trefoil_grid(right: bool = True) -> GridDiagram:
    if right:
        return GridDiagram((2, 1, 0, 4, 3), (4, 3, 2, 1, 0))
    return GridDiagram((2, 3, 4, 0, 1), (0, 1, 2, 3, 4))


def figure8_grid() -> GridDiagram:
    return GridDiagram((0, 5, 1, 2, 4, 3), (4, 2, 3, 0, 1, 5))


def _checked_grid(g: GridDiagram, reference: PDCode, name: str) -> GridDiagram:
    d = grid.grid_to_pd(g)
    if d.components != reference.components:
        raise ValueError(f"{name}: grid has wrong component count")
    if alexpoly.alexander(d) != alexpoly.alexander(reference):
        raise ValueError(f"{name}: grid Alexander polynomial mismatch")
    if twobridge.determinant(d) != twobridge.determinant(reference):
        raise ValueError(f"{name}: grid determinant mismatch")
    if d.components == 1 and twobridge.signature_of_diagram(d) != \
            twobridge.signature_of_diagram(reference):
        raise ValueError(f"{name}: grid signature mismatch")
    return g


@lru_cache(maxsize=None)
def two_bridge_grid(coeffs: tuple) -> GridDiagram:
    """Simplified grid of the 2-bridge link C(coeffs), oriented to match
    two_bridge_pd (non-negative linking number for 2-component links)."""
    coeffs = tuple(coeffs)
    g = grid.simplify(grid.grid_from_plat_word(twobridge_word(list(coeffs))))
    ref = twobridge.two_bridge_pd(list(coeffs))
    d = grid.grid_to_pd(g)
    if d.components == 2 and pdcode.linking_matrix(d)[0][1] < 0:
        g = grid.reverse_grid_component(g, 0)
    return _checked_grid(g, ref, f"C{coeffs}")


@lru_cache(maxsize=None)
def chain_grid(k: int) -> GridDiagram:
    """Grid of the chain link C(k) = C(-2,...,-2) with k coefficients."""
    return two_bridge_grid((-2,) * k)


@lru_cache(maxsize=None)
def twist_knot_grid(t: int) -> GridDiagram:
    """Grid presenting the same knot as satellite(unknot, 0, t) for
    t != 0, validated against the satellite diagram."""
    if t == 0:
        return unknot_grid()
    g = grid.simplify(grid.grid_from_plat_word(twobridge_word([-2, 2 * t])))
    ref = linkdiag.satellite(UNKNOT, 0, t)
    return _checked_grid(g, ref, f"twist({t})")


def knot_fixture_grids() -> dict:
    """The knot fixtures within the full-homology budget."""
    out = {
        "unknot": unknot_grid(),
        "trefoil": trefoil_grid(True),
        "figure8": figure8_grid(),
        "C(2)": chain_grid(2),
    }
    for t in (-2, -1, 1, 2):
        out[f"twist({t})"] = twist_knot_grid(t)
    return out
