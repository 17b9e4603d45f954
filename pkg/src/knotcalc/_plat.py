"""Braid words, trace closures, and 4-plat closures over the cell builder.

A braid word is a list of (position, exponent) syllables acting on
`width` strands; positions are 1-based, so (1, -2) means two negative
crossings between strands 1 and 2.  Positive exponents produce positive
oriented crossings when both strands are parallel.
"""

from __future__ import annotations

from ._cells import Builder
from .pdcode import PDCode


def _apply_word(b: Builder, tips: list[int], word) -> list[int]:
    tips = list(tips)
    for pos, exp in word:
        i = pos - 1
        if not 0 <= i < len(tips) - 1:
            raise ValueError(f"braid position {pos} out of range")
        over = 0 if exp > 0 else 1
        for _ in range(abs(exp)):
            ne, nw = tips[i + 1], tips[i]
            sw, se = b.fresh(), b.fresh()
            # corners counterclockwise: NE, NW, SW, SE
            b.cross((ne, nw, sw, se), over)
            tips[i], tips[i + 1] = sw, se
    return tips


def braid_closure(word, width: int) -> PDCode:
    """Trace closure of a braid word."""
    b = Builder()
    top = [b.fresh() for _ in range(width)]
    bottom = _apply_word(b, top, word)
    for t, u in zip(top, bottom):
        b.weld(t, u)
    return b.finish()


def plat_closure(word, width: int = 4) -> PDCode:
    """Plat closure: cap strand pairs (1,2), (3,4), ... at top and bottom."""
    if width % 2:
        raise ValueError("plat closure needs an even number of strands")
    b = Builder()
    top = [b.fresh() for _ in range(width)]
    bottom = _apply_word(b, top, word)
    for k in range(0, width, 2):
        b.weld(top[k], top[k + 1])
        b.weld(bottom[k], bottom[k + 1])
    return b.finish()


def twobridge_word(coeffs) -> list[tuple[int, int]]:
    """Plat word for the 2-bridge link in Conway normal form.

    Odd-indexed coefficients twist strands 2,3 and even-indexed ones
    strands 1,2 (with negated exponent), which renders an all-equal-sign
    coefficient list as an alternating diagram.  Even-length lists are
    rewritten [..., a] -> [..., a-1, 1], preserving the continued
    fraction, so the word always ends on a (2,3)-syllable.
    """
    cs = [int(c) for c in coeffs]
    if not cs or any(c == 0 for c in cs):
        raise ValueError("coefficients must be nonzero")
    if len(cs) % 2 == 0:
        cs = cs[:-1] + [cs[-1] - 1, 1]
        if cs[-2] == 0:
            cs = cs[:-2] + [cs[-1]]
    word = []
    for idx, c in enumerate(cs):
        if idx % 2 == 0:
            word.append((2, c))
        else:
            word.append((1, -c))
    return word
