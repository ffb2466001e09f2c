"""Deterministic hand-written SVG for fences, braids, plats and band representations.

Coordinates are integers scaled by a fixed unit, so identical input always
gives byte-identical output.  Over-crossings are drawn by breaking the
under strand.
"""

from __future__ import annotations

from .braid import BandRepresentation, BraidWord, PlatPlan
from .fence import Fence, _crossings, band_rep_to_fence

__all__ = ["RenderError", "render_svg", "fence_svg", "braid_svg", "plat_svg"]

UNIT = 40
MARGIN = 30
GAP = 6  # half-length of the break in an under strand
STROKE = 'stroke="black" stroke-width="2" fill="none"'


class RenderError(TypeError):
    pass


def _doc(width: int, height: int, body: list) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _line(x0, y0, x1, y1, cls) -> str:
    return f'<line class="{cls}" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" {STROKE}/>'


def fence_svg(f: Fence) -> str:
    xs = [p.x for p in f.posts]
    ys = [y for p in f.posts for y in (p.y0, p.y1)]
    x_lo, y_hi = min(xs), max(ys)
    width = (max(xs) - x_lo) * UNIT + 2 * MARGIN
    height = (y_hi - min(ys)) * UNIT + 2 * MARGIN
    px = lambda x: (x - x_lo) * UNIT + MARGIN
    py = lambda y: (y_hi - y) * UNIT + MARGIN

    breaks = {i: [] for i in range(len(f.posts))}
    for i, j in _crossings(f):
        breaks[i].append(f.wires[j].y)
    body = []
    for i, p in enumerate(f.posts):
        # wires pass over posts, so a post is cut where a wire crosses it
        top = py(p.y1)
        for y in sorted(breaks[i], reverse=True):
            body.append(_line(px(p.x), top, px(p.x), py(y) - GAP, "post"))
            top = py(y) + GAP
        body.append(_line(px(p.x), top, px(p.x), py(p.y0), "post"))
    for w in f.wires:
        body.append(_line(px(w.x0), py(w.y), px(w.x1), py(w.y), "wire"))
        sign = "+" if w.charge > 0 else "-"
        mid = (px(w.x0) + px(w.x1)) // 2
        body.append(f'<text class="charge" x="{mid}" y="{py(w.y) - 5}" font-size="14" '
                    f'text-anchor="middle">{sign}</text>')
    return _doc(width, height, body)


def _strands(w: BraidWord, y_base: int, px, body: list) -> None:
    """Draw the braid from the bottom (large y) upward, one level per letter."""
    for level, letter in enumerate(w.letters):
        y0 = y_base - level * UNIT
        y1 = y0 - UNIT
        i = abs(letter)
        for s in range(1, w.n + 1):
            if s not in (i, i + 1):
                body.append(_line(px(s), y0, px(s), y1, "strand"))
        left, right = px(i), px(i + 1)
        # positive letter: the strand from bottom left goes over
        over = (left, y0, right, y1) if letter > 0 else (right, y0, left, y1)
        under = (right, y0, left, y1) if letter > 0 else (left, y0, right, y1)
        body.append(_line(*over, "over"))
        xm, ym = (left + right) // 2, (y0 + y1) // 2
        dx = GAP if under[2] > under[0] else -GAP
        body.append(_line(under[0], under[1], xm - dx, ym + GAP, "under"))
        body.append(_line(xm + dx, ym - GAP, under[2], under[3], "under"))


def braid_svg(w: BraidWord) -> str:
    px = lambda s: (s - 1) * UNIT + MARGIN
    height = max(len(w.letters), 1) * UNIT + 2 * MARGIN
    width = (w.n - 1) * UNIT + 2 * MARGIN
    body = []
    y_base = height - MARGIN
    _strands(w, y_base, px, body)
    if not w.letters:
        for s in range(1, w.n + 1):
            body.append(_line(px(s), y_base, px(s), MARGIN, "strand"))
    return _doc(width, height, body)


def _arcs(pairs, y: int, px, down: bool, body: list) -> None:
    for a, b in pairs:
        depth = (b - a) * UNIT // 2
        yc = y + depth if down else y - depth
        body.append(f'<path class="{"cup" if down else "cap"}" '
                    f'd="M {px(a)} {y} C {px(a)} {yc} {px(b)} {yc} {px(b)} {y}" {STROKE}/>')


def plat_svg(w: BraidWord, plan: PlatPlan) -> str:
    px = lambda s: (s - 1) * UNIT + MARGIN
    levels = max(len(w.letters), 1)
    reach = w.n * UNIT // 2
    height = levels * UNIT + 2 * reach + 2 * MARGIN
    width = (w.n - 1) * UNIT + 2 * MARGIN
    y_base = height - MARGIN - reach
    body = []
    _strands(w, y_base, px, body)
    y_top = y_base - len(w.letters) * UNIT
    if not w.letters:
        y_top = y_base - UNIT
        for s in range(1, w.n + 1):
            body.append(_line(px(s), y_base, px(s), y_top, "strand"))
    _arcs(plan.bottom, y_base, px, True, body)
    _arcs(plan.top, y_top, px, False, body)
    return _doc(width, height, body)


def render_svg(obj) -> str:
    """SVG for a Fence, BraidWord, (BraidWord, PlatPlan) or BandRepresentation."""
    if isinstance(obj, Fence):
        return fence_svg(obj)
    if isinstance(obj, BandRepresentation):
        return fence_svg(band_rep_to_fence(obj))
    if isinstance(obj, BraidWord):
        return braid_svg(obj)
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[1], PlatPlan):
        return plat_svg(*obj)
    raise RenderError(f"cannot render {type(obj).__name__}")
