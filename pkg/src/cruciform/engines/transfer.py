"""Broken-profile transfer-matrix counting over region columns."""

from __future__ import annotations

from ..geometry import Cell, Region
from .errors import WidthBoundError

DEFAULT_WIDTH_BOUND = 28


def _transposed(cells: frozenset[Cell]) -> frozenset[Cell]:
    return frozenset(Cell(c.row, c.col) for c in cells)


def profile_width(r: Region) -> int:
    """Smaller bounding-box side; the profile width the sweep will use."""
    if not r.cells:
        return 0
    cols = {c.col for c in r.cells}
    rows = {c.row for c in r.cells}
    return min(max(cols) - min(cols), max(rows) - min(rows)) + 1


def count_transfer(r: Region, width_bound: int = DEFAULT_WIDTH_BOUND) -> int:
    """Sweep cells column by column, bottom to top, carrying one bit per row.

    Bit ``y`` of the profile says whether the next cell at height ``y`` is
    already covered (by a horizontal domino from the left or a vertical one
    from below).  The sweep runs along whichever axis gives the narrower
    profile; tiling counts are invariant under the transpose.
    """
    cells = r.cells
    if not cells:
        return 1
    if 2 * sum(c.color for c in cells) != len(cells):
        return 0
    cols = [c.col for c in cells]
    rows = [c.row for c in cells]
    if max(rows) - min(rows) > max(cols) - min(cols):
        cells = _transposed(cells)
        cols, rows = rows, cols
    c0, r0 = min(cols), min(rows)
    width = max(cols) - c0 + 1
    height = max(rows) - r0 + 1
    if height > width_bound:
        raise WidthBoundError(f"profile height {height} exceeds bound {width_bound}")
    present = [[Cell(c0 + x, r0 + y) in cells for y in range(height)] for x in range(width)]
    present.append([False] * height)

    states = {0: 1}
    for x in range(width):
        col, nxt = present[x], present[x + 1]
        for y in range(height):
            bit = 1 << y
            new: dict[int, int] = {}
            if not col[y]:
                for mask, cnt in states.items():
                    if not mask & bit:
                        new[mask] = new.get(mask, 0) + cnt
            else:
                can_h = nxt[y]
                can_v = y + 1 < height and col[y + 1]
                up = bit << 1
                for mask, cnt in states.items():
                    if mask & bit:
                        k = mask ^ bit
                        new[k] = new.get(k, 0) + cnt
                        continue
                    if can_h:
                        k = mask | bit
                        new[k] = new.get(k, 0) + cnt
                    if can_v and not mask & up:
                        k = mask | up
                        new[k] = new.get(k, 0) + cnt
            states = new
            if not states:
                return 0
    return states.get(0, 0)
