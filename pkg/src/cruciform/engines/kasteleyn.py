"""Kasteleyn determinant counting with exact fraction-free elimination."""

from __future__ import annotations

from ..dualgraph import DualGraph, dual_graph, split_components
from ..geometry import Cell, Region
from .errors import NotSimplyConnectedError


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss, division-exact).

    Every intermediate entry is a minor of the input, so all divisions are
    exact and no rationals appear.
    """
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def square_face_count(cells) -> int:
    """Number of 2x2 blocks fully inside the cell set."""
    cells = set(cells)
    return sum(
        1
        for c in cells
        if Cell(c.col + 1, c.row) in cells
        and Cell(c.col, c.row + 1) in cells
        and Cell(c.col + 1, c.row + 1) in cells
    )


def is_simply_connected(g: DualGraph) -> bool:
    """True when every bounded face of the dual graph is a unit 4-cycle.

    By Euler's formula the bounded faces number ``E - V + C``; they are all
    squares exactly when that equals the number of 2x2 blocks.
    """
    comps = len(split_components(g)) if len(g) else 0
    return len(g.edges) - len(g) + comps == square_face_count(g.vertices)


def kasteleyn_matrix(g: DualGraph) -> tuple[list[list[int]], list[Cell], list[Cell]]:
    """Signed white-by-black biadjacency matrix.

    Horizontal edges get ``+1``; the vertical edge between ``(c, r)`` and
    ``(c, r+1)`` gets ``(-1)**c``, so each unit face carries sign product -1.
    """
    whites = [v for v in g.vertices if v.color == 1]
    blacks = [v for v in g.vertices if v.color == 0]
    bindex = {v: j for j, v in enumerate(blacks)}
    mat = [[0] * len(blacks) for _ in whites]
    for i, w in enumerate(whites):
        for dc, dr in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            j = bindex.get(Cell(w.col + dc, w.row + dr))
            if j is None:
                continue
            if dr == 0:
                mat[i][j] = 1
            else:
                mat[i][j] = -1 if w.col % 2 else 1
    return mat, whites, blacks


def count_kasteleyn(r: Region | DualGraph) -> int:
    g = r if isinstance(r, DualGraph) else dual_graph(r)
    if len(g) == 0:
        return 1
    if not g.is_balanced:
        return 0
    if not is_simply_connected(g):
        raise NotSimplyConnectedError(f"region {g.label!r} has a non-square bounded face")
    mat, _, _ = kasteleyn_matrix(g)
    return abs(bareiss_determinant(mat))
