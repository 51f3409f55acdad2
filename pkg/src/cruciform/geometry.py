"""Lattice regions and the constructors for every region family.

A cell ``(col, row)`` is the unit square ``[col, col+1] x [row, row+1]``.
Most constructors work in diagonal coordinates

    s = col + row + 1        (grows toward the northeast)
    d = col - row            (grows toward the southeast)

in which the Aztec rectangle ``AR_{m,n}`` is the box ``1 <= s <= 2m+1``,
``1 <= d <= 2n+1`` (cells exist only where ``s + d`` is odd).  The cell
color is ``(col + row) % 2``; color 0 is called black.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple


class GeometryError(ValueError):
    """Invalid parameters for a region constructor."""


class Cell(NamedTuple):
    col: int
    row: int

    @property
    def s(self) -> int:
        return self.col + self.row + 1

    @property
    def d(self) -> int:
        return self.col - self.row

    @property
    def color(self) -> int:
        return (self.col + self.row) % 2

    @classmethod
    def from_sd(cls, s: int, d: int) -> "Cell":
        assert (s + d) % 2 == 1, (s, d)
        return cls((s + d - 1) // 2, (s - d - 1) // 2)

    def neighbors(self) -> tuple["Cell", "Cell", "Cell", "Cell"]:
        c, r = self
        return (Cell(c + 1, r), Cell(c - 1, r), Cell(c, r + 1), Cell(c, r - 1))


def adjacent(u: Cell, v: Cell) -> bool:
    return abs(u.col - v.col) + abs(u.row - v.row) == 1


@dataclass(frozen=True)
class Region:
    """An immutable finite set of cells with a provenance label."""

    cells: frozenset[Cell]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset(Cell(*c) for c in self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return Cell(*cell) in self.cells

    def __iter__(self):
        return iter(self.sorted_cells())

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def union(self, other: "Region", label: str = "") -> "Region":
        return Region(self.cells | other.cells, label or f"{self.label}|{other.label}")

    def difference(self, cells: Iterable, label: str = "") -> "Region":
        drop = {Cell(*c) for c in cells}
        return Region(self.cells - drop, label or self.label)

    @property
    def black_count(self) -> int:
        return sum(1 for c in self.cells if c.color == 0)

    @property
    def white_count(self) -> int:
        return len(self.cells) - self.black_count

    @property
    def is_balanced(self) -> bool:
        return self.black_count == self.white_count

    def normalized(self) -> "Region":
        """Translate so the minimum column and row are 0.  The shift may
        have odd parity, so colors can flip; meant for congruence tests."""
        if not self.cells:
            return self
        c0 = min(c.col for c in self.cells)
        r0 = min(c.row for c in self.cells)
        return Region({Cell(c.col - c0, c.row - r0) for c in self.cells}, self.label)


def _from_sd(pairs: Iterable[tuple[int, int]], label: str) -> Region:
    return Region({Cell.from_sd(s, d) for s, d in pairs}, label)


def _sd_box(s_lo: int, s_hi: int, d_lo: int, d_hi: int):
    for s in range(s_lo, s_hi + 1):
        for d in range(d_lo, d_hi + 1):
            if (s + d) % 2 == 1:
                yield s, d


# ---------------------------------------------------------------- families


def build_aztec_rectangle(m: int, n: int) -> Region:
    if m < 0 or n < 0:
        raise GeometryError(f"Aztec rectangle needs m, n >= 0, got {m}, {n}")
    return _from_sd(_sd_box(1, 2 * m + 1, 1, 2 * n + 1), f"aztec_rectangle({m},{n})")


def build_aztec_diamond(n: int) -> Region:
    r = build_aztec_rectangle(n, n)
    return Region(r.cells, f"aztec_diamond({n})")


@dataclass(frozen=True)
class CruciformParams:
    m: int
    n: int
    a: int
    b: int
    c: int
    d: int

    def __iter__(self):
        return iter((self.m, self.n, self.a, self.b, self.c, self.d))

    @property
    def satisfies_balance(self) -> bool:
        return self.a + self.b + self.c + self.d == self.m + self.n - 1

    def rotated(self) -> "CruciformParams":
        """The 90 degree relabeling (m,n,a,b,c,d) -> (n,m,b,a,d,c)."""
        m, n, a, b, c, d = self
        return CruciformParams(n, m, b, a, d, c)

    def validate(self) -> None:
        m, n, a, b, c, d = self
        if m < 0 or n < 0:
            raise GeometryError(f"m, n must be >= 0: {tuple(self)}")
        if a < 0 or c < 0:
            raise GeometryError(
                f"a, c must be >= 0 (normalize with rotated() first): {tuple(self)}")
        if a > m or c > m or b > n or d > n:
            raise GeometryError(f"pier longer than the body allows: {tuple(self)}")
        for name, v in (("b", b), ("d", d)):
            if v < 0 and 2 * (-v) - 1 > 2 * m:
                raise GeometryError(f"bay {name}={v} is deeper than the body: {tuple(self)}")
        # both bays cut the same band; overlapping windows would double-remove
        if b < 0 and d < 0 and (2 * -b - 1) + (2 * -d - 1) > 2 * m + 1:
            raise GeometryError(f"bays b={b} and d={d} overlap: {tuple(self)}")


def build_cruciform(*params) -> Region:
    """``C_{m,n}^{a,b,c,d}`` for ``a, c >= 0``; ``b`` and ``d`` may be negative.

    Accepts either a ``CruciformParams`` or the six integers.  The body is
    ``AR_{m, a+n+c+1}``; the northeast (``b``) and southwest (``d``) piers
    live on the band of ``2n+1`` diagonals ``2a+2 <= d <= 2a+2n+2``.  A pier
    of length ``k >= 0`` adds ``2k+1`` anti-diagonals, a bay of depth ``|k|``
    removes ``2|k|-1`` of them.
    """
    p = params[0] if len(params) == 1 else CruciformParams(*params)
    p.validate()
    m, n, a, b, c, d = p
    K = a + n + c + 1
    band = (2 * a + 2, 2 * a + 2 * n + 2)
    cells = set(_sd_box(1, 2 * m + 1, 1, 2 * K + 1))
    if b >= 0:
        cells.update(_sd_box(2 * m + 2, 2 * m + 2 * b + 2, *band))
    else:
        cells.difference_update(_sd_box(2 * m + 3 + 2 * b, 2 * m + 1, *band))
    if d >= 0:
        cells.update(_sd_box(-2 * d, 0, *band))
    else:
        cells.difference_update(_sd_box(1, -2 * d - 1, *band))
    return _from_sd(cells, f"cruciform({m},{n},{a},{b},{c},{d})")


def elbow_cut_heights(n: int, a: int) -> tuple[int, int]:
    """Row index of the cut row L and of the lowest row kept, for ``E_n^{a,b}``."""
    return -a - 1, -a


def build_elbow(n: int, a: int, b: int) -> Region:
    """The part of ``C_{n,n}^{a,b,b,a-1}`` strictly above its row ``L``.

    ``L`` is the row ``s - d = -(2a+1)`` (row index ``-a-1``), the row
    joining the western and eastern outer corners.
    """
    if n < 1 or a < 0 or b < 0 or a > n or b > n:
        raise GeometryError(f"elbow needs n >= 1 and 0 <= a, b <= n: {(n, a, b)}")
    full = build_cruciform(n, n, a, b, b, a - 1)
    _, lowest = elbow_cut_heights(n, a)
    return Region({c for c in full.cells if c.row >= lowest}, f"elbow({n},{a},{b})")


def build_t_region(m: int, n: int, b: int, c: int, d: int) -> Region:
    """``C_{m,n}^{m,b,c,d}`` with its forced Aztec diamond ``AD_m`` removed."""
    if m < 1:
        raise GeometryError(f"T-region needs m >= 1, got {m}")
    full = build_cruciform(m, n, m, b, c, d)
    return Region({x for x in full.cells if x.d >= 2 * m + 2}, f"t_region({m},{n},{b},{c},{d})")


def build_half_square(n: int) -> Region:
    """Upper-left half of the ``2n x 2n`` square cut by a step-2 zigzag."""
    if n < 1:
        raise GeometryError(f"half square needs n >= 1, got {n}")
    cells = {
        Cell(i, j)
        for i in range(2 * n - 1)
        for j in range(2 * ((i + 1) // 2), 2 * n)
    }
    return Region(cells, f"half_square({n})")


def _half_diamond_rows(n: int, col0: int, row0: int) -> set[Cell]:
    cells = set()
    for j in range(n - 1):
        for i in range(col0 + j, col0 + 2 * (n - 1) - j):
            cells.add(Cell(i, row0 + j))
    return cells


def build_half_diamond(n: int) -> Region:
    """Top half of ``AD_{n-1}``: rows of widths ``2(n-1), 2(n-2), ..., 2``."""
    if n < 1:
        raise GeometryError(f"half diamond needs n >= 1, got {n}")
    return Region(_half_diamond_rows(n, 0, 0), f"half_diamond({n})")


def build_di_francesco(n: int) -> Region:
    """``T_n``: ``HD_{n-1}`` stacked on ``HS_{2n}``, right edges flush at column 2n-2."""
    hs = build_half_square(n)
    return Region(hs.cells | _half_diamond_rows(n, 1, 2 * n), f"di_francesco({n})")


# -------------------------------------------------------------- transforms

TRANSFORMS = ("rot90", "rot180", "reflectH", "reflectV", "translate")


def transform_region(r: Region, t: str, dx: int = 0, dy: int = 0) -> Region:
    """Apply a lattice isometry.

    ``reflectH`` mirrors across a horizontal axis (row -> -row),
    ``reflectV`` across a vertical axis (col -> -col).  Cell ``(c, r)`` is
    the square with lower-left corner ``(c, r)``, so the images are shifted
    by one to land on lattice cells again.
    """
    if t == "rot90":            # (x, y) -> (-y, x)
        f = lambda c: Cell(-c.row - 1, c.col)
    elif t == "rot180":
        f = lambda c: Cell(-c.col - 1, -c.row - 1)
    elif t == "reflectH":
        f = lambda c: Cell(c.col, -c.row - 1)
    elif t == "reflectV":
        f = lambda c: Cell(-c.col - 1, c.row)
    elif t == "translate":
        f = lambda c: Cell(c.col + dx, c.row + dy)
    else:
        raise GeometryError(f"unknown transform {t!r}")
    return Region({f(c) for c in r.cells}, f"{t}({r.label})")


def congruent_by_translation(r1: Region, r2: Region) -> bool:
    return r1.normalized().cells == r2.normalized().cells


# ------------------------------------------------------------------- stats


@dataclass(frozen=True)
class RegionStats:
    cell_count: int
    black_count: int
    white_count: int
    is_balanced: bool
    bounding_box: tuple[int, int]     # (width, height)
    component_count: int


def connected_components(cells: Iterable[Cell]) -> list[set[Cell]]:
    remaining = set(cells)
    comps = []
    while remaining:
        start = min(remaining)
        remaining.discard(start)
        comp = {start}
        queue = deque([start])
        while queue:
            for v in queue.popleft().neighbors():
                if v in remaining:
                    remaining.discard(v)
                    comp.add(v)
                    queue.append(v)
        comps.append(comp)
    return comps


def bounding_box(r: Region) -> tuple[int, int, int, int]:
    """(min_col, min_row, max_col, max_row); raises on an empty region."""
    if not r.cells:
        raise GeometryError("empty region has no bounding box")
    cols = [c.col for c in r.cells]
    rows = [c.row for c in r.cells]
    return min(cols), min(rows), max(cols), max(rows)


def region_stats(r: Region) -> RegionStats:
    if r.cells:
        c0, r0, c1, r1 = bounding_box(r)
        box = (c1 - c0 + 1, r1 - r0 + 1)
    else:
        box = (0, 0)
    black = r.black_count
    return RegionStats(
        cell_count=len(r.cells),
        black_count=black,
        white_count=len(r.cells) - black,
        is_balanced=2 * black == len(r.cells),
        bounding_box=box,
        component_count=len(connected_components(r.cells)),
    )


# ----------------------------------------------------------- serialization

CONSTRUCTORS = {
    "aztec_rectangle": (build_aztec_rectangle, ("m", "n")),
    "aztec_diamond": (build_aztec_diamond, ("n",)),
    "cruciform": (build_cruciform, ("m", "n", "a", "b", "c", "d")),
    "elbow": (build_elbow, ("n", "a", "b")),
    "t_region": (build_t_region, ("m", "n", "b", "c", "d")),
    "half_square": (build_half_square, ("n",)),
    "half_diamond": (build_half_diamond, ("n",)),
    "di_francesco": (build_di_francesco, ("n",)),
}


def build_from_constructor(kind: str, **params) -> Region:
    try:
        fn, names = CONSTRUCTORS[kind]
    except KeyError:
        raise GeometryError(f"unknown constructor kind {kind!r}") from None
    missing = set(names) - set(params)
    extra = set(params) - set(names)
    if missing or extra:
        raise GeometryError(f"{kind} expects parameters {names}, got {sorted(params)}")
    return fn(*(int(params[k]) for k in names))


def region_to_dict(r: Region) -> dict:
    return {"cells": [[c.col, c.row] for c in r.sorted_cells()]}


def region_to_json(r: Region) -> str:
    return json.dumps(region_to_dict(r), separators=(",", ":"))


def region_from_dict(doc: dict) -> Region:
    if "cells" in doc:
        cells = [Cell(int(c), int(r)) for c, r in doc["cells"]]
        if len(set(cells)) != len(cells):
            raise GeometryError("duplicate cells in region document")
        return Region(frozenset(cells), doc.get("label", "cells"))
    if "constructor" in doc:
        spec = dict(doc["constructor"])
        kind = spec.pop("kind")
        return build_from_constructor(kind, **spec)
    raise GeometryError("region document needs a 'cells' or 'constructor' key")


def region_from_json(text: str) -> Region:
    return region_from_dict(json.loads(text))
