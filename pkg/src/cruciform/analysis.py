"""Occupation probabilities, exact uniform sampling, and static rendering."""

from __future__ import annotations

import csv
import io
import json
import random
from fractions import Fraction
from typing import Iterable, Optional

from .engines import count_cells
from .geometry import Cell, Region, adjacent, bounding_box

PRNG_NAME = "MT19937 (Python random.Random, integer seed)"
CELL_PX = 20


class UntileableRegionError(ValueError):
    pass


def domino_sites(r: Region) -> list[tuple[Cell, Cell]]:
    """Every pair of edge-adjacent cells, each pair ordered and listed once."""
    out = []
    for c in r.sorted_cells():
        for w in (Cell(c.col + 1, c.row), Cell(c.col, c.row + 1)):
            if w in r.cells:
                out.append((c, w))
    return out


def _check_site(r: Region, site) -> tuple[Cell, Cell]:
    u, v = (Cell(*x) for x in site)
    if u not in r.cells or v not in r.cells or not adjacent(u, v):
        raise ValueError(f"{site} is not a domino site of the region")
    return tuple(sorted((u, v)))


def _total(r: Region) -> int:
    total = count_cells(r.cells)
    if total == 0:
        raise UntileableRegionError(f"region {r.label!r} has no tilings")
    return total


def occupation_probability(r: Region, site) -> Fraction:
    """Fraction of tilings of ``r`` that contain the domino ``site``."""
    total = _total(r)
    u, v = _check_site(r, site)
    return Fraction(count_cells(r.cells - {u, v}), total)


def occupation_heatmap(r: Region) -> list[tuple[tuple[Cell, Cell], Fraction]]:
    total = _total(r)
    return [((u, v), Fraction(count_cells(r.cells - {u, v}), total)) for u, v in domino_sites(r)]


def heatmap_csv(rows: Iterable[tuple[tuple[Cell, Cell], Fraction]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["site", "probability"])
    for (u, v), p in rows:
        w.writerow([f"(({u.col},{u.row}),({v.col},{v.row}))", f"{p.numerator}/{p.denominator}"])
    return buf.getvalue()


# ----------------------------------------------------------------- sampling


def sample_uniform(r: Region, seed: int) -> frozenset[tuple[Cell, Cell]]:
    """Draw a tiling exactly uniformly by sequential conditioning.

    The lowest remaining cell (by column, then row) is matched to one of its
    neighbors with probability proportional to the number of tilings of
    what remains; integer draws keep every step exact.
    """
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    rng = random.Random(seed)
    remaining = r.cells
    total = _total(r)
    dominoes = []
    while remaining:
        c = min(remaining)
        options = []
        for w in c.neighbors():
            if w in remaining:
                rest = remaining - {c, w}
                k = count_cells(rest)
                if k:
                    options.append((w, rest, k))
        x = rng.randrange(total)
        for w, rest, k in sorted(options, key=lambda o: o[0]):
            if x < k:
                dominoes.append(tuple(sorted((c, w))))
                remaining, total = rest, k
                break
            x -= k
        else:  # pragma: no cover - counts are exact, so the options sum to total
            raise AssertionError("conditional counts do not add up")
    return frozenset(dominoes)


def sample_transcript(r: Region, seeds: Iterable[int]) -> str:
    samples = []
    for s in seeds:
        t = sample_uniform(r, s)
        samples.append({"seed": s, "dominoes": [[list(u), list(v)] for u, v in sorted(t)]})
    doc = {
        "metadata": {"prng": PRNG_NAME, "algorithm": "sequential exact conditioning",
                     "region": r.label, "tiling_count": str(count_cells(r.cells))},
        "samples": samples,
    }
    return json.dumps(doc, indent=1)


# ---------------------------------------------------------------- rendering


def render_ascii(r: Region, tiling: Optional[Iterable] = None, shade: bool = False) -> str:
    """Top row first.  Cells are ``#`` (``+`` for white when shading);
    with a tiling, horizontal dominoes print as ``<>`` and vertical ones
    as ``^`` over ``v``."""
    if not r.cells:
        return ""
    c0, r0, c1, r1 = bounding_box(r)
    glyph = {}
    for c in r.cells:
        glyph[c] = "+" if shade and c.color else "#"
    for u, v in tiling or ():
        u, v = sorted((Cell(*u), Cell(*v)))
        if u.row == v.row:
            glyph[u], glyph[v] = "<", ">"
        else:
            glyph[u], glyph[v] = "v", "^"
    lines = []
    for row in range(r1, r0 - 1, -1):
        lines.append("".join(glyph.get(Cell(col, row), ".") for col in range(c0, c1 + 1)).rstrip("."))
    return "\n".join(lines) + "\n"


_PALETTE = {"cell": "#ffffff", "black": "#9e9e9e", "stroke": "#000000", "domino": "#ffe082"}


def _heat_color(p: Fraction) -> str:
    # white (p = 0) to dark blue (p = 1); 255 levels
    t = float(p)
    r = round(255 - 222 * t)
    g = round(255 - 180 * t)
    b = round(255 - 75 * t)
    return f"#{r:02x}{g:02x}{b:02x}"


def render_svg(r: Region, tiling: Optional[Iterable] = None, shade: bool = False,
               heat: Optional[list] = None) -> str:
    """Deterministic SVG at ``CELL_PX`` pixels per cell, y axis pointing up."""
    if not r.cells:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0"></svg>\n'
    c0, r0, c1, r1 = bounding_box(r)
    W, H = (c1 - c0 + 1) * CELL_PX, (r1 - r0 + 1) * CELL_PX

    def xy(col, row):
        return (col - c0) * CELL_PX, (r1 - row) * CELL_PX

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
           f'viewBox="0 0 {W} {H}">']
    for c in r.sorted_cells():
        x, y = xy(c.col, c.row)
        fill = _PALETTE["black"] if shade and c.color == 0 else _PALETTE["cell"]
        out.append(f'<rect class="cell" x="{x}" y="{y}" width="{CELL_PX}" height="{CELL_PX}" '
                   f'fill="{fill}" stroke="{_PALETTE["stroke"]}" stroke-width="0.5"/>')
    for (u, v), p in heat or ():
        (x1, y1), (x2, y2) = xy(u.col + 0.5, u.row + 0.5), xy(v.col + 0.5, v.row + 0.5)
        out.append(f'<line class="site" x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}" '
                   f'stroke="{_heat_color(p)}" stroke-width="6"><title>{p}</title></line>')
    for u, v in sorted(tiling or ()):
        u, v = sorted((Cell(*u), Cell(*v)))
        x, y = xy(min(u.col, v.col), max(u.row, v.row))
        w = CELL_PX * (abs(u.col - v.col) + 1)
        h = CELL_PX * (abs(u.row - v.row) + 1)
        out.append(f'<rect class="domino" x="{x + 2}" y="{y + 2}" width="{w - 4}" height="{h - 4}" '
                   f'fill="{_PALETTE["domino"]}" stroke="{_PALETTE["stroke"]}" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(r: Region, tiling=None, fmt: str = "svg", shade: bool = False) -> str:
    if fmt == "svg":
        return render_svg(r, tiling, shade)
    if fmt == "ascii":
        return render_ascii(r, tiling, shade)
    raise ValueError(f"unknown render format {fmt!r}")
