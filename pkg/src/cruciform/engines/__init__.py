"""Exact tiling counters and the engine dispatcher."""

from __future__ import annotations

from functools import lru_cache

from ..dualgraph import DualGraph, dual_graph, reduce_forced, split_components
from ..geometry import Region
from .brute import DEFAULT_NODE_BUDGET, count_brute, enumerate_tilings
from .errors import EngineError, NotSimplyConnectedError, ResourceLimitError, WidthBoundError
from .kasteleyn import bareiss_determinant, count_kasteleyn, is_simply_connected
from .transfer import DEFAULT_WIDTH_BOUND, count_transfer, profile_width

ENGINES = ("auto", "brute", "transfer", "kasteleyn")

# auto mode prefers the transfer sweep up to this profile width
AUTO_TRANSFER_WIDTH = 14

__all__ = [
    "ENGINES", "EngineError", "NotSimplyConnectedError", "ResourceLimitError",
    "WidthBoundError", "bareiss_determinant", "count", "count_brute",
    "count_cells", "count_kasteleyn", "count_transfer", "count_with_engine",
    "enumerate_tilings", "is_simply_connected",
]


def _count_component(g: DualGraph) -> tuple[int, str]:
    r = g.to_region()
    if profile_width(r) <= AUTO_TRANSFER_WIDTH:
        return count_transfer(r), "transfer"
    if is_simply_connected(g):
        return count_kasteleyn(g), "kasteleyn"
    try:
        return count_transfer(r), "transfer"
    except WidthBoundError:
        return count_brute(g), "brute"


def count_with_engine(r: Region, engine: str = "auto") -> tuple[int, str]:
    """Tiling count plus a provenance string naming the engine(s) used."""
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
    if not r.is_balanced:
        return 0, "color-count"
    if engine == "brute":
        return count_brute(dual_graph(r)), "brute"
    if engine == "transfer":
        return count_transfer(r), "transfer"
    if engine == "kasteleyn":
        return count_kasteleyn(r), "kasteleyn"

    red = reduce_forced(dual_graph(r))
    if red.infeasible:
        return 0, "forced-reduction"
    total, used = 1, set()
    for comp in split_components(red.reduced):
        if not comp.is_balanced:
            return 0, "color-count"
        c, name = _count_component(comp)
        used.add(name)
        total *= c
        if total == 0:
            break
    return total, "auto:" + "+".join(sorted(used)) if used else "auto:forced"


def count(r: Region, engine: str = "auto") -> int:
    return count_with_engine(r, engine)[0]


@lru_cache(maxsize=1 << 16)
def count_cells(cells: frozenset) -> int:
    """Memoized auto count keyed by the cell set."""
    return count(Region(cells))
