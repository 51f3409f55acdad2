"""Exhaustive perfect-matching counter and tiling enumerator."""

from __future__ import annotations

from ..dualgraph import DualGraph
from .errors import ResourceLimitError

DEFAULT_NODE_BUDGET = 10**9
# recursion depth is half the vertex count; stay well inside the interpreter limit
MAX_CELLS = 1200


def _check_size(n: int):
    if n > MAX_CELLS:
        raise ResourceLimitError(f"{n} cells exceeds the brute-force limit of {MAX_CELLS}")


def count_brute(g: DualGraph, node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Count perfect matchings by branching on the lowest unmatched vertex.

    Vertices are ordered by ``(row, col)`` so every vertex below the branch
    point is already matched; the matched-set bitmask is then a frontier
    state and is memoized.
    """
    n = len(g)
    if n == 0:
        return 1
    if not g.is_balanced:
        return 0
    _check_size(n)
    up = [[w for w in nb if w > v] for v, nb in enumerate(g.adjacency)]
    full = (1 << n) - 1
    memo: dict[int, int] = {full: 1}
    nodes = 0

    def go(mask: int) -> int:
        nonlocal nodes
        hit = memo.get(mask)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > node_budget:
            raise ResourceLimitError(f"brute-force node budget {node_budget} exceeded")
        low = ~mask & (mask + 1)
        v = low.bit_length() - 1
        total = 0
        for w in up[v]:
            if not mask >> w & 1:
                total += go(mask | low | (1 << w))
        memo[mask] = total
        return total

    return go(0)


def enumerate_tilings(g: DualGraph, limit: int) -> list[frozenset]:
    """All perfect matchings as sets of cell pairs, in deterministic order.

    Raises ``ResourceLimitError`` as soon as more than ``limit`` are found.
    """
    n = len(g)
    if n and not g.is_balanced:
        return []
    _check_size(n)
    up = [[w for w in nb if w > v] for v, nb in enumerate(g.adjacency)]
    verts = g.vertices
    out: list[frozenset] = []
    chosen: list[tuple] = []

    def go(mask: int) -> None:
        if mask == (1 << n) - 1:
            if len(out) >= limit:
                raise ResourceLimitError(f"more than {limit} tilings")
            out.append(frozenset(chosen))
            return
        low = ~mask & (mask + 1)
        v = low.bit_length() - 1
        for w in up[v]:
            if not mask >> w & 1:
                chosen.append(tuple(sorted((verts[v], verts[w]))))
                go(mask | low | (1 << w))
                chosen.pop()

    go(0)
    return out
