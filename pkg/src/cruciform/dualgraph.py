"""Bipartite dual graphs of regions and their preprocessing."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .geometry import Cell, GeometryError, Region, build_aztec_rectangle


@dataclass(frozen=True)
class DualGraph:
    """Cells as vertices, edge-sharing pairs as edges.

    ``vertices`` is sorted by ``(row, col)``; ``edges`` holds index pairs
    ``(i, j)`` with ``i < j``; ``colors[i]`` is the chessboard color.
    """

    vertices: tuple[Cell, ...]
    edges: frozenset[tuple[int, int]]
    colors: tuple[int, ...] = field(init=False)
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(v.color for v in self.vertices))

    def __len__(self):
        return len(self.vertices)

    @property
    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in self.vertices]
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    @property
    def is_balanced(self) -> bool:
        return 2 * sum(self.colors) == len(self.colors)

    def to_region(self) -> Region:
        return Region(frozenset(self.vertices), self.label)

    def subgraph(self, keep) -> "DualGraph":
        """Induced subgraph on the vertex indices in ``keep``."""
        return from_cells([self.vertices[i] for i in keep], self.label)

    def to_dict(self) -> dict:
        return {
            "vertices": [[v.col, v.row] for v in self.vertices],
            "edges": [list(e) for e in sorted(self.edges)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _vertex_key(c: Cell):
    return (c.row, c.col)


def from_cells(cells, label: str = "") -> DualGraph:
    verts = tuple(sorted({Cell(*c) for c in cells}, key=_vertex_key))
    index = {v: i for i, v in enumerate(verts)}
    edges = set()
    for i, v in enumerate(verts):
        for w in (Cell(v.col + 1, v.row), Cell(v.col, v.row + 1)):
            j = index.get(w)
            if j is not None:
                edges.add((min(i, j), max(i, j)))
    return DualGraph(verts, frozenset(edges), label)


def dual_graph(r: Region) -> DualGraph:
    return from_cells(r.cells, r.label)


def graph_from_dict(doc: dict) -> DualGraph:
    g = from_cells([tuple(v) for v in doc["vertices"]])
    if "edges" in doc and {tuple(e) for e in doc["edges"]} != set(g.edges):
        raise ValueError("edge list does not match the cell adjacency of the vertices")
    return g


def intruded_region(M: int, N: int, k: int, p: int, q: int) -> Region:
    """``AR_{M,N}`` minus the ``p`` lowest-``s`` and ``q`` highest-``s`` cells
    of the diagonal ``d = 2k+2``.

    That diagonal has ``M+1`` cells and separates ``AR_{M,k}`` from the rest.
    The result coincides with ``build_cruciform(M, 0, k, -q, N-1-k, -p)``.
    """
    if not 0 <= k <= N - 1:
        raise GeometryError(f"need 0 <= k <= N-1, got k={k}, N={N}")
    if p < 0 or q < 0 or p + q > M + 1:
        raise GeometryError(f"need p, q >= 0 and p + q <= M+1, got p={p}, q={q}, M={M}")
    body = build_aztec_rectangle(M, N)
    diag = sorted((c for c in body.cells if c.d == 2 * k + 2), key=lambda c: c.s)
    drop = diag[:p] + (diag[len(diag) - q:] if q else [])
    return Region(body.cells - set(drop), f"intruded_ar({M},{N},{k},{p},{q})")


def intruded_ar_graph(M: int, N: int, k: int, p: int, q: int) -> DualGraph:
    return dual_graph(intruded_region(M, N, k, p, q))


@dataclass
class Reduction:
    reduced: DualGraph
    forced_edges: list[tuple[Cell, Cell]]
    infeasible: bool


def reduce_forced(g: DualGraph) -> Reduction:
    """Peel off degree-1 vertices together with their unique partner.

    The matching count is unchanged; an isolated vertex makes the graph
    unmatchable and sets ``infeasible``.
    """
    adj = [set(a) for a in g.adjacency]
    alive = set(range(len(g)))
    forced = []
    stack = [v for v in alive if len(adj[v]) <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        if not adj[v]:
            return Reduction(g.subgraph(sorted(alive)), forced, True)
        if len(adj[v]) > 1:
            continue
        (w,) = adj[v]
        forced.append(tuple(sorted((g.vertices[v], g.vertices[w]))))
        for x in (v, w):
            alive.discard(x)
            for y in adj[x]:
                adj[y].discard(x)
                if y in alive and len(adj[y]) <= 1:
                    stack.append(y)
            adj[x] = set()
    return Reduction(g.subgraph(sorted(alive)), forced, False)


def split_components(g: DualGraph) -> list[DualGraph]:
    adj = g.adjacency
    seen = [False] * len(g)
    comps = []
    for s in range(len(g)):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(g.subgraph(sorted(comp)))
    return comps
