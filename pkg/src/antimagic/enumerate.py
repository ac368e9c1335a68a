"""Isomorphism-free enumeration of small connected graphs.

Graphs on ``n`` vertices are grown from those on ``n - 1`` vertices by adding
a vertex joined to a non-empty neighbour subset (every connected graph has a
non-cut vertex, so nothing is missed) and kept when their canonical form is
new.  Counts per order, which the test suite pins:

    n       2  3  4   5    6    7      8
    graphs  1  2  6  21  112  853  11117
"""

from __future__ import annotations

from collections.abc import Iterator
from functools import lru_cache
from itertools import permutations, product

from .graph import Graph

CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}
MAX_VERTICES = 8


def _refine(adj: list[int], n: int) -> list[int]:
    """Stable colour refinement starting from degrees; colours are ranks of
    isomorphism-invariant signatures."""
    colors = [bin(a).count("1") for a in adj]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in range(n) if adj[v] >> w & 1)))
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(adj: list[int], n: int) -> tuple[int, tuple[int, ...]]:
    """Canonical code of a graph given as adjacency bitmasks.

    Returns ``(code, order)``: ``code`` is the smallest upper-triangle bit
    string over all vertex orders compatible with the refined colouring, and
    ``order[i]`` is the original vertex placed at position ``i``.
    """
    colors = _refine(adj, n)
    cells = [[v for v in range(n) if colors[v] == c] for c in sorted(set(colors))]
    best: tuple[int, tuple[int, ...]] | None = None
    for parts in product(*(permutations(cell) for cell in cells)):
        order = tuple(v for part in parts for v in part)
        code = 0
        for i in range(n):
            ai = adj[order[i]]
            for j in range(i + 1, n):
                code = code << 1 | (ai >> order[j] & 1)
        if best is None or code > best[0]:
            best = (code, order)
    assert best is not None
    return best


def _graph_from(adj: list[int], n: int, order: tuple[int, ...]) -> Graph:
    pos = {v: i for i, v in enumerate(order)}
    edges = sorted(
        (pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u])
        for u in range(n)
        for v in range(u + 1, n)
        if adj[u] >> v & 1
    )
    return Graph(n, tuple(edges))


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Graph, ...]:
    """All connected graphs of order ``n`` up to isomorphism, in a fixed order."""
    if n < 1:
        return ()
    level: dict[int, tuple[list[int], tuple[int, ...]]] = {0: ([0], (0,))}
    for k in range(2, n + 1):
        nxt: dict[int, tuple[list[int], tuple[int, ...]]] = {}
        for adj, _ in level.values():
            for mask in range(1, 1 << (k - 1)):
                grown = [a | ((mask >> v & 1) << (k - 1)) for v, a in enumerate(adj)] + [mask]
                code, order = canonical_form(grown, k)
                if code not in nxt:
                    nxt[code] = (grown, order)
        level = nxt
    return tuple(_graph_from(adj, n, order) for _, (adj, order) in sorted(level.items()))


def enumerate_connected(max_vertices: int, min_vertices: int = 2) -> Iterator[Graph]:
    """Yield every connected graph with ``min_vertices..max_vertices``
    vertices, one per isomorphism class."""
    if max_vertices > MAX_VERTICES:
        raise ValueError(f"enumeration is limited to {MAX_VERTICES} vertices")
    for n in range(max(1, min_vertices), max_vertices + 1):
        yield from connected_graphs(n)
