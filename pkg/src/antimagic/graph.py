"""Simple undirected graphs with stable integer ids, vertex classes and the
structural constructions (pruning, leafy extension, subdivision)."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path


class GraphError(ValueError):
    """Raised for malformed graphs or invalid structural requests."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edge ids are the positions in ``edges`` and never change once the graph
    is built. Each edge is stored as ``(min, max)``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("negative vertex count")
        norm = []
        seen = set()
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(self.edges):
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {eid} ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in seen:
                raise GraphError(f"parallel edge {a}-{b}")
            seen.add((a, b))
            norm.append((a, b))
            adj[a].append((b, eid))
            adj[b].append((a, eid))
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(
            self, "adjacency", tuple(tuple(sorted(nbrs)) for nbrs in adj)
        )

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> Graph:
        edges = [(int(u), int(v)) for u, v in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if a == v else a

    def edge_id(self, u: int, v: int) -> int:
        for w, eid in self.adjacency[u]:
            if w == v:
                return eid
        raise GraphError(f"no edge {u}-{v}")

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w, _ in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def is_path(self) -> bool:
        return self.is_tree() and self.m >= 1 and max(self.degrees()) <= 2

    def is_cycle(self) -> bool:
        return self.m >= 3 and self.is_connected() and all(d == 2 for d in self.degrees())

    def is_star(self) -> bool:
        """Tree of order at least three with exactly one interior vertex."""
        return self.is_tree() and self.n >= 3 and sum(d > 1 for d in self.degrees()) == 1


def subgraph(g: Graph, edge_ids: Iterable[int]) -> tuple[Graph, tuple[int, ...], tuple[int, ...]]:
    """Edge-induced subgraph, relabeled densely.

    Returns ``(h, origin_vertex, origin_edge)`` where ``origin_vertex[i]`` is
    the vertex of ``g`` behind vertex ``i`` of ``h`` and likewise for edges.
    Vertex and edge order follow the ids of ``g``.
    """
    eids = sorted(set(edge_ids))
    verts = sorted({x for e in eids for x in g.edges[e]})
    index = {v: i for i, v in enumerate(verts)}
    h = Graph(len(verts), tuple((index[g.edges[e][0]], index[g.edges[e][1]]) for e in eids))
    return h, tuple(verts), tuple(eids)


def components(g: Graph, edge_ids: Iterable[int]) -> list[list[int]]:
    """Connected components of the edge set, as sorted edge-id lists ordered
    by their smallest vertex."""
    eids = set(edge_ids)
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in eids:
        u, v = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for e in eids:
        groups.setdefault(find(g.edges[e][0]), []).append(e)
    # the union-find root is the smallest vertex of each component
    return [sorted(groups[r]) for r in sorted(groups)]


# --- vertex classes -------------------------------------------------------


@dataclass(frozen=True)
class VertexClasses:
    interior: frozenset[int]
    leaves: frozenset[int]
    supports: frozenset[int]
    deg3: frozenset[int]
    supports_prime: frozenset[int]
    supports_prime_3: frozenset[int]


def classify(g: Graph) -> VertexClasses:
    """Compute interior, leaf, support, degree->=3 and V_s' style classes.

    A support vertex counts as "all but one neighbour are leaves" when it has
    at most one non-leaf neighbour, so the centre of a star qualifies.
    """
    deg = g.degrees()
    leaves = frozenset(v for v in range(g.n) if deg[v] == 1)
    interior = frozenset(v for v in range(g.n) if deg[v] > 1)
    supports = frozenset(v for v in range(g.n) if any(w in leaves for w in g.neighbors(v)))
    deg3 = frozenset(v for v in range(g.n) if deg[v] >= 3)
    supports_prime = frozenset(
        v for v in supports if sum(w not in leaves for w in g.neighbors(v)) <= 1
    )
    return VertexClasses(
        interior=interior,
        leaves=leaves,
        supports=supports,
        deg3=deg3,
        supports_prime=supports_prime,
        supports_prime_3=supports_prime & deg3,
    )


def pendant_edges(g: Graph, v: int, leaves: frozenset[int] | None = None) -> list[int]:
    """Ids of pendant edges at ``v`` in ascending order."""
    if leaves is None:
        leaves = frozenset(x for x in range(g.n) if g.degree(x) == 1)
    return sorted(eid for w, eid in g.adjacency[v] if w in leaves)


def bald_vertices(g: Graph, classes: VertexClasses | None = None) -> list[int]:
    """Vertices of degree at least three that are not support vertices."""
    classes = classes or classify(g)
    return sorted(classes.deg3 - classes.supports)


# --- pruning --------------------------------------------------------------


@dataclass(frozen=True)
class PrunedGraph:
    graph: Graph
    origin_vertex: tuple[int, ...]
    origin_edge: tuple[int, ...]
    kept_edge_of: Mapping[int, int]

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(self.origin_edge)

    @property
    def vertex_ids(self) -> frozenset[int]:
        return frozenset(self.origin_vertex)


def prune(
    g: Graph,
    classes: VertexClasses | None = None,
    exclude: Iterable[int] = (),
) -> PrunedGraph:
    """Pruned graph of a connected graph.

    Every vertex of V_s' keeps one leaf (the smallest-id leaf whose edge is not
    in ``exclude``); leaves of all other supports are removed.  ``K_2`` is its
    own pruned graph and a star prunes to its centre plus two leaves.
    """
    if g.m == 0:
        raise GraphError("cannot prune a graph without edges")
    if not g.is_connected():
        raise GraphError("pruning requires a connected graph")
    classes = classes or classify(g)
    banned = frozenset(exclude)

    def unlabeled_pendants(v: int) -> list[tuple[int, int]]:
        return sorted((w, eid) for w, eid in g.adjacency[v] if w in classes.leaves and eid not in banned)

    kept: dict[int, int] = {}
    if g.m == 1:
        keep = {0}
    elif g.is_star():
        (center,) = classes.interior
        options = unlabeled_pendants(center)
        if len(options) < 2:
            raise GraphError("star has fewer than two unexcluded pendant edges")
        keep = {eid for _, eid in options[:2]}
        kept[center] = options[0][1]
    else:
        keep = {eid for eid, (u, v) in enumerate(g.edges) if u in classes.interior and v in classes.interior}
        for v in sorted(classes.supports_prime):
            options = unlabeled_pendants(v)
            if not options:
                raise GraphError(f"vertex {v} has no unexcluded pendant edge to keep")
            kept[v] = options[0][1]
            keep.add(options[0][1])
    leftover = banned & keep
    if leftover:
        raise GraphError(f"excluded edges {sorted(leftover)} cannot be pruned away")
    h, origin_vertex, origin_edge = subgraph(g, keep)
    return PrunedGraph(h, origin_vertex, origin_edge, kept)


# --- constructions --------------------------------------------------------


def leafy(g: Graph, pendant_counts: Mapping[int, int]) -> Graph:
    """Attach ``pendant_counts[v]`` new pendant edges at each interior ``v``.

    New leaves get ids ``g.n, g.n + 1, ...`` in order of ``v``; existing
    vertex and edge ids are unchanged.
    """
    deg = g.degrees()
    edges = list(g.edges)
    nxt = g.n
    for v in sorted(pendant_counts):
        count = pendant_counts[v]
        if count < 0:
            raise GraphError(f"negative pendant count at {v}")
        if not 0 <= v < g.n:
            raise GraphError(f"unknown vertex {v}")
        if count and deg[v] <= 1:
            raise GraphError(f"vertex {v} is not interior (degree {deg[v]})")
        for _ in range(count):
            edges.append((v, nxt))
            nxt += 1
    return Graph(nxt, tuple(edges))


def subdivide(g: Graph, per_edge_lengths: Mapping[int, int]) -> Graph:
    """Replace edge ``e`` by a path with ``per_edge_lengths[e]`` edges.

    Edges missing from the mapping keep length one.  Subdivision vertices are
    numbered from ``g.n`` upward.  Edge ids are reassigned: the path replacing
    edge ``e`` appears in place of ``e``, in order from its smaller endpoint.
    """
    edges = []
    nxt = g.n
    for eid, (u, v) in enumerate(g.edges):
        length = per_edge_lengths.get(eid, 1)
        if length < 1:
            raise GraphError(f"edge {eid} has subdivision length {length} < 1")
        prev = u
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph(nxt, tuple(edges))


def relabel(g: Graph, perm: list[int] | tuple[int, ...]) -> Graph:
    """Copy of ``g`` with vertex ``v`` renamed ``perm[v]``; edge ids kept."""
    return Graph(g.n, tuple((perm[u], perm[v]) for u, v in g.edges))


# --- edge-list format -----------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the ``u v`` per line edge-list format (``#`` starts a comment)."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertex ids, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: vertex ids must be integers") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: vertex ids must be non-negative")
        edges.append((u, v))
    return Graph.from_edges(edges)


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))
