"""Edge decompositions driving the arithmetic labeling engine.

The pruned graph is split into a forest part and an even part; every tree of
the forest gets a good path decomposition (paths hanging off earlier paths,
each ending at a leaf) and every even component an Eulerian circuit.  The
resulting ordered trails form the S-sequence.  Edge ids always refer to the
graph the engine labels, never to relabeled subgraphs.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .graph import Graph, GraphError, PrunedGraph, classify, components, prune, subgraph


class DecompositionError(ValueError):
    pass


def _adjacency(g: Graph, edge_ids: Iterable[int]) -> dict[int, list[tuple[int, int]]]:
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in edge_ids:
        u, v = g.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    for nbrs in adj.values():
        nbrs.sort()
    return adj


# --- forest / even partition ---------------------------------------------


@dataclass(frozen=True)
class EdgePartition:
    e1: frozenset[int]
    e2: frozenset[int]


def _find_cycle(g: Graph, edge_ids: set[int]) -> list[int] | None:
    """First cycle closed by a back edge in a smallest-id-first DFS."""
    adj = _adjacency(g, edge_ids)
    seen: set[int] = set()
    for root in sorted(adj):
        if root in seen:
            continue
        seen.add(root)
        parent_edge = {root: -1}
        parent = {root: -1}
        stack = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            for w, e in it:
                if e == parent_edge[v]:
                    continue
                if w in parent:
                    # back edge to an ancestor on the current DFS path
                    cyc = [e]
                    x = v
                    while x != w:
                        cyc.append(parent_edge[x])
                        x = parent[x]
                    return cyc
                parent[w] = v
                parent_edge[w] = e
                seen.add(w)
                stack.append((w, iter(adj[w])))
                break
            else:
                stack.pop()
                # finished vertices can no longer close a cycle with a DFS ancestor
                del parent[v]
    return None


def forest_even_partition(g: Graph, edge_ids: Iterable[int] | None = None) -> EdgePartition:
    """Move the edges of one cycle at a time to the even part until the rest
    is a forest."""
    rest = set(range(g.m) if edge_ids is None else edge_ids)
    even: set[int] = set()
    while (cyc := _find_cycle(g, rest)) is not None:
        rest.difference_update(cyc)
        even.update(cyc)
    return EdgePartition(frozenset(rest), frozenset(even))


# --- good path decompositions --------------------------------------------


@dataclass(frozen=True)
class GPD:
    """Paths are stored as (vertex sequence, edge sequence) in DFS direction:
    each starts at the centre or on an earlier path and ends at a leaf."""

    center: int
    paths: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def _gpd(g: Graph, edge_ids: Iterable[int], center: int) -> GPD:
    edge_ids = list(edge_ids)
    adj = _adjacency(g, edge_ids)
    if center not in adj:
        raise DecompositionError(f"centre {center} is not in the tree")
    if len(adj) != len(edge_ids) + 1:
        raise DecompositionError("edge set is not a tree")
    paths: list[tuple[list[int], list[int]]] = []
    visited = {center}
    current: tuple[list[int], list[int]] | None = None
    stack = [(center, iter(adj[center]))]
    while stack:
        v, it = stack[-1]
        for w, e in it:
            if w in visited:
                continue
            visited.add(w)
            if current is None or current[0][-1] != v:
                current = ([v], [])
                paths.append(current)
            current[0].append(w)
            current[1].append(e)
            stack.append((w, iter(adj[w])))
            break
        else:
            stack.pop()
    if len(visited) != len(adj):
        raise DecompositionError("edge set is not connected")
    return GPD(center, tuple((tuple(vs), tuple(es)) for vs, es in paths))


def gpd(tree: Graph, center: int) -> GPD:
    """Good path decomposition of ``tree`` centred at ``center`` built by a
    DFS that visits smaller neighbours first."""
    if not tree.is_tree() or tree.m < 1:
        raise DecompositionError("input is not a tree with at least one edge")
    return _gpd(tree, range(tree.m), center)


def check_gpd(tree: Graph, edge_ids: Iterable[int], dec: GPD) -> list[str]:
    """Return the violated GPD conditions (empty list if valid)."""
    problems = []
    edge_ids = set(edge_ids)
    deg: dict[int, int] = {}
    for e in edge_ids:
        for x in tree.edges[e]:
            deg[x] = deg.get(x, 0) + 1
    used: list[int] = []
    for vs, es in dec.paths:
        used.extend(es)
        if len(vs) != len(es) + 1 or len(set(vs)) != len(vs):
            problems.append(f"path {vs} is not a simple path")
        for i, e in enumerate(es):
            if set(tree.edges[e]) != {vs[i], vs[i + 1]}:
                problems.append(f"edge {e} does not join {vs[i]} and {vs[i + 1]}")
    if sorted(used) != sorted(edge_ids):
        problems.append("paths do not decompose the tree")
    if not dec.paths or dec.center not in (dec.paths[0][0][0], dec.paths[0][0][-1]):
        problems.append("centre is not an end of the first path")
    for i, (vs, _) in enumerate(dec.paths):
        if deg.get(vs[0]) != 1 and deg.get(vs[-1]) != 1:
            problems.append(f"path {i} has no leaf end")
        if i > 0:
            earlier = {x for ws, _ in dec.paths[:i] for x in ws}
            if vs[0] not in earlier and vs[-1] not in earlier:
                problems.append(f"path {i} does not attach to an earlier path")
    return problems


# --- Eulerian circuits ----------------------------------------------------


@dataclass(frozen=True)
class OrderedTrail:
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    kind: str  # "path" or "circuit"
    anchor: int
    component: int = 0
    index: int = 0

    def __len__(self) -> int:
        return len(self.edges)


def _euler(g: Graph, edge_ids: Iterable[int], start: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    edge_ids = list(edge_ids)
    adj = _adjacency(g, edge_ids)
    if start not in adj:
        raise DecompositionError(f"start vertex {start} has no edges")
    odd = sorted(v for v, nbrs in adj.items() if len(nbrs) % 2)
    if odd:
        raise DecompositionError(f"vertex {odd[0]} has odd degree")
    used: set[int] = set()
    pos = {v: 0 for v in adj}
    stack: list[tuple[int, int]] = [(start, -1)]
    out: list[tuple[int, int]] = []
    while stack:
        v, _ = stack[-1]
        nbrs = adj[v]
        while pos[v] < len(nbrs) and nbrs[pos[v]][1] in used:
            pos[v] += 1
        if pos[v] < len(nbrs):
            w, e = nbrs[pos[v]]
            used.add(e)
            stack.append((w, e))
        else:
            out.append(stack.pop())
    if len(used) != len(edge_ids):
        raise DecompositionError("even graph is disconnected")
    out.reverse()
    verts = tuple(v for v, _ in out)
    edges = tuple(e for _, e in out[1:])
    return verts, edges


def eulerian_circuit(g: Graph, start: int) -> OrderedTrail:
    """Hierholzer circuit from ``start``, always leaving along the unused edge
    to the smallest neighbour."""
    if not g.is_connected():
        raise DecompositionError("graph is disconnected")
    verts, edges = _euler(g, range(g.m), start)
    return OrderedTrail(edges, verts, "circuit", start)


# --- S-sequence -----------------------------------------------------------


@dataclass
class ForestComponent:
    edges: tuple[int, ...]
    is_star: bool
    pruned_edges: tuple[int, ...]
    center: int
    center_rule: str
    gpd: GPD


@dataclass
class SSequence:
    trails: list[OrderedTrail]
    m0: int
    mb: int
    is_tree: bool
    forest: list[ForestComponent] = field(default_factory=list)
    even: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def edge_ids(self) -> set[int]:
        return {e for t in self.trails for e in t.edges}


def m0_formula(path_lengths: Iterable[int], circuit_lengths: Iterable[int]) -> int:
    return sum(n // 2 for n in path_lengths) + sum((n + 1) // 2 for n in circuit_lengths)


def _pruned_component(g: Graph, comp: list[int], labeled: frozenset[int]) -> PrunedGraph:
    """Pruned graph of a forest component that avoids already labeled edges,
    mapped back to edge ids of ``g``."""
    h, vmap, emap = subgraph(g, comp)
    local_labeled = [i for i, e in enumerate(emap) if e in labeled]
    p = prune(h, classify(h), exclude=local_labeled)
    return PrunedGraph(
        p.graph,
        tuple(vmap[v] for v in p.origin_vertex),
        tuple(emap[e] for e in p.origin_edge),
        {vmap[v]: emap[e] for v, e in p.kept_edge_of.items()},
    )


def check_main_hypotheses(g: Graph) -> None:
    """Raise ``DecompositionError`` naming the first failed hypothesis of the
    four-step construction."""
    if not g.is_connected():
        raise DecompositionError("graph is not connected")
    if g.m < 3:
        raise DecompositionError(f"graph has {g.m} edges; at least 3 are needed")
    c = classify(g)
    for v in sorted(c.deg3 - c.supports):
        raise DecompositionError(f"vertex {v} has degree {g.degree(v)} but is not a support vertex")
    if g.is_star():
        raise DecompositionError("star handled trivially (a single interior vertex)")
    if len(c.interior) < 2:
        raise DecompositionError("fewer than two interior vertices")
    if not c.deg3:
        raise DecompositionError("no vertex of degree at least 3 (path or cycle)")


def assemble_s_sequence(
    g: Graph,
    pruned: PrunedGraph,
    part: EdgePartition,
    labeled: Iterable[int] = (),
) -> SSequence:
    """Order the forest paths and even circuits into the S-sequence.

    ``labeled`` holds the edges already labeled before the trails are formed;
    forest components are pruned again avoiding them.
    """
    check_main_hypotheses(g)
    labeled = frozenset(labeled)
    if part.e1 | part.e2 != pruned.edge_ids or part.e1 & part.e2:
        raise DecompositionError("partition does not split the pruned edge set")
    c = classify(g)
    even_vertices = {x for e in part.e2 for x in g.edges[e]}
    is_tree = not part.e2

    forest: list[ForestComponent] = []
    trails: list[OrderedTrail] = []
    for ci, comp in enumerate(components(g, part.e1)):
        pc = _pruned_component(g, comp, labeled)
        pc_vertices = set(pc.origin_vertex)
        if is_tree:
            center, rule = min(c.deg3), "deg3"
            if center not in pc_vertices:
                raise DecompositionError(f"centre {center} missing from the pruned tree")
        elif pc_vertices & even_vertices:
            center, rule = min(pc_vertices & even_vertices), "even"
        else:
            # the component met the even part only at leaves that pruning
            # removed; centre it at the support vertex that lost such a leaf
            near = {
                x
                for e in comp
                for x, y in (g.edges[e], g.edges[e][::-1])
                if y in even_vertices and x in pc_vertices
            }
            if not near:
                raise DecompositionError(f"forest component {ci} does not meet the even part")
            center, rule = min(near), "adjacent"
        dec = _gpd(g, pc.origin_edge, center)
        forest.append(
            ForestComponent(
                tuple(comp), _is_star(g, comp), tuple(sorted(pc.origin_edge)), center, rule, dec
            )
        )
        for j, (vs, es) in enumerate(dec.paths):
            # walk from the leaf end toward the attachment vertex
            trails.append(OrderedTrail(tuple(reversed(es)), tuple(reversed(vs)), "path", vs[-1], ci, j))

    even = []
    for ci, comp in enumerate(components(g, part.e2)):
        comp_vertices = sorted({x for e in comp for x in g.edges[e]})
        anchors = [v for v in comp_vertices if g.degree(v) >= 3]
        if not anchors:
            raise DecompositionError("even component without a vertex of degree >= 3")
        verts, edges = _euler(g, comp, anchors[0])
        trails.append(OrderedTrail(edges, verts, "circuit", anchors[0], ci, 0))
        even.append(tuple(comp))

    m0 = m0_formula(
        (len(t) for t in trails if t.kind == "path"), (len(t) for t in trails if t.kind == "circuit")
    )
    mb = m0 + 1 if is_tree and len(trails[0]) % 2 == 1 else m0
    return SSequence(trails, m0, mb, is_tree, forest, even)


def _is_star(g: Graph, comp: list[int]) -> bool:
    h, _, _ = subgraph(g, comp)
    return h.is_star()
