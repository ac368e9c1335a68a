"""Graph families used as test corpora.

Every random generator takes an integer seed and is deterministic for it.
"""

from __future__ import annotations

import random
from collections.abc import Iterator, Mapping

from .graph import Graph, GraphError, classify, leafy, subdivide


def path(m: int) -> Graph:
    """Path with ``m`` edges on vertices ``0..m`` in order."""
    if m < 1:
        raise GraphError("path needs at least one edge")
    return Graph(m + 1, tuple((i, i + 1) for i in range(m)))


def cycle(m: int) -> Graph:
    if m < 3:
        raise GraphError("cycle needs at least three edges")
    return Graph(m, tuple((i, (i + 1) % m) for i in range(m)))


def star(k: int) -> Graph:
    """``K_{1,k}`` with centre 0."""
    if k < 2:
        raise GraphError("a star has at least two leaves")
    return Graph(k + 1, tuple((0, i) for i in range(1, k + 1)))


def caterpillar(spine_length: int, leaf_counts: Mapping[int, int]) -> Graph:
    """Spine ``0..spine_length`` (``spine_length`` edges) with pendant edges
    attached at spine vertices.  Spine ends may carry leaves as well."""
    if spine_length < 1:
        raise GraphError("spine needs at least one edge")
    edges = [(i, i + 1) for i in range(spine_length)]
    nxt = spine_length + 1
    for v in sorted(leaf_counts):
        if not 0 <= v <= spine_length:
            raise GraphError(f"{v} is not a spine vertex")
        for _ in range(leaf_counts[v]):
            edges.append((v, nxt))
            nxt += 1
    return Graph(nxt, tuple(edges))


def leafy_cycle(cycle_length: int, leaf_counts: Mapping[int, int]) -> Graph:
    return leafy(cycle(cycle_length), leaf_counts)


def _random_connected(rng: random.Random, k: int, extra: int) -> list[tuple[int, int]]:
    edges = set()
    for v in range(1, k):
        u = rng.randrange(v)
        edges.add((u, v))
    pairs = [(u, v) for u in range(k) for v in range(u + 1, k) if (u, v) not in edges]
    rng.shuffle(pairs)
    edges.update(pairs[:extra])
    return sorted(edges)


def random_v3_subset_vs(n: int, seed: int) -> Graph:
    """Random connected graph on ``n`` vertices in which every vertex of
    degree at least three is a support vertex."""
    if n < 4:
        raise GraphError("need at least four vertices")
    rng = random.Random(seed)
    for _ in range(1000):
        k = rng.randint(2, n - 1)
        core = _random_connected(rng, k, rng.randint(0, k))
        deg = [0] * k
        for u, v in core:
            deg[u] += 1
            deg[v] += 1
        needy = [v for v in range(k) if deg[v] >= 2]
        if not needy:
            continue
        # vertices that end up with degree >= 3 must own a leaf
        must = [v for v in range(k) if deg[v] >= 3]
        spare = n - k - len(must)
        if spare < 0:
            continue
        owners = list(must) + [rng.choice(needy) for _ in range(spare)]
        edges = list(core)
        for i, v in enumerate(owners):
            edges.append((v, k + i))
        g = Graph(n, tuple(edges))
        c = classify(g)
        if g.is_connected() and c.deg3 <= c.supports and g.m >= 3:
            return g
    raise GraphError(f"could not generate a graph on {n} vertices")


def random_caterpillar(seed: int, min_edges: int = 50, max_edges: int = 200) -> Graph:
    """Caterpillar with ``min_edges..max_edges`` edges and at least one vertex
    of degree three (so it is never a path)."""
    rng = random.Random(seed)
    m = rng.randint(min_edges, max_edges)
    spine = rng.randint(2, m - 1)
    counts = {rng.randint(1, spine - 1): 1}
    for _ in range(m - spine - 1):
        v = rng.randint(0, spine)
        counts[v] = counts.get(v, 0) + 1
    return caterpillar(spine, counts)


def random_leafy_cycle(seed: int, max_edges: int = 100) -> Graph:
    rng = random.Random(seed)
    k = rng.randint(3, max_edges // 2)
    leaves = rng.randint(1, max_edges - k)
    counts: dict[int, int] = {}
    for _ in range(leaves):
        v = rng.randrange(k)
        counts[v] = counts.get(v, 0) + 1
    return leafy_cycle(k, counts)


def random_subdivided_leafy(seed: int, max_edges: int = 100) -> Graph:
    """Subdivision of a leafy graph of a random ``V_3 ⊆ V_s`` graph in which
    no pendant edge is subdivided."""
    rng = random.Random(seed)
    for _ in range(1000):
        base = random_v3_subset_vs(rng.randint(4, 12), rng.randrange(2**32))
        c = classify(base)
        counts = {v: rng.randint(0, 2) for v in sorted(c.interior)}
        g = leafy(base, counts)
        deg = g.degrees()
        lengths = {
            eid: rng.randint(1, 4)
            for eid, (u, v) in enumerate(g.edges)
            if deg[u] > 1 and deg[v] > 1
        }
        h = subdivide(g, lengths)
        if h.m <= max_edges:
            return h
    raise GraphError("could not generate a small enough subdivision")


def random_support_saturated(seed: int, max_core: int = 8, max_leaves: int = 3) -> Graph:
    """Random connected graph in which every interior vertex is a support."""
    rng = random.Random(seed)
    k = rng.randint(1, max_core)
    core = _random_connected(rng, k, rng.randint(0, k))
    edges = list(core)
    nxt = k
    for v in range(k):
        lo = 3 if k == 1 else 1
        for _ in range(rng.randint(lo, max(lo, max_leaves))):
            edges.append((v, nxt))
            nxt += 1
    return Graph(nxt, tuple(edges))


def random_connected_graphs(count: int, n: int, seed: int) -> Iterator[Graph]:
    rng = random.Random(seed)
    for _ in range(count):
        yield Graph(n, tuple(_random_connected(rng, n, rng.randint(0, n))))


FAMILIES = {
    "path": lambda p: path(int(p["m"])),
    "cycle": lambda p: cycle(int(p["m"])),
    "star": lambda p: star(int(p["k"])),
    "caterpillar": lambda p: caterpillar(int(p["spine"]), _counts(p.get("leaves", ""))),
    "leafy_cycle": lambda p: leafy_cycle(int(p["length"]), _counts(p.get("leaves", ""))),
    "random_v3_subset_vs": lambda p: random_v3_subset_vs(int(p["n"]), int(p.get("seed", 0))),
    "random_caterpillar": lambda p: random_caterpillar(int(p.get("seed", 0))),
    "random_leafy_cycle": lambda p: random_leafy_cycle(int(p.get("seed", 0))),
    "random_subdivided_leafy": lambda p: random_subdivided_leafy(int(p.get("seed", 0))),
    "random_support_saturated": lambda p: random_support_saturated(int(p.get("seed", 0))),
}


def _counts(spec: str) -> dict[int, int]:
    """Parse ``"1:2,3:1"`` into ``{1: 2, 3: 1}``."""
    out: dict[int, int] = {}
    for item in filter(None, (s.strip() for s in spec.split(","))):
        v, _, c = item.partition(":")
        out[int(v)] = int(c or 1)
    return out


def generate(kind: str, params: Mapping[str, str | int]) -> Graph:
    try:
        factory = FAMILIES[kind]
    except KeyError:
        raise GraphError(f"unknown family {kind!r}; choose from {', '.join(sorted(FAMILIES))}") from None
    try:
        return factory(dict(params))
    except KeyError as exc:
        raise GraphError(f"family {kind!r} needs parameter {exc.args[0]!r}") from None
