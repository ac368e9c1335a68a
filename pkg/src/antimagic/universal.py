"""Labelings outside the arithmetic engine.

* :func:`label_support_saturated` handles graphs in which every interior
  vertex is a support vertex, for arbitrary label sets.
* :func:`extend_leafy` lifts a weighted labeler of a core graph to any
  leafy graph of it.
* :func:`search_label` is a backtracking search over bijections, used for
  paths and cycles and as an oracle.
"""

from __future__ import annotations

import itertools
import os
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import _search_py
from .graph import Graph, GraphError, classify, pendant_edges
from .labels import PRODUCT, SUM, Labeling, check_label_set, combine, identity, normalize_op, to_label

try:
    if os.environ.get("ANTIMAGIC_PURE_PYTHON"):
        raise ImportError("compiled kernel disabled by ANTIMAGIC_PURE_PYTHON")
    from . import _search_kernel as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

HAVE_COMPILED = _compiled is not None
EXHAUSTIVE_BOUND = 10
_INT64_LIMIT = 2**62


@dataclass(frozen=True)
class NotFound:
    """No bijection makes the vertex values injective."""

    graph: Graph
    op: str

    def __bool__(self) -> bool:
        return False


# --- search ---------------------------------------------------------------


def _integer_keys(
    g: Graph, labels: Sequence[Fraction], op: str, weights: Mapping[int, Fraction] | None
) -> tuple[list[int], list[int]]:
    """Scale labels and weights to integers so that vertex values compare
    exactly.  Product values are padded with powers of the common
    denominator so vertices of different degree share one scale."""
    w = [Fraction(weights[v]) if weights is not None and v in weights else identity(op) for v in range(g.n)]
    den = lcm(*(x.denominator for x in labels), *(x.denominator for x in w))
    keys = [int(x * den) for x in labels]
    if op == SUM:
        return keys, [int(x * den) for x in w]
    top = max(g.degrees(), default=0)
    init = [int(w[v] * den) * den ** (top - g.degree(v)) for v in range(g.n)]
    return keys, init


def _fits_int64(g: Graph, keys: list[int], init: list[int], op: str) -> bool:
    big = max((abs(k) for k in keys), default=0)
    top = max(g.degrees(), default=0)
    start = max((abs(x) for x in init), default=0)
    bound = start + top * big if op == SUM else start * big**top
    return bound < _INT64_LIMIT


def _saturation_schedule(g: Graph) -> tuple[list[int], list[int]]:
    last: list[list[int]] = [[] for _ in range(g.m)]
    for v in range(g.n):
        if g.adjacency[v]:
            last[max(e for _, e in g.adjacency[v])].append(v)
    ptr = [0]
    flat: list[int] = []
    for vs in last:
        flat.extend(vs)
        ptr.append(len(flat))
    return ptr, flat


def search_kernel(use_compiled: bool | None = None):
    """The backtracking kernel in use (compiled when available)."""
    if use_compiled is None:
        use_compiled = HAVE_COMPILED
    if use_compiled and not HAVE_COMPILED:
        raise RuntimeError("compiled kernel is not built")
    return _compiled.search_first if use_compiled else _search_py.search_first


def search_label(
    g: Graph,
    labels: Sequence,
    op: str = SUM,
    weights: Mapping[int, Fraction] | None = None,
    mode: str = "exhaustive",
    bound: int = EXHAUSTIVE_BOUND,
    use_compiled: bool | None = None,
) -> Labeling | NotFound:
    """First bijection (edges in id order, labels ascending) whose weighted
    vertex values are pairwise distinct.

    ``mode="exhaustive"`` refuses graphs with more than ``bound`` edges;
    ``mode="backtrack"`` runs the same complete search without the bound.
    """
    op = normalize_op(op)
    if mode not in ("exhaustive", "backtrack"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exhaustive" and g.m > bound:
        raise ValueError(
            f"{g.m} edges exceed the exhaustive bound {bound}; use mode='backtrack'"
        )
    values = sorted(to_label(x) for x in labels)
    if len(values) != g.m:
        raise ValueError(f"{len(values)} labels for {g.m} edges")
    if len(set(values)) != len(values):
        raise ValueError("labels are not distinct")
    wts = None if weights is None else {v: to_label(x) for v, x in weights.items()}
    keys, init = _integer_keys(g, values, op, wts)
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    sat_ptr, sat_v = _saturation_schedule(g)
    if use_compiled is None:
        use_compiled = HAVE_COMPILED and _fits_int64(g, keys, init, op)
    kernel = search_kernel(use_compiled)
    perm = kernel(keys, init, eu, ev, sat_ptr, sat_v, op == PRODUCT)
    if perm is None:
        return NotFound(g, op)
    return Labeling(g, {e: values[perm[e]] for e in range(g.m)}, op)


def weighted_values(lab: Labeling, weights: Mapping[int, Fraction] | None) -> list[Fraction]:
    vals = lab.vertex_values()
    if not weights:
        return vals
    if lab.op == SUM:
        return [x + weights.get(v, 0) for v, x in enumerate(vals)]
    return [x * weights.get(v, 1) for v, x in enumerate(vals)]


# --- every interior vertex a support ------------------------------------


def label_support_saturated(g: Graph, labels: Sequence, op: str = SUM) -> Labeling:
    """Labeling of a connected graph in which every interior vertex is a
    support vertex, for any admissible label set.

    Surplus pendant edges take the labels just above the ``n_s`` smallest,
    non-pendant edges the largest labels; then the interior vertices, ordered
    by partial value, close their reserved pendant edge with ``l_1, l_2, ...``
    so leaves hold exactly the ``n_l`` smallest values.
    """
    from .verify import verify

    op = normalize_op(op)
    if not g.is_connected():
        raise GraphError("graph is not connected")
    if g.m < 3:
        raise GraphError(f"graph has {g.m} edges; at least 3 are needed")
    values = sorted(to_label(x) for x in labels)
    if len(values) != g.m:
        raise ValueError(f"{len(values)} labels for {g.m} edges")
    check_label_set(values, op)
    c = classify(g)
    lacking = sorted(c.interior - c.supports)
    if lacking:
        raise GraphError(f"interior vertex {lacking[0]} is not a support vertex")

    interior = sorted(c.interior)
    ns, nl = len(interior), len(c.leaves)
    reserved = {}
    surplus = []
    for v in interior:
        pend = pendant_edges(g, v, c.leaves)
        reserved[v] = pend[0]
        surplus.extend(pend[1:])
    inner = [e for e, (u, v) in enumerate(g.edges) if u in c.interior and v in c.interior]
    lab: dict[int, Fraction] = {}
    for e, x in zip(sorted(surplus), values[ns:nl]):
        lab[e] = x
    for e, x in zip(inner, values[nl:]):
        lab[e] = x

    def partial(v: int) -> Fraction:
        return combine(op, (lab[e] for _, e in g.adjacency[v] if e in lab))

    order = sorted(interior, key=lambda v: (partial(v), v))
    for i, v in enumerate(order):
        lab[reserved[v]] = values[i]
    out = Labeling(g, lab, op)
    report = verify(g, out, values, op)
    if not (report.is_bijection and report.is_injective_values):
        raise RuntimeError(f"support-saturated construction failed: {report.summary()}")
    return out


# --- leafy extension --------------------------------------------------------


WeightedLabeler = Callable[[Graph, Sequence[Fraction], str, Mapping[int, Fraction]], "Labeling | NotFound | None"]


def search_weighted_labeler(core: Graph, labels: Sequence[Fraction], op: str, weights: Mapping[int, Fraction]):
    return search_label(core, labels, op, weights=weights, mode="backtrack")


def leafy_split(g_tilde: Graph, core: Graph) -> list[int]:
    """Edge ids of ``g_tilde`` that are the added pendant edges.

    ``g_tilde`` must contain ``core`` with identical vertex ids (as built by
    :func:`antimagic.graph.leafy`), every other edge being pendant at an
    interior vertex of ``core``.
    """
    core_edges = set(core.edges)
    core_deg = core.degrees()
    added = []
    for e, (u, v) in enumerate(g_tilde.edges):
        if (u, v) in core_edges:
            continue
        a, leaf = (u, v) if v >= core.n else (v, u)
        if leaf < core.n or g_tilde.degree(leaf) != 1:
            raise GraphError(f"edge {u}-{v} is neither a core edge nor an added pendant edge")
        if a >= core.n or core_deg[a] <= 1:
            raise GraphError(f"pendant edge {u}-{v} hangs from a non-interior core vertex")
        added.append(e)
    if len(g_tilde.edges) - len(added) != core.m:
        raise GraphError("core edges are missing from the leafy graph")
    return added


def extend_leafy(
    g_tilde: Graph,
    core: Graph,
    weighted_labeler: WeightedLabeler = search_weighted_labeler,
    labels: Sequence = (),
    op: str = SUM,
) -> Labeling:
    """Label a leafy graph of ``core``: added pendant edges get the ``h``
    smallest labels, and the core is labeled with the rest by
    ``weighted_labeler`` against the sum (product) of pendant labels at each
    vertex.

    Pendant labels go out in edge-id order first.  A core that is not
    weighted universal can fail for that weight function (C_4 with weights
    3, 0, 3, 0 and labels 4..7 has no labeling), so the other assignments of
    the ``h`` smallest labels to the pendant edges are tried in
    lexicographic order, one per distinct weight function.
    """
    from .verify import verify

    op = normalize_op(op)
    values = sorted(to_label(x) for x in labels)
    if len(values) != g_tilde.m:
        raise ValueError(f"{len(values)} labels for {g_tilde.m} edges")
    check_label_set(values, op)
    added = leafy_split(g_tilde, core)
    h = len(added)
    anchor = {}
    for e in added:
        u, v = g_tilde.edges[e]
        anchor[e] = u if u < core.n else v
    tried = set()
    theta = None
    for order in itertools.permutations(range(h)):
        lab = {e: values[i] for e, i in zip(added, order)}
        weights = {v: identity(op) for v in range(core.n)}
        for e in added:
            a = anchor[e]
            weights[a] = weights[a] + lab[e] if op == SUM else weights[a] * lab[e]
        key = tuple(weights[v] for v in range(core.n))
        if key in tried:
            continue
        tried.add(key)
        theta = weighted_labeler(core, values[h:], op, weights)
        if theta:
            break
    if not theta:
        raise RuntimeError("weighted labeler found no labeling of the core")
    index = {edge: e for e, edge in enumerate(g_tilde.edges)}
    for ce, x in theta.labels.items():
        lab[index[core.edges[ce]]] = x
    out = Labeling(g_tilde, lab, op)
    report = verify(g_tilde, out, values, op)
    if not (report.is_bijection and report.is_injective_values):
        raise RuntimeError(f"leafy extension failed: {report.summary()}")
    return out
