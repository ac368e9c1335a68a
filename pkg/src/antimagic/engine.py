"""Four-step arithmetic (product-)antimagic labeling.

Step 1 labels all but one or two pendant edges at each vertex of degree at
least three, step 2 the surplus pendant edges of the forest part of the
pruned graph, step 3 the trails of the S-sequence alternating small and big
labels (serving almost-saturated vertices whose partial value has fallen
behind the big labels), and step 4 the reserved pendant edges in order of
partial value.

All loops that the construction leaves unordered run in ascending id order.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .decompose import (
    DecompositionError,
    EdgePartition,
    SSequence,
    assemble_s_sequence,
    check_main_hypotheses,
    forest_even_partition,
)
from .graph import Graph, PrunedGraph, VertexClasses, classify, components, pendant_edges, prune, subgraph
from .labels import PRODUCT, SUM, ArithSeq, Labeling, check_label_set, identity, normalize_op


class PreconditionError(ValueError):
    """The input lies outside the classes the construction covers."""


class InternalError(RuntimeError):
    """A step of the construction broke one of its own guarantees."""


@dataclass
class Assignment:
    seq: int
    edge: int
    index: int  # position of the label in L
    step: int
    kind: str  # step1 | step2 | small | big | exception | q | step4 | star | search
    trail: int | None = None
    position: int | None = None  # 1-based position on the trail


@dataclass
class Recorder:
    """Trace of one run, consumed by :func:`antimagic.verify.check_claims`."""

    graph: Graph | None = None
    op: str = SUM
    labels: list[Fraction] = field(default_factory=list)
    route: str = ""
    ib: int = 0  # 0-based index of the smallest big label
    m0: int = 0
    mb: int = 0
    exception_fired: bool = False
    # run on G - u after the label-1 exception, with the id maps back to G
    reduction: Recorder | None = None
    reduction_vertices: tuple[int, ...] = ()
    reduction_edges: tuple[int, ...] = ()
    plan: Plan | None = None
    assignments: list[Assignment] = field(default_factory=list)
    # vertex -> (seq, biggest used big label or None, partial value) when a
    # vertex of degree >= 3 becomes almost saturated
    almost: dict[int, tuple[int, Fraction | None, Fraction]] = field(default_factory=dict)
    # vertex -> (seq, step) when it becomes saturated
    saturated: dict[int, tuple[int, int]] = field(default_factory=dict)
    # events after which the incremental V* differed from a recomputation
    vstar_mismatches: list[int] = field(default_factory=list)


@dataclass
class Plan:
    classes: VertexClasses
    step1_edges: list[int]
    pruned: PrunedGraph
    partition: EdgePartition
    step2_edges: list[int]
    s_seq: SSequence

    def to_dict(self, g: Graph) -> dict:
        def ends(es):
            return [list(g.edges[e]) for e in es]

        return {
            "step1_edges": ends(self.step1_edges),
            "pruned": {
                "edges": ends(sorted(self.pruned.origin_edge)),
                "kept_edge_of": {str(v): list(g.edges[e]) for v, e in sorted(self.pruned.kept_edge_of.items())},
            },
            "partition": {"e1": ends(sorted(self.partition.e1)), "e2": ends(sorted(self.partition.e2))},
            "step2_edges": ends(self.step2_edges),
            "forest_components": [
                {
                    "edges": ends(fc.edges),
                    "star": fc.is_star,
                    "pruned_edges": ends(fc.pruned_edges),
                    "center": fc.center,
                    "center_rule": fc.center_rule,
                    "gpd": [list(vs) for vs, _ in fc.gpd.paths],
                }
                for fc in self.s_seq.forest
            ],
            "trails": [
                {"kind": t.kind, "anchor": t.anchor, "vertices": list(t.vertices), "edges": ends(t.edges)}
                for t in self.s_seq.trails
            ],
            "is_tree": self.s_seq.is_tree,
            "m0": self.s_seq.m0,
            "mb": self.s_seq.mb,
        }


class _State:
    """Partial labeling with per-vertex bookkeeping and the two label pools."""

    def __init__(self, g: Graph, labels: Sequence[Fraction], op: str, rec: Recorder | None):
        self.g = g
        self.L = list(labels)
        self.op = op
        self.rec = rec
        self.label_of: dict[int, int] = {}
        self.used = [False] * len(self.L)
        self.unlabeled = g.degrees()
        self.partial = [identity(op)] * g.n
        self.vstar: set[int] = set()
        self.ptr = 0
        self.ib = len(self.L)
        self.ptr_b = len(self.L)
        self.ell_b: Fraction | None = None
        self.step = 0
        self.seq = 0

    # pools

    def split(self, mb: int) -> None:
        self.ib = len(self.L) - mb
        self.ptr_b = self.ib

    def smallest(self) -> int:
        while self.ptr < len(self.L) and self.used[self.ptr]:
            self.ptr += 1
        if self.ptr == len(self.L):
            raise InternalError("ran out of labels")
        return self.ptr

    def smallest_big(self) -> int:
        while self.ptr_b < len(self.L) and self.used[self.ptr_b]:
            self.ptr_b += 1
        if self.ptr_b == len(self.L):
            raise InternalError("ran out of big labels")
        return self.ptr_b

    # assignment

    def assign(self, e: int, idx: int, kind: str, trail: int | None = None, pos: int | None = None) -> None:
        if e in self.label_of:
            raise InternalError(f"edge {e} labeled twice")
        if self.used[idx]:
            raise InternalError(f"label {self.L[idx]} used twice")
        self.used[idx] = True
        self.label_of[e] = idx
        x = self.L[idx]
        self.seq += 1
        if self.rec is not None:
            self.rec.assignments.append(Assignment(self.seq, e, idx, self.step, kind, trail, pos))
        for v in self.g.edges[e]:
            self.partial[v] = self.partial[v] + x if self.op == SUM else self.partial[v] * x
            self.unlabeled[v] -= 1
            if self.unlabeled[v] == 1 and self.g.degree(v) >= 3:
                self.vstar.add(v)
                if self.rec is not None:
                    self.rec.almost[v] = (self.seq, self.ell_b, self.partial[v])
            elif self.unlabeled[v] == 0:
                self.vstar.discard(v)
                if self.rec is not None:
                    self.rec.saturated[v] = (self.seq, self.step)
        if self.rec is not None:
            fresh = {v for v in range(self.g.n) if self.unlabeled[v] == 1 and self.g.degree(v) >= 3}
            if fresh != self.vstar:
                self.rec.vstar_mismatches.append(self.seq)

    def assign_smallest(self, e: int, kind: str, trail: int | None = None, pos: int | None = None) -> None:
        self.assign(e, self.smallest(), kind, trail, pos)

    def last_free_edge(self, v: int) -> int:
        free = [e for _, e in self.g.adjacency[v] if e not in self.label_of]
        if len(free) != 1:
            raise InternalError(f"vertex {v} is not almost saturated")
        e = free[0]
        if self.g.degree(self.g.other_end(e, v)) != 1:
            raise InternalError(f"last unlabeled edge at vertex {v} is not a pendant edge")
        return e

    def min_vstar(self) -> int:
        return min(self.vstar, key=lambda v: (self.partial[v], v))


# --- the four steps ---------------------------------------------------------


def step1(g: Graph, classes: VertexClasses, st: _State) -> list[int]:
    """Label all but two (V_{s,3}') or all but one (rest of V_3) pendant edges
    at every vertex of degree at least three."""
    st.step = 1
    done = []
    first = sorted(classes.supports_prime_3)
    rest = sorted(classes.deg3 - classes.supports_prime_3)
    for group, keep in ((first, 2), (rest, 1)):
        for v in group:
            pend = pendant_edges(g, v, classes.leaves)
            for e in pend[: max(0, len(pend) - keep)]:
                st.assign_smallest(e, "step1")
                done.append(e)
    return done


def step2(g: Graph, part: EdgePartition, st: _State) -> list[int]:
    """Label the surplus pendant edges of every tree of the forest part."""
    st.step = 2
    done = []
    for comp in components(g, part.e1):
        h, vmap, emap = subgraph(g, comp)
        hc = classify(h)
        todo: list[int] = []
        if h.is_star():
            (center,) = hc.interior
            # keep the two pendant edges with the smallest leaves
            pend = sorted((w, e) for w, e in h.adjacency[center])
            todo = [e for _, e in pend[2:]]
            todo.sort()
        else:
            for v in sorted(hc.supports_prime_3):
                pend = sorted((w, e) for w, e in h.adjacency[v] if w in hc.leaves)
                todo.extend(sorted(e for _, e in pend[1:]))
            for v in sorted(hc.deg3 - hc.supports_prime_3):
                todo.extend(pendant_edges(h, v, hc.leaves))
        for le in todo:
            st.assign_smallest(emap[le], "step2")
            done.append(emap[le])
    return done


def _serve_lagging(st: _State, trail: int, pos: int) -> None:
    """While the smallest partial value among almost-saturated vertices of
    degree >= 3 is at most the biggest big label used so far, close that
    vertex with the smallest unused label."""
    while st.vstar and st.ell_b is not None:
        w = st.min_vstar()
        if st.partial[w] > st.ell_b:
            return
        st.assign_smallest(st.last_free_edge(w), "q", trail, pos)


def step3(g: Graph, s_seq: SSequence, st: _State, rec: Recorder | None) -> None:
    st.step = 3
    for ti, trail in enumerate(s_seq.trails):
        n = len(trail.edges)
        r = 0
        if n % 2 == 1 and (trail.kind == "circuit" or (s_seq.is_tree and ti == 0)):
            r = 1
        for i in range(1, n + 1):
            e = trail.edges[i - 1]
            if (i + r) % 2 == 1:
                _serve_lagging(st, ti, i)
                st.assign_smallest(e, "small", ti, i)
            else:
                idx = st.smallest_big()
                st.ell_b = st.L[idx]
                st.assign(e, idx, "big", ti, i)


def step4(g: Graph, st: _State) -> None:
    st.step = 4
    for e in range(g.m):
        if e not in st.label_of:
            u, v = g.edges[e]
            if g.degree(u) != 1 and g.degree(v) != 1:
                raise InternalError(f"non-pendant edge {e} unlabeled after step 3")
    order = sorted(st.vstar, key=lambda v: (st.partial[v], v))
    for v in order:
        st.assign_smallest(st.last_free_edge(v), "step4")
    if len(st.label_of) != g.m:
        raise InternalError("labeling is not total after step 4")


def _plan(g: Graph, st: _State) -> Plan:
    classes = classify(g)
    s1 = step1(g, classes, st)
    pruned = prune(g, classes, exclude=s1)
    part = forest_even_partition(g, pruned.origin_edge)
    s2 = step2(g, part, st)
    try:
        s_seq = assemble_s_sequence(g, pruned, part, labeled=set(s1) | set(s2))
    except DecompositionError as exc:
        raise PreconditionError(str(exc)) from exc
    return Plan(classes, s1, pruned, part, s2, s_seq)


def build_plan(g: Graph) -> Plan:
    """Decomposition plan of the four-step construction without labels (which
    edges steps 1 and 2 take does not depend on the label values)."""
    try:
        check_main_hypotheses(g)
    except DecompositionError as exc:
        raise PreconditionError(str(exc)) from exc
    return _plan(g, _State(g, [Fraction(i + 1) for i in range(g.m)], SUM, None))


def run_steps(g: Graph, labels: Sequence[Fraction], op: str, rec: Recorder | None = None) -> Labeling:
    """Steps 1-4 on a graph meeting the main hypotheses."""
    try:
        check_main_hypotheses(g)
    except DecompositionError as exc:
        raise PreconditionError(str(exc)) from exc
    st = _State(g, labels, op, rec)
    plan = _plan(g, st)
    st.split(plan.s_seq.mb)
    if rec is not None:
        rec.plan = plan
        rec.ib = st.ib
        rec.m0 = plan.s_seq.m0
        rec.mb = plan.s_seq.mb
    if st.ib < len(st.label_of):
        raise InternalError("steps 1 and 2 used big labels")
    if _exception_applies(plan.s_seq, st):
        return _reduce(g, plan.s_seq.trails[0], st, rec)
    step3(g, plan.s_seq, st, rec)
    step4(g, st)
    return Labeling(g, {e: st.L[i] for e, i in st.label_of.items()}, op)


def _exception_applies(s_seq: SSequence, st: _State) -> bool:
    if st.op != PRODUCT or not s_seq.is_tree or not s_seq.trails:
        return False
    first = s_seq.trails[0]
    return len(first.edges) % 2 == 1 and st.L[st.smallest()] == 1


def _reduce(g: Graph, trail, st: _State, rec: Recorder | None) -> Labeling:
    """Product mode with label 1 still free and an odd first path: the
    leaf edge starting the path takes 1, and G - u is labeled on its own with
    the remaining labels.  Multiplying by 1 leaves the neighbour's value
    unchanged and u becomes the only vertex of value 1."""
    if st.label_of:
        raise InternalError("label 1 is free but steps 1 and 2 labeled edges")
    e1 = trail.edges[0]
    u = trail.vertices[0]
    if g.degree(u) != 1:
        raise InternalError(f"first trail does not start at a leaf (vertex {u})")
    st.step = 3
    st.assign(e1, st.smallest(), "exception", 0, 1)
    h, vmap, emap = subgraph(g, [e for e in range(g.m) if e != e1])
    sub = Recorder() if rec is not None else None
    inner = label_arithmetic(h, st.L[1:], st.op, sub)
    labels = {e1: st.L[0]}
    for he, x in inner.labels.items():
        labels[emap[he]] = x
    if rec is not None:
        rec.exception_fired = True
        rec.reduction = sub
        rec.reduction_vertices = tuple(vmap)
        rec.reduction_edges = tuple(emap)
        index = {x: i for i, x in enumerate(st.L)}
        for a in sub.assignments:
            rec.assignments.append(
                Assignment(len(rec.assignments) + 1, emap[a.edge], index[sub.labels[a.index]], a.step, a.kind, a.trail, a.position)
            )
    return Labeling(g, labels, st.op)


# --- public entry point ----------------------------------------------------


def _as_labels(g: Graph, seq: ArithSeq | Sequence, op: str) -> tuple[list[Fraction], Fraction]:
    if isinstance(seq, ArithSeq):
        if seq.m != g.m:
            raise PreconditionError(f"sequence has {seq.m} terms but the graph has {g.m} edges")
        values = seq.values()
    else:
        from .labels import to_label

        values = sorted(to_label(x) for x in seq)
        if len(values) != g.m:
            raise PreconditionError(f"{len(values)} labels for {g.m} edges")
        diffs = {b - a for a, b in zip(values, values[1:])}
        if len(diffs) > 1:
            raise PreconditionError("labels do not form an arithmetic sequence")
    try:
        check_label_set(values, op)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    d = values[1] - values[0] if len(values) > 1 else Fraction(0)
    return values, d


def label_arithmetic(
    g: Graph, seq: ArithSeq | Sequence, op: str = SUM, recorder: Recorder | None = None
) -> Labeling:
    """(Product-)antimagic labeling of a connected graph with at least three
    edges whose vertices of degree >= 3 are all support vertices, using the
    labels of an arithmetic sequence.

    Stars get any bijection, paths and cycles are handed to the search
    labeler, every other graph runs the four steps.  The result is verified
    before it is returned.
    """
    from .universal import NotFound, search_label
    from .verify import verify

    op = normalize_op(op)
    if not g.is_connected():
        raise PreconditionError("graph is not connected")
    if g.m < 3:
        raise PreconditionError(f"graph has {g.m} edges; at least 3 are needed")
    values, _ = _as_labels(g, seq, op)
    c = classify(g)
    bald = sorted(c.deg3 - c.supports)
    if bald:
        v = bald[0]
        raise PreconditionError(f"vertex {v} has degree {g.degree(v)} but is not a support vertex")

    rec = recorder
    if rec is not None:
        rec.graph, rec.op, rec.labels = g, op, list(values)

    if g.is_star():
        route = "star"
        lab = Labeling(g, {e: values[e] for e in range(g.m)}, op)
    elif g.is_path() or g.is_cycle():
        route = "search"
        found = search_label(g, values, op, mode="backtrack")
        if isinstance(found, NotFound):
            raise InternalError(f"no labeling found for a {'path' if g.is_path() else 'cycle'}")
        lab = found
    else:
        route = "steps"
        lab = run_steps(g, values, op, rec)
    if rec is not None:
        rec.route = route
        if route != "steps":
            index = {x: i for i, x in enumerate(values)}
            rec.assignments = [
                Assignment(i + 1, e, index[lab.labels[e]], 0, route) for i, e in enumerate(sorted(lab.labels))
            ]

    report = verify(g, lab, values, op)
    if not (report.is_bijection and report.is_injective_values):
        raise InternalError(f"construction produced an invalid labeling: {report.summary()}")
    return lab
