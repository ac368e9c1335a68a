"""Exact verification of labelings and of the structural guarantees of the
four-step construction (checked from a :class:`~antimagic.engine.Recorder`
trace)."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph
from .labels import SUM, Labeling, fmt, normalize_op, to_label

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

CLAIMS = (
    "claim1_alternation",
    "claim2_big_label_at_interior",
    "claim3_degree_two_saturated",
    "claim4_forest_before_even",
    "claim5_almost_saturated_bound",
    "claim6_w2_upper_bound",
    "claim7_w2_monotone",
    "w_ordering",
    "pool_counting",
    "vstar_bookkeeping",
)


class VerificationError(ValueError):
    pass


@dataclass
class ClaimResult:
    status: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"status": self.status, "detail": self.detail}


@dataclass
class VerificationReport:
    is_bijection: bool
    is_injective_values: bool
    op: str
    vertex_values: dict[int, Fraction]
    claim_results: dict[str, ClaimResult] = field(default_factory=dict)
    collision_witness: tuple[int, int, Fraction] | None = None
    bijection_detail: str = ""

    @property
    def ok(self) -> bool:
        return (
            self.is_bijection
            and self.is_injective_values
            and all(r.status != FAIL for r in self.claim_results.values())
        )

    def summary(self) -> str:
        parts = [
            f"bijection={'yes' if self.is_bijection else 'no'}",
            f"injective={'yes' if self.is_injective_values else 'no'}",
        ]
        if self.bijection_detail:
            parts.append(self.bijection_detail)
        if self.collision_witness:
            u, v, x = self.collision_witness
            parts.append(f"vertices {u} and {v} share value {fmt(x)}")
        for name, r in self.claim_results.items():
            if r.status == FAIL:
                parts.append(f"{name} failed: {r.detail}")
        return "; ".join(parts)

    def to_dict(self) -> dict:
        return {
            "is_bijection": self.is_bijection,
            "is_injective_values": self.is_injective_values,
            "op": self.op,
            "vertex_values": [{"vertex": v, "value": fmt(x)} for v, x in sorted(self.vertex_values.items())],
            "claim_results": {k: r.to_dict() for k, r in self.claim_results.items()},
            "collision_witness": None
            if self.collision_witness is None
            else {
                "u": self.collision_witness[0],
                "v": self.collision_witness[1],
                "value": fmt(self.collision_witness[2]),
            },
        }


def verify(g: Graph, labeling: Labeling, labels: Sequence, op: str | None = None, trace=None) -> VerificationReport:
    """Check that ``labeling`` is a bijection onto ``labels`` and that the
    induced vertex sums (products) are pairwise distinct.  With ``trace``
    (an engine recorder) the construction's claims are checked as well."""
    op = normalize_op(op or labeling.op)
    if not labeling.is_total():
        missing = sorted(set(range(g.m)) - set(labeling.labels))
        raise VerificationError(f"labeling is partial; edges {missing[:5]} unlabeled")
    expected = sorted(to_label(x) for x in labels)
    got = sorted(labeling.labels[e] for e in range(g.m))
    detail = ""
    if len(set(expected)) != len(expected):
        raise VerificationError("expected label set contains duplicates")
    is_bij = got == expected
    if not is_bij:
        extra = sorted(set(got) - set(expected))
        dup = len(set(got)) != len(got)
        detail = "repeated labels" if dup else f"labels outside L: {[fmt(x) for x in extra[:3]]}"
    values = Labeling(g, labeling.labels, op).vertex_values()
    seen: dict[Fraction, int] = {}
    witness = None
    for v, x in enumerate(values):
        if x in seen:
            witness = (seen[x], v, x)
            break
        seen[x] = v
    report = VerificationReport(is_bij, witness is None, op, dict(enumerate(values)), {}, witness, detail)
    if trace is not None:
        report.claim_results = check_claims(trace, labeling)
    return report


# --- claims -----------------------------------------------------------------


def check_claims(rec, labeling: Labeling | None = None) -> dict[str, ClaimResult]:
    """Evaluate the construction's invariants on a recorded run.

    Only runs of the four-step route carry claims; other routes report every
    claim as skipped.
    """
    if rec is None or rec.graph is None or not rec.labels:
        raise VerificationError("malformed trace: graph or labels missing")
    if rec.route != "steps":
        return {c: ClaimResult(SKIPPED, f"route '{rec.route}' does not use the four steps") for c in CLAIMS}
    if rec.plan is None:
        raise VerificationError("malformed trace: plan missing")
    g: Graph = rec.graph
    if len({a.edge for a in rec.assignments}) != g.m or len(rec.assignments) != g.m:
        raise VerificationError("malformed trace: assignments do not cover every edge once")
    if rec.exception_fired:
        return _reduced_claims(rec)
    return _Claims(rec).run()


def _reduced_claims(rec) -> dict[str, ClaimResult]:
    """Claims of a run that set label 1 aside hold for G - u, the graph
    labeled by the inner run; here we also check the reduction itself."""
    if rec.reduction is None:
        raise VerificationError("malformed trace: label-1 exception without the reduced run")
    first = rec.assignments[0]
    if first.kind != "exception" or rec.labels[first.index] != 1:
        return {c: ClaimResult(FAIL, "label-1 exception did not put 1 on the first trail edge") for c in CLAIMS}
    u, v = rec.graph.edges[first.edge]
    if rec.graph.degree(u) != 1 and rec.graph.degree(v) != 1:
        return {c: ClaimResult(FAIL, f"label-1 edge {u}-{v} is not a pendant edge") for c in CLAIMS}
    out = check_claims(rec.reduction)
    for name, r in out.items():
        if r.detail:
            out[name] = ClaimResult(r.status, f"on G - u: {r.detail}")
    return out


class _Claims:
    def __init__(self, rec):
        self.rec = rec
        self.g: Graph = rec.graph
        self.L = rec.labels
        self.ib = rec.ib
        self.op = rec.op
        self.d = self.L[1] - self.L[0] if len(self.L) > 1 else Fraction(0)
        self.by_edge = {a.edge: a for a in rec.assignments}
        self.plan = rec.plan
        self.trails = rec.plan.s_seq.trails
        values = Labeling(self.g, {e: self.L[a.index] for e, a in self.by_edge.items()}, self.op)
        self.values = values.vertex_values()

    def big(self, idx: int) -> bool:
        return idx >= self.ib

    def run(self) -> dict[str, ClaimResult]:
        out = {}
        for name in CLAIMS:
            try:
                out[name] = getattr(self, name)()
            except _Fail as f:
                out[name] = ClaimResult(FAIL, str(f))
        return out

    def claim1_alternation(self) -> ClaimResult:
        for ti, t in enumerate(self.trails):
            idx = [self.by_edge[e].index for e in t.edges]
            edges = list(t.edges)
            for j in range(len(idx) - 1):
                if self.big(idx[j]) == self.big(idx[j + 1]):
                    raise _Fail(f"trail {ti}: edges {edges[j]} and {edges[j + 1]} use the same pool")
            for j in range(len(idx) - 2):
                a, b = idx[j], idx[j + 2]
                if self.big(a):
                    if not (self.big(b) and b == a + 1):
                        raise _Fail(f"trail {ti}: big labels on edges {edges[j]}, {edges[j + 2]} differ by more than d")
                elif self.big(b) or b <= a:
                    raise _Fail(f"trail {ti}: small labels on edges {edges[j]}, {edges[j + 2]} do not increase")
        return ClaimResult(PASS)

    def claim2_big_label_at_interior(self) -> ClaimResult:
        s_edges = {e for t in self.trails for e in t.edges}
        for v in range(self.g.n):
            if self.g.degree(v) < 2:
                continue
            if not any(e in s_edges and self.by_edge[e].kind == "big" for _, e in self.g.adjacency[v]):
                raise _Fail(f"interior vertex {v} has no S-edge with a big label")
        return ClaimResult(PASS)

    def claim3_degree_two_saturated(self) -> ClaimResult:
        for v in range(self.g.n):
            if self.g.degree(v) == 2 and self.rec.saturated[v][1] > 3:
                raise _Fail(f"degree-two vertex {v} saturated in step {self.rec.saturated[v][1]}")
        return ClaimResult(PASS)

    def claim4_forest_before_even(self) -> ClaimResult:
        part = self.plan.partition
        if not part.e2 or not part.e1:
            return ClaimResult(SKIPPED, "one side of the partition is empty")
        even_v = {x for e in part.e2 for x in self.g.edges[e]}
        first_even = min(self.by_edge[e].seq for e in part.e2)
        for e in part.e1:
            if set(self.g.edges[e]) & even_v and self.by_edge[e].seq > first_even:
                raise _Fail(f"forest edge {e} labeled after an even edge")
        return ClaimResult(PASS)

    def claim5_almost_saturated_bound(self) -> ClaimResult:
        checked = 0
        for v, (_, ell, partial) in sorted(self.rec.almost.items()):
            if ell is None:
                continue
            checked += 1
            if partial < ell:
                raise _Fail(f"vertex {v}: partial value {fmt(partial)} < biggest big label {fmt(ell)}")
        if not checked:
            return ClaimResult(SKIPPED, "no vertex became almost saturated after a big label was used")
        return ClaimResult(PASS)

    def _w_sets(self) -> tuple[list[int], list[int], list[int]]:
        w1, w2, w3 = [], [], []
        for v in range(self.g.n):
            deg = self.g.degree(v)
            step = self.rec.saturated[v][1]
            if deg == 1:
                w1.append(v)
            elif deg == 2 or step <= 3:
                w2.append(v)
            else:
                w3.append(v)
        return w1, w2, w3

    def claim6_w2_upper_bound(self) -> ClaimResult:
        small3 = [a for a in self.rec.assignments if a.step == 3 and not self.big(a.index)]
        if not small3:
            return ClaimResult(SKIPPED, "step 3 assigned no small label")
        last = self.L[max(small3, key=lambda a: a.seq).index]
        cap = self.L[-1] + last if self.op == SUM else self.L[-1] * last
        _, w2, _ = self._w_sets()
        for v in w2:
            if self.values[v] > cap:
                raise _Fail(f"vertex {v} value {fmt(self.values[v])} exceeds {fmt(cap)}")
        return ClaimResult(PASS)

    def claim7_w2_monotone(self) -> ClaimResult:
        _, w2, _ = self._w_sets()
        groups: dict[int, list[Fraction]] = {}
        for v in w2:
            groups.setdefault(self.rec.saturated[v][0], []).append(self.values[v])
        prev_max = None
        for seq in sorted(groups):
            if prev_max is not None and min(groups[seq]) <= prev_max:
                raise _Fail(f"a vertex saturated at event {seq} does not exceed earlier saturated values")
            prev_max = max(groups[seq]) if prev_max is None else max(prev_max, max(groups[seq]))
        return ClaimResult(PASS)

    def w_ordering(self) -> ClaimResult:
        w1, w2, w3 = self._w_sets()
        val = self.values
        for name, ws in (("W1", w1), ("W2", w2), ("W3", w3)):
            if len({val[v] for v in ws}) != len(ws):
                raise _Fail(f"values within {name} are not distinct")
        if w1 and (w2 or w3):
            a = max(w1, key=lambda v: val[v])
            b = min(w2 + w3, key=lambda v: val[v])
            if val[a] >= val[b]:
                raise _Fail(f"leaf {a} ({fmt(val[a])}) >= interior vertex {b} ({fmt(val[b])})")
        if w2 and w3:
            a = max(w2, key=lambda v: val[v])
            b = min(w3, key=lambda v: val[v])
            if val[a] >= val[b]:
                raise _Fail(f"W2 vertex {a} ({fmt(val[a])}) >= W3 vertex {b} ({fmt(val[b])})")
        s = self.plan.s_seq
        odd_first = s.is_tree and len(s.trails[0]) % 2 == 1
        allowed = set(self.L[: self.ib]) | ({self.L[self.ib]} if odd_first else set())
        for v in w1:
            if val[v] not in allowed:
                raise _Fail(f"leaf {v} value {fmt(val[v])} is a big label")
        return ClaimResult(PASS)

    def pool_counting(self) -> ClaimResult:
        mb = self.rec.mb
        big_steps = sum(a.kind == "big" for a in self.rec.assignments)
        if big_steps != mb:
            raise _Fail(f"{big_steps} big-label steps, expected {mb}")
        drawn = sum(self.big(a.index) for a in self.rec.assignments)
        if drawn != mb:
            raise _Fail(f"{drawn} labels drawn from the big pool, expected {mb}")
        if any(self.big(a.index) for a in self.rec.assignments if a.kind != "big"):
            raise _Fail("a big label was drawn outside a big-label step")
        if any(a.step in (1, 2) and self.big(a.index) for a in self.rec.assignments):
            raise _Fail("steps 1-2 used a big label")
        return ClaimResult(PASS)

    def vstar_bookkeeping(self) -> ClaimResult:
        bad = getattr(self.rec, "vstar_mismatches", [])
        if bad:
            raise _Fail(f"incremental almost-saturated set diverged at events {bad[:5]}")
        return ClaimResult(PASS)


class _Fail(Exception):
    pass
