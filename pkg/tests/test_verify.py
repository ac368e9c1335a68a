import copy
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antimagic import ArithSeq, Graph, Labeling, Recorder, check_claims, label_arithmetic, verify
from antimagic.generators import path, star
from antimagic.verify import CLAIMS, FAIL, PASS, SKIPPED, VerificationError

from strategies import connected_graphs


def naive_values(edges, n, labels, op):
    out = []
    for v in range(n):
        acc = Fraction(0) if op == "+" else Fraction(1)
        for e, (a, b) in enumerate(edges):
            if v in (a, b):
                acc = acc + labels[e] if op == "+" else acc * labels[e]
        out.append(acc)
    return out


class TestVerify:
    def test_star(self):
        g = star(3)
        r = verify(g, Labeling(g, {0: 1, 1: 2, 2: 3}, "*"), [1, 2, 3])
        assert r.ok and sorted(r.vertex_values.values()) == [1, 2, 3, 6]

    def test_p3(self):
        g = path(2)
        r = verify(g, Labeling(g, {0: 1, 1: 2}), [1, 2])
        assert r.ok and [r.vertex_values[v] for v in range(3)] == [1, 3, 2]

    def test_duplicate_expected_labels(self):
        g = path(2)
        with pytest.raises(VerificationError):
            verify(g, Labeling(g, {0: 1, 1: 1}), [1, 1])

    def test_p4_collision_witness(self):
        g = path(3)
        r = verify(g, Labeling(g, {0: 1, 1: 2, 2: 3}), [1, 2, 3])
        assert not r.is_injective_values and not r.ok
        assert r.collision_witness == (1, 3, 3)
        assert "vertices 1 and 3 share value 3/1" in r.summary()

    def test_not_a_bijection(self):
        g = path(2)
        r = verify(g, Labeling(g, {0: 1, 1: 5}), [1, 2])
        assert not r.is_bijection and "outside L" in r.bijection_detail

    def test_partial(self):
        g = path(2)
        with pytest.raises(VerificationError, match="partial"):
            verify(g, Labeling(g, {0: 1}), [1, 2])

    @given(connected_graphs(max_n=7), st.sampled_from(["+", "*"]), st.randoms(use_true_random=False))
    def test_agrees_with_naive_recomputation(self, g, op, rnd):
        labels = [Fraction(i + 1, 2) + 1 for i in range(g.m)]
        rnd.shuffle(labels)
        r = verify(g, Labeling(g, dict(enumerate(labels)), op), labels)
        want = naive_values(g.edges, g.n, labels, op)
        assert [r.vertex_values[v] for v in range(g.n)] == want
        assert r.is_injective_values == (len(set(want)) == len(want))
        assert r.is_injective_values or r.collision_witness is not None

    def test_report_json_fields(self, paw):
        lab = label_arithmetic(paw, ArithSeq(1, 1, 4))
        d = json.loads(json.dumps(verify(paw, lab, range(1, 5)).to_dict()))
        assert set(d) == {"is_bijection", "is_injective_values", "op", "vertex_values", "claim_results", "collision_witness"}
        assert d["vertex_values"][0] == {"vertex": 0, "value": "9/1"}


def paw_trace(paw, op="+"):
    rec = Recorder()
    label_arithmetic(paw, ArithSeq(1, 1, 4), op, rec)
    return rec


class TestClaims:
    @pytest.mark.parametrize("op", ["+", "*"])
    def test_paw_all_pass(self, paw, op):
        res = check_claims(paw_trace(paw, op))
        assert set(res) == set(CLAIMS)
        assert all(r.status in (PASS, SKIPPED) for r in res.values())
        assert res["claim1_alternation"].status == PASS

    def test_alternation_violation(self, paw):
        rec = copy.deepcopy(paw_trace(paw))
        a, b = rec.assignments[0], rec.assignments[1]
        a.index, b.index = b.index, a.index
        res = check_claims(rec)
        assert res["claim1_alternation"].status == FAIL
        assert "edges 1 and 2 use the same pool" in res["claim1_alternation"].detail

    def test_claim6_skipped_without_small_step3_labels(self, paw):
        rec = copy.deepcopy(paw_trace(paw))
        # with the whole label set declared big, step 3 drew no small label
        rec.ib = 0
        assert check_claims(rec)["claim6_w2_upper_bound"].status == SKIPPED

    def test_non_step_routes_skip(self):
        rec = Recorder()
        label_arithmetic(star(3), ArithSeq(1, 1, 3), "+", rec)
        assert {r.status for r in check_claims(rec).values()} == {SKIPPED}

    def test_malformed(self, paw):
        with pytest.raises(VerificationError):
            check_claims(Recorder())
        rec = copy.deepcopy(paw_trace(paw))
        rec.assignments.pop()
        with pytest.raises(VerificationError):
            check_claims(rec)

    def test_reduced_run_is_checked(self):
        g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 6)])
        rec = Recorder()
        label_arithmetic(g, ArithSeq(1, 1, 6), "*", rec)
        assert rec.exception_fired
        res = check_claims(rec)
        assert all(r.status != FAIL for r in res.values())

    def test_trace_attached_to_report(self, paw):
        rec = paw_trace(paw)
        lab = label_arithmetic(paw, ArithSeq(1, 1, 4))
        assert verify(paw, lab, range(1, 5), trace=rec).claim_results

    def test_deterministic(self, paw):
        a = check_claims(paw_trace(paw))
        b = check_claims(paw_trace(paw))
        assert {k: v.to_dict() for k, v in a.items()} == {k: v.to_dict() for k, v in b.items()}
