import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antimagic import Graph, NotFound, classify, extend_leafy, label_support_saturated, leafy, search_label, verify
from antimagic.enumerate import enumerate_connected
from antimagic.generators import cycle, path, random_support_saturated, star
from antimagic.graph import GraphError
from antimagic.universal import HAVE_COMPILED, leafy_split

F = Fraction


def brute_force_first(g, labels, op, weights=None):
    """Lexicographically first injective bijection by plain enumeration."""
    labels = sorted(labels)
    base = Fraction(0) if op == "+" else Fraction(1)
    for perm in itertools.permutations(range(g.m)):
        vals = [weights.get(v, base) if weights else base for v in range(g.n)]
        for e, (u, v) in enumerate(g.edges):
            x = labels[perm[e]]
            if op == "+":
                vals[u] += x
                vals[v] += x
            else:
                vals[u] *= x
                vals[v] *= x
        if len(set(vals)) == g.n:
            return {e: labels[perm[e]] for e in range(g.m)}
    return None


def kernels():
    return [False, True] if HAVE_COMPILED else [False]


class TestSearch:
    @pytest.mark.parametrize("use_compiled", kernels())
    @pytest.mark.parametrize("op", ["+", "*"])
    def test_matches_brute_force_on_small_graphs(self, op, use_compiled):
        # every connected graph with at most six edges, NotFound cases included
        for g in enumerate_connected(7):
            if g.m > 6:
                continue
            labels = [F(i + 1) for i in range(g.m)]
            found = search_label(g, labels, op, use_compiled=use_compiled)
            want = brute_force_first(g, labels, op)
            assert (found.labels if found else None) == want

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_weighted_matches_brute_force(self, data):
        g = data.draw(st.sampled_from([cycle(3), cycle(4), path(4), Graph.from_edges([(0, 1), (1, 2), (0, 2), (0, 3)])]))
        op = data.draw(st.sampled_from(["+", "*"]))
        lo = 1 if op == "*" else F(1, 6)
        labels = data.draw(
            st.lists(st.fractions(min_value=lo, max_value=9, max_denominator=6), min_size=g.m, max_size=g.m, unique=True)
        )
        weights = {v: data.draw(st.fractions(min_value=1, max_value=6, max_denominator=3)) for v in range(g.n)}
        for use_compiled in kernels():
            found = search_label(g, labels, op, weights=weights, use_compiled=use_compiled)
            want = brute_force_first(g, labels, op, weights)
            assert (found.labels if found else None) == want

    def test_k2_not_found(self):
        res = search_label(path(1), [1], "+")
        assert isinstance(res, NotFound) and not res

    def test_p4(self):
        lab = search_label(path(3), [1, 2, 3], "+")
        assert verify(path(3), lab, [1, 2, 3]).ok

    def test_triangle_rationals(self):
        labels = [F(1, 2), F(3, 4), F(5)]
        assert verify(cycle(3), search_label(cycle(3), labels, "+"), labels).ok

    def test_exhaustive_bound(self):
        with pytest.raises(ValueError, match="backtrack"):
            search_label(path(11), range(1, 12), "+")
        assert search_label(path(11), range(1, 12), "+", mode="backtrack")

    def test_label_count(self):
        with pytest.raises(ValueError):
            search_label(path(3), [1, 2], "+")

    def test_huge_products_fall_back_to_python(self):
        labels = [F(10**6 + i) for i in range(6)]
        lab = search_label(cycle(6), labels, "*")
        assert verify(cycle(6), lab, labels, "*").ok

    @pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
    def test_compiled_refuses_overflow_explicitly(self):
        # callers that force the compiled kernel still get exact answers for small keys
        lab = search_label(path(5), range(1, 6), "*", use_compiled=True)
        assert lab.labels == search_label(path(5), range(1, 6), "*", use_compiled=False).labels

    @pytest.mark.parametrize("m", range(3, 9))
    def test_paths_and_cycles_random_rationals(self, m):
        rng = random.Random(m)
        for g in (path(m), cycle(m)):
            for op in "+*":
                labels = set()
                while len(labels) < m:
                    x = F(rng.randint(1, 60), rng.randint(1, 6))
                    labels.add(x + 1 if op == "*" else x)
                assert search_label(g, sorted(labels), op, mode="backtrack")


def leaf_interior_separated(g, lab, labels):
    c = classify(g)
    vals = lab.vertex_values()
    nl = len(c.leaves)
    return sorted(vals[v] for v in c.leaves) == sorted(labels)[:nl] and all(
        vals[v] > sorted(labels)[nl - 1] for v in c.interior
    )


class TestSupportSaturated:
    def test_double_star(self):
        g = Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
        lab = label_support_saturated(g, range(1, 6))
        assert verify(g, lab, range(1, 6)).ok
        assert leaf_interior_separated(g, lab, [F(i) for i in range(1, 6)])

    @pytest.mark.parametrize("op", ["+", "*"])
    def test_star(self, op):
        assert verify(star(4), label_support_saturated(star(4), range(1, 5), op), range(1, 5), op).ok

    def test_corona_triangle(self):
        g = leafy(cycle(3), {0: 1, 1: 1, 2: 1})
        lab = label_support_saturated(g, range(1, 7))
        assert verify(g, lab, range(1, 7)).ok

    def test_rejects_bald_interior(self, paw):
        with pytest.raises(GraphError, match="not a support"):
            label_support_saturated(paw, range(1, 5))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from(["+", "*"]), st.data())
    def test_random(self, seed, op, data):
        g = random_support_saturated(seed)
        lo = 1 if op == "*" else F(1, 9)
        labels = data.draw(
            st.lists(st.fractions(min_value=lo, max_value=100, max_denominator=9), min_size=g.m, max_size=g.m, unique=True)
        )
        lab = label_support_saturated(g, labels, op)
        assert verify(g, lab, labels, op).ok
        if op == "+" or min(labels) > 1:
            assert leaf_interior_separated(g, lab, labels)


def brute_weighted(core, labels, op, weights):
    found = brute_force_first(core, labels, op, weights)
    return None if found is None else type(search_label(core, labels, op, weights=weights))(core, found, op)


class TestLeafy:
    def test_no_added_pendants(self):
        lab = extend_leafy(cycle(4), cycle(4), labels=range(1, 5))
        assert verify(cycle(4), lab, range(1, 5)).ok

    def test_c4_one_pendant(self):
        g = leafy(cycle(4), {0: 1})
        assert leafy_split(g, cycle(4)) == [4]
        lab = extend_leafy(g, cycle(4), brute_weighted, range(1, 6))
        assert lab.labels[4] == 1 and verify(g, lab, range(1, 6)).ok

    def test_product_triangle_two_pendants(self):
        g = leafy(cycle(3), {0: 1, 1: 1})
        lab = extend_leafy(g, cycle(3), labels=range(1, 6), op="*")
        assert verify(g, lab, range(1, 6), "*").ok

    def test_not_a_leafy_graph(self):
        with pytest.raises(GraphError):
            leafy_split(cycle(4), cycle(3))

    def test_labeler_failure_propagates(self):
        g = leafy(cycle(3), {0: 1})
        with pytest.raises(RuntimeError, match="no labeling"):
            extend_leafy(g, cycle(3), lambda *a: None, range(1, 5))


def test_leafy_retries_pendant_assignment():
    # edge-id order gives weights 3, 0, 3, 0 on C_4, which labels 4..7 cannot separate
    g = leafy(cycle(4), {0: 2, 2: 1})
    weights = {0: F(3), 1: F(0), 2: F(3), 3: F(0)}
    assert isinstance(search_label(cycle(4), range(4, 8), "+", weights=weights), NotFound)
    lab = extend_leafy(g, cycle(4), labels=range(1, 8))
    assert verify(g, lab, range(1, 8)).ok
    assert sorted(lab.labels[e] for e in leafy_split(g, cycle(4))) == [1, 2, 3]
