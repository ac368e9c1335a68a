import networkx as nx
import pytest

from antimagic import classify
from antimagic.enumerate import CONNECTED_COUNTS, canonical_form, connected_graphs, enumerate_connected
from antimagic.generators import (
    caterpillar,
    generate,
    leafy_cycle,
    random_caterpillar,
    random_leafy_cycle,
    random_subdivided_leafy,
    random_support_saturated,
    random_v3_subset_vs,
    star,
)
from antimagic.graph import GraphError


def v3_in_vs(g):
    c = classify(g)
    return c.deg3 <= c.supports


class TestFamilies:
    def test_caterpillar_counts_spine_edges(self):
        g = caterpillar(2, {1: 1})
        assert g.m == 3 and g.degree(1) == 3 and v3_in_vs(g)

    def test_leafy_triangle_is_paw(self):
        g = leafy_cycle(3, {0: 1})
        assert sorted(g.degrees()) == [1, 2, 2, 3]

    def test_star(self):
        assert star(4).m == 4 and star(4).degree(0) == 4

    @pytest.mark.parametrize("kind,params", [("star", {"k": 1}), ("path", {"m": 0}), ("cycle", {"m": 2})])
    def test_degenerate_sizes(self, kind, params):
        with pytest.raises(GraphError):
            generate(kind, params)

    def test_unknown_family(self):
        with pytest.raises(GraphError, match="unknown family"):
            generate("wheel", {})

    def test_generate_with_leaf_spec(self):
        g = generate("caterpillar", {"spine": "3", "leaves": "1:2,2:1"})
        assert g.m == 6 and g.degree(1) == 4

    def test_random_v3_subset_vs_seed_1(self):
        g = random_v3_subset_vs(7, seed=1)
        assert g.n == 7 and g.is_connected() and v3_in_vs(g)

    @pytest.mark.parametrize("seed", range(30))
    def test_random_families_keep_their_property(self, seed):
        cat = random_caterpillar(seed)
        assert 50 <= cat.m <= 200 and cat.is_tree() and v3_in_vs(cat)
        assert max(cat.degrees()) >= 3
        lc = random_leafy_cycle(seed)
        assert lc.m <= 100 and v3_in_vs(lc) and min(lc.degrees()) == 1
        sl = random_subdivided_leafy(seed)
        assert sl.m <= 100 and sl.is_connected() and v3_in_vs(sl)
        ss = random_support_saturated(seed)
        c = classify(ss)
        assert ss.is_connected() and c.interior <= c.supports

    def test_seed_determinism(self):
        assert random_caterpillar(5) == random_caterpillar(5)
        assert random_subdivided_leafy(5) == random_subdivided_leafy(5)
        assert random_caterpillar(5) != random_caterpillar(6)


def atlas_counts():
    counts = {}
    for h in nx.graph_atlas_g()[1:]:
        if nx.is_connected(h):
            counts[h.number_of_nodes()] = counts.get(h.number_of_nodes(), 0) + 1
    return counts


class TestEnumeration:
    def test_small_cases(self):
        assert [g.edges for g in enumerate_connected(2)] == [((0, 1),)]
        three = list(enumerate_connected(3, min_vertices=3))
        assert sorted(g.m for g in three) == [2, 3]
        assert len(list(enumerate_connected(4, min_vertices=4))) == 6

    def test_counts_match_networkx_atlas(self):
        atlas = atlas_counts()
        for n in range(1, 8):
            assert len(connected_graphs(n)) == atlas[n] == CONNECTED_COUNTS[n]

    def test_pairwise_non_isomorphic(self):
        graphs = [nx.Graph(list(g.edges)) for g in connected_graphs(5)]
        for i, a in enumerate(graphs):
            for b in graphs[i + 1 :]:
                assert not nx.is_isomorphic(a, b)

    def test_canonical_form_is_invariant(self):
        # path 0-1-2-3 under two labelings
        a = [0b0010, 0b0101, 0b1010, 0b0100]
        b = [0b1000, 0b0100, 0b1010, 0b0101]
        assert canonical_form(a, 4)[0] == canonical_form(b, 4)[0]

    def test_limit(self):
        with pytest.raises(ValueError):
            list(enumerate_connected(9))
