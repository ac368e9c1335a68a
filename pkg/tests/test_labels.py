from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antimagic import ArithSeq, Graph, Labeling
from antimagic.labels import PRODUCT, SUM, check_label_set, combine, fmt, normalize_op, to_label


@pytest.mark.parametrize("op,want", [("+", SUM), ("sum", SUM), ("*", PRODUCT), ("∘", PRODUCT), ("product", PRODUCT)])
def test_normalize_op(op, want):
    assert normalize_op(op) == want


def test_unknown_op():
    with pytest.raises(ValueError):
        normalize_op("-")


@pytest.mark.parametrize("x,want", [(3, Fraction(3)), ("3/4", Fraction(3, 4)), ("0.25", Fraction(1, 4)), (" 7 ", Fraction(7))])
def test_to_label_exact(x, want):
    assert to_label(x) == want


@pytest.mark.parametrize("x", [0.5, True])
def test_to_label_rejects_floats_and_bools(x):
    with pytest.raises(TypeError):
        to_label(x)


def test_to_label_rejects_garbage():
    with pytest.raises(ValueError):
        to_label("1/0")


def test_fmt_always_p_over_q():
    assert fmt(Fraction(4)) == "4/1" and fmt(Fraction(-3, 6)) == "-1/2"


def test_label_set_ranges():
    check_label_set([Fraction(1, 2)], SUM)
    with pytest.raises(ValueError):
        check_label_set([Fraction(0)], SUM)
    with pytest.raises(ValueError):
        check_label_set([Fraction(1, 2)], PRODUCT)
    with pytest.raises(ValueError):
        check_label_set([Fraction(2), Fraction(2)], SUM)


def test_arith_seq():
    assert ArithSeq("1/4", "1/3", 3).values() == [Fraction(1, 4), Fraction(7, 12), Fraction(11, 12)]
    with pytest.raises(ValueError):
        ArithSeq(1, 0, 3)


def test_combine_identities():
    assert combine(SUM, []) == 0 and combine(PRODUCT, []) == 1


@given(st.lists(st.fractions(min_value=1, max_value=50, max_denominator=12), min_size=4, max_size=4, unique=True),
       st.sampled_from([SUM, PRODUCT]))
def test_json_round_trip(values, op):
    g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (0, 3)])
    lab = Labeling(g, dict(enumerate(values)), op)
    back = Labeling.from_json(g, lab.to_json())
    assert back.labels == lab.labels and back.op == op
    assert [to_label(x["value"]) for x in lab.to_dict()["vertex_values"]] == lab.vertex_values()
