"""Exact labels, arithmetic label sequences and edge labelings."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Union

from .graph import Graph

LabelLike = Union[int, str, Fraction]

SUM = "+"
PRODUCT = "*"
OPS = (SUM, PRODUCT)


def normalize_op(op: str) -> str:
    """Accept ``+``/``sum`` and ``*``/``product``/``∘``."""
    table = {"+": SUM, "sum": SUM, "*": PRODUCT, "product": PRODUCT, "∘": PRODUCT, "o": PRODUCT}
    try:
        return table[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}; use '+' or '*'") from None


def to_label(x: LabelLike) -> Fraction:
    """Exact conversion. Floats are refused: their binary value is rarely the
    number the caller meant."""
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"labels must be exact (int, Fraction or 'p/q' string), got {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot read {x!r} as an exact rational") from None
    raise TypeError(f"unsupported label type {type(x).__name__}")


def fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def check_label_set(labels: Sequence[Fraction], op: str) -> None:
    """Labels must be distinct and lie in (0, inf) for sums, [1, inf) for products."""
    if len(set(labels)) != len(labels):
        raise ValueError("labels are not distinct")
    if op == SUM and any(x <= 0 for x in labels):
        raise ValueError("sum mode needs positive labels")
    if op == PRODUCT and any(x < 1 for x in labels):
        raise ValueError("product mode needs labels >= 1")


@dataclass(frozen=True)
class ArithSeq:
    l1: Fraction
    d: Fraction
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "l1", to_label(self.l1))
        object.__setattr__(self, "d", to_label(self.d))
        if self.d <= 0:
            raise ValueError("common difference must be positive")
        if self.m < 0:
            raise ValueError("negative length")

    def values(self) -> list[Fraction]:
        return [self.l1 + i * self.d for i in range(self.m)]


def combine(op: str, values: Iterable[Fraction]) -> Fraction:
    if op == SUM:
        return sum(values, Fraction(0))
    return prod(values, start=Fraction(1))


def identity(op: str) -> Fraction:
    return Fraction(0) if op == SUM else Fraction(1)


@dataclass
class Labeling:
    """Edge-id to label map of a graph, plus the operation it is judged by."""

    graph: Graph
    labels: dict[int, Fraction]
    op: str = SUM

    def is_total(self) -> bool:
        return len(self.labels) == self.graph.m and all(e in self.labels for e in range(self.graph.m))

    def vertex_values(self) -> list[Fraction]:
        g = self.graph
        return [combine(self.op, (self.labels[e] for _, e in g.adjacency[v])) for v in range(g.n)]

    def to_dict(self) -> dict:
        g = self.graph
        values = self.vertex_values()
        return {
            "op": self.op,
            "labels": [
                {"edge": list(g.edges[e]), "label": fmt(self.labels[e])} for e in sorted(self.labels)
            ],
            "vertex_values": [{"vertex": v, "value": fmt(x)} for v, x in enumerate(values)],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, g: Graph, data: Mapping) -> Labeling:
        op = normalize_op(data["op"])
        labels = {}
        for item in data["labels"]:
            u, v = item["edge"]
            labels[g.edge_id(int(u), int(v))] = to_label(str(item["label"]))
        return cls(g, labels, op)

    @classmethod
    def from_json(cls, g: Graph, text: str) -> Labeling:
        return cls.from_dict(g, json.loads(text))
