"""Antimagic and product-antimagic edge labelings of graphs with pendant edges."""

from .decompose import (
    EdgePartition,
    GPD,
    OrderedTrail,
    SSequence,
    assemble_s_sequence,
    eulerian_circuit,
    forest_even_partition,
    gpd,
)
from .engine import InternalError, PreconditionError, Recorder, build_plan, label_arithmetic
from .enumerate import enumerate_connected
from .generators import generate
from .graph import (
    Graph,
    GraphError,
    PrunedGraph,
    VertexClasses,
    classify,
    leafy,
    parse_edge_list,
    prune,
    read_edge_list,
    subdivide,
)
from .labels import PRODUCT, SUM, ArithSeq, Labeling
from .universal import HAVE_COMPILED, NotFound, extend_leafy, label_support_saturated, search_label
from .verify import VerificationReport, check_claims, verify

__all__ = [
    "ArithSeq",
    "EdgePartition",
    "GPD",
    "Graph",
    "GraphError",
    "HAVE_COMPILED",
    "InternalError",
    "Labeling",
    "NotFound",
    "OrderedTrail",
    "PRODUCT",
    "PreconditionError",
    "PrunedGraph",
    "Recorder",
    "SSequence",
    "SUM",
    "VerificationReport",
    "VertexClasses",
    "assemble_s_sequence",
    "build_plan",
    "check_claims",
    "classify",
    "enumerate_connected",
    "eulerian_circuit",
    "extend_leafy",
    "forest_even_partition",
    "generate",
    "gpd",
    "label_arithmetic",
    "label_support_saturated",
    "leafy",
    "parse_edge_list",
    "prune",
    "read_edge_list",
    "search_label",
    "subdivide",
    "verify",
]
