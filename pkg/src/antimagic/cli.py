"""Command-line front end.

Exit codes: 0 success, 1 I/O or input-format error, 2 the graph or label set
lies outside what the chosen labeler covers, 3 a verification or sweep
failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .engine import InternalError, PreconditionError, Recorder, build_plan, label_arithmetic
from .enumerate import enumerate_connected
from .generators import FAMILIES, generate
from .graph import Graph, GraphError, classify, format_edge_list, parse_edge_list
from .labels import PRODUCT, ArithSeq, Labeling, check_label_set, fmt, normalize_op, to_label
from .universal import NotFound, label_support_saturated, search_label
from .verify import verify

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_FAILED = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# --- DOT ---------------------------------------------------------------------

_DOT_EDGE = re.compile(r'^\s*(\d+)\s*--\s*(\d+)\s*(?:\[\s*label\s*=\s*"([^"]*)"\s*\])?\s*;?\s*$')
_DOT_NODE = re.compile(r'^\s*(\d+)\s*(?:\[[^\]]*\])?\s*;?\s*$')


def to_dot(lab: Labeling) -> str:
    """DOT text with edge labels and vertex values as node labels."""
    g = lab.graph
    lines = ["graph {"]
    for v, x in enumerate(lab.vertex_values()):
        lines.append(f'  {v} [label="{v}: {fmt(x)}"];')
    for e, (u, v) in enumerate(g.edges):
        lines.append(f'  {u} -- {v} [label="{fmt(lab.labels[e])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot(text: str) -> tuple[Graph, dict[int, Fraction]]:
    """Read back the subset of DOT written by :func:`to_dot`."""
    body = text.strip()
    if not body.startswith("graph") or not body.endswith("}"):
        raise GraphError("expected 'graph { ... }'")
    body = body[body.index("{") + 1 : -1]
    edges, raw, n = [], [], 0
    for line in body.splitlines():
        if not line.strip():
            continue
        if m := _DOT_EDGE.match(line):
            u, v = int(m[1]), int(m[2])
            edges.append((u, v))
            raw.append(m[3])
            n = max(n, u + 1, v + 1)
        elif m := _DOT_NODE.match(line):
            n = max(n, int(m[1]) + 1)
        else:
            raise GraphError(f"cannot parse DOT line {line.strip()!r}")
    g = Graph.from_edges(edges, n)
    labels = {g.edge_id(u, v): to_label(x) for (u, v), x in zip(edges, raw) if x is not None}
    return g, labels


# --- helpers -------------------------------------------------------------------


def _read_graph(path: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from None
    try:
        if text.lstrip().startswith("graph"):
            return parse_dot(text)[0]
        return parse_edge_list(text)
    except (GraphError, ValueError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_IO) from None


def _rational(text: str) -> Fraction:
    try:
        return to_label(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _label_list(text: str) -> list[Fraction]:
    return [_rational(x) for x in re.split(r"[,\s]+", text.strip()) if x]


def _labels_for(g: Graph, args) -> tuple[list[Fraction], bool]:
    """Label values and whether they form an arithmetic sequence."""
    if args.labels is not None:
        values = sorted(args.labels)
        if len(values) != g.m:
            raise CliError(f"{len(values)} labels given for {g.m} edges", EXIT_PRECONDITION)
        diffs = {b - a for a, b in zip(values, values[1:])}
        return values, len(diffs) <= 1
    return ArithSeq(args.l1, args.d, g.m).values(), True


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", EXIT_IO) from None


def _render(lab: Labeling, fmt_name: str, extra: dict | None = None) -> str:
    if fmt_name == "dot":
        return to_dot(lab)
    if fmt_name == "tsv":
        rows = ["u\tv\tlabel"] + [f"{u}\t{v}\t{fmt(lab.labels[e])}" for e, (u, v) in enumerate(lab.graph.edges)]
        return "\n".join(rows)
    data = lab.to_dict()
    if extra:
        data.update(extra)
    return json.dumps(data, indent=2)


def dispatch_label(g: Graph, values: list[Fraction], arithmetic: bool, op: str, rec: Recorder | None = None):
    """Pick a labeler for ``g``: the four-step construction for arithmetic
    labels, the support-saturated construction when every interior vertex is
    a support, the search for paths and cycles.  Returns (labeling, route)."""
    if arithmetic:
        try:
            return label_arithmetic(g, values, op, rec), "arithmetic"
        except PreconditionError as exc:
            reason = str(exc)
    else:
        reason = "labels do not form an arithmetic sequence"
    c = classify(g)
    if g.is_connected() and g.m >= 3 and c.interior <= c.supports:
        return label_support_saturated(g, values, op), "support-saturated"
    if g.is_path() or g.is_cycle():
        found = search_label(g, values, op, mode="backtrack")
        if isinstance(found, NotFound):
            raise CliError("search found no labeling", EXIT_FAILED)
        return found, "search"
    raise CliError(reason, EXIT_PRECONDITION)


# --- commands ----------------------------------------------------------------


def cmd_label(args) -> int:
    g = _read_graph(args.input)
    values, arithmetic = _labels_for(g, args)
    try:
        check_label_set(values, args.op)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    rec = Recorder() if args.trace else None
    try:
        lab, route = dispatch_label(g, values, arithmetic, args.op, rec)
    except (PreconditionError, GraphError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    report = verify(g, lab, values, args.op, trace=rec)
    if not report.ok:
        raise CliError(f"labeling failed verification: {report.summary()}", EXIT_FAILED)
    extra = {"route": route, "verified": True}
    if rec is not None:
        extra["claims"] = {k: r.to_dict() for k, r in report.claim_results.items()}
    _emit(_render(lab, args.format, extra), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_graph(args.input)
    try:
        text = Path(args.labeling).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {args.labeling}: {exc}", EXIT_IO) from None
    try:
        if text.lstrip().startswith("graph"):
            h, labels = parse_dot(text)
            if h.edges != g.edges:
                raise CliError("DOT graph differs from the input graph", EXIT_IO)
            lab = Labeling(g, labels, args.op)
        else:
            lab = Labeling.from_json(g, text)
    except (KeyError, ValueError, GraphError, json.JSONDecodeError) as exc:
        raise CliError(f"{args.labeling}: {exc}", EXIT_IO) from None
    if args.labels is not None or args.l1 is not None:
        if args.l1 is not None and args.d is None:
            raise CliError("--l1 needs --d", EXIT_IO)
        values, _ = _labels_for(g, args)
    else:
        values = sorted(lab.labels.values())
    try:
        report = verify(g, lab, values, lab.op)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_FAILED) from None
    _emit(json.dumps(report.to_dict(), indent=2) if args.json else report.summary(), args.out)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_oracle(args) -> int:
    g = _read_graph(args.input)
    values, _ = _labels_for(g, args)
    mode = "backtrack" if args.backtrack else "exhaustive"
    try:
        found = search_label(g, values, args.op, mode=mode, bound=args.bound)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    if isinstance(found, NotFound):
        _emit(json.dumps({"found": False, "op": args.op}), args.out)
        return EXIT_FAILED
    _emit(_render(found, args.format, {"found": True}), args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    params = {}
    for item in args.params:
        key, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"parameter {item!r} is not key=value", EXIT_IO)
        params[key] = value
    if args.seed is not None:
        params["seed"] = args.seed
    try:
        g = generate(args.kind, params)
    except (GraphError, ValueError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    _emit(format_edge_list(g), args.out)
    return EXIT_OK


def cmd_explain(args) -> int:
    g = _read_graph(args.input)
    try:
        plan = build_plan(g)
    except (PreconditionError, GraphError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    _emit(json.dumps(plan.to_dict(g), indent=2), args.out)
    return EXIT_OK


def _sweep_corpus(args) -> list[tuple[str, Graph]]:
    if args.connected is not None:
        out = []
        for i, g in enumerate(enumerate_connected(args.connected)):
            c = classify(g)
            if g.m >= 3 and c.deg3 <= c.supports:
                out.append((f"connected-{i}", g))
        return out
    if args.family is not None:
        base = 0 if args.seed is None else args.seed
        return [(f"{args.family}-{s}", generate(args.family, {"seed": s})) for s in range(base, base + args.count)]
    paths = sorted(Path(args.corpus).glob("*.edges")) if Path(args.corpus).is_dir() else [Path(args.corpus)]
    return [(p.stem, _read_graph(str(p))) for p in paths]


def _sweep_one(task) -> tuple:
    gid, n, edges, op, l1, d, claims = task
    g = Graph(n, edges)
    t0 = time.perf_counter()
    rec = Recorder() if claims else None
    status, detail = "pass", ""
    try:
        lab = label_arithmetic(g, ArithSeq(l1, d, g.m), op, rec)
        report = verify(g, lab, ArithSeq(l1, d, g.m).values(), op, trace=rec)
        if not report.ok:
            status, detail = "fail", report.summary()
    except PreconditionError as exc:
        status, detail = "skip", str(exc)
    except (InternalError, ValueError) as exc:
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    return gid, n, g.m, op, fmt(l1), fmt(d), status, time.perf_counter() - t0, detail


def cmd_sweep(args) -> int:
    grid = args.seq or [(Fraction(1), Fraction(1))]
    ops = args.ops or ["+", "*"]
    if args.ops:
        for l1, _ in grid:
            if PRODUCT in ops and l1 < 1:
                raise CliError(f"product mode needs l1 >= 1, got {fmt(l1)}", EXIT_PRECONDITION)
    try:
        corpus = _sweep_corpus(args)
    except (GraphError, ValueError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    # with both operations requested implicitly, product runs need l1 >= 1
    tasks = [
        (gid, g.n, g.edges, op, l1, d, args.claims)
        for gid, g in corpus
        for op in ops
        for l1, d in grid
        if op != PRODUCT or l1 >= 1
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_one, tasks, chunksize=16))
    else:
        rows = [_sweep_one(t) for t in tasks]
    rows.sort(key=lambda r: r[:6])
    lines = ["graph\tn\tm\top\tl1\td\tstatus\tseconds"]
    lines += [f"{r[0]}\t{r[1]}\t{r[2]}\t{r[3]}\t{r[4]}\t{r[5]}\t{r[6]}\t{r[7]:.4f}" for r in rows]
    _emit("\n".join(lines), args.out)
    failed = [r for r in rows if r[6] == "fail"]
    for r in failed:
        print(f"FAIL {r[0]} op={r[3]} l1={r[4]} d={r[5]}: {r[8]}", file=sys.stderr)
    print(
        f"{len(rows)} runs, {len(failed)} failed, {sum(r[6] == 'skip' for r in rows)} skipped",
        file=sys.stderr,
    )
    return EXIT_FAILED if failed else EXIT_OK


# --- parser ---------------------------------------------------------------------


def _seq_pair(text: str) -> tuple[Fraction, Fraction]:
    l1, sep, d = text.partition(",")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected 'l1,d', got {text!r}")
    return _rational(l1), _rational(d)


def _op(text: str) -> str:
    try:
        return normalize_op(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antimagic", description="Antimagic and product-antimagic edge labelings.")
    sub = p.add_subparsers(dest="command", required=True)

    def labels_opts(sp, defaults=True):
        sp.add_argument("--op", type=_op, default="+", help="'+' for sums, '*' for products")
        sp.add_argument("--l1", type=_rational, default=Fraction(1) if defaults else None, help="first label")
        sp.add_argument("--d", type=_rational, default=Fraction(1) if defaults else None, help="common difference")
        sp.add_argument("--labels", type=_label_list, help="explicit label list, e.g. '1,3/2,4'")

    sp = sub.add_parser("label", help="label a graph and verify the result")
    sp.add_argument("input", help="edge-list or DOT file ('-' for stdin)")
    labels_opts(sp)
    sp.add_argument("--format", choices=("json", "dot", "tsv"), default="json")
    sp.add_argument("--trace", action="store_true", help="record the run and report the claim checks")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_label)

    sp = sub.add_parser("verify", help="check a labeling (JSON or DOT)")
    sp.add_argument("input")
    sp.add_argument("labeling")
    labels_opts(sp, defaults=False)
    sp.add_argument("--json", action="store_true", help="print the full report as JSON")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="backtracking search for a labeling")
    sp.add_argument("input")
    labels_opts(sp)
    sp.add_argument("--bound", type=int, default=10, help="largest edge count for exhaustive mode")
    sp.add_argument("--backtrack", action="store_true", help="ignore the bound")
    sp.add_argument("--format", choices=("json", "dot", "tsv"), default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("generate", help="write a generated graph as an edge list")
    sp.add_argument("kind", choices=sorted(FAMILIES))
    sp.add_argument("params", nargs="*", help="key=value, e.g. spine=4 leaves=1:2,3:1")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("sweep", help="label and verify a whole corpus")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--connected", type=int, metavar="N", help="all connected graphs with at most N vertices")
    src.add_argument("--family", choices=sorted(k for k in FAMILIES if k.startswith("random_")))
    src.add_argument("--corpus", help="directory of .edges files, or one file")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--seq", type=_seq_pair, action="append", help="'l1,d' (repeatable; default 1,1)")
    sp.add_argument("--op", dest="ops", type=_op, action="append", help="repeatable; default both")
    sp.add_argument("--claims", action="store_true", help="also check the construction's claims")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("explain", help="print the decomposition plan without labeling")
    sp.add_argument("input")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_explain)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "op", None) == PRODUCT:
        floor = min(args.labels) if getattr(args, "labels", None) else getattr(args, "l1", None)
        if floor is not None and floor < 1:
            parser.error(f"product mode needs labels >= 1, got {fmt(floor)}")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"antimagic: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
