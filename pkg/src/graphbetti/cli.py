"""Command-line harness: Betti reports, conjecture verification, cut and
partition listings, extension cycles and tree witnesses.

Exit codes: 0 ok, 1 usage, 2 invalid input, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from .cycles import (ExtensionSpec, NotATreeError, SpecError, WitnessError,
                     boundary_of_chain, chain_to_string, cycle_layers,
                     extension_cycle, tree_witness_cycle,
                     witness_certifies_nonzero_homology)
from .divisors import (canonical_sink, degree, divisor_to_string,
                       enumerate_maximal_superstables, linear_system,
                       parse_divisor, q_reduce)
from .homology import (CutRecoveryError, betti_kD, betti_table_for_rep,
                       coarse_betti, complex_of_divisor, cut_from_splitting,
                       splittings)
from .multigraph import GraphError, load_graph
from .orientations import (LemmaViolation, boundary_divisor_classes,
                           canonical_source_block, enumerate_AUS, f_map,
                           orientation_to_string)
from .partitions import (enumerate_connected_partitions, parse_partition,
                         partition_to_string, quotient)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(EXIT_USAGE)


def _span(text):
    """'A' or 'A..B' -> (A, B)."""
    a, sep, b = text.partition("..")
    try:
        lo = int(a)
        hi = int(b) if sep else lo
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'A' or 'A..B', got %r" % text)
    if lo > hi:
        raise argparse.ArgumentTypeError("empty range %r" % text)
    return (lo, hi)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphbetti",
                     description="Betti numbers of graph toppling ideals, "
                                 "boundary divisors and conjecture checks.")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def graph_command(name, help_text, figures=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--graph", required=True, metavar="FILE",
                       help="edge-list file: '<u> <v> [<m>]' per line")
        p.add_argument("--format", choices=("table", "json", "csv"),
                       default="table")
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                       metavar="N")
        p.add_argument("--seed", type=int, default=0, metavar="S")
        if figures:
            p.add_argument("--figures", metavar="DIR",
                           help="also render matplotlib figures into DIR")
        return p

    p = graph_command("betti", "fine and coarse Betti number report",
                      figures=True)
    p.add_argument("--k", type=_span, metavar="A..B",
                   help="homological degrees (default 1..n-1)")
    p.add_argument("--sink", metavar="VERTEX",
                   help="reduction sink (default: first vertex)")
    p.add_argument("--degree-window", type=_span, metavar="LO..HI",
                   help="divisor degrees to scan (default 0..#E)")
    p.set_defaults(func=cmd_betti)

    p = graph_command("verify-wilmes",
                      "compare coarse Betti numbers against partition counts")
    p.add_argument("--k", type=_span, metavar="A..B")
    p.add_argument("--degree-window", type=_span, metavar="LO..HI")
    p.set_defaults(func=cmd_verify_wilmes)

    p = graph_command("cuts", "list cuts with boundary divisors and beta_1")
    p.set_defaults(func=cmd_cuts)

    p = graph_command("partitions", "list connected partitions")
    p.add_argument("--parts", type=int, required=True, metavar="K",
                   help="number of blocks")
    p.set_defaults(func=cmd_partitions)

    p = graph_command("boundary-divisors",
                      "boundary divisor classes of a partition")
    p.add_argument("--partition", required=True, metavar="P",
                   help="partition such as '{a}|{b,d}|{c}'")
    p.set_defaults(func=cmd_boundary_divisors)

    p = graph_command("linear-system",
                      "members, splittings and recovered cuts of |D|",
                      figures=True)
    p.add_argument("--divisor", required=True, metavar="D",
                   help="divisor such as '0004' or 'a=0,b=0,c=0,d=4'")
    p.set_defaults(func=cmd_linear_system)

    p = sub.add_parser("extension-cycle",
                       help="build or randomly verify abstract extension cycles")
    p.add_argument("--extensions", metavar="E1,E2,..",
                   help="extension label per base position, e.g. '6,5,5'")
    p.add_argument("--random", type=int, metavar="N",
                   help="instead verify N random specs have zero boundary")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--format", choices=("table", "json", "csv"),
                   default="table")
    p.set_defaults(func=cmd_extension_cycle)

    p = graph_command("tree-witness",
                      "witness cycle certifying a top-layer Betti number "
                      "on a multi-edged tree")
    p.add_argument("--partition", required=True, metavar="P")
    p.add_argument("--divisor", metavar="D",
                   help="boundary divisor (default: image of the unique "
                        "source-at-first-block orientation)")
    p.set_defaults(func=cmd_tree_witness)

    return parser


# -- shared plumbing -------------------------------------------------------------


def _read_graph(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphError(str(exc))
    return load_graph(text)


def _emit(fmt, columns, rows, json_obj, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(json_obj, indent=2) + "\n")
    elif fmt == "csv":
        writer = csv.writer(stream)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] for c in columns])
    else:
        _print_table(columns, rows, stream)


def _print_table(columns, rows, stream):
    data = [[("" if row[c] is None else str(row[c])) for c in columns]
            for row in rows]
    widths = [max([len(c)] + [len(d[i]) for d in data])
              for i, c in enumerate(columns)]
    def line(cells):
        stream.write("  ".join(cell.ljust(w)
                               for cell, w in zip(cells, widths)).rstrip() + "\n")
    line(columns)
    line(["-" * w for w in widths])
    for d in data:
        line(d)


def _slug(text):
    return re.sub(r"[^A-Za-z0-9]+", "_", text).strip("_")


def _table_batch(payload):
    g, reps, ks = payload
    return [(rep, betti_table_for_rep(g, rep, ks)) for rep in reps]


def _parallel_tables(jobs):
    """map_tables hook for coarse_betti: shard representatives across a
    process pool; assembly order is fixed by the caller, so the output is
    identical at any parallelism level."""
    def run(g, reps, ks):
        if jobs <= 1 or len(reps) < 8:
            return {rep: betti_table_for_rep(g, rep, ks) for rep in reps}
        shards = [reps[i::jobs * 4] for i in range(jobs * 4)]
        payloads = [(g, shard, ks) for shard in shards if shard]
        tables = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for batch in pool.map(_table_batch, payloads):
                tables.update(batch)
        return tables
    return run


def _k_range(args, g):
    lo, hi = args.k if args.k else (1, len(g) - 1)
    if not 1 <= lo <= hi <= len(g) - 1:
        raise ValueError("k range %d..%d outside [1, %d]" % (lo, hi, len(g) - 1))
    return list(range(lo, hi + 1))


def _window(args, g):
    return args.degree_window if args.degree_window else (0, g.edge_count())


# -- commands --------------------------------------------------------------------


def cmd_betti(args):
    g = _read_graph(args.graph)
    if args.sink is not None and args.sink != canonical_sink(g):
        if not g.has_vertex(args.sink):
            raise ValueError("unknown sink vertex %r" % args.sink)
        raise ValueError("only the canonical sink %r is supported for "
                         "reports" % canonical_sink(g))
    ks = _k_range(args, g)
    report = coarse_betti(g, ks, _window(args, g),
                          map_tables=_parallel_tables(args.jobs))
    columns = ["reduced", "degree"] + ["beta_%d" % k for k in ks]
    rows = []
    for row in report.rows:
        entry = {"reduced": divisor_to_string(g, row.reduced),
                 "degree": row.deg}
        for k, v in row.betti:
            entry["beta_%d" % k] = v
        rows.append(entry)
    _emit(args.format, columns, rows, report.to_json_dict(g))
    if args.format == "table":
        print("coarse: " + "  ".join("beta_%d=%d" % kv for kv in report.coarse))
    if args.format != "json":
        for warning in report.warnings:
            print("warning: %s" % warning, file=sys.stderr)
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        from .plotting import draw_complex, draw_graph
        draw_graph(g, os.path.join(args.figures, "graph.png"), title="graph")
        for row in report.rows:
            name = "complex_deg%d_%s.png" % (
                row.deg, _slug(divisor_to_string(g, row.reduced)))
            draw_complex(g, complex_of_divisor(g, row.reduced),
                         os.path.join(args.figures, name),
                         title=divisor_to_string(g, row.reduced))
    return EXIT_OK


def cmd_verify_wilmes(args):
    g = _read_graph(args.graph)
    ks = _k_range(args, g)
    report = coarse_betti(g, ks, _window(args, g),
                          map_tables=_parallel_tables(args.jobs))
    rows = []
    for k in ks:
        rhs = 0
        for part in enumerate_connected_partitions(g, k + 1):
            gq = quotient(g, part).multi
            rhs += len(enumerate_maximal_superstables(gq, canonical_sink(gq)))
        lhs = report.coarse_value(k)
        rows.append({"k": k, "lhs": lhs, "rhs": rhs, "match": lhs == rhs})
    json_obj = report.to_json_dict(g)
    json_obj["conjecture"] = rows
    _emit(args.format, ["k", "lhs", "rhs", "match"], rows, json_obj)
    for warning in report.warnings:
        print("warning: %s" % warning, file=sys.stderr)
    if not all(row["match"] for row in rows):
        print("mismatch: coarse Betti numbers differ from partition counts",
              file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_cuts(args):
    g = _read_graph(args.graph)
    rows = []
    for part in sorted(enumerate_connected_partitions(g, 2),
                       key=lambda p: partition_to_string(g, p)):
        (key,) = boundary_divisor_classes(g, part)
        rows.append({"cut": partition_to_string(g, part),
                     "reduced": divisor_to_string(g, key.reduced),
                     "degree": degree(key.reduced),
                     "beta_1": betti_kD(g, key.reduced, 1)})
    _emit(args.format, ["cut", "reduced", "degree", "beta_1"], rows,
          {"cuts": rows})
    return EXIT_OK


def cmd_partitions(args):
    g = _read_graph(args.graph)
    rows = []
    for part in sorted(enumerate_connected_partitions(g, args.parts),
                       key=lambda p: partition_to_string(g, p)):
        classes = (len(boundary_divisor_classes(g, part))
                   if len(part) >= 2 else None)
        rows.append({"partition": partition_to_string(g, part),
                     "blocks": len(part),
                     "classes": classes})
    _emit(args.format, ["partition", "blocks", "classes"], rows,
          {"parts": args.parts, "partitions": rows})
    return EXIT_OK


def cmd_boundary_divisors(args):
    g = _read_graph(args.graph)
    part = parse_partition(g, args.partition)
    q = quotient(g, part)
    s = canonical_source_block(g, part)
    rows = []
    for o in sorted(enumerate_AUS(q, s), key=orientation_to_string):
        D = f_map(g, part, o)
        rows.append({"orientation": orientation_to_string(o),
                     "divisor": divisor_to_string(g, D),
                     "degree": degree(D),
                     "reduced": divisor_to_string(
                         g, q_reduce(g, D, canonical_sink(g)))})
    _emit(args.format, ["orientation", "divisor", "degree", "reduced"], rows,
          {"partition": partition_to_string(g, part),
           "source": s,
           "divisors": rows})
    return EXIT_OK


def cmd_linear_system(args):
    g = _read_graph(args.graph)
    D = parse_divisor(g, args.divisor)
    members = sorted(linear_system(g, D))
    K = complex_of_divisor(g, D)
    rows = [{"member": divisor_to_string(g, m)} for m in members]
    split_entries = []
    for split in sorted(splittings(g, D), key=sorted):
        cut, _ = cut_from_splitting(g, D, split)
        sides = sorted(sorted(divisor_to_string(g, m) for m in side)
                       for side in split)
        split_entries.append({"sides": sides,
                              "cut": partition_to_string(g, cut)})
    json_obj = {"divisor": divisor_to_string(g, D),
                "members": [r["member"] for r in rows],
                "facets": [sorted(g.vertices[i] for i in facet)
                           for facet in sorted(K.facets, key=sorted)],
                "splittings": split_entries}
    _emit(args.format, ["member"], rows, json_obj)
    if args.format != "json":
        for entry in split_entries:
            print("splitting: {%s} | {%s} -> cut %s"
                  % (",".join(entry["sides"][0]), ",".join(entry["sides"][1]),
                     entry["cut"]))
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        from .plotting import draw_complex
        draw_complex(g, K,
                     os.path.join(args.figures,
                                  "complex_%s.png" % _slug(args.divisor)),
                     title=divisor_to_string(g, D))
    return EXIT_OK


def cmd_extension_cycle(args):
    if args.random is not None:
        rng = random.Random(args.seed)
        failures = 0
        for _ in range(args.random):
            k = rng.randint(1, 5)
            exts = sorted((rng.randint(k + 1, 2 * k) for _ in range(k)),
                          reverse=True)
            chain = extension_cycle(ExtensionSpec(k, tuple(exts)))
            if not boundary_of_chain(chain).is_zero:
                failures += 1
        rows = [{"cases": args.random, "failures": failures}]
        _emit(args.format, ["cases", "failures"], rows,
              {"cases": args.random, "failures": failures})
        return EXIT_MISMATCH if failures else EXIT_OK
    if not args.extensions:
        raise ValueError("either --extensions or --random is required")
    values = tuple(int(x) for x in args.extensions.split(","))
    spec = ExtensionSpec(len(values), values)
    chain = extension_cycle(spec)
    is_cycle = boundary_of_chain(chain).is_zero
    layers = {str(layer): [list(f) for f in faces]
              for layer, faces in sorted(cycle_layers(spec).items())}
    json_obj = {"k": spec.k, "extensions": list(values),
                "chain": chain_to_string(chain),
                "boundary_zero": is_cycle, "layers": layers}
    if args.format == "json":
        _emit("json", [], [], json_obj)
    else:
        print("chain: %s" % chain_to_string(chain))
        print("boundary_zero: %s" % is_cycle)
        for layer, faces in sorted(cycle_layers(spec).items()):
            print("layer %d: %s" % (layer, " ".join(str(list(f))
                                                    for f in faces)))
    return EXIT_OK if is_cycle else EXIT_MISMATCH


def cmd_tree_witness(args):
    g = _read_graph(args.graph)
    part = parse_partition(g, args.partition)
    if args.divisor:
        D = parse_divisor(g, args.divisor)
    else:
        q = quotient(g, part)
        s = canonical_source_block(g, part)
        members = enumerate_AUS(q, s)
        if not members:
            raise ValueError("partition quotient has no unique-source "
                             "orientation")
        D = f_map(g, part, min(members, key=orientation_to_string))
    chain = tree_witness_cycle(g, part, D)
    certified = witness_certifies_nonzero_homology(g, D, chain)
    text = chain_to_string(chain, names=g.vertices)
    json_obj = {"partition": partition_to_string(g, part),
                "divisor": divisor_to_string(g, D),
                "chain": text,
                "faces": len(chain),
                "k": len(part) - 1,
                "nonzero_in_homology": certified}
    if args.format == "json":
        _emit("json", [], [], json_obj)
    else:
        print("divisor: %s" % json_obj["divisor"])
        print("chain: %s" % text)
        print("nonzero_in_homology: %s" % certified)
    return EXIT_OK if certified else EXIT_MISMATCH


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WitnessError, CutRecoveryError, LemmaViolation) as exc:
        print("verification failed: %s" % exc, file=sys.stderr)
        return EXIT_MISMATCH
    except (GraphError, NotATreeError, SpecError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
