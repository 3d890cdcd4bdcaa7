"""Command-line front end.

Subcommands: recognize, nesting, represent, layers, encode, decode, tree,
oracle, gen, reduce3p.  Input is an edge-list document on stdin or a file
argument.  Exit codes: 0 success ("yes" for recognize), 1 recognize "no",
2 parse errors, 3 not an interval graph, 4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import hardness, mpqtree, nesting, oracle, representation
from .errors import (CapExceededError, IntervalNestError, MalformedCodeError,
                     NotIntervalError, ParseError)
from .graph import format_graph, parse_graph, random_interval_graph

EXIT_OK = 0
EXIT_NO = 1
EXIT_PARSE = 2
EXIT_NOT_INTERVAL = 3
EXIT_CAP = 4


def _read_text(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_bytes(data, path):
    if path is None:
        sys.stdout.buffer.write(data)
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def build_parser():
    ap = argparse.ArgumentParser(prog="intervalnest",
                                 description="minimum nesting of interval graphs")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text, with_input=True):
        p = sub.add_parser(name, help=help_text)
        if with_input:
            p.add_argument("input", nargs="?", default=None,
                           help="edge-list file (default stdin)")
        p.add_argument("--output", default=None, help="output file (default stdout)")
        p.add_argument("--jobs", type=int, default=1,
                       help="reserved; results never depend on it")
        return p

    p = add("recognize", "is the graph interval with nesting at most k")
    p.add_argument("--k", type=int, required=True)
    p = add("nesting", "print the minimum nesting 'nu=<k>'")
    p.add_argument("--triples", action="store_true",
                   help="also print the per-node triple table as TSV")
    add("represent", "write a minimal representation, one 'v l r' line per vertex")
    add("layers", "write the proper-layer label of every vertex")
    add("encode", "write the compact bit code of a minimal representation")
    p = add("decode", "rebuild an edge list from a bit code file")
    p.add_argument("--representation", default=None,
                   help="also write the decoded intervals to this path")
    add("tree", "dump the clique tree with sections")
    p = add("oracle", "brute-force nesting and triple of a small graph")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p = add("gen", "sample a random interval graph", with_input=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--spread", default="2")
    p.add_argument("--representation", default=None,
                   help="also write the generating intervals to this path")
    p = add("reduce3p", "build the two-length extension gadget from 's M / A_1..A_3s'")
    p.add_argument("--predrawn", default=None,
                   help="write the pre-drawn sidecar ('v l r len' lines) here")
    p.add_argument("--free-lengths", action="store_true",
                   help="emit the guarded variant that forces the long length "
                        "without prescribing it")
    return ap


def _cmd_recognize(args):
    g = parse_graph(_read_text(args.input))
    ok = nesting.recognize_k_nested(g, args.k)
    _write_output("yes\n" if ok else "no\n", args.output)
    return EXIT_OK if ok else EXIT_NO


def _cmd_nesting(args):
    g = parse_graph(_read_text(args.input))
    nu, ann = nesting.min_nesting(g)
    lines = [f"nu={nu}"]
    if args.triples and ann.tree.root >= 0:
        for nid in range(len(ann.tree.nodes)):
            t = ann.triple_of[nid]
            kind = ann.tree.nodes[nid].kind
            lines.append(f"{nid}\t{kind}\t{t.alpha}\t{t.beta}\t{t.gamma}")
    _write_output("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _cmd_represent(args):
    g = parse_graph(_read_text(args.input))
    nu, ann = nesting.min_nesting(g)
    rep = nesting.build_minimal_representation(g, ann)
    _write_output(representation.dump_representation(rep), args.output)
    return EXIT_OK


def _cmd_layers(args):
    g = parse_graph(_read_text(args.input))
    nu, ann = nesting.min_nesting(g)
    rep = nesting.build_minimal_representation(g, ann)
    labeling = representation.proper_layers(rep)
    lines = [f"{v} {labeling.label[v]}" for v in sorted(labeling.label)]
    _write_output("\n".join(lines) + ("\n" if lines else ""), args.output)
    return EXIT_OK


def _cmd_encode(args):
    g = parse_graph(_read_text(args.input))
    nu, ann = nesting.min_nesting(g)
    rep = nesting.build_minimal_representation(g, ann)
    code = representation.encode(rep)
    _write_bytes(representation.write_code(code), args.output)
    return EXIT_OK


def _cmd_decode(args):
    if args.input is None or args.input == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(args.input, "rb") as fh:
            data = fh.read()
    code = representation.read_code(data)
    g, rep = representation.decode(code)
    _write_output(format_graph(g), args.output)
    if args.representation:
        _write_output(representation.dump_representation(rep), args.representation)
    return EXIT_OK


def _cmd_tree(args):
    g = parse_graph(_read_text(args.input))
    nu, ann = nesting.min_nesting(g)
    _write_output(mpqtree.dump_tree(ann.tree), args.output)
    return EXIT_OK


def _cmd_oracle(args):
    g = parse_graph(_read_text(args.input))
    nu = oracle.brute_nesting(g, cap=args.cap)
    triple = oracle.brute_triple(g, cap=args.cap)
    _write_output(f"nu={nu} triple=({triple.alpha},{triple.beta},{triple.gamma})\n",
                  args.output)
    return EXIT_OK


def _cmd_gen(args):
    from fractions import Fraction

    g, rep = random_interval_graph(args.n, args.seed, Fraction(args.spread))
    _write_output(format_graph(g), args.output)
    if args.representation:
        _write_output(representation.dump_representation(rep), args.representation)
    return EXIT_OK


def _cmd_reduce3p(args):
    text = _read_text(args.input)
    tokens = text.split()
    if len(tokens) < 2:
        raise ParseError("expected 's M' followed by 3s integers", line=1)
    try:
        s, m = int(tokens[0]), int(tokens[1])
        a = [int(x) for x in tokens[2:]]
    except ValueError:
        raise ParseError("all fields must be integers", line=1) from None
    try:
        inst = hardness.ThreePartitionInstance(s=s, M=m, A=a)
    except ValueError as exc:
        raise ParseError(str(exc), line=1) from None
    hi = hardness.reduce_3partition(inst, extended=args.free_lengths)
    _write_output(format_graph(hi.graph), args.output)
    if args.predrawn:
        _write_output(hardness.format_predrawn(hi), args.predrawn)
    return EXIT_OK


_COMMANDS = {
    "recognize": _cmd_recognize,
    "nesting": _cmd_nesting,
    "represent": _cmd_represent,
    "layers": _cmd_layers,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "tree": _cmd_tree,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
    "reduce3p": _cmd_reduce3p,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, MalformedCodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotIntervalError as exc:
        print(f"not an interval graph: {exc}", file=sys.stderr)
        return EXIT_NOT_INTERVAL
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except IntervalNestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
