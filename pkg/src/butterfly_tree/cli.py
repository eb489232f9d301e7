"""Command-line interface.

Subcommands: expand, node, chain, verify, pyth, apollonian, scaling,
wannier, render.  Words are dot-separated tokens from {CL, CR, UL, UR,
DL, DR, TL, TR}; TL and TR are the chain ("tail") letters, applicable
only when the tail points that way.  Everything is deterministic: the
same flags always produce byte-identical output.

Exit codes: 0 success, 1 domain/invariant failure, 2 usage error, 3 I/O
failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import IO, Iterator, Optional, Sequence

from . import apollonian as apo
from . import scaling as scaling_mod
from . import skeleton as skel
from . import tree as tree_mod
from .errors import ButterflyError
from .pythagoras import primitive_triple_oracle, triple_tree
from .tree import ExpansionLimits


@contextlib.contextmanager
def _out_stream(path: Optional[str]) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fp:
            yield fp


def _limits(args: argparse.Namespace) -> ExpansionLimits:
    return ExpansionLimits(max_depth=args.depth, chain_cap=args.chain_cap,
                           max_qc=args.max_qc)


def _cmd_expand(args: argparse.Namespace) -> int:
    nodes = tree_mod.expand(_limits(args))
    with _out_stream(args.output) as fp:
        if args.format == "csv":
            tree_mod.write_csv(nodes, fp)
        else:
            tree_mod.write_jsonl(nodes, fp)
    return 0


def _cmd_node(args: argparse.Namespace) -> int:
    node = tree_mod.node_at(args.word)
    with _out_stream(args.output) as fp:
        fp.write(json.dumps(tree_mod.node_record(node)) + "\n")
    return 0


def _cmd_chain(args: argparse.Namespace) -> int:
    node = tree_mod.node_at(args.word)
    members = tree_mod.chain(node, args.steps)
    with _out_stream(args.output) as fp:
        tree_mod.write_jsonl(members, fp)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    by_word = {}
    count = 0
    bad = []
    for node in tree_mod.expand(_limits(args)):
        by_word[node.word] = node
        parent = by_word.get(node.word[:-1]) if node.word else None
        report = tree_mod.verify_node(node, parent)
        count += 1
        if not report.ok:
            bad.append(report)
    if bad:
        for report in bad:
            print(f"FAIL {report.word or 'root'}: {'; '.join(report.failures)}",
                  file=sys.stderr)
        print(f"verified {count} nodes: {len(bad)} failed", file=sys.stderr)
        return 1
    print(f"verified {count} nodes: all invariants hold")
    return 0


def _cmd_pyth(args: argparse.Namespace) -> int:
    if args.oracle_cmax is not None:
        want = {t.leg_set for t in primitive_triple_oracle(args.oracle_cmax)}
        got = [triple.leg_set for _, triple in triple_tree(c_max=args.oracle_cmax)]
        ok = set(got) == want and len(got) == len(want)
        print(json.dumps({"cMax": args.oracle_cmax, "treeCount": len(got),
                          "oracleCount": len(want), "match": ok}))
        return 0 if ok else 1
    with _out_stream(args.output) as fp:
        for word, triple in triple_tree(max_depth=args.depth):
            record = {"word": ".".join(str(i) for i in word),
                      "a": triple.a, "b": triple.b, "c": triple.c}
            fp.write(json.dumps(record) + "\n")
    return 0


def _cmd_apollonian(args: argparse.Namespace) -> int:
    if args.correspondence:
        report = {}
        for step in ("h1", "h2", "h3", "U_L", "U_R"):
            found = apo.correspondence_search(step)
            report[step] = {
                "pairsTested": found.pairs_tested,
                "matches": [{"word": ".".join(f"S{i}" for i in word),
                             "permutation": list(perm)}
                            for word, perm in found.matches],
            }
        print(json.dumps(report, indent=2))
        return 0
    if args.quad is None or args.word is None:
        print("apollonian needs either --correspondence or both --quad and --word",
              file=sys.stderr)
        return 2
    parts = [int(k) for k in args.quad.split(",")]
    if len(parts) != 4:
        print("--quad needs exactly four comma-separated integers",
              file=sys.stderr)
        return 2
    quad = apo.DescartesQuadruple(*parts)
    current = quad
    for token in args.word.split("."):
        token = token.strip().upper()
        if token.startswith("A"):
            current = apo.apply_matrix(apo.adjoint_S(int(token[1:])), current)
        elif token.startswith("S"):
            current = apo.apply_S(int(token[1:]), current)
        else:
            print(f"bad Apollonian token {token!r} (use S1..S4 or A1..A4)",
                  file=sys.stderr)
            return 2
    print(json.dumps({"input": list(quad.as_tuple()), "word": args.word,
                      "result": list(current.as_tuple())}))
    return 0


def _cmd_scaling(args: argparse.Namespace) -> int:
    word = tree_mod.parse_word(args.word)
    block = scaling_mod.word_block(word)
    surd = scaling_mod.scaling_exponent(word)
    cf = scaling_mod.cf_expansion(surd, args.cf_terms)
    print(json.dumps({
        "word": tree_mod.word_string(word),
        "trace": block[0][0] + block[1][1],
        "surd": {"trace": surd.trace, "discriminant": surd.discriminant},
        "value": surd.value,
        "continuedFraction": {"preperiod": list(cf.preperiod),
                              "period": list(cf.period),
                              "terms": list(cf.terms)},
    }))
    return 0


def _cmd_wannier(args: argparse.Namespace) -> int:
    with _out_stream(args.output) as fp:
        for line in skel.wannier_lines(args.qmax):
            fp.write(json.dumps({"sigma": line.sigma, "tau": line.tau,
                                 "p": line.flux.numerator,
                                 "q": line.flux.denominator,
                                 "r": line.r}) + "\n")
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    palette = tuple(args.palette.split(",")) if args.palette else skel.DEFAULT_PALETTE
    options = skel.RenderOptions(width=args.width, height=args.height,
                                 margin=args.margin, palette=palette,
                                 chain_preview=args.chain_preview)
    document = skel.render_svg(tree_mod.expand(_limits(args)), options)
    with _out_stream(args.output) as fp:
        fp.write(document)
    return 0


def _add_limit_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--depth", type=int, required=True,
                     help="maximum word length (root is depth 0)")
    sub.add_argument("--chain-cap", type=int, default=0, dest="chain_cap",
                     help="chain members materialized per tail (default 0)")
    sub.add_argument("--max-qc", type=int, default=None, dest="max_qc",
                     help="optional cap on center denominators")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="butterfly-tree",
        description="Exact octonary tree of butterflies with tails: "
                    "expansion, labeling, verification, correspondences, "
                    "scaling exponents, and skeleton rendering.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="stream the tree as JSONL or CSV")
    _add_limit_flags(p)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("node", help="show the node at a word")
    p.add_argument("--word", required=True,
                   help="dot-separated letters CL,CR,UL,UR,DL,DR,TL,TR "
                        "(TL/TR are the chain letters); empty for the root")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_node)

    p = sub.add_parser("chain", help="walk a node's tail")
    p.add_argument("--word", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("verify", help="run every invariant over an expansion")
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("pyth", help="Pythagorean triple tree / oracle check")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--oracle-cmax", type=int, default=None, dest="oracle_cmax",
                   help="compare the tree against brute force up to this c")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_pyth)

    p = sub.add_parser("apollonian", help="apply S-words or search correspondences")
    p.add_argument("--quad", default=None,
                   help="four curvatures; write --quad=-1,2,2,3 when the "
                        "first one is negative")
    p.add_argument("--word", default=None, help="dot-separated S1..S4 or A1..A4")
    p.add_argument("--correspondence", action="store_true",
                   help="search S-word realizations of h1,h2,h3,U_L,U_R")
    p.set_defaults(func=_cmd_apollonian)

    p = sub.add_parser("scaling", help="exact scaling exponent of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--cf-terms", type=int, default=12, dest="cf_terms")
    p.set_defaults(func=_cmd_scaling)

    p = sub.add_parser("wannier", help="gap lines for all fluxes up to qmax")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_wannier)

    p = sub.add_parser("render", help="deterministic SVG skeleton")
    _add_limit_flags(p)
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=800)
    p.add_argument("--margin", type=int, default=40)
    p.add_argument("--palette", default=None,
                   help="eight comma-separated colors, generator order "
                        "CL,CR,UL,UR,DL,DR,TL,TR")
    p.add_argument("--chain-preview", type=int, default=4, dest="chain_preview")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ButterflyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
