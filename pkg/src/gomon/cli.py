"""Command line front end: one JSON document per call.

Exit status 0 on success, 1 on domain errors, 2 on parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import catalog
from .classify import (
    LABELS,
    CaseNotCovered,
    HypothesesNotMet,
    TheoremConsistencyFailure,
    boundary_report,
    classification_report,
    k_theory,
    subspace_lattice,
)
from .graph import GraphError, GraphOfMonoids
from .lcm import EMPTY, RecursionDepthExceeded, divides, join
from .oracle import (
    BallBounds,
    BudgetExceeded,
    brute_join,
    enumerate_ball,
    gc_witness_search,
    presentation_check,
)
from .omega import (
    GroupElement,
    act,
    chi_eval,
    classify_character,
    format_character,
    is_maximal_by_definition,
    parse_character,
)
from .specfile import parse_spec, render_spec
from .words import ParseError, WordError, equal, normal_form, parse_word

DOMAIN_ERRORS = (GraphError, WordError, RecursionDepthExceeded, BudgetExceeded,
                 TheoremConsistencyFailure)


class CLIParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIParseError(message)


def dumps(doc) -> str:
    """Deterministic JSON: insertion-ordered keys, no whitespace."""
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def load_graph(args) -> GraphOfMonoids:
    if args.graph:
        graphs = catalog.named()
        if args.graph not in graphs:
            raise CLIParseError(f"unknown catalog graph {args.graph!r}; "
                                f"choose from {', '.join(sorted(graphs))}")
        return graphs[args.graph]
    if not args.spec:
        raise CLIParseError("give a graph with --spec FILE or --graph NAME")
    try:
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CLIParseError(f"cannot read {args.spec}: {exc}") from None
    return parse_spec(text)


def _bounds(args) -> BallBounds:
    return BallBounds(args.bound, args.max_exponent, args.max_denominator, args.cap)


def _word(g, text, inverse=False):
    return parse_word(text, g, allow_inverse=inverse)


def _validated(g: GraphOfMonoids) -> GraphOfMonoids:
    rep = g.validate()
    if not rep.ok:
        raise _Invalid(rep.violations)
    return g


class _Invalid(Exception):
    def __init__(self, violations):
        super().__init__("graph failed validation")
        self.violations = violations


# -- commands -------------------------------------------------------------------

def cmd_validate(g, args):
    rep = g.validate()
    if not rep.ok:
        raise _Invalid(rep.violations)
    return {"valid": True, "lcmWitnesses": rep.lcm_witnesses}


def cmd_render(g, args):
    return {"spec": render_spec(g)}


def cmd_normalize(g, args):
    return {"normalForm": str(normal_form(g, _word(g, args.word, True)))}


def cmd_equal(g, args):
    return {"equal": equal(g, _word(g, args.w1, True), _word(g, args.w2, True))}


def cmd_divides(g, args):
    y = divides(g, _word(g, args.p), _word(g, args.x))
    if y is EMPTY:
        return {"divides": False}
    return {"divides": True, "quotient": str(y)}


def cmd_join(g, args):
    r = join(g, _word(g, args.p), _word(g, args.q))
    if r is EMPTY:
        return {"result": "empty"}
    return {"result": "principal", "generator": str(r)}


def cmd_chi_eval(g, args):
    chi = parse_character(args.character, g)
    return {"character": format_character(chi),
            "value": chi_eval(g, chi, _word(g, args.p), scale=args.scale)}


def cmd_act(g, args):
    chi = parse_character(args.character, g)
    out = act(g, GroupElement(_word(g, args.p), _word(g, args.q)), chi, scale=args.scale)
    if out is None:
        return {"defined": False}
    return {"defined": True, "character": format_character(out)}


def cmd_flags(g, args):
    f = classify_character(g, parse_character(args.character, g))
    return {"in_Omega_infty": f.in_Omega_infty, "in_Omega_max": f.in_Omega_max,
            "in_Omega_b_inf": f.in_Omega_b_inf, "in_Omega_A_inf": f.in_Omega_A_inf}


def cmd_classify(g, args):
    return classification_report(g)


def cmd_ktheory(g, args):
    lat = subspace_lattice(g)
    try:
        node = lat.node(args.node)
    except KeyError:
        raise CaseNotCovered(f"no node {args.node!r} in case {lat.case}") from None
    return {"node": list(node.labels), **k_theory(g, node, lat).as_dict()}


def cmd_boundary(g, args):
    rep = boundary_report(g)
    return {"TF": rep.tf, "N": rep.nuclear, "isUCTKirchberg": rep.is_uct_kirchberg,
            "kTheory": rep.k_theory.as_dict() if rep.k_theory else None, "label": rep.label}


def cmd_oracle(g, args):
    ball = enumerate_ball(g, _bounds(args))
    sub, rest = args.sub, args.args
    head = {"bounds": {"letters": args.bound, "exponent": args.max_exponent},
            "ballSize": len(ball)}
    if sub == "ball":
        return {**head, "elements": [str(x) for x in ball.by_length()]}
    if sub == "brute-join":
        _arity(rest, 2)
        p, q = (normal_form(g, _word(g, x)) for x in rest)
        r = brute_join(p, q, ball)
        fast = join(g, p, q)
        return {**head, "brute": str(r.result) if r.result is not None else None,
                "conclusive": r.conclusive,
                "join": str(fast) if fast is not EMPTY else None}
    if sub == "presentation":
        rep = presentation_check(g, ball)
        return {**head, "ok": rep.ok, "checked": rep.checked,
                "relationFailures": len(rep.relation_failures),
                "unitFailures": len(rep.unit_failures)}
    if sub == "gc":
        _arity(rest, 1)
        r = gc_witness_search(g, _word(g, rest[0], True), ball)
        return {**head, "allPass": r.all_pass,
                "witness": str(r.witness) if r.witness is not None else None}
    if sub == "maximal":
        _arity(rest, 1)
        chi = parse_character(rest[0], g)
        r = is_maximal_by_definition(g, chi, args.bound, args.max_exponent, ball)
        return {**head, "consistent": r.consistent,
                "counterexample": str(r.counterexample) if r.counterexample is not None else None}
    raise CLIParseError(f"unknown oracle subcommand {sub!r}")


def _arity(rest, n):
    if len(rest) != n:
        raise CLIParseError(f"expected {n} argument(s), got {len(rest)}")


COMMANDS = {
    "validate": (cmd_validate, []),
    "render": (cmd_render, []),
    "normalize": (cmd_normalize, ["word"]),
    "equal": (cmd_equal, ["w1", "w2"]),
    "divides": (cmd_divides, ["p", "x"]),
    "join": (cmd_join, ["p", "q"]),
    "chi-eval": (cmd_chi_eval, ["character", "p"]),
    "act": (cmd_act, ["p", "q", "character"]),
    "flags": (cmd_flags, ["character"]),
    "classify": (cmd_classify, []),
    "ktheory": (cmd_ktheory, ["node"]),
    "boundary": (cmd_boundary, []),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gomon", description=__doc__.splitlines()[0])
    # accepted before or after the command name
    common = _Parser(add_help=False)
    for target, default in ((parser, None), (common, argparse.SUPPRESS)):
        target.add_argument("--spec", default=default, help="graph spec file")
        target.add_argument("--graph", default=default,
                            help="named catalog graph instead of a spec file")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, params) in COMMANDS.items():
        sp = subs.add_parser(name, parents=[common])
        for p in params:
            sp.add_argument(p, help="node label: " + ", ".join(LABELS) if p == "node" else None)
        if name in ("chi-eval", "act"):
            sp.add_argument("--scale", type=int, default=1, help="scan bound multiplier")
    op = subs.add_parser("oracle", parents=[common])
    op.add_argument("sub", choices=["ball", "brute-join", "presentation", "gc", "maximal"])
    op.add_argument("args", nargs="*")
    op.add_argument("--bound", type=int, default=3, help="maximum number of letters")
    op.add_argument("--max-exponent", type=int, default=2)
    op.add_argument("--max-denominator", type=int, default=1)
    op.add_argument("--cap", type=int, default=10**6, help="largest ball allowed")
    return parser


def run(argv: Optional[list] = None) -> tuple:
    """(exit status, JSON document)."""
    try:
        args = build_parser().parse_args(argv)
        g = load_graph(args)
        if args.command == "validate":
            return 0, cmd_validate(g, args)
        _validated(g)
        handler = cmd_oracle if args.command == "oracle" else COMMANDS[args.command][0]
        return 0, handler(g, args)
    except (CLIParseError, ParseError) as exc:
        return 2, {"error": "ParseError", "message": str(exc)}
    except _Invalid as exc:
        return 1, {"error": "ValidationError", "violations": exc.violations}
    except HypothesesNotMet as exc:
        return 1, {"error": "HypothesesNotMet", "message": str(exc)}
    except DOMAIN_ERRORS as exc:
        return 1, {"error": type(exc).__name__, "message": str(exc)}


def main(argv: Optional[list] = None) -> int:
    status, doc = run(argv)
    print(dumps(doc))
    return status


if __name__ == "__main__":
    sys.exit(main())
