"""Command line front end: ``gt <subcommand> ...``.

Exit status is 0 on success, 1 when the report contains a FAIL line and 2
for usage or input errors.  The last line of every report is
``#summary <json>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import diagram as D
from .errors import GTError
from .morphism import check_norm_inequality, load_morphism, verify_morphism
from .relation import dual, dump_relation, load_relation, min_cover
from .suites import MODEL_SUITES, law_suite, model_suite

SUBCOMMANDS = ("norm", "dual", "verify", "laws", "models", "diagram", "export")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _natural(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a natural number") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} is not a natural number")
    return value


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gt", description="Finite relations, morphisms and cardinal diagrams.")
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)

    s = sub.add_parser("norm", help="exact norm of a relation file")
    s.add_argument("relation")

    s = sub.add_parser("dual", help="write the dual of a relation")
    s.add_argument("relation")
    s.add_argument("--out")

    s = sub.add_parser("verify", help="check a morphism file")
    s.add_argument("morphism")

    s = sub.add_parser("laws", help="seeded norm-law suite")
    s.add_argument("--seed", type=_natural, required=True)
    s.add_argument("--count", type=_natural, default=500)

    s = sub.add_parser("models", help="seeded suite over one truncated model")
    s.add_argument("name", choices=sorted(MODEL_SUITES))
    s.add_argument("--seed", type=_natural, required=True)
    s.add_argument("--n", type=_natural)
    s.add_argument("--t", type=_natural, default=0)
    s.add_argument("--k", type=_natural, default=1)
    s.add_argument("--count", type=_natural, default=100)

    s = sub.add_parser("diagram", help="query the inequality diagram")
    dsub = s.add_subparsers(dest="action", parser_class=_Parser)
    q = dsub.add_parser("query")
    q.add_argument("lo")
    q.add_argument("hi")
    q.add_argument("--graph")

    s = sub.add_parser("export", help="export the diagram")
    s.add_argument("--format", choices=("dot", "json"), required=True)
    s.add_argument("--out")
    s.add_argument("--graph")
    s.add_argument("--morphism-orientation", action="store_true")
    return p


@dataclass(frozen=True)
class Invocation:
    subcommand: str
    flags: dict = field(default_factory=dict)


def parse_invocation(argv) -> Invocation:
    args = vars(_build_parser().parse_args(list(argv)))
    cmd = args.pop("subcommand")
    if cmd is None:
        raise UsageError(f"expected a subcommand: {', '.join(SUBCOMMANDS)}")
    if cmd == "diagram" and args.get("action") is None:
        raise UsageError("diagram expects 'query X Y'")
    return Invocation(cmd, args)


def _summary(data) -> str:
    return "#summary " + json.dumps(data, sort_keys=True)


def _norm(flags):
    rel = load_relation(flags["relation"])
    cover = min_cover(rel, None)
    if cover is None:
        unsolved = [p for p, mask in zip(rel.problems, rel.row_masks) if not mask]
        lines = ["norm: Top", f"unsolvable problem: {unsolved[0]}"]
        value = None
    else:
        lines = [f"norm: {len(cover)}", "cover: " + " ".join(cover)]
        value = len(cover)
    return lines, {"command": "norm", "norm": value,
                   "problems": len(rel.problems), "solutions": len(rel.solutions)}


def _dual(flags):
    rel = dual(load_relation(flags["relation"]))
    if flags.get("out"):
        dump_relation(rel, flags["out"])
        lines = [f"wrote dual ({len(rel.problems)} problems, {len(rel.solutions)} solutions) "
                 f"to {flags['out']}"]
    else:
        lines = [json.dumps(rel.to_json(), indent=2)]
    return lines, {"command": "dual", "problems": len(rel.problems),
                   "solutions": len(rel.solutions)}


def _verify(flags):
    m = load_morphism(flags["morphism"])
    result = verify_morphism(m)
    if not result.holds:
        b, a = result.counterexample
        line = (f"FAIL not a morphism: minus({b})={m.minus[b]} is solved by {a}, "
                f"but plus({a})={m.plus[a]} does not solve {b}")
        return [line], {"command": "verify", "verified": False, "counterexample": [b, a]}
    rep = check_norm_inequality(m)
    lines = [f"verified; ‖A‖={rep.norm_source} ≥ ‖B‖={rep.norm_target}"]
    if not rep.inequality_holds:
        lines.append(f"FAIL norm inequality: {rep.norm_source} < {rep.norm_target}")
    return lines, {"command": "verify", "verified": True,
                   "norm_source": rep.norm_source.to_json(),
                   "norm_target": rep.norm_target.to_json()}


def _laws(flags):
    rep = law_suite(flags["seed"], flags["count"])
    return rep.lines, {"command": "laws", **rep.summary}


def _models(flags):
    rep = model_suite(flags["name"], flags["seed"], flags["n"], flags["t"], flags["k"],
                      flags["count"])
    return rep.lines, {"command": "models", **rep.summary}


def _graph(flags) -> D.Diagram:
    return D.load_diagram(flags["graph"]) if flags.get("graph") else D.builtin_knowledge_base()


def _diagram(flags):
    graph = _graph(flags)
    lo, hi = D.resolve(flags["lo"]), D.resolve(flags["hi"])
    chain = graph.query(lo, hi)
    if chain is None:
        return ([f"Unknown: {lo} <= {hi} is not derivable from the recorded facts"],
                {"command": "diagram", "lo": lo, "hi": hi, "derivable": False})
    lines = [f"{lo} <= {hi} in {len(chain)} step(s):"] + chain.lines("  ")
    return lines, {"command": "diagram", "lo": lo, "hi": hi, "derivable": True,
                   "steps": len(chain)}


def _export(flags):
    graph = _graph(flags)
    text = graph.export(flags["format"], flags["morphism_orientation"])
    summary = {"command": "export", "format": flags["format"],
               "nodes": len(graph.nodes), "edges": len(graph.edges)}
    if flags.get("out"):
        with open(flags["out"], "w") as fh:
            fh.write(text)
        return [f"wrote {flags['format']} export to {flags['out']}"], summary
    return [text.rstrip("\n")], summary


_HANDLERS = {"norm": _norm, "dual": _dual, "verify": _verify, "laws": _laws,
             "models": _models, "diagram": _diagram, "export": _export}


def execute(inv: Invocation) -> tuple[int, str]:
    try:
        lines, summary = _HANDLERS[inv.subcommand](inv.flags)
    except (OSError, json.JSONDecodeError, GTError, ValueError) as exc:
        text = f"error: {exc}\n" + _summary({"command": inv.subcommand, "error": str(exc)})
        return 2, text + "\n"
    code = 1 if any(line.startswith("FAIL") for line in lines) else 0
    summary["exit"] = code
    return code, "\n".join(lines + [_summary(summary)]) + "\n"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        inv = parse_invocation(argv)
    except UsageError as exc:
        sys.stderr.write(f"gt: {exc}\n")
        return 2
    code, text = execute(inv)
    out = sys.stdout if code != 2 else sys.stderr
    out.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
