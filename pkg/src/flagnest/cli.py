"""Command-line front end.

Five verbs: classify one nesting query, enumerate a rank range, explain a
presentation, verify a construction with seeded random trials, and self-check
(the full acceptance battery).  Output goes to stdout or --out as text or
JSON; identical argv always produces identical bytes.

Exit codes: 0 success, 1 a verification or self-check found a failure,
2 unsupported mathematical input, 64 argv did not parse.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Optional, Tuple

from . import WIRE_SCHEMA, __version__
from .acceptance import run_all
from .classifier import NestingQuery, classify, enumerate_nestings
from .cohomology import degree_ledger, presentation
from .constructions import section_trials
from .dynkin import parse_diagram, parse_marked
from .errors import UnsupportedInputError


class _Parser(argparse.ArgumentParser):
    """argparse with the conventional 64 for usage errors instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _node_list(text: str) -> Tuple[int, ...]:
    try:
        nodes = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated node numbers, got {text!r}"
        )
    return nodes


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    p.add_argument("--out", metavar="FILE", default=None, help="write output to FILE")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="flagnest",
        description="classify nestings of rational homogeneous varieties",
    )
    parser.add_argument(
        "--version", action="version", version=f"flagnest {__version__}"
    )
    sub = parser.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("classify", help="decide a single nesting query")
    p.add_argument("--diagram", required=True, help='diagram, e.g. "D5"')
    p.add_argument(
        "--marked",
        required=True,
        type=_node_list,
        help="marks kept downstairs, comma-separated",
    )
    p.add_argument(
        "--unmark",
        required=True,
        type=_node_list,
        help="marks the projection forgets, comma-separated",
    )
    p.add_argument(
        "--trace",
        action="store_true",
        help="show anchors and data for every trace step (text format)",
    )
    _add_output_flags(p)

    p = sub.add_parser("enumerate", help="classify every query up to a rank bound")
    p.add_argument("--max-rank", required=True, type=int, help="largest rank to scan")
    p.add_argument(
        "--mode",
        choices=("singletons", "all-subsets"),
        default="singletons",
        help="single marks only, or every small mark pair",
    )
    _add_output_flags(p)

    p = sub.add_parser("explain", help="print a cohomology presentation")
    p.add_argument("variety", help='marked diagram, e.g. "B3(3)" or "D5(1,3)"')
    _add_output_flags(p)

    p = sub.add_parser(
        "verify-construction", help="run seeded random trials of one construction"
    )
    p.add_argument("kind", choices=("A", "B3", "D"), help="which construction")
    p.add_argument("--n", type=int, default=None, help="rank (fixed at 3 for B3)")
    p.add_argument("--trials", type=int, default=100, help="number of random trials")
    p.add_argument("--seed", type=int, default=7, help="random seed")
    _add_output_flags(p)

    p = sub.add_parser("self-check", help="run the acceptance battery")
    _add_output_flags(p)

    return parser


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _marked_str(diagram_name: str, nodes: Iterable[int]) -> str:
    return f"{diagram_name}({','.join(str(n) for n in sorted(set(nodes)))})"


def _cmd_classify(ns) -> Tuple[int, str]:
    d = parse_diagram(ns.diagram)
    query = NestingQuery(d, frozenset(ns.marked), frozenset(ns.unmark))
    decision = classify(query)
    if ns.format == "json":
        doc = {"schema": WIRE_SCHEMA}
        doc.update(decision.to_json())
        return 0, _dump(doc)
    name = str(d)
    lines = [
        f"{_marked_str(name, set(ns.marked) | set(ns.unmark))}"
        f" -> {_marked_str(name, ns.marked)}: {decision.result}"
    ]
    lines.append("trace:")
    for idx, step in enumerate(decision.trace, 1):
        if ns.trace:
            data = json.dumps(step.to_json()["data"], sort_keys=True)
            lines.append(f"  {idx}. {step.rule} [{step.anchor}] {data}")
        else:
            lines.append(f"  {idx}. {step.rule}")
    return 0, "\n".join(lines) + "\n"


def _cmd_enumerate(ns) -> Tuple[int, str]:
    report = enumerate_nestings(ns.max_rank, ns.mode)
    if ns.format == "json":
        doc = {"schema": WIRE_SCHEMA}
        doc.update(report)
        return 0, _dump(doc)
    lines = [
        f"classified {report['classified']} classes up to rank"
        f" {report['max_rank']} ({report['mode']})",
        f"exists {report['counts']['exists']},"
        f" not_exists {report['counts']['not_exists']}",
    ]
    for row in report["exists"]:
        total = _marked_str(row["diagram"], list(row["I"]) + list(row["J"]))
        base = _marked_str(row["diagram"], row["I"])
        lines.append(f"  {total} -> {base}")
    return 0, "\n".join(lines) + "\n"


def _cmd_explain(ns) -> Tuple[int, str]:
    v = parse_marked(ns.variety)
    p = presentation(v)
    ledger = degree_ledger(p)
    if ns.format == "json":
        doc = {
            "schema": WIRE_SCHEMA,
            "presentation": p.to_json(),
            "degree_ledger": ledger,
        }
        return 0, _dump(doc)
    lines = [str(v)]
    lines.append("generators:")
    for name, degree in p.generators:
        lines.append(f"  {name} (degree {degree})")
    lines.append("relations:")
    for rel in p.relations:
        lines.append(f"  degree {rel.homogeneous_degree()}: {rel}")
    lines.append(
        "reduced degrees:"
        f" generators {ledger['generator_degrees']},"
        f" relations {ledger['relation_degrees']}"
    )
    return 0, "\n".join(lines) + "\n"


def _cmd_verify(ns) -> Tuple[int, str]:
    n = ns.n
    if ns.kind == "B3":
        if n is None:
            n = 3
        elif n != 3:
            raise UnsupportedInputError("the B3 construction has rank 3 only")
    report = section_trials(ns.kind, n, ns.trials, ns.seed)
    if ns.format == "json":
        doc = {
            "schema": WIRE_SCHEMA,
            "kind": ns.kind,
            "n": n,
            "trials": report.trials,
            "seed": ns.seed,
            "passed": report.ok,
            "failure": report.failure,
        }
        return (0 if report.ok else 1), _dump(doc)
    if report.ok:
        return 0, "pass\n"
    witness = json.dumps(report.failure, sort_keys=True)
    return 1, f"fail\n{witness}\n"


def _cmd_self_check(ns) -> Tuple[int, str]:
    results = run_all()
    ok = all(r.passed for r in results)
    if ns.format == "json":
        doc = {
            "schema": WIRE_SCHEMA,
            "checks": [{"name": r.name, "passed": r.passed} for r in results],
            "passed": ok,
        }
        return (0 if ok else 1), _dump(doc)
    lines = [f"{r.name}: {'pass' if r.passed else 'fail'}" for r in results]
    return (0 if ok else 1), "\n".join(lines) + "\n"


_HANDLERS = {
    "classify": _cmd_classify,
    "enumerate": _cmd_enumerate,
    "explain": _cmd_explain,
    "verify-construction": _cmd_verify,
    "self-check": _cmd_self_check,
}


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.verb == "verify-construction" and ns.kind != "B3" and ns.n is None:
            parser.error(f"--n is required for kind {ns.kind}")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = _HANDLERS[ns.verb](ns)
    except UnsupportedInputError as exc:
        print(f"flagnest: unsupported input: {exc}", file=sys.stderr)
        return 2
    _emit(text, ns.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
