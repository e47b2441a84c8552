"""Command-line front end.

Subcommands: translate, compose, analyze, check, export-dot.  Every command
writes machine-readable JSON (or DOT text) to stdout or the ``-o`` path;
human diagnostics go to stderr only.

Exit codes: 0 success, 2 parse or usage error, 3 validation error, 4 rule
rejected the composition, 5 bad query.

Interfaces are named on the command line as ``entity.R`` / ``entity.W``
(explicit) or ``agent#label`` (implicit), matching the DOT node labels.
"""

from __future__ import annotations

import argparse
import functools
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from . import analyze, compose, rules, serialize
from .errors import SchemaError, UnknownInterfaceError, ValidationError
from .model import (
    CommonRepresentation,
    Explicit,
    Flow,
    Implicit,
    InterfaceId,
    Mode,
    availability_graph,
    connected_components,
    flow_key,
    grant,
    reachable,
    validate,
)
from .policies import RbacSemantics, policy_from_dict, policy_to_cr


class QueryError(ValueError):
    """A query token is not a well-formed interface name."""


@dataclass
class Report:
    """Envelope for a command's machine-readable output."""

    command: str
    inputs: list[str]
    outcome: dict[str, Any]
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outcome": self.outcome,
            "diagnostics": self.diagnostics,
        }


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc


def _load_cr(path: str) -> CommonRepresentation:
    cr = serialize.cr_from_dict(_read_json(path))
    problems = validate(cr)
    if problems:
        raise ValidationError(f"{path}: " + "; ".join(problems))
    return cr


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _emit_report(report: Report, output: Optional[str]) -> None:
    _emit(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n", output)


def _flow_list(flows: frozenset[Flow]) -> list[dict[str, Any]]:
    return [serialize.flow_to_dict(f) for f in sorted(flows, key=flow_key)]


def parse_interface_token(token: str) -> InterfaceId:
    """Parse ``entity.R``, ``entity.W`` or ``agent#label``."""
    if "#" in token:
        agent, _, label = token.partition("#")
        if agent and label:
            return Implicit(agent, label)
    elif token.endswith((".R", ".W")) and token[:-2]:
        return Explicit(token[:-2], Mode(token[-1]))
    raise QueryError(
        f"bad interface token {token!r}: expected entity.R, entity.W or agent#label"
    )


def _cmd_translate(args: argparse.Namespace) -> int:
    policy = policy_from_dict(_read_json(args.policy))
    cr = policy_to_cr(policy, RbacSemantics(args.rbac_semantics))
    _emit(serialize.dumps(cr), args.output)
    return 0


def _cmd_compose(args: argparse.Namespace) -> int:
    if len(args.crs) < 2:
        _err("compose needs at least two graph files")
        return 2
    if args.op == "rule" and not args.rule_file:
        _err("compose rule needs --rule RULE_FILE")
        return 2
    crs = [_load_cr(path) for path in args.crs]

    if args.op == "merge":
        _emit(serialize.dumps(compose.merge_all(crs)), args.output)
        return 0
    if args.op == "append":
        _emit(serialize.dumps(compose.append_all(crs)), args.output)
        return 0
    if args.op == "append-strict":
        _emit(serialize.dumps(functools.reduce(compose.append_strict, crs)), args.output)
        return 0

    rule = rules.rule_from_dict(_read_json(args.rule_file))
    decisions = []
    rejected = False
    acc = crs[0]
    for nxt in crs[1:]:
        decision = rules.apply_rule(rule, acc, nxt)
        decisions.append(
            {
                "action": decision.action_taken.value,
                "evidence": _flow_list(decision.evidence),
            }
        )
        if decision.result is None:
            rejected = True
            break
        acc = decision.result
    report = Report(
        command="compose",
        inputs=list(args.crs) + [args.rule_file],
        outcome={
            "op": "rule",
            "decisions": decisions,
            "rejected": rejected,
            "result": None if rejected else serialize.cr_to_dict(acc),
        },
    )
    # The decision report always goes to stdout; -o receives the graph.
    _emit_report(report, None)
    if rejected:
        return 4
    if args.output is not None:
        _emit(serialize.dumps(acc), args.output)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    a = _load_cr(args.a)
    b = _load_cr(args.b)
    report = Report(
        command="analyze",
        inputs=[args.a, args.b],
        outcome={
            "conflicting": analyze.conflicting(a, b),
            "conflicts": _flow_list(analyze.conflicts(a, b)),
            "common_flows": _flow_list(analyze.common_flows(a, b)),
            "diffs": _flow_list(analyze.diffs(a, b)),
        },
    )
    _emit_report(report, args.output)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    cr = _load_cr(args.cr)
    results: list[dict[str, Any]] = []
    for src_tok, dst_tok in args.grant or []:
        outcome = grant(parse_interface_token(src_tok), parse_interface_token(dst_tok), cr)
        results.append(
            {"query": "grant", "from": src_tok, "to": dst_tok, "result": outcome.value}
        )
    for src_tok, dst_tok in args.reachable or []:
        found = reachable(cr, parse_interface_token(src_tok), parse_interface_token(dst_tok))
        results.append(
            {"query": "reachable", "from": src_tok, "to": dst_tok, "result": found}
        )
    if args.lively:
        components = connected_components(availability_graph(cr))
        results.append(
            {
                "query": "lively",
                "result": len(components) == 1,
                "components": len(components),
            }
        )
    report = Report(command="check", inputs=[args.cr], outcome={"results": results})
    _emit_report(report, args.output)
    return 0


def _cmd_export_dot(args: argparse.Namespace) -> int:
    _emit(serialize.to_dot(_load_cr(args.cr)), args.output)
    return 0


def _add_output(parser: argparse.ArgumentParser, what: str) -> None:
    parser.add_argument("-o", "--output", metavar="PATH", help=f"write {what} here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infoflow",
        description="Translate, compose, analyze and query information-flow graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    translate = sub.add_parser("translate", help="translate a policy file into a flow graph")
    translate.add_argument("policy", help="policy JSON file (kind: acl, capabilities, lbac, rbac)")
    translate.add_argument(
        "--rbac-semantics",
        choices=[s.value for s in RbacSemantics],
        default=RbacSemantics.LITERAL.value,
        help="flow derivation for role policies (default: literal)",
    )
    _add_output(translate, "the graph")
    translate.set_defaults(handler=_cmd_translate)

    composec = sub.add_parser("compose", help="fold two or more graphs left to right")
    composec.add_argument("op", choices=["merge", "append", "append-strict", "rule"])
    composec.add_argument("crs", nargs="+", metavar="CR", help="graph JSON files, in order")
    composec.add_argument("--rule", dest="rule_file", metavar="RULE",
                          help="rule JSON file (required for the rule op)")
    _add_output(composec, "the composed graph (rule op: report stays on stdout)")
    composec.set_defaults(handler=_cmd_compose)

    analyzec = sub.add_parser("analyze", help="conflict and difference report for two graphs")
    analyzec.add_argument("a", metavar="A")
    analyzec.add_argument("b", metavar="B")
    _add_output(analyzec, "the report")
    analyzec.set_defaults(handler=_cmd_analyze)

    check = sub.add_parser("check", help="run grant/reachability/liveliness queries")
    check.add_argument("cr", metavar="CR")
    check.add_argument("--grant", nargs=2, action="append", metavar=("FROM", "TO"),
                       help="tri-state access check")
    check.add_argument("--reachable", nargs=2, action="append", metavar=("FROM", "TO"),
                       help="directed-walk existence check")
    check.add_argument("--lively", action="store_true",
                       help="report whether the availability graph is one component")
    _add_output(check, "the report")
    check.set_defaults(handler=_cmd_check)

    export = sub.add_parser("export-dot", help="render a graph as DOT text")
    export.add_argument("cr", metavar="CR")
    _add_output(export, "the DOT text")
    export.set_defaults(handler=_cmd_export_dot)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except SchemaError as exc:
        _err(str(exc))
        return 2
    except ValidationError as exc:
        _err(str(exc))
        return 3
    except (QueryError, UnknownInterfaceError) as exc:
        _err(str(exc))
        return 5
    except OSError as exc:
        _err(str(exc))
        return 2


def entry() -> None:
    raise SystemExit(main(sys.argv[1:]))
