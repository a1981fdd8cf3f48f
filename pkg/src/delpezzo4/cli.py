"""Command-line front end.

Every command prints a human-readable report by default and a JSON document
with ``--json``.  The exit code is 0 exactly when every requested check passes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import checks
from .galois import (
    GroupAction,
    LinkFlags,
    NotMinimalError,
    classify_surface,
    delta_gset,
    enumerate_links,
    h1_size,
    invariant_rank,
    is_minimal,
    orbits_on_lines,
)
from .involutions import apply_to_line, birational_gb_on_dp4, delta_correspondence, quadric_involutions
from .lattice import DP1, DP2, LatticeTag, basis_vector, enumerate_lines, format_class
from .marking import DP4Marking, MarkingError, construction_StoX, construction_XtoS, dp4_action, parity_type
from .transform import ChainError, chain_compose, load_chain
from .weyl import format_element, generate_subgroup, parse_generators

SCHEMA_VERSION = "1"


class CliError(Exception):
    pass


def _use_colour(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _status(ok: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if _use_colour(sys.stdout):
        return f"\033[{32 if ok else 31}m{word}\033[0m"
    return word


def report(command: str, inputs: dict, outputs: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs, "outputs": outputs}


# -- commands --------------------------------------------------------------------


def cmd_lines(args) -> tuple[dict, bool, list[str]]:
    lines = enumerate_lines(LatticeTag(args.degree))
    out = report("lines", {"degree": args.degree}, {"count": len(lines), "lines": [list(d.coords) for d in lines]})
    text = [f"{len(lines)} lines on the degree {args.degree} del Pezzo surface"]
    text += [f"  {format_class(d)}" for d in lines]
    return out, True, text


def cmd_verify(args) -> tuple[dict, bool, list[str]]:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    results = [checks.SUITES[n]() for n in names]
    ok = all(r.passed for r in results)
    out = report("verify", {"suite": args.suite}, {"passed": ok, "results": [r.to_json() for r in results]})
    text = []
    for r in results:
        extra = ", ".join(f"{k}={v}" for k, v in r.detail.items())
        text.append(f"{_status(r.passed)} {r.name} (checked {r.checked}{', ' + extra if extra else ''})")
        if r.counterexample is not None:
            text.append(f"  counterexample: {json.dumps(r.counterexample)}")
    return out, ok, text


def cmd_galois(args) -> tuple[dict, bool, list[str]]:
    try:
        gens = parse_generators(args.gens)
    except ValueError as exc:
        raise CliError(f"cannot parse generators: {exc}") from None
    group = generate_subgroup(gens, 5)
    ga = GroupAction(group)
    action = dp4_action(DP4Marking.standard())
    orbits = orbits_on_lines(ga, action)
    rank = invariant_rank(ga, action)
    minimal = is_minimal(ga, action)
    delta = delta_gset(ga)
    h1_count = h1_size(ga)
    invariant = classify_surface(ga)
    flags = LinkFlags(args.point, args.deg2, args.deg3)
    link_report, link_error = None, None
    try:
        link_report = enumerate_links(ga, action, flags).to_json()
    except NotMinimalError as exc:
        link_error = f"link enumeration refused: {exc}"
    outputs = {
        "order": len(group),
        "orbit_sizes": sorted((len(o) for o in orbits), reverse=True),
        "invariant_rank": rank,
        "minimal": minimal,
        "delta_orbit_type": list(delta.orbit_type),
        "h1_size": h1_count,
        "class_invariant": invariant.summary(),
        "link_report": link_report,
        "link_error": link_error,
    }
    inputs = {"gens": [format_element(g) for g in gens], "flags": flags.to_json()}
    text = [
        f"group of order {len(group)} generated by {', '.join(map(format_element, gens)) or 'nothing'}",
        f"orbit sizes on lines: {outputs['orbit_sizes']}",
        f"invariant Picard rank: {rank} ({'minimal' if minimal else 'not minimal'})",
        f"Delta orbit type: {list(delta.orbit_type)}",
        f"|H^1(G, N)| = {h1_count}",
    ]
    if link_report is not None:
        text.append(f"verdict: {link_report['verdict']}")
        text += [f"  link {x['type']} -> {x['target_kind']}" for x in link_report["links"]]
    else:
        text.append(link_error)
    return report("galois", inputs, outputs), True, text


def cmd_chain(args) -> tuple[dict, bool, list[str]]:
    try:
        spec = load_chain(args.chain_file)
        result = chain_compose(spec.moves, spec.start, spec.group)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read chain: {exc}") from None
    except (ChainError, MarkingError) as exc:
        raise CliError(str(exc)) from None
    table = [[list(a.coords), list(b.coords)] for a, b in result.bijection.table()]
    marked = [
        {"index": i + 1, "from": list(a.coords), "to": list(result.bijection(a).coords)}
        for i, a in enumerate(spec.start.L)
    ]
    ok = result.equivariant and (result.invariant_before is None or result.invariant_preserved)
    outputs = {
        "steps": list(result.steps),
        "identity": result.bijection.is_identity,
        "final_marking": result.bijection.target.to_json(),
        "marked_lines": marked,
        "bijection": table,
        "equivariant": result.equivariant,
        "invariant_preserved": None if result.invariant_before is None else result.invariant_preserved,
    }
    text = [f"{len(spec.moves)} moves: {' -> '.join(result.steps) or 'none'}"]
    text += [f"  L{m['index']}: {_fmt(m['from'])} -> {_fmt(m['to'])}" for m in marked]
    text.append(f"{_status(result.equivariant)} equivariance under N and the group")
    if result.invariant_before is not None:
        text.append(f"{_status(result.invariant_preserved)} class invariant preserved")
    return report("chain", {"chain_file": str(args.chain_file), "moves": len(spec.moves)}, outputs), ok, text


def cmd_involutions(args) -> tuple[dict, bool, list[str]]:
    action = dp4_action(DP4Marking.standard())
    q = DP4Marking.standard().Q
    invs = [
        {"index": inv.index, "element": format_element(inv.element), "image_of_Q": list(apply_to_line(inv, q, action).coords)}
        for inv in quadric_involutions()
    ]
    corr = sorted((i, list(line.coords)) for line, i in delta_correspondence(q, action).items())
    geiser = birational_gb_on_dp4(2)
    bertini = birational_gb_on_dp4(3)
    outputs = {
        "quadric_involutions": invs,
        "delta_correspondence": [{"index": i, "line": c} for i, c in corr],
        "geiser_e7": list(basis_vector(DP2, 7).apply(geiser.matrix).coords),
        "bertini_e8": list(basis_vector(DP1, 8).apply(bertini.matrix).coords),
        "geiser_line_permutation_identity": geiser.line_permutation == tuple(range(16)),
        "bertini_line_permutation_identity": bertini.line_permutation == tuple(range(16)),
    }
    text = [f"R{x['index']} = {x['element']}: Q -> {_fmt(x['image_of_Q'])}" for x in invs]
    text.append(f"Geiser:  e7 -> {_fmt(outputs['geiser_e7'])}")
    text.append(f"Bertini: e8 -> {_fmt(outputs['bertini_e8'])}")
    return report("involutions", {}, outputs), True, text


def cmd_marking(args) -> tuple[dict, bool, list[str]]:
    if args.marking_file:
        try:
            with open(args.marking_file) as fh:
                m = DP4Marking.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError, MarkingError, ValueError) as exc:
            raise CliError(f"bad marking file: {exc}") from None
    else:
        m = DP4Marking.standard()
    x = construction_StoX(m)
    back = construction_XtoS(x)
    ok = back == m
    outputs = {
        "marking": m.to_json(),
        "conic_bundle_marking": x.to_json(),
        "parity": parity_type(x).value,
        "roundtrip": ok,
    }
    text = [f"Q = {format_class(m.Q)}"]
    text += [f"L{i} = {format_class(d)}" for i, d in enumerate(m.L, start=1)]
    text += [f"E{i} = {format_class(e)}, F{i} = {format_class(f)}" for i, (e, f) in enumerate(x.pairs, start=1)]
    text.append(f"parity: {parity_type(x).value}")
    text.append(f"{_status(ok)} round trip")
    return report("marking", {"marking_file": args.marking_file}, outputs), ok, text


def _fmt(coords) -> str:
    from .lattice import PicClass

    return format_class(PicClass(LatticeTag(10 - len(coords)), tuple(coords)))


# -- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="delpezzo4", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="print a JSON report")
        p.set_defaults(func=func)
        return p

    p = add("lines", cmd_lines, "enumerate lines on a del Pezzo surface")
    p.add_argument("--degree", type=int, required=True, choices=(1, 2, 3, 4))

    p = add("verify", cmd_verify, "run a brute-force verification suite")
    p.add_argument("suite", choices=sorted(checks.SUITES) + ["all"])

    p = add("galois", cmd_galois, "analyse a subgroup of W(D5) acting on the quartic surface")
    p.add_argument("--gens", default="", help='comma-separated elements, e.g. "i1234,(12345)"')
    p.add_argument("--point", action="store_true", help="an invariant point exists")
    p.add_argument("--deg2", action="store_true", help="an invariant point of degree 2 (or pair) exists")
    p.add_argument("--deg3", action="store_true", help="an invariant point of degree 3 (or triple) exists")

    p = add("chain", cmd_chain, "compose a chain of links and certify it")
    p.add_argument("chain_file")

    add("involutions", cmd_involutions, "quadric, Geiser and Bertini involutions")

    p = add("marking", cmd_marking, "show a marking and its conic bundle counterpart")
    p.add_argument("--marking-file", default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, ok, text = args.func(args)
    except CliError as exc:
        print(f"delpezzo4 {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print("\n".join(text))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
