"""Command-line front end.

Exit status: 0 on success, 1 when a check fails (the witness goes to the
report), 2 on usage errors, malformed input or an exhausted node budget.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .coloring import ColoringError, PartialColoring
from .exact import DEFAULT_NODE_BUDGET, BudgetExceeded, MaxSubgraphCertificate, chromatic_index, max_delta_subgraph, oracle_report
from .generators import FAMILIES, FamilySpec, gen_figure1
from .multigraph import GraphError, Multigraph
from .structure import (
    DeltaTooSmall,
    IterationLimit,
    FAIL,
    NotMaximum,
    NotSimple,
    NotTwoFactor,
    NotVertexDisjoint,
    ProofStepFailed,
    TooLargeForExhaustive,
    assign_disjoint_cycles,
    check_re_equals_rprime,
    explore_conjecture,
    extend_cycles,
    normalize_to_matching,
    random_cycle_system,
    two_factor_cycles,
)
from .verify import BUILTIN, THEOREMS, builtin_corpus, read_corpus, to_jsonl, verify_corpus

log = logging.getLogger("deltacolor")

USAGE_ERRORS = (
    GraphError,
    ColoringError,
    BudgetExceeded,
    NotSimple,
    DeltaTooSmall,
    NotVertexDisjoint,
    NotTwoFactor,
    IterationLimit,
    TooLargeForExhaustive,
    OSError,
    ValueError,
)


def emit_dot(g: Multigraph, c: Optional[PartialColoring] = None) -> str:
    """Graphviz text; colored edges carry their color as label, uncolored ones are dashed."""
    lines = ["graph G {"]
    lines += [f"  {v};" for v in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        if c is None:
            lines.append(f"  {u} -- {v};")
        elif c[e] is None:
            lines.append(f"  {u} -- {v} [style=dashed];")
        else:
            lines.append(f'  {u} -- {v} [label="{c[e]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_graph(path: str) -> Multigraph:
    return Multigraph.from_text(Path(path).read_text())


def _certificate(g: Multigraph, args: argparse.Namespace) -> MaxSubgraphCertificate:
    """The supplied coloring, or an optimal one from the oracle."""
    if getattr(args, "coloring", None):
        c = PartialColoring.from_text(g, Path(args.coloring).read_text())
        if c.t != g.max_degree:
            raise ColoringError(f"coloring uses {c.t} colors, expected Δ = {g.max_degree}")
        if not c.is_proper():
            raise ColoringError("supplied coloring is not proper")
        return MaxSubgraphCertificate(c, optimal=False)
    return max_delta_subgraph(g, args.node_budget)


def _emit_coloring(args: argparse.Namespace, c: PartialColoring) -> None:
    if args.output:
        _write(args.output, c.to_text())
    if args.dot:
        _write(args.dot, emit_dot(c.graph, c))


def _instances(args: argparse.Namespace) -> list[tuple[str, Multigraph]]:
    if args.corpus:
        return read_corpus(Path(args.corpus))
    out: list[tuple[str, Multigraph]] = []
    for which in args.builtin.split(","):
        out += list(builtin_corpus(which))
    return out


def cmd_gen(args: argparse.Namespace) -> int:
    params = {}
    if args.family in ("fat-cycle", "flower"):
        params["k"] = args.k
    elif args.family == "hr-chain":
        params["r"] = args.r
    elif args.family == "random-class2":
        params.update(seed=args.seed, n=args.n, mu_max=args.mu_max)
    spec = FamilySpec(args.family, params)
    g = spec.build()
    _write(args.output, g.to_text([spec.describe()]))
    if args.coloring_output:
        if args.family != "figure1":
            raise ValueError("--coloring-output is only available for figure1")
        _write(args.coloring_output, gen_figure1()[1].to_text())
    return 0


def cmd_color(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    cert = chromatic_index(g, args.node_budget)
    summary = {"chi": cert.chi, "delta": cert.delta, "class": cert.graph_class, "lower_bound": cert.lower_bound_proof}
    _write(args.report, json.dumps(summary, sort_keys=True) + "\n")
    _emit_coloring(args, cert.witness)
    return 0


def cmd_max_subgraph(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    report = oracle_report(g, args.node_budget)
    _write(args.report, json.dumps(report.to_json(), sort_keys=True) + "\n")
    if args.output or args.dot:
        _emit_coloring(args, max_delta_subgraph(g, args.node_budget).coloring)
    return 0


def cmd_assign_cycles(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    assignment = assign_disjoint_cycles(g, _certificate(g, args))
    _write(args.report, json.dumps(assignment.to_json(), sort_keys=True) + "\n")
    return 0


def _read_cycles(text: str) -> list[list[int]]:
    return [[int(tok) for tok in line.split()] for line in text.splitlines() if line.strip() and not line.startswith("c")]


def cmd_extend(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    cert = _certificate(g, args)
    if args.cycles:
        cycles = _read_cycles(Path(args.cycles).read_text())
    elif args.two_factor:
        cycles = two_factor_cycles(g, [int(tok) for tok in args.two_factor.split(",")])
    else:
        cycles = random_cycle_system(g, random.Random(args.seed), args.random_cycles)
    trace: list[str] = []
    out = extend_cycles(g, cycles, cert, trace=trace)
    report = {"size": out.size, "cycles": cycles, "steps": trace}
    _write(args.report, json.dumps(report, sort_keys=True) + "\n")
    _emit_coloring(args, out.coloring)
    return 0


def cmd_normalize(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    out = normalize_to_matching(g, _certificate(g, args))
    report = {"size": out.size, "uncolored": out.uncolored}
    _write(args.report, json.dumps(report, sort_keys=True) + "\n")
    _emit_coloring(args, out.coloring)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    theorems = args.theorems.split(",")
    unknown = sorted(set(theorems) - set(THEOREMS))
    if unknown:
        raise ValueError(f"unknown theorems: {', '.join(unknown)}")
    reports = verify_corpus(_instances(args), theorems, args.node_budget, args.seed, args.jobs)
    _write(args.output, to_jsonl(reports))
    failed = [r for r in reports if not r.passed]
    for r in failed:
        log.error("%s failed on %s", r.theorem, r.instance)
    return 1 if failed else 0


def cmd_explore(args: argparse.Namespace) -> int:
    flagged_dir = Path(args.flagged_dir) if args.flagged_dir else None
    lines = []
    for name, g in sorted(_instances(args), key=lambda item: item[0]):
        cert = max_delta_subgraph(g, args.node_budget)
        rec = explore_conjecture(g, cert, name, args.node_budget)
        deletion = check_re_equals_rprime(g, cert, name, args.node_budget)
        row = rec.to_json()
        row["r_prime"] = deletion.data.get("r_prime")
        row["r_e"] = cert.r_e
        lines.append(json.dumps(row, sort_keys=True) + "\n")
        if not rec.equal or deletion.outcome == FAIL:
            log.warning("flagged %s: k=%d achieved=%d r_e=%d r'_e=%s", name, rec.k, rec.achieved, cert.r_e, row["r_prime"])
            if flagged_dir is not None:
                flagged_dir.mkdir(parents=True, exist_ok=True)
                comment = (
                    f"flagged k={rec.k} achieved={rec.achieved} removed={' '.join(map(str, rec.removed))} "
                    f"r_e={cert.r_e} r_prime={row['r_prime']}"
                )
                (flagged_dir / f"{name}.txt").write_text(g.to_text([comment]))
    _write(args.output, "".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deltacolor", description="Maximum Δ-edge-colorable subgraphs of multigraphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def budget(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET,
                        help=f"search nodes per oracle call (default {DEFAULT_NODE_BUDGET})")

    def coloring_outputs(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("-o", "--output", help="write the resulting coloring here")
        sp.add_argument("--dot", help="write a Graphviz drawing here")
        sp.add_argument("--report", help="JSON summary (default stdout)")

    sp = sub.add_parser("gen", help="generate a family member")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("-k", type=int, default=1)
    sp.add_argument("-r", type=int, default=1)
    sp.add_argument("--n", type=int, default=6)
    sp.add_argument("--mu-max", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.add_argument("--coloring-output", help="figure1 only: its partial coloring")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("color", help="chromatic index with an optimal coloring")
    sp.add_argument("graph")
    coloring_outputs(sp)
    budget(sp)
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("max-subgraph", help="maximum Δ-edge-colorable subgraph and r_e")
    sp.add_argument("graph")
    coloring_outputs(sp)
    budget(sp)
    sp.set_defaults(func=cmd_max_subgraph)

    sp = sub.add_parser("assign-cycles", help="edge-disjoint odd cycles, one per uncolored edge")
    sp.add_argument("graph")
    sp.add_argument("--coloring", help="maximum partial Δ-coloring (default: computed)")
    sp.add_argument("--report")
    budget(sp)
    sp.set_defaults(func=cmd_assign_cycles)

    sp = sub.add_parser("extend", help="recolor so given vertex-disjoint cycles are fully colored")
    sp.add_argument("graph")
    sp.add_argument("--coloring")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--cycles", help="file with one cycle (edge ids) per line")
    src.add_argument("--two-factor", help="comma-separated edge ids of a 2-factor")
    src.add_argument("--random-cycles", type=int, default=3, help="number of random cycles (default 3)")
    sp.add_argument("--seed", type=int, default=0)
    coloring_outputs(sp)
    budget(sp)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("normalize", help="make the uncolored edges of a simple graph a matching")
    sp.add_argument("graph")
    sp.add_argument("--coloring")
    coloring_outputs(sp)
    budget(sp)
    sp.set_defaults(func=cmd_normalize)

    for name, func, text in (
        ("verify", cmd_verify, "check theorems over a corpus (JSONL)"),
        ("explore", cmd_explore, "compare chi'(G - E(H)) with chi' - Δ, and r_e with r'_e, over a corpus"),
    ):
        sp = sub.add_parser(name, help=text)
        where = sp.add_mutually_exclusive_group(required=True)
        where.add_argument("--corpus", help="directory of graph files")
        where.add_argument("--builtin", help=f"comma-separated from {', '.join(BUILTIN)}")
        sp.add_argument("-o", "--output")
        sp.add_argument("--seed", type=int, default=0)
        budget(sp)
        if name == "verify":
            sp.add_argument("--theorems", default=",".join(THEOREMS), help=f"subset of {','.join(THEOREMS)}")
            sp.add_argument("--jobs", type=int, default=1)
        else:
            sp.add_argument("--flagged-dir", help="write graphs with a differing value here")
        sp.set_defaults(func=func)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (NotMaximum, ProofStepFailed) as exc:
        witness: dict[str, Any] = {"reason": str(exc)}
        improved = getattr(exc, "improved", None)
        if improved is not None:
            witness["improved"] = list(improved.colors)
        print(json.dumps({"outcome": "fail", "witness": witness}, sort_keys=True), file=sys.stderr)
        return 1
    except USAGE_ERRORS as exc:
        print(f"deltacolor: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
