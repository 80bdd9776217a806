"""Corpus-wide theorem checking shared by the CLI and the test suite."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .coloring import ColoringError
from .corpus import connected_multigraphs, connected_simple_graphs
from .exact import DEFAULT_NODE_BUDGET, max_delta_subgraph
from .generators import gen_fat_cycle, gen_figure1, gen_flower, gen_hr_chain, petersen
from .multigraph import Multigraph
from .structure import (
    FAIL,
    VACUOUS,
    NotMaximum,
    ProofStepFailed,
    VerificationReport,
    check_assignment,
    check_class_one,
    check_corollary_bounds,
    check_cut_condition,
    check_cycle_intersection_lemma,
    check_extension,
    check_matching_complement,
    check_ratio_bound,
    check_re_equals_rprime,
    random_cycle_system,
)

THEOREMS = (
    "cut",
    "ratio",
    "class1",
    "matching",
    "assignment",
    "cycle_intersection",
    "extension",
    "corollary",
    "re_rprime",
)
SIMPLE_ONLY = {"class1", "matching", "re_rprime"}
BUILTIN = ("simple", "multi", "families")


def family_instances() -> list[tuple[str, Multigraph]]:
    """Named instances and family members small enough for the exact oracles."""
    return [
        ("petersen", petersen()),
        ("fat-cycle-k1", gen_fat_cycle(1)),
        ("fat-cycle-k2", gen_fat_cycle(2)),
        ("hr-chain-r1", gen_hr_chain(1)),
        ("flower-k2", gen_flower(2)),
        ("flower-k3", gen_flower(3)),
        ("figure1", gen_figure1()[0]),
    ]


def builtin_corpus(which: str) -> Iterator[tuple[str, Multigraph]]:
    if which == "simple":
        return connected_simple_graphs()
    if which == "multi":
        return connected_multigraphs()
    if which == "families":
        return iter(family_instances())
    raise ValueError(f"unknown corpus {which!r}")


def read_corpus(directory: Path) -> list[tuple[str, Multigraph]]:
    files = sorted(p for p in directory.iterdir() if p.is_file() and p.suffix in (".txt", ".graph"))
    return [(p.stem, Multigraph.from_text(p.read_text())) for p in files]


def cycle_rng(seed: int, instance: str) -> random.Random:
    return random.Random(f"{seed}:{instance}")


def _guarded(theorem: str, instance: str, run) -> VerificationReport:
    try:
        return run()
    except NotMaximum as exc:
        improved = list(exc.improved.colors) if exc.improved is not None else None
        return VerificationReport(theorem, instance, FAIL, {"reason": str(exc), "improved": improved})
    except (ProofStepFailed, ColoringError) as exc:
        return VerificationReport(theorem, instance, FAIL, {"reason": str(exc)})


def verify_instance(
    name: str,
    g: Multigraph,
    theorems: Sequence[str],
    node_budget: int = DEFAULT_NODE_BUDGET,
    seed: int = 0,
) -> list[VerificationReport]:
    """One report per theorem; BudgetExceeded propagates to the caller."""
    cert = max_delta_subgraph(g, node_budget)
    simple = g.is_simple()
    out = []
    for th in theorems:
        if th not in THEOREMS:
            raise ValueError(f"unknown theorem {th!r}")
        if th in SIMPLE_ONLY and not simple:
            out.append(VerificationReport(th, name, VACUOUS, None, {"reason": "multigraph"}))
            continue
        if th == "cut":
            mode = "exhaustive" if g.n <= 16 else "sampled"
            run = lambda: check_cut_condition(g, cert, mode=mode, seed=seed, instance=name)
        elif th == "ratio":
            run = lambda: check_ratio_bound(g, cert, name)
        elif th == "class1":
            run = lambda: check_class_one(g, cert, name, node_budget)
        elif th == "matching":
            run = lambda: check_matching_complement(g, cert, name)
        elif th == "assignment":
            run = lambda: check_assignment(g, cert, name)
        elif th == "cycle_intersection":
            run = lambda: check_cycle_intersection_lemma(g, cert, name)
        elif th == "extension":
            cycles = random_cycle_system(g, cycle_rng(seed, name)) if g.max_degree >= 3 else []
            run = lambda: check_extension(g, cert, cycles, name)
        elif th == "corollary":
            run = lambda: check_corollary_bounds(g, cert, name, node_budget=node_budget)
        else:
            run = lambda: check_re_equals_rprime(g, cert, name, node_budget)
        out.append(_guarded(th, name, run))
    return out


def _job(args) -> list[VerificationReport]:
    return verify_instance(*args)


def verify_corpus(
    instances: Iterable[tuple[str, Multigraph]],
    theorems: Sequence[str],
    node_budget: int = DEFAULT_NODE_BUDGET,
    seed: int = 0,
    jobs: int = 1,
) -> list[VerificationReport]:
    """Reports ordered by instance name, then by theorem order."""
    items = sorted(instances, key=lambda item: item[0])
    args = [(name, g, tuple(theorems), node_budget, seed) for name, g in items]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_job, args, chunksize=16))
    else:
        results = [_job(a) for a in args]
    return [r for batch in results for r in batch]


def to_jsonl(reports: Iterable[VerificationReport]) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports)

