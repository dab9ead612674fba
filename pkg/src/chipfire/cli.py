"""``chipfire`` command line.

Every command prints one record, either as ``key: value`` lines or as a
single JSON object (``--format json``).  Exit codes: 0 when an answer was
computed (including negative answers), 2 for usage errors, 3 for bad input,
4 when a size or step limit was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import arcset, game, riemann_roch
from .errors import GraphClassError, InputError, SizeLimitExceeded, StepLimitExceeded
from .graph import format_arcs, read_graph
from .lattice import canonical_rep, enumerate_classes, equivalent, lattice_of
from .verify import PROPERTIES, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_SIZE = 0, 2, 3, 4

COMMANDS = ("info", "terminates", "run", "dist", "rank", "equivalent", "canonical", "classes",
            "minfas", "mnt", "rr-check", "natural-rr", "verify")


class UsageError(Exception):
    pass


def _ints(v) -> list[int]:
    return [int(a) for a in v]


def parse_distribution(text: str, n: int) -> np.ndarray:
    try:
        vals = [int(a) for a in text.split(",")]
    except ValueError:
        raise InputError(f"distribution {text!r} is not a comma-separated integer list") from None
    if len(vals) != n:
        raise InputError(f"distribution {text!r} has {len(vals)} entries, graph has {n} vertices")
    return np.array(vals, dtype=np.int64)


def _need(args, name):
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"{args.command} requires --{name.replace('_', '-')}")
    return val


def _graph(args):
    return read_graph(_need(args, "graph"))


def _dist_arg(args, g, name="dist"):
    return parse_distribution(_need(args, name), g.n)


def cmd_info(args) -> dict:
    g = _graph(args)
    rec = {
        "n": g.n,
        "arcs": g.num_arcs,
        "out_degree": _ints(g.out_degree),
        "in_degree": _ints(g.in_degree),
        "eulerian": g.eulerian,
        "bidirected": g.bidirected,
        "strongly_connected": g.strongly_connected,
        "B_nt": g.termination_bound,
        "minfas": arcset.minfas(g),
        "dist0": None,
        "pic0_order": None,
    }
    if g.strongly_connected:
        rec["dist0"] = game.dist(g, np.zeros(g.n, dtype=np.int64))
        rec["pic0_order"] = lattice_of(g).pic0_order
    return rec


def cmd_terminates(args) -> dict:
    g = _graph(args)
    return {"verdict": str(game.decide_termination(g, _dist_arg(args, g)))}


def cmd_run(args) -> dict:
    g = _graph(args)
    trace = game.play(g, _dist_arg(args, g), strategy=args.strategy, step_limit=args.step_limit)
    rec = trace.to_record()
    if args.format == "text":
        rec["log"] = trace.to_log(g.laplacian())
    return rec


def cmd_dist(args) -> dict:
    g = _graph(args)
    return {"dist": game.dist(g, _dist_arg(args, g))}


def cmd_rank(args) -> dict:
    g = _graph(args)
    return {"rank": game.rank(g, _dist_arg(args, g))}


def cmd_equivalent(args) -> dict:
    g = _graph(args)
    return {"equivalent": equivalent(lattice_of(g), _dist_arg(args, g), _dist_arg(args, g, "dist2"))}


def cmd_canonical(args) -> dict:
    g = _graph(args)
    return {"canonical": _ints(canonical_rep(lattice_of(g), _dist_arg(args, g)))}


def cmd_classes(args) -> dict:
    g = _graph(args)
    d = int(_need(args, "degree"))
    reps = enumerate_classes(lattice_of(g), d)
    return {"degree": d, "count": len(reps), "classes": [_ints(r) for r in reps]}


def cmd_minfas(args) -> dict:
    g = _graph(args)
    size, witness = arcset.min_turnback(g)
    return {"minfas": size, "turnback_witness": format_arcs(witness).splitlines()}


def cmd_mnt(args) -> dict:
    g = _graph(args)
    return {"mnt": [c.to_record() for c in riemann_roch.enumerate_mnt_classes(g)]}


def cmd_rr_check(args) -> dict:
    g = _graph(args)
    report = riemann_roch.rr_check(g, all_candidates=args.all_k)
    rec = report.to_record()
    if args.all_k:
        rec["K_candidates"] = [_ints(k) for k in report.K_candidates]
    return rec


def cmd_natural_rr(args) -> dict:
    return riemann_roch.natural_rr_report(_graph(args)).to_record()


def cmd_verify(args) -> dict:
    if args.property is None:
        raise UsageError(f"verify requires a property: {', '.join(PROPERTIES)}")
    if args.property not in PROPERTIES:
        raise UsageError(f"unknown property {args.property!r}; choose from {', '.join(PROPERTIES)}")
    graphs = [read_graph(args.graph)] if args.graph else None
    report = run_sweep(args.property, graphs=graphs, random_graphs=args.random_graphs,
                       trials=args.trials, seed=args.seed)
    return report.to_record()


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chipfire", description="Chip-firing and divisor theory on multidigraphs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("property", nargs="?", help="property name for 'verify'")
    p.add_argument("--graph", metavar="PATH")
    p.add_argument("--dist", metavar="CSV")
    p.add_argument("--dist2", metavar="CSV")
    p.add_argument("--degree", type=int, metavar="D")
    p.add_argument("--trials", type=int, default=20, metavar="N")
    p.add_argument("--random-graphs", type=int, default=10, metavar="M")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--step-limit", type=int, metavar="L")
    p.add_argument("--strategy", choices=sorted(game.STRATEGIES), default="lowest")
    p.add_argument("--all-k", action="store_true", help="rr-check: list every valid K class")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def render(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, sort_keys=True)
    lines = []
    for key, val in rec.items():
        if key == "log":
            continue
        if isinstance(val, (dict, list)):
            val = json.dumps(val)
        elif isinstance(val, bool):
            val = str(val).lower()
        elif val is None:
            val = "null"
        lines.append(f"{key}: {val}")
    if "log" in rec:
        lines.append(rec["log"])
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rec = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"chipfire: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SizeLimitExceeded, StepLimitExceeded) as exc:
        print(f"chipfire: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (InputError, GraphClassError, OSError) as exc:
        print(f"chipfire: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(render(rec, args.format))
    return EXIT_OK


def run() -> None:  # console-script entry point
    sys.exit(main())
