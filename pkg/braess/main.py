import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations
from pathlib import Path as FilePath
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

# Core
from braess.core.embedding import WEmbedding
from braess.core.graph_core import Net, Path
from braess.core.netfile import EdgeList, emit, parse, parse_edge_list, to_dot
from braess.errors import (
    InvariantViolation,
    NetFileError,
    NetPreconditionError,
    OracleGuardError,
)

# Analysis
from braess.analysis.detector import Verdict, is_vulnerable
from braess.witness.wardrop_witness import EquilibriumReport, equilibrium

# Oracle
from braess.oracle.brute_force import (
    brute_force_vulnerable,
    disjoint_paths_witness,
    enumerate_simple_st_paths,
    has_w_embedding,
    irredundant_edges,
    mis,
)
from braess.oracle.gadget import GadgetLayout, gadget_gstar

# Helper
from braess.reports.render import render_trace
from helpers.logger import get_logger
from helpers.settings import get_settings

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3
EXIT_GUARD = 4


# ============================================================================
# Pydantic Models
# ============================================================================

class PathModel(BaseModel):
    nodes: List[int]
    edges: List[int]

    @classmethod
    def of(cls, path: Path) -> "PathModel":
        return cls(nodes=list(path.nodes), edges=list(path.edges))


class WitnessModel(BaseModel):
    a: int
    b: int
    c: int
    d: int
    paths: Dict[str, PathModel]

    @classmethod
    def of(cls, w: WEmbedding) -> "WitnessModel":
        labels = {"source_tail": w.source_tail, **w.branches(), "target_tail": w.target_tail}
        return cls(a=w.a, b=w.b, c=w.c, d=w.d, paths={k: PathModel.of(p) for k, p in labels.items()})


class DeletedEdge(BaseModel):
    iteration: int
    edge: int


class IterationStats(BaseModel):
    outer: int
    inner: int
    max_inner: int
    cases: List[str]


class CheckResponse(BaseModel):
    source: int
    target: int
    nodes: int
    edges: int
    vulnerable: bool
    witness: Optional[WitnessModel] = None
    deleted_edges: List[DeletedEdge]
    iterations: IterationStats
    equilibrium: Optional[EquilibriumReport] = None
    dot: Optional[str] = None


class AllPairsResponse(BaseModel):
    contains_w: bool
    pair: Optional[Tuple[int, int]] = None
    pairs_checked: int


# ============================================================================
# Helper Functions
# ============================================================================

def read_text(file: str) -> str:
    try:
        return FilePath(file).read_text(encoding="utf-8")
    except OSError as e:
        raise NetPreconditionError(f"cannot read {file}: {e}") from e


def dump(model: Any) -> str:
    if isinstance(model, BaseModel):
        model = model.model_dump(mode="json", by_alias=True)
    return json.dumps(model, indent=2)


def check_response(net: Net, verdict: Verdict, report: Optional[EquilibriumReport], dot: bool) -> CheckResponse:
    stats = verdict.stats
    highlight = verdict.witness.edge_ids() if verdict.witness else ()
    return CheckResponse(
        source=net.source,
        target=net.target,
        nodes=len(net.nodes),
        edges=len(net.edges),
        vulnerable=verdict.vulnerable,
        witness=WitnessModel.of(verdict.witness) if verdict.witness else None,
        deleted_edges=[DeletedEdge(iteration=i, edge=e) for i, e in verdict.deleted_edges],
        iterations=IterationStats(
            outer=stats.outer, inner=stats.inner, max_inner=stats.max_inner, cases=stats.cases
        ),
        equilibrium=report,
        dot=to_dot(net, highlight) if dot else None,
    )


def _pair_verdict(job: Tuple[EdgeList, int, int]) -> bool:
    edge_list, source, target = job
    return is_vulnerable(edge_list.to_net(source, target)).vulnerable


def first_vulnerable_pair(
    edge_list: EdgeList, pairs: List[Tuple[int, int]], workers: int
) -> Tuple[Optional[Tuple[int, int]], int]:
    """
    The first vulnerable pair in `pairs` order and the number of pairs up to it.

    The count is the same for any worker count; the pool may evaluate pairs
    past the first hit but they are not reported.
    """
    jobs = [(edge_list, s, t) for s, t in pairs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_pair_verdict, jobs)
            for checked, (pair, hit) in enumerate(zip(pairs, results), start=1):
                if hit:
                    return pair, checked
    else:
        for checked, job in enumerate(jobs, start=1):
            if _pair_verdict(job):
                return pairs[checked - 1], checked
    return None, len(pairs)


# ============================================================================
# Commands
# ============================================================================

def cmd_check(args) -> int:
    net = parse(read_text(args.file))
    logger.info(f"check {args.file}: {len(net.nodes)} nodes, {len(net.edges)} edges")

    verdict = is_vulnerable(net, want_witness=args.witness or args.demo)
    report = None
    if args.demo:
        if verdict.witness is None:
            if verdict.vulnerable:
                logger.warning("No witness available for the demo; net too large for the witness search")
        else:
            report = equilibrium(net, verdict.witness, args.demand)

    response = check_response(net, verdict, report, args.dot)
    print(dump(response))
    if args.trace:
        print(render_trace(response.model_dump(mode="json", by_alias=True)), file=sys.stderr)
    return EXIT_OK


def cmd_check_all_pairs(args) -> int:
    edge_list = parse_edge_list(read_text(args.file))
    pairs = list(permutations(sorted(edge_list.nodes), 2))
    workers = args.workers if args.workers is not None else get_settings().cli.workers
    logger.info(f"all-pairs {args.file}: {len(pairs)} ordered pairs, {workers} worker(s)")

    found, checked = first_vulnerable_pair(edge_list, pairs, workers)
    print(dump(AllPairsResponse(contains_w=found is not None, pair=found, pairs_checked=checked)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    net = parse(read_text(args.file))
    logger.info(f"oracle {args.query} {args.file}")

    result: Dict[str, Any]
    if args.query == "paths":
        paths = enumerate_simple_st_paths(net)
        result = {"count": len(paths), "paths": [PathModel.of(p).model_dump() for p in paths]}
    elif args.query == "irr":
        keep = irredundant_edges(net)
        witnesses = {}
        for edge in net.edges:
            pair = disjoint_paths_witness(net, edge.id)
            if pair is not None:
                witnesses[str(edge.id)] = {"head": list(pair[0].nodes), "tail": list(pair[1].nodes)}
        result = {
            "irredundant": len(keep) == len(net.edges),
            "irredundant_edges": sorted(keep),
            "redundant_edges": sorted(e.id for e in net.edges if e.id not in keep),
            "witnesses": witnesses,
        }
    elif args.query == "mis":
        sub = mis(net)
        result = {
            "kept": len(sub.edges),
            "edges": [[e.id, e.tail, e.head] for e in sub.edges],
            "netfile": emit(sub),
        }
    elif args.query == "wembed":
        w = has_w_embedding(net)
        result = {"found": w is not None, "witness": WitnessModel.of(w).model_dump() if w else None}
    else:
        result = {"vulnerable": brute_force_vulnerable(net)}

    print(dump(result))
    return EXIT_OK


def cmd_gadget(args) -> int:
    net = parse(read_text(args.file))
    gadget = gadget_gstar(net, args.edge)
    if args.dot:
        print(to_dot(gadget))
    else:
        header = GadgetLayout.of(net).header() + [f"designated edge {args.edge}"]
        sys.stdout.write(emit(gadget, header=header))
    return EXIT_OK


# ============================================================================
# Entry point
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braess", description="Braess paradox vulnerability detection")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide vulnerability of a net")
    check.add_argument("file")
    check.add_argument("--witness", action="store_true", help="always look for a witness embedding")
    check.add_argument("--demo", action="store_true", help="add the equilibrium report for the witness")
    check.add_argument("--demand", default=None, help="demand for --demo as p/q (default from settings)")
    check.add_argument("--dot", action="store_true", help="include a DOT rendering in the output")
    check.add_argument("--trace", action="store_true", help="print a readable trace to stderr")
    check.set_defaults(handler=cmd_check)

    all_pairs = sub.add_parser("all-pairs", help="check every ordered pair of distinct nodes")
    all_pairs.add_argument("file")
    all_pairs.add_argument("--workers", type=int, default=None)
    all_pairs.set_defaults(handler=cmd_check_all_pairs)

    oracle = sub.add_parser("oracle", help="exponential ground truth for small nets")
    oracle.add_argument("query", choices=["paths", "irr", "mis", "wembed", "vulnerable"])
    oracle.add_argument("file")
    oracle.set_defaults(handler=cmd_oracle)

    gadget = sub.add_parser("gadget", help="emit the two-copy irredundancy gadget for an edge")
    gadget.add_argument("file")
    gadget.add_argument("edge", type=int)
    gadget.add_argument("--dot", action="store_true", help="emit DOT instead of a NetFile")
    gadget.set_defaults(handler=cmd_gadget)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    try:
        return args.handler(args)
    except (NetFileError, NetPreconditionError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT
    except InvariantViolation as e:
        logger.error(f"Internal invariant violated: {e}")
        return EXIT_INVARIANT
    except OracleGuardError as e:
        logger.error(f"Oracle guard: {e}")
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
