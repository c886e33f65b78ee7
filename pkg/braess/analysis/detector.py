"""
Vulnerability detection.

Prune the net, then repeatedly analyse an s-minimal cycle: redundant cycle
edges are deleted and the net re-pruned, a Wheatstone embedding ends the run,
and a smaller cycle through the same entry node is analysed next. Once the
net is acyclic the verdict is the negation of series-parallel recognition.
"""
from dataclasses import dataclass, field
from typing import Callable, FrozenSet, List, Optional, Tuple

from braess.analysis.cycle_analysis import (
    Embedding,
    RedundantEdges,
    SmallerCycle,
    analyse_cycle,
    build_context,
    s_minimal_cycle,
)
from braess.analysis.ttsp import is_ttsp
from braess.core.embedding import WEmbedding, validate_embedding
from braess.core.graph_core import Net, has_st_path, make_st_connected
from braess.errors import EmbeddingBoundError, InvariantViolation, NetPreconditionError
from braess.oracle.brute_force import has_w_embedding
from helpers.logger import get_logger
from helpers.settings import get_settings

logger = get_logger(__name__)

__all__ = [
    "LoopStats",
    "Verdict",
    "WEmbedding",
    "find_witness_acyclic",
    "is_vulnerable",
    "validate_embedding",
]

DeleteHook = Callable[[int, FrozenSet[int], Net], None]


@dataclass
class LoopStats:
    outer: int = 0
    inner: int = 0
    max_inner: int = 0
    cases: List[str] = field(default_factory=list)


@dataclass
class Verdict:
    vulnerable: bool
    witness: Optional[WEmbedding] = None
    deleted_edges: List[Tuple[int, int]] = field(default_factory=list)
    stats: LoopStats = field(default_factory=LoopStats)
    residual: Optional[Net] = None


def find_witness_acyclic(net: Net, bound: Optional[int] = None) -> Optional[WEmbedding]:
    """
    Backtracking search for an embedding in an acyclic non-series-parallel net.

    Gives up (returns None) above `bound` nodes; the verdict does not depend on it.
    """
    bound = bound if bound is not None else get_settings().detector.witness_node_bound
    if len(net.nodes) > bound:
        logger.warning(f"Skipping witness search: {len(net.nodes)} nodes exceeds bound {bound}")
        return None
    try:
        return has_w_embedding(net, node_bound=bound)
    except EmbeddingBoundError:
        return None


def is_vulnerable(
    net: Net,
    *,
    want_witness: bool = False,
    witness_bound: Optional[int] = None,
    on_delete: Optional[DeleteHook] = None,
) -> Verdict:
    """
    Decide whether the net is vulnerable to Braess paradox.

    Args:
        net: the input net; it is never modified.
        want_witness: also search for a witness when the answer comes from
            series-parallel recognition. Cycle analysis always yields one.
        witness_bound: node bound for that search.
        on_delete: called as on_delete(iteration, edge_ids, net) before each deletion.

    Raises:
        NetPreconditionError: source equals target.
        InvariantViolation: an analysis step broke a guaranteed property.
    """
    if net.source == net.target:
        raise NetPreconditionError("source equals target")

    verdict = Verdict(vulnerable=False)
    stats = verdict.stats
    current = make_st_connected(net)
    if not has_st_path(current):
        logger.info("No st-path; the net is not vulnerable")
        verdict.residual = current
        return verdict

    outer_bound = len(net.edges) + 1
    while True:
        found = s_minimal_cycle(current)
        if found is None:
            break
        stats.outer += 1
        if stats.outer > outer_bound:
            raise InvariantViolation(f"outer loop exceeded {outer_bound} iterations")

        cycle, eps_star = found
        previous_distance = None
        inner = 0
        while True:
            inner += 1
            stats.inner += 1
            stats.max_inner = max(stats.max_inner, inner)
            if inner > len(current.nodes):
                raise InvariantViolation(f"cycle analysis repeated more than {len(current.nodes)} times")

            ctx = build_context(current, cycle, eps_star)
            if previous_distance is not None and ctx.d_target >= previous_distance:
                raise InvariantViolation(
                    f"smaller cycle did not get closer to t: d_t {ctx.d_target} after {previous_distance}"
                )
            outcome = analyse_cycle(current, ctx)

            if isinstance(outcome, RedundantEdges):
                removed = outcome.edges
                if not removed or any(not current.has_edge(e) for e in removed):
                    raise InvariantViolation(f"bad redundant edge set {sorted(removed)}")
                if on_delete is not None:
                    on_delete(stats.outer, removed, current)
                verdict.deleted_edges.extend((stats.outer, e) for e in sorted(removed))
                logger.info(f"Iteration {stats.outer}: deleting redundant edges {sorted(removed)}")
                current = make_st_connected(current.without_edges(removed))
                break

            if isinstance(outcome, Embedding):
                stats.cases.append(outcome.case)
                if not validate_embedding(current, outcome.embedding):
                    logger.error(f"Cycle analysis ({outcome.case}) produced an invalid embedding")
                    raise InvariantViolation(f"invalid embedding from case '{outcome.case}'")
                logger.info(f"Vulnerable: embedding found ({outcome.case})")
                verdict.vulnerable = True
                verdict.witness = outcome.embedding
                verdict.residual = current
                return verdict

            if isinstance(outcome, SmallerCycle):
                stats.cases.append(outcome.case)
                if eps_star not in outcome.cycle:
                    raise InvariantViolation(f"smaller cycle {outcome.cycle.nodes} misses eps* = {eps_star}")
                logger.debug(f"Continuing with a smaller cycle ({outcome.case})")
                previous_distance = ctx.d_target
                cycle = outcome.cycle
                continue

            raise InvariantViolation(f"unknown cycle outcome {outcome!r}")

    verdict.residual = current
    if not has_st_path(current):
        raise InvariantViolation("deleting redundant edges disconnected s from t")

    verdict.vulnerable = not is_ttsp(current)
    if verdict.vulnerable and want_witness:
        verdict.witness = find_witness_acyclic(current, witness_bound)
    logger.info(
        f"Acyclic after {stats.outer} outer iterations: "
        f"{'vulnerable' if verdict.vulnerable else 'not vulnerable'}"
    )
    return verdict
