"""
Paradox certificate for an st-embedding of the Wheatstone graph.

The latency assignment puts `x` on the first edge of a->b and c->d, the
constant 1 on the first edge of a->c and b->d, 0 on the rest of the embedding
and a blocking constant M = 1 + |E| everywhere else. For demand r in (0, 1]
the full net routes everything along the zigzag at latency 2r, while the net
without the b->c branch splits the flow evenly at latency 1 + r/2.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from braess.core.embedding import WEmbedding, validate_embedding
from braess.core.graph_core import Net, Path
from braess.errors import InvariantViolation, NetPreconditionError
from braess.oracle.brute_force import enumerate_simple_st_paths
from helpers.logger import get_logger
from helpers.settings import get_settings

logger = get_logger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class LatencyKind(str, Enum):
    CONSTANT = "constant"
    LINEAR = "linear"
    BLOCKED = "blocked"


@dataclass(frozen=True)
class Latency:
    kind: LatencyKind
    constant: Fraction = ZERO

    def at(self, flow: Fraction) -> Fraction:
        if self.kind == LatencyKind.LINEAR:
            return flow
        return self.constant

    def describe(self) -> str:
        if self.kind == LatencyKind.LINEAR:
            return "x"
        if self.kind == LatencyKind.BLOCKED:
            return f"M={self.constant}"
        return str(self.constant)


@dataclass(frozen=True)
class LatencyAssignment:
    latencies: Dict[int, Latency]
    big_m: Fraction

    def blocked(self) -> frozenset:
        return frozenset(e for e, lat in self.latencies.items() if lat.kind == LatencyKind.BLOCKED)

    def path_latency(self, path: Path, edge_flow: Dict[int, Fraction]) -> Fraction:
        return sum((self.latencies[e].at(edge_flow.get(e, ZERO)) for e in path.edges), ZERO)


def parse_demand(text: Union[str, Fraction, int]) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise NetPreconditionError(f"demand {text!r} is not a rational number") from exc


def build_latencies(net: Net, w: WEmbedding) -> LatencyAssignment:
    if not validate_embedding(net, w):
        raise NetPreconditionError("cannot assign latencies for an invalid embedding")

    big_m = Fraction(1 + len(net.edges))
    latencies = {e.id: Latency(LatencyKind.BLOCKED, big_m) for e in net.edges}
    zero = Latency(LatencyKind.CONSTANT, ZERO)

    for path in (w.source_tail, w.bc, w.target_tail):
        for e in path.edges:
            latencies[e] = zero

    heads = {
        "ab": Latency(LatencyKind.LINEAR),
        "cd": Latency(LatencyKind.LINEAR),
        "ac": Latency(LatencyKind.CONSTANT, ONE),
        "bd": Latency(LatencyKind.CONSTANT, ONE),
    }
    for label, first in heads.items():
        path = getattr(w, label)
        latencies[path.edges[0]] = first
        for e in path.edges[1:]:
            latencies[e] = zero

    return LatencyAssignment(latencies, big_m)


# ============================================================================
# Equilibria
# ============================================================================


class PathFlow(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    nodes: List[int]
    edges: List[int]
    flow: Fraction
    latency: Fraction

    @field_serializer("flow", "latency")
    def _rational(self, value: Fraction) -> str:
        return str(value)


class EquilibriumReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, populate_by_name=True)

    demand: Fraction
    l_full: Fraction = Field(serialization_alias="L_full")
    l_sub: Fraction = Field(serialization_alias="L_sub")
    paradox: bool
    removed_edges: List[int]
    latencies: Dict[int, str]
    full_flows: List[PathFlow]
    sub_flows: List[PathFlow]

    @field_serializer("demand", "l_full", "l_sub")
    def _rational(self, value: Fraction) -> str:
        return str(value)


def _edge_flows(routes: List[Tuple[Path, Fraction]]) -> Dict[int, Fraction]:
    flows: Dict[int, Fraction] = {}
    for path, amount in routes:
        for e in path.edges:
            flows[e] = flows.get(e, ZERO) + amount
    return flows


def _wardrop_latency(net: Net, latencies: LatencyAssignment, routes: List[Tuple[Path, Fraction]]) -> Fraction:
    """
    Common latency of the positive-flow routes, after checking no simple
    st-path of the un-blocked net is faster.
    """
    edge_flow = _edge_flows(routes)
    if any(e in latencies.blocked() for e in edge_flow):
        raise InvariantViolation("equilibrium routes use a blocked edge")

    used = {latencies.path_latency(path, edge_flow) for path, amount in routes if amount > 0}
    if len(used) != 1:
        raise InvariantViolation(f"positive-flow routes disagree on latency: {sorted(used)}")
    common = used.pop()

    unblocked = net.without_edges(latencies.blocked())
    for path in enumerate_simple_st_paths(unblocked):
        if latencies.path_latency(path, edge_flow) < common:
            raise InvariantViolation(f"path {path.nodes} beats the equilibrium latency {common}")
    if latencies.big_m <= common:
        raise InvariantViolation(f"blocking constant {latencies.big_m} does not exceed latency {common}")
    return common


def _report_flows(
    latencies: LatencyAssignment, routes: List[Tuple[Path, Fraction]]
) -> List[PathFlow]:
    edge_flow = _edge_flows(routes)
    return [
        PathFlow(
            nodes=list(path.nodes),
            edges=list(path.edges),
            flow=amount,
            latency=latencies.path_latency(path, edge_flow),
        )
        for path, amount in routes
    ]


def equilibrium(
    net: Net,
    w: WEmbedding,
    demand: Optional[Union[str, Fraction, int]] = None,
    latencies: Optional[LatencyAssignment] = None,
) -> EquilibriumReport:
    """
    Wardrop latencies of the full net and of the net without the b->c branch.

    Raises:
        NetPreconditionError: demand outside (0, 1] or invalid embedding.
        InvariantViolation: a computed flow fails the Wardrop condition.
    """
    r = parse_demand(demand if demand is not None else get_settings().witness.demand)
    if not ZERO < r <= ONE:
        raise NetPreconditionError(f"demand must lie in (0, 1], got {r}")
    latencies = latencies or build_latencies(net, w)

    full_routes = [(w.zigzag(), r)]
    l_full = _wardrop_latency(net, latencies, full_routes)

    removed = list(w.bc.edges)
    sub = net.without_edges(removed)
    half = r / 2
    sub_latencies = LatencyAssignment(
        {e: lat for e, lat in latencies.latencies.items() if sub.has_edge(e)}, latencies.big_m
    )
    sub_routes = [(w.upper(), half), (w.lower(), half)]
    l_sub = _wardrop_latency(sub, sub_latencies, sub_routes)

    if l_full != 2 * r or l_sub != 1 + half:
        raise InvariantViolation(f"unexpected equilibrium latencies {l_full} and {l_sub} at demand {r}")

    logger.debug(f"Equilibrium at r={r}: full {l_full}, without b->c {l_sub}")
    return EquilibriumReport(
        demand=r,
        l_full=l_full,
        l_sub=l_sub,
        paradox=l_full > l_sub,
        removed_edges=removed,
        latencies={e: lat.describe() for e, lat in sorted(latencies.latencies.items())},
        full_flows=_report_flows(latencies, full_routes),
        sub_flows=_report_flows(sub_latencies, sub_routes),
    )
