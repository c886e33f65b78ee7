"""
Two-terminal series-parallel recognition by exhaustive series/parallel reduction.

Parallel reduction is implicit: neighbours are kept as sets, so parallel edges
collapse as soon as they appear. Series reduction removes an inner node with a
single predecessor and a single successor.
"""
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, Optional, Set

from braess.core.graph_core import Net, is_acyclic
from braess.errors import NetPreconditionError
from helpers.logger import get_logger

logger = get_logger(__name__)


@dataclass
class ReductionState:
    source: int
    target: int
    succ: Dict[int, Set[int]] = field(default_factory=dict)
    pred: Dict[int, Set[int]] = field(default_factory=dict)
    worklist: Deque[int] = field(default_factory=deque)
    series_steps: int = 0

    @classmethod
    def from_net(cls, net: Net, rng: Optional[random.Random] = None) -> "ReductionState":
        state = cls(net.source, net.target)
        state.succ = {v: set() for v in net.nodes}
        state.pred = {v: set() for v in net.nodes}
        for edge in net.edges:
            state.succ[edge.tail].add(edge.head)
            state.pred[edge.head].add(edge.tail)

        inner = sorted(v for v in net.nodes if v not in (net.source, net.target))
        for v in inner:
            if not state.succ[v] or not state.pred[v]:
                raise NetPreconditionError(f"node {v} is a dead end; the net is not st-connected")
        if rng is not None:
            rng.shuffle(inner)
        state.worklist.extend(inner)
        return state

    def reducible(self, v: int) -> bool:
        return (
            v in self.succ
            and v not in (self.source, self.target)
            and len(self.pred[v]) == 1
            and len(self.succ[v]) == 1
        )

    def series_reduce(self, v: int) -> None:
        (x,) = self.pred.pop(v)
        (y,) = self.succ.pop(v)
        self.succ[x].discard(v)
        self.pred[y].discard(v)
        self.succ[x].add(y)
        self.pred[y].add(x)
        self.series_steps += 1

    def is_single_edge(self) -> bool:
        return set(self.succ) == {self.source, self.target} and self.succ[self.source] == {self.target}


def is_ttsp(net: Net, rng: Optional[random.Random] = None) -> bool:
    """
    True iff the acyclic st-connected net reduces to the single edge s->t.

    rng shuffles the reduction order; the verdict does not depend on it.
    """
    if not is_acyclic(net):
        raise NetPreconditionError("TTSP recognition needs an acyclic net")

    state = ReductionState.from_net(net, rng)
    while state.worklist:
        v = state.worklist.popleft()
        if not state.reducible(v):
            continue
        x = next(iter(state.pred[v]))
        y = next(iter(state.succ[v]))
        state.series_reduce(v)
        neighbours = [x, y]
        if rng is not None:
            rng.shuffle(neighbours)
        state.worklist.extend(neighbours)

    result = state.is_single_edge()
    logger.debug(f"TTSP check on {len(net.nodes)} nodes: {result} after {state.series_steps} series steps")
    return result
