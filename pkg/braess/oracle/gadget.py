"""
Two-copy gadget turning irredundancy of one edge into irredundancy of a whole net.

Numbering, for an input with n nodes sorted ascending as x_0 < ... < x_(n-1):

    x_i'  -> i            x_i'' -> n + i
    s*    -> 2n           t*    -> 2n + 7
    z'    -> 2n + 1       z''   -> 2n + 2
    a'    -> 2n + 3       a''   -> 2n + 4
    r'    -> 2n + 5       r''   -> 2n + 6
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple

from braess.core.graph_core import Net
from braess.errors import NetPreconditionError
from helpers.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class GadgetLayout:
    n: int
    first: Dict[int, int]
    second: Dict[int, int]

    @property
    def s_star(self) -> int:
        return 2 * self.n

    @property
    def z1(self) -> int:
        return 2 * self.n + 1

    @property
    def z2(self) -> int:
        return 2 * self.n + 2

    @property
    def a1(self) -> int:
        return 2 * self.n + 3

    @property
    def a2(self) -> int:
        return 2 * self.n + 4

    @property
    def r1(self) -> int:
        return 2 * self.n + 5

    @property
    def r2(self) -> int:
        return 2 * self.n + 6

    @property
    def t_star(self) -> int:
        return 2 * self.n + 7

    @classmethod
    def of(cls, net: Net) -> "GadgetLayout":
        order = sorted(net.nodes)
        n = len(order)
        return cls(n, {x: i for i, x in enumerate(order)}, {x: n + i for i, x in enumerate(order)})

    def header(self) -> List[str]:
        lines = [f"gadget numbering for {self.n} input nodes"]
        lines.append("first copy:  " + " ".join(f"{x}->{y}" for x, y in sorted(self.first.items())))
        lines.append("second copy: " + " ".join(f"{x}->{y}" for x, y in sorted(self.second.items())))
        lines.append(
            f"s*={self.s_star} z'={self.z1} z''={self.z2} a'={self.a1} a''={self.a2} "
            f"r'={self.r1} r''={self.r2} t*={self.t_star}"
        )
        return lines


def gadget_gstar(net: Net, edge_id: int) -> Net:
    """
    Build (G*, s*, t*) for the designated edge u->v.

    Raises:
        NetPreconditionError: the edge enters s or leaves t.
    """
    if not net.has_edge(edge_id):
        raise NetPreconditionError(f"edge {edge_id} does not exist")
    edge = net.edge(edge_id)
    u, v = edge.tail, edge.head
    s, t = net.source, net.target
    if v == s or u == t:
        raise NetPreconditionError(f"edge {edge_id} ({u}->{v}) must not enter s or leave t")

    layout = GadgetLayout.of(net)
    one, two = layout.first, layout.second
    pairs: List[Tuple[int, int]] = []

    # both copies, without edges entering s or leaving t (self-loops there included)
    kept = [e for e in net.edges if e.head != s and e.tail != t]
    pairs.extend((one[e.tail], one[e.head]) for e in kept)
    pairs.extend((two[e.tail], two[e.head]) for e in kept)

    g = layout
    pairs.extend(
        [
            (g.s_star, g.z1), (g.z1, g.r1), (g.r1, one[s]),
            (one[t], g.a2), (g.a2, g.z2), (g.z2, g.t_star),
            (g.s_star, g.z2), (g.z2, g.r2), (g.r2, two[s]),
            (two[t], g.a1), (g.a1, g.z1), (g.z1, g.t_star),
        ]
    )

    pairs.extend([(one[u], g.a1), (g.r2, one[v])])
    for x in sorted(net.nodes):
        pairs.extend([(g.a1, two[x]), (two[x], g.r2)])

    pairs.extend([(two[u], g.a2), (g.r1, two[v])])
    for x in sorted(net.nodes):
        pairs.extend([(g.a2, one[x]), (one[x], g.r1)])

    gadget = Net.from_pairs(pairs, g.s_star, g.t_star, nodes=range(2 * layout.n + 8))
    logger.debug(f"Gadget for edge {edge_id}: {len(gadget.nodes)} nodes, {len(gadget.edges)} edges")
    return gadget
