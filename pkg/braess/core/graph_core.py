"""
Directed multigraph model for nets: stable edge ids, paths, cycles, BFS forests
and st-connectivity pruning.
"""
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Collection, Dict, FrozenSet, Iterable, List, Literal, NamedTuple, Optional, Tuple

import networkx as nx

from braess.errors import InvariantViolation, NetPreconditionError

Direction = Literal["forward", "backward"]


class Edge(NamedTuple):
    id: int
    tail: int
    head: int


@dataclass(frozen=True)
class Net:
    """
    A directed multigraph with a distinguished source and target.

    Edges are kept in id order. Deleting edges produces a new Net and never
    renumbers the survivors.
    """

    nodes: FrozenSet[int]
    edges: Tuple[Edge, ...]
    source: int
    target: int

    def __post_init__(self):
        if self.source == self.target:
            raise NetPreconditionError(f"source equals target ({self.source})")
        if self.source not in self.nodes or self.target not in self.nodes:
            raise NetPreconditionError("source and target must be nodes of the net")
        seen = set()
        for edge in self.edges:
            if edge.id in seen:
                raise NetPreconditionError(f"duplicate edge id {edge.id}")
            if edge.tail not in self.nodes or edge.head not in self.nodes:
                raise NetPreconditionError(f"edge {edge.id} has an endpoint outside the node set")
            seen.add(edge.id)

    @classmethod
    def from_pairs(
        cls,
        pairs: Iterable[Tuple[int, int]],
        source: int,
        target: int,
        nodes: Optional[Iterable[int]] = None,
    ) -> "Net":
        """Build a net numbering edges 0, 1, ... in iteration order."""
        edges = tuple(Edge(i, u, v) for i, (u, v) in enumerate(pairs))
        node_set = set(nodes or ())
        node_set.update({source, target})
        for edge in edges:
            node_set.update((edge.tail, edge.head))
        return cls(frozenset(node_set), edges, source, target)

    # ------------------------------------------------------------------
    # adjacency
    # ------------------------------------------------------------------

    @cached_property
    def edge_map(self) -> Dict[int, Edge]:
        return {edge.id: edge for edge in self.edges}

    @cached_property
    def _out(self) -> Dict[int, Tuple[Edge, ...]]:
        out: Dict[int, List[Edge]] = {v: [] for v in self.nodes}
        for edge in self.edges:
            out[edge.tail].append(edge)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def _in(self) -> Dict[int, Tuple[Edge, ...]]:
        inc: Dict[int, List[Edge]] = {v: [] for v in self.nodes}
        for edge in self.edges:
            inc[edge.head].append(edge)
        return {v: tuple(es) for v, es in inc.items()}

    def edge(self, edge_id: int) -> Edge:
        return self.edge_map[edge_id]

    def has_edge(self, edge_id: int) -> bool:
        return edge_id in self.edge_map

    def out_edges(self, node: int) -> Tuple[Edge, ...]:
        return self._out.get(node, ())

    def in_edges(self, node: int) -> Tuple[Edge, ...]:
        return self._in.get(node, ())

    def out_of(self, nodes: Iterable[int]) -> FrozenSet[int]:
        """Ids of all edges leaving the given nodes."""
        return frozenset(e.id for v in nodes for e in self.out_edges(v))

    def into(self, nodes: Iterable[int]) -> FrozenSet[int]:
        """Ids of all edges entering the given nodes."""
        return frozenset(e.id for v in nodes for e in self.in_edges(v))

    # ------------------------------------------------------------------
    # derived nets
    # ------------------------------------------------------------------

    def without_edges(self, edge_ids: Collection[int]) -> "Net":
        removed = set(edge_ids)
        return Net(self.nodes, tuple(e for e in self.edges if e.id not in removed), self.source, self.target)

    def induced(self, nodes: Iterable[int]) -> "Net":
        keep = frozenset(nodes) | {self.source, self.target}
        edges = tuple(e for e in self.edges if e.tail in keep and e.head in keep)
        return Net(keep, edges, self.source, self.target)

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(sorted(self.nodes))
        for edge in self.edges:
            graph.add_edge(edge.tail, edge.head, key=edge.id)
        return graph


@dataclass(frozen=True)
class Path:
    """Node sequence u1..un with the ids of the n-1 edges joining them."""

    nodes: Tuple[int, ...]
    edges: Tuple[int, ...] = ()

    def __post_init__(self):
        if not self.nodes or len(self.edges) != len(self.nodes) - 1:
            raise InvariantViolation(f"malformed path {self.nodes} / {self.edges}")

    @classmethod
    def trivial(cls, node: int) -> "Path":
        return cls((node,), ())

    @property
    def first(self) -> int:
        return self.nodes[0]

    @property
    def last(self) -> int:
        return self.nodes[-1]

    def __len__(self) -> int:
        """Number of edges."""
        return len(self.edges)

    def __bool__(self) -> bool:
        return True

    @cached_property
    def index(self) -> Dict[int, int]:
        """Node -> position; for a simple path this is the distance from the first node."""
        return {node: i for i, node in enumerate(self.nodes)}

    def __contains__(self, node: int) -> bool:
        return node in self.index

    @property
    def is_simple(self) -> bool:
        return len(self.index) == len(self.nodes)

    def interior(self) -> Tuple[int, ...]:
        return self.nodes[1:-1]

    def segment(self, start: int, end: int) -> "Path":
        """Subpath from node start to node end, start not after end."""
        i, j = self.index[start], self.index[end]
        if i > j:
            raise InvariantViolation(f"node {start} comes after {end} on the path")
        return Path(self.nodes[i : j + 1], self.edges[i:j])

    def upto(self, node: int) -> "Path":
        return self.segment(self.first, node)

    def since(self, node: int) -> "Path":
        return self.segment(node, self.last)

    def __add__(self, other: "Path") -> "Path":
        if self.last != other.first:
            raise InvariantViolation(f"cannot join path ending at {self.last} with one starting at {other.first}")
        return Path(self.nodes + other.nodes[1:], self.edges + other.edges)

    def follows(self, net: Net) -> bool:
        """True iff every edge exists in net and joins the consecutive nodes."""
        for i, edge_id in enumerate(self.edges):
            if not net.has_edge(edge_id):
                return False
            edge = net.edge(edge_id)
            if edge.tail != self.nodes[i] or edge.head != self.nodes[i + 1]:
                return False
        return all(node in net.nodes for node in self.nodes)


@dataclass(frozen=True)
class Cycle:
    """
    Simple directed cycle v0 -> v1 -> ... -> v(k-1) -> v0.

    edges[i] leaves nodes[i] and enters nodes[(i + 1) % k]. A self-loop is a
    cycle of length one.
    """

    nodes: Tuple[int, ...]
    edges: Tuple[int, ...]

    def __post_init__(self):
        if not self.nodes or len(self.nodes) != len(self.edges):
            raise InvariantViolation(f"malformed cycle {self.nodes} / {self.edges}")
        if len(set(self.nodes)) != len(self.nodes):
            raise InvariantViolation(f"cycle {self.nodes} repeats a node")

    @classmethod
    def from_closed_path(cls, path: Path) -> "Cycle":
        if path.first != path.last or not path.edges:
            raise InvariantViolation(f"path {path.nodes} is not closed")
        return cls(path.nodes[:-1], path.edges)

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node: int) -> bool:
        return node in self.index

    @cached_property
    def index(self) -> Dict[int, int]:
        return {node: i for i, node in enumerate(self.nodes)}

    @cached_property
    def node_set(self) -> FrozenSet[int]:
        return frozenset(self.nodes)

    def rotate(self, start: int) -> "Cycle":
        i = self.index[start]
        return Cycle(self.nodes[i:] + self.nodes[:i], self.edges[i:] + self.edges[:i])

    def successor(self, node: int) -> int:
        return self.nodes[(self.index[node] + 1) % len(self)]

    def edge_leaving(self, node: int) -> int:
        return self.edges[self.index[node]]

    def edge_entering(self, node: int) -> int:
        return self.edges[self.index[node] - 1]

    def arc(self, start: int, end: int) -> Path:
        """Walk along the cycle from start to end (wrapping); trivial when start == end."""
        k = len(self)
        i = self.index[start]
        steps = (self.index[end] - i) % k
        nodes = tuple(self.nodes[(i + j) % k] for j in range(steps + 1))
        edges = tuple(self.edges[(i + j) % k] for j in range(steps))
        return Path(nodes, edges)

    def as_path(self) -> Path:
        return Path(self.nodes + (self.nodes[0],), self.edges)

    def follows(self, net: Net) -> bool:
        return self.as_path().follows(net)


@dataclass
class ShortestForest:
    """
    Result of a BFS: distances and a parent edge per reached non-root node.

    Forward forests hold paths root -> node, backward forests node -> root.
    """

    net: Net
    direction: Direction
    dist: Dict[int, int] = field(default_factory=dict)
    parent: Dict[int, int] = field(default_factory=dict)
    order: List[int] = field(default_factory=list)

    def distance(self, node: int) -> float:
        return self.dist.get(node, math.inf)

    def reached(self, node: int) -> bool:
        return node in self.dist

    def path(self, node: int) -> Path:
        """Tree path between the forest root and node, oriented along the edges."""
        nodes = [node]
        edges = []
        current = node
        while current in self.parent:
            edge = self.net.edge(self.parent[current])
            edges.append(edge.id)
            current = edge.tail if self.direction == "forward" else edge.head
            nodes.append(current)
        if self.direction == "forward":
            nodes.reverse()
            edges.reverse()
        return Path(tuple(nodes), tuple(edges))


def bfs_shortest(
    net: Net,
    roots: Iterable[int],
    forbidden_edges: Collection[int] = frozenset(),
    direction: Direction = "forward",
    expand: Optional[Collection[int]] = None,
) -> ShortestForest:
    """
    Multi-source BFS over the net minus forbidden_edges.

    When expand is given, only roots and nodes in expand are expanded; other
    nodes can still be reached, as leaves.
    """
    forest = ShortestForest(net, direction)
    queue = deque()
    for root in roots:
        if root not in forest.dist:
            forest.dist[root] = 0
            forest.order.append(root)
            queue.append(root)
    root_set = set(forest.dist)
    forward = direction == "forward"

    while queue:
        node = queue.popleft()
        if expand is not None and node not in root_set and node not in expand:
            continue
        step = forest.dist[node] + 1
        for edge in net.out_edges(node) if forward else net.in_edges(node):
            if edge.id in forbidden_edges:
                continue
            other = edge.head if forward else edge.tail
            if other not in forest.dist:
                forest.dist[other] = step
                forest.parent[other] = edge.id
                forest.order.append(other)
                queue.append(other)
    return forest


def reachable(net: Net, root: int, direction: Direction = "forward") -> FrozenSet[int]:
    return frozenset(bfs_shortest(net, [root], direction=direction).dist)


def make_st_connected(net: Net) -> Net:
    """
    Keep only nodes reachable from s that also reach t, with the edges among them.

    Every surviving node lies on some st-walk. If s cannot reach t the result
    has nodes {s, t} and no edges.
    """
    from_source = reachable(net, net.source, "forward")
    if net.target not in from_source:
        return Net(frozenset({net.source, net.target}), (), net.source, net.target)
    to_target = reachable(net, net.target, "backward")
    return net.induced(from_source & to_target)


def is_acyclic(net: Net) -> bool:
    return nx.is_directed_acyclic_graph(net.to_networkx())


def has_st_path(net: Net) -> bool:
    return net.target in reachable(net, net.source)
