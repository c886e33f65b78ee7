"""
NetFile text format.

    # comment
    s <int>
    t <int>
    e <int> <int>

Edge ids follow file order starting at 0. Node ids are kept as written.
"""
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import networkx as nx

from braess.core.graph_core import Edge, Net
from braess.errors import NetFileError, NetPreconditionError


@dataclass(frozen=True)
class EdgeList:
    """A parsed NetFile whose terminals may still be missing."""

    nodes: frozenset
    edges: Tuple[Edge, ...]
    source: Optional[int] = None
    target: Optional[int] = None

    def to_net(self, source: Optional[int] = None, target: Optional[int] = None) -> Net:
        source = self.source if source is None else source
        target = self.target if target is None else target
        if source is None or target is None:
            raise NetPreconditionError("net needs both a source and a target")
        return Net(self.nodes | {source, target}, self.edges, source, target)


def _node_id(token: str, line_no: int) -> int:
    if not (token.isascii() and token.isdigit()):
        raise NetFileError(line_no, f"node id must be a non-negative integer, got {token!r}")
    return int(token)


def parse_edge_list(text: str) -> EdgeList:
    source = target = None
    nodes = set()
    edges = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]

        if kind in ("s", "t"):
            if len(tokens) != 2:
                raise NetFileError(line_no, f"expected '{kind} <int>'")
            node = _node_id(tokens[1], line_no)
            if kind == "s":
                if source is not None:
                    raise NetFileError(line_no, "duplicate source declaration")
                source = node
            else:
                if target is not None:
                    raise NetFileError(line_no, "duplicate target declaration")
                target = node
            nodes.add(node)
            if source is not None and source == target:
                raise NetFileError(line_no, "source equals target")
        elif kind == "e":
            if len(tokens) != 3:
                raise NetFileError(line_no, "expected 'e <int> <int>'")
            tail, head = _node_id(tokens[1], line_no), _node_id(tokens[2], line_no)
            edges.append(Edge(len(edges), tail, head))
            nodes.update((tail, head))
        else:
            raise NetFileError(line_no, f"unknown line kind {kind!r}")

    return EdgeList(frozenset(nodes), tuple(edges), source, target)


def parse(text: str) -> Net:
    edge_list = parse_edge_list(text)
    last_line = len(text.splitlines()) + 1
    if edge_list.source is None:
        raise NetFileError(last_line, "missing source declaration")
    if edge_list.target is None:
        raise NetFileError(last_line, "missing target declaration")
    return edge_list.to_net()


def emit(net: Net, header: Iterable[str] = ()) -> str:
    lines = [f"# {comment}" for comment in header]
    lines.append(f"s {net.source}")
    lines.append(f"t {net.target}")
    lines.extend(f"e {edge.tail} {edge.head}" for edge in net.edges)
    return "\n".join(lines) + "\n"


def to_dot(net: Net, highlight: Iterable[int] = ()) -> str:
    """DOT rendering; edges listed in highlight are drawn bold red."""
    graph = net.to_networkx()
    marked = set(highlight)
    for u, v, key in graph.edges(keys=True):
        graph.edges[u, v, key]["label"] = str(key)
        if key in marked:
            graph.edges[u, v, key].update(color="red", penwidth="2")
    graph.nodes[net.source]["shape"] = "doublecircle"
    graph.nodes[net.target]["shape"] = "doublecircle"
    return nx.nx_pydot.to_pydot(graph).to_string()
