"""Seeded net generators for fuzzing and timing."""
import random
from typing import Optional

import networkx as nx

from braess.core.graph_core import Net, has_st_path, make_st_connected
from braess.errors import NetPreconditionError


def random_net(
    rng: random.Random,
    max_nodes: int = 8,
    max_edges: int = 14,
    acyclic: bool = False,
    st_connected: bool = False,
) -> Net:
    """
    A random multi-digraph on 2..max_nodes nodes with s = 0, t = n - 1.

    Parallel edges, self-loops and edges through s and t all occur unless
    acyclic is set, in which case edges only go from lower to higher ids.
    """
    n = rng.randint(2, max_nodes)
    m = rng.randint(1, max_edges)
    pairs = []
    for _ in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        if acyclic:
            if u == v:
                continue
            u, v = min(u, v), max(u, v)
        pairs.append((u, v))
    net = Net.from_pairs(pairs, 0, n - 1, nodes=range(n))
    if st_connected:
        net = make_st_connected(net)
    return net


def random_st_net(rng: random.Random, attempts: int = 100, **kwargs) -> Optional[Net]:
    """A pruned random net with at least one st-path, or None after `attempts` tries."""
    for _ in range(attempts):
        net = random_net(rng, st_connected=True, **kwargs)
        if has_st_path(net):
            return net
    return None


def chain_back_edge_net(n: int, back_edges: Optional[int] = None, seed: int = 0) -> Net:
    """
    The chain 0 -> 1 -> ... -> n-1 with `back_edges` random edges j -> i, i < j
    (2n by default).

    Every back edge is redundant and the chain is series-parallel, so the
    detector deletes each back edge in its own iteration and answers safe.
    """
    if n < 2:
        raise NetPreconditionError(f"a chain needs at least 2 nodes, got {n}")
    rng = random.Random(seed)
    count = 2 * n if back_edges is None else back_edges
    pairs = [(i, i + 1) for i in range(n - 1)]
    for _ in range(count):
        i, j = sorted(rng.sample(range(n), 2))
        pairs.append((j, i))
    return Net.from_pairs(pairs, 0, n - 1, nodes=range(n))


def layered_cyclic_net(n: int, edge_factor: int = 3, seed: int = 0) -> Net:
    """
    Layers of width four joined forward, with back edges inside and between
    consecutive layers so every s-minimal cycle has entries and exits.
    """
    if n < 6:
        raise NetPreconditionError(f"layered nets need at least 6 nodes, got {n}")
    rng = random.Random(seed)
    width = 4
    layers = [list(range(i, min(i + width, n - 1))) for i in range(1, n - 1, width)]
    s, t = 0, n - 1
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(n))

    for v in layers[0]:
        graph.add_edge(s, v)
    for v in layers[-1]:
        graph.add_edge(v, t)
    for current, following in zip(layers, layers[1:]):
        for v in current:
            graph.add_edge(v, rng.choice(following))
        for w in following:
            graph.add_edge(rng.choice(current), w)

    target = edge_factor * n
    while graph.number_of_edges() < target:
        i = rng.randrange(len(layers))
        j = min(len(layers) - 1, max(0, i + rng.choice((-1, 0, 1))))
        u, v = rng.choice(layers[i]), rng.choice(layers[j])
        if u != v:
            graph.add_edge(u, v)

    return Net.from_pairs(((u, v) for u, v, _ in sorted(graph.edges(keys=True))), s, t, nodes=range(n))
