"""
Exponential ground truth for desk-size nets.

Everything here enumerates simple paths by backtracking and is guarded by
explicit caps so that it fails loudly instead of hanging.
"""
from itertools import permutations
from typing import Iterator, List, Optional, Set, Tuple

from braess.core.embedding import WEmbedding, validate_embedding
from braess.core.graph_core import Net, Path, bfs_shortest, make_st_connected
from braess.errors import EmbeddingBoundError, InvariantViolation, PathExplosionError
from helpers.logger import get_logger
from helpers.settings import get_settings

logger = get_logger(__name__)


def _path_cap(max_paths: Optional[int]) -> int:
    return max_paths if max_paths is not None else get_settings().oracle.max_paths


def _simple_paths(net: Net, start: int, end: int, blocked: Set[int]) -> Iterator[Path]:
    """
    All simple paths start -> end whose nodes avoid blocked (end may be blocked).

    Branches that can no longer reach end are cut with a BFS.
    """
    if start == end:
        yield Path.trivial(start)
        return

    nodes = [start]
    edges: List[int] = []
    on_path = {start}

    def can_finish(node: int) -> bool:
        avoid = (blocked | on_path) - {end}
        forest = bfs_shortest(net, [node], net.out_of(avoid - {node}))
        return forest.reached(end)

    def extend(node: int) -> Iterator[Path]:
        for edge in net.out_edges(node):
            nxt = edge.head
            if nxt == end:
                yield Path(tuple(nodes) + (end,), tuple(edges) + (edge.id,))
                continue
            if nxt in on_path or nxt in blocked:
                continue
            nodes.append(nxt)
            edges.append(edge.id)
            on_path.add(nxt)
            if can_finish(nxt):
                yield from extend(nxt)
            on_path.discard(nxt)
            edges.pop()
            nodes.pop()

    yield from extend(start)


def enumerate_simple_st_paths(net: Net, max_paths: Optional[int] = None) -> List[Path]:
    """The complete set SP(G) of simple st-paths, in depth-first order."""
    cap = _path_cap(max_paths)
    paths = []
    for path in _simple_paths(net, net.source, net.target, set()):
        paths.append(path)
        if len(paths) > cap:
            raise PathExplosionError(cap)
    logger.debug(f"Enumerated {len(paths)} simple st-paths")
    return paths


def irredundant_edges(net: Net, max_paths: Optional[int] = None) -> frozenset:
    """Edges lying on at least one simple st-path."""
    return frozenset(e for path in enumerate_simple_st_paths(net, max_paths) for e in path.edges)


def disjoint_paths_witness(net: Net, edge_id: int, max_paths: Optional[int] = None) -> Optional[Tuple[Path, Path]]:
    """
    Node-disjoint paths s->u and v->t for the edge u->v, if any.

    Their existence is equivalent to the edge lying on a simple st-path.
    """
    edge = net.edge(edge_id)
    u, v = edge.tail, edge.head
    if u == v or v == net.source or u == net.target:
        return None

    cap = _path_cap(max_paths)
    explored = 0
    for head in _simple_paths(net, net.source, u, {v, net.target}):
        explored += 1
        if explored > cap:
            raise PathExplosionError(cap)
        if v == net.target:
            return head, Path.trivial(v)
        forest = bfs_shortest(net, [v], net.out_of(head.nodes))
        if forest.reached(net.target):
            return head, forest.path(net.target)
    return None


def is_irredundant(net: Net, max_paths: Optional[int] = None) -> bool:
    """True iff every edge of the net lies on a simple st-path; stops at the first redundant edge."""
    return all(disjoint_paths_witness(net, e.id, max_paths) is not None for e in net.edges)


def mis(net: Net, max_paths: Optional[int] = None) -> Net:
    """The maximal irredundant subnet: irredundant edges only, then pruned."""
    keep = irredundant_edges(net, max_paths)
    redundant = [e.id for e in net.edges if e.id not in keep]
    return make_st_connected(net.without_edges(redundant))


# ----------------------------------------------------------------------------
# W-embedding search
# ----------------------------------------------------------------------------


def _degree_ok(net: Net, a: int, b: int, c: int, d: int) -> bool:
    def outs(v):
        return len({e.head for e in net.out_edges(v) if e.head != v})

    def ins(v):
        return len({e.tail for e in net.in_edges(v) if e.tail != v})

    return outs(a) >= 2 and outs(b) >= 2 and ins(b) >= 1 and ins(c) >= 2 and outs(c) >= 1 and ins(d) >= 2


def _search(net: Net, a: int, b: int, c: int, d: int) -> Optional[WEmbedding]:
    s, t = net.source, net.target
    legs = [(a, b), (a, c), (b, c), (b, d), (c, d), (s, a), (d, t)]
    reserved = {a, b, c, d, s, t}

    def place(i: int, used: Set[int], chosen: List[Path]) -> Optional[List[Path]]:
        if i == len(legs):
            return chosen
        start, end = legs[i]
        blocked = (used | reserved) - {start, end}
        for path in _simple_paths(net, start, end, blocked):
            found = place(i + 1, used | set(path.interior()), chosen + [path])
            if found is not None:
                return found
        return None

    found = place(0, set(), [])
    if found is None:
        return None
    ab, ac, bc, bd, cd, head, tail = found
    return WEmbedding(source_tail=head, ab=ab, ac=ac, bc=bc, bd=bd, cd=cd, target_tail=tail)


def has_w_embedding(net: Net, node_bound: Optional[int] = None) -> Optional[WEmbedding]:
    """
    Exhaustive search for an st-embedding of the Wheatstone graph.

    Tries every ordered quadruple of distinct branch nodes.
    """
    bound = node_bound if node_bound is not None else get_settings().oracle.embedding_node_bound
    if len(net.nodes) > bound:
        raise EmbeddingBoundError(len(net.nodes), bound)

    s, t = net.source, net.target
    for a, b, c, d in permutations(sorted(net.nodes), 4):
        if s in (b, c, d) or t in (a, b, c):
            continue
        if not _degree_ok(net, a, b, c, d):
            continue
        embedding = _search(net, a, b, c, d)
        if embedding is not None:
            if not validate_embedding(net, embedding):
                raise InvariantViolation(f"oracle produced an invalid embedding at {(a, b, c, d)}")
            return embedding
    return None


def brute_force_vulnerable(net: Net, node_bound: Optional[int] = None) -> bool:
    return has_w_embedding(make_st_connected(net), node_bound) is not None
