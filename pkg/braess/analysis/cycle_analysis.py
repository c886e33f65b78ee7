"""
Analysis of one s-minimal cycle C.

Every analysis ends in one of three outcomes: a set of redundant cycle edges,
an st-embedding of the Wheatstone graph, or a smaller cycle through the same
entry node eps* that lies strictly closer to t.

Entry paths come from one BFS forest rooted at s in G - out(C), exit paths
from one backward forest rooted at t in G - in(C). Two entry paths therefore
share a prefix up to their fork point s' and two exit paths share a suffix
from their merge point t'.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple, Union

import networkx as nx

from braess.core.embedding import WEmbedding
from braess.core.graph_core import Cycle, Net, Path, bfs_shortest
from braess.errors import InvariantViolation
from helpers.logger import get_logger

logger = get_logger(__name__)


# ============================================================================
# Types
# ============================================================================


@dataclass(frozen=True)
class CycleContext:
    cycle: Cycle
    eps_star: int
    entry_paths: Dict[int, Path]
    exit_paths: Dict[int, Path]
    xi_star: int

    @property
    def d_source(self) -> int:
        return len(self.entry_paths[self.eps_star])

    @property
    def d_target(self) -> int:
        return len(self.exit_paths[self.xi_star])


class CycleKind(str, Enum):
    ONE_ENTRY = "one_entry"
    ONE_EXIT = "one_exit"
    SPLITTABLE = "splittable"
    NON_SPLITTABLE = "non_splittable"


@dataclass(frozen=True)
class Regions:
    """
    Regions of a splittable cycle, with `order` rotated to start at the first entry.

    The exit region holds xi1 unless xi1 is also the last entry, in which case
    xi1 is the splitter node. `chord_targets` are the exit-region nodes strictly
    after xi1.
    """

    order: Cycle
    entry_region: FrozenSet[int]
    exit_region: FrozenSet[int]
    neutral_region: FrozenSet[int]
    first_entry: int
    last_entry: int
    first_exit: int
    last_exit: int
    splitter_edge: Optional[int] = None
    splitter_node: Optional[int] = None

    def pos(self, node: int) -> int:
        return self.order.index[node]

    @property
    def chord_targets(self) -> FrozenSet[int]:
        return self.exit_region - {self.first_exit}


@dataclass(frozen=True)
class Classification:
    kind: CycleKind
    regions: Optional[Regions] = None
    sole: Optional[int] = None


@dataclass(frozen=True)
class RedundantEdges:
    edges: FrozenSet[int]


@dataclass(frozen=True)
class Embedding:
    embedding: WEmbedding
    case: str


@dataclass(frozen=True)
class SmallerCycle:
    cycle: Cycle
    case: str


CycleOutcome = Union[RedundantEdges, Embedding, SmallerCycle]


# ============================================================================
# Cycle discovery, entries and exits
# ============================================================================


def s_minimal_cycle(net: Net) -> Optional[Tuple[Cycle, int]]:
    """
    A cycle at minimum BFS distance from s, with the node eps* realizing it.

    Nodes are scanned in BFS order; the first one lying on a cycle is eps*,
    and the cycle returned is a shortest cycle through it.
    """
    graph = net.to_networkx()
    on_cycle = {}
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1:
            for node in component:
                on_cycle[node] = component
    for edge in net.edges:
        if edge.tail == edge.head:
            on_cycle.setdefault(edge.tail, {edge.tail})

    if not on_cycle:
        return None

    for node in bfs_shortest(net, [net.source]).order:
        if node in on_cycle:
            return _shortest_cycle_through(net, node, on_cycle[node]), node
    return None


def _shortest_cycle_through(net: Net, node: int, component) -> Cycle:
    for edge in net.out_edges(node):
        if edge.head == node:
            return Cycle((node,), (edge.id,))

    forest = bfs_shortest(net, [node], expand=component)
    closing = min(
        (e for e in net.in_edges(node) if e.tail in component and forest.reached(e.tail)),
        key=lambda e: (forest.dist[e.tail], e.id),
    )
    path = forest.path(closing.tail)
    return Cycle(path.nodes, path.edges + (closing.id,))


def entry_nodes(net: Net, cycle: Cycle) -> Dict[int, Path]:
    """Entry nodes of C in cycle order, each with a shortest entry path."""
    forest = bfs_shortest(net, [net.source], net.out_of(cycle.nodes), "forward")
    return {v: forest.path(v) for v in cycle.nodes if forest.reached(v)}


def exit_nodes(net: Net, cycle: Cycle) -> Dict[int, Path]:
    """Exit nodes of C in cycle order, each with a shortest exit path."""
    forest = bfs_shortest(net, [net.target], net.into(cycle.nodes), "backward")
    return {v: forest.path(v) for v in cycle.nodes if forest.reached(v)}


def build_context(net: Net, cycle: Cycle, eps_star: int) -> CycleContext:
    entries = entry_nodes(net, cycle)
    exits = exit_nodes(net, cycle)
    if not entries or not exits:
        raise InvariantViolation(f"cycle {cycle.nodes} lacks entries or exits; net is not st-connected")
    if eps_star not in entries:
        raise InvariantViolation(f"eps* = {eps_star} is not an entry of cycle {cycle.nodes}")
    xi_star = min(exits, key=lambda v: (len(exits[v]), cycle.index[v]))
    return CycleContext(cycle, eps_star, entries, exits, xi_star)


# ============================================================================
# Classification
# ============================================================================


def classify(cycle: Cycle, entries, exits) -> Classification:
    """
    One pass over the entry/exit labels of C.

    Reading the labelled nodes cyclically with entry-only < both < exit-only,
    C is splittable iff the labels wrap around exactly once, from an exit-only
    node to an entry-only node, and at most one node is both.
    """
    entries, exits = set(entries), set(exits)
    if len(entries) == 1:
        return Classification(CycleKind.ONE_ENTRY, sole=next(iter(entries)))
    if len(exits) == 1:
        return Classification(CycleKind.ONE_EXIT, sole=next(iter(exits)))

    labelled = [v for v in cycle.nodes if v in entries or v in exits]
    rank = [(v in exits) + (v not in entries) for v in labelled]  # 0 entry, 1 both, 2 exit
    m = len(labelled)
    descents = [i for i in range(m) if rank[i] > rank[(i + 1) % m]]

    if rank.count(1) > 1 or len(descents) != 1:
        return Classification(CycleKind.NON_SPLITTABLE)
    wrap = descents[0]
    if rank[wrap] != 2 or rank[(wrap + 1) % m] != 0:
        return Classification(CycleKind.NON_SPLITTABLE)

    order = cycle.rotate(labelled[(wrap + 1) % m])
    ordered_entries = [v for v in order.nodes if v in entries]
    ordered_exits = [v for v in order.nodes if v in exits]
    first_exit, last_exit = ordered_exits[0], ordered_exits[-1]
    last_entry = ordered_entries[-1]
    x1, xl = order.index[first_exit], order.index[last_exit]

    exit_region = set(order.nodes[x1 : xl + 1])
    splitter_edge = splitter_node = None
    if first_exit == last_entry:
        exit_region.discard(first_exit)
        splitter_node = first_exit
    else:
        splitter_edge = order.edge_entering(first_exit)

    regions = Regions(
        order=order,
        entry_region=frozenset(order.nodes[:x1]),
        exit_region=frozenset(exit_region),
        neutral_region=frozenset(order.nodes[xl + 1 :]),
        first_entry=order.nodes[0],
        last_entry=last_entry,
        first_exit=first_exit,
        last_exit=last_exit,
        splitter_edge=splitter_edge,
        splitter_node=splitter_node,
    )
    return Classification(CycleKind.SPLITTABLE, regions=regions)


def one_entry_exit_redundant(cycle: Cycle, classification: Classification) -> FrozenSet[int]:
    """The cycle edge entering the sole entry, or leaving the sole exit."""
    if classification.kind == CycleKind.ONE_ENTRY:
        return frozenset({cycle.edge_entering(classification.sole)})
    if classification.kind == CycleKind.ONE_EXIT:
        return frozenset({cycle.edge_leaving(classification.sole)})
    raise InvariantViolation(f"no sole entry or exit on a {classification.kind.value} cycle")


# ============================================================================
# Neutral hyper-chords and the redundant band
# ============================================================================


def _through_nodes(net: Net, cycle: Cycle, regions: Regions) -> FrozenSet[int]:
    """Nodes a neutral hyper-chord may pass through: off the cycle, or neutral."""
    return (net.nodes - cycle.node_set) | regions.neutral_region


def neutral_hyperchord_sources(net: Net, cycle: Cycle, regions: Regions) -> Dict[int, Path]:
    """
    Entry-region nodes w with a neutral hyper-chord w -> z into the exit region
    beyond xi1, each with one witness chord, in cycle order.
    """
    forest = bfs_shortest(
        net,
        sorted(regions.chord_targets, key=regions.pos),
        direction="backward",
        expand=_through_nodes(net, cycle, regions),
    )
    return {
        w: forest.path(w)
        for w in regions.order.nodes
        if w in regions.entry_region and forest.reached(w)
    }


def band_limits(net: Net, cycle: Cycle, regions: Regions) -> Tuple[int, int]:
    """
    Cycle positions (l, f) of the last neutral node reaching the exit region
    and the first neutral node reached from the entry region.

    l defaults to the position of the last exit, f to len(C), i.e. the first entry
    seen from the far end.
    """
    through = _through_nodes(net, cycle, regions)
    neutral = regions.neutral_region

    towards_exit = bfs_shortest(net, regions.chord_targets, direction="backward", expand=through)
    from_entry = bfs_shortest(net, regions.entry_region, direction="forward", expand=through)

    last = max((regions.pos(v) for v in neutral if towards_exit.reached(v)), default=regions.pos(regions.last_exit))
    first = min((regions.pos(v) for v in neutral if from_entry.reached(v)), default=len(regions.order))
    return last, first


def redundant_band(net: Net, cycle: Cycle, regions: Regions) -> FrozenSet[int]:
    """Cycle edges between l and f; redundant when no entry-to-exit hyper-chord exists."""
    last, first = band_limits(net, cycle, regions)
    if last >= first:
        raise InvariantViolation(f"empty redundant band on cycle {cycle.nodes}: l={last}, f={first}")
    return frozenset(regions.order.edges[i] for i in range(last, first))


# ============================================================================
# Path bookkeeping
# ============================================================================


def path_intersections(p: Path, q: Path) -> List[Tuple[int, int, int]]:
    """Common nodes of p and q as (node, position in p, position in q), in p order."""
    return [(node, i, q.index[node]) for i, node in enumerate(p.nodes) if node in q.index]


def fork_point(p: Path, q: Path) -> int:
    """Last node of the common prefix of two paths from the same root."""
    fork = p.first
    for u, v in zip(p.nodes, q.nodes):
        if u != v:
            break
        fork = u
    return fork


def merge_point(p: Path, q: Path) -> int:
    """First node of the common suffix of two paths into the same root."""
    merge = p.last
    for u, v in zip(reversed(p.nodes), reversed(q.nodes)):
        if u != v:
            break
        merge = u
    return merge


class Hit(NamedTuple):
    node: int
    on_first: bool  # on the first exit path before t'
    shared: bool  # on the common part t' -> t


FIRST, SECOND, SHARED = "first", "second", "shared"


def _label(hit: Hit) -> str:
    if hit.shared:
        return SHARED
    return FIRST if hit.on_first else SECOND


def exit_hits(entry: Path, q1: Path, q2: Path, merge: int) -> List[Hit]:
    """Nodes of an entry path lying on one of two merging exit paths, in entry order."""
    split = q1.index[merge]
    hits = {}
    for node, _, j in path_intersections(entry, q1):
        hits[node] = Hit(node, on_first=j < split, shared=j >= split)
    for node, _, _ in path_intersections(entry, q2):
        hits.setdefault(node, Hit(node, on_first=False, shared=False))
    return sorted(hits.values(), key=lambda h: entry.index[h.node])


def _crossing_pair(hits: List[Hit]) -> Optional[Tuple[Hit, Hit]]:
    """Consecutive hits on different unshared exit-path parts; first->second preferred."""
    pairs = list(zip(hits, hits[1:]))
    for wanted in ((FIRST, SECOND), (SECOND, FIRST)):
        for h1, h2 in pairs:
            if (_label(h1), _label(h2)) == wanted:
                return h1, h2
    return None


def _cross_embedding(
    tail: Path, order: Cycle, xi1: int, xi2: int, q1: Path, q2: Path, entry: Path, merge: int, pair
) -> WEmbedding:
    """
    W rooted at xi1: two routes from xi1 reach the pair, the entry path joins
    them, and each pair node leaves towards t' on its own exit path.
    """

    def route(hit: Hit) -> Path:
        if hit.on_first:
            return q1.upto(hit.node)
        return order.arc(xi1, xi2) + q2.upto(hit.node)

    def leave(hit: Hit) -> Path:
        return (q1 if hit.on_first else q2).segment(hit.node, merge)

    h1, h2 = pair
    return WEmbedding(
        source_tail=tail,
        ab=route(h1),
        ac=route(h2),
        bc=entry.segment(h1.node, h2.node),
        bd=leave(h1),
        cd=leave(h2),
        target_tail=q1.since(merge),
    )


def _close(path: Path, eps_star: int) -> Cycle:
    """Turn a closed path into a cycle, erasing loops while keeping eps*."""
    cycle_path = path
    if path.first != eps_star:
        start = path.index[eps_star]
        cycle_path = Path(path.nodes[start:] + path.nodes[1 : start + 1], path.edges[start:] + path.edges[:start])

    nodes: List[int] = []
    edges: List[int] = []
    seen: Dict[int, int] = {}
    for i, node in enumerate(cycle_path.nodes[:-1]):
        if node in seen:
            cut = seen[node]
            for dropped in nodes[cut + 1 :]:
                seen.pop(dropped, None)
            del nodes[cut + 1 :]
            del edges[cut:]
        else:
            seen[node] = len(nodes)
            nodes.append(node)
        edges.append(cycle_path.edges[i])
    if len(edges) != len(nodes):
        raise InvariantViolation("loop erasure left a malformed cycle")
    if len(nodes) != len(cycle_path.nodes) - 1:
        logger.warning(f"Collapsed repeated nodes while closing cycle through {eps_star}")
    return Cycle(tuple(nodes), tuple(edges))


# ============================================================================
# Splittable cycles
# ============================================================================


def splittable_analysis(net: Net, ctx: CycleContext, regions: Regions) -> CycleOutcome:
    cycle = ctx.cycle
    sources = neutral_hyperchord_sources(net, cycle, regions)
    if not sources:
        band = redundant_band(net, cycle, regions)
        logger.debug(f"No entry-to-exit hyper-chord; band of {len(band)} redundant edges")
        return RedundantEdges(band)

    order = regions.order
    pos = regions.pos
    w = max(sources, key=pos)
    chord = sources[w]
    z = chord.last

    exits = sorted(ctx.exit_paths, key=pos)
    if pos(ctx.xi_star) < pos(z):
        xi1 = ctx.xi_star
        xi2 = next(x for x in exits if pos(x) >= pos(z))
    else:
        xi1, xi2 = regions.first_exit, ctx.xi_star
    q1, q2 = ctx.exit_paths[xi1], ctx.exit_paths[xi2]
    merge = merge_point(q1, q2)

    eps_star = ctx.eps_star
    eps1 = eps_star if pos(eps_star) <= pos(w) else regions.first_entry
    p1 = ctx.entry_paths[eps1]

    if not path_intersections(p1, q1) and not path_intersections(p1, q2):
        embedding = WEmbedding(
            source_tail=p1 + order.arc(eps1, w),
            ab=order.arc(w, xi1),
            ac=chord,
            bc=order.arc(xi1, z),
            bd=q1.upto(merge),
            cd=order.arc(z, xi2) + q2.upto(merge),
            target_tail=q1.since(merge),
        )
        return Embedding(embedding, "hyperchord")
    if eps1 == eps_star:
        raise InvariantViolation(f"entry path of eps* = {eps_star} meets an exit path")

    p_star = ctx.entry_paths[eps_star]
    fork = fork_point(p1, p_star)
    entry = p1.since(fork)
    hits = exit_hits(entry, q1, q2, merge)
    labels = {_label(h) for h in hits}

    if SHARED in labels:
        q_star = ctx.exit_paths[ctx.xi_star]
        omega = [h.node for h in hits if h.node in q_star][-1]
        closed = entry.since(omega) + order.arc(eps1, ctx.xi_star) + q_star.upto(omega)
        return SmallerCycle(_close(closed, eps_star), "entry path meets the shared exit tail")

    if labels == {FIRST} or labels == {SECOND}:
        on_first = labels == {FIRST}
        q_hit, q_other, xi_other = (q1, q2, xi2) if on_first else (q2, q1, xi1)
        omega = max((h.node for h in hits), key=q_hit.index.get)
        embedding = WEmbedding(
            source_tail=p_star.upto(fork),
            ab=entry.upto(omega),
            ac=p_star.since(fork),
            bc=entry.since(omega) + order.arc(eps1, eps_star),
            bd=q_hit.segment(omega, merge),
            cd=order.arc(eps_star, xi_other) + q_other.upto(merge),
            target_tail=q1.since(merge),
        )
        return Embedding(embedding, f"entry path meets only the {'first' if on_first else 'second'} exit path")

    pair = _crossing_pair(hits)
    if pair is None:
        raise InvariantViolation("entry path meets both exit paths without a crossing pair")
    embedding = _cross_embedding(p_star + order.arc(eps_star, xi1), order, xi1, xi2, q1, q2, entry, merge, pair)
    return Embedding(embedding, "entry path crosses between exit paths")


# ============================================================================
# Non-splittable cycles
# ============================================================================


def _non_splittable_anchors(ctx: CycleContext, order: Cycle) -> Tuple[int, int, int]:
    """
    Pick eps, xi1, xi2 with C = eps* -> xi1 -> eps -> xi2 -> eps*, xi1 != eps and
    xi* in {xi1, xi2}; xi* = xi1 is tried first.
    """
    pos = order.index
    entries = [v for v in order.nodes if v in ctx.entry_paths]
    exits = [v for v in order.nodes if v in ctx.exit_paths]
    x_star = pos[ctx.xi_star]

    for eps in entries:
        if pos[eps] > x_star:
            later = [x for x in exits if pos[x] >= pos[eps]]
            if later:
                return eps, ctx.xi_star, later[0]

    first_exit = exits[0]
    for eps in entries:
        if pos[first_exit] < pos[eps] <= x_star:
            return eps, first_exit, ctx.xi_star
    raise InvariantViolation(f"non-splittable cycle {order.nodes} has no alternating entry/exit pattern")


def non_splittable_analysis(net: Net, ctx: CycleContext) -> CycleOutcome:
    eps_star = ctx.eps_star
    order = ctx.cycle.rotate(eps_star)
    eps, xi1, xi2 = _non_splittable_anchors(ctx, order)

    q1, q2 = ctx.exit_paths[xi1], ctx.exit_paths[xi2]
    merge = merge_point(q1, q2)
    p_star, p_eps = ctx.entry_paths[eps_star], ctx.entry_paths[eps]
    fork = fork_point(p_eps, p_star)
    entry = p_eps.since(fork)
    star_to_xi1 = p_star.since(fork) + order.arc(eps_star, xi1)
    source_tail = p_star.upto(fork)
    target_tail = q1.since(merge)

    hits = exit_hits(entry, q1, q2, merge)
    if not hits:
        embedding = WEmbedding(
            source_tail=source_tail,
            ab=star_to_xi1,
            ac=entry,
            bc=order.arc(xi1, eps),
            bd=q1.upto(merge),
            cd=order.arc(eps, xi2) + q2.upto(merge),
            target_tail=target_tail,
        )
        return Embedding(embedding, "disjoint entry path")

    alpha, omega = hits[0], hits[-1]

    if _label(alpha) == FIRST:
        embedding = WEmbedding(
            source_tail=source_tail,
            ab=star_to_xi1,
            ac=entry.upto(alpha.node),
            bc=q1.upto(alpha.node),
            bd=order.arc(xi1, xi2) + q2.upto(merge),
            cd=q1.segment(alpha.node, merge),
            target_tail=target_tail,
        )
        return Embedding(embedding, "first hit on the first exit path")

    if _label(alpha) == SECOND:
        embedding = WEmbedding(
            source_tail=source_tail,
            ab=star_to_xi1,
            ac=entry.upto(alpha.node),
            bc=order.arc(xi1, xi2) + q2.upto(alpha.node),
            bd=q1.upto(merge),
            cd=q2.segment(alpha.node, merge),
            target_tail=target_tail,
        )
        return Embedding(embedding, "first hit on the second exit path")

    around = order.arc(eps, xi1)
    if _label(omega) == FIRST:
        embedding = WEmbedding(
            source_tail=p_star + order.arc(eps_star, xi1),
            ab=q1.upto(omega.node),
            ac=order.arc(xi1, eps),
            bc=entry.since(omega.node),
            bd=q1.segment(omega.node, merge),
            cd=order.arc(eps, xi2) + q2.upto(merge),
            target_tail=target_tail,
        )
        return Embedding(embedding, "last hit on the first exit path")

    if _label(omega) == SHARED:
        closed = entry.since(omega.node) + around + q1.upto(omega.node)
        return SmallerCycle(_close(closed, eps_star), "last hit on the shared exit tail")

    # first hit on the shared tail, last hit on the second exit path
    pair = _crossing_pair(hits)
    if pair is not None:
        embedding = _cross_embedding(p_star + order.arc(eps_star, xi1), order, xi1, xi2, q1, q2, entry, merge, pair)
        return Embedding(embedding, "crossing between exit paths")

    on_first = [h.node for h in hits if _label(h) == FIRST]
    if not on_first:
        t_star = min((h.node for h in hits if h.shared), key=q1.index.get)
        closed = entry.since(t_star) + around + q1.upto(t_star)
        return SmallerCycle(_close(closed, eps_star), "detour through the shared exit tail")

    beta = min(on_first, key=q1.index.get)
    closed = entry.since(beta) + around + q1.upto(beta)
    return SmallerCycle(_close(closed, eps_star), "detour from the first exit path")


# ============================================================================
# Dispatch
# ============================================================================


def analyse_cycle(net: Net, ctx: CycleContext) -> CycleOutcome:
    classification = classify(ctx.cycle, ctx.entry_paths, ctx.exit_paths)
    logger.debug(
        f"Cycle of length {len(ctx.cycle)} at d_s={ctx.d_source}, d_t={ctx.d_target}: {classification.kind.value}"
    )
    if classification.kind in (CycleKind.ONE_ENTRY, CycleKind.ONE_EXIT):
        return RedundantEdges(one_entry_exit_redundant(ctx.cycle, classification))
    if classification.kind == CycleKind.SPLITTABLE:
        return splittable_analysis(net, ctx, classification.regions)
    return non_splittable_analysis(net, ctx)
