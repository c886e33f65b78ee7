"""
The witness of vulnerability: an st-embedding of the Wheatstone graph.

Branch nodes a, b, c, d carry the pattern a->b, a->c, b->c, b->d, c->d; each
pattern edge maps to a simple path and the two tails connect s to a and d to t.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

from braess.core.graph_core import Net, Path
from helpers.logger import get_logger

logger = get_logger(__name__)

BRANCH_LABELS = ("ab", "ac", "bc", "bd", "cd")


@dataclass(frozen=True)
class WEmbedding:
    source_tail: Path
    ab: Path
    ac: Path
    bc: Path
    bd: Path
    cd: Path
    target_tail: Path

    @property
    def a(self) -> int:
        return self.ab.first

    @property
    def b(self) -> int:
        return self.bc.first

    @property
    def c(self) -> int:
        return self.cd.first

    @property
    def d(self) -> int:
        return self.cd.last

    @property
    def branch_nodes(self) -> Tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def branches(self) -> Dict[str, Path]:
        return {label: getattr(self, label) for label in BRANCH_LABELS}

    def all_paths(self) -> Tuple[Path, ...]:
        return (self.source_tail, self.ab, self.ac, self.bc, self.bd, self.cd, self.target_tail)

    def edge_ids(self) -> frozenset:
        return frozenset(e for path in self.all_paths() for e in path.edges)

    def zigzag(self) -> Path:
        """s -> a -> b -> c -> d -> t, the route that uses the b->c branch."""
        return self.source_tail + self.ab + self.bc + self.cd + self.target_tail

    def upper(self) -> Path:
        return self.source_tail + self.ab + self.bd + self.target_tail

    def lower(self) -> Path:
        return self.source_tail + self.ac + self.cd + self.target_tail


def embedding_problems(net: Net, w: WEmbedding) -> list:
    """Every reason w fails to be an st-embedding into net; empty when valid."""
    problems = []
    a, b, c, d = w.branch_nodes

    endpoints = {
        "source_tail": (net.source, a),
        "ab": (a, b),
        "ac": (a, c),
        "bc": (b, c),
        "bd": (b, d),
        "cd": (c, d),
        "target_tail": (d, net.target),
    }
    for label, (start, end) in endpoints.items():
        path = getattr(w, label)
        if (path.first, path.last) != (start, end):
            problems.append(f"{label} runs {path.first}->{path.last}, expected {start}->{end}")
        if not path.is_simple:
            problems.append(f"{label} is not simple")
        if not path.follows(net):
            problems.append(f"{label} is not a path of the net")

    if len({a, b, c, d}) != 4:
        problems.append(f"branch nodes {(a, b, c, d)} are not distinct")

    # branch nodes sit on exactly three paths each, every other node on at most one
    counts = Counter(node for path in w.all_paths() for node in path.nodes)
    for node, count in counts.items():
        expected = 3 if node in (a, b, c, d) else 1
        if count > expected:
            problems.append(f"node {node} is shared by {count} paths")
    return problems


def validate_embedding(net: Net, w: WEmbedding) -> bool:
    problems = embedding_problems(net, w)
    if problems:
        logger.debug(f"Embedding rejected: {'; '.join(problems)}")
    return not problems
