"""
Runtime growth of the detector on two net families.

Layered cyclic nets are vulnerable and stop at the first embedding. Chains
with back edges are safe and make the detector delete every back edge in
its own iteration, re-pruning each time. For each family the slope of
log(time) against log(|V|) is fitted; the run fails when a slope exceeds
the configured maximum, the largest net runs past the time limit, or a
chain is answered without one deletion round per back edge.

    python -m experiments.complexity_smoke
"""
import sys
import time
from typing import Callable, List, Optional

import numpy as np

sys.path.insert(1, "../")

from braess.analysis.detector import Verdict, is_vulnerable
from braess.core.graph_core import Net
from braess.oracle.generators import chain_back_edge_net, layered_cyclic_net
from helpers.logger import get_logger
from helpers.settings import get_settings

logger = get_logger(__name__)


def measure(net: Net, repeats: int = 3):
    best = float("inf")
    verdict = None
    for _ in range(repeats):
        start = time.perf_counter()
        verdict = is_vulnerable(net)
        best = min(best, time.perf_counter() - start)
    return best, verdict


def run_family(
    name: str, build: Callable[[int], Net], sizes: List[int], check: Optional[Callable[[Net, Verdict], bool]] = None
) -> bool:
    config = get_settings().complexity
    timings = []
    ok = True
    for n in sizes:
        net = build(n)
        best, verdict = measure(net)
        timings.append(best)
        logger.info(
            f"[{name}] |V|={n} |E|={len(net.edges)}: {best:.3f}s, vulnerable={verdict.vulnerable}, "
            f"{verdict.stats.outer} outer / {verdict.stats.inner} inner iterations"
        )
        if check is not None and not check(net, verdict):
            logger.error(f"❌ [{name}] |V|={n}: unexpected verdict or iteration count")
            ok = False

    slope, _ = np.polyfit(np.log(np.array(sizes, dtype=float)), np.log(np.maximum(timings, 1e-6)), 1)
    logger.info(f"[{name}] log-log slope {slope:.2f} (max {config.max_slope})")
    if slope > config.max_slope:
        logger.error(f"❌ [{name}] runtime grows faster than allowed: slope {slope:.2f}")
        ok = False
    if timings[-1] > config.time_limit_seconds:
        logger.error(f"❌ [{name}] |V|={sizes[-1]} took {timings[-1]:.1f}s")
        ok = False
    return ok


def chain_is_fully_reduced(net: Net, verdict: Verdict) -> bool:
    back_edges = len(net.edges) - (len(net.nodes) - 1)
    return not verdict.vulnerable and verdict.stats.outer == back_edges and back_edges >= len(net.nodes)


def main():
    config = get_settings().complexity
    layered_ok = run_family(
        "layered",
        lambda n: layered_cyclic_net(n, edge_factor=config.edge_factor, seed=n),
        config.sizes,
    )
    chain_ok = run_family(
        "chain",
        lambda n: chain_back_edge_net(n, back_edges=config.back_edge_factor * n, seed=n),
        config.sizes,
        chain_is_fully_reduced,
    )
    if not (layered_ok and chain_ok):
        sys.exit(1)
    logger.info("✅ Complexity smoke test passed")


if __name__ == "__main__":
    main()
