"""
Differential fuzzing of the detector against the brute-force oracle.

Checks, per random net: verdict agreement, redundancy of every deleted edge at
deletion time, witness validity with a paradox at demand 1, the residual net
against the oracle MIS on safe nets, and MIS idempotence and order
independence. A second pass compares series-parallel recognition with the
embedding search on acyclic nets.

    python -m experiments.fuzz_differential [--samples N] [--workers W]
"""
import argparse
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

sys.path.insert(1, "../")

from braess.analysis.detector import is_vulnerable
from braess.analysis.ttsp import is_ttsp
from braess.core.embedding import validate_embedding
from braess.core.graph_core import Net, has_st_path
from braess.core.netfile import emit
from braess.oracle.brute_force import brute_force_vulnerable, has_w_embedding, irredundant_edges, mis
from braess.oracle.generators import random_net, random_st_net
from braess.witness.wardrop_witness import equilibrium
from helpers.logger import get_logger
from helpers.settings import get_settings

logger = get_logger(__name__)


def check_net(net: Net) -> Optional[str]:
    """Return a failure description, or None when every check passes."""
    deletions = []

    def hook(iteration, edges, current):
        deletions.append(edges & irredundant_edges(current))

    verdict = is_vulnerable(net, on_delete=hook)
    expected = brute_force_vulnerable(net)
    if verdict.vulnerable != expected:
        return f"verdict {verdict.vulnerable}, oracle {expected}"
    if any(deletions):
        return f"deleted irredundant edges {[sorted(d) for d in deletions if d]}"

    if verdict.witness is not None:
        if not validate_embedding(net, verdict.witness):
            return "invalid witness"
        if not equilibrium(net, verdict.witness, "1").paradox:
            return "witness without paradox at demand 1"

    if not verdict.vulnerable:
        reduced = mis(net)
        if set(verdict.residual.edges) != set(reduced.edges):
            return "residual differs from MIS"
        if mis(reduced).edges != reduced.edges:
            return "MIS not idempotent"
        shuffled = list(net.edges)
        random.Random(len(shuffled)).shuffle(shuffled)
        if {e.id for e in mis(Net(net.nodes, tuple(shuffled), net.source, net.target)).edges} != {
            e.id for e in reduced.edges
        }:
            return "MIS depends on edge order"
    return None


def check_batch(seed: int, count: int, max_nodes: int, max_edges: int) -> List[str]:
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        net = random_net(rng, max_nodes=max_nodes, max_edges=max_edges)
        problem = check_net(net)
        if problem is not None:
            failures.append(f"{problem}\n{emit(net)}")
    return failures


def check_acyclic(seed: int, count: int, max_nodes: int, max_edges: int) -> List[str]:
    rng = random.Random(seed)
    failures = []
    done = 0
    while done < count:
        net = random_st_net(rng, acyclic=True, max_nodes=max_nodes, max_edges=max_edges)
        if net is None or not has_st_path(net):
            continue
        done += 1
        if is_ttsp(net) == (has_w_embedding(net) is None):
            continue
        failures.append(f"series-parallel verdict disagrees with embedding search\n{emit(net)}")
    return failures


def main():
    config = get_settings().fuzz
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--samples", type=int, default=config.samples)
    parser.add_argument("--acyclic-samples", type=int, default=config.acyclic_samples)
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--seed", type=int, default=config.seed)
    args = parser.parse_args()

    batch = 250
    seeds = range(args.seed, args.seed + (args.samples + batch - 1) // batch)
    logger.info(f"Fuzzing {args.samples} nets with {args.workers} workers")

    failures: List[str] = []
    with ProcessPoolExecutor(max_workers=args.workers) as pool:
        jobs = [
            pool.submit(check_batch, seed, min(batch, args.samples - i * batch), config.max_nodes, config.max_edges)
            for i, seed in enumerate(seeds)
        ]
        acyclic = pool.submit(check_acyclic, args.seed, args.acyclic_samples, config.max_nodes, config.max_edges)
        for job in jobs:
            failures.extend(job.result())
        failures.extend(acyclic.result())

    for failure in failures[:10]:
        logger.error(f"❌ {failure}")
    if failures:
        logger.error(f"❌ {len(failures)} failing nets")
        sys.exit(1)
    logger.info("✅ All differential checks passed")


if __name__ == "__main__":
    main()
