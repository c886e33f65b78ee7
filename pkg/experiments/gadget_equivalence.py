"""
Gadget equivalence: the two-copy gadget of an edge is irredundant exactly
when the edge is.

    python -m experiments.gadget_equivalence [--pairs N]
"""
import argparse
import random
import sys

sys.path.insert(1, "../")

from braess.core.netfile import emit
from braess.oracle.brute_force import irredundant_edges, is_irredundant
from braess.oracle.gadget import gadget_gstar
from braess.oracle.generators import random_net
from helpers.logger import get_logger
from helpers.settings import get_settings

logger = get_logger(__name__)


def main():
    config = get_settings().fuzz
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--pairs", type=int, default=config.gadget_pairs)
    parser.add_argument("--seed", type=int, default=config.seed)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    checked = failures = 0
    while checked < args.pairs:
        net = random_net(rng, max_nodes=config.gadget_max_nodes, max_edges=2 * config.gadget_max_nodes)
        # copied self-loops are redundant whatever the designated edge
        if any(e.tail == e.head for e in net.edges):
            continue
        allowed = [e.id for e in net.edges if e.head != net.source and e.tail != net.target]
        if not allowed:
            continue
        edge = rng.choice(allowed)
        checked += 1

        expected = edge in irredundant_edges(net)
        if is_irredundant(gadget_gstar(net, edge)) != expected:
            failures += 1
            logger.error(f"❌ edge {edge} (irredundant={expected}) disagrees with its gadget\n{emit(net)}")
        if checked % 100 == 0:
            logger.info(f"{checked}/{args.pairs} pairs checked")

    if failures:
        logger.error(f"❌ {failures} failing pairs")
        sys.exit(1)
    logger.info(f"✅ Gadget equivalence holds on {checked} pairs")


if __name__ == "__main__":
    main()
