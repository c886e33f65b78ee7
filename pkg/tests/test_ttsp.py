import random

import pytest
from hypothesis import given, settings

from braess.analysis.ttsp import ReductionState, is_ttsp
from braess.core.graph_core import Net
from braess.errors import NetPreconditionError
from braess.oracle.brute_force import has_w_embedding
from tests import nets
from tests.strategies import st_nets


@pytest.mark.parametrize(
    "net, expected",
    [
        (nets.DIAMOND, True),
        (nets.WHEATSTONE, False),
        (nets.SERIES2, True),
        (nets.WHEATSTONE_SUBDIVIDED, False),
    ],
)
def test_fixture_verdicts(net, expected):
    assert is_ttsp(net) is expected


def test_parallel_edges_collapse():
    assert is_ttsp(Net.from_pairs([(0, 1), (0, 1), (1, 2), (1, 2)], 0, 2))


def test_single_edge_is_ttsp():
    assert is_ttsp(Net.from_pairs([(0, 1)], 0, 1))


def test_cyclic_net_is_rejected(side_loop):
    with pytest.raises(NetPreconditionError):
        is_ttsp(side_loop)


def test_dead_end_is_rejected():
    with pytest.raises(NetPreconditionError):
        is_ttsp(Net.from_pairs([(0, 1), (0, 2), (0, 3)], 0, 2))


def test_series_reduction_counts_steps(series2):
    state = ReductionState.from_net(series2)
    assert state.reducible(1)
    state.series_reduce(1)
    assert state.series_steps == 1
    assert state.is_single_edge()


@pytest.mark.parametrize("net", [nets.DIAMOND, nets.WHEATSTONE, nets.WHEATSTONE_SUBDIVIDED, nets.SERIES2])
def test_verdict_independent_of_reduction_order(net):
    expected = is_ttsp(net)
    rng = random.Random(7)
    assert all(is_ttsp(net, rng=rng) is expected for _ in range(100))


@settings(max_examples=150, deadline=None)
@given(st_nets(max_nodes=7, max_edges=11, acyclic=True))
def test_ttsp_iff_no_wheatstone_embedding(net):
    assert is_ttsp(net) is (has_w_embedding(net) is None)
