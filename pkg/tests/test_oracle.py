import random

import pytest
from hypothesis import given, settings

from braess.analysis.detector import is_vulnerable
from braess.core.graph_core import Net, make_st_connected
from braess.errors import EmbeddingBoundError, PathExplosionError
from braess.oracle.brute_force import (
    brute_force_vulnerable,
    disjoint_paths_witness,
    enumerate_simple_st_paths,
    has_w_embedding,
    irredundant_edges,
    is_irredundant,
    mis,
)
from braess.oracle.generators import chain_back_edge_net, layered_cyclic_net, random_net, random_st_net
from tests import nets
from tests.strategies import nets as random_nets


def test_wheatstone_paths(wheatstone):
    paths = enumerate_simple_st_paths(wheatstone)
    assert {p.nodes for p in paths} == {(0, 1, 3), (0, 2, 3), (0, 1, 2, 3)}


def test_series2_and_side_loop_paths(series2, side_loop):
    assert len(enumerate_simple_st_paths(series2)) == 1
    assert [p.nodes for p in enumerate_simple_st_paths(side_loop)] == [(0, 1, 2)]


def test_path_cap_is_enforced(wheatstone):
    with pytest.raises(PathExplosionError):
        enumerate_simple_st_paths(wheatstone, max_paths=2)


def test_irredundant_edges(wheatstone, side_loop):
    assert irredundant_edges(side_loop) == {0, 1}
    assert irredundant_edges(wheatstone) == {0, 1, 2, 3, 4}
    assert irredundant_edges(Net.from_pairs([(0, 1), (1, 2), (1, 0)], 0, 2)) == {0, 1}


def test_disjoint_paths_witness(side_loop):
    head, tail = disjoint_paths_witness(side_loop, 0)
    assert head.nodes == (0,) and tail.nodes == (1, 2)
    assert disjoint_paths_witness(side_loop, 2) is None
    assert disjoint_paths_witness(side_loop, 3) is None


def test_is_irredundant(wheatstone, side_loop):
    assert is_irredundant(wheatstone)
    assert not is_irredundant(side_loop)


def test_mis_examples(wheatstone, side_loop, detour_loop):
    assert [e.id for e in mis(side_loop).edges] == [0, 1]
    assert mis(side_loop).nodes == {0, 1, 2}
    assert mis(wheatstone).edges == wheatstone.edges
    # only y->x is redundant; u->x->y->v is a simple detour
    assert [e.id for e in mis(detour_loop).edges] == [0, 1, 2, 3, 4, 6]


def test_has_w_embedding_examples(wheatstone, diamond):
    assert has_w_embedding(wheatstone).branch_nodes == (0, 1, 2, 3)
    assert has_w_embedding(diamond) is None
    assert has_w_embedding(nets.BACK_LOOP) is None


def test_embedding_bound_is_enforced():
    chain = Net.from_pairs([(i, i + 1) for i in range(12)], 0, 12)
    with pytest.raises(EmbeddingBoundError):
        has_w_embedding(chain)


@pytest.mark.parametrize("name", sorted(nets.SAFE_FIXTURES))
def test_brute_force_safe_fixtures(name):
    assert not brute_force_vulnerable(nets.SAFE_FIXTURES[name])


def test_brute_force_vulnerable_wheatstone(wheatstone):
    assert brute_force_vulnerable(wheatstone)


@settings(max_examples=150, deadline=None)
@given(random_nets(max_nodes=6, max_edges=10))
def test_irredundancy_matches_disjoint_paths(net):
    keep = irredundant_edges(net)
    for edge in net.edges:
        assert (edge.id in keep) is (disjoint_paths_witness(net, edge.id) is not None)


@settings(max_examples=150, deadline=None)
@given(random_nets(max_nodes=6, max_edges=10))
def test_mis_properties(net):
    reduced = mis(net)
    assert mis(reduced).edges == reduced.edges
    assert {p.edges for p in enumerate_simple_st_paths(reduced)} == {p.edges for p in enumerate_simple_st_paths(net)}
    if reduced.edges:
        assert is_irredundant(reduced)
        on_paths = {v for p in enumerate_simple_st_paths(reduced) for v in p.nodes}
        assert on_paths == set(reduced.nodes)


@settings(max_examples=100, deadline=None)
@given(random_nets(max_nodes=6, max_edges=10))
def test_mis_independent_of_edge_order(net):
    rng = random.Random(len(net.edges))
    order = list(net.edges)
    rng.shuffle(order)
    shuffled = Net(net.nodes, tuple(order), net.source, net.target)
    assert {e.id for e in mis(shuffled).edges} == {e.id for e in mis(net).edges}


@settings(max_examples=100, deadline=None)
@given(random_nets(max_nodes=6, max_edges=10))
def test_supernet_of_vulnerable_net_is_vulnerable(net):
    sub = net.without_edges([e.id for e in net.edges][::2])
    if brute_force_vulnerable(sub):
        assert brute_force_vulnerable(net)
        assert is_vulnerable(net).vulnerable


def test_random_net_is_seeded():
    first = random_net(random.Random(3))
    second = random_net(random.Random(3))
    assert first == second


def test_random_acyclic_net_has_forward_edges():
    net = random_net(random.Random(5), acyclic=True, max_edges=20)
    assert all(e.tail < e.head for e in net.edges)


def test_random_st_net_is_pruned():
    net = random_st_net(random.Random(11))
    assert net is not None
    assert make_st_connected(net) == net


def test_layered_cyclic_net_size():
    net = layered_cyclic_net(50)
    assert len(net.nodes) == 50
    assert len(net.edges) >= 150
    assert net == layered_cyclic_net(50)


def test_chain_back_edge_net_shape():
    net = chain_back_edge_net(20, seed=4)
    assert len(net.nodes) == 20
    assert len(net.edges) == 19 + 40
    assert all(e.tail == e.id and e.head == e.id + 1 for e in net.edges[:19])
    assert all(e.head < e.tail for e in net.edges[19:])
    assert net == chain_back_edge_net(20, seed=4)
