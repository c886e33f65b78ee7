import pytest

from braess.analysis.cycle_analysis import (
    CycleKind,
    Embedding,
    RedundantEdges,
    SmallerCycle,
    analyse_cycle,
    band_limits,
    build_context,
    classify,
    entry_nodes,
    exit_nodes,
    fork_point,
    merge_point,
    neutral_hyperchord_sources,
    one_entry_exit_redundant,
    path_intersections,
    redundant_band,
    s_minimal_cycle,
)
from braess.analysis.detector import is_vulnerable
from braess.core.embedding import validate_embedding
from braess.core.graph_core import Cycle, Net, Path
from braess.errors import InvariantViolation
from tests import nets

SQUARE = Cycle((1, 2, 3, 4), (10, 11, 12, 13))


def test_s_minimal_cycle_side_loop(side_loop):
    cycle, eps_star = s_minimal_cycle(side_loop)
    assert eps_star == 1
    assert set(cycle.nodes) == {1, 3}
    assert cycle.follows(side_loop)


def test_s_minimal_cycle_prefers_self_loop():
    net = Net.from_pairs([(0, 1), (1, 1), (1, 2), (2, 1), (1, 3)], 0, 3)
    cycle, eps_star = s_minimal_cycle(net)
    assert eps_star == 1
    assert cycle.nodes == (1,) and cycle.edges == (1,)


def test_s_minimal_cycle_on_acyclic_net(wheatstone):
    assert s_minimal_cycle(wheatstone) is None


def test_s_minimal_cycle_closest_to_source(detour_loop):
    cycle, eps_star = s_minimal_cycle(detour_loop)
    assert eps_star == 4
    assert set(cycle.nodes) == {4, 5}


def test_entries_and_exits_detour_loop(detour_loop):
    cycle, _ = s_minimal_cycle(detour_loop)
    entries = entry_nodes(detour_loop, cycle)
    exits = exit_nodes(detour_loop, cycle)
    assert list(entries) == [4]
    assert list(exits) == [5]
    assert entries[4].nodes == (0, 1, 4)
    assert exits[5].nodes == (5, 2, 3)


def test_classify_one_entry_and_one_exit():
    assert classify(SQUARE, [1], [2, 3]).kind == CycleKind.ONE_ENTRY
    assert classify(SQUARE, [1, 2], [3]).kind == CycleKind.ONE_EXIT


def test_classify_splittable_regions():
    result = classify(SQUARE, [1, 2], [3, 4])
    assert result.kind == CycleKind.SPLITTABLE
    regions = result.regions
    assert regions.entry_region == {1, 2}
    assert regions.exit_region == {3, 4}
    assert regions.neutral_region == frozenset()
    assert regions.splitter_edge == 11
    assert regions.chord_targets == {4}


def test_classify_splittable_rotates_to_first_entry():
    result = classify(SQUARE, [3, 4], [1, 2])
    assert result.kind == CycleKind.SPLITTABLE
    assert result.regions.order.nodes == (3, 4, 1, 2)
    assert result.regions.first_exit == 1


def test_classify_shared_node_becomes_splitter():
    result = classify(SQUARE, [1, 2], [2, 3])
    assert result.kind == CycleKind.SPLITTABLE
    assert result.regions.splitter_node == 2
    assert result.regions.exit_region == {3}
    assert result.regions.neutral_region == {4}


def test_classify_alternating_is_not_splittable():
    assert classify(SQUARE, [1, 3], [2, 4]).kind == CycleKind.NON_SPLITTABLE


def test_classify_two_shared_nodes_is_not_splittable():
    assert classify(SQUARE, [1, 2], [1, 2]).kind == CycleKind.NON_SPLITTABLE


def test_one_entry_redundant_edge():
    result = classify(SQUARE, [2], [3, 4])
    assert one_entry_exit_redundant(SQUARE, result) == {10}
    result = classify(SQUARE, [1, 2], [3])
    assert one_entry_exit_redundant(SQUARE, result) == {12}


def test_one_entry_cycle_outcome(side_loop):
    cycle, eps_star = s_minimal_cycle(side_loop)
    outcome = analyse_cycle(side_loop, build_context(side_loop, cycle, eps_star))
    assert outcome == RedundantEdges(frozenset({3}))


def test_build_context_rejects_non_entry(side_loop):
    cycle, _ = s_minimal_cycle(side_loop)
    with pytest.raises(InvariantViolation):
        build_context(side_loop, cycle, 3)


def _split_cycle() -> Cycle:
    return Cycle((1, 2, 3, 4), nets.SPLIT_CYCLE_EDGES)


def test_splittable_without_chord_deletes_band():
    net = nets.SPLIT_CYCLE
    ctx = build_context(net, _split_cycle(), 1)
    assert ctx.xi_star == 3
    assert analyse_cycle(net, ctx) == RedundantEdges(frozenset({5}))


def test_hyperchord_source_found():
    net = nets.SPLIT_CYCLE_CHORD
    regions = classify(_split_cycle(), [1, 2], [3, 4]).regions
    sources = neutral_hyperchord_sources(net, _split_cycle(), regions)
    assert list(sources) == [1]
    assert sources[1].nodes == (1, 5, 4)


def test_splittable_with_chord_yields_embedding():
    net = nets.SPLIT_CYCLE_CHORD
    outcome = analyse_cycle(net, build_context(net, _split_cycle(), 1))
    assert isinstance(outcome, Embedding)
    assert validate_embedding(net, outcome.embedding)
    assert outcome.embedding.branch_nodes == (1, 3, 4, 6)


def test_non_splittable_two_cycle_yields_embedding():
    net = nets.TWO_CYCLE_BRIDGE
    cycle, eps_star = s_minimal_cycle(net)
    ctx = build_context(net, cycle, eps_star)
    assert classify(cycle, ctx.entry_paths, ctx.exit_paths).kind == CycleKind.NON_SPLITTABLE
    outcome = analyse_cycle(net, ctx)
    assert isinstance(outcome, Embedding)
    assert validate_embedding(net, outcome.embedding)
    assert outcome.embedding.branch_nodes == (0, 1, 2, 3)


def test_fork_and_merge_points():
    p = Path((0, 1, 2, 5), (0, 1, 2))
    q = Path((0, 1, 3, 5), (0, 3, 4))
    assert fork_point(p, q) == 1
    assert merge_point(p, q) == 5
    assert merge_point(Path((7, 8, 9), (0, 1)), Path((6, 8, 9), (2, 1))) == 8


def test_path_intersections_in_first_path_order():
    p = Path((0, 1, 2, 3), (0, 1, 2))
    q = Path((3, 9, 1), (5, 6))
    assert path_intersections(p, q) == [(1, 1, 2), (3, 3, 0)]


def _band_cycle() -> Cycle:
    return Cycle((1, 2, 3, 4, 5, 6), nets.BAND_CYCLE_EDGES)


def test_band_spans_the_neutral_region():
    net = nets.BAND_CYCLE
    ctx = build_context(net, _band_cycle(), 1)
    regions = classify(ctx.cycle, ctx.entry_paths, ctx.exit_paths).regions
    assert regions.neutral_region == {5, 6}
    assert neutral_hyperchord_sources(net, ctx.cycle, regions) == {}
    assert band_limits(net, ctx.cycle, regions) == (3, 6)
    # 4->5, 5->6 and 6->1
    assert redundant_band(net, ctx.cycle, regions) == {5, 6, 7}
    assert analyse_cycle(net, ctx) == RedundantEdges(frozenset({5, 6, 7}))


def test_hyperchord_through_neutral_node():
    net = nets.BAND_CYCLE_CHORD
    ctx = build_context(net, _band_cycle(), 1)
    regions = classify(ctx.cycle, ctx.entry_paths, ctx.exit_paths).regions
    sources = neutral_hyperchord_sources(net, ctx.cycle, regions)
    assert list(sources) == [1]
    assert sources[1].nodes == (1, 5, 4)
    assert sources[1].edges == (10, 11)
    # l at the neutral node 5, f at 5 as well
    assert band_limits(net, ctx.cycle, regions) == (4, 4)

    outcome = analyse_cycle(net, ctx)
    assert isinstance(outcome, Embedding)
    assert outcome.case == "hyperchord"
    assert outcome.embedding.branch_nodes == (1, 3, 4, 7)
    assert validate_embedding(net, outcome.embedding)


def _minimal_context(net: Net, nodes):
    cycle, eps_star = s_minimal_cycle(net)
    assert cycle.nodes == nodes
    return build_context(net, cycle, eps_star)


def _assert_closer_cycle(net: Net, ctx, outcome) -> None:
    assert isinstance(outcome, SmallerCycle)
    assert outcome.cycle.follows(net)
    assert ctx.eps_star in outcome.cycle
    closer = build_context(net, outcome.cycle, ctx.eps_star)
    assert closer.d_target < ctx.d_target


def test_entry_path_through_merge_point_gives_smaller_cycle():
    net = nets.ENTRY_VIA_MERGE
    ctx = _minimal_context(net, (2, 3, 4, 1))
    assert classify(ctx.cycle, ctx.entry_paths, ctx.exit_paths).kind == CycleKind.SPLITTABLE
    assert ctx.entry_paths[1].nodes == (0, 5, 1)
    assert ctx.d_target == 2

    outcome = analyse_cycle(net, ctx)
    _assert_closer_cycle(net, ctx, outcome)
    assert outcome.case == "entry path meets the shared exit tail"
    assert outcome.cycle == Cycle((2, 3, 5, 1), (4, 7, 2, 3))

    # the smaller cycle has the single exit 5, so its edge 5->1 is redundant
    closer = build_context(net, outcome.cycle, ctx.eps_star)
    assert closer.d_target == 1
    assert analyse_cycle(net, closer) == RedundantEdges(frozenset({2}))


def test_entry_path_through_merge_point_is_safe():
    verdict = is_vulnerable(nets.ENTRY_VIA_MERGE)
    assert not verdict.vulnerable
    assert verdict.stats.cases == ["entry path meets the shared exit tail"]
    assert verdict.stats.max_inner == 2
    assert verdict.deleted_edges == [(1, 2), (2, 3), (3, 10)]


@pytest.mark.parametrize(
    "net, case, branch_nodes",
    [
        (nets.ENTRY_VIA_FIRST_EXIT, "entry path meets only the first exit path", (0, 7, 2, 5)),
        (nets.ENTRY_VIA_SECOND_EXIT, "entry path meets only the second exit path", (0, 7, 2, 5)),
        (nets.ENTRY_CROSSING_EXITS, "entry path crosses between exit paths", (3, 7, 8, 5)),
    ],
)
def test_splittable_entry_path_meeting_exit_paths(net, case, branch_nodes):
    ctx = _minimal_context(net, (2, 3, 4, 1))
    assert classify(ctx.cycle, ctx.entry_paths, ctx.exit_paths).kind == CycleKind.SPLITTABLE
    assert ctx.eps_star == 2

    outcome = analyse_cycle(net, ctx)
    assert isinstance(outcome, Embedding)
    assert outcome.case == case
    assert outcome.embedding.branch_nodes == branch_nodes
    assert validate_embedding(net, outcome.embedding)

    verdict = is_vulnerable(net)
    assert verdict.vulnerable
    assert verdict.stats.cases == [case]


def test_last_hit_on_shared_tail_gives_smaller_cycle():
    net = nets.ALTERNATING_VIA_MERGE
    ctx = _minimal_context(net, (1, 2, 3, 4))
    assert classify(ctx.cycle, ctx.entry_paths, ctx.exit_paths).kind == CycleKind.NON_SPLITTABLE
    assert ctx.xi_star == 2
    assert ctx.d_target == 2

    outcome = analyse_cycle(net, ctx)
    _assert_closer_cycle(net, ctx, outcome)
    assert outcome.case == "last hit on the shared exit tail"
    assert outcome.cycle == Cycle((1, 2, 5, 3, 4), (3, 7, 2, 5, 6))


def test_last_hit_on_shared_tail_is_safe():
    verdict = is_vulnerable(nets.ALTERNATING_VIA_MERGE)
    assert not verdict.vulnerable
    assert verdict.stats.cases == ["last hit on the shared exit tail"]
    assert verdict.deleted_edges == [(1, 2), (2, 6)]


def test_last_hit_on_first_exit_path_yields_embedding():
    net = nets.ALTERNATING_MERGE_THEN_FIRST
    ctx = _minimal_context(net, (1, 2, 3, 4))
    assert classify(ctx.cycle, ctx.entry_paths, ctx.exit_paths).kind == CycleKind.NON_SPLITTABLE
    assert ctx.xi_star == 4
    assert ctx.entry_paths[3].nodes == (0, 5, 7, 3)

    outcome = analyse_cycle(net, ctx)
    assert isinstance(outcome, Embedding)
    assert outcome.case == "last hit on the first exit path"
    assert outcome.embedding.branch_nodes == (2, 7, 3, 5)
    assert validate_embedding(net, outcome.embedding)
    assert is_vulnerable(net).stats.cases == ["last hit on the first exit path"]


def test_detour_from_first_exit_path_gives_smaller_cycle():
    net = nets.ALTERNATING_DETOUR
    ctx = _minimal_context(net, (1, 2, 3, 4))
    assert classify(ctx.cycle, ctx.entry_paths, ctx.exit_paths).kind == CycleKind.NON_SPLITTABLE
    assert ctx.entry_paths[3].nodes == (0, 6, 7, 5, 8, 3)
    assert ctx.exit_paths[2].nodes == (2, 7, 5, 6)
    assert ctx.exit_paths[4].nodes == (4, 8, 5, 6)
    assert ctx.d_target == 3

    outcome = analyse_cycle(net, ctx)
    _assert_closer_cycle(net, ctx, outcome)
    assert outcome.case == "detour from the first exit path"
    assert outcome.cycle == Cycle((1, 2, 7, 5, 8, 3, 4), (6, 10, 3, 4, 5, 8, 9))
