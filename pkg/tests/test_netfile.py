import networkx as nx
import pytest

from braess.core.netfile import emit, parse, parse_edge_list, to_dot
from braess.errors import NetFileError, NetPreconditionError
from tests import nets


def test_parse_wheatstone():
    net = parse(nets.WHEATSTONE_TEXT)
    assert (net.source, net.target) == (0, 3)
    assert [(e.id, e.tail, e.head) for e in net.edges] == [
        (0, 0, 1),
        (1, 0, 2),
        (2, 1, 2),
        (3, 1, 3),
        (4, 2, 3),
    ]


def test_parse_ignores_comments_and_blank_lines():
    net = parse("# a comment\n\ns 0\n  \nt 1\n# another\ne 0 1\n")
    assert len(net.edges) == 1


def test_parallel_edges_get_distinct_ids():
    net = parse("e 0 1\ns 0\nt 1\ne 0 1")
    assert [(e.id, e.tail, e.head) for e in net.edges] == [(0, 0, 1), (1, 0, 1)]


def test_source_equals_target_is_line_numbered():
    with pytest.raises(NetFileError) as err:
        parse("s 0\nt 0\n")
    assert err.value.line == 2
    assert "line 2" in str(err.value)


@pytest.mark.parametrize(
    "text, line",
    [
        ("s 0\nt 1\nx 0 1\n", 3),
        ("s 0\nt 1\ne 0\n", 3),
        ("s 0\ns 1\nt 2\n", 2),
        ("s 0\nt 1\ne 0 -1\n", 3),
        ("s zero\nt 1\n", 1),
    ],
)
def test_malformed_lines(text, line):
    with pytest.raises(NetFileError) as err:
        parse(text)
    assert err.value.line == line


def test_missing_target():
    with pytest.raises(NetFileError, match="missing target"):
        parse("s 0\ne 0 1\n")


def test_edge_list_without_terminals():
    edge_list = parse_edge_list("e 0 1\ne 1 2\n")
    assert edge_list.source is None
    assert edge_list.to_net(0, 2).target == 2
    with pytest.raises(NetPreconditionError):
        edge_list.to_net()


def test_emit_round_trip(detour_loop):
    again = parse(emit(detour_loop, header=["detour loop"]))
    assert again.edges == detour_loop.edges
    assert (again.source, again.target) == (detour_loop.source, detour_loop.target)
    assert nx.is_isomorphic(again.to_networkx(), detour_loop.to_networkx())


def test_emit_writes_header_comments(series2):
    text = emit(series2, header=["hello"])
    assert text.splitlines()[0] == "# hello"


def test_to_dot_marks_terminals_and_highlight(wheatstone):
    dot = to_dot(wheatstone, highlight=[2])
    assert "digraph" in dot
    assert "doublecircle" in dot
    assert "red" in dot
