import networkx as nx
import pytest
from hypothesis import given

from strategies import graphs
from vdbkit.errors import Graph6Error, MalformedHeader, NonCanonicalPadding, TrailingGarbage
from vdbkit.graph import from_edge_list
from vdbkit.graph6 import decode_graph6, encode_graph6, read_graph6_lines, write_graph6_lines


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_single_vertex():
    g = from_edge_list(1, [])
    assert encode_graph6(g) == b"@"
    assert decode_graph6("@") == g


def test_known_strings(c4, k4):
    assert encode_graph6(k4) == b"C~"
    assert encode_graph6(c4) == b"Cl"


def test_header_and_newline(k4):
    assert decode_graph6(b">>graph6<<C~\n") == k4


@given(graphs(max_n=12))
def test_round_trip(g):
    assert decode_graph6(encode_graph6(g)) == g


@given(graphs(max_n=12))
def test_matches_networkx_encoder(g):
    ref = nx.to_graph6_bytes(to_nx(g), header=False).rstrip(b"\n")
    assert encode_graph6(g) == ref
    back = nx.from_graph6_bytes(ref)
    assert sorted(tuple(sorted(e)) for e in back.edges()) == g.edges()


def test_large_size_header():
    g = from_edge_list(70, [(i, i + 1) for i in range(69)])
    data = encode_graph6(g)
    assert data[0] == 126
    assert data == nx.to_graph6_bytes(to_nx(g), header=False).rstrip(b"\n")
    assert decode_graph6(data) == g


@pytest.mark.parametrize("bad, exc", [
    ("", MalformedHeader),
    ("C", MalformedHeader),  # body missing
    ("C~ ", MalformedHeader),  # space is outside 63..126
    ("?", MalformedHeader),  # zero vertices
    ("~A", MalformedHeader),  # truncated long header
    ("C~~", TrailingGarbage),
    ("Bx", NonCanonicalPadding),  # n=3 uses 3 bits; low padding bits set
])
def test_malformed(bad, exc):
    with pytest.raises(exc):
        decode_graph6(bad)
    assert issubclass(exc, Graph6Error)


def test_lines(c4, k4):
    blob = write_graph6_lines([c4, k4])
    assert blob == b"Cl\nC~\n"
    assert read_graph6_lines(blob) == [c4, k4]
