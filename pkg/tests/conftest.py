import sys

import networkx as nx
import pytest
from hypothesis import strategies as st

from chaincore.graph import Graph, from_edges, load_edge_list


def text_graph(text: str) -> Graph:
    return load_edge_list(text)


@pytest.fixture
def k4():
    return from_edges(nx.complete_graph(4).edges())


@pytest.fixture
def k2():
    return text_graph("a b\n")


@pytest.fixture
def c5():
    return from_edges(nx.cycle_graph(5).edges())


@pytest.fixture
def p3():
    return text_graph("a b\nb c\n")


@pytest.fixture
def p4():
    return text_graph("1 2\n2 3\n3 4\n")


@pytest.fixture
def star():
    # center first, so node 0 is the hub
    return text_graph("c a\nc b\nc d\n")


@st.composite
def graphs(draw, min_nodes=2, max_nodes=9, connected=False):
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=len(pairs), unique=True))
    if connected:
        G = nx.Graph(chosen)
        if not nx.is_connected(G):
            # stitch components into a chain so the draw is never wasted
            comps = [sorted(c)[0] for c in nx.connected_components(G)]
            chosen += list(zip(comps, comps[1:]))
    return from_edges(chosen)


def nx_of(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
