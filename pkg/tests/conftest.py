import math

import networkx as nx
import pytest

from swarmroute import Network, build_network


@pytest.fixture
def diamond_net():
    """Four nodes, two source-to-destination routes: 0-1-3 (fitness 0.5)
    and 0-2-3 (fitness 0.6)."""
    return Network.from_links(4, [(0, 1, 10.0), (1, 3, 10.0), (0, 2, 30.0), (2, 3, 20.0)])


@pytest.fixture
def line_net():
    """Line 0-1-2-3 with unit bandwidths; a unique simple path end to end."""
    return Network.from_links(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def small_net():
    return build_network(12, seed=42)


def make_networks(count, n_nodes=21, start_seed=0, **kwargs):
    return [build_network(n_nodes, seed=start_seed + i, **kwargs) for i in range(count)]


# ---- independent oracles (kept free of the library's own path/graph logic) ----

def fitness_oracle(network, nodes):
    """Second implementation of the bandwidth-quality score: first link's
    bandwidth over the exact (fsum) total along the node sequence."""
    bws = [network.bandwidth(u, v) for u, v in zip(nodes, nodes[1:])]
    return bws[0] / math.fsum(bws)


def assert_valid_path(network, path, source, destination):
    nodes = list(path.nodes)
    assert nodes[0] == source, f"path starts at {nodes[0]}, not {source}"
    assert nodes[-1] == destination, f"path ends at {nodes[-1]}, not {destination}"
    assert len(set(nodes)) == len(nodes), f"path repeats a node: {nodes}"
    for u, v in zip(nodes, nodes[1:]):
        assert network.has_link(u, v), f"({u}, {v}) is not a network link"
    assert path.hop_count == len(nodes) - 1


def bfs_reachable(network, start):
    seen = {start}
    frontier = [start]
    while frontier:
        node = frontier.pop()
        for nb in network.neighbors(node):
            if nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return seen


def to_nx(network):
    graph = nx.Graph()
    graph.add_nodes_from(range(network.n_nodes))
    graph.add_edges_from(network.links)
    return graph
