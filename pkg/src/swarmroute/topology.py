"""Region-partitioned random networks with random link bandwidths.

Node ids 0..n-1 are split into contiguous regions; links are sampled with
separate densities for intra- and inter-region pairs, optionally on top of
a random spanning tree so every node pair stays reachable. Bandwidths are
drawn uniformly from a configurable range. All operations are pure and
deterministic per seed: they return new Network values and never mutate
their inputs.
"""

from dataclasses import dataclass, field

import numpy as np

from .rng import BANDWIDTH, PERTURB, TOPOLOGY, make_rng

DEFAULT_INTRA_DENSITY = 0.6
DEFAULT_INTER_DENSITY = 0.15
DEFAULT_BANDWIDTH_RANGE = (1.0, 100.0)


class InvalidNodeCount(ValueError):
    """Node count too small to partition into regions."""


class InvalidBandwidthRange(ValueError):
    """Bandwidth bounds must satisfy 0 < b_min <= b_max."""


@dataclass(frozen=True)
class RegionLayout:
    """Contiguous node-id blocks covering 0..n_nodes-1, one block per region.

    Every region holds n_nodes // n_regions nodes; remainder nodes all land
    in the last region. `ranges` holds half-open (start, stop) intervals.
    """

    n_nodes: int
    n_regions: int
    sizes: tuple[int, ...]
    ranges: tuple[tuple[int, int], ...]

    @property
    def base_region_size(self) -> int:
        """Size shared by every region except possibly the last."""
        return self.sizes[0]

    def region_of(self, node: int) -> int:
        for i, (start, stop) in enumerate(self.ranges):
            if start <= node < stop:
                return i
        raise ValueError(f"node {node} outside 0..{self.n_nodes - 1}")


def partition_regions(n_nodes: int) -> RegionLayout:
    """Split n_nodes ids into floor(log2(n_nodes)) contiguous regions.

    Each region gets the same base size; any remainder nodes go to the last
    region, so e.g. 21 nodes make 4 regions sized [5, 5, 5, 6].
    """
    n_nodes = int(n_nodes)
    if n_nodes < 4:
        raise InvalidNodeCount(f"need at least 4 nodes, got {n_nodes}")
    n_regions = n_nodes.bit_length() - 1  # floor(log2(n_nodes)), exact
    base = n_nodes // n_regions
    sizes = [base] * n_regions
    sizes[-1] += n_nodes % n_regions
    ranges = []
    start = 0
    for size in sizes:
        ranges.append((start, start + size))
        start += size
    return RegionLayout(n_nodes, n_regions, tuple(sizes), tuple(ranges))


@dataclass(frozen=True)
class Link:
    u: int
    v: int
    bandwidth: float


@dataclass
class Network:
    """Undirected weighted graph over a region layout.

    `links` maps id pairs (u, v) with u < v to a positive bandwidth; the
    adjacency view is derived once at construction. Instances are treated
    as immutable values: operations that change bandwidths return new
    networks.
    """

    layout: RegionLayout
    links: dict[tuple[int, int], float]
    seed: int
    bandwidth_range: tuple[float, float] | None = None
    _adjacency: dict[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.layout.n_nodes
        normalized = {}
        neighbor_sets = {node: [] for node in range(n)}
        for (u, v), bw in self.links.items():
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"link ({u}, {v}) outside node range 0..{n - 1}")
            if bw <= 0:
                raise ValueError(f"non-positive bandwidth {bw} on link ({u}, {v})")
            if u > v:
                u, v = v, u
            if (u, v) in normalized:
                raise ValueError(f"duplicate link ({u}, {v})")
            normalized[(u, v)] = float(bw)
            neighbor_sets[u].append(v)
            neighbor_sets[v].append(u)
        self.links = normalized
        self._adjacency = {node: tuple(sorted(nbrs)) for node, nbrs in neighbor_sets.items()}

    @property
    def n_nodes(self) -> int:
        return self.layout.n_nodes

    def neighbors(self, node: int) -> tuple[int, ...]:
        return self._adjacency[node]

    def has_link(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.links

    def bandwidth(self, u: int, v: int) -> float:
        return self.links[(min(u, v), max(u, v))]

    def iter_links(self):
        """Links as Link records, sorted by (u, v)."""
        for u, v in sorted(self.links):
            yield Link(u, v, self.links[(u, v)])

    @classmethod
    def from_links(cls, n_nodes, links, seed=0, bandwidth_range=None):
        """Build from (u, v) or (u, v, bandwidth) tuples; default bandwidth 1.0."""
        table = {}
        for item in links:
            u, v = item[0], item[1]
            table[(u, v)] = item[2] if len(item) > 2 else 1.0
        return cls(layout=partition_regions(n_nodes), links=table, seed=int(seed),
                   bandwidth_range=bandwidth_range)

    def to_json(self) -> dict:
        """JSON form: {pn, a, sizes, links, seed}, links sorted by (u, v)."""
        return {
            "pn": self.layout.n_nodes,
            "a": self.layout.n_regions,
            "sizes": list(self.layout.sizes),
            "links": [
                {"u": link.u, "v": link.v, "bandwidth": link.bandwidth}
                for link in self.iter_links()
            ],
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Network":
        layout = partition_regions(int(data["pn"]))
        if layout.n_regions != data["a"] or list(layout.sizes) != list(data["sizes"]):
            raise ValueError("region metadata does not match the node count")
        links = {(int(l["u"]), int(l["v"])): float(l["bandwidth"]) for l in data["links"]}
        return cls(layout=layout, links=links, seed=int(data["seed"]))


def generate_topology(n_nodes, seed, intra_density=DEFAULT_INTRA_DENSITY,
                      inter_density=DEFAULT_INTER_DENSITY, ensure_connected=True) -> Network:
    """Sample a random region-based network.

    Each intra-region node pair is linked with probability intra_density,
    each inter-region pair with inter_density. With ensure_connected a
    random spanning tree is laid down first, so every pair of nodes is
    reachable. Links carry unit bandwidth until assign_bandwidths.

    Args:
        n_nodes: total node count (>= 4).
        seed: non-negative generation seed; identical inputs reproduce the
            identical network.
        intra_density, inter_density: link probabilities in [0, 1].
        ensure_connected: add a spanning-tree backbone before sampling.
    """
    if not (0.0 <= intra_density <= 1.0 and 0.0 <= inter_density <= 1.0):
        raise ValueError("link densities must lie in [0, 1]")
    layout = partition_regions(n_nodes)
    gen = make_rng(seed, TOPOLOGY)
    links: dict[tuple[int, int], float] = {}

    if ensure_connected:
        order = gen.permutation(layout.n_nodes)
        for i in range(1, layout.n_nodes):
            u = int(order[i])
            v = int(order[int(gen.integers(0, i))])
            links[(min(u, v), max(u, v))] = 1.0

    region = np.repeat(np.arange(layout.n_regions), layout.sizes)
    iu, iv = np.triu_indices(layout.n_nodes, k=1)
    probs = np.where(region[iu] == region[iv], intra_density, inter_density)
    hits = gen.random(iu.size) < probs
    for u, v in zip(iu[hits].tolist(), iv[hits].tolist()):
        links.setdefault((u, v), 1.0)

    return Network(layout=layout, links=links, seed=int(seed))


def assign_bandwidths(network: Network, seed, b_min=DEFAULT_BANDWIDTH_RANGE[0],
                      b_max=DEFAULT_BANDWIDTH_RANGE[1]) -> Network:
    """New network with every link bandwidth drawn uniformly from [b_min, b_max]."""
    if b_min <= 0 or b_min > b_max:
        raise InvalidBandwidthRange(f"need 0 < b_min <= b_max, got [{b_min}, {b_max}]")
    gen = make_rng(seed, BANDWIDTH)
    keys = sorted(network.links)
    draws = gen.uniform(b_min, b_max, size=len(keys))
    links = {key: float(bw) for key, bw in zip(keys, draws)}
    return Network(layout=network.layout, links=links, seed=network.seed,
                   bandwidth_range=(float(b_min), float(b_max)))


def perturb_bandwidths(network: Network, seed, iteration: int, mode="dynamic") -> Network:
    """Re-sample every link bandwidth for one optimizer iteration.

    Dynamic mode draws a fresh uniform bandwidth per link from the network's
    assigned range, keyed by (seed, iteration) so any iteration's state can
    be reconstructed. Static mode is the identity.
    """
    if mode == "static":
        return network
    if mode != "dynamic":
        raise ValueError(f"unknown bandwidth mode {mode!r}")
    if network.bandwidth_range is None:
        raise ValueError("network has no assigned bandwidth range; run assign_bandwidths first")
    b_min, b_max = network.bandwidth_range
    gen = make_rng(seed, PERTURB, iteration)
    keys = sorted(network.links)
    draws = gen.uniform(b_min, b_max, size=len(keys))
    links = {key: float(bw) for key, bw in zip(keys, draws)}
    return Network(layout=network.layout, links=links, seed=network.seed,
                   bandwidth_range=network.bandwidth_range)


def build_network(n_nodes, seed, intra_density=DEFAULT_INTRA_DENSITY,
                  inter_density=DEFAULT_INTER_DENSITY, ensure_connected=True,
                  b_min=DEFAULT_BANDWIDTH_RANGE[0], b_max=DEFAULT_BANDWIDTH_RANGE[1]) -> Network:
    """generate_topology followed by assign_bandwidths under one seed."""
    net = generate_topology(n_nodes, seed, intra_density, inter_density, ensure_connected)
    return assign_bandwidths(net, seed, b_min, b_max)
