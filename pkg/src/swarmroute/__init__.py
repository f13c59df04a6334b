"""Seedable region-based random networks with PSO and GA path search.

Networks partition node ids into contiguous regions and carry random link
bandwidths. Paths are encoded indirectly as node-priority vectors; both a
particle swarm and a genetic algorithm search that space for the path
maximizing first-link bandwidth over total path bandwidth. A harness runs
both optimizers over iteration-budget grids and emits comparison reports.
"""

from .encoding import (DeadEnd, DecodeParams, NoPathFound, Path, decode,
                       eligible_neighbors, heuristic_allows, random_priorities)
from .ga import (GaParams, GaResult, crossover_one_point, crossover_two_point,
                 mutate_adjacent_swap, mutate_swap, run_ga, select_parents)
from .harness import (ExperimentConfig, InvalidConfig, IterationRecord, OracleTooLarge,
                      Report, brute_force_best, compare, emit, render_csv, render_json)
from .pso import (InvalidPath, Particle, PsoParams, PsoResult, Swarm, init_swarm,
                  path_fitness, run_pso)
from .topology import (InvalidBandwidthRange, InvalidNodeCount, Link, Network,
                       RegionLayout, assign_bandwidths, build_network,
                       generate_topology, partition_regions, perturb_bandwidths)

__all__ = [
    "DeadEnd", "DecodeParams", "NoPathFound", "Path", "decode",
    "eligible_neighbors", "heuristic_allows", "random_priorities",
    "GaParams", "GaResult", "crossover_one_point", "crossover_two_point",
    "mutate_adjacent_swap", "mutate_swap", "run_ga", "select_parents",
    "ExperimentConfig", "InvalidConfig", "IterationRecord", "OracleTooLarge",
    "Report", "brute_force_best", "compare", "emit", "render_csv", "render_json",
    "InvalidPath", "Particle", "PsoParams", "PsoResult", "Swarm", "init_swarm",
    "path_fitness", "run_pso",
    "InvalidBandwidthRange", "InvalidNodeCount", "Link", "Network", "RegionLayout",
    "assign_bandwidths", "build_network", "generate_topology", "partition_regions",
    "perturb_bandwidths",
]

__version__ = "0.1.0"
