"""Experiment harness: PSO vs GA across iteration budgets.

`compare` runs both optimizers over a grid of iteration budgets and trial
seeds, always feeding the same network and base seed to both sides, and
reports fitness, hop count and wall time per cell plus mean/median
aggregates and two directional verdict booleans (PSO at least as fit on
average, PSO at least as fast on average). `brute_force_best` enumerates
every simple path on small networks as an exact reference.
"""

import json
import statistics
from dataclasses import asdict, dataclass, field, replace

from .encoding import NoPathFound, Path
from .ga import GaParams, run_ga
from .pso import PsoParams, path_fitness, run_pso
from .rng import derive_seed
from .topology import (DEFAULT_BANDWIDTH_RANGE, DEFAULT_INTER_DENSITY,
                       DEFAULT_INTRA_DENSITY, Network, build_network)

CSV_HEADER = "budget,trial,pso_fitness,ga_fitness,pso_hops,ga_hops,pso_ms,ga_ms"

DEFAULT_ORACLE_CAP = 12


class OracleTooLarge(ValueError):
    """Network too big for exhaustive simple-path enumeration."""


class InvalidConfig(ValueError):
    """Experiment configuration violates a precondition."""


@dataclass
class ExperimentConfig:
    n_nodes: int = 21
    seed: int = 0
    source: int = 0
    destination: int | None = None  # defaults to n_nodes - 1
    budgets: tuple[int, ...] = tuple(range(5, 21))
    trials: int = 1
    pso: PsoParams = field(default_factory=PsoParams)
    ga: GaParams = field(default_factory=GaParams)
    bandwidth_mode: str = "static"
    intra_density: float = DEFAULT_INTRA_DENSITY
    inter_density: float = DEFAULT_INTER_DENSITY
    b_min: float = DEFAULT_BANDWIDTH_RANGE[0]
    b_max: float = DEFAULT_BANDWIDTH_RANGE[1]
    ensure_connected: bool = True
    fixed_topology: bool = False
    output_format: str = "csv"

    def __post_init__(self):
        if self.destination is None:
            self.destination = self.n_nodes - 1
        if self.n_nodes < 4:
            raise InvalidConfig(f"need at least 4 nodes, got {self.n_nodes}")
        if self.seed < 0:
            raise InvalidConfig(f"seed must be non-negative, got {self.seed}")
        if not self.budgets or any(b < 1 for b in self.budgets):
            raise InvalidConfig("iteration budgets must be a non-empty list of integers >= 1")
        if self.trials < 1:
            raise InvalidConfig(f"trials must be >= 1, got {self.trials}")
        if self.source == self.destination:
            raise InvalidConfig("source and destination must differ")
        for label, node in (("source", self.source), ("destination", self.destination)):
            if not 0 <= node < self.n_nodes:
                raise InvalidConfig(f"{label} {node} outside node range 0..{self.n_nodes - 1}")
        if self.bandwidth_mode not in ("static", "dynamic"):
            raise InvalidConfig(f"unknown bandwidth mode {self.bandwidth_mode!r}")
        if self.b_min <= 0 or self.b_min > self.b_max:
            raise InvalidConfig(f"need 0 < b_min <= b_max, got [{self.b_min}, {self.b_max}]")
        if not (0.0 <= self.intra_density <= 1.0 and 0.0 <= self.inter_density <= 1.0):
            raise InvalidConfig("link densities must lie in [0, 1]")
        if self.output_format not in ("csv", "json"):
            raise InvalidConfig(f"unknown output format {self.output_format!r}")


@dataclass
class IterationRecord:
    budget: int
    trial: int
    pso_fitness: float
    ga_fitness: float
    pso_hops: int
    ga_hops: int
    pso_ms: float
    ga_ms: float


@dataclass
class Report:
    config: ExperimentConfig
    records: list[IterationRecord]
    aggregates: dict
    verdicts: dict

    def to_json(self) -> dict:
        return {
            "config": asdict(self.config),
            "records": [asdict(r) for r in self.records],
            "aggregates": self.aggregates,
            "verdicts": self.verdicts,
        }


def trial_seed(base_seed, budget, trial) -> int:
    """Integer seed for one (budget, trial) grid cell."""
    return derive_seed(base_seed, budget, trial)


def _aggregate(records):
    out = {}
    for algo in ("pso", "ga"):
        fits = [getattr(r, f"{algo}_fitness") for r in records]
        times = [getattr(r, f"{algo}_ms") for r in records]
        out[algo] = {
            "mean_fitness": statistics.fmean(fits),
            "median_fitness": statistics.median(fits),
            "mean_ms": statistics.fmean(times),
            "median_ms": statistics.median(times),
        }
    return out


def compare(config: ExperimentConfig) -> Report:
    """Run the PSO-vs-GA grid described by `config`.

    Each (budget, trial) cell regenerates the network from its derived seed
    (unless fixed_topology, which reuses one network built from the config
    seed) and gives both optimizers that same network and the same seed.
    Deterministic except the wall-time fields.
    """
    fixed_net = None
    if config.fixed_topology:
        fixed_net = build_network(config.n_nodes, config.seed, config.intra_density,
                                  config.inter_density, config.ensure_connected,
                                  config.b_min, config.b_max)
    records = []
    for budget in config.budgets:
        for trial in range(config.trials):
            cell_seed = trial_seed(config.seed, budget, trial)
            net = fixed_net
            if net is None:
                net = build_network(config.n_nodes, cell_seed, config.intra_density,
                                    config.inter_density, config.ensure_connected,
                                    config.b_min, config.b_max)
            pso_params = replace(config.pso, iterations=budget,
                                 bandwidth_mode=config.bandwidth_mode)
            ga_params = replace(config.ga, kmax=budget)
            pso_res = run_pso(net, config.source, config.destination, pso_params, cell_seed)
            ga_res = run_ga(net, config.source, config.destination, ga_params, cell_seed)
            records.append(IterationRecord(
                budget=budget, trial=trial,
                pso_fitness=pso_res.fitness, ga_fitness=ga_res.fitness,
                pso_hops=pso_res.hops, ga_hops=ga_res.hops,
                pso_ms=pso_res.wall_ms, ga_ms=ga_res.wall_ms,
            ))
    aggregates = _aggregate(records)
    verdicts = {
        "pso_mean_fitness_ge_ga": aggregates["pso"]["mean_fitness"] >= aggregates["ga"]["mean_fitness"],
        "pso_mean_ms_le_ga": aggregates["pso"]["mean_ms"] <= aggregates["ga"]["mean_ms"],
    }
    return Report(config=config, records=records, aggregates=aggregates, verdicts=verdicts)


def brute_force_best(network: Network, source, destination, cap=DEFAULT_ORACLE_CAP):
    """Exhaustive search over all simple paths; returns (path, fitness).

    Depth-first enumeration in ascending neighbor order, so fitness ties
    resolve to the lexicographically smallest node sequence. Only meant for
    small networks; refuses anything above `cap` nodes.
    """
    if network.n_nodes > cap:
        raise OracleTooLarge(f"{network.n_nodes} nodes exceeds the enumeration cap {cap}")
    source, destination = int(source), int(destination)
    best_path: Path | None = None
    best_fitness = 0.0

    visited = {source}
    prefix = [source]

    def visit(node):
        nonlocal best_path, best_fitness
        for nb in network.neighbors(node):
            if nb == destination:
                candidate = Path(tuple(prefix) + (nb,))
                fit = path_fitness(network, candidate)
                if best_path is None or fit > best_fitness or (
                        fit == best_fitness and candidate.nodes < best_path.nodes):
                    best_path, best_fitness = candidate, fit
            elif nb not in visited:
                visited.add(nb)
                prefix.append(nb)
                visit(nb)
                prefix.pop()
                visited.discard(nb)

    visit(source)
    if best_path is None:
        raise NoPathFound(source, destination)
    return best_path, best_fitness


def render_csv(report: Report) -> str:
    """CSV text: fixed header, one row per record, 6-decimal fitness."""
    lines = [CSV_HEADER]
    for r in report.records:
        lines.append(f"{r.budget},{r.trial},{r.pso_fitness:.6f},{r.ga_fitness:.6f},"
                     f"{r.pso_hops},{r.ga_hops},{r.pso_ms:.3f},{r.ga_ms:.3f}")
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    return json.dumps(report.to_json(), indent=2) + "\n"


def emit(report: Report, output_format: str, destination_path) -> int:
    """Write the rendered report to a file; returns the byte count written."""
    if not report.records:
        raise ValueError("report has no records")
    if output_format == "csv":
        text = render_csv(report)
    elif output_format == "json":
        text = render_json(report)
    else:
        raise ValueError(f"unknown output format {output_format!r}")
    data = text.encode("utf-8")
    try:
        with open(destination_path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"cannot write report to {destination_path}: {exc}") from exc
    return len(data)
