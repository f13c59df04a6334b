"""Command line interface.

Subcommands: `generate` (emit a network as JSON), `run-pso` / `run-ga`
(single optimization runs, JSON result), `compare` (full budget-grid
experiment, CSV or JSON), `oracle` (brute-force best path on small
networks). Exit codes: 0 success, 2 invalid configuration, 3 no path found.
"""

import argparse
import json
import sys

from .encoding import NoPathFound
from .ga import GaParams, run_ga
from .harness import (DEFAULT_ORACLE_CAP, ExperimentConfig, InvalidConfig,
                      brute_force_best, compare, render_csv, render_json)
from .pso import PsoParams, run_pso
from .topology import (DEFAULT_BANDWIDTH_RANGE, DEFAULT_INTER_DENSITY,
                       DEFAULT_INTRA_DENSITY, build_network)

EXIT_OK = 0
EXIT_INVALID_CONFIG = 2
EXIT_NO_PATH = 3

CROSSOVER_KINDS = {"1pt": "one_point", "2pt": "two_point"}
MUTATION_KINDS = {"swap": "swap", "adjswap": "adjacent_swap"}


def _add_network_flags(p):
    p.add_argument("--nodes", type=int, default=21, help="total node count (default 21)")
    p.add_argument("--seed", type=int, default=0, help="non-negative RNG seed (default 0)")
    p.add_argument("--intra-density", type=float, default=DEFAULT_INTRA_DENSITY,
                   help="intra-region link probability")
    p.add_argument("--inter-density", type=float, default=DEFAULT_INTER_DENSITY,
                   help="inter-region link probability")
    p.add_argument("--no-ensure-connected", action="store_true",
                   help="skip the spanning-tree connectivity backbone")
    p.add_argument("--bandwidth-min", type=float, default=DEFAULT_BANDWIDTH_RANGE[0])
    p.add_argument("--bandwidth-max", type=float, default=DEFAULT_BANDWIDTH_RANGE[1])
    p.add_argument("--out", help="write output to FILE instead of stdout")


def _add_endpoint_flags(p):
    p.add_argument("--source", type=int, default=0, help="source node id (default 0)")
    p.add_argument("--dest", type=int, default=None,
                   help="destination node id (default: highest id)")


def _add_ga_flags(p):
    p.add_argument("--population", type=int, default=40, help="GA population size")
    p.add_argument("--crossover", choices=sorted(CROSSOVER_KINDS), default="1pt")
    p.add_argument("--mutation", choices=sorted(MUTATION_KINDS), default="swap")
    p.add_argument("--crossover-prob", type=float, default=0.8)
    p.add_argument("--mutation-prob", type=float, default=0.1)
    p.add_argument("--no-elitism", action="store_true",
                   help="disable carrying the best chromosome into the next generation")


def _parse_budgets(text):
    """Budget list: '5-20' (inclusive range) or '5,8,12' or a single value."""
    text = text.strip()
    if "-" in text:
        lo, hi = text.split("-", 1)
        budgets = tuple(range(int(lo), int(hi) + 1))
    elif "," in text:
        budgets = tuple(int(part) for part in text.split(","))
    else:
        budgets = (int(text),)
    if not budgets:
        raise InvalidConfig(f"empty budget list {text!r}")
    return budgets


def build_parser():
    parser = argparse.ArgumentParser(
        prog="swarmroute",
        description="Region-based random networks with PSO and GA max-fitness path search.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a network and emit it as JSON")
    _add_network_flags(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run-pso", help="single PSO run, JSON result")
    _add_network_flags(p)
    _add_endpoint_flags(p)
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--particles", type=int, default=40)
    p.add_argument("--dynamic-bandwidth", action="store_true",
                   help="re-sample link bandwidths every iteration")
    p.set_defaults(func=cmd_run_pso)

    p = sub.add_parser("run-ga", help="single GA run, JSON result")
    _add_network_flags(p)
    _add_endpoint_flags(p)
    p.add_argument("--iterations", type=int, default=100, help="generation count")
    _add_ga_flags(p)
    p.set_defaults(func=cmd_run_ga)

    p = sub.add_parser("compare", help="PSO vs GA over a grid of iteration budgets")
    _add_network_flags(p)
    _add_endpoint_flags(p)
    p.add_argument("--budgets", default="5-20",
                   help="iteration budgets: '5-20', '5,8,12' or a single value")
    p.add_argument("--trials", type=int, default=1, help="trial seeds per budget")
    p.add_argument("--particles", type=int, default=40)
    _add_ga_flags(p)
    p.add_argument("--dynamic-bandwidth", action="store_true")
    p.add_argument("--fixed-topology", action="store_true",
                   help="reuse one network (built from --seed) for every grid cell")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("oracle", help="brute-force best path on a small network")
    _add_network_flags(p)
    _add_endpoint_flags(p)
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP,
                   help="refuse networks above this node count")
    p.set_defaults(func=cmd_oracle)

    return parser


def _check_run_args(args):
    if args.seed < 0:
        raise InvalidConfig(f"seed must be non-negative, got {args.seed}")
    if args.dest is None:
        args.dest = args.nodes - 1
    if args.source == args.dest:
        raise InvalidConfig("source and destination must differ")
    for label, node in (("source", args.source), ("destination", args.dest)):
        if not 0 <= node < args.nodes:
            raise InvalidConfig(f"{label} {node} outside node range 0..{args.nodes - 1}")


def _build_network(args):
    return build_network(args.nodes, args.seed, args.intra_density, args.inter_density,
                         not args.no_ensure_connected, args.bandwidth_min, args.bandwidth_max)


def _output(text, out_path):
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def cmd_generate(args):
    if args.seed < 0:
        raise InvalidConfig(f"seed must be non-negative, got {args.seed}")
    net = _build_network(args)
    _output(json.dumps(net.to_json(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_run_pso(args):
    _check_run_args(args)
    net = _build_network(args)
    params = PsoParams(n_particles=args.particles, iterations=args.iterations,
                       bandwidth_mode="dynamic" if args.dynamic_bandwidth else "static")
    result = run_pso(net, args.source, args.dest, params, args.seed)
    _output(json.dumps(result.to_json(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_run_ga(args):
    _check_run_args(args)
    net = _build_network(args)
    params = GaParams(pop_size=args.population, kmax=args.iterations,
                      crossover_kind=CROSSOVER_KINDS[args.crossover],
                      crossover_prob=args.crossover_prob,
                      mutation_kind=MUTATION_KINDS[args.mutation],
                      mutation_prob=args.mutation_prob,
                      elitism=not args.no_elitism)
    result = run_ga(net, args.source, args.dest, params, args.seed)
    _output(json.dumps(result.to_json(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_compare(args):
    if args.dest is None:
        args.dest = args.nodes - 1
    config = ExperimentConfig(
        n_nodes=args.nodes, seed=args.seed, source=args.source, destination=args.dest,
        budgets=_parse_budgets(args.budgets), trials=args.trials,
        pso=PsoParams(n_particles=args.particles),
        ga=GaParams(pop_size=args.population,
                    crossover_kind=CROSSOVER_KINDS[args.crossover],
                    crossover_prob=args.crossover_prob,
                    mutation_kind=MUTATION_KINDS[args.mutation],
                    mutation_prob=args.mutation_prob,
                    elitism=not args.no_elitism),
        bandwidth_mode="dynamic" if args.dynamic_bandwidth else "static",
        intra_density=args.intra_density, inter_density=args.inter_density,
        b_min=args.bandwidth_min, b_max=args.bandwidth_max,
        ensure_connected=not args.no_ensure_connected,
        fixed_topology=args.fixed_topology, output_format=args.format)
    report = compare(config)
    text = render_csv(report) if args.format == "csv" else render_json(report)
    _output(text, args.out)
    print("verdicts: pso_mean_fitness_ge_ga={} pso_mean_ms_le_ga={}".format(
        report.verdicts["pso_mean_fitness_ge_ga"], report.verdicts["pso_mean_ms_le_ga"]),
        file=sys.stderr)
    return EXIT_OK


def cmd_oracle(args):
    _check_run_args(args)
    net = _build_network(args)
    path, fitness = brute_force_best(net, args.source, args.dest, cap=args.cap)
    payload = {"path": list(path.nodes), "fitness": fitness, "hops": path.hop_count}
    _output(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoPathFound as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_PATH
    except ValueError as exc:  # covers InvalidConfig, bad ranges, bad params
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_CONFIG


if __name__ == "__main__":
    sys.exit(main())
