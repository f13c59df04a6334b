"""Particle swarm search over priority vectors.

Each particle's position is a priority vector; decoding it yields a path
whose fitness is the first-link bandwidth divided by the total bandwidth
along the path (higher is better, 1.0 for a direct link). Personal and
global bests track the best decoded paths seen so far; velocities follow
the standard inertia + cognitive + social update with componentwise
clamping.
"""

import time
from dataclasses import dataclass

import numpy as np

from .encoding import DeadEnd, DecodeParams, Path, decode, draw_valid_priorities
from .rng import PSO_INIT, PSO_STEP, make_rng
from .topology import Network, perturb_bandwidths


class InvalidPath(ValueError):
    """Path unusable for fitness evaluation (no links, or a missing link)."""


def path_fitness(network: Network, path: Path) -> float:
    """First-link bandwidth over the summed bandwidth of all links on the path.

    Always in (0, 1]; exactly 1.0 for single-link paths.
    """
    try:
        bws = [network.bandwidth(u, v) for u, v in path.links()]
    except KeyError as exc:
        raise InvalidPath(f"path {path} uses a link missing from the network") from exc
    if not bws:
        raise InvalidPath("path has no links")
    return bws[0] / sum(bws)


@dataclass
class PsoParams:
    n_particles: int = 40
    inertia: float = 0.729
    cognitive: float = 1.49445
    social: float = 1.49445
    v_max: float = 1.0
    iterations: int = 100
    bandwidth_mode: str = "static"  # or "dynamic"

    def __post_init__(self):
        if self.n_particles < 2:
            raise ValueError(f"need at least 2 particles, got {self.n_particles}")
        if self.iterations < 1:
            raise ValueError(f"need at least 1 iteration, got {self.iterations}")
        if self.v_max <= 0:
            raise ValueError(f"v_max must be positive, got {self.v_max}")
        if self.bandwidth_mode not in ("static", "dynamic"):
            raise ValueError(f"unknown bandwidth mode {self.bandwidth_mode!r}")


@dataclass(eq=False)
class Particle:
    position: np.ndarray
    velocity: np.ndarray
    pbest_position: np.ndarray
    pbest_fitness: float
    pbest_path: Path


@dataclass(eq=False)
class Swarm:
    particles: list[Particle]
    gbest_position: np.ndarray
    gbest_fitness: float
    gbest_path: Path
    params: PsoParams
    iteration: int
    source: int
    destination: int
    decode_params: DecodeParams


def init_swarm(network: Network, source, destination, params: PsoParams, seed) -> Swarm:
    """Swarm of particles with random decodable priorities.

    Velocities start at zero, each personal best at the initial position,
    and the global best at the best initial personal best. Deterministic
    per seed; raises NoPathFound if a particle exhausts its retry budget.
    """
    dparams = DecodeParams.for_network(network)
    gen = make_rng(seed, PSO_INIT)
    particles = []
    for _ in range(params.n_particles):
        pos, path = draw_valid_priorities(network, source, destination, dparams, gen)
        fit = path_fitness(network, path)
        particles.append(Particle(position=pos, velocity=np.zeros_like(pos),
                                  pbest_position=pos.copy(), pbest_fitness=fit,
                                  pbest_path=path))
    best = 0
    for i, p in enumerate(particles):
        if p.pbest_fitness > particles[best].pbest_fitness:
            best = i
    leader = particles[best]
    return Swarm(particles=particles, gbest_position=leader.pbest_position.copy(),
                 gbest_fitness=leader.pbest_fitness, gbest_path=leader.pbest_path,
                 params=params, iteration=0, source=int(source), destination=int(destination),
                 decode_params=dparams)


def step(swarm: Swarm, network: Network, seed) -> Swarm:
    """One iteration: score current positions, refresh bests, then move.

    In dynamic mode the network's bandwidths are re-sampled for this
    iteration before scoring. A position that decodes to a dead end scores
    0 for the iteration and leaves its personal best untouched. Velocities
    are clamped componentwise to [-v_max, v_max]. Returns a new Swarm; the
    input swarm is not modified.
    """
    params = swarm.params
    iteration = swarm.iteration + 1
    net = perturb_bandwidths(network, seed, iteration, mode=params.bandwidth_mode)

    pbest_pos, pbest_fit, pbest_path = [], [], []
    for p in swarm.particles:
        try:
            path = decode(net, p.position, swarm.source, swarm.destination, swarm.decode_params)
            fit = path_fitness(net, path)
        except DeadEnd:
            path, fit = None, 0.0
        if path is not None and fit > p.pbest_fitness:
            pbest_pos.append(p.position.copy())
            pbest_fit.append(fit)
            pbest_path.append(path)
        else:
            pbest_pos.append(p.pbest_position)
            pbest_fit.append(p.pbest_fitness)
            pbest_path.append(p.pbest_path)

    gbest_pos = swarm.gbest_position
    gbest_fit = swarm.gbest_fitness
    gbest_path = swarm.gbest_path
    for i in range(len(pbest_fit)):
        if pbest_fit[i] > gbest_fit:
            gbest_pos, gbest_fit, gbest_path = pbest_pos[i], pbest_fit[i], pbest_path[i]

    positions = np.stack([p.position for p in swarm.particles])
    velocities = np.stack([p.velocity for p in swarm.particles])
    pbests = np.stack(pbest_pos)
    gen = make_rng(seed, PSO_STEP, iteration)
    r1 = gen.random(positions.shape)
    r2 = gen.random(positions.shape)
    velocities = (params.inertia * velocities
                  + params.cognitive * r1 * (pbests - positions)
                  + params.social * r2 * (gbest_pos - positions))
    velocities = np.clip(velocities, -params.v_max, params.v_max)
    positions = positions + velocities

    particles = [
        Particle(position=positions[i], velocity=velocities[i],
                 pbest_position=pbest_pos[i], pbest_fitness=pbest_fit[i],
                 pbest_path=pbest_path[i])
        for i in range(len(swarm.particles))
    ]
    return Swarm(particles=particles, gbest_position=gbest_pos, gbest_fitness=gbest_fit,
                 gbest_path=gbest_path, params=params, iteration=iteration,
                 source=swarm.source, destination=swarm.destination,
                 decode_params=swarm.decode_params)


@dataclass
class PsoResult:
    path: Path
    fitness: float
    hops: int
    iterations: int
    trace: list[tuple[int, float]]
    wall_ms: float

    def to_json(self) -> dict:
        return {
            "path": list(self.path.nodes),
            "fitness": self.fitness,
            "hops": self.hops,
            "iterations": self.iterations,
            "trace": [{"iter": it, "gbest": fit} for it, fit in self.trace],
            "wall_ms": self.wall_ms,
        }


def run_pso(network: Network, source, destination, params: PsoParams, seed) -> PsoResult:
    """Full PSO run; deterministic per seed except the wall_ms field.

    The reported fitness is the global-best path scored on the network's
    final-iteration state (identical to the tracked global best in static
    mode). The trace holds the tracked global best after init (entry 0)
    and after each iteration.
    """
    t0 = time.perf_counter()
    swarm = init_swarm(network, source, destination, params, seed)
    trace = [(0, swarm.gbest_fitness)]
    for _ in range(params.iterations):
        swarm = step(swarm, network, seed)
        trace.append((swarm.iteration, swarm.gbest_fitness))
    final_net = perturb_bandwidths(network, seed, params.iterations, mode=params.bandwidth_mode)
    fitness = path_fitness(final_net, swarm.gbest_path)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    return PsoResult(path=swarm.gbest_path, fitness=fitness, hops=swarm.gbest_path.hop_count,
                     iterations=params.iterations, trace=trace, wall_ms=wall_ms)
