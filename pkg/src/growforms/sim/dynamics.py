"""Colony dynamics: one timestep = nutrients, absorption, forces,
integration, division, culling, organism splits — in that fixed order.
The order is part of the determinism contract.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree

from ..config import MASS_COEFF, SimConfig
from ..genome import Genome
from ..stack import LayerSnapshot, LayerStack, quantize
from .backend import spring_repulsion_forces
from .state import Colony, Environment, _random_position, init_colony, init_environment

__all__ = [
    "update_nutrients",
    "absorb_nutrients",
    "compute_forces",
    "integrate",
    "divide_cells",
    "cull",
    "update_splits",
    "step",
    "grow",
]

TWO_PI = 2 * math.pi
PARTICLE_MIN_FRACTION = 0.01  # particles below 1% of initial value are removed


def _flatten(colony: Colony):
    """Concatenate organism arrays; ring_starts[o] is organism o's offset."""
    starts = np.zeros(len(colony.organisms) + 1, dtype=np.int64)
    for i, org in enumerate(colony.organisms):
        starts[i + 1] = starts[i] + org.n_cells
    if starts[-1] == 0:
        return np.empty((0, 2)), np.empty((0, 2)), starts
    pos = np.concatenate([o.pos for o in colony.organisms])
    vel = np.concatenate([o.vel for o in colony.organisms])
    return pos, vel, starts


def update_nutrients(env: Environment, config: SimConfig) -> Environment:
    """Decay drifting particles, respawn depleted sources, emit one particle
    per live source within uptake_radius of it."""
    if len(env.particle_value):
        env.particle_value = env.particle_value * config.nutrient_decay
        keep = env.particle_value >= PARTICLE_MIN_FRACTION * config.particle_value
        env.particle_pos = env.particle_pos[keep]
        env.particle_value = env.particle_value[keep]

    w, h = env.bounds
    for src in env.sources:
        if src.remaining_units <= 0:
            src.position = _random_position(env.rng, env.bounds)
            src.remaining_units = config.source_units
        src.remaining_units -= 1

    n = len(env.sources)
    if n:
        r = config.uptake_radius * np.sqrt(env.rng.random(n))
        theta = TWO_PI * env.rng.random(n)
        centres = np.array([src.position for src in env.sources])
        p = centres + np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        np.clip(p[:, 0], 0.0, w, out=p[:, 0])
        np.clip(p[:, 1], 0.0, h, out=p[:, 1])
        env.particle_pos = np.concatenate([env.particle_pos, p])
        env.particle_value = np.concatenate([
            env.particle_value,
            np.full(n, config.particle_value),
        ])
    return env


def absorb_nutrients(colony: Colony, env: Environment, genome: Genome,
                     config: SimConfig):
    """Each particle within uptake_radius of a cell is eaten by the nearest
    such cell (ties: lowest global cell index). Gains clamp at eps_max; a
    clamped cell is flagged at capacity for this step's division pass."""
    n_particles = len(env.particle_value)
    pos, _, starts = _flatten(colony)
    if n_particles == 0 or len(pos) == 0:
        return colony, env

    energy = np.concatenate([o.energy for o in colony.organisms])
    tree = cKDTree(pos)
    # upper bound is exclusive in query(); nextafter makes the radius inclusive
    ub = np.nextafter(config.uptake_radius, np.inf)
    dd, winners = tree.query(env.particle_pos, k=2, distance_upper_bound=ub)
    consumed = np.isfinite(dd[:, 0])
    winners = winners[:, 0]
    # ties (two equidistant nearest cells) go to the lowest global index
    ties = consumed & np.isfinite(dd[:, 1]) & (dd[:, 0] == dd[:, 1])
    for p_idx in np.nonzero(ties)[0]:
        cand = sorted(tree.query_ball_point(env.particle_pos[p_idx],
                                            config.uptake_radius))
        d2 = ((pos[cand] - env.particle_pos[p_idx]) ** 2).sum(axis=1)
        winners[p_idx] = cand[int(np.argmin(d2))]
    if consumed.any():
        # gains are positive, so accumulate-then-clamp equals clamping each
        # absorption in turn; a cell that crosses eps_max is at capacity
        gained = genome.eta * np.bincount(
            winners[consumed], weights=env.particle_value[consumed],
            minlength=len(pos))
        energy = energy + gained
    at_cap = energy >= genome.eps_max
    np.minimum(energy, genome.eps_max, out=energy)

    env.particle_pos = env.particle_pos[~consumed]
    env.particle_value = env.particle_value[~consumed]
    for i, org in enumerate(colony.organisms):
        org.energy = energy[starts[i]:starts[i + 1]]
        org.at_capacity = at_cap[starts[i]:starts[i + 1]]
    return colony, env


def compute_forces(colony: Colony, genome: Genome, config: SimConfig) -> list[np.ndarray]:
    """Per-organism force arrays: ring springs, colony-wide repulsion within
    the repulsion radius, drag, and the pending-split attraction."""
    pos, vel, starts = _flatten(colony)
    if len(pos) == 0:
        return []
    force = spring_repulsion_forces(
        pos, starts, genome.k, config.rest_length,
        config.repulsion_radius, genome.k,
    )
    force -= genome.nu * vel
    for i, org in enumerate(colony.organisms):
        if org.pending_split is not None:
            a = starts[i] + org.pending_split[0]
            b = starts[i] + org.pending_split[1]
            pull = genome.k * (pos[b] - pos[a])  # zero-rest-length spring
            force[a] += pull
            force[b] -= pull
    return [force[starts[i]:starts[i + 1]] for i in range(len(colony.organisms))]


def integrate(colony: Colony, forces: list[np.ndarray], genome: Genome,
              config: SimConfig) -> Colony:
    """Semi-implicit Euler step with wall clamping and metabolic cost."""
    mass = MASS_COEFF * genome.eps_max
    w, h = config.env_size
    dt = config.dt
    for org, force in zip(colony.organisms, forces):
        org.vel = org.vel + force * (dt / mass)
        # stability limiter: a cell may move at most one rest length per
        # step, which keeps stiff genomes from exploding the ring
        step_len = np.hypot(org.vel[:, 0], org.vel[:, 1]) * dt
        over = step_len > config.rest_length
        if over.any():
            org.vel[over] *= (config.rest_length / step_len[over])[:, None]
        org.pos = org.pos + org.vel * dt
        for axis, hi in ((0, w), (1, h)):
            low = org.pos[:, axis] < 0.0
            high = org.pos[:, axis] > hi
            org.pos[low, axis] = 0.0
            org.pos[high, axis] = hi
            org.vel[low | high, axis] = 0.0
        speed = np.hypot(org.vel[:, 0], org.vel[:, 1])
        cost = config.base_metabolic_cost * genome.eta + config.movement_cost * speed * mass
        org.energy = org.energy - cost
    return colony


def _bisector(prev_p, p, next_p):
    """Unit bisector of the two incident edge directions at p."""
    u1 = prev_p - p
    u2 = next_p - p
    n1 = np.hypot(*u1)
    n2 = np.hypot(*u2)
    if n1 > 0:
        u1 = u1 / n1
    if n2 > 0:
        u2 = u2 / n2
    b = u1 + u2
    nb = np.hypot(*b)
    if nb < 1e-12:
        # straight boundary: use the normal to the outgoing edge
        b = np.array([-u2[1], u2[0]])
        nb = np.hypot(*b)
        if nb == 0.0:
            return np.array([1.0, 0.0])
    return b / nb


def divide_cells(colony: Colony, genome: Genome, config: SimConfig) -> Colony:
    """Cells at energy capacity split into two half-energy children placed
    L0/4 either side of the parent along its edge bisector."""
    offset_len = config.rest_length / 4
    for org in colony.organisms:
        n = org.n_cells
        dividing = org.energy >= genome.eps_max
        if org.at_capacity is not None:
            dividing = dividing | org.at_capacity
        org.at_capacity = None
        if not dividing.any():
            continue
        counts = np.where(dividing, 2, 1)
        new_index = np.cumsum(counts) - counts  # old index -> new index
        new_pos = np.repeat(org.pos, counts, axis=0)
        new_vel = np.repeat(org.vel, counts, axis=0)
        new_energy = np.repeat(org.energy, counts)
        for i in np.nonzero(dividing)[0]:
            b = _bisector(org.pos[i - 1], org.pos[i], org.pos[(i + 1) % n])
            j = new_index[i]
            half = org.energy[i] / 2
            new_pos[j] = org.pos[i] + -1.0 * offset_len * b
            new_pos[j + 1] = org.pos[i] + 1.0 * offset_len * b
            new_energy[j] = half
            new_energy[j + 1] = half
        # children of wall-hugging parents must not leave the arena
        np.clip(new_pos[:, 0], 0.0, config.env_size[0], out=new_pos[:, 0])
        np.clip(new_pos[:, 1], 0.0, config.env_size[1], out=new_pos[:, 1])
        org.pos = new_pos
        org.vel = new_vel
        org.energy = new_energy
        if org.pending_split is not None:
            a, b = org.pending_split
            org.pending_split = (int(new_index[a]), int(new_index[b]))
    return colony


def cull(colony: Colony) -> Colony:
    """Remove spent cells (energy <= 0); drop organisms below 3 cells."""
    survivors = []
    for org in colony.organisms:
        alive = org.energy > 0.0
        if not alive.all():
            if org.pending_split is not None:
                a, b = org.pending_split
                if alive[a] and alive[b]:
                    shift = np.cumsum(~alive)
                    org.pending_split = (a - int(shift[a]), b - int(shift[b]))
                else:
                    org.pending_split = None
            org.pos = org.pos[alive]
            org.vel = org.vel[alive]
            org.energy = org.energy[alive]
        if org.n_cells >= 3:
            survivors.append(org)
    colony.organisms = survivors
    return colony


def update_splits(colony: Colony, genome: Genome, config: SimConfig) -> Colony:
    """Create pending splits on oversized organisms and complete any pending
    split whose anchor cells have been pulled within 2*rr of each other."""
    from .state import Organism

    result = []
    for org in colony.organisms:
        n = org.n_cells
        if org.pending_split is None:
            if n >= config.split_trigger_size:
                i_max = int(np.argmax(org.energy))
                org.pending_split = (i_max, (i_max + n // 2) % n)
            result.append(org)
            continue

        a, b = org.pending_split
        dist = float(np.hypot(*(org.pos[a] - org.pos[b])))
        if dist > 2 * config.repulsion_radius:
            result.append(org)
            continue

        # cut the ring at both cells; each side keeps a copy of both
        side_a = [(a + t) % n for t in range((b - a) % n + 1)]
        side_b = [(b + t) % n for t in range((a - b) % n + 1)]
        if len(side_a) < 3 or len(side_b) < 3:
            org.pending_split = None
            result.append(org)
            continue

        total = float(org.energy.sum())
        halves = []
        for side, fraction in ((side_a, genome.rho), (side_b, 1.0 - genome.rho)):
            idx = np.array(side)
            energy = org.energy[idx].copy()
            side_sum = float(energy.sum())
            if side_sum > 0 and total > 0:
                energy *= fraction * total / side_sum
            np.minimum(energy, genome.eps_max, out=energy)
            halves.append(Organism(
                pos=org.pos[idx].copy(),
                vel=org.vel[idx].copy(),
                energy=energy,
            ))
        result.extend(halves)
        colony.n_s += 1
    colony.organisms = result
    return colony


def step(colony: Colony, env: Environment, genome: Genome,
         config: SimConfig) -> tuple[Colony, Environment]:
    env = update_nutrients(env, config)
    colony, env = absorb_nutrients(colony, env, genome, config)
    forces = compute_forces(colony, genome, config)
    colony = integrate(colony, forces, genome, config)
    colony = divide_cells(colony, genome, config)
    colony = cull(colony)
    colony = update_splits(colony, genome, config)
    return colony, env


def grow(genome: Genome, env_seed: int, config: SimConfig) -> LayerStack:
    """Develop a colony and capture one contour snapshot per recorded step."""
    env = init_environment(config, env_seed)
    colony = init_colony(config, genome)
    for _ in range(config.warmup):
        colony, env = step(colony, env, genome, config)
    layers = []
    for _ in range(config.timesteps):
        colony, env = step(colony, env, genome, config)
        layers.append(LayerSnapshot(
            polygons=[quantize(org.pos) for org in colony.organisms]
        ))
    return LayerStack(
        genome=genome,
        env_seed=env_seed,
        config=config,
        layers=layers,
        n_s=colony.n_s,
        extinct=colony.is_extinct(),
    )
