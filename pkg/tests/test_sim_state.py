import numpy as np
import pytest

from growforms.config import SimConfig
from growforms.genome import decode_genome
from growforms.sim.state import (
    init_colony,
    init_environment,
    organism_centres,
)


def cfg(**over):
    base = {"env_size": [300, 300], "timesteps": 10, "warmup": 0}
    base.update(over)
    return SimConfig.from_dict(base)


def test_environment_deterministic_in_seed():
    a = init_environment(cfg(), 5)
    b = init_environment(cfg(), 5)
    c = init_environment(cfg(), 6)
    for sa, sb in zip(a.sources, b.sources):
        assert np.array_equal(sa.position, sb.position)
    assert any(not np.array_equal(sa.position, sc.position)
               for sa, sc in zip(a.sources, c.sources))


def test_environment_sources_in_bounds():
    env = init_environment(cfg(), 1)
    assert len(env.sources) == cfg().n_sources
    for s in env.sources:
        assert 0 <= s.position[0] <= 300 and 0 <= s.position[1] <= 300
        assert s.remaining_units == cfg().source_units
    assert len(env.particle_value) == 0


def test_organism_centres_are_diagonal_midpoints():
    assert organism_centres(cfg()) == [
        (75, 75), (225, 75), (225, 225), (75, 225)]


def test_init_colony_geometry():
    c = cfg()
    genome = decode_genome([0.5] * 5)
    colony = init_colony(c, genome)
    assert len(colony.organisms) == 4
    assert colony.n_s == 0
    for org, centre in zip(colony.organisms, organism_centres(c)):
        assert org.n_cells == c.init_cells_per_organism
        radii = np.hypot(org.pos[:, 0] - centre[0], org.pos[:, 1] - centre[1])
        assert radii == pytest.approx(c.init_radius)
        assert np.all(org.vel == 0.0)
        assert org.energy == pytest.approx(genome.eps_max / 2)


def test_init_colony_rejects_overlap():
    with pytest.raises(ValueError):
        init_colony(cfg(init_radius=100.0), decode_genome([0.5] * 5))


def test_copies_are_independent():
    genome = decode_genome([0.5] * 5)
    colony = init_colony(cfg(), genome)
    dup = colony.copy()
    dup.organisms[0].pos += 1.0
    dup.organisms[0].energy[0] = 0.0
    assert colony.organisms[0].pos[0, 0] != dup.organisms[0].pos[0, 0]
    assert colony.organisms[0].energy[0] > 0.0

    env = init_environment(cfg(), 2)
    env2 = env.copy()
    assert env.rng.random() == env2.rng.random()  # cloned rng stream
