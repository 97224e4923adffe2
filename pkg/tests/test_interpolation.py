import numpy as np
import pytest

from growforms.config import MetricsConfig, SimConfig
from growforms.evolve.interpolate import (
    EnvironmentMismatch,
    interpolate_genomes,
    run_interpolation,
)
from growforms.metrics import evaluate
from growforms.sim import grow
from growforms.stack import individual_id
from growforms.store import Store

from conftest import UNIT_SIM


# --------------------------------------------------------- pure genome math

def test_interpolation_point_count():
    for n in (0, 1, 5, 99):
        pts = interpolate_genomes([0.0] * 5, [1.0] * 5, n)
        assert len(pts) == n + 2


def test_endpoints_are_exact():
    a = np.array([0.1, 0.2, 0.3, 0.4, 0.5])
    b = np.array([0.9, 0.8, 0.7, 0.6, 0.5])
    pts = interpolate_genomes(a, b, 7)
    assert pts[0][0] == 0.0 and np.array_equal(pts[0][1], a)
    assert pts[-1][0] == 1.0 and np.array_equal(pts[-1][1], b)


def test_steps_are_equidistant():
    a = np.array([0.1, 0.9, 0.3, 0.7, 0.5])
    b = np.array([0.8, 0.2, 0.6, 0.4, 0.5])
    pts = interpolate_genomes(a, b, 9)
    ts = [t for t, _ in pts]
    assert ts == pytest.approx([i / 10 for i in range(11)], abs=1e-15)
    gaps = [np.linalg.norm(q - p)
            for (_, p), (_, q) in zip(pts, pts[1:])]
    assert max(gaps) - min(gaps) <= 1e-12


def test_negative_step_count_rejected():
    with pytest.raises(ValueError):
        interpolate_genomes([0.5] * 5, [0.5] * 5, -1)


# ----------------------------------------------------------- store-backed run

SIM = SimConfig.from_dict(UNIT_SIM)
MET = MetricsConfig()


def seed_endpoint(store, normalized, env_seed=3, sim=SIM):
    from growforms.genome import decode_genome
    stack = grow(decode_genome(normalized), env_seed, sim)
    fitness = evaluate(stack, MET)
    ind_id = individual_id(normalized, env_seed, sim, MET)
    store.put_individual(ind_id, normalized, env_seed, sim, MET,
                         fitness, stack=stack)
    return ind_id, fitness


@pytest.fixture(scope="module")
def seeded_store(tmp_path_factory):
    store = Store(tmp_path_factory.mktemp("interp-store"))
    id_a, fit_a = seed_endpoint(store, [0.4] * 5)
    id_b, fit_b = seed_endpoint(store, [0.6] * 5)
    return store, (id_a, fit_a), (id_b, fit_b)


def test_run_interpolation_entries(seeded_store):
    store, (id_a, fit_a), (id_b, fit_b) = seeded_store
    result = run_interpolation(id_a, id_b, 3, store)
    assert len(result.entries) == 5
    assert result.entries[0].individual_id == id_a
    assert result.entries[-1].individual_id == id_b
    # endpoint fitness reproduces the archived parent fitness exactly
    assert result.entries[0].fitness.overall == fit_a.overall
    assert result.entries[-1].fitness.overall == fit_b.overall
    # every in-between individual was persisted with layers
    for e in result.entries:
        assert store.get_individual(e.individual_id) is not None
        assert store.has_layers(e.individual_id)


def test_interpolation_document_shape(seeded_store):
    store, (id_a, _), (id_b, _) = seeded_store
    doc = run_interpolation(id_a, id_b, 2, store).to_dict()
    assert doc["version"] == 1
    assert doc["id_a"] == id_a and doc["id_b"] == id_b
    assert doc["steps"] == 2
    assert [e["t"] for e in doc["entries"]] == pytest.approx(
        [0.0, 1 / 3, 2 / 3, 1.0], abs=1e-12)
    for e in doc["entries"]:
        assert set(e) == {"t", "genome", "id", "fitness"}


def test_unknown_endpoint_rejected(seeded_store):
    store, (id_a, _), _ = seeded_store
    with pytest.raises(KeyError, match="missing"):
        run_interpolation(id_a, "missing", 1, store)
    with pytest.raises(KeyError, match="missing"):
        run_interpolation("missing", id_a, 1, store)


def test_environment_mismatch_rejected(seeded_store):
    store, (id_a, _), _ = seeded_store
    id_other, _ = seed_endpoint(store, [0.6] * 5, env_seed=4)
    with pytest.raises(EnvironmentMismatch):
        run_interpolation(id_a, id_other, 1, store)


def test_config_mismatch_rejected(seeded_store):
    store, (id_a, _), _ = seeded_store
    other_sim = SimConfig.from_dict({**UNIT_SIM, "timesteps": 41})
    id_other, _ = seed_endpoint(store, [0.6] * 5, sim=other_sim)
    with pytest.raises(EnvironmentMismatch):
        run_interpolation(id_a, id_other, 1, store)
