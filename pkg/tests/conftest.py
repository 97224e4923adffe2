import numpy as np
import pytest

from growforms.config import MetricsConfig, SimConfig
from growforms.genome import decode_genome
from growforms.metrics import evaluate
from growforms.sim import grow

# small, fast configuration shared by most integration-level tests
UNIT_SIM = {"env_size": [300, 300], "timesteps": 40, "warmup": 10}
# desk-scale simulation settings (60 recorded timesteps, 300x300 field)
DESK_SIM = {"env_size": [300, 300], "timesteps": 60, "warmup": 10}


@pytest.fixture(scope="session")
def unit_sim() -> SimConfig:
    return SimConfig.from_dict(UNIT_SIM)


@pytest.fixture(scope="session")
def desk_sim() -> SimConfig:
    return SimConfig.from_dict(DESK_SIM)


@pytest.fixture(scope="session")
def metrics_cfg() -> MetricsConfig:
    return MetricsConfig()


@pytest.fixture(scope="session")
def sample_stack(unit_sim):
    return grow(decode_genome([0.5] * 5), 3, unit_sim)


@pytest.fixture(scope="session")
def second_stack(unit_sim):
    return grow(decode_genome([0.6] * 5), 3, unit_sim)


@pytest.fixture(scope="session")
def sample_fitness(sample_stack, metrics_cfg):
    return evaluate(sample_stack, metrics_cfg)


def random_ring(rng: np.random.Generator, n: int, radius: float = 10.0,
                centre=(0.0, 0.0), wobble: float = 0.3) -> np.ndarray:
    """A star-shaped (hence simple) polygon with noisy radii."""
    theta = np.sort(rng.uniform(0.0, 2 * np.pi, n))
    r = radius * (1.0 + wobble * rng.uniform(-1.0, 1.0, n))
    return np.column_stack([
        centre[0] + r * np.cos(theta),
        centre[1] + r * np.sin(theta),
    ])


def regular_ring(n: int, radius: float, centre=(0.0, 0.0)) -> np.ndarray:
    theta = np.arange(n) * 2 * np.pi / n
    return np.column_stack([
        centre[0] + radius * np.cos(theta),
        centre[1] + radius * np.sin(theta),
    ])
