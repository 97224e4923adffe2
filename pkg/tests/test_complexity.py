import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growforms.config import MetricsConfig, SimConfig
from growforms.genome import decode_genome
from growforms.metrics.complexity import (
    complexity,
    convexity,
    quartile_dispersion,
    splitting_score,
)
from growforms.metrics.geometry import interior_angles
from growforms.stack import LayerSnapshot, LayerStack, quantize

from conftest import random_ring, regular_ring


def make_stack(layers, n_s=0):
    cfg = SimConfig.from_dict({"env_size": [100, 100],
                               "timesteps": len(layers), "warmup": 0})
    snaps = [LayerSnapshot(polygons=[quantize(r) for r in rings])
             for rings in layers]
    return LayerStack(genome=decode_genome([0.5] * 5), env_seed=0, config=cfg,
                      layers=snaps, n_s=n_s)


# ---------------------------------------------------------------- convexity

@pytest.mark.parametrize("n", [3, 4, 8, 50])
def test_convex_polygon_scores_one(n):
    assert convexity(regular_ring(n, 7.0)) == pytest.approx(1.0, abs=1e-9)


def test_star_scores_below_one():
    theta = np.arange(10) * np.pi / 5
    r = np.where(np.arange(10) % 2 == 0, 10.0, 2.0)
    star = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
    assert convexity(star) < 0.8


def test_convexity_at_most_one():
    rng = np.random.default_rng(0)
    for _ in range(30):
        ring = random_ring(rng, 15)
        assert convexity(ring) <= 1.0 + 1e-12


@given(st.integers(0, 30), st.floats(0.1, 10.0),
       st.floats(-50, 50), st.floats(-50, 50))
@settings(max_examples=30)
def test_convexity_similarity_invariant(seed, scale, dx, dy):
    ring = random_ring(np.random.default_rng(seed), 12)
    moved = ring * scale + [dx, dy]
    assert convexity(moved) == pytest.approx(convexity(ring), rel=1e-6)


def test_convexity_zero_perimeter_raises():
    with pytest.raises(ValueError):
        convexity(np.zeros((5, 2)))


# --------------------------------------------------------------- dispersion

def test_equal_angles_have_zero_dispersion():
    assert quartile_dispersion([1.3] * 10) == 0.0
    assert quartile_dispersion(interior_angles(regular_ring(8, 5.0))) == \
        pytest.approx(0.0, abs=1e-12)


def test_known_quartile_value():
    assert quartile_dispersion([1.0, 1.0, 3.0, 3.0]) == pytest.approx(0.5)


def test_matches_percentile_definition():
    rng = np.random.default_rng(2)
    for _ in range(50):
        a = rng.random(int(rng.integers(4, 40))) * 6.0
        q1, q3 = np.percentile(a, [25.0, 75.0])
        assert quartile_dispersion(a) == pytest.approx((q3 - q1) / (q3 + q1),
                                                       abs=1e-12)


def test_too_few_angles_zero():
    assert quartile_dispersion([1.0, 2.0, 3.0]) == 0.0


# ------------------------------------------------------------------ splits

def test_splitting_score_anchor():
    assert splitting_score(0, 0.1) == pytest.approx(0.1)


def test_splitting_score_strictly_increasing():
    scores = [splitting_score(n, 0.1) for n in range(12)]
    assert all(b > a for a, b in zip(scores, scores[1:]))
    assert all(0.0 < s < 1.0 for s in scores)


def test_splitting_score_rejects_negative():
    with pytest.raises(ValueError):
        splitting_score(-1, 0.1)


# -------------------------------------------------------------- aggregation

def test_complexity_is_mean_of_components():
    rng = np.random.default_rng(7)
    layers = [[quantize(random_ring(rng, 14, radius=8.0, centre=(50, 50)))]
              for _ in range(4)]
    cfg = MetricsConfig()
    report = complexity(make_stack(layers, n_s=3), cfg)
    cs = [convexity(r[0]) for r in layers]
    qs = [quartile_dispersion(interior_angles(r[0])) for r in layers]
    assert report.c_avg == pytest.approx(np.mean(cs), abs=1e-12)
    assert report.Q_avg == pytest.approx(np.mean(qs), abs=1e-12)
    assert report.S == pytest.approx(splitting_score(3, cfg.d))
    assert report.C == pytest.approx((report.c_avg + report.Q_avg + report.S) / 3,
                                     abs=1e-12)


def test_complexity_of_empty_stack_is_zero():
    report = complexity(make_stack([[], []]), MetricsConfig())
    assert report.C == 0.0


def test_complexity_on_grown_stack_in_unit_range(sample_stack, metrics_cfg):
    report = complexity(sample_stack, metrics_cfg)
    assert 0.0 < report.c_avg <= 1.0
    assert 0.0 <= report.Q_avg < 1.0
    assert 0.0 < report.S < 1.0
    assert 0.0 < report.C < 1.0
