import numpy as np
import pytest
from shapely.geometry import LineString, Point

from growforms.config import MetricsConfig, SimConfig
from growforms.genome import decode_genome
from growforms.metrics.printability import (
    _PolylineDistance,
    layer_support,
    printability,
    resample_ring,
)
from growforms.stack import LayerSnapshot, LayerStack, quantize

from conftest import random_ring, regular_ring

DELTA = 0.4  # mm, matches MetricsConfig.support_tolerance


def make_stack(layers, unit_to_mm=1.0, env=100.0):
    cfg = SimConfig.from_dict({
        "env_size": [env, env], "timesteps": len(layers), "warmup": 0,
        "unit_to_mm": unit_to_mm,
    })
    snaps = [LayerSnapshot(polygons=[quantize(r) for r in rings])
             for rings in layers]
    return LayerStack(genome=decode_genome([0.5] * 5), env_seed=0, config=cfg,
                      layers=snaps, n_s=0)


# ------------------------------------------------------------- resample_ring

def test_resample_spacing_and_count():
    ring = regular_ring(4, 10.0)
    pts = resample_ring(ring, 0.5)
    per = np.hypot(*np.diff(np.vstack([ring, ring[:1]]), axis=0).T).sum()
    assert len(pts) == max(int(np.ceil(per / 0.5)), 4)
    steps = np.hypot(*np.diff(np.vstack([pts, pts[:1]]), axis=0).T)
    assert steps.max() <= 0.5 + 1e-9


def test_resample_points_lie_on_ring():
    ring = random_ring(np.random.default_rng(4), 9, radius=6.0)
    pts = resample_ring(ring, 0.3)
    boundary = LineString(np.vstack([ring, ring[:1]]))
    for p in pts:
        assert boundary.distance(Point(p)) < 1e-9


# ------------------------------------------------------------- layer_support

def test_identical_layers_fully_supported():
    ring = regular_ring(30, 10.0, centre=(50, 50))
    layer = LayerSnapshot([ring])
    assert layer_support(layer, layer, DELTA, 1.0) == [1.0]


def test_distant_layers_unsupported():
    top = LayerSnapshot([regular_ring(30, 10.0, centre=(20, 20))])
    below = LayerSnapshot([regular_ring(30, 10.0, centre=(80, 80))])
    assert layer_support(top, below, DELTA, 1.0) == [0.0]


def test_empty_layers():
    ring = regular_ring(8, 5.0, centre=(50, 50))
    assert layer_support(LayerSnapshot([]), LayerSnapshot([ring]), DELTA, 1.0) == []
    assert layer_support(LayerSnapshot([ring]), LayerSnapshot([]), DELTA, 1.0) == [0.0]


def test_threshold_is_1p5_delta():
    below = LayerSnapshot([np.array([[0.0, 0.0], [100.0, 0.0], [100.0, -50.0],
                                     [0.0, -50.0]])])
    near = LayerSnapshot([np.array([[10.0, 1.5 * DELTA - 1e-6], [90.0, 1.5 * DELTA - 1e-6],
                                    [90.0, 1.5 * DELTA - 1e-5], [10.0, 1.5 * DELTA - 1e-5]])])
    far = LayerSnapshot([np.array([[10.0, 1.5 * DELTA + 0.01], [90.0, 1.5 * DELTA + 0.01],
                                   [90.0, 1.5 * DELTA + 0.02], [10.0, 1.5 * DELTA + 0.02]])])
    assert layer_support(near, below, DELTA, 1.0)[0] == pytest.approx(1.0)
    assert layer_support(far, below, DELTA, 1.0)[0] == pytest.approx(0.0)


@pytest.mark.parametrize("seed", range(10))
def test_layer_support_matches_offset_band_oracle(seed):
    rng = np.random.default_rng(seed)
    below_rings = [random_ring(rng, 20, radius=8.0,
                               centre=tuple(rng.uniform(20, 80, 2)))
                   for _ in range(2)]
    top_rings = [r + rng.normal(0, 1.0, r.shape) for r in below_rings]
    got = layer_support(LayerSnapshot(top_rings), LayerSnapshot(below_rings),
                        DELTA, 1.0)

    # oracle: contours thickened to width DELTA (shapely buffer), support
    # within DELTA of the band = within 1.5*DELTA of the polyline
    lines = [LineString(np.vstack([r, r[:1]])) for r in below_rings]
    for ring, frac in zip(top_rings, got):
        samples = resample_ring(ring, DELTA / 2)
        supported = [
            any(line.distance(Point(p)) <= 1.5 * DELTA for line in lines)
            for p in samples
        ]
        assert frac == pytest.approx(np.mean(supported), abs=0.02)


# -------------------------------------------------------------- printability

def test_wide_constant_stack_is_fully_printable():
    ring = regular_ring(40, 30.0, centre=(50, 50))  # 60 units = 60 mm wide
    stack = make_stack([[ring]] * 5)
    report = printability(stack, MetricsConfig())
    assert report.gate_pass
    assert report.P == 1.0
    assert report.per_layer_P == [1.0] * 5


def test_narrow_layer_fails_gate():
    wide = regular_ring(40, 30.0, centre=(50, 50))
    narrow = regular_ring(40, 2.0, centre=(50, 50))  # 4 mm < 5 mm minimum
    stack = make_stack([[wide], [narrow], [wide]])
    report = printability(stack, MetricsConfig())
    assert not report.gate_pass
    assert report.P == 0.0
    assert report.min_width_mm < 5.0


def test_unit_scaling_applies_to_gate():
    ring = regular_ring(40, 30.0, centre=(50, 50))  # 60 units
    # at 0.05 mm/unit the hull is 3 mm wide -> gate fails
    stack = make_stack([[ring]] * 3, unit_to_mm=0.05)
    assert printability(stack, MetricsConfig()).P == 0.0


def test_empty_layer_fails_gate():
    ring = regular_ring(40, 30.0, centre=(50, 50))
    stack = make_stack([[ring], [], [ring]])
    report = printability(stack, MetricsConfig())
    assert not report.gate_pass
    assert report.P == 0.0


def test_overhang_scores_minimum_layer():
    base = regular_ring(60, 30.0, centre=(50, 50))
    shifted = regular_ring(60, 30.0, centre=(80, 50))  # half the ring overhangs
    stack = make_stack([[base], [shifted]])
    report = printability(stack, MetricsConfig())
    assert report.gate_pass
    assert 0.0 < report.P < 1.0
    assert report.P == min(report.per_layer_P)


def test_polyline_distance_exactness():
    rng = np.random.default_rng(3)
    rings = [random_ring(rng, 12, radius=5.0, centre=(10, 10))]
    index = _PolylineDistance(rings, probe_spacing=0.7)
    pts = rng.uniform(0, 20, size=(300, 2))
    line = LineString(np.vstack([rings[0], rings[0][:1]]))
    expected = np.array([line.distance(Point(p)) <= 1.3 for p in pts])
    assert np.array_equal(index.within(pts, 1.3), expected)
