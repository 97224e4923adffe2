import numpy as np
import pytest

from growforms.config import SimConfig
from growforms.export.mesh import to_mesh
from growforms.genome import decode_genome
from growforms.metrics.geometry import perimeter
from growforms.stack import LayerSnapshot, LayerStack, quantize

from conftest import regular_ring


def make_stack(layers, unit_to_mm=0.25, layer_height=0.2):
    cfg = SimConfig.from_dict({"env_size": [600, 600],
                               "timesteps": len(layers), "warmup": 0,
                               "unit_to_mm": unit_to_mm,
                               "layer_height": layer_height})
    snaps = [LayerSnapshot(polygons=[quantize(r) for r in rings])
             for rings in layers]
    return LayerStack(genome=decode_genome([0.5] * 5), env_seed=0, config=cfg,
                      layers=snaps, n_s=0)


def parse_obj(text):
    verts, faces = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "#":
            continue
        if parts[0] == "v":
            verts.append([float(v) for v in parts[1:]])
        elif parts[0] == "f":
            faces.append([int(v) for v in parts[1:]])
    return np.array(verts), faces


def test_vertex_count_and_z_levels():
    layers = [[regular_ring(10, 30.0, centre=(100, 100))],
              [regular_ring(10, 25.0, centre=(100, 100)),
               regular_ring(10, 10.0, centre=(200, 200))]]
    verts, _ = parse_obj(to_mesh(make_stack(layers), resample_n=16))
    assert len(verts) == 3 * 16
    assert set(np.round(verts[:, 2], 9)) == {0.0, 0.2}
    assert np.count_nonzero(verts[:, 2] == 0.0) == 16


def test_faces_are_one_indexed_triangles_in_range():
    layers = [[regular_ring(8, 30.0, centre=(100, 100))],
              [regular_ring(8, 28.0, centre=(101, 100))]]
    verts, faces = parse_obj(to_mesh(make_stack(layers), resample_n=12))
    assert faces
    for f in faces:
        assert len(f) == 3
        assert all(1 <= i <= len(verts) for i in f)


def test_two_triangles_per_edge_per_pair():
    ring = regular_ring(9, 30.0, centre=(100, 100))
    _, faces = parse_obj(to_mesh(make_stack([[ring], [ring], [ring]]),
                                 resample_n=20))
    # two joined pairs, each contributing 2 * resample_n triangles
    assert len(faces) == 2 * 2 * 20


def test_walls_connect_adjacent_layers():
    ring = regular_ring(9, 30.0, centre=(100, 100))
    verts, faces = parse_obj(to_mesh(make_stack([[ring], [ring]]),
                                     resample_n=8))
    for f in faces:
        zs = {round(verts[i - 1][2], 9) for i in f}
        assert zs == {0.0, 0.2}  # every wall triangle spans both layers


def test_unmatched_contours_left_open():
    layers = [[regular_ring(8, 30.0, centre=(100, 100)),
               regular_ring(8, 10.0, centre=(400, 400))],
              [regular_ring(8, 29.0, centre=(100, 100))]]
    _, faces = parse_obj(to_mesh(make_stack(layers), resample_n=10))
    assert len(faces) == 2 * 10  # only the nearest pair is lofted


def test_pairing_is_by_nearest_centroid():
    a_lo = regular_ring(8, 10.0, centre=(100, 100))
    b_lo = regular_ring(8, 10.0, centre=(400, 400))
    a_hi = regular_ring(8, 12.0, centre=(105, 100))
    b_hi = regular_ring(8, 12.0, centre=(395, 400))
    verts, faces = parse_obj(
        to_mesh(make_stack([[a_lo, b_lo], [b_hi, a_hi]]), resample_n=6))
    for f in faces:
        xy = verts[[i - 1 for i in f], :2] / 0.25  # back to world units
        spread = np.ptp(xy, axis=0)
        assert spread.max() < 50.0  # no triangle stretches between colonies


def test_resampled_rings_preserve_scale_and_length():
    ring = regular_ring(32, 40.0, centre=(100, 100))
    verts, _ = parse_obj(to_mesh(make_stack([[ring]]), resample_n=64))
    centre = verts[:, :2].mean(axis=0)
    assert centre == pytest.approx([25.0, 25.0], abs=1e-6)
    radii = np.hypot(*(verts[:, :2] - centre).T)
    assert radii == pytest.approx(np.full(64, 10.0), abs=0.1)
    closed = np.vstack([verts[:, :2], verts[:1, :2]])
    length = np.hypot(*np.diff(closed, axis=0).T).sum()
    assert length == pytest.approx(perimeter(quantize(ring)) * 0.25, rel=0.01)


def test_resample_count_validation(sample_stack):
    with pytest.raises(ValueError):
        to_mesh(sample_stack, resample_n=2)


def test_empty_and_degenerate_stacks():
    text = to_mesh(make_stack([[], []]), resample_n=8)
    verts, faces = parse_obj(text)
    assert len(verts) == 0 and len(faces) == 0
    point = np.array([[5.0, 5.0]] * 4)
    verts, _ = parse_obj(to_mesh(make_stack([[point]]), resample_n=8))
    assert len(verts) == 8


def test_grown_stack_exports(sample_stack):
    verts, faces = parse_obj(to_mesh(sample_stack, resample_n=32))
    expected = 32 * sum(len(s.polygons) for s in sample_stack.layers)
    assert len(verts) == expected
    assert faces
