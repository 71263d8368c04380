from fractions import Fraction

import pytest

from conftest import annulus_instance, canonical_cycle, face_cells, pentagon_instance
from topoface import (
    brute_force_four_faces,
    brute_force_max_disjoint,
    build_plane_subgraph,
    edge_key,
    extract_with_trace,
    faces_of,
    four_face,
    four_face_from_adjacent_triangles,
    four_face_in_face,
    four_face_in_triangle,
    gen_straightline,
    greedy_matching,
    heilbronn_min_area,
    inner_edges,
    laminar_decompose,
    pipeline_floor,
    random_point_drawing,
    triangle,
    verify_disjoint,
)
from topoface import geom
from topoface.errors import NotJordanError, PreconditionError
from topoface.facefinder import IntervalEdge

F = Fraction


@pytest.fixture(scope="module")
def quad():
    return gen_straightline([(F(0), F(0)), (F(4), F(0)), (F(5), F(4)), (F(1), F(5))])


def test_four_face_on_hull(quad):
    f = four_face(quad, (0, 1, 2, 3))
    assert f.area == F(37, 2)
    assert f.edge_keys == [edge_key(0, 1), edge_key(1, 2), edge_key(2, 3), edge_key(0, 3)]
    assert geom.robust_ray_parity(f.interior_point(), [f.curve + [f.curve[0]]]) == 1


def test_four_face_rejects_crossing_order(quad):
    with pytest.raises(NotJordanError):
        four_face(quad, (0, 2, 1, 3))
    with pytest.raises(NotJordanError):
        four_face(quad, (0, 1, 2, 2))


def test_triangle_emptiness(k5):
    assert triangle(k5, 0, 1, 4).empty
    t = triangle(k5, 0, 1, 2)
    assert not t.empty
    assert t.inside_vertices == [4]


def test_inner_edges_from_isolated_vertex(k5):
    H = faces_of(k5, [edge_key(0, 1), edge_key(1, 2), edge_key(2, 3), edge_key(0, 3)])
    got = inner_edges(k5, H, 4, need=2)
    assert len(got) >= 2
    crossing = k5.crossings
    for e in got:
        assert 4 in e
        assert all(not crossing.edges_cross(e, h) for h in H.edges)


def test_four_face_in_triangle(k5):
    t = triangle(k5, 0, 1, 2)
    f = four_face_in_triangle(k5, t, 4)
    assert 4 in f.cycle
    assert set(f.cells) <= set(t.cells)


def test_four_face_in_triangle_needs_inside_vertex(k5):
    with pytest.raises(PreconditionError):
        four_face_in_triangle(k5, triangle(k5, 0, 1, 4), 3)


def test_adjacent_triangles(quad):
    t1 = triangle(quad, 0, 1, 2)
    t2 = triangle(quad, 0, 2, 3)
    f = four_face_from_adjacent_triangles(quad, t1, t2)
    assert canonical_cycle(f.cycle) == (0, 1, 2, 3)


def test_laminar_chain_vs_antichain():
    nested = [IntervalEdge(1, 10, (1, 10)), IntervalEdge(2, 9, (2, 9)), IntervalEdge(3, 8, (3, 8))]
    out = laminar_decompose(nested)
    assert [e.lo for e in out["chain"]] == [1, 2, 3]
    flat = [IntervalEdge(1, 2, (1, 2)), IntervalEdge(3, 4, (3, 4)), IntervalEdge(5, 6, (5, 6))]
    out = laminar_decompose(flat)
    assert len(out["antichain"]) == 3
    assert laminar_decompose([]) == {"antichain": []}


def test_lemma_key_pentagon_and_annulus():
    for builder in (pentagon_instance, annulus_instance):
        d, H, face = builder(0)
        f = four_face_in_face(d, H, face)
        assert set(f.cells) <= face_cells(d, H, face)


def test_plane_subgraph_pipeline_instrumented():
    d = random_point_drawing(45, 2)
    from topoface import has_outer_vertex

    state = build_plane_subgraph(d, has_outer_vertex(d))
    assert state.i == 45 // 12
    assert len(state.H.edges) > d.n - 1  # spokes plus at least one free edge
    assert greedy_matching(state) is not None


def test_pipeline_matches_oracle_small():
    for seed in (0, 1):
        d = random_point_drawing(7, seed)
        faces, trace, d2 = extract_with_trace(d)
        assert verify_disjoint(d2, faces)
        oracle = {canonical_cycle(f.cycle) for f in brute_force_four_faces(d2)}
        assert {canonical_cycle(f.cycle) for f in faces} <= oracle
        assert len(faces) <= brute_force_max_disjoint(d2)


def test_pipeline_midscale_run():
    d = random_point_drawing(45, 0)
    faces, trace, d2 = extract_with_trace(d)
    assert len(faces) >= pipeline_floor(45) == 1
    assert verify_disjoint(d2, faces)
    assert trace["iterations"]


def test_heilbronn_triangle(k5):
    area, cyc = heilbronn_min_area(k5, 3)
    import itertools

    best = min(
        abs(geom.signed_area([k5.vertex_points[v] for v in tri]))
        for tri in itertools.combinations(range(5), 3)
    )
    assert area == best
    assert len(cyc) == 3


def test_heilbronn_four_small(quad):
    area, cyc = heilbronn_min_area(quad, 4)
    assert area > 0
    assert len(set(cyc)) == 4
