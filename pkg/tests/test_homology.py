from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from topoface import (
    as_chain,
    boundary,
    cell_boundary,
    cycle_space,
    inside_chain,
    is_cycle,
    lk2,
    planarize,
    push_forward,
    simulate_rect_areas,
    z2_area,
)
from topoface import geom
from topoface.errors import TooLargeError
from topoface.homology import CYCLE_SPACE_LIMIT

F = Fraction

edges_strategy = st.lists(
    st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda e: e[0] != e[1]),
    max_size=15,
)


def test_as_chain_normalizes_orientation():
    assert as_chain([(1, 0), (2, 1)]) == {(0, 1), (1, 2)}
    assert as_chain([(0, 1), (1, 0)]) == {(0, 1)}  # sets, not multisets


@given(edges_strategy, edges_strategy)
def test_boundary_is_linear(e1, e2):
    z1, z2 = as_chain(e1), as_chain(e2)
    assert boundary(z1 ^ z2) == boundary(z1) ^ boundary(z2)


def test_triangle_is_cycle_path_is_not():
    assert is_cycle([(0, 1), (1, 2), (2, 0)])
    assert not is_cycle([(0, 1), (1, 2)])
    assert boundary([(0, 1), (1, 2)]) == {0, 2}


@pytest.mark.parametrize("n,count", [(3, 1), (4, 7), (5, 63)])
def test_cycle_space_size(n, count):
    zs = list(cycle_space(n))
    assert len(zs) == count
    assert len(set(zs)) == count
    assert all(is_cycle(z) for z in zs)


def test_cycle_space_guard():
    with pytest.raises(TooLargeError):
        next(cycle_space(CYCLE_SPACE_LIMIT + 5))


def test_z2_area_triangle_matches_shoelace(k5):
    for tri in [(0, 1, 2), (0, 1, 4), (2, 3, 4)]:
        z = as_chain([(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])])
        pts = [k5.vertex_points[v] for v in tri]
        assert z2_area(k5, z) == abs(geom.signed_area(pts))


def test_z2_area_additive_on_nested_sum(k5):
    # hull cycle XOR inner triangle = annulus; areas subtract
    hull = as_chain([(0, 1), (1, 2), (2, 3), (3, 0)])
    tri = as_chain([(0, 1), (1, 4), (4, 0)])
    assert z2_area(k5, hull ^ tri) == z2_area(k5, hull) - z2_area(k5, tri)


def test_lk2_matches_membership(k5):
    z = as_chain([(0, 1), (1, 2), (2, 0)])
    centroid = (
        sum((k5.vertex_points[v][0] for v in (0, 1, 2)), F(0)) / 3,
        sum((k5.vertex_points[v][1] for v in (0, 1, 2)), F(0)) / 3,
    )
    assert lk2(k5, z, centroid) == 1
    assert lk2(k5, z, (F(100), F(100))) == 0


def test_inside_chain_boundary_round_trip(k5):
    arr = planarize(k5)
    for z in list(cycle_space(5))[:12]:
        cells = inside_chain(k5, z)
        assert cell_boundary(arr, cells) == push_forward(k5, z)


def test_simulate_reproducible():
    a = simulate_rect_areas(4, 64, 5, seed=9)
    b = simulate_rect_areas(4, 64, 5, seed=9)
    assert list(a.min_per_trial) == list(b.min_per_trial)
    assert a.grand_mean == b.grand_mean
    assert a.tail_bound == pytest.approx(np.exp(-64 / 128))


def test_simulate_shapes():
    rep = simulate_rect_areas(4, 32, 3, seed=0)
    assert len(rep.cycle_means) == 7
    assert len(rep.min_per_trial) == 3
    assert all(0 <= v <= 32 for row in np.atleast_2d(rep.cycle_means) for v in row)
