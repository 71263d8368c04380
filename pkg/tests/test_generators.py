from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle_chain, odd_simple_cycles
from topoface import (
    GENERIC,
    SIMPLE,
    Z2RectSpec,
    all_edges,
    as_chain,
    gen_twisted,
    gen_twisted_square,
    gen_z2_rect,
    lk2,
    twisted_probe,
    validate,
)

F = Fraction


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_twisted_is_simple(n):
    d = gen_twisted(n)
    assert len(d.edge_keys) == n * (n - 1) // 2
    assert validate(d, mode=SIMPLE).ok


def test_twisted_crossing_rule():
    # edges cross exactly when their index pairs are nested
    d = gen_twisted(6)
    pairs = d.crossings.crossing_pairs()
    for (a, b), (c, e) in pairs:
        lo, hi = min(a, c), max(b, e)
        assert {lo, hi} in ({a, b}, {c, e})  # one pair encloses the other


def test_twisted_probe_in_sample_odd_faces():
    n = 6
    d = gen_twisted(n)
    p = twisted_probe(n)
    for cyc in odd_simple_cycles(d)[:25]:
        assert lk2(d, as_chain(cycle_chain(cyc)), p) == 1


def test_twisted_square_stays_in_unit_square():
    d, probe = gen_twisted_square(5, F(1, 10))
    assert probe == (F(1, 2), F(1, 2))
    for poly in d.edges.values():
        for x, y in poly:
            assert 0 <= x <= 1 and 0 <= y <= 1
    assert validate(d, mode=SIMPLE).ok


def test_twisted_square_eps_validation():
    with pytest.raises(ValueError):
        gen_twisted_square(5, F(3, 2))


def test_z2_rect_generic_not_simple():
    spec = Z2RectSpec(4, 6, seed=3)
    d = gen_z2_rect(spec)
    assert validate(d, mode=GENERIC).ok
    assert not validate(d, mode=SIMPLE).ok  # adjacent edges cross by design
    assert spec.bits.shape == (len(all_edges(4)), 6)


def test_z2_rect_bits_deterministic():
    a = Z2RectSpec(4, 8, seed=11)
    b = Z2RectSpec(4, 8, seed=11)
    assert (a.bits == b.bits).all()
    assert gen_z2_rect(a) == gen_z2_rect(b)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 500))
def test_z2_rect_valid_across_seeds(seed):
    assert validate(gen_z2_rect(Z2RectSpec(4, 5, seed=seed)), mode=GENERIC).ok
