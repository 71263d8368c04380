"""Acceptance gate: eleven end-to-end criteria, one verdict line each.

Everything here runs on exact rational arithmetic unless a criterion is
explicitly statistical; seeds are fixed so the suite is reproducible.
"""

import gc
import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import (
    annulus_instance,
    canonical_cycle,
    cycle_chain,
    face_cells,
    odd_simple_cycles,
    pentagon_instance,
)
from topoface import (
    Z2RectSpec,
    all_edges,
    as_chain,
    boundary,
    brute_force_four_faces,
    brute_force_max_disjoint,
    build_plane_subgraph,
    cell_boundary,
    cycle_space,
    extract_with_trace,
    four_face_in_face,
    gen_twisted,
    gen_twisted_square,
    gen_z2_rect,
    has_outer_vertex,
    inside_chain,
    lk2,
    pipeline_floor,
    planarize,
    push_forward,
    random_point_drawing,
    read_drawing,
    simulate_rect_areas,
    twisted_probe,
    verify_disjoint,
    write_drawing,
    z2_area,
)
from topoface import geom
from topoface.errors import LemmaViolation

F = Fraction
SPAN = 1 << 20  # random drawings live on [0, SPAN)^2; /SPAN maps to unit square


def verdict(num: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


# ------------------------------------------------------------------ 1 & 2


def test_criterion_1_twisted_odd_faces_share_probe():
    t0 = time.perf_counter()
    checked = 0
    ok = True
    for n in range(4, 10):
        d = gen_twisted(n)
        p = twisted_probe(n)
        for cyc in odd_simple_cycles(d):
            checked += 1
            if lk2(d, as_chain(cycle_chain(cyc)), p) != 1:
                ok = False
    dt = time.perf_counter() - t0
    verdict(1, ok and dt < 60,
            f"probe inside all {checked} odd faces, n=4..9, {dt:.1f}s")


def test_criterion_2_twisted_square_odd_face_areas():
    t0 = time.perf_counter()
    worst = F(1)
    checked = 0
    for n in range(5, 9):
        d, _probe = gen_twisted_square(n, F(1, 10))
        for cyc in odd_simple_cycles(d):
            checked += 1
            worst = min(worst, z2_area(d, as_chain(cycle_chain(cyc))))
    dt = time.perf_counter() - t0
    verdict(2, worst >= F(9, 10) and dt < 60,
            f"min odd-face area {float(worst):.4f} >= 9/10 over {checked} faces, {dt:.1f}s")


# ------------------------------------------------------------------ 3 & 4

CRIT3_NS = (40, 64, 80)


@pytest.fixture(scope="session")
def pipeline_runs():
    runs = {}
    for n in CRIT3_NS:
        instances = [("twisted", gen_twisted(n))]
        instances += [(f"rand{s}", random_point_drawing(n, s)) for s in range(10)]
        for name, d in instances:
            t0 = time.perf_counter()
            try:
                faces, trace, d2 = extract_with_trace(d)
                err = None
            except LemmaViolation as exc:  # reportable research event
                faces, trace, d2, err = [], {}, d, exc
            runs[(n, name)] = (d2, faces, trace, err, time.perf_counter() - t0)
    return runs


def _face_revalidates(d, f, deep: bool) -> bool:
    if len(set(f.cycle)) != 4:
        return False
    cd = d.crossings
    if any(cd.edges_cross(a, b) for a, b in itertools.combinations(f.edge_keys, 2)):
        return False
    if not geom.polyline_is_simple(f.curve, closed=True):
        return False
    if geom.robust_ray_parity(f.interior_point(), [f.curve + [f.curve[0]]]) != 1:
        return False
    if deep:  # cells of the arrangement agree with the curve geometry
        arr = planarize(d)
        cells = f.cells
        if sum(arr.cells[c].area for c in cells) != f.area:
            return False
        if cell_boundary(arr, cells) != push_forward(d, as_chain(f.edge_keys)):
            return False
    return True


def test_criterion_3_pipeline_validity_and_count(pipeline_runs):
    ok = True
    details = []
    for (n, name), (d2, faces, trace, err, dt) in sorted(pipeline_runs.items()):
        good = (
            err is None
            and dt < 600
            and len(faces) >= max(1, pipeline_floor(n))
            and verify_disjoint(d2, faces)
            and all(_face_revalidates(d2, f, deep=(n == 40)) for f in faces)
        )
        if n == 40:  # drop the cached arrangement: ~0.5 GB per instance
            d2._arrangement = None
            gc.collect()
        ok = ok and good
        details.append(f"n={n} {name}: {len(faces)} faces {dt:.1f}s{'' if good else ' BAD'}")
    verdict(3, ok, "; ".join(details))


def test_criterion_4_unit_square_pigeonhole(pipeline_runs):
    ok = True
    for (n, name), (d2, faces, trace, err, dt) in sorted(pipeline_runs.items()):
        if not name.startswith("rand") or not faces:
            continue
        areas = [f.area / SPAN**2 for f in faces]  # exact unit-square areas
        if sum(areas) > 1 or min(areas) > F(1, len(areas)):
            ok = False
    verdict(4, ok, "unit-square faces: sum <= 1 and min <= 1/count, exactly")


# ------------------------------------------------------------------ 5


def test_criterion_5_oracle_equivalence():
    t0 = time.perf_counter()
    ok = True
    for seed in range(50):
        n = 5 + seed % 3
        d = random_point_drawing(n, seed)
        faces, _trace, d2 = extract_with_trace(d)
        oracle = {canonical_cycle(f.cycle) for f in brute_force_four_faces(d2)}
        if not {canonical_cycle(f.cycle) for f in faces} <= oracle:
            ok = False
        if len(faces) > brute_force_max_disjoint(d2):
            ok = False
    dt = time.perf_counter() - t0
    verdict(5, ok and dt < 120, f"50 drawings (n=5..7) against brute force, {dt:.1f}s")


# ------------------------------------------------------------------ 6 & 7


def test_criterion_6_cycle_space(k5):
    counts = {n: len(list(cycle_space(n))) for n in (3, 4, 5)}
    ok = counts == {3: 1, 4: 7, 5: 63}
    ok = ok and all(not boundary(z) for n in (3, 4, 5) for z in cycle_space(n))
    arr = planarize(k5)
    for z in cycle_space(5):
        if cell_boundary(arr, inside_chain(k5, z)) != push_forward(k5, z):
            ok = False
    verdict(6, ok, f"cycle counts {counts}, all closed, 63 fill boundaries re-check")


def test_criterion_7_area_vs_monte_carlo(k5):
    t0 = time.perf_counter()
    cycles = list(cycle_space(5))
    rng = np.random.default_rng(42)
    pick = rng.choice(len(cycles), size=10, replace=False)
    box = F(17 * 15)  # bounding box [0,17]x[0,15] of the fixed K5
    N = 10_000
    xs = rng.integers(0, 17 * SPAN, size=N)
    ys = rng.integers(0, 15 * SPAN, size=N)
    pts = [(F(int(x), SPAN), F(int(y), SPAN)) for x, y in zip(xs, ys)]
    worst = 0.0
    for idx in pick:
        z = cycles[idx]
        p = float(z2_area(k5, z) / box)
        phat = sum(lk2(k5, z, q) for q in pts) / N
        sigma = math.sqrt(max(p * (1 - p), 1e-12) / N)
        worst = max(worst, abs(phat - p) / sigma)
    dt = time.perf_counter() - t0
    verdict(7, worst <= 3 and dt < 60,
            f"10 cycles x 10^4 points, worst deviation {worst:.2f} sigma, {dt:.1f}s")


# ------------------------------------------------------------------ 8 & 9


def test_criterion_8_bit_model_statistics():
    t0 = time.perf_counter()
    m, trials = 1600, 20
    rep = simulate_rect_areas(5, m, trials, seed=0)
    band = 3 * (math.sqrt(m) / 2) / math.sqrt(trials)
    means = np.asarray(rep.cycle_means, dtype=float)
    ok_min = min(rep.min_per_trial) >= m / 3
    ok_mean = bool(np.all(np.abs(means - m / 2) <= band))
    dt = time.perf_counter() - t0
    verdict(8, ok_min and ok_mean and dt < 10,
            f"min area {min(rep.min_per_trial)} >= {m // 3}, all 63 cycle means within "
            f"{m / 2}±{band:.1f}, {dt:.2f}s")


def test_criterion_9_bit_model_vs_geometry():
    t0 = time.perf_counter()
    spec = Z2RectSpec(4, 12, seed=7)
    d = gen_z2_rect(spec)
    eidx = {e: i for i, e in enumerate(all_edges(4))}
    worst = F(0)
    for z in cycle_space(4):
        cols = np.zeros(12, dtype=np.int64)
        for e in z:
            cols ^= spec.bits[eidx[e]]
        worst = max(worst, abs(z2_area(d, z) - int(cols.sum())))
    dt = time.perf_counter() - t0
    verdict(9, worst <= F(1, 4) and dt < 60,
            f"all 7 cycles within {float(worst):.3f} <= 1/4 of column parity, {dt:.1f}s")


# ------------------------------------------------------------------ 10


def test_criterion_10_quad_face_in_big_face():
    t0 = time.perf_counter()
    ok = True
    for seed in range(10):
        for builder in (pentagon_instance, annulus_instance):
            d, H, face = builder(seed)
            f = four_face_in_face(d, H, face)
            if not set(f.cells) <= face_cells(d, H, face):
                ok = False
    dt = time.perf_counter() - t0
    verdict(10, ok and dt < 60, f"20 instances (5-face/6, 6-face/12), cells nested, {dt:.1f}s")


# ------------------------------------------------------------------ 11


def test_criterion_11_structural_invariants(k5, tmp_path):
    ok = True
    notes = []

    # Euler characteristic on a spread of arrangements
    drawings = [
        k5,
        gen_twisted(6),
        gen_twisted_square(5, F(1, 10))[0],
        gen_z2_rect(Z2RectSpec(4, 6, seed=3)),
        pentagon_instance(0)[0],
    ]
    euler = all(
        len(a.nodes) - len(a.arcs) + len(a.cells) == 2
        for a in map(planarize, drawings)
    )
    ok &= euler
    notes.append(f"euler={euler}")

    # parity is independent of the ray direction: 10 directions x 100 points
    hull = [k5.vertex_points[v] for v in (0, 1, 2, 3)]
    curve = hull + [hull[0]]
    rng = np.random.default_rng(7)
    dirs = list(itertools.islice(geom.ray_directions(), 10))
    agree = True
    for x, y in rng.integers(0, 17 * SPAN, size=(100, 2)):
        vals = set()
        for direction in dirs:
            try:
                vals.add(geom.ray_parity((F(int(x), SPAN), F(int(y), SPAN)), direction, [curve]))
            except geom.DegeneracyError:
                continue
        agree &= len(vals) == 1
    ok &= agree
    notes.append(f"ray-independence={agree}")

    # serialization round-trip
    rt = True
    for i, d in enumerate([k5, gen_twisted(7), drawings[3]]):
        path = tmp_path / f"rt{i}.stg.json"
        write_drawing(d, path)
        rt &= read_drawing(path) == d
    ok &= rt
    notes.append(f"round-trip={rt}")

    # instrumented spanning-subgraph construction at n = 45
    plane_ok = True
    for d in (random_point_drawing(45, 0), gen_twisted(45)):
        state = build_plane_subgraph(d, has_outer_vertex(d))
        plane_ok &= state.i == 45 // 12 and len(state.trace) >= state.i
    ok &= plane_ok
    notes.append(f"plane-properties(n=45)={plane_ok}")

    verdict(11, ok, ", ".join(notes))
