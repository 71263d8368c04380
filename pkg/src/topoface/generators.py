"""Drawing constructions.

gen_twisted builds the complete drawing in which edges (i,j) and (k,l)
cross exactly when their index pairs are nested (i < k < l < j), with
vertices on a diagonal in index order.  gen_twisted_square squeezes the
same drawing into the unit square so that every odd face contains a big
central square.  gen_straightline and gen_z2_rect cover geometric and
random rectangle-grid drawings.

All randomness uses numpy's default PCG64 generator seeded explicitly,
so every construction is reproducible from its parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np

from . import geom
from .drawing import (
    GENERIC,
    SIMPLE,
    Point,
    TopoDrawing,
    all_edges,
    validate,
    weak_isomorphic,
)
from .errors import ConstructionError, DegeneracyError, GeneralPositionError


# ---------------------------------------------------------------------------
# twisted drawing
#
# Layout (all integer coordinates):
#   - vertices P_t = (t+1, t+1) on the diagonal;
#   - edge e = (i, j) with lex rank r gets a level X_e = n + 2 + 4(r+1)
#     and runs  P_i → (−X_e, 2X_e) → (−X_e, −X_e) → (D+X'_e, −X_e)
#               → (D+X'_e, 2X'_e) → P_j.
# The left chords land on the ray through (−1, 2) in lex order, so they
# never cross each other; verticals and bottom horizontals are nested by
# the same order, so the only crossings in the whole picture are between
# right chords, which cross exactly when the order by j disagrees with
# the lex order — i.e. exactly for nested index pairs.  X'_e carries a
# small order-preserving jitter to break accidental triple concurrences;
# the result is never trusted: the crossing pattern is re-checked against
# the nested rule and the construction fails loudly on any mismatch.


def _twisted_levels(n: int, attempt: int) -> Tuple[List[int], List[int], int]:
    E = all_edges(n)
    base = [n + 2 + 4 * (r + 1) for r in range(len(E))]
    if attempt == 0:
        jit = [0] * len(E)
    else:
        rng = np.random.default_rng(attempt)
        jit = rng.integers(0, 4, size=len(E)).tolist()
    right = [x + j for x, j in zip(base, jit)]
    D = 4 * (max(right) if right else n + 8) + 16
    return base, right, D


def _build_twisted(n: int, attempt: int) -> TopoDrawing:
    X, XR, D = _twisted_levels(n, attempt)
    verts = [(Fraction(t + 1), Fraction(t + 1)) for t in range(n)]
    edges = {}
    for r, (i, j) in enumerate(all_edges(n)):
        x, xr = X[r], XR[r]
        edges[(i, j)] = [
            verts[i],
            (Fraction(-x), Fraction(2 * x)),
            (Fraction(-x), Fraction(-x)),
            (Fraction(D + xr), Fraction(-x)),
            (Fraction(D + xr), Fraction(2 * xr)),
            verts[j],
        ]
    return TopoDrawing(verts, edges)


def twisted_probe(n: int) -> Point:
    """A point contained in every odd face of gen_twisted(n).

    A vertical ray going down from here crosses every edge exactly once
    (on its bottom horizontal), so any odd closed cycle winds around it.
    """
    return (Fraction(n + 2), Fraction(-1, 2))


def _edge_ray_counts(d: TopoDrawing, p: Point, direction) -> List[int]:
    """Proper crossings of the ray from p with each edge's polyline."""
    counts = []
    for key in d.edge_keys:
        poly = d.edges[key]
        c = 0
        for a, b in zip(poly, poly[1:]):
            c += geom._ray_segment_crossing(p, direction, a, b)
        counts.append(c)
    return counts


def _twisted_defect(d: TopoDrawing, n: int) -> Optional[str]:
    rep = validate(d, SIMPLE)
    if not rep.ok:
        return f"validation: {rep.violations[0]}"
    cd = d.crossings
    m = cd.proper_mask
    e1 = cd.seg_edge[cd.ri[m]]
    e2 = cd.seg_edge[cd.rj[m]]
    keep = e1 != e2
    e1, e2 = e1[keep], e2[keep]
    eu = np.array([k[0] for k in d.edge_keys], dtype=np.int64)
    ev = np.array([k[1] for k in d.edge_keys], dtype=np.int64)
    i_, j_ = eu[e1], ev[e1]
    k_, l_ = eu[e2], ev[e2]
    nested = ((i_ < k_) & (k_ < l_) & (l_ < j_)) | ((k_ < i_) & (i_ < j_) & (j_ < l_))
    if not bool(nested.all()):
        bad = int(np.nonzero(~nested)[0][0])
        return f"non-nested crossing {d.edge_keys[e1[bad]]} × {d.edge_keys[e2[bad]]}"
    want = math.comb(n, 4)
    if len(e1) != want:
        return f"crossing count {len(e1)} != C(n,4) = {want}"
    try:
        counts = _edge_ray_counts(d, twisted_probe(n), (Fraction(0), Fraction(-1)))
    except DegeneracyError as exc:
        return f"probe ray degenerate: {exc}"
    if any(c != 1 for c in counts):
        return "probe ray does not cross every edge exactly once"
    return None


def gen_twisted(n: int) -> TopoDrawing:
    """The twisted drawing of K_n: edges cross iff their index pairs nest."""
    if n < 1:
        raise ValueError("n must be at least 1")
    defect = None
    for attempt in range(8):
        d = _build_twisted(n, attempt)
        defect = _twisted_defect(d, n)
        if defect is None:
            return d
    raise ConstructionError(f"twisted routing failed self-check: {defect}")


# ---------------------------------------------------------------------------
# twisted drawing in the unit square


class _PwLin:
    """Monotone piecewise-linear map given (source, target) breakpoints."""

    def __init__(self, pairs):
        self.xs = [Fraction(a) for a, _ in pairs]
        self.ys = [Fraction(b) for _, b in pairs]
        assert all(a < b for a, b in zip(self.xs, self.xs[1:]))
        assert all(a < b for a, b in zip(self.ys, self.ys[1:]))

    def __call__(self, x: Fraction) -> Fraction:
        xs, ys = self.xs, self.ys
        if not (xs[0] <= x <= xs[-1]):
            raise ValueError("out of range")
        for k in range(len(xs) - 1):
            if x <= xs[k + 1]:
                t = (x - xs[k]) / (xs[k + 1] - xs[k])
                return ys[k] + t * (ys[k + 1] - ys[k])
        raise AssertionError

    def inverse(self, y: Fraction) -> Fraction:
        return _PwLin(list(zip(self.ys, self.xs)))(y)


def _map_product(d: TopoDrawing, h: _PwLin, g: _PwLin) -> TopoDrawing:
    """Apply (x, y) ↦ (h(x), g(y)) exactly, subdividing at map breakpoints.

    A product of monotone maps is a plane homeomorphism, so the image has
    the same crossing structure; segments are split wherever they cross a
    breakpoint line so the image stays piecewise linear.
    """
    verts = [(h(x), g(y)) for x, y in d.vertex_points]
    edges = {}
    for key, poly in d.edges.items():
        out = []
        for a, b in zip(poly, poly[1:]):
            ts = {Fraction(0)}
            for bp in h.xs[1:-1]:
                if (a[0] < bp < b[0]) or (b[0] < bp < a[0]):
                    ts.add((bp - a[0]) / (b[0] - a[0]))
            for bp in g.xs[1:-1]:
                if (a[1] < bp < b[1]) or (b[1] < bp < a[1]):
                    ts.add((bp - a[1]) / (b[1] - a[1]))
            for t in sorted(ts):
                p = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                out.append((h(p[0]), g(p[1])))
        out.append((h(poly[-1][0]), g(poly[-1][1])))
        edges[key] = out
    return TopoDrawing(verts, edges)


def _seg_hits_open_box(a: Point, b: Point, lo: Fraction, hi: Fraction) -> bool:
    """Does segment a-b meet the open box (lo,hi)² ?  Exact clip test."""
    t0, t1 = Fraction(0), Fraction(1)
    for axis in (0, 1):
        d = b[axis] - a[axis]
        if d == 0:
            if not (lo < a[axis] < hi):
                return False
            continue
        ta = (lo - a[axis]) / d
        tb = (hi - a[axis]) / d
        if ta > tb:
            ta, tb = tb, ta
        t0, t1 = max(t0, ta), min(t1, tb)
    return t0 < t1


def gen_twisted_square(
    n: int, eps, check_limit: int = 8
) -> Tuple[TopoDrawing, Point]:
    """Twisted drawing inside [0,1]² whose odd faces all have area ≥ 1−ε.

    The vertices sit in a corner cluster and all arcs run inside a margin
    frame of width δ = ε/5, leaving the central square (δ,1−δ)² empty;
    every odd face contains that square along with the probe (1/2, 1/2).
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError("eps must be in (0, 1)")
    if n < 1:
        raise ValueError("n must be at least 1")
    delta = eps / 5
    probe = (Fraction(1, 2), Fraction(1, 2))
    defect = None
    for attempt in range(8):
        base = _build_twisted(n, attempt)
        if _twisted_defect(base, n) is not None:
            continue
        xs = [p[0] for poly in base.edges.values() for p in poly] or [Fraction(0)]
        ys = [p[1] for poly in base.edges.values() for p in poly] or [Fraction(0)]
        xmin, xmax = min(xs), max(xs)
        ymin, ymax = min(ys), max(ys)
        X, XR, D = _twisted_levels(n, attempt)
        x_lo_strip = Fraction(n)          # empty band is (n, D) × (−X_min, 0)
        y_lo_strip = -Fraction(min(X)) if X else Fraction(-1)
        sigma = Fraction(1, 7 + 5 * attempt)
        h = _PwLin([
            (xmin - 1, 0), (x_lo_strip + sigma, delta),
            (D - sigma, 1 - delta), (xmax + 1, 1),
        ])
        g = _PwLin([
            (ymin - 1, 0), (y_lo_strip + sigma, delta),
            (-sigma, 1 - delta), (ymax + 1, 1),
        ])
        d = _map_product(base, h, g)
        defect = _square_defect(d, base, n, delta, probe, check_limit)
        if defect is None:
            return d, probe
    raise ConstructionError(f"unit-square routing failed self-check: {defect}")


def _square_defect(d, base, n, delta, probe, check_limit):
    for poly in d.edges.values():
        for p in poly:
            if not (0 <= p[0] <= 1 and 0 <= p[1] <= 1):
                return f"point {p} outside the unit square"
        for a, b in zip(poly, poly[1:]):
            if _seg_hits_open_box(a, b, delta, 1 - delta):
                return "an arc enters the central square"
    try:
        counts = _edge_ray_counts(d, probe, (Fraction(0), Fraction(-1)))
    except DegeneracyError as exc:
        return f"probe ray degenerate: {exc}"
    if any(c != 1 for c in counts):
        return "probe ray does not cross every edge exactly once"
    if n <= check_limit:
        rep = validate(d, SIMPLE)
        if not rep.ok:
            return f"validation: {rep.violations[0]}"
        if not weak_isomorphic(d, base):
            return "image not weakly isomorphic to the twisted drawing"
    return None


# ---------------------------------------------------------------------------
# straight-line drawings


def gen_straightline(points) -> TopoDrawing:
    """Straight-line drawing on the given points (general position required)."""
    verts = [(Fraction(x), Fraction(y)) for x, y in points]
    if len(set(verts)) != len(verts):
        raise GeneralPositionError("repeated points")
    n = len(verts)
    edges = {(u, v): [verts[u], verts[v]] for u, v in all_edges(n)}
    d = TopoDrawing(verts, edges)
    rep = validate(d, SIMPLE)
    if not rep.ok:
        raise GeneralPositionError(f"points not in general position: {rep.violations[:3]}")
    return d


def random_point_drawing(n: int, seed: int, span: int = 1 << 20) -> TopoDrawing:
    """Straight-line drawing on n random integer points (PCG64, reseeded
    deterministically until the sample is in general position)."""
    for attempt in range(64):
        rng = np.random.default_rng([seed, attempt])
        pts = rng.integers(0, span, size=(n, 2))
        try:
            return gen_straightline([(int(x), int(y)) for x, y in pts])
        except GeneralPositionError:
            continue
    raise ConstructionError(f"no general-position sample for n={n}, seed={seed}")


# ---------------------------------------------------------------------------
# random rectangle-grid drawing


@dataclass(frozen=True)
class Z2RectSpec:
    """Parameters of the random rectangle-grid drawing.

    Every edge runs a lattice path over m unit columns at heights
    bits[e][k] ∈ {0, 1}, shifted by a private lane offset (rank+1)·eta so
    that distinct edges never share a line.
    """

    n: int
    m: int
    seed: int = 0
    eta: Optional[Fraction] = None

    def __post_init__(self):
        if self.n < 2 or self.m < 1:
            raise ValueError("need n ≥ 2 and m ≥ 1")
        E = math.comb(self.n, 2)
        limit = Fraction(1, 4 * E * (self.m + 2))
        eta = Fraction(1, 32 * E * (self.m + 2)) if self.eta is None else Fraction(self.eta)
        if not (0 < eta < limit):
            raise ValueError(f"eta must be in (0, {limit})")
        object.__setattr__(self, "eta", eta)

    @cached_property
    def bits(self) -> np.ndarray:
        """Per-edge column bits, shape (C(n,2), m)."""
        rng = np.random.default_rng(self.seed)
        return rng.integers(0, 2, size=(math.comb(self.n, 2), self.m))


def gen_z2_rect(spec: Z2RectSpec) -> TopoDrawing:
    """Concatenation of near-vertical and near-horizontal arcs over m columns.

    Edge (i, j): fans out of vertex i (vertices clustered down-left of the
    origin), rises in a private channel just left of x = 0, runs across
    columns 1..m at heights bits+lane, descends at x ≈ m, and returns along
    y = −lane into vertex j.  Valid as a generic drawing, not a simple one.
    """
    n, m, eta = spec.n, spec.m, spec.eta
    E = all_edges(n)
    bits = spec.bits
    verts = [(Fraction(-1 - t), Fraction(-1 - t)) for t in range(n)]
    rho = Fraction(1, 4)
    eta2 = eta / (4 * len(E) + 8)   # channel x-spacing, much finer than lanes
    edges = {}
    for r, (i, j) in enumerate(E):
        a = (r + 1) * eta          # lane offset
        v_ch = -(2 * r + 2) * eta2  # departure channel x
        w_ch = (2 * r + 3) * eta2   # return channel x, right of the departures
        H = [int(bits[r][k]) + a for k in range(m)]
        px_i, py_i = verts[i]
        px_j, py_j = verts[j]
        poly = [verts[i], (px_i + rho, py_i + a), (v_ch, py_i + a), (v_ch, H[0])]
        for k in range(m - 1):
            if H[k + 1] != H[k]:
                poly.append((Fraction(k + 1) - a, H[k]))
                poly.append((Fraction(k + 1) - a, H[k + 1]))
        poly.append((Fraction(m) + a, H[m - 1]))
        poly.append((Fraction(m) + a, -a))
        poly.append((w_ch, -a))
        poly.append((w_ch, py_j - a))
        poly.append((px_j + rho, py_j - a))
        poly.append(verts[j])
        edges[(i, j)] = poly
    d = TopoDrawing(verts, edges)
    rep = validate(d, GENERIC)
    if not rep.ok:
        raise ConstructionError(f"rectangle-grid drawing invalid: {rep.violations[:3]}")
    return d
