"""Topological drawings of complete graphs and their basic operations.

A TopoDrawing is a straight-ahead data model: rational vertex points plus
one polyline per edge of K_n.  Validation separates *simple* drawings
(every edge pair meets at most once) from merely *generic* ones (all
meetings are proper crossings, pairwise distinct).
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import geom, kernels
from .errors import (
    DegeneracyError,
    NotOuterVertexError,
    ParseError,
    ReprojectionFailure,
)

Point = Tuple[Fraction, Fraction]
EdgeKey = Tuple[int, int]


def edge_key(u: int, v: int) -> EdgeKey:
    return (u, v) if u < v else (v, u)


def all_edges(n: int) -> List[EdgeKey]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


class TopoDrawing:
    """An immutable drawing of K_n with polyline edges.

    vertex_points[i] is the point of vertex i; edges maps (u, v) with
    u < v to the polyline from u's point to v's point.
    """

    def __init__(self, vertex_points: Sequence[Point], edges: Dict[EdgeKey, Sequence[Point]]):
        self.n = len(vertex_points)
        self.vertex_points: Tuple[Point, ...] = tuple(
            (Fraction(x), Fraction(y)) for x, y in vertex_points
        )
        expected = all_edges(self.n)
        if sorted(edges) != expected:
            missing = sorted(set(expected) - set(map(tuple, edges)))
            extra = sorted(set(map(tuple, edges)) - set(expected))
            raise ParseError(f"incomplete graph: missing edges {missing[:5]}, unexpected {extra[:5]}")
        self.edge_keys: Tuple[EdgeKey, ...] = tuple(expected)
        polys = {}
        for (u, v), poly in edges.items():
            pts = tuple((Fraction(x), Fraction(y)) for x, y in poly)
            if len(pts) < 2:
                raise ParseError(f"edge {(u, v)}: polyline needs at least two points")
            if pts[0] != self.vertex_points[u] or pts[-1] != self.vertex_points[v]:
                raise ParseError(f"edge {(u, v)}: polyline endpoints do not match vertex points")
            polys[(u, v)] = pts
        self.edges: Dict[EdgeKey, Tuple[Point, ...]] = polys
        self._crossings: Optional[CrossingData] = None

    def polyline(self, u: int, v: int) -> Tuple[Point, ...]:
        return self.edges[edge_key(u, v)]

    def edge_index(self, key: EdgeKey) -> int:
        u, v = key
        # lex position of (u, v) among all pairs
        return u * self.n - u * (u + 1) // 2 + (v - u - 1)

    @property
    def crossings(self) -> "CrossingData":
        if self._crossings is None:
            self._crossings = CrossingData(self)
        return self._crossings

    def __eq__(self, other):
        return (
            isinstance(other, TopoDrawing)
            and self.vertex_points == other.vertex_points
            and self.edges == other.edges
        )

    def __repr__(self):
        return f"TopoDrawing(n={self.n})"


# ---------------------------------------------------------------------------
# crossing extraction


class CrossingData:
    """All pairwise segment incidences of a drawing, classified exactly.

    Integer drawings (|coords| < 2**25) go through the int64 kernels;
    anything else falls back to Fraction arithmetic segment by segment.
    """

    def __init__(self, d: TopoDrawing):
        self.d = d
        segs = []           # (edge_idx, pos, a, b)
        self.seg_edge = []
        self.seg_pos = []
        self.seg_last = []  # is the last segment of its polyline
        for ei, key in enumerate(d.edge_keys):
            poly = d.edges[key]
            for pos in range(len(poly) - 1):
                segs.append((poly[pos], poly[pos + 1]))
                self.seg_edge.append(ei)
                self.seg_pos.append(pos)
                self.seg_last.append(pos == len(poly) - 2)
        self.segs = segs
        self.seg_edge = np.asarray(self.seg_edge, dtype=np.int64)
        self.seg_pos = np.asarray(self.seg_pos, dtype=np.int64)
        self.seg_last = np.asarray(self.seg_last, dtype=bool)
        self.integer = all(
            a[0].denominator == 1 and a[1].denominator == 1
            and abs(a[0].numerator) < kernels.COORD_LIMIT
            and abs(a[1].numerator) < kernels.COORD_LIMIT
            for seg in segs for a in seg
        )
        if self.integer and segs:
            ax = np.fromiter((int(s[0][0]) for s in segs), dtype=np.int64)
            ay = np.fromiter((int(s[0][1]) for s in segs), dtype=np.int64)
            bx = np.fromiter((int(s[1][0]) for s in segs), dtype=np.int64)
            by = np.fromiter((int(s[1][1]) for s in segs), dtype=np.int64)
            self.seg_arrays = (ax, ay, bx, by)
            self.ri, self.rj, self.rcode, self.rtn, self.rtd, self.run = (
                kernels.segment_crossings(ax, ay, bx, by)
            )
        else:
            self.seg_arrays = None
            recs = self._fraction_records()
            if recs:
                arr = np.asarray([(i, j, c) for i, j, c, _, _ in recs], dtype=np.int64)
                self.ri, self.rj, self.rcode = arr[:, 0], arr[:, 1], arr[:, 2]
            else:
                z = np.zeros(0, dtype=np.int64)
                self.ri, self.rj, self.rcode = z, z.copy(), z.copy()
            self._frac_params = [(t, u) for _, _, _, t, u in recs]
            self.rtn = self.rtd = self.run = None
        self._pair_counts: Optional[Dict[Tuple[int, int], int]] = None

    def _fraction_records(self):
        recs = []
        segs = self.segs
        # float bbox prefilter (with slack) before exact classification
        if segs:
            fx = np.array([[float(a[0]), float(b[0])] for a, b in segs])
            fy = np.array([[float(a[1]), float(b[1])] for a, b in segs])
            pad = 1e-9 * (1.0 + np.abs(fx).max() + np.abs(fy).max())
            minx, maxx = fx.min(1) - pad, fx.max(1) + pad
            miny, maxy = fy.min(1) - pad, fy.max(1) + pad
        for i in range(len(segs)):
            cand = np.nonzero(
                (minx[i + 1:] <= maxx[i]) & (maxx[i + 1:] >= minx[i])
                & (miny[i + 1:] <= maxy[i]) & (maxy[i + 1:] >= miny[i])
            )[0]
            for j in (cand + i + 1).tolist():
                kind, data = geom.seg_intersect(segs[i], segs[j])
                if kind == geom.NONE:
                    continue
                if kind == geom.PROPER:
                    pt = data
                    t = geom._seg_param(segs[i][0], segs[i][1], pt)
                    u = geom._seg_param(segs[j][0], segs[j][1], pt)
                    recs.append((i, j, kernels.CODE_PROPER, t, u))
                elif kind == geom.OVERLAP:
                    recs.append((i, j, kernels.CODE_OVERLAP, None, None))
                else:  # touch: shared endpoint vs endpoint-on-interior
                    pt = data
                    shared = (pt in segs[i]) and (pt in segs[j])
                    code = kernels.CODE_SHARED_ENDPOINT if shared else kernels.CODE_TOUCH
                    recs.append((i, j, code, None, None))
        return recs

    def params(self, rec: int) -> Tuple[Fraction, Fraction]:
        """Crossing parameters (t on segment ri, u on segment rj)."""
        if self.rtn is not None:
            td = int(self.rtd[rec])
            return Fraction(int(self.rtn[rec]), td), Fraction(int(self.run[rec]), td)
        t, u = self._frac_params[rec]
        return t, u

    def point(self, rec: int) -> Point:
        i = int(self.ri[rec])
        t, _ = self.params(rec)
        (ax, ay), (bx, by) = self.segs[i]
        return (ax + t * (bx - ax), ay + t * (by - ay))

    @property
    def proper_mask(self) -> np.ndarray:
        return self.rcode == kernels.CODE_PROPER

    def pair_counts(self) -> Dict[Tuple[int, int], int]:
        """Proper crossing count per unordered edge-index pair."""
        if self._pair_counts is None:
            counts: Dict[Tuple[int, int], int] = {}
            m = self.proper_mask
            e1 = self.seg_edge[self.ri[m]]
            e2 = self.seg_edge[self.rj[m]]
            for a, b in zip(e1.tolist(), e2.tolist()):
                if a != b:
                    k = (a, b) if a < b else (b, a)
                    counts[k] = counts.get(k, 0) + 1
            self._pair_counts = counts
        return self._pair_counts

    def crossing_pairs(self) -> set:
        """Unordered pairs of edge *keys* that properly cross."""
        keys = self.d.edge_keys
        return {
            frozenset((keys[a], keys[b])) for a, b in self.pair_counts()
        }

    def edges_cross(self, k1: EdgeKey, k2: EdgeKey) -> bool:
        a, b = self.d.edge_index(k1), self.d.edge_index(k2)
        if a > b:
            a, b = b, a
        return (a, b) in self.pair_counts()

    def edge_sequence(self, key: EdgeKey) -> List[Tuple[int, Fraction, EdgeKey]]:
        """Crossings along an edge u→v (u < v): (record id, global param, other edge)."""
        ei = self.d.edge_index(key)
        m = self.proper_mask
        recs = np.nonzero(
            m & ((self.seg_edge[self.ri] == ei) | (self.seg_edge[self.rj] == ei))
        )[0]
        out = []
        for rec in recs.tolist():
            i, j = int(self.ri[rec]), int(self.rj[rec])
            t, u = self.params(rec)
            if self.seg_edge[i] == ei:
                if self.seg_edge[j] == ei:
                    continue  # self-crossing: a validation failure, skip here
                seg, par, other = i, t, int(self.seg_edge[j])
            else:
                seg, par, other = j, u, int(self.seg_edge[i])
            gpos = int(self.seg_pos[seg]) + par
            out.append((gpos, rec, self.d.edge_keys[other]))
        out.sort(key=lambda r: r[0])
        return [(rec, gpos, other) for gpos, rec, other in out]


# ---------------------------------------------------------------------------
# validation

SIMPLE = "simple"
GENERIC = "generic"


@dataclass
class ValidationReport:
    mode: str
    violations: List[Tuple[object, str, Optional[Point]]] = field(default_factory=list)
    crossings: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, subject, kind, point=None):
        self.violations.append((subject, kind, point))


def validate(d: TopoDrawing, mode: str = SIMPLE) -> ValidationReport:
    """Check the drawing axioms.

    Generic mode: every edge arc is non-self-intersecting, avoids other
    vertices, and all pairwise meetings are proper crossings at pairwise
    distinct points.  Simple mode additionally requires each edge pair to
    meet at most once (counting a shared endpoint as the one meeting).
    """
    if mode not in (SIMPLE, GENERIC):
        raise ValueError(f"unknown mode {mode!r}")
    cd = d.crossings
    rep = ValidationReport(mode=mode)
    keys = d.edge_keys
    ri, rj, code = cd.ri, cd.rj, cd.rcode
    e1 = cd.seg_edge[ri]
    e2 = cd.seg_edge[rj]
    same = e1 == e2
    # self-incidences: only adjacent segments may share their bend point
    adjacent = same & (np.abs(cd.seg_pos[ri] - cd.seg_pos[rj]) == 1)
    bad_self = same & ~(adjacent & (code == kernels.CODE_SHARED_ENDPOINT))
    for rec in np.nonzero(bad_self)[0].tolist():
        key = keys[int(e1[rec])]
        rep.add(key, "self-intersecting edge", _witness(cd, rec))
    diff = ~same
    # overlaps and interior touches are never allowed
    for rec in np.nonzero(diff & (code == kernels.CODE_OVERLAP))[0].tolist():
        rep.add(_pair(cd, keys, rec), "overlapping edges", None)
    for rec in np.nonzero(diff & (code == kernels.CODE_TOUCH))[0].tolist():
        rep.add(_pair(cd, keys, rec), "non-proper contact", _witness(cd, rec))
    # shared segment endpoints must be a common graph vertex of both edges
    shared = np.nonzero(diff & (code == kernels.CODE_SHARED_ENDPOINT))[0]
    for rec in shared.tolist():
        i, j = int(ri[rec]), int(rj[rec])
        ka, kb = keys[int(e1[rec])], keys[int(e2[rec])]
        common = set(ka) & set(kb)
        ok = False
        if common:
            w = d.vertex_points[next(iter(common))]
            ok = _endpoint_is(cd, i, w) and _endpoint_is(cd, j, w)
        if not ok:
            rep.add((ka, kb), "edges touch at a non-vertex point", _witness(cd, rec))
    # proper crossings: count, and detect coincident crossing points
    proper = np.nonzero(diff & (code == kernels.CODE_PROPER))[0]
    rep.crossings = len(proper)
    _check_distinct(cd, proper, rep, keys)
    if mode == SIMPLE:
        for (a, b), cnt in sorted(cd.pair_counts().items()):
            ka, kb = keys[a], keys[b]
            if set(ka) & set(kb):
                rep.add((ka, kb), "adjacent edges cross", None)
            elif cnt > 1:
                rep.add((ka, kb), f"edges cross {cnt} times", None)
    return rep


def _pair(cd, keys, rec):
    return (keys[int(cd.seg_edge[cd.ri[rec]])], keys[int(cd.seg_edge[cd.rj[rec]])])


def _witness(cd, rec) -> Optional[Point]:
    if cd.rcode[rec] == kernels.CODE_PROPER:
        return cd.point(rec)
    # contact point: whichever endpoint lies on the other segment
    i, j = int(cd.ri[rec]), int(cd.rj[rec])
    (a, b), (c, e) = cd.segs[i], cd.segs[j]
    for p in (a, b):
        if geom.point_on_segment(c, e, p):
            return p
    for p in (c, e):
        if geom.point_on_segment(a, b, p):
            return p
    return None


def _endpoint_is(cd, seg: int, w: Point) -> bool:
    a, b = cd.segs[seg]
    pos, last = int(cd.seg_pos[seg]), bool(cd.seg_last[seg])
    return (a == w and pos == 0) or (b == w and last)


def _check_distinct(cd, proper, rep, keys):
    """Two crossings sharing a point show up with equal params on a segment."""
    if len(proper) == 0:
        return
    if cd.rtn is not None:
        # vectorized: sort per segment by a float key, exact-check near ties
        seg = np.concatenate([cd.ri[proper], cd.rj[proper]])
        num = np.concatenate([cd.rtn[proper], cd.run[proper]])
        den = np.concatenate([cd.rtd[proper], cd.rtd[proper]])
        rec = np.concatenate([proper, proper])
        key = num.astype(np.float64) / den.astype(np.float64)
        order = np.lexsort((key, seg))
        seg, num, den, rec, key = seg[order], num[order], den[order], rec[order], key[order]
        near = (seg[1:] == seg[:-1]) & (np.abs(key[1:] - key[:-1]) < 1e-9)
        for idx in np.nonzero(near)[0].tolist():
            if int(num[idx]) * int(den[idx + 1]) == int(num[idx + 1]) * int(den[idx]):
                r1, r2 = int(rec[idx]), int(rec[idx + 1])
                rep.add(
                    (_pair(cd, keys, r1), _pair(cd, keys, r2)),
                    "coincident crossings",
                    cd.point(r1),
                )
        return
    entries = []  # (segment, param, rec)
    for r in proper.tolist():
        t, u = cd.params(r)
        entries.append((int(cd.ri[r]), t, r))
        entries.append((int(cd.rj[r]), u, r))
    entries.sort(key=lambda e: (e[0], e[1]))
    for (s1, t1, r1), (s2, t2, r2) in zip(entries, entries[1:]):
        if s1 == s2 and t1 == t2:
            rep.add(
                (_pair(cd, keys, r1), _pair(cd, keys, r2)),
                "coincident crossings",
                cd.point(r1),
            )


# ---------------------------------------------------------------------------
# rotations


@dataclass(frozen=True)
class Rotation:
    vertex: int
    order: Tuple[EdgeKey, ...]  # clockwise cyclic order of incident edges

    @property
    def neighbors(self) -> Tuple[int, ...]:
        v = self.vertex
        return tuple(b if a == v else a for a, b in self.order)


def _departure(d: TopoDrawing, v: int, key: EdgeKey) -> Tuple[Fraction, Fraction]:
    poly = d.edges[key]
    p = d.vertex_points[v]
    q = poly[1] if poly[0] == p else poly[-2]
    return (q[0] - p[0], q[1] - p[1])


def _angular_cmp_ccw(ref):
    rx, ry = ref

    def bucket(dv):
        x, y = dv
        c = rx * y - ry * x
        dot = rx * x + ry * y
        if c == 0:
            return 0 if dot > 0 else 2
        return 1 if c > 0 else 3

    def cmp(a, b):
        ba, bb = bucket(a), bucket(b)
        if ba != bb:
            return -1 if ba < bb else 1
        c = a[0] * b[1] - a[1] * b[0]
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    return cmp


def _sort_clockwise(items, ref=(Fraction(1), Fraction(0))):
    """Sort (direction, payload) pairs clockwise starting at ref."""
    flipped = [((dv[0], -dv[1]), payload) for dv, payload in items]
    cmp = _angular_cmp_ccw((ref[0], -ref[1]))
    flipped.sort(key=functools.cmp_to_key(lambda a, b: cmp(a[0], b[0])))
    return [payload for _, payload in flipped]


def rotation_at(d: TopoDrawing, v: int) -> Rotation:
    """Clockwise cyclic order of edges leaving v, starting at direction (1,0)."""
    items = []
    seen = []
    for u in range(d.n):
        if u == v:
            continue
        key = edge_key(u, v)
        dv = _departure(d, v, key)
        items.append((dv, key))
        seen.append(dv)
    for a, b in itertools.combinations(seen, 2):
        if a[0] * b[1] - a[1] * b[0] == 0 and (a[0] * b[0] + a[1] * b[1]) > 0:
            raise DegeneracyError(f"two edges depart vertex {v} in the same direction")
    return Rotation(vertex=v, order=tuple(_sort_clockwise(items)))


def escape_direction(d: TopoDrawing, v: int, tries: int = 64):
    """A direction in which a straight ray from v meets no edge, or None.

    Success proves v lies on the unbounded region's boundary; failure is
    inconclusive (sufficient test only).
    """
    p = d.vertex_points[v]
    segs = d.crossings.segs
    incident = []
    for u in range(d.n):
        if u != v:
            incident.append(_departure(d, v, edge_key(u, v)))
    for w in itertools.islice(geom.ray_directions(), tries):
        wx, wy = Fraction(w[0]), Fraction(w[1])
        blocked = False
        for dx, dy in incident:
            if wx * dy - wy * dx == 0 and wx * dx + wy * dy > 0:
                blocked = True
                break
        if blocked:
            continue
        for a, b in segs:
            if a == p or b == p:
                continue  # incident segment tips handled above
            try:
                if geom._ray_segment_crossing(p, (wx, wy), a, b):
                    blocked = True
                    break
            except DegeneracyError:
                blocked = True
                break
        if not blocked:
            return (wx, wy)
    return None


def clockwise_labels(d: TopoDrawing, v0: int) -> List[int]:
    """Neighbors of v0 in clockwise order, cut at the unbounded region."""
    w = escape_direction(d, v0)
    if w is None:
        raise NotOuterVertexError(
            f"no unobstructed ray to infinity from vertex {v0}"
        )
    items = []
    for u in range(d.n):
        if u == v0:
            continue
        key = edge_key(u, v0)
        items.append((_departure(d, v0, key), u))
    return _sort_clockwise(items, ref=w)


# ---------------------------------------------------------------------------
# weak isomorphism


def weak_isomorphic(d1: TopoDrawing, d2: TopoDrawing) -> bool:
    """Same crossing edge-pairs and same crossing order along every edge."""
    if d1.n != d2.n:
        return False
    c1, c2 = d1.crossings, d2.crossings
    if c1.pair_counts() != c2.pair_counts():
        return False
    for key in d1.edge_keys:
        s1 = [other for _, _, other in c1.edge_sequence(key)]
        s2 = [other for _, _, other in c2.edge_sequence(key)]
        if s1 != s2:
            return False
    return True


# ---------------------------------------------------------------------------
# reprojection


def has_outer_vertex(d: TopoDrawing) -> Optional[int]:
    # extreme vertices are the likeliest to see infinity; try them first
    def extremeness(v):
        x, y = d.vertex_points[v]
        return max(x + y, -x - y, x - y, y - x)

    for v in sorted(range(d.n), key=extremeness, reverse=True):
        if escape_direction(d, v) is not None:
            return v
    return None


def ensure_outer_vertex(d: TopoDrawing, max_refine: int = 6) -> TopoDrawing:
    """Return a weakly isomorphic drawing with a vertex on the outer boundary.

    Uses the inversion x ↦ q + (x−q)/|x−q|² about a point q just off the
    lowest-id vertex, with adaptive polyline refinement until the image
    validates and is weakly isomorphic to the input.
    """
    if has_outer_vertex(d) is not None:
        return d
    v0 = 0
    q = _nearby_interior_point(d, v0)
    for level in range(1, max_refine + 1):
        pieces = 2 ** level
        verts = [_invert(p, q) for p in d.vertex_points]
        edges = {}
        for key, poly in d.edges.items():
            pts: List[Point] = []
            for (a, b) in zip(poly, poly[1:]):
                for s in range(pieces):
                    t = Fraction(s, pieces)
                    pts.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
            pts.append(poly[-1])
            edges[key] = [_invert(p, q) for p in pts]
        try:
            out = TopoDrawing(verts, edges)
        except ParseError:
            continue
        if (
            validate(out, GENERIC).ok
            and weak_isomorphic(d, out)
            and escape_direction(out, v0) is not None
        ):
            return out
    raise ReprojectionFailure(f"no valid reprojection within {max_refine} refinement levels")


def _invert(p: Point, q: Point) -> Point:
    dx, dy = p[0] - q[0], p[1] - q[1]
    r2 = dx * dx + dy * dy
    if r2 == 0:
        raise ReprojectionFailure("inversion center lies on the drawing")
    return (q[0] + dx / r2, q[1] + dy / r2)


def _nearby_interior_point(d: TopoDrawing, v0: int) -> Point:
    """A point q inside a cell whose closure contains v0."""
    rot = rotation_at(d, v0)
    p = d.vertex_points[v0]
    dirs = [_departure(d, v0, key) for key in rot.order]
    m = None
    for d1, d2 in zip(dirs, dirs[1:] + dirs[:1]):
        if d1[0] * d2[1] - d1[1] * d2[0] < 0:  # clockwise wedge below π
            m = (d1[0] + d2[0], d1[1] + d2[1])
            break
    if m is None:
        m = dirs[0]
    eps = Fraction(1, 4)
    segs = d.crossings.segs
    for _ in range(128):
        q = (p[0] + m[0] * eps, p[1] + m[1] * eps)
        if _segment_clear(p, q, segs):
            return q
        eps /= 16
    raise ReprojectionFailure("could not place an inversion center near the vertex")


def _segment_clear(p: Point, q: Point, segs) -> bool:
    """True if (p, q] meets no drawing segment (touching p itself is fine)."""
    for a, b in segs:
        kind, data = geom.seg_intersect((p, q), (a, b))
        if kind == geom.NONE:
            continue
        if kind == geom.TOUCH and data == p:
            continue
        return False
    return True


# ---------------------------------------------------------------------------
# file I/O  (.stg.json)


def _point_to_json(p: Point):
    return [geom.format_scalar(p[0]), geom.format_scalar(p[1])]


def _point_from_json(obj, where: str) -> Point:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise ParseError(f"{where}: point must be a [x, y] pair")
    try:
        return (geom.parse_scalar(obj[0]), geom.parse_scalar(obj[1]))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def write_drawing(d: TopoDrawing, path) -> None:
    doc = {
        "n": d.n,
        "vertices": [_point_to_json(p) for p in d.vertex_points],
        "edges": [
            {"u": u, "v": v, "polyline": [_point_to_json(p) for p in d.edges[(u, v)]]}
            for (u, v) in d.edge_keys
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def read_drawing(path) -> TopoDrawing:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    for fieldname in ("n", "vertices", "edges"):
        if fieldname not in doc:
            raise ParseError(f"{path}: missing field {fieldname!r}")
    n = doc["n"]
    verts = [
        _point_from_json(p, f"vertices[{i}]") for i, p in enumerate(doc["vertices"])
    ]
    if len(verts) != n:
        raise ParseError(f"{path}: n={n} but {len(verts)} vertex points")
    edges = {}
    for k, rec in enumerate(doc["edges"]):
        where = f"edges[{k}]"
        if not isinstance(rec, dict) or "u" not in rec or "v" not in rec or "polyline" not in rec:
            raise ParseError(f"{where}: each edge needs u, v, polyline")
        u, v = rec["u"], rec["v"]
        if not (isinstance(u, int) and isinstance(v, int)) or not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"{where}: bad endpoints ({u}, {v})")
        key = edge_key(u, v)
        if key in edges:
            raise ParseError(f"{where}: duplicate edge {key}")
        poly = [
            _point_from_json(p, f"{where}.polyline[{i}]") for i, p in enumerate(rec["polyline"])
        ]
        if (u, v) != key:
            poly.reverse()
        edges[key] = poly
    try:
        return TopoDrawing(verts, edges)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None
