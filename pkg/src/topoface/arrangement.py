"""Planar arrangements of drawings and faces of plane subgraphs.

planarize() turns a drawing into its cell complex: crossings become
nodes, edges split into arcs, and cells are the orbits of the half-edge
face permutation.  faces_of() computes the faces of a crossing-free edge
subset directly from the rotation system, without building the full
arrangement.
"""

from __future__ import annotations

import functools
import itertools

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from . import geom, kernels
from .drawing import (
    EdgeKey,
    Point,
    TopoDrawing,
    _angular_cmp_ccw,
    edge_key,
)
from .errors import (
    InvariantViolation,
    NotJordanError,
    NotOnBoundaryError,
    NotPlaneError,
    OnBoundaryError,
)


def _param_point(poly: Sequence[Point], g: Fraction) -> Point:
    k = int(g)
    if k >= len(poly) - 1:
        return poly[-1]
    t = g - k
    (ax, ay), (bx, by) = poly[k], poly[k + 1]
    return (ax + t * (bx - ax), ay + t * (by - ay))


def _sub_polyline(poly: Sequence[Point], g0: Fraction, g1: Fraction) -> List[Point]:
    """Piece of the polyline between global params g0 < g1 (seg index + t)."""
    pts = [_param_point(poly, g0)]
    k = int(g0) + 1
    while k < g1:
        if k > g0:
            pts.append(poly[k])
        k += 1
    last = _param_point(poly, g1)
    if last != pts[-1]:
        pts.append(last)
    return pts


@dataclass
class Arc:
    id: int
    u: int                   # node ids
    v: int
    edge: EdgeKey            # original K_n edge
    piece: int               # position along that edge
    pts: List[Point]         # geometry from u's point to v's point


@dataclass
class Cell:
    id: int
    darts: List[int]
    area: Optional[Fraction]     # None for the unbounded cell
    neighbors: Set[int] = field(default_factory=set)


class Arrangement:
    """Cell complex of a generic drawing.

    Nodes 0..n−1 are the original vertices, the rest are crossings.
    Dart 2a runs along arc a from u to v, dart 2a+1 the other way.
    """

    def __init__(self, d: TopoDrawing):
        self.drawing = d
        cd = d.crossings
        self.nodes: List[Point] = list(d.vertex_points)
        node_of_rec: Dict[int, int] = {}
        self.arcs: List[Arc] = []
        for key in d.edge_keys:
            poly = d.edges[key]
            chain = [(Fraction(0), key[0])]
            for rec, gpos, _other in cd.edge_sequence(key):
                if rec not in node_of_rec:
                    node_of_rec[rec] = len(self.nodes)
                    self.nodes.append(cd.point(rec))
                chain.append((gpos, node_of_rec[rec]))
            chain.append((Fraction(len(poly) - 1), key[1]))
            for piece, ((g0, a), (g1, b)) in enumerate(zip(chain, chain[1:])):
                self.arcs.append(
                    Arc(len(self.arcs), a, b, key, piece, _sub_polyline(poly, g0, g1))
                )
        self._build_faces()

    # -- combinatorics ----------------------------------------------------

    def dart_tail(self, dart: int) -> int:
        arc = self.arcs[dart // 2]
        return arc.u if dart % 2 == 0 else arc.v

    def dart_head(self, dart: int) -> int:
        arc = self.arcs[dart // 2]
        return arc.v if dart % 2 == 0 else arc.u

    def dart_pts(self, dart: int) -> List[Point]:
        pts = self.arcs[dart // 2].pts
        return pts if dart % 2 == 0 else pts[::-1]

    def _build_faces(self):
        at_node: List[List[int]] = [[] for _ in self.nodes]
        for arc in self.arcs:
            at_node[arc.u].append(2 * arc.id)
            at_node[arc.v].append(2 * arc.id + 1)
        cmp = _angular_cmp_ccw((Fraction(1), Fraction(0)))
        for node, darts in enumerate(at_node):
            p = self.nodes[node]

            def direction(dart):
                pts = self.dart_pts(dart)
                q = pts[1]
                return (q[0] - p[0], q[1] - p[1])

            darts.sort(key=functools.cmp_to_key(lambda a, b: cmp(direction(a), direction(b))))
        pos = {}
        for darts in at_node:
            for k, dd in enumerate(darts):
                pos[dd] = k
        nxt = np.zeros(2 * len(self.arcs), dtype=np.int64)
        for dart in range(2 * len(self.arcs)):
            twin = dart ^ 1
            head = self.dart_tail(twin)
            darts = at_node[head]
            nxt[dart] = darts[(pos[twin] - 1) % len(darts)]
        if len(nxt):
            face_of, nfaces = kernels.orbit_labels(nxt)
        else:
            face_of, nfaces = np.zeros(0, dtype=np.int64), 0
        self.face_of_dart = face_of
        cells = [Cell(i, [], None) for i in range(nfaces)]
        for dart in range(2 * len(self.arcs)):
            cells[int(face_of[dart])].darts.append(dart)
        areas = []
        for cell in cells:
            s = Fraction(0)
            for dart in cell.darts:
                pts = self.dart_pts(dart)
                for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
                    s += x0 * y1 - x1 * y0
            areas.append(s / 2)
        if nfaces:
            neg = [i for i, a in enumerate(areas) if a < 0]
            if len(neg) != 1:
                raise InvariantViolation(f"{len(neg)} negative-area face walks")
            self.outer_cell = neg[0]
            for i, cell in enumerate(cells):
                cell.area = None if i == self.outer_cell else areas[i]
        else:
            cells = [Cell(0, [], None)]
            self.outer_cell = 0
        self.cells = cells
        for arc in self.arcs:
            f1 = int(face_of[2 * arc.id])
            f2 = int(face_of[2 * arc.id + 1])
            self.cells[f1].neighbors.add(f2)
            self.cells[f2].neighbors.add(f1)
        V, E, F = len(self.nodes), len(self.arcs), len(self.cells)
        if V - E + F != 2 and E > 0:
            raise InvariantViolation(f"Euler check failed: V={V} E={E} F={F}")
        self._cell_points: Dict[int, Point] = {}

    # -- geometry ----------------------------------------------------------

    def cell_boundary_curves(self, cell_id: int) -> List[List[Point]]:
        return [self.dart_pts(dart) for dart in self.cells[cell_id].darts]

    def cell_point(self, cell_id: int) -> Point:
        """A representative point strictly inside a bounded cell."""
        if cell_id == self.outer_cell:
            raise ValueError("outer cell has no representative point")
        if cell_id in self._cell_points:
            return self._cell_points[cell_id]
        curves = self.cell_boundary_curves(cell_id)
        segs = [s for arc in self.arcs for s in zip(arc.pts, arc.pts[1:])]
        for dart in self.cells[cell_id].darts:
            pts = self.dart_pts(dart)
            for a, b in zip(pts, pts[1:]):
                mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
                # left normal of a→b points into the face
                nx, ny = a[1] - b[1], b[0] - a[0]
                eps = Fraction(1, 4)
                for _ in range(64):
                    p = (mid[0] + nx * eps, mid[1] + ny * eps)
                    if _probe_clear(mid, p, segs) and geom.robust_ray_parity(p, curves) == 1:
                        self._cell_points[cell_id] = p
                        return p
                    eps /= 8
        raise InvariantViolation(f"no representative point found for cell {cell_id}")


def _probe_clear(mid: Point, p: Point, segs) -> bool:
    """(mid, p] touches no segment (mid itself sits on one)."""
    for a, b in segs:
        kind, data = geom.seg_intersect((mid, p), (a, b))
        if kind == geom.NONE or (kind == geom.TOUCH and data == mid):
            continue
        if kind == geom.OVERLAP:
            return False
        if data == mid:
            continue
        return False
    return True


def planarize(d: TopoDrawing) -> Arrangement:
    """Cell complex of the drawing (cached on the drawing object)."""
    arr = getattr(d, "_arrangement", None)
    if arr is None:
        arr = Arrangement(d)
        d._arrangement = arr
    return arr


def locate(arr: Arrangement, p: Point) -> int:
    """Cell containing p (OnBoundaryError if p lies on an arc or node)."""
    p = (Fraction(p[0]), Fraction(p[1]))
    if p in arr.nodes:
        raise OnBoundaryError("point is a node")
    for arc in arr.arcs:
        for a, b in zip(arc.pts, arc.pts[1:]):
            if geom.point_on_segment(a, b, p):
                raise OnBoundaryError("point lies on an arc")
    for cell in arr.cells:
        if cell.id == arr.outer_cell:
            continue
        if geom.robust_ray_parity(p, arr.cell_boundary_curves(cell.id)) == 1:
            return cell.id
    return arr.outer_cell


# ---------------------------------------------------------------------------
# cycles


def cycle_edges(cycle: Sequence[int]) -> List[EdgeKey]:
    if len(cycle) < 2:
        return []
    return [edge_key(a, b) for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]])]


def cycle_curves(d: TopoDrawing, cycle: Sequence[int]) -> List[List[Point]]:
    return [list(d.edges[k]) for k in cycle_edges(cycle)]


def _cycle_edge_parity(cycle: Sequence[int]) -> Set[EdgeKey]:
    odd: Set[EdgeKey] = set()
    for k in cycle_edges(cycle):
        odd ^= {k}
    return odd


def cells_inside_cycle(
    d: TopoDrawing, cycle: Sequence[int], jordan: bool = False
) -> FrozenSet[int]:
    """Cells whose points have odd linking parity with the cycle's curve.

    Parity propagates through the arrangement's dual from the outer cell,
    flipping when stepping over an arc of a cycle edge.  With jordan=True
    the cycle curve must be non-self-intersecting.
    """
    arr = planarize(d)
    edges = _cycle_edge_parity(cycle)
    if jordan:
        if len(set(cycle)) != len(cycle):
            raise NotJordanError("repeated vertex in cycle")
        cd = d.crossings
        for k1, k2 in itertools.combinations(cycle_edges(cycle), 2):
            if cd.edges_cross(k1, k2):
                raise NotJordanError(f"cycle edges {k1} and {k2} cross")
    parity = {arr.outer_cell: 0}
    stack = [arr.outer_cell]
    arc_flip = [arc.edge in edges for arc in arr.arcs]
    while stack:
        c = stack.pop()
        for dart in arr.cells[c].darts:
            other = int(arr.face_of_dart[dart ^ 1])
            val = parity[c] ^ (1 if arc_flip[dart // 2] else 0)
            if other not in parity:
                parity[other] = val
                stack.append(other)
            elif parity[other] != val:
                raise InvariantViolation("inconsistent parity propagation (not a cycle?)")
    return frozenset(c for c, v in parity.items() if v == 1 and c != arr.outer_cell)


def vertices_inside(d: TopoDrawing, cycle: Sequence[int]) -> List[int]:
    """Vertices strictly inside the cycle's curve (by ray parity)."""
    curves = [list(d.edges[k]) for k in _cycle_edge_parity(cycle)]
    on_cycle = set(cycle)
    out = []
    for v in range(d.n):
        if v in on_cycle:
            continue
        if geom.robust_ray_parity(d.vertex_points[v], curves) == 1:
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# plane subgraphs


@dataclass
class FaceWalk:
    steps: List[Tuple[int, EdgeKey]]   # (vertex, edge leaving it) in order
    area: Fraction

    @property
    def vertices(self) -> List[int]:
        return [v for v, _ in self.steps]

    def __len__(self):
        return len(self.steps)


@dataclass
class Face:
    id: int
    walks: List[FaceWalk]
    is_outer: bool = False
    isolated: List[int] = field(default_factory=list)

    @property
    def size(self) -> int:
        return sum(len(w) for w in self.walks)

    @property
    def boundary_vertices(self) -> Set[int]:
        return {v for w in self.walks for v in w.vertices}


class PlaneSubgraph:
    def __init__(self, d: TopoDrawing, edges: Sequence[EdgeKey]):
        self.drawing = d
        self.edges: FrozenSet[EdgeKey] = frozenset(edge_key(*e) for e in edges)
        cd = d.crossings
        for k1, k2 in itertools.combinations(sorted(self.edges), 2):
            if cd.edges_cross(k1, k2):
                raise NotPlaneError(f"edges {k1} and {k2} cross")
        self._build()

    def _build(self):
        d = self.drawing
        incident: Dict[int, List[EdgeKey]] = {v: [] for v in range(d.n)}
        for k in self.edges:
            incident[k[0]].append(k)
            incident[k[1]].append(k)
        cmp = _angular_cmp_ccw((Fraction(1), Fraction(0)))
        order: Dict[int, List[EdgeKey]] = {}
        for v, keys in incident.items():
            p = d.vertex_points[v]

            def direction(key):
                poly = d.edges[key]
                q = poly[1] if poly[0] == p else poly[-2]
                return (q[0] - p[0], q[1] - p[1])

            order[v] = sorted(keys, key=functools.cmp_to_key(
                lambda a, b: cmp(direction(a), direction(b))))
        # darts are (tail, key); face permutation: at the head, continue with
        # the clockwise successor of the reversed dart
        darts = [(v, k) for k in sorted(self.edges) for v in k]
        nxt = {}
        for tail, k in darts:
            head = k[0] if k[1] == tail else k[1]
            ring = order[head]
            i = ring.index(k)
            nxt[(tail, k)] = (head, ring[(i - 1) % len(ring)])
        walks: List[FaceWalk] = []
        seen = set()
        for start in darts:
            if start in seen:
                continue
            steps = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                steps.append(cur)
                cur = nxt[cur]
            walks.append(FaceWalk(steps, self._walk_area(steps)))
        self._assemble_faces(walks, incident)

    def _walk_area(self, steps) -> Fraction:
        d = self.drawing
        s = Fraction(0)
        for tail, k in steps:
            poly = d.edges[k]
            pts = poly if poly[0] == d.vertex_points[tail] else poly[::-1]
            for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
                s += x0 * y1 - x1 * y0
        return s / 2

    def _walk_curves(self, walk: FaceWalk) -> List[List[Point]]:
        return [list(self.drawing.edges[k]) for _, k in walk.steps]

    def _assemble_faces(self, walks, incident):
        d = self.drawing
        # connected components over the edge set
        comp = {v: v for v in range(d.n)}

        def find(x):
            while comp[x] != x:
                comp[x] = comp[comp[x]]
                x = comp[x]
            return x

        for a, b in self.edges:
            comp[find(a)] = find(b)
        pos_walks = [w for w in walks if w.area > 0]
        neg_walks = [w for w in walks if w.area <= 0]
        faces = [Face(i, [w]) for i, w in enumerate(pos_walks)]
        outer = Face(len(faces), [], is_outer=True)
        faces.append(outer)

        def containing_face(p: Point, own_comp) -> Face:
            best = None
            for f in faces[:-1]:
                w = f.walks[0]
                if find(w.steps[0][0]) == own_comp:
                    continue
                if geom.robust_ray_parity(p, self._walk_curves(w)) == 1:
                    if best is None or abs(w.area) < abs(best.walks[0].area):
                        best = f
            return best if best is not None else outer

        for w in neg_walks:
            v0 = w.steps[0][0]
            f = containing_face(d.vertex_points[v0], find(v0))
            f.walks.append(w)
        for v in range(d.n):
            if not incident[v]:
                f = containing_face(d.vertex_points[v], find(v))
                f.isolated.append(v)
        for i, f in enumerate(faces):
            f.id = i
        self.faces = faces
        self.outer_face = outer

    # -- queries -----------------------------------------------------------

    def bounded_faces(self) -> List[Face]:
        return [f for f in self.faces if not f.is_outer]

    def face_curves(self, face: Face) -> List[List[Point]]:
        return [c for w in face.walks for c in self._walk_curves(w)]

    def vertices_in_face(self, face: Face) -> List[int]:
        """Drawing vertices strictly inside the face's region."""
        boundary = face.boundary_vertices
        want = 0 if face.is_outer else 1
        out = []
        for v in range(self.drawing.n):
            if v in boundary:
                continue
            par = geom.robust_ray_parity(self.drawing.vertex_points[v],
                                          self.face_curves(face))
            if par == want:
                out.append(v)
        return out

    def face_with_boundary(self, vertices: Set[int]) -> List[Face]:
        return [f for f in self.faces if vertices <= f.boundary_vertices]


def faces_of(d: TopoDrawing, edges: Sequence[EdgeKey]) -> PlaneSubgraph:
    """Faces of a pairwise non-crossing edge subset of the drawing."""
    return PlaneSubgraph(d, edges)


def boundary_distance(face: Face, u: int, v: int) -> int:
    """Shortest distance between u and v along the face's boundary walk."""
    for w in face.walks:
        verts = w.vertices
        pu = [i for i, x in enumerate(verts) if x == u]
        pv = [i for i, x in enumerate(verts) if x == v]
        if pu and pv:
            L = len(verts)
            return min(
                min(abs(i - j), L - abs(i - j)) for i in pu for j in pv
            )
        if pu or pv:
            break
    raise NotOnBoundaryError(f"{u} and {v} are not on one boundary walk")
