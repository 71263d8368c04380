"""Finding pairwise disjoint 4-faces in complete simple drawings.

A 4-face is the inside of a non-self-intersecting 4-cycle.  The extractor
grows a plane subgraph rooted at an outer vertex, derives a plane matching
on the remaining vertices, and then harvests 4-faces from one of three
regimes: a high-degree fan, an antichain of disjoint matching intervals,
or a chain of nested ones.  All constructions re-verify themselves; a
guaranteed search that comes up empty raises LemmaViolation with a
witness instead of glossing over it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from . import geom
from .arrangement import (
    Face,
    PlaneSubgraph,
    boundary_distance,
    cells_inside_cycle,
    cycle_edges,
    vertices_inside,
)
from .drawing import (
    EdgeKey,
    Point,
    TopoDrawing,
    clockwise_labels,
    edge_key,
    ensure_outer_vertex,
    has_outer_vertex,
)
from .errors import (
    InvariantViolation,
    LemmaViolation,
    NotAdjacentError,
    NotJordanError,
    PreconditionError,
    TooLargeError,
)


def _icbrt(n: int) -> int:
    r = round(n ** (1 / 3))
    while r ** 3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _closed_curve(d: TopoDrawing, cycle: Sequence[int]) -> List[Point]:
    """Concatenated polyline of the cycle's edges, one loop, no repeat."""
    pts: List[Point] = []
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        poly = list(d.edges[edge_key(a, b)])
        if poly[0] != d.vertex_points[a]:
            poly.reverse()
        pts.extend(poly[:-1])
    return pts


def _interior_point(d: TopoDrawing, curve: List[Point]) -> Point:
    """A point with odd ray parity relative to the closed curve."""
    loops = [curve + [curve[0]]]
    for i in range(len(curve)):
        a, b = curve[i], curve[(i + 1) % len(curve)]
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        nx, ny = a[1] - b[1], b[0] - a[0]   # left normal
        eps = Fraction(1, 8)
        for _ in range(48):
            for sx in (1, -1):
                p = (mid[0] + sx * nx * eps, mid[1] + sx * ny * eps)
                try:
                    if geom.robust_ray_parity(p, loops) == 1:
                        return p
                except geom.DegeneracyError:
                    pass
            eps /= 8
    raise InvariantViolation("no interior point found for cycle")


class FourFace:
    """The inside of a non-self-intersecting 4-cycle."""

    def __init__(self, d: TopoDrawing, cycle: Sequence[int]):
        if len(cycle) != 4 or len(set(cycle)) != 4:
            raise NotJordanError(f"not a 4-cycle: {cycle}")
        cd = d.crossings
        keys = cycle_edges(list(cycle))
        for k1, k2 in itertools.combinations(keys, 2):
            if cd.edges_cross(k1, k2):
                raise NotJordanError(f"cycle edges {k1} and {k2} cross")
        self.drawing = d
        self.cycle: Tuple[int, int, int, int] = tuple(cycle)
        self.curve = _closed_curve(d, cycle)
        self.area: Fraction = abs(geom.signed_area(self.curve))
        self._cells: Optional[FrozenSet[int]] = None
        self._point: Optional[Point] = None

    @property
    def cells(self) -> FrozenSet[int]:
        """Arrangement cells inside the cycle (computed on first use)."""
        if self._cells is None:
            self._cells = cells_inside_cycle(self.drawing, list(self.cycle), jordan=True)
        return self._cells

    def interior_point(self) -> Point:
        if self._point is None:
            self._point = _interior_point(self.drawing, self.curve)
        return self._point

    @property
    def edge_keys(self) -> List[EdgeKey]:
        return cycle_edges(list(self.cycle))

    def __repr__(self):
        return f"FourFace{self.cycle}"


def four_face(d: TopoDrawing, cycle: Sequence[int]) -> FourFace:
    return FourFace(d, cycle)


class Triangle:
    """A 3-face; in a simple drawing every 3-cycle is non-self-intersecting."""

    def __init__(self, d: TopoDrawing, a: int, b: int, c: int):
        self.drawing = d
        self.vertices: Tuple[int, int, int] = (a, b, c)
        self.curve = _closed_curve(d, self.vertices)
        self.area: Fraction = abs(geom.signed_area(self.curve))
        self._cells: Optional[FrozenSet[int]] = None
        self._inside: Optional[List[int]] = None

    @property
    def cells(self) -> FrozenSet[int]:
        if self._cells is None:
            self._cells = cells_inside_cycle(self.drawing, list(self.vertices), jordan=True)
        return self._cells

    @property
    def inside_vertices(self) -> List[int]:
        if self._inside is None:
            self._inside = vertices_inside(self.drawing, list(self.vertices))
        return self._inside

    @property
    def empty(self) -> bool:
        return not self.inside_vertices

    def __repr__(self):
        return f"Triangle{self.vertices}"


def triangle(d: TopoDrawing, a: int, b: int, c: int) -> Triangle:
    return Triangle(d, a, b, c)


# ---------------------------------------------------------------------------
# edges into a face


def inner_edges(d: TopoDrawing, H: PlaneSubgraph, v: int, need=2) -> List[EdgeKey]:
    """Edges of the drawing from v to the boundary of v's face of H.

    Returned edges cross no edge of H, so their interior stays inside the
    face.  At least one exists when v has degree one in H, at least two
    when v is untouched by H; fewer is a LemmaViolation (the drawing is
    not a valid complete simple drawing).
    """
    need = {"one": 1, "two": 2}.get(need, need)
    deg = sum(1 for k in H.edges if v in k)
    if deg == 0:
        face = next(f for f in H.faces if v in f.isolated)
    elif deg == 1:
        face = next(f for f in H.faces if v in f.boundary_vertices)
    else:
        raise PreconditionError(f"vertex {v} has degree {deg} in H")
    cd = d.crossings
    out = []
    for u in sorted(face.boundary_vertices):
        if u == v:
            continue
        k = edge_key(u, v)
        if k in H.edges:
            continue
        if all(not cd.edges_cross(k, h) for h in H.edges):
            out.append(k)
    if len(out) < need:
        raise LemmaViolation(
            f"only {len(out)} uncrossed edges from vertex {v} into its face",
            witness={"vertex": v, "H": sorted(H.edges), "found": out},
        )
    return out


# ---------------------------------------------------------------------------
# 4-face inside a triangle / from adjacent triangles


def four_face_in_triangle(d: TopoDrawing, T: Triangle, w: int) -> FourFace:
    """A 4-face through w lying inside the triangle T."""
    a, b, c = T.vertices
    if geom.robust_ray_parity(d.vertex_points[w], [T.curve + [T.curve[0]]]) != 1:
        raise PreconditionError(f"vertex {w} is not inside triangle {T.vertices}")
    cd = d.crossings
    sides = [edge_key(a, b), edge_key(b, c), edge_key(a, c)]
    clean = [
        x
        for x in sorted((a, b, c))
        if all(not cd.edges_cross(edge_key(w, x), s) for s in sides)
    ]
    for x, y in itertools.combinations(clean, 2):
        z = ({a, b, c} - {x, y}).pop()
        try:
            return FourFace(d, (w, x, z, y))
        except NotJordanError:
            continue
    raise LemmaViolation(
        f"no 4-face through {w} inside triangle {T.vertices}",
        witness={"triangle": T.vertices, "vertex": w, "clean": clean},
    )


def four_face_from_adjacent_triangles(d: TopoDrawing, T: Triangle, Tp: Triangle) -> FourFace:
    """Merge two triangles sharing an edge into the quadrilateral 4-face."""
    s1, s2 = set(T.vertices), set(Tp.vertices)
    shared = sorted(s1 & s2)
    if len(shared) != 2:
        raise NotAdjacentError(f"triangles {T.vertices} and {Tp.vertices} share {shared}")
    x = (s1 - s2).pop()
    y = (s2 - s1).pop()
    a, b = shared
    try:
        return FourFace(d, (a, x, b, y))
    except NotJordanError as exc:
        raise NotAdjacentError(f"quadrilateral of {T.vertices}/{Tp.vertices} self-crosses: {exc}")


# ---------------------------------------------------------------------------
# 4-face inside a face of size k (recursive construction)


def _walk_positions(walk: List[int], v: int) -> List[int]:
    return [i for i, x in enumerate(walk) if x == v]


def _middle_vertex(walk: List[int], x: int, y: int) -> int:
    k = len(walk)
    for i in _walk_positions(walk, x):
        for j in _walk_positions(walk, y):
            if (i + 2) % k == j:
                return walk[(i + 1) % k]
            if (j + 2) % k == i:
                return walk[(j + 1) % k]
    raise InvariantViolation(f"{x} and {y} not at walk distance 2")


def _subfaces_at(H2: PlaneSubgraph, u: int) -> List[Face]:
    return [f for f in H2.faces if u in f.boundary_vertices]


def _split_and_recurse(
    d: TopoDrawing, H: PlaneSubgraph, F: Face, u: int, x: int, y: int, depth: int
) -> FourFace:
    """Add ux, uy to H; F splits in two; recurse into the crowded side."""
    k = F.size
    H2 = PlaneSubgraph(d, set(H.edges) | {edge_key(u, x), edge_key(u, y)})
    subs = _subfaces_at(H2, u)
    if len(subs) != 2:
        raise InvariantViolation(f"face split produced {len(subs)} faces at {u}")
    s, r = subs[0].size, subs[1].size
    if s + r != k + 4 or min(s, r) < 5 or max(s, r) > k - 1:
        raise InvariantViolation(f"split sizes {s}+{r} from a face of size {k}")
    for f in sorted(subs, key=lambda f: (f.size, min(f.boundary_vertices))):
        if len(H2.vertices_in_face(f)) >= 6 * (f.size - 4):
            return four_face_in_face(d, H2, f, _depth=depth + 1)
    raise InvariantViolation(
        f"neither side of the split holds enough vertices (sizes {s},{r})"
    )


def _case3_pair(
    d: TopoDrawing,
    H: PlaneSubgraph,
    F: Face,
    u1: int,
    u2: int,
    v1: int,
    v2: int,
    walk: List[int],
    depth: int,
) -> Optional[FourFace]:
    """Two interior vertices hooked to the same consecutive boundary pair."""
    cd = d.crossings
    cross_a = cd.edges_cross(edge_key(u1, v2), edge_key(u2, v1))
    cross_b = cd.edges_cross(edge_key(u1, v1), edge_key(u2, v2))
    if not cross_a and not cross_b:
        T1 = triangle(d, u1, v1, v2)
        if u2 in T1.inside_vertices:
            return four_face_in_triangle(d, T1, u2)
        T2 = triangle(d, u2, v1, v2)
        if u1 in T2.inside_vertices:
            return four_face_in_triangle(d, T2, u1)
        return None
    if not cross_a:
        u1, u2 = u2, u1   # now u1v2 crosses u2v1
    try:
        H3 = PlaneSubgraph(
            d,
            set(H.edges) | {edge_key(u1, v1), edge_key(u1, v2), edge_key(u2, v2)},
        )
    except Exception:
        return None     # both diagonals cross; try another pair
    cand = inner_edges(d, H3, u2, 1)
    targets = sorted({x for e in cand for x in e if x != u2})
    k = len(walk)
    p1 = next(
        i for i in _walk_positions(walk, v1) if walk[(i + 1) % k] == v2
    )
    v3 = walk[(p1 + 2) % k]
    vprev = walk[(p1 - 1) % k]
    for vi in targets:
        if vi == v3:
            return FourFace(d, (u2, v1, v2, v3))
        if vi == u1:
            return FourFace(d, (u2, u1, v1, v2))
        if vi == vprev:
            return FourFace(d, (u2, vprev, v1, v2))
    for vi in targets:
        for anchor in (v2, v1):
            dist = boundary_distance(F, anchor, vi)
            if dist == 2:
                mid = _middle_vertex(walk, anchor, vi)
                return FourFace(d, (u2, anchor, mid, vi))
            if 3 <= dist <= k - 3:
                return _split_and_recurse(d, H, F, u2, anchor, vi, depth)
    return None


def four_face_in_face(d: TopoDrawing, H: PlaneSubgraph, F: Face, _depth: int = 0) -> FourFace:
    """A 4-face inside a size-k face holding at least 6(k-4) vertices.

    Works down the face by cases: a vertex hooked to boundary points at
    walk distance 2 closes a 4-face directly; distance >= 3 splits the
    face and recurses into the crowded half; otherwise two interior
    vertices share a consecutive boundary pair and the crossing pattern
    of their hooks decides the outcome.
    """
    k = F.size
    if F.is_outer:
        raise LemmaViolation("unbounded faces are not supported here")
    if k < 5:
        raise LemmaViolation(f"face of size {k} < 5")
    if len(F.walks) != 1:
        raise LemmaViolation("face boundary is disconnected (H must be connected)")
    if _depth > k - 4:
        raise InvariantViolation(f"recursion deeper than face-size budget ({_depth})")
    interior = sorted(H.vertices_in_face(F))
    if len(interior) < 6 * (k - 4):
        raise PreconditionError(
            f"face of size {k} holds {len(interior)} < {6 * (k - 4)} vertices"
        )
    walk = F.walks[0].vertices
    info: Dict[int, List[int]] = {}
    for u in interior:
        cand = inner_edges(d, H, u, 2)
        info[u] = sorted({x for e in cand for x in e if x != u})
    # Case 1: some hook pair at distance 2 closes a 4-face directly.
    split_candidate = None
    for u in interior:
        for x, y in itertools.combinations(info[u], 2):
            dist = boundary_distance(F, x, y)
            if dist == 2:
                return FourFace(d, (u, x, _middle_vertex(walk, x, y), y))
            if dist >= 3 and split_candidate is None:
                split_candidate = (u, x, y)
    # Case 2: a pair at distance >= 3 splits the face.
    if split_candidate is not None:
        return _split_and_recurse(d, H, F, *split_candidate, depth=_depth)
    # Case 3: all hooks land on consecutive boundary vertices.
    groups: Dict[Tuple[int, int], List[int]] = {}
    for u in interior:
        ts = info[u]
        pair = None
        for i, x in enumerate(walk):
            y = walk[(i + 1) % k]
            if x in ts and y in ts and x != y:
                pair = (x, y)
                break
        if pair is None:
            raise InvariantViolation(f"hooks of {u} are not consecutive: {ts}")
        groups.setdefault(pair, []).append(u)
    for pair in sorted(groups, key=lambda p: min(_walk_positions(walk, p[0]))):
        us = groups[pair]
        for u1, u2 in itertools.combinations(us, 2):
            got = _case3_pair(d, H, F, u1, u2, pair[0], pair[1], walk, _depth)
            if got is not None:
                return got
    raise LemmaViolation(
        f"no 4-face found in face of size {k}",
        witness={"walk": walk, "interior": interior, "hooks": info},
    )


# ---------------------------------------------------------------------------
# the iterative plane subgraph (spanning star + grown edges)


@dataclass
class PipelineState:
    drawing: TopoDrawing
    v0: int
    labels: List[int]                  # labels[t] = vertex carrying label t
    pos: Dict[int, int]                # vertex -> label
    blocks: List[List[int]]            # all parts, in label order
    H: PlaneSubgraph = None
    i: int = 0
    trace: List[dict] = field(default_factory=list)


def _degrees(n: int, edges: Set[EdgeKey]) -> List[int]:
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return deg


def _triangle_empty(d: TopoDrawing, a: int, b: int, c: int) -> bool:
    return not vertices_inside(d, [a, b, c])


def check_plane_properties(d: TopoDrawing, state: PipelineState, edges: Set[EdgeKey], i: int):
    """The four running invariants of the iterative construction."""
    n = d.n
    v0 = state.v0
    pos = state.pos
    deg = _degrees(n, edges)
    spokes = {u for a, b in edges if v0 in (a, b) for u in (a, b) if u != v0}
    non_spoke = [k for k in edges if v0 not in k]
    if len(non_spoke) < i:
        raise InvariantViolation(f"{len(non_spoke)} non-spoke edges < i={i}")
    full = sum(
        1 for blk in state.blocks if blk and all(deg[v] == 1 for v in blk)
    )
    if full < (n - 1) // 5 - 2 * i:
        raise InvariantViolation(
            f"{full} all-degree-one parts < {(n - 1) // 5 - 2 * i} at i={i}"
        )
    for v in range(n):
        if v != v0 and v not in spokes and deg[v] != 0:
            raise InvariantViolation(f"vertex {v} lost its spoke but has edges")
    for a, b in non_spoke:
        if a in spokes and b in spokes:
            ta, tb = sorted((pos[a], pos[b]))
            if not _triangle_empty(d, v0, a, b):
                continue
            if tb != ta + 1 or (ta - 1) // 5 != (tb - 1) // 5:
                raise InvariantViolation(
                    f"empty triangle at labels ({ta},{tb}) not consecutive in one part"
                )
            if _adjacent_partner(state, edges, ta, tb) is None:
                raise InvariantViolation(
                    f"empty triangle at labels ({ta},{tb}) has no adjacent triangle"
                )


def _adjacent_partner(
    state: PipelineState, edges: Set[EdgeKey], ta: int, tb: int
) -> Optional[Tuple[int, int]]:
    """Labels of a triangle adjacent to the empty triangle at (ta, tb)."""
    v0 = state.v0
    labels = state.labels
    spokes = {u for a, b in edges if v0 in (a, b) for u in (a, b) if u != v0}
    present = sorted(state.pos[u] for u in spokes)
    idx = {t: q for q, t in enumerate(present)}
    if ta not in idx or tb not in idx or idx[tb] != idx[ta] + 1:
        return None
    if idx[tb] + 1 < len(present):
        tc = present[idx[tb] + 1]
        if edge_key(labels[tb], labels[tc]) in edges:
            return (tb, tc)
    if idx[ta] > 0:
        tp = present[idx[ta] - 1]
        if edge_key(labels[tp], labels[ta]) in edges:
            return (tp, ta)
    return None


def _pick_target(state: PipelineState, v: int, cands: List[EdgeKey]) -> int:
    targets = sorted(
        (x for e in cands for x in e if x != v), key=lambda x: state.pos.get(x, -1)
    )
    return targets[0]


def build_plane_subgraph(d: TopoDrawing, v0: int) -> PipelineState:
    """Grow a plane subgraph with ~n/12 edges off the spanning star at v0.

    Each round picks a still-untouched part of five consecutive labels and
    hooks its middle vertex to the boundary of its face, taking care that
    any empty triangle at v0 that this creates comes with an adjacent
    companion triangle (the pair later merges into a 4-face).
    """
    n = d.n
    order = clockwise_labels(d, v0)
    labels = [v0] + order
    pos = {v: t for t, v in enumerate(labels)}
    nblocks = (n - 1) // 5
    blocks = [order[5 * j : 5 * j + 5] for j in range(nblocks)]
    if (n - 1) % 5:
        blocks.append(order[5 * nblocks :])
    state = PipelineState(d, v0, labels, pos, blocks)
    edges: Set[EdgeKey] = {edge_key(v0, u) for u in order}
    cd = d.crossings

    for i in range(n // 12):
        deg = _degrees(n, edges)
        block = next(
            (b for b in blocks if len(b) == 5 and all(deg[v] == 1 for v in b)), None
        )
        if block is None:
            state.trace.append({"i": i, "case": "no-free-part"})
            break
        H = PlaneSubgraph(d, edges)
        u3 = block[2]
        vk = _pick_target(state, u3, inner_edges(d, H, u3, 1))
        step = {"i": i, "part": [pos[v] for v in block], "target": pos[vk]}
        if vk not in (block[1], block[3]):
            edges.add(edge_key(u3, vk))
            step["case"] = "1"
        else:
            ws = block if vk == block[3] else block[::-1]
            w1, w2, w3, w4, w5 = ws
            if not _triangle_empty(d, v0, w3, w4):
                edges.add(edge_key(w3, w4))
                step["case"] = "2-nonempty"
            else:
                H1 = PlaneSubgraph(d, edges | {edge_key(w3, w4)})
                vl = _pick_target(state, w2, inner_edges(d, H1, w2, 1))
                if vl == w3:
                    edges |= {edge_key(w3, w4), edge_key(w2, w3)}
                    step["case"] = "2-adjacent"
                elif vl != w1:
                    edges.add(edge_key(w2, vl))
                    step["case"] = "2-sidestep"
                elif not _triangle_empty(d, v0, w1, w2):
                    edges.add(edge_key(w1, w2))
                    step["case"] = "2-outer-nonempty"
                else:
                    H2 = PlaneSubgraph(
                        d, (edges | {edge_key(w1, w2)}) - {edge_key(v0, w3)}
                    )
                    vt = _pick_target(state, w4, inner_edges(d, H2, w4, 1))
                    if cd.edges_cross(edge_key(w4, vt), edge_key(v0, w3)):
                        edges.discard(edge_key(v0, w3))
                        if vt == w5:
                            edges.add(edge_key(w4, w5))
                            step["case"] = "2a-outer"
                        elif vt == w2:
                            edges |= {edge_key(w1, w2), edge_key(w2, w4)}
                            step["case"] = "2a-pair"
                        else:
                            edges.add(edge_key(w4, vt))
                            step["case"] = "2a-free"
                    else:
                        if vt == w5:
                            edges |= {edge_key(w3, w4), edge_key(w4, w5)}
                            step["case"] = "2b-pair"
                        else:
                            edges.add(edge_key(w4, vt))
                            step["case"] = "2b-free"
        state.trace.append(step)
        state.i = i + 1
        check_plane_properties(d, state, edges, state.i)
    state.H = PlaneSubgraph(d, edges)
    return state


# ---------------------------------------------------------------------------
# matching and laminar structure


@dataclass(frozen=True)
class IntervalEdge:
    lo: int            # label positions, lo < hi
    hi: int
    key: EdgeKey       # the underlying drawing edge


def greedy_matching(state: PipelineState) -> List[IntervalEdge]:
    """Maximal matching over the non-spoke edges, lexicographic greedy."""
    items = []
    for k in sorted(state.H.edges):
        if state.v0 in k:
            continue
        a, b = state.pos[k[0]], state.pos[k[1]]
        items.append(IntervalEdge(min(a, b), max(a, b), k))
    items.sort(key=lambda e: (e.lo, e.hi))
    used: Set[int] = set()
    out = []
    for e in items:
        if used & set(e.key):
            continue
        used |= set(e.key)
        out.append(e)
    return out


def laminar_decompose(M: Sequence[IntervalEdge]) -> Dict[str, List[IntervalEdge]]:
    """Chain (nested) or antichain (disjoint) of size >= ceil(sqrt(|M|))."""
    ivs = sorted(M, key=lambda e: (e.lo, -e.hi))
    depth: Dict[IntervalEdge, int] = {}
    parent: Dict[IntervalEdge, Optional[IntervalEdge]] = {}
    stack: List[IntervalEdge] = []
    for e in ivs:
        while stack and stack[-1].hi < e.lo:
            stack.pop()
        if stack:
            p = stack[-1]
            if e.hi > p.hi:
                raise InvariantViolation(f"intervals {p} and {e} cross")
            depth[e] = depth[p] + 1
            parent[e] = p
        else:
            depth[e] = 0
            parent[e] = None
        stack.append(e)
    if not M:
        return {"antichain": []}
    levels: Dict[int, List[IntervalEdge]] = {}
    for e, dep in depth.items():
        levels.setdefault(dep, []).append(e)
    max_depth = max(levels)
    width = max(len(v) for v in levels.values())
    need = math.isqrt(len(M) - 1) + 1
    if max_depth + 1 >= width:
        leaf = max(depth, key=lambda e: (depth[e], -e.lo))
        chain = []
        cur: Optional[IntervalEdge] = leaf
        while cur is not None:
            chain.append(cur)
            cur = parent[cur]
        chain.reverse()             # outermost first
        if len(chain) < need:
            raise InvariantViolation(f"chain of {len(chain)} < required {need}")
        return {"chain": chain}
    level = max(levels.values(), key=len)
    level.sort(key=lambda e: e.lo)
    if len(level) < need:
        raise InvariantViolation(f"antichain of {len(level)} < required {need}")
    return {"antichain": level}


# ---------------------------------------------------------------------------
# disjointness


def _faces_disjoint(d: TopoDrawing, f: FourFace, g: FourFace) -> bool:
    """Open insides disjoint: no boundary crossing and no containment."""
    fe, ge = set(f.edge_keys), set(g.edge_keys)
    if fe == ge:
        return False
    cd = d.crossings
    for a in fe - ge:
        for b in ge - fe:
            if cd.edges_cross(a, b):
                return False
    gloop = [g.curve + [g.curve[0]]]
    floop = [f.curve + [f.curve[0]]]
    if geom.robust_ray_parity(f.interior_point(), gloop) == 1:
        return False
    if geom.robust_ray_parity(g.interior_point(), floop) == 1:
        return False
    return True


def verify_disjoint(d: TopoDrawing, faces: Sequence[FourFace]) -> bool:
    return all(
        _faces_disjoint(d, f, g) for f, g in itertools.combinations(faces, 2)
    )


# ---------------------------------------------------------------------------
# the extraction pipeline


def _k2m_branch(d: TopoDrawing, state: PipelineState, hub: int) -> List[FourFace]:
    v0 = state.v0
    H = state.H
    spokes = {u for a, b in H.edges if v0 in (a, b) for u in (a, b) if u != v0}
    xs = sorted(
        (
            x
            for k in H.edges
            if hub in k and v0 not in k
            for x in k
            if x != hub and x in spokes
        ),
        key=lambda x: state.pos[x],
    )
    out = []
    for x1, x2 in zip(xs, xs[1:]):
        try:
            out.append(FourFace(d, (v0, x1, hub, x2)))
        except NotJordanError:
            continue
    return out


def _antichain_triangle_face(
    d: TopoDrawing, state: PipelineState, e: IntervalEdge
) -> FourFace:
    v0 = state.v0
    a, b = state.labels[e.lo], state.labels[e.hi]
    T = triangle(d, v0, a, b)
    if not T.empty:
        return four_face_in_triangle(d, T, min(T.inside_vertices))
    partner = _adjacent_partner(state, set(state.H.edges), e.lo, e.hi)
    if partner is None:
        raise InvariantViolation(
            f"empty triangle at labels ({e.lo},{e.hi}) lacks an adjacent triangle"
        )
    tc, td = partner
    Tp = triangle(d, v0, state.labels[tc], state.labels[td])
    return four_face_from_adjacent_triangles(d, T, Tp)


def _chain_pair_face(
    d: TopoDrawing, state: PipelineState, outer: IntervalEdge, inner: IntervalEdge
) -> FourFace:
    v0 = state.v0
    la, ra = state.labels[outer.lo], state.labels[outer.hi]
    lb, rb = state.labels[inner.lo], state.labels[inner.hi]
    six = {
        edge_key(v0, la),
        edge_key(v0, ra),
        edge_key(v0, lb),
        edge_key(v0, rb),
        edge_key(la, ra),
        edge_key(lb, rb),
    }
    H6 = PlaneSubgraph(d, six)
    ring = [
        f
        for f in H6.bounded_faces()
        if f.size == 6 and {v0, la, ra, lb, rb} <= f.boundary_vertices
    ]
    if len(ring) != 1:
        raise InvariantViolation(
            f"expected one size-6 face between nested intervals, found {len(ring)}"
        )
    return four_face_in_face(d, H6, ring[0])


def extract_with_trace(d: TopoDrawing) -> Tuple[List[FourFace], dict, TopoDrawing]:
    """Pairwise disjoint 4-faces plus a structured run trace."""
    d2 = ensure_outer_vertex(d)
    v0 = has_outer_vertex(d2)
    state = build_plane_subgraph(d2, v0)
    n = d2.n
    trace: dict = {"v0": v0, "iterations": state.trace, "branch": "none"}
    thresh = max(2, _icbrt(n))
    deg = _degrees(n, set(state.H.edges))
    hub = next(
        (v for v in state.labels[1:] if deg[v] >= thresh), None
    )
    def matching_branch() -> List[FourFace]:
        M = greedy_matching(state)
        trace["matching"] = [(e.lo, e.hi) for e in M]
        if not M:
            return []
        dec = laminar_decompose(M)
        if "antichain" in dec:
            trace["branch"] = "antichain"
            return [_antichain_triangle_face(d2, state, e) for e in dec["antichain"]]
        chain = dec["chain"]
        trace["branch"] = "chain"
        thin = chain[::7]
        if len(thin) >= 2:
            return [
                _chain_pair_face(d2, state, thin[j], thin[j + 1])
                for j in range(len(thin) - 1)
            ]
        # chain too short to thin: fall back to its innermost triangle
        trace["fallback"] = "innermost-triangle"
        return [_antichain_triangle_face(d2, state, chain[-1])]

    def filter_disjoint(faces: List[FourFace]) -> Tuple[List[FourFace], List]:
        kept: List[FourFace] = []
        dropped = []
        for f in faces:
            if all(_faces_disjoint(d2, f, g) for g in kept):
                kept.append(f)
            else:
                dropped.append(f.cycle)
        return kept, dropped

    if hub is not None:
        trace["branch"] = "k2m"
        trace["hub"] = state.pos[hub]
        kept, dropped = filter_disjoint(_k2m_branch(d2, state, hub))
        if len(kept) < pipeline_floor(n):
            # the fan was too thin at this scale; the matching regime applies
            alt, alt_dropped = filter_disjoint(matching_branch())
            if len(alt) > len(kept):
                kept, dropped = alt, alt_dropped
    else:
        kept, dropped = filter_disjoint(matching_branch())
    trace["faces"] = [f.cycle for f in kept]
    trace["dropped"] = dropped
    return kept, trace, d2


def extract_disjoint_four_faces(d: TopoDrawing) -> List[FourFace]:
    faces, _, _ = extract_with_trace(d)
    return faces


def pipeline_floor(n: int) -> int:
    """The committed lower bound on the number of extracted faces."""
    return max(1, _icbrt(n) // 28 - 1)


# ---------------------------------------------------------------------------
# brute-force oracles (small n)


def brute_force_four_faces(d: TopoDrawing) -> List[FourFace]:
    if d.n > 8:
        raise TooLargeError(f"brute force limited to n <= 8, got {d.n}")
    out = []
    for quad in itertools.combinations(range(d.n), 4):
        a, b, c, e = quad
        for cycle in ((a, b, c, e), (a, c, b, e), (a, b, e, c)):
            try:
                out.append(FourFace(d, cycle))
            except NotJordanError:
                continue
    return out


def brute_force_max_disjoint(d: TopoDrawing) -> int:
    faces = brute_force_four_faces(d)
    m = len(faces)
    adj = [0] * m
    for i, j in itertools.combinations(range(m), 2):
        if not (faces[i].cells & faces[j].cells):
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    best = 0

    def grow(cand: int, size: int):
        nonlocal best
        best = max(best, size)
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            grow(cand & adj[v], size + 1)

    grow((1 << m) - 1, 0)
    return best


def heilbronn_min_area(d: TopoDrawing, k: int) -> Tuple[Fraction, Tuple[int, ...]]:
    """Smallest k-face area found, with its witnessing cycle."""
    if k == 3:
        best = None
        for tri in itertools.combinations(range(d.n), 3):
            area = abs(geom.signed_area(_closed_curve(d, tri)))
            if best is None or area < best[0]:
                best = (area, tri)
        return best
    if k != 4:
        raise ValueError("k must be 3 or 4")
    if d.n <= 8:
        faces = brute_force_four_faces(d)
    else:
        faces = extract_disjoint_four_faces(d)
    best = None
    for f in faces:
        if best is None or f.area < best[0]:
            best = (f.area, f.cycle)
    if best is None:
        raise LemmaViolation("no 4-face found")
    return best
