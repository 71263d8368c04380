"""Mod-2 chain machinery over drawings of K_n.

Edge chains are subsets of K_n edges; a cycle is a chain with even degree
at every vertex.  A cycle drawn in a generic drawing bounds a unique set
of arrangement cells (its "inside"), recovered here by parity propagation
through the dual graph rather than by linear algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Tuple

import numpy as np

from . import geom
from .arrangement import Arrangement, planarize
from .drawing import EdgeKey, Point, TopoDrawing, all_edges, edge_key
from .errors import InvariantViolation, TooLargeError

Z2EdgeChain = FrozenSet[EdgeKey]
Z2VertexChain = FrozenSet[int]
CellChain = FrozenSet[int]


def as_chain(edges: Iterable[Tuple[int, int]]) -> Z2EdgeChain:
    """Normalize an iterable of vertex pairs into an edge chain."""
    return frozenset(edge_key(a, b) for a, b in edges)


def boundary(z: Iterable[Tuple[int, int]]) -> Z2VertexChain:
    """Vertices of odd degree in the chain."""
    odd: set = set()
    for a, b in as_chain(z):
        odd ^= {a, b}
    return frozenset(odd)


def is_cycle(z: Iterable[Tuple[int, int]]) -> bool:
    return not boundary(z)


# cycle_space enumerates from the star-at-0 spanning tree: every non-tree
# edge (i, j) with 1 <= i < j closes the fundamental triangle {ij, 0i, 0j}.
CYCLE_SPACE_LIMIT = 24


def _fundamental_basis(n: int) -> List[Z2EdgeChain]:
    return [
        frozenset({(i, j), (0, i), (0, j)})
        for i in range(1, n)
        for j in range(i + 1, n)
    ]


def cycle_space(n: int) -> Iterator[Z2EdgeChain]:
    """All 2^C(n-1,2) - 1 nonzero cycles of K_n.

    Enumeration follows a Gray code over the fundamental-cycle basis, so
    consecutive chains differ by one basis element.
    """
    dim = math.comb(n - 1, 2)
    if dim > CYCLE_SPACE_LIMIT:
        raise TooLargeError(f"cycle space dimension {dim} > {CYCLE_SPACE_LIMIT}")
    basis = _fundamental_basis(n)
    cur: FrozenSet[EdgeKey] = frozenset()
    for k in range(1, 1 << dim):
        cur = cur ^ basis[(k & -k).bit_length() - 1]
        yield cur


def push_forward(d: TopoDrawing, z: Iterable[Tuple[int, int]]) -> FrozenSet[int]:
    """Arrangement arcs supporting the chain's edges."""
    chain = as_chain(z)
    arr = planarize(d)
    return frozenset(arc.id for arc in arr.arcs if arc.edge in chain)


def _propagate_parity(arr: Arrangement, flip_edges: Z2EdgeChain) -> Dict[int, int]:
    """Cell parities from the outer cell, flipping across chain arcs."""
    parity = {arr.outer_cell: 0}
    stack = [arr.outer_cell]
    arc_flip = [arc.edge in flip_edges for arc in arr.arcs]
    while stack:
        c = stack.pop()
        for dart in arr.cells[c].darts:
            other = int(arr.face_of_dart[dart ^ 1])
            val = parity[c] ^ (1 if arc_flip[dart // 2] else 0)
            if other not in parity:
                parity[other] = val
                stack.append(other)
            elif parity[other] != val:
                raise InvariantViolation("parity conflict: chain is not a cycle")
    return parity


def inside_chain(d: TopoDrawing, z: Iterable[Tuple[int, int]]) -> CellChain:
    """The unique cell set whose mod-2 boundary is the drawn cycle."""
    chain = as_chain(z)
    arr = planarize(d)
    parity = _propagate_parity(arr, chain)
    return frozenset(c for c, v in parity.items() if v == 1 and c != arr.outer_cell)


def cell_boundary(arr: Arrangement, cells: Iterable[int]) -> FrozenSet[int]:
    """Arcs bordering the cell set an odd number of times (i.e. exactly once)."""
    inside = set(cells)
    out = set()
    for arc in arr.arcs:
        f1 = int(arr.face_of_dart[2 * arc.id])
        f2 = int(arr.face_of_dart[2 * arc.id + 1])
        if (f1 in inside) != (f2 in inside):
            out.add(arc.id)
    return frozenset(out)


def z2_area(d: TopoDrawing, z: Iterable[Tuple[int, int]]) -> Fraction:
    """Total area enclosed by the cycle, counted with mod-2 multiplicity."""
    arr = planarize(d)
    return sum((arr.cells[c].area for c in inside_chain(d, z)), Fraction(0))


def lk2(d: TopoDrawing, z: Iterable[Tuple[int, int]], p: Point) -> int:
    """Linking parity of a generic point with the drawn cycle."""
    chain = as_chain(z)
    curves = [list(d.edges[k]) for k in chain]
    return geom.robust_ray_parity((Fraction(p[0]), Fraction(p[1])), curves)


# ---------------------------------------------------------------------------
# bit-model simulation (no geometry)


@dataclass
class RectAreaReport:
    n: int
    m: int
    trials: int
    cycle_means: np.ndarray      # mean area per cycle across trials
    min_per_trial: np.ndarray    # min over all nonzero cycles, per trial
    tail_freq: float             # frequency of area < m/3 over all samples
    tail_bound: float            # e^{-m/128}

    @property
    def grand_mean(self) -> float:
        return float(self.cycle_means.mean()) if self.cycle_means.size else 0.0


def _cycle_edge_matrix(n: int) -> np.ndarray:
    """Rows: nonzero cycles of K_n; columns: edges; entries in {0,1}."""
    eidx = {k: i for i, k in enumerate(all_edges(n))}
    rows = []
    for z in cycle_space(n):
        row = np.zeros(len(eidx), dtype=np.int64)
        for k in z:
            row[eidx[k]] = 1
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def simulate_rect_areas(n: int, m: int, trials: int, seed: int = 0) -> RectAreaReport:
    """Areas of all cycles in the bit model of the rectangle-grid drawing.

    Column k contributes unit area to cycle z iff an odd number of z's
    edges have bit 1 there, so area(z) is a Binomial(m, 1/2) variable.
    """
    M = _cycle_edge_matrix(n)          # (#cycles, E); guards size via cycle_space
    E = math.comb(n, 2)
    areas = np.zeros((trials, M.shape[0]), dtype=np.int64)
    for t in range(trials):
        bits = np.random.default_rng([seed, t]).integers(0, 2, size=(E, m))
        areas[t] = ((M @ bits) & 1).sum(axis=1)
    tail = float((areas < m / 3).mean()) if areas.size else 0.0
    return RectAreaReport(
        n=n,
        m=m,
        trials=trials,
        cycle_means=areas.mean(axis=0),
        min_per_trial=areas.min(axis=1) if M.shape[0] else np.zeros(trials, dtype=np.int64),
        tail_freq=tail,
        tail_bound=math.exp(-m / 128.0),
    )
