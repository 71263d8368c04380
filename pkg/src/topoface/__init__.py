"""Exact-arithmetic toolkit for complete topological graphs.

Drawings of K_n with polyline edges and rational coordinates; planar
arrangements; Z2 cycle-space areas; and extraction of pairwise disjoint
empty quadrilateral faces.
"""

from .arrangement import (
    Arrangement,
    PlaneSubgraph,
    boundary_distance,
    cells_inside_cycle,
    faces_of,
    locate,
    planarize,
    vertices_inside,
)
from .drawing import (
    GENERIC,
    SIMPLE,
    TopoDrawing,
    all_edges,
    edge_key,
    ensure_outer_vertex,
    has_outer_vertex,
    read_drawing,
    validate,
    weak_isomorphic,
    write_drawing,
)
from .errors import (
    ConstructionError,
    DegeneracyError,
    InvariantViolation,
    LemmaViolation,
    NotJordanError,
    NotPlaneError,
    NotSimpleError,
    ParseError,
    PreconditionError,
    TooLargeError,
    TopofaceError,
)
from .facefinder import (
    FourFace,
    Triangle,
    brute_force_four_faces,
    brute_force_max_disjoint,
    build_plane_subgraph,
    extract_disjoint_four_faces,
    extract_with_trace,
    four_face,
    four_face_from_adjacent_triangles,
    four_face_in_face,
    four_face_in_triangle,
    greedy_matching,
    heilbronn_min_area,
    inner_edges,
    laminar_decompose,
    pipeline_floor,
    triangle,
    verify_disjoint,
)
from .generators import (
    Z2RectSpec,
    gen_straightline,
    gen_twisted,
    gen_twisted_square,
    gen_z2_rect,
    random_point_drawing,
    twisted_probe,
)
from .homology import (
    as_chain,
    boundary,
    cell_boundary,
    cycle_space,
    inside_chain,
    is_cycle,
    lk2,
    push_forward,
    simulate_rect_areas,
    z2_area,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
