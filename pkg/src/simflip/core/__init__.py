from .triangulation import (
    Edge,
    Face,
    PostconditionError,
    Triangulation,
    TriangulationError,
    ValidationReport,
    edge_key,
    is_valid,
    normalize_face,
    require_valid,
    validate,
)
from .dual import DualGraph, dual, dual_bridges, face_index
from .generate import (
    enumerate_triangulations,
    icosahedron,
    k4,
    octahedron,
    random_triangulation,
    stack,
    standard,
    subdivide,
)
from .iso import canonical_code, is_embedding_map, is_isomorphic
from .io import parse_tri, read_tri, serialize_tri, write_tri

generate_standard = standard
generate_random = random_triangulation


def faces(T: Triangulation):
    require_valid(T)
    return list(T.face_list)
