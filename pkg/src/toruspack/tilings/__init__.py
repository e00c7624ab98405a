"""Edge-to-edge unit tilings of flat tori and their flexes."""
from .constructions import (
    build_strip_tiling,
    dodecagonal_square_triangle_tiling,
    rhombus_grid_tiling,
    rhombus_grid_tour_lengths,
    require_exact_lattice_match,
    snub_square_tiling,
    strip_on_triangular_torus,
    strip_torus_lattice,
    triangle_tiling,
)
from .core import (
    Strip,
    Tiling,
    TilingStats,
    all_vertices_tour,
    classify_edges,
    detect_strips,
    stats,
    tour,
    tour_directions,
)
from .flex import (
    FlexedConfiguration,
    FlexedLattice,
    Theorem31Report,
    check_theorem31_hypotheses,
    complete,
    flex,
    flex_exact,
    flexed_lattice,
    quad_angles,
    rotate_odd,
)
from .strips import SquareTriangleCensus, square_triangle_census, strip_density
