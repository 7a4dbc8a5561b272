"""polyprime: exact lattice-shape classification and binomial-ideal primality certificates."""

from .classify import (
    ClosedPathCert,
    Ladder,
    LConfiguration,
    OpenPath,
    Trimino,
    closed_path_certificate,
    find_l_configurations,
    find_ladders,
    has_block_of_length,
    open_path_certificate,
    trimino_certificate,
)
from .families import (
    CanonicalForm,
    ConditionViolated,
    FamilySpec,
    build_psc,
    build_rectangle_linked,
    canonical_form,
    certify_family,
    check_good_l_rectangle,
    enumerate_closed_paths,
    verify_main_theorem,
)
from .grid import (
    Block,
    Cell,
    DisconnectedCellsError,
    EdgeInterval,
    EmptyPolyominoError,
    GridParseError,
    Interval,
    Point,
    Polyomino,
    PolyominoError,
    edges,
    format_grid,
    format_shape_json,
    holes,
    inner_intervals,
    is_connected,
    is_simple,
    maximal_blocks,
    maximal_edge_intervals,
    parse_grid,
    parse_shape_json,
    vertices,
    walk_to_path,
)
from .ideals import (
    Binomial,
    Monomial,
    ToricMap,
    check_containment,
    evaluate,
    inner_minors,
    toric_map_ladder,
    toric_map_lconfig,
    toric_map_marked,
)
from .toric import (
    Budget,
    BudgetExhausted,
    CounterexampleFound,
    ExponentMatrix,
    GroebnerBasis,
    MonomialOrder,
    NotInSupportedClass,
    PrimalityVerdict,
    buchberger,
    certify_primality,
    exponent_matrix,
    ideal_equal,
    integer_kernel,
    kernel_complete_up_to_degree,
    lattice_basis_ideal,
    saturate,
    toric_ideal,
    toric_ideal_from_matrix,
)
from .zigzag import ZigZagWalk, find_zigzag_walk, verify_zigzag

__version__ = "0.1.0"
