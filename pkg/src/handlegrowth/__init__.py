"""Growth rates of handlebody automorphisms from their combinatorial data.

Graph maps and their incidence matrices, Perron-Frobenius eigenpairs,
tightening moves that lower the growth rate, Penner pairs with boundary
dilatations, and free group checks on the induced fundamental group map.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .graphs import (  # noqa: F401
    Graph,
    GraphMap,
    Token,
    carrier_incidence,
    compose_maps,
    free_reduce_path,
    identity_map,
    incidence_matrix,
    parse_path,
    validate_graph,
    valence,
)
from .spectral import (  # noqa: F401
    NonNegMatrix,
    PFResult,
    SCCReport,
    is_irreducible,
    pf_eigen,
    scc_decomposition,
    spectral_radius_reducible,
    subinvariance_test,
)
from .tightening import (  # noqa: F401
    MoveOutcome,
    TighteningMove,
    WeightSystem,
    apply_move,
    evaluate_move,
    growth_of_power,
    move_gain,
    search_moves,
    standard_weights,
)
from .freegroup import (  # noqa: F401
    FreeEndomorphism,
    abelianization,
    apply_endo,
    compose_endos,
    format_word,
    induced_pi1_map,
    is_surjective,
    parse_word,
    reduce_word,
)
from .penner import (  # noqa: F401
    DualArc,
    PennerPair,
    build_boundary_pair,
    compare_growth,
    penner_product,
    twist_matrix,
    validate_pair,
)
