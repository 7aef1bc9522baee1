"""Explicit Margulis-number bounds for hyperbolic 3-manifolds.

The library computes the integer threshold N(lambda), the volume bound
lambda*(8*N(lambda) - 2) and its closed form, the index and rank
corollaries, and verifies every quantitative ingredient (word counts,
ball volumes, packing margins, triangle areas, Jorgensen values,
short-relation search) by brute-force and geometric checks at desk scale.
"""

from .bounds import (
    BoundParams,
    BoundsReport,
    DomainError,
    compute_n,
    full_report,
    gap_sign_diagnostic,
    index_bound,
    margulis_gap,
    nestimate,
    rank_bound,
    rank_from_index,
    volume_bound_closed,
    volume_bound_exact,
    volume_from_relation,
)
from .freegroup import (
    ENUMERATION_CAP,
    ReducedWord,
    WordBall,
    concat,
    count_cyclic_powers,
    cyclic_reduce,
    enumerate_ball,
    invert,
    reduce,
)
from .geometry import (
    ORIGIN,
    Isometry,
    Point,
    Triangle,
    apply,
    ball_volume,
    displacement,
    distance,
    ideal_cap_area,
    jorgensen_value,
    parse_generator_matrices,
    triangle_area,
)
from .numerics import DOUBLE, EXTENDED, EXTENDED_BITS, HALF_LOG3, LOG3
from .packing import (
    GeneratorPair,
    PackingInconsistencyError,
    PackingReport,
    coset_lower_bound,
    evaluate_word,
    packing_certificate,
    packing_chain_check,
    relation_length_bound,
    search_relation,
)

__version__ = "0.1.0"

__all__ = [
    "BoundParams",
    "BoundsReport",
    "DomainError",
    "DOUBLE",
    "ENUMERATION_CAP",
    "EXTENDED",
    "EXTENDED_BITS",
    "GeneratorPair",
    "HALF_LOG3",
    "Isometry",
    "LOG3",
    "ORIGIN",
    "PackingInconsistencyError",
    "PackingReport",
    "Point",
    "ReducedWord",
    "Triangle",
    "WordBall",
    "apply",
    "ball_volume",
    "compute_n",
    "concat",
    "coset_lower_bound",
    "count_cyclic_powers",
    "cyclic_reduce",
    "displacement",
    "distance",
    "enumerate_ball",
    "evaluate_word",
    "full_report",
    "gap_sign_diagnostic",
    "ideal_cap_area",
    "index_bound",
    "invert",
    "jorgensen_value",
    "margulis_gap",
    "nestimate",
    "packing_certificate",
    "packing_chain_check",
    "parse_generator_matrices",
    "rank_bound",
    "rank_from_index",
    "reduce",
    "relation_length_bound",
    "search_relation",
    "triangle_area",
    "volume_bound_closed",
    "volume_bound_exact",
    "volume_from_relation",
]
