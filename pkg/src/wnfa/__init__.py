"""Wheeler NFA toolkit.

Validation of Wheeler orders, linear-time minimization via the maximum
order-respecting autobisimulation, Wheeler-bisimilarity decisions, and the
brute-force references used to cross-check all of it.
"""

from .automaton import (
    OrderedAlphabet,
    ParseError,
    ValidationReport,
    Violation,
    ViolationKind,
    WheelerNfa,
    accepts,
    is_deterministic,
    parse_wnfa,
    serialize_wnfa,
    to_dot,
    validate,
)
from .equivalence import (
    EquivalenceVerdict,
    dfa_language_bisimulation,
    gen_equal_language_dfa_pair,
    hand_dfa,
    language_sample_equal,
    order_respecting_iso,
    unroll_self_loop,
    unrollable_loops,
    wheeler_bisimilar,
)
from .generators import gen_chain, gen_distinctness, gen_random_wheeler
from .minimize import (
    IncidenceExtrema,
    QuotientResult,
    boundary_bits,
    compute_extrema,
    format_trace,
    minimize,
    quotient,
)
from .relations import (
    BoundaryBits,
    CheckFailure,
    Partition,
    Relation,
    compose,
    equivalence_from_bits,
    inverse,
    is_bisimulation,
    is_convex,
    is_wheeler_bisimulation,
    max_standard_autobisimulation,
    oracle_max_wheeler_autobisimulation,
    parse_relation,
    serialize_relation,
    union,
)

__all__ = [
    "OrderedAlphabet",
    "ParseError",
    "ValidationReport",
    "Violation",
    "ViolationKind",
    "WheelerNfa",
    "accepts",
    "is_deterministic",
    "parse_wnfa",
    "serialize_wnfa",
    "to_dot",
    "validate",
    "gen_chain",
    "gen_distinctness",
    "gen_random_wheeler",
    "Relation",
    "Partition",
    "BoundaryBits",
    "CheckFailure",
    "inverse",
    "compose",
    "union",
    "is_convex",
    "is_bisimulation",
    "is_wheeler_bisimulation",
    "max_standard_autobisimulation",
    "oracle_max_wheeler_autobisimulation",
    "equivalence_from_bits",
    "parse_relation",
    "serialize_relation",
    "IncidenceExtrema",
    "QuotientResult",
    "compute_extrema",
    "boundary_bits",
    "quotient",
    "minimize",
    "format_trace",
    "EquivalenceVerdict",
    "order_respecting_iso",
    "wheeler_bisimilar",
    "dfa_language_bisimulation",
    "language_sample_equal",
    "unroll_self_loop",
    "unrollable_loops",
    "gen_equal_language_dfa_pair",
    "hand_dfa",
]
