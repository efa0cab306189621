"""Supervisory control synthesis of modular discrete-event systems with a
coordinator: generators and language operations, classical controllability
and supremal synthesis, and the conditional-controllability layer with its
distributed synthesis procedure."""

from .automata import (
    EPSILON,
    Alphabet,
    Generator,
    PropertyReport,
    Word,
    empty_generator,
    format_word,
    from_words,
    make_generator,
    membership,
    parse_word,
    reachable_events,
    shortest_words,
    trim_accessible,
    union_alphabets,
    universal_generator,
)
from .coordination import (
    ConditionalControllabilityReport,
    SynthesisResult,
    check_optimality_conditions,
    conditionally_decomposable,
    conditionally_independent,
    default_coordinator,
    is_conditionally_controllable,
    suggest_coordinator_events,
    sup_cc,
    sup_cc_simplified,
    synthesize_supervisors,
)
from .errors import (
    AlphabetMismatchError,
    ControllabilityConflictError,
    DescoordError,
    DeterminismError,
    PreconditionError,
    ProjectError,
    ValidationError,
)
from .language import (
    CoordinationScheme,
    ProjectionSpec,
    inverse_project,
    language_equal,
    language_subset,
    language_union,
    project,
    sync_product,
    widen_alphabet,
)
from .structural import is_observer, is_occ
from .synthesis import (
    Supervisor,
    closed_loop,
    is_admissible,
    is_controllable,
    sup_c,
)

__all__ = [
    "EPSILON",
    "Alphabet",
    "AlphabetMismatchError",
    "ConditionalControllabilityReport",
    "ControllabilityConflictError",
    "CoordinationScheme",
    "DescoordError",
    "DeterminismError",
    "Generator",
    "PreconditionError",
    "ProjectError",
    "ProjectionSpec",
    "PropertyReport",
    "Supervisor",
    "SynthesisResult",
    "ValidationError",
    "Word",
    "check_optimality_conditions",
    "closed_loop",
    "conditionally_decomposable",
    "conditionally_independent",
    "default_coordinator",
    "empty_generator",
    "format_word",
    "from_words",
    "inverse_project",
    "is_admissible",
    "is_conditionally_controllable",
    "is_controllable",
    "is_observer",
    "is_occ",
    "language_equal",
    "language_subset",
    "language_union",
    "make_generator",
    "membership",
    "parse_word",
    "project",
    "reachable_events",
    "shortest_words",
    "suggest_coordinator_events",
    "sup_c",
    "sup_cc",
    "sup_cc_simplified",
    "sync_product",
    "synthesize_supervisors",
    "trim_accessible",
    "union_alphabets",
    "universal_generator",
    "widen_alphabet",
]
