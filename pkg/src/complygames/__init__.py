"""Comply subtraction games and greedy sequences avoiding arithmetic
conditions: engines, generators, verification oracles, CLI and service."""

from .conditions import (
    ArityMismatch,
    AvoidanceMode,
    CandidateSearchExhausted,
    ConditionExpr,
    ConditionSyntaxError,
    LinearForm,
    builtin,
    forbidden_values,
    holds,
    is_translation_invariant,
    is_trivial_solution,
    parse_mode,
)
from .dsl import parse_condition, print_condition
from .greedysets import (
    GreedySet,
    base3_members,
    basek_01_members,
    density_profile,
    greedy_avoid_set,
    is_base3_01,
    kprime_closed_form,
    stanley_sequence,
)
from .heapgames import (
    ConditionMoves,
    DiscrepancyPairs,
    ExplicitFamily,
    MoveSet,
    NimValueTable,
    NotRealizable,
    OutcomeTable,
    Realizable,
    comply_number_outcomes,
    comply_set_outcomes,
    mex,
    noninvariant_outcomes,
    realizable_as_nim_values,
    realizable_as_subtraction_P,
    star,
    subtraction_nim_values,
    subtraction_outcomes,
)
from .injections import (
    GreedyInjection,
    greedy_injection,
    is_involution,
    named,
    permutation_coverage,
    ratio_bounds,
    unverifiable_points,
)
from .multiheap import (
    GridOutcomeTable,
    TripleAP,
    best_choice_2d,
    best_proposal_2d,
    comply_outcomes_2d,
    legal_tuple_proposal,
    proposals_2d,
    three_heap_classify,
    three_heap_solve,
)

__version__ = "0.1.0"
