"""Determinize NFAs via the subset construction and bound the resulting DFA
size ahead of time from transition-monoid size, Boolean-matrix ranges, GF(2)
ranks, and precedence-graph cyclicity."""

from .boolmat import (
    DEFAULT_RANGE_CAP,
    BoolMatrix,
    RangeCapExceeded,
    cyclicity,
    matrix_range,
    rank_gf2,
    transition_matrices,
)
from .bounds import (
    DEFAULT_MONOID_CAP,
    BoundReport,
    MonoidClosure,
    all_but_one_bound,
    full_report,
    monoid_bound,
    monoid_closure,
    range_bound,
    subset_complexity,
    unary_monoid_bounds,
)
from .determinize import (
    DEFAULT_MAX_STATES,
    BlowUpError,
    Dfa,
    SubsetAutomaton,
    check_brzozowski,
    distinguishing_word,
    equivalent,
    is_universal,
    minimize,
    state_complexity,
    subset_construct,
    subset_to_dfa,
    universality_witness,
)
from .fsa import (
    EPSILON,
    Fsa,
    ParseError,
    Word,
    accepts,
    complete_with_dead_state,
    is_codeterministic,
    is_deterministic,
    is_total,
    is_trim,
    parse_fsa,
    remove_epsilon,
    reverse,
    serialize_fsa,
    trim,
)
from .generators import (
    RandomNfaSpec,
    gen_meyer_fischer,
    gen_mf_gadget,
    gen_modified_moore,
    gen_moore,
    gen_random,
    gen_union_gadget,
    gen_universal,
)

__version__ = "0.1.0"
