"""Finite automata with translucent letters."""

from .model import (
    ACCEPT,
    REJECT,
    AlphabetError,
    Automaton,
    AutomatonError,
    EndAction,
    InvalidAutomatonError,
    Kind,
    KindError,
    NondeterministicError,
    ValidationReport,
    Verdict,
    goto,
    make_automaton,
    validate,
)
from .textformat import TLASyntaxError, load_tla, parse_tla, serialize_tla
from .naive import accepts_naive, decompose, find_accepting_trace, render_trace, trace_deterministic
from .fast import BACKEND, RunStats, Runner, run_fast, run_fast_returning
from .constructions import (
    ClassicalNFA,
    complement_deterministic,
    complete_reading,
    disjoint_shuffle,
    eliminate_end_loops,
    embed_nfawtl,
    normalize,
    unary_to_nfa,
    union,
)
from .analysis import (
    BudgetExceeded,
    ParikhVector,
    bounded_emptiness,
    enumerate_accepted,
    equivalent_up_to,
    parikh_sample,
    to_diagram,
)

__version__ = "0.1.0"
