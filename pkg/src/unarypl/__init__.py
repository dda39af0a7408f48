"""Regular descriptions of unary languages that satisfy the pumping lemma.

A unary language is a set of word lengths.  Given a grammar over the single
letter ``a`` (or a membership oracle plus a pumping witness), the package
derives the tuples ``<p_h, q_0..q_k>`` of the pumping descent, builds one
small NFA per tuple, and reduces their union to a minimal lasso DFA.
Every output form is checked against the language's own membership test.
"""

from .automata import (
    EPS,
    EventuallyPeriodicSet,
    UnaryDFA,
    UnaryNFA,
    determinize,
    dfa_to_eps,
    empty_nfa,
    eps_add_finite,
    eps_restrict_min,
    eps_to_dfa,
    eps_to_regex,
    eps_to_regex_json,
    eps_union,
    minimize,
    nfa_accepts,
    nfa_lengths,
    nfa_union,
    tuple_to_nfa,
)
from .errors import (
    BelowConstant,
    DimensionMismatch,
    EmptyLanguage,
    FrameAssertionError,
    GrammarSyntaxError,
    NotInLanguage,
    UnaryPLError,
    WitnessSyntaxError,
    WitnessViolation,
)
from .grammar import (
    CnfGrammar,
    ParseTree,
    PumpStep,
    UnaryGrammar,
    derivable_lengths,
    grammar_lengths,
    load_grammar,
    parse_grammar,
    parse_tree,
    pump_decompose,
    pumping_constant,
    reduce,
    to_cnf,
)
from .pipeline import Config, RegularizationResult, VerificationReport, oracle_compare, regularize, soundness_filter
from .pumping import (
    LINEAGE,
    LITERAL,
    LanguageSource,
    PL1Report,
    PumpTuple,
    PumpingWitness,
    TupleTrace,
    affine_witness,
    check_pl1,
    collect_tuples,
    enumerate_family,
    family_size,
    grammar_witness,
    load_witness,
    parse_witness,
    table_witness,
    tuple_generate,
    tuple_normalize,
)
from .semilinear import (
    LinearSet,
    SemilinearSet,
    eps_to_semilinear,
    linear_member,
    linear_to_eps,
    semilinear_member,
    semilinear_union,
    tuple_to_linear,
)

__version__ = "0.1.0"
