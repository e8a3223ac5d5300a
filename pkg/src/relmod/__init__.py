"""Congruence-modularity decision procedures and relation-identity checking
for finite algebras given by operation tables."""

from .algebras import (
    AlgebraError,
    Apply,
    CapExceeded,
    FiniteAlgebra,
    FreeElement,
    TermError,
    Variable,
    dump_algebra,
    eval_term,
    format_term,
    free_algebra,
    generate_subuniverse,
    load_algebra,
    term_table,
)
from .identities import (
    INF,
    IdentityStatement,
    ParseError,
    Verdict,
    catalog,
    catalog_entry,
    catalog_labels,
    check_identity,
    eval_expr,
    parse_identity,
    print_expr,
    print_statement,
    with_sorts,
)
from .maltsev import (
    DaySystem,
    DirectedGummSystem,
    ModularityStatus,
    PreconditionError,
    SearchStatus,
    WitnessChain,
    decide_modularity,
    find_day,
    find_directed_gumm,
    q_bound,
    r_bound,
    verify_day,
    verify_directed_gumm,
    witness_day,
    witness_turt,
    witness_turtt,
)
from .relations import (
    BinRel,
    RelKind,
    RelLattice,
    compose,
    congruence_generated,
    converse,
    delta,
    enumerate_relations,
    format_rel_literal,
    intersect,
    is_admissible,
    is_congruence,
    is_reflexive,
    is_tolerance,
    m_compose,
    nabla,
    parse_rel_literal,
    plus,
    power,
    refl_adm_closure,
    star,
    tolerance_of,
    union,
)

__version__ = "0.1.0"
