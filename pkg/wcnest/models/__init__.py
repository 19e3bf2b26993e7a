from wcnest.models.core import (
    BOT, HEADLESS, NEG_INF, POS_INF, RESERVED_PREFIX, TOP,
    And, Atom, AtomKind, Bot, Bound, Formula, Iff, Implies, Interpretation, Lit, Literal, NafAtomKey, Not,
    EquivalenceVerdict, NProgram, NRule, Or, RuleElement, Top, WeightAtomKey, WeightConstraint, WProgram, WRule,
    as_fraction, aux_name, big_and, big_or, candidate_interpretations, complement, element_formula,
    format_number, formula_atoms, formula_literals, head_literals, is_naf_free, signature,
    sort_interpretations, subformulas, subsets,
)
