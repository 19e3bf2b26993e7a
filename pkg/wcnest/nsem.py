"""Answer sets of programs with nested expressions."""
import logging

from wcnest import config
from wcnest.errors import EnumerationCapExceeded
from wcnest.models.core import (
    BOT, TOP, And, Bot, Lit, Not, NProgram, NRule, Or, Top, candidate_interpretations, head_literals, signature,
    subsets,
)

logger = logging.getLogger(__name__)


def satisfies_formula(z, formula):
    match formula:
        case Lit(literal):
            return literal in z
        case Top():
            return True
        case Bot():
            return False
        case And(items):
            return all(satisfies_formula(z, f) for f in items)
        case Or(items):
            return any(satisfies_formula(z, f) for f in items)
        case Not(operand):
            return not satisfies_formula(z, operand)
    raise TypeError(f"{type(formula).__name__} is not a nested expression")


def satisfies_rule(z, rule):
    return not satisfies_formula(z, rule.body) or satisfies_formula(z, rule.head)


def satisfies_nprogram(z, program):
    return all(satisfies_rule(z, rule) for rule in program.rules)


def reduct_formula(formula, z):
    match formula:
        case Lit() | Top() | Bot():
            return formula
        case And(items):
            return And(tuple(reduct_formula(f, z) for f in items))
        case Or(items):
            return Or(tuple(reduct_formula(f, z) for f in items))
        case Not(operand):
            return BOT if satisfies_formula(z, operand) else TOP
    raise TypeError(f"{type(formula).__name__} is not a nested expression")


def reduct_nprogram(program, z):
    """Π^Z; auxiliary atoms that only occurred under not drop out of the bookkeeping."""
    rules = tuple(NRule(reduct_formula(r.head, z), reduct_formula(r.body, z)) for r in program.rules)
    remaining = program.aux_atoms & frozenset(signature(NProgram(rules)))
    return NProgram(rules, remaining)


def is_answer_set_n(program, z):
    """Z is minimal among the sets satisfying the reduct Π^Z."""
    reduct = reduct_nprogram(program, z)
    if not satisfies_nprogram(z, reduct):
        return False
    return not any(satisfies_nprogram(smaller, reduct) for smaller in subsets(z, proper=True))


def answer_sets_n(program, cap=None):
    universe = head_literals(program)
    cap = config.get_cap() if cap is None else cap
    size = len({lit.atom for lit in universe})
    if size > cap:
        raise EnumerationCapExceeded(size, cap)
    found = [z for z in candidate_interpretations(universe) if is_answer_set_n(program, z)]
    logger.debug("nested program with %d rules has %d answer sets", len(program), len(found))
    return found


def weak_eq_n(first, second, cap=None):
    return answer_sets_n(first, cap) == answer_sets_n(second, cap)


def is_antichain(sets):
    sets = list(sets)
    return not any(a < b for a in sets for b in sets)
