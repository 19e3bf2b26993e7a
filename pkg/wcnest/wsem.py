"""Answer sets of programs with weight constraints.

Z is an answer set of Ω when Z satisfies Ω and Z is the deductive closure
of the reduct Ω^Z.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from wcnest import config
from wcnest.errors import EnumerationCapExceeded, PreconditionError
from wcnest.models.core import (
    POS_INF, EquivalenceVerdict, Literal, WeightConstraint, WProgram, candidate_interpretations, signature,
    subsets,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HornRule:
    head: Literal
    body: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'body', tuple(self.body))
        for constraint in self.body:
            if not is_horn_constraint(constraint):
                raise PreconditionError(f"body constraint of {self.head} is not lower-bound-only and positive")

    def __str__(self):
        from wcnest.parser import format_constraint
        body = ', '.join(format_constraint(c) for c in self.body)
        return f"{self.head} :- {body}." if body else f"{self.head}."


def is_horn_constraint(constraint):
    return constraint.upper == POS_INF and all(c.positive for c in constraint.elements)


def satisfies_element(z, element):
    return (element.lit in z) != element.naf


def satisfied_weight(z, constraint):
    return sum((w for c, w in constraint.pairs if satisfies_element(z, c)), Fraction(0))


def satisfies_wc(z, constraint):
    total = satisfied_weight(z, constraint)
    return constraint.lower <= total and constraint.upper >= total


def satisfies_body(z, body):
    return all(satisfies_wc(z, c) for c in body)


def satisfies_wprogram(z, program):
    return all(satisfies_wc(z, rule.head) for rule in program.rules if satisfies_body(z, rule.body))


def reduct_lower(constraint, z):
    """(L <= S)^Z: drop negative pairs and lower L by the weight they contribute in Z."""
    if constraint.upper != POS_INF:
        raise PreconditionError("reduct_lower applies to lower-bound constraints L <= S only")
    dropped = sum((w for c, w in constraint.pairs if c.naf and satisfies_element(z, c)), Fraction(0))
    return WeightConstraint(
        constraint.lower.minus(dropped),
        [(c, w) for c, w in constraint.pairs if c.positive],
        POS_INF,
    )


def reduct_wprogram(program, z):
    rules = {}
    for rule in program.rules:
        if not all(satisfies_wc(z, c.upper_part()) for c in rule.body):
            continue
        body = tuple(reduct_lower(c.lower_part(), z) for c in rule.body)
        for lit in rule.head.positive_literals():
            if lit in z:
                rules.setdefault(HornRule(lit, body), None)
    return tuple(rules)


def satisfies_horn(z, rules):
    return all(rule.head in z for rule in rules if satisfies_body(z, rule.body))


def deductive_closure(rules):
    """Least set of literals closed under the Horn rules; may be inconsistent."""
    derived = set()
    pending = list(rules)
    changed = True
    while changed:
        changed = False
        remaining = []
        for rule in pending:
            if rule.head in derived:
                continue
            if all(_horn_body_holds(derived, c) for c in rule.body):
                derived.add(rule.head)
                changed = True
            else:
                remaining.append(rule)
        pending = remaining
    return frozenset(derived)


def _horn_body_holds(derived, constraint):
    total = sum((w for c, w in constraint.pairs if c.lit in derived), Fraction(0))
    return constraint.lower <= total


def candidate_universe(program):
    """Literals that can belong to an answer set: the positive head elements."""
    seen = {}
    for rule in program.rules:
        for lit in rule.head.positive_literals():
            seen.setdefault(lit, None)
    return tuple(seen)


def _check_cap(literals, cap, what='atoms'):
    cap = config.get_cap() if cap is None else cap
    size = len({lit.atom for lit in literals})
    if size > cap:
        raise EnumerationCapExceeded(size, cap, what)


def is_answer_set_w(program, z):
    if not satisfies_wprogram(z, program):
        return False
    return deductive_closure(reduct_wprogram(program, z)) == z.literals


def answer_sets_w(program, cap=None):
    universe = candidate_universe(program)
    _check_cap(universe, cap)
    found = [z for z in candidate_interpretations(universe) if is_answer_set_w(program, z)]
    logger.debug("weight program with %d rules has %d answer sets", len(program), len(found))
    return found


def weak_eq_w(first, second, cap=None):
    return answer_sets_w(first, cap) == answer_sets_w(second, cap)


def _all_literals(atoms):
    return [Literal(a, neg) for a in atoms for neg in (False, True)]


def turner_strong_eq(first, second, cap=None):
    """Strong equivalence by comparing the pairs (Z, Z') with Z' ⊆ Z, Z ⊨ Ω and Z' ⊨ Ω^Z."""
    atoms = signature(WProgram(first.rules + second.rules))
    _check_cap(_all_literals(atoms), cap)
    for z in candidate_interpretations(_all_literals(atoms)):
        in_first = satisfies_wprogram(z, first)
        in_second = satisfies_wprogram(z, second)
        if not in_first and not in_second:
            continue
        first_reduct = reduct_wprogram(first, z) if in_first else ()
        second_reduct = reduct_wprogram(second, z) if in_second else ()
        for smaller in subsets(z):
            left = in_first and satisfies_horn(smaller, first_reduct)
            right = in_second and satisfies_horn(smaller, second_reduct)
            if left != right:
                logger.debug("turner check separates the programs at Z=%s, Z'=%s", z, smaller)
                return EquivalenceVerdict(False, (z, smaller), 'turner')
    return EquivalenceVerdict(True, None, 'turner')

