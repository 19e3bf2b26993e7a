import random
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tests.programs import DENY_Q_WITH_P, DOUBLE_NEGATION, EXACTLY_ONE_WITH_P, EXCLUDED_MIDDLE
from wcnest.errors import ClassicalNegationError, EnumerationCapExceeded
from wcnest.generator import SMALL_PARAMS, random_atoms, random_constraint, random_formula
from wcnest.ht import (
    HTInterpretation, classically_satisfies, consistency_constraints, eliminate_classical_negation, ht_entails,
    ht_equivalent, ht_models, ht_satisfies, ht_valid, restore_classical_negation, rule_to_implication,
    strong_eq_nested, strong_eq_weight,
)
from wcnest.models import TOP, And, Atom, Iff, Implies, Interpretation, Lit, Literal, Not, NRule, Or, formula_literals
from wcnest.parser import parse_nested_program, parse_weight_program
from wcnest.translate import tr_constraint
from wcnest.wsem import turner_strong_eq

a, b, p, q = Lit.of('a'), Lit.of('b'), Lit.of('p'), Lit.of('q')
seeds = st.integers(min_value=0, max_value=2 ** 32)
POSITIVE_PARAMS = replace(SMALL_PARAMS, classical_negation_rate=0.0)


def random_ht_interpretation(rng, atoms):
    there = frozenset(x for x in atoms if rng.random() < 0.5)
    return HTInterpretation(frozenset(x for x in there if rng.random() < 0.5), there)


def test_rules_read_as_implications():
    assert rule_to_implication(NRule(a, Not(b))) == Implies(Not(b), a)
    assert rule_to_implication(NRule(a)) == Implies(TOP, a)


def test_here_and_there_satisfaction():
    middle = HTInterpretation.of([], ['a'])
    assert not ht_satisfies(middle, Or((a, Not(a))))
    assert ht_satisfies(middle, Not(Not(a)))
    assert not ht_satisfies(middle, Implies(Not(Not(a)), a))
    assert ht_satisfies(HTInterpretation.of(['a'], ['a']), Implies(Not(Not(a)), a))


def test_here_must_be_inside_there():
    with pytest.raises(ValueError):
        HTInterpretation.of(['a'], [])


def test_classical_negation_must_be_eliminated_first():
    with pytest.raises(ClassicalNegationError):
        ht_satisfies(HTInterpretation.of([], []), Lit.of('-a'))


def test_excluded_middle_is_not_valid():
    assert not ht_valid(Or((a, Not(a))))
    assert ht_valid(Or((Not(a), Not(Not(a)))))
    assert ht_valid(Implies(a, Not(Not(a))))


def test_entailment_and_equivalence():
    assert ht_entails([a, Implies(a, b)], b)
    assert not ht_entails([Not(Not(a))], a)
    assert ht_equivalent(Not(And((a, b))), Not(And((b, a))))
    assert not ht_equivalent(Not(Not(a)), a)


def test_models_enumerate_pairs():
    models = ht_models([Implies(Not(Not(a)), a)], [Atom('a')])
    assert [str(m) for m in models] == ['({}, {})', '({a}, {a})']


def test_excluded_middle_and_double_negation_are_strongly_equivalent():
    assert strong_eq_nested(parse_nested_program(EXCLUDED_MIDDLE), parse_nested_program(DOUBLE_NEGATION))


def test_counterexample_is_an_ht_model_of_exactly_one_program():
    first = parse_nested_program("p :- not q.")
    second = parse_nested_program("p.")
    verdict = strong_eq_nested(first, second)
    assert not verdict
    assert verdict.method == 'ht'
    assert isinstance(verdict.counterexample, HTInterpretation)


def test_weight_programs_strongly_equivalent_by_both_criteria():
    first, second = parse_weight_program(EXACTLY_ONE_WITH_P), parse_weight_program(DENY_Q_WITH_P)
    assert strong_eq_weight(first, second)
    assert turner_strong_eq(first, second)


def test_weak_but_not_strong_equivalence():
    first, second = parse_weight_program("p :- not q."), parse_weight_program("p.")
    assert not strong_eq_weight(first, second)
    assert not turner_strong_eq(first, second)


def test_classical_negation_elimination():
    program = parse_nested_program("-a :- not a.")
    elimination = eliminate_classical_negation(program)
    primed = elimination.atom_map[Atom('a')]
    assert primed == Atom('a_neg')
    assert elimination.program.rules == (NRule(Lit(Literal(primed)), Not(a)),)
    assert elimination.constraints == consistency_constraints({Atom('a'): primed})
    assert restore_classical_negation(frozenset([primed]), elimination.atom_map) == Interpretation.of('-a')


def test_fresh_names_avoid_existing_atoms():
    program = parse_nested_program("a_neg :- -a.")
    elimination = eliminate_classical_negation(program)
    assert elimination.atom_map[Atom('a')] == Atom('a_neg_')


def test_strong_equivalence_with_classical_negation():
    first = parse_nested_program("-a :- not a.")
    second = parse_nested_program("-a :- not a.\nbot :- a, -a.")
    assert strong_eq_nested(first, second)


def test_ht_cap():
    formulas = [Or(tuple(Lit.of(n) for n in 'abcdef'))]
    with pytest.raises(EnumerationCapExceeded):
        ht_models(formulas, [Atom(n) for n in 'abcdef'], cap=3)


@given(seeds)
def test_truth_persists_from_here_to_there(seed):
    rng = random.Random(seed)
    atoms = random_atoms(rng, POSITIVE_PARAMS)
    f = random_formula(rng, atoms, depth=3, params=POSITIVE_PARAMS)
    interpretation = random_ht_interpretation(rng, atoms)
    if ht_satisfies(interpretation, f):
        assert ht_satisfies(HTInterpretation(interpretation.there, interpretation.there), f)


@given(seeds)
def test_total_interpretations_are_classical(seed):
    rng = random.Random(seed)
    atoms = random_atoms(rng, POSITIVE_PARAMS)
    f = random_formula(rng, atoms, depth=3, params=POSITIVE_PARAMS)
    there = random_ht_interpretation(rng, atoms).there
    assert ht_satisfies(HTInterpretation(there, there), f) == classically_satisfies(there, f)


@given(seeds)
def test_de_morgan_laws_hold_for_negation(seed):
    rng = random.Random(seed)
    atoms = random_atoms(rng, SMALL_PARAMS)
    f, g = (random_formula(rng, atoms, params=SMALL_PARAMS) for _ in range(2))
    assert ht_valid(Iff(Not(And((f, g))), Or((Not(f), Not(g)))))
    assert ht_valid(Iff(Not(Or((f, g))), And((Not(f), Not(g)))))


@given(seeds)
def test_decided_atoms_decide_a_constraint(seed):
    rng = random.Random(seed)
    atoms = random_atoms(rng, SMALL_PARAMS)
    translated = tr_constraint(random_constraint(rng, atoms, SMALL_PARAMS))
    decided = [Or((Lit(lit), Not(Lit(lit)))) for lit in formula_literals(translated)]
    assert ht_entails(decided, Or((translated, Not(translated))))
