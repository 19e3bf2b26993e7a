import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.programs import NONNESTED_CHOICE, SIMPLIFIED_CHOICE
from wcnest.completion import answer_sets_nonnested
from wcnest.errors import TranslationError
from wcnest.generator import SMALL_PARAMS, random_wprogram
from wcnest.ht import ht_equivalent, strong_eq_nested
from wcnest.models import (
    BOT, NEG_INF, POS_INF, TOP, And, Atom, Bound, Interpretation, Lit, Literal, Not, Or, RuleElement,
    WeightConstraint, WProgram, WRule, signature,
)
from wcnest.nsem import answer_sets_n
from wcnest.parser import parse_nested_program, parse_weight_program, print_nested_program
from wcnest.translate import (
    AT_LEAST, GREATER_THAN, minimize_antichain, proposition3_bound, simplify_formula, simplify_integer_upper,
    size_metrics, threshold_formula, tr_basic, tr_constraint, tr_lower, tr_nd, tr_nn, tr_upper, translate,
    unfold_threshold,
)
from wcnest.wsem import answer_sets_w

a, b, c = Lit.of('a'), Lit.of('b'), Lit.of('c')
one = Fraction(1)
TINY_PARAMS = replace(SMALL_PARAMS, max_atoms=2, max_rules=2, max_length=2, max_weight=2)


def constraint(text):
    (rule,) = parse_weight_program(f"{text}.").rules
    return rule.head


def test_threshold_formula_lists_every_qualifying_subset():
    assert threshold_formula([(a, one), (b, one)], 0, AT_LEAST) == Or((TOP, a, b, And((a, b))))
    assert threshold_formula([(a, one), (b, one)], 1, GREATER_THAN) == And((a, b))
    assert threshold_formula([], 1, AT_LEAST) == BOT


def test_minimize_antichain_keeps_minimal_sets():
    assert minimize_antichain([(a, one), (b, one)], 0) == TOP
    assert minimize_antichain([(a, one), (b, one)], 1) == Or((a, b))
    assert minimize_antichain([(a, Fraction(2))], 1) == a


def test_minimized_threshold_is_ht_equivalent():
    fs = [(a, one), (b, Fraction(2)), (Not(c), one)]
    for bound in range(-1, 5):
        for mode in (AT_LEAST, GREATER_THAN):
            assert ht_equivalent(threshold_formula(fs, bound, mode), minimize_antichain(fs, bound, mode))


def test_constraint_translation_parts():
    assert simplify_formula(tr_lower(constraint("1 <= {c}"))) == c
    assert tr_lower(constraint("1 <= {}")) == BOT
    assert tr_upper(constraint("{a} <= 3")) == Not(BOT)
    assert tr_lower(constraint("{a} <= 3")) == TOP
    raw = tr_constraint(constraint("0 <= {a, b} <= 1"))
    assert ht_equivalent(raw, Not(And((a, b))))


def test_integer_upper_bound_rewrite():
    assert simplify_integer_upper(constraint("{a, b} <= 1")) == Not(And((a, b)))
    assert simplify_integer_upper(constraint("{a} <= 0")) == Not(a)
    assert simplify_integer_upper(constraint("{} <= 5")) == Not(BOT)
    assert simplify_integer_upper(constraint("{a, b} <= 3/2")) == Not(And((a, b)))
    upper = constraint("{a=2, b, not c} <= 2")
    assert ht_equivalent(simplify_integer_upper(upper), tr_upper(upper))


def test_integer_upper_bound_rewrite_needs_integer_weights():
    with pytest.raises(TranslationError):
        simplify_integer_upper(constraint("{a=1/2} <= 1"))


def test_basic_translation_of_the_choice_program(choice_program):
    report = tr_basic(choice_program)
    assert report.q_omega == frozenset()
    assert strong_eq_nested(report.output, parse_nested_program(SIMPLIFIED_CHOICE))


def test_simplified_basic_translation_matches_the_display(choice_program):
    report = tr_basic(choice_program, simplify=True)
    assert print_nested_program(report.output) == SIMPLIFIED_CHOICE


def test_basic_translation_of_the_weighted_rule(weighted_program):
    expected = parse_nested_program("a :- (not a; not b), not (not a, not b).")
    assert strong_eq_nested(tr_basic(weighted_program).output, expected)
    assert strong_eq_nested(tr_basic(weighted_program, simplify=True).output, expected)


def test_basic_translation_of_a_fact():
    output = tr_basic(parse_weight_program("p.")).output
    assert answer_sets_n(output) == [Interpretation.of('p')]
    assert strong_eq_nested(output, parse_nested_program("(p; not p), p."))


def test_nondisjunctive_translation(choice_program):
    output = tr_nd(choice_program).output
    assert len(output) == 3
    assert all(isinstance(rule.head, Lit) or rule.head == BOT for rule in output.rules)
    assert strong_eq_nested(output, parse_nested_program(NONNESTED_CHOICE))
    assert strong_eq_nested(tr_nd(choice_program, simplify=True).output, output)


def test_nondisjunctive_translation_of_a_fact():
    output = tr_nd(parse_weight_program("p.")).output
    assert strong_eq_nested(output, parse_nested_program("p :- not not p.\nbot :- not p."))
    assert answer_sets_n(output) == [Interpretation.of('p')]
    assert len(tr_nd(WProgram()).output) == 0


NONNESTED_CHOICE_RULES = """\
q_not_a :- not a.
a :- not q_not_a.
q_not_b :- not b.
b :- not q_not_b.
bot :- not q_0_le_a_1_b_1.
bot :- q_1_lt_a_1_b_1.
q_0_le_a_1_b_1.
q_1_lt_a_1_b_1 :- q_1_lt_a_1.
q_1_lt_a_1_b_1 :- b, q_0_lt_a_1.
q_0_lt_a_1 :- q_0_lt.
q_0_lt_a_1 :- a, q_m1_lt.
q_m1_lt."""


def test_nonnested_translation_of_the_choice_program(choice_program):
    report = tr_nn(choice_program)
    assert print_nested_program(report.output) == NONNESTED_CHOICE_RULES
    assert report.rule_count == 12
    assert report.weight_atom_count == 6
    assert {atom.name for atom in report.q_omega} == {
        'q_not_a', 'q_not_b', 'q_0_le_a_1_b_1', 'q_1_lt_a_1_b_1', 'q_1_lt_a_1', 'q_0_lt_a_1', 'q_0_lt', 'q_m1_lt',
    }
    assert report.output.aux_atoms == report.q_omega


def test_nonnested_answer_sets_project_bijectively(choice_program):
    report = tr_nn(choice_program)
    found = answer_sets_nonnested(report.output)
    projected = [z.without(report.q_omega) for z in found]
    assert len(set(projected)) == len(found) == 3
    assert sorted(projected, key=Interpretation.sort_key) == answer_sets_w(choice_program)


def test_unreachable_lower_bound_has_no_definition():
    program = parse_weight_program("b :- 3 <= {a}.\na.")
    report = tr_nn(program)
    assert 'q_3_le_a_1' in {atom.name for atom in report.q_omega}
    assert not any(rule.head == Lit.of('q_3_le_a_1') for rule in report.output.rules)
    projected = [z.without(report.q_omega) for z in answer_sets_nonnested(report.output)]
    assert projected == answer_sets_w(program) == [Interpretation.of('a')]


def test_nonnested_translation_rejects_reserved_names():
    element = RuleElement(Literal(Atom('q_x')))
    with pytest.raises(TranslationError):
        tr_nn(WProgram([WRule(WeightConstraint.element(element))]))


def test_long_constraints_are_refused_by_the_exponential_translations():
    pairs = [(RuleElement(Literal(Atom(f"a{i}"))), 1) for i in range(21)]
    program = WProgram([WRule(WeightConstraint(Bound(1), pairs, POS_INF))])
    with pytest.raises(TranslationError):
        tr_basic(program)
    assert tr_nn(program).rule_count > 0


def test_size_metrics(choice_program):
    metrics = size_metrics(choice_program)
    (only,) = metrics.constraints
    assert (only.length, only.weight) == (2, 2)
    assert metrics.weight_atom_count == 6
    assert metrics.weight_atom_count <= proposition3_bound(metrics)
    empty = size_metrics(WProgram())
    assert (empty.constraints, empty.weight_atom_count, empty.sum_length_weight) == ((), 0, 0)


def test_translate_dispatches_on_mode(choice_program):
    assert translate(choice_program, 'nn').mode == 'nn'
    with pytest.raises(TranslationError):
        translate(choice_program, 'bogus')


def test_report_to_dict(choice_program):
    fields = tr_nn(choice_program).to_dict()
    assert fields['rules'] == 12
    assert fields['weight_atoms'] == 6
    assert fields['aux_atoms'] == 8
    assert fields['sum_length_weight'] == '4'


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([0, 1, 2, 3]), max_size=4), st.integers(-2, 8),
       st.sampled_from([AT_LEAST, GREATER_THAN]))
def test_unfolding_is_ht_equivalent(weights, bound, mode):
    fs = [(f, Fraction(w)) for f, w in zip([a, Not(b), c, Lit.of('-a')], weights)]
    assert ht_equivalent(threshold_formula(fs, bound, mode), unfold_threshold(fs, bound, mode))


def test_unfolding_ranges():
    assert unfold_threshold([(a, one)], 0) == TOP
    assert unfold_threshold([(a, one)], 2) == BOT
    assert unfold_threshold([(a, one)], -1, GREATER_THAN) == TOP
    assert unfold_threshold([(a, one)], 1, GREATER_THAN) == BOT


def test_lower_infinite_bounds_translate_to_top():
    assert tr_lower(WeightConstraint(NEG_INF, [(RuleElement.of('a'), 1)], Bound(0))) == TOP


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_nonnested_translation_agrees_with_brute_force(seed):
    program = random_wprogram(random.Random(seed), TINY_PARAMS)
    report = tr_nn(program)
    found = answer_sets_nonnested(report.output)
    projected = [z.without(report.q_omega) for z in found]
    assert len(set(projected)) == len(found)
    assert sorted(projected, key=Interpretation.sort_key) == answer_sets_w(program)
    if len(signature(report.output)) <= 8:
        assert set(answer_sets_n(report.output)) == set(found)
