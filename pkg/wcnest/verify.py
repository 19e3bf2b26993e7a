"""Randomized cross-checks of the correspondence results between the two languages.

Every check draws a seeded corpus from ``wcnest.generator`` and compares two
independent computations of the same thing. A case whose enumeration would
exceed a cap is counted as skipped, never as passed.
"""
import logging
import statistics
from dataclasses import dataclass, field
from fractions import Fraction

from wcnest import config
from wcnest.completion import answer_sets_nonnested, verify_completion
from wcnest.errors import EnumerationCapExceeded, NotTightError, PreconditionError
from wcnest.generator import (
    DEFAULT_PARAMS, SMALL_PARAMS, make_rng, nested_variant_of, random_atoms, random_constraint, random_element,
    random_formula, random_interpretation, random_nonnested_nprogram, random_nprogram, random_unary_nprogram,
    random_unary_wprogram, random_wprogram, variant_of,
)
from wcnest.ht import ht_equivalent, strong_eq_nested, strong_eq_weight
from wcnest.models.core import (
    BOT, NEG_INF, POS_INF, TOP, Atom, Bound, Lit, Literal, NProgram, NRule, WeightConstraint, big_and, big_or,
    signature, sort_interpretations,
)
from wcnest.nsem import answer_sets_n, is_antichain, reduct_formula, satisfies_formula, weak_eq_n
from wcnest.parser import format_constraint, format_formula, print_nested_program, print_weight_program
from wcnest.translate import (
    AT_LEAST, GREATER_THAN, SizeMetrics, constraint_pairs, proposition3_bound, threshold_formula, tr_basic,
    tr_constraint, tr_lower, tr_nd, tr_nn, tr_upper, unfold_threshold,
)
from wcnest.wsem import answer_sets_w, reduct_lower, satisfies_wc, turner_strong_eq, weak_eq_w

logger = logging.getLogger(__name__)

# nonnested translations with more atoms than this are only checked through the completion oracle
BRUTE_FORCE_LIMIT = 8
UNARY_EXTENSIONS = 200
DEFINED_ATOMS = (Atom('u'), Atom('v'))


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    first_failure: str = None
    extra: dict = field(default_factory=dict)

    @property
    def cases(self):
        return self.passed + self.failed + self.skipped

    @property
    def ok(self):
        return self.failed == 0

    def record(self, ok, witness):
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if self.first_failure is None:
            self.first_failure = witness() if callable(witness) else witness
            logger.debug("%s failed on %s", self.name, self.first_failure)

    def to_dict(self):
        result = {
            'check': self.name,
            'status': 'pass' if self.ok else 'fail',
            'passed': self.passed,
            'failed': self.failed,
            'skipped': self.skipped,
        }
        result.update(self.extra)
        if self.first_failure is not None:
            result['first_failure'] = self.first_failure
        return result


def _one_line(text):
    return ' '.join(text.split('\n'))


def _weight_witness(*programs):
    return lambda: ' | '.join(_one_line(print_weight_program(p)) for p in programs)


def _same_sets(first, second):
    return sort_interpretations(first) == sort_interpretations(second)


def _run(name, cases, seed, check):
    result = CheckResult(name)
    rng = make_rng(seed, name)
    for _ in range(cases):
        try:
            check(rng, result)
        except (EnumerationCapExceeded, NotTightError) as e:
            logger.debug("%s: case skipped (%s)", name, e)
            result.skipped += 1
    return result


def _program_check(params, body):
    def check(rng, result):
        program = random_wprogram(rng, params)
        result.record(body(program, rng, result), _weight_witness(program))
    return check


# Weight programs against their translations ------------------------------------

def _theorem_basic(program, rng, result):
    return _same_sets(answer_sets_w(program), answer_sets_n(tr_basic(program).output))


def _theorem_nonnested(program, rng, result):
    report = tr_nn(program)
    found = answer_sets_nonnested(report.output)
    projected = [z.without(report.q_omega) for z in found]
    expected = answer_sets_w(program)
    ok = len(set(projected)) == len(found) and _same_sets(set(projected), expected)
    if ok and len(signature(report.output)) <= BRUTE_FORCE_LIMIT:
        ok = _same_sets(answer_sets_n(report.output), found)
    return ok


def _user_atoms(program):
    return {c.lit.atom for rule in program.rules for constraint in rule.constraints for c in constraint.elements}


def _nondisjunctive(program, rng, result):
    nd = tr_nd(program).output
    basic = tr_basic(program).output
    return bool(strong_eq_nested(nd, basic)) and _same_sets(answer_sets_n(nd), answer_sets_w(program))


def _size_bound(program, rng, result):
    report = tr_nn(program)
    metrics = SizeMetrics(report.constraints, report.weight_atom_count)
    loose = sum(2 * m.length * (m.weight + m.length + 2) for m in metrics.constraints)
    loose += 2 * sum(1 for m in metrics.constraints if m.length == 0)
    result.extra.setdefault('_points', []).append((metrics.sum_length_weight, report.weight_atom_count))
    count = report.weight_atom_count
    return count <= proposition3_bound(metrics) and count <= loose


def _completion(program, rng, result):
    return verify_completion(program).passed


def _antichain(program, rng, result):
    return is_antichain(answer_sets_nonnested(tr_nn(program).output))


def _strong_equivalence(rng, result):
    first = random_wprogram(rng, SMALL_PARAMS)
    if rng.random() < 0.5:
        second = variant_of(rng, first)
    else:
        second = random_wprogram(rng, SMALL_PARAMS, atoms=sorted(_user_atoms(first)) or None)
    ht = strong_eq_weight(first, second)
    turner = turner_strong_eq(first, second)
    ok = bool(ht) == bool(turner)
    if ok and ht:
        atoms = sorted(_user_atoms(first) | _user_atoms(second)) or [Atom('a')]
        for _ in range(UNARY_EXTENSIONS):
            extension = random_unary_wprogram(rng, atoms)
            if not weak_eq_w(first + extension, second + extension):
                ok = False
                break
    result.record(ok, _weight_witness(first, second))


def _finish_size_bound(result):
    points = result.extra.pop('_points', [])
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    if len(set(xs)) > 1:
        result.extra['slope'] = f"{statistics.linear_regression(xs, ys).slope:.3f}"
    if ys:
        result.extra['max_weight_atoms'] = int(max(ys))


# Single constraints -----------------------------------------------------------

def _constraint_witness(constraint, *interpretations):
    return lambda: ' '.join([format_constraint(constraint)] + [str(z) for z in interpretations])


def _translation_matches(rng, result):
    atoms = random_atoms(rng)
    constraint = random_constraint(rng, atoms)
    z = random_interpretation(rng, atoms)
    ok = satisfies_formula(z, tr_constraint(constraint)) == satisfies_wc(z, constraint)
    result.record(ok, _constraint_witness(constraint, z))


def _upward_closed(rng, n):
    generators = [frozenset(i for i in range(n) if rng.random() < 0.5) for _ in range(rng.randint(0, 3))]
    return [s for s in _index_sets(n) if any(g <= s for g in generators)]


def _index_sets(n):
    return [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


def _threshold_semantics(rng, result):
    atoms = random_atoms(rng)
    n = rng.randint(0, 4)
    formulas = [random_formula(rng, atoms) for _ in range(n)]
    z = random_interpretation(rng, atoms)
    true_indices = frozenset(i for i, f in enumerate(formulas) if satisfies_formula(z, f))
    family = _upward_closed(rng, n)
    abbreviation = big_or(big_and(formulas[i] for i in sorted(s)) for s in family)
    ok = satisfies_formula(z, abbreviation) == (true_indices in family)
    weights = [Fraction(rng.randint(0, 4)) for _ in range(n)]
    bound = Bound(rng.randint(-2, int(sum(weights)) + 2))
    for mode, holds in ((AT_LEAST, lambda t: bound <= t), (GREATER_THAN, lambda t: bound < t)):
        total = sum((weights[i] for i in true_indices), Fraction(0))
        ok = ok and satisfies_formula(z, threshold_formula(list(zip(formulas, weights)), bound, mode)) == holds(total)
    result.record(ok, lambda: f"{[format_formula(f) for f in formulas]} {z}")


def _lower_reduct(rng, result):
    atoms = random_atoms(rng)
    c = random_constraint(rng, atoms)
    constraint = WeightConstraint(c.lower, c.pairs, POS_INF)
    z = random_interpretation(rng, atoms)
    other = random_interpretation(rng, atoms)
    ok = (satisfies_formula(other, reduct_formula(tr_lower(constraint), z))
          == satisfies_wc(other, reduct_lower(constraint, z)))
    result.record(ok, _constraint_witness(constraint, z, other))


def _upper_reduct(rng, result):
    atoms = random_atoms(rng)
    c = random_constraint(rng, atoms)
    constraint = WeightConstraint(NEG_INF, c.pairs, c.upper)
    z = random_interpretation(rng, atoms)
    reduct = reduct_formula(tr_upper(constraint), z)
    ok = reduct in (TOP, BOT) and (reduct == TOP) == satisfies_wc(z, constraint)
    result.record(ok, _constraint_witness(constraint, z))


def _unfolding(rng, result):
    atoms = random_atoms(rng, SMALL_PARAMS)
    pairs = [(random_element(rng, atoms), Fraction(rng.randint(0, 4))) for _ in range(rng.randint(0, 4))]
    fs = constraint_pairs(WeightConstraint(NEG_INF, pairs, POS_INF))
    bound = Bound(rng.randint(-2, int(sum((w for _, w in pairs), Fraction(0))) + 2))
    ok = all(ht_equivalent(threshold_formula(fs, bound, mode), unfold_threshold(fs, bound, mode))
             for mode in (AT_LEAST, GREATER_THAN))
    result.record(ok, lambda: f"{format_constraint(WeightConstraint(NEG_INF, pairs, POS_INF))} bound {bound}")


# Nested programs ------------------------------------------------------------

def _definitions(rng, atoms):
    return [NRule(Lit(Literal(q)), random_formula(rng, atoms)) for q in DEFINED_ATOMS]


def _completion_lemma(rng, result):
    atoms = random_atoms(rng, SMALL_PARAMS)
    program = random_nprogram(rng, atoms, SMALL_PARAMS, body_atoms=atoms + list(DEFINED_ATOMS))
    definitions = _definitions(rng, atoms)
    one_way = program + NProgram(definitions)
    both_ways = one_way + NProgram(NRule(r.body, r.head) for r in definitions)
    ok = _same_sets(answer_sets_n(one_way), answer_sets_n(both_ways))
    result.record(ok, lambda: _one_line(print_nested_program(both_ways)))


def _explicit_definitions(rng, result):
    atoms = random_atoms(rng, SMALL_PARAMS)
    program = random_nprogram(rng, atoms, SMALL_PARAMS)
    extended = program + NProgram(_definitions(rng, atoms))
    found = answer_sets_n(extended)
    projected = [z.without(DEFINED_ATOMS) for z in found]
    ok = len(set(projected)) == len(found) and _same_sets(projected, answer_sets_n(program))
    result.record(ok, lambda: _one_line(print_nested_program(extended)))


def _nonnested_antichain(rng, result):
    atoms = random_atoms(rng)
    program = random_nonnested_nprogram(rng, atoms)
    result.record(is_antichain(answer_sets_n(program)), lambda: _one_line(print_nested_program(program)))


def _nested_strong_equivalence(rng, result):
    atoms = random_atoms(rng, SMALL_PARAMS)
    first = random_nprogram(rng, atoms, SMALL_PARAMS)
    if rng.random() < 0.5:
        second = nested_variant_of(rng, first)
    else:
        second = random_nprogram(rng, atoms, SMALL_PARAMS)
    ok = True
    if strong_eq_nested(first, second):
        extensions = (random_unary_nprogram(rng, atoms) for _ in range(UNARY_EXTENSIONS))
        ok = weak_eq_n(first, second) and all(weak_eq_n(first + e, second + e) for e in extensions)
    result.record(ok, lambda: ' | '.join(_one_line(print_nested_program(p)) for p in (first, second)))


def _nonnested_completion(rng, result):
    atoms = random_atoms(rng)
    program = random_nonnested_nprogram(rng, atoms)
    result.record(verify_completion(program).passed, lambda: _one_line(print_nested_program(program)))


CHECKS = {
    'theorem-1': _program_check(DEFAULT_PARAMS, _theorem_basic),
    'theorem-2': _program_check(DEFAULT_PARAMS, _theorem_nonnested),
    'proposition-1': _threshold_semantics,
    'proposition-2': _program_check(DEFAULT_PARAMS, _nondisjunctive),
    'proposition-3': _program_check(DEFAULT_PARAMS, _size_bound),
    'proposition-4': _strong_equivalence,
    'lemma-1': _translation_matches,
    'lemma-2': _lower_reduct,
    'lemma-3': _upper_reduct,
    'lemma-8': _unfolding,
    'completion': _program_check(DEFAULT_PARAMS, _completion),
    'completion-lemma': _completion_lemma,
    'explicit-definitions': _explicit_definitions,
    'antichain': _program_check(DEFAULT_PARAMS, _antichain),
    'nonnested-antichain': _nonnested_antichain,
    'nested-strong-equivalence': _nested_strong_equivalence,
    'nonnested-completion': _nonnested_completion,
}

THEOREMS = (1, 2)
PROPOSITIONS = (1, 2, 3, 4)
LEMMAS = (1, 2, 3, 8)


def run_check(name, cases, seed=0, cap=None):
    """Run one named check; a cap, when given, replaces both enumeration caps for the run."""
    try:
        check = CHECKS[name]
    except KeyError:
        raise PreconditionError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}") from None
    with config.caps_overridden(cap):
        result = _run(name, cases, seed, check)
    if name == 'proposition-3':
        _finish_size_bound(result)
    logger.info("%s: %d passed, %d failed, %d skipped", name, result.passed, result.failed, result.skipped)
    return result
