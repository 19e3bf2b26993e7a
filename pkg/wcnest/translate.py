"""Translations of weight-constraint programs into programs with nested expressions.

``tr_basic`` and ``tr_nd`` expand every constraint into a threshold formula
(a disjunction over index sets, exponential in the constraint length);
``tr_nn`` introduces auxiliary negation atoms and weight atoms and produces a
nonnested program whose size is polynomial for integer weights.
"""
import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from wcnest import config
from wcnest.errors import TranslationError
from wcnest.models.core import (
    BOT, NEG_INF, POS_INF, RESERVED_PREFIX, TOP,
    And, AtomKind, Bot, Bound, Lit, Literal, NafAtomKey, Not, NProgram, NRule, Or, Top, WeightAtomKey,
    aux_name, big_and, big_or, element_formula, format_number, signature,
)

logger = logging.getLogger(__name__)

AT_LEAST = 'at-least'
GREATER_THAN = 'greater-than'


@dataclass(frozen=True)
class ConstraintMetrics:
    constraint: object
    length: int
    weight: Fraction


@dataclass(frozen=True)
class TranslationReport:
    output: NProgram
    mode: str
    q_omega: frozenset = frozenset()
    weight_atom_count: int = 0
    constraints: tuple = field(default=())

    @property
    def rule_count(self):
        return len(self.output)

    def to_dict(self):
        return {
            'mode': self.mode,
            'rules': self.rule_count,
            'aux_atoms': len(self.q_omega),
            'weight_atoms': self.weight_atom_count,
            'sum_length_weight': format_number(sum((m.length * m.weight for m in self.constraints), Fraction(0))),
            'q_omega': ','.join(sorted(a.name for a in self.q_omega)),
        }


def _qualifies(total, bound, mode):
    if mode == AT_LEAST:
        return bound <= total
    if mode == GREATER_THAN:
        return bound < total
    raise ValueError(f"unknown threshold mode {mode!r}")


def qualifying_index_sets(weights, bound, mode):
    """Index sets I with the summed weight meeting the bound, by size then lexicographically."""
    bound = Bound.of(bound)
    indices = range(len(weights))
    return [
        subset
        for size in range(len(weights) + 1)
        for subset in itertools.combinations(indices, size)
        if _qualifies(sum((weights[i] for i in subset), Fraction(0)), bound, mode)
    ]


def _disjunction(fs, index_sets):
    return big_or(big_and(fs[i][0] for i in subset) for subset in index_sets)


def threshold_formula(fs, bound, mode=AT_LEAST):
    """The disjunction, over the index sets meeting the bound, of the conjunction of the selected formulas."""
    fs = list(fs)
    return _disjunction(fs, qualifying_index_sets([w for _, w in fs], bound, mode))


def minimize_antichain(fs, bound, mode=AT_LEAST):
    """Like threshold_formula, restricted to the subset-minimal index sets."""
    fs = list(fs)
    index_sets = qualifying_index_sets([w for _, w in fs], bound, mode)
    qualifying = [frozenset(s) for s in index_sets]
    minimal = [s for s, members in zip(index_sets, qualifying) if not any(other < members for other in qualifying)]
    return _disjunction(fs, minimal)


def constraint_pairs(constraint):
    return [(element_formula(c), w) for c, w in constraint.pairs]


def tr_lower(constraint):
    if constraint.lower == NEG_INF:
        return TOP
    return threshold_formula(constraint_pairs(constraint), constraint.lower, AT_LEAST)


def tr_upper(constraint):
    if constraint.upper == POS_INF:
        return TOP
    return Not(threshold_formula(constraint_pairs(constraint), constraint.upper, GREATER_THAN))


def tr_constraint(constraint):
    return And((tr_lower(constraint), tr_upper(constraint)))


def simplify_integer_upper(constraint, minimal=False):
    """[S <= U] as not [floor(U)+1 <= S]; needs integer weights."""
    for element, weight in constraint.pairs:
        if weight.denominator != 1:
            raise TranslationError(f"weight {weight} of {element} is not an integer")
    upper = constraint.upper
    if upper == POS_INF:
        return TOP
    if upper == NEG_INF:
        return Not(TOP)
    build = minimize_antichain if minimal else threshold_formula
    return Not(build(constraint_pairs(constraint), Bound(math.floor(upper.value) + 1), AT_LEAST))


def simplify_formula(formula):
    """Flatten nested conjunctions/disjunctions, absorb ⊤ and ⊥, collapse singletons."""
    match formula:
        case Not(operand):
            inner = simplify_formula(operand)
            if isinstance(inner, Top):
                return BOT
            if isinstance(inner, Bot):
                return TOP
            return Not(inner)
        case And(items):
            parts = []
            for item in map(simplify_formula, items):
                if isinstance(item, Bot):
                    return BOT
                members = item.items if isinstance(item, And) else (item,)
                parts.extend(m for m in members if not isinstance(m, Top))
            return big_and(dict.fromkeys(parts))
        case Or(items):
            parts = []
            for item in map(simplify_formula, items):
                if isinstance(item, Top):
                    return TOP
                members = item.items if isinstance(item, Or) else (item,)
                parts.extend(m for m in members if not isinstance(m, Bot))
            return big_or(dict.fromkeys(parts))
    return formula


def simplified_constraint(constraint):
    pairs = constraint_pairs(constraint)
    lower = TOP if constraint.lower == NEG_INF else minimize_antichain(pairs, constraint.lower, AT_LEAST)
    if all(w.denominator == 1 for _, w in constraint.pairs):
        upper = simplify_integer_upper(constraint, minimal=True)
    elif constraint.upper == POS_INF:
        upper = TOP
    else:
        upper = Not(minimize_antichain(pairs, constraint.upper, GREATER_THAN))
    return simplify_formula(And((lower, upper)))


def unfold_threshold(fs, bound, mode=AT_LEAST):
    """One case split of [w <= S] (or [w < S]) on the last pair of S."""
    fs = list(fs)
    bound = Bound.of(bound)
    total = sum((w for _, w in fs), Fraction(0))
    if mode == AT_LEAST:
        if bound <= 0:
            return TOP
        recurse = bound > 0 and bound <= total
    else:
        if bound < 0:
            return TOP
        recurse = bound >= 0 and bound < total
    if not recurse:
        return BOT
    last, weight = fs[-1]
    rest = fs[:-1]
    return Or((
        threshold_formula(rest, bound, mode),
        And((last, threshold_formula(rest, bound.minus(weight), mode))),
    ))


def _metrics(program):
    return tuple(ConstraintMetrics(c, c.length, c.weight) for c in program.constraints())


def _guard_length(program):
    limit = config.DEFAULTS['max_basic_length']
    for constraint in program.constraints():
        if constraint.length > limit:
            raise TranslationError(
                f"constraint of length {constraint.length} exceeds {limit}; "
                f"the basic and nondisjunctive translations are exponential in the length (use mode nn)"
            )


def _check_simplification(raw, simplified):
    # local import: ht builds on this module
    from wcnest.ht import ht_equivalent
    for before, after in ((raw.head, simplified.head), (raw.body, simplified.body)):
        if before != after and not ht_equivalent(before, after):
            raise TranslationError(f"simplification changed the meaning of a rule: {before} vs {after}")


def _finish(rules, raw_rules, simplify):
    if simplify:
        for raw, simplified in zip(raw_rules, rules):
            _check_simplification(raw, simplified)
    return rules


def _choice(lit):
    return Or((Lit(lit), Not(Lit(lit))))


def tr_basic(program, simplify=False):
    _guard_length(program)
    raw_rules, rules = [], []
    for rule in program.rules:
        head_choices = [_choice(l) for l in rule.head.positive_literals()]
        raw = NRule(big_and(head_choices + [tr_constraint(rule.head)]),
                    big_and(tr_constraint(c) for c in rule.body))
        raw_rules.append(raw)
        if simplify:
            rules.append(NRule(
                simplify_formula(big_and(head_choices + [simplified_constraint(rule.head)])),
                simplify_formula(big_and(simplified_constraint(c) for c in rule.body)),
            ))
        else:
            rules.append(raw)
    output = NProgram(_finish(rules, raw_rules, simplify))
    logger.debug("basic translation: %d rules", len(output))
    return TranslationReport(output, 'basic', constraints=_metrics(program))


def tr_nd(program, simplify=False):
    _guard_length(program)
    raw_rules, rules = [], []
    for rule in program.rules:
        translate = [tr_constraint]
        if simplify:
            translate.append(simplified_constraint)
        variants = []
        for build in translate:
            body = [build(c) for c in rule.body]
            group = [NRule(Lit(l), big_and([Not(Not(Lit(l)))] + body)) for l in rule.head.positive_literals()]
            group.append(NRule(BOT, big_and([Not(build(rule.head))] + body)))
            variants.append(group)
        raw_rules.extend(variants[0])
        if simplify:
            rules.extend(NRule(simplify_formula(r.head), simplify_formula(r.body)) for r in variants[1])
        else:
            rules.extend(variants[0])
    output = NProgram(_finish(rules, raw_rules, simplify))
    logger.debug("nondisjunctive translation: %d rules", len(output))
    return TranslationReport(output, 'nd', constraints=_metrics(program))


class _NonnestedBuilder:
    """Emits the rules of the nonnested translation and the definitions of the weight atoms they use."""

    def __init__(self):
        self.rules = []
        self.aux = {}
        self.queue = deque()

    def naf_atom(self, lit):
        return self._register(NafAtomKey(lit), define=False)

    def weight_atom(self, relation, bound, pairs):
        return self._register(WeightAtomKey(relation, bound, pairs), define=True)

    def _register(self, key, define):
        if key not in self.aux:
            self.aux[key] = aux_name(key)
            if define:
                self.queue.append(key)
        return Lit(Literal(self.aux[key]))

    def constraint_body(self, constraint):
        lower = self.weight_atom('le', constraint.lower, constraint.pairs)
        upper = self.weight_atom('lt', constraint.upper, constraint.pairs)
        return [lower, Not(upper)]

    def add_rule(self, rule):
        body = [f for c in rule.body for f in self.constraint_body(c)]
        for lit in rule.head.positive_literals():
            q_not = self.naf_atom(lit)
            self.rules.append(NRule(q_not, Not(Lit(lit))))
            self.rules.append(NRule(Lit(lit), big_and([Not(q_not)] + body)))
        lower = self.weight_atom('le', rule.head.lower, rule.head.pairs)
        upper = self.weight_atom('lt', rule.head.upper, rule.head.pairs)
        self.rules.append(NRule(BOT, big_and([Not(lower)] + body)))
        self.rules.append(NRule(BOT, big_and([upper] + body)))

    def close(self):
        while self.queue:
            self._define(self.queue.popleft())

    def _define(self, key):
        atom = Lit(Literal(self.aux[key]))
        total = key.total_weight
        w = key.bound
        if key.relation == 'le':
            fact = w <= 0
            recurse = w > 0 and w <= total
        else:
            fact = w < 0
            recurse = w >= 0 and w < total
        if fact:
            self.rules.append(NRule(atom, TOP))
        elif recurse:
            last, weight = key.prefix[-1]
            shorter = key.prefix[:-1]
            self.rules.append(NRule(atom, self.weight_atom(key.relation, w, shorter)))
            self.rules.append(NRule(atom, And((
                element_formula(last), self.weight_atom(key.relation, w.minus(weight), shorter),
            ))))


def _check_reserved(program):
    for atom in signature(program):
        if atom.name.startswith(RESERVED_PREFIX):
            raise TranslationError(
                f"atom {atom.name!r} uses the prefix {RESERVED_PREFIX!r} reserved for auxiliary atoms"
            )


def tr_nn(program):
    _check_reserved(program)
    builder = _NonnestedBuilder()
    for rule in program.rules:
        builder.add_rule(rule)
    builder.close()
    q_omega = frozenset(builder.aux.values())
    weight_atoms = sum(1 for a in q_omega if a.kind is AtomKind.AUX_WEIGHT)
    output = NProgram(builder.rules, q_omega)
    logger.debug("nonnested translation: %d rules, %d weight atoms", len(output), weight_atoms)
    return TranslationReport(output, 'nn', q_omega, weight_atoms, _metrics(program))


TRANSLATIONS = {
    'basic': tr_basic,
    'nd': tr_nd,
    'nn': lambda program, simplify=False: tr_nn(program),
}


def translate(program, mode='basic', simplify=False):
    try:
        build = TRANSLATIONS[mode]
    except KeyError:
        raise TranslationError(f"unknown translation mode {mode!r}") from None
    return build(program, simplify=simplify)


@dataclass(frozen=True)
class SizeMetrics:
    constraints: tuple
    weight_atom_count: int

    @property
    def sum_length_weight(self):
        return sum((m.length * m.weight for m in self.constraints), Fraction(0))


def size_metrics(program):
    report = tr_nn(program)
    return SizeMetrics(report.constraints, report.weight_atom_count)


def proposition3_bound(metrics):
    """Upper bound on the weight atoms of tr_nn for integer weights.

    Each constraint contributes at most one atom per distinct subset sum of
    every suffix of its pairs, for each of the two relations.
    """
    return sum(2 * (m.length * (m.weight + 1) + 1) for m in metrics.constraints)
