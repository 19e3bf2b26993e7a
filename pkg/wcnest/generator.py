"""Seeded random programs for the verification harness.

The parameters are versioned: a given (seed, version) pair always produces
the same corpus.
"""
import random
from dataclasses import dataclass, replace
from fractions import Fraction

from wcnest.models.core import (
    BOT, NEG_INF, POS_INF, TOP, And, Atom, Bound, HEADLESS, Interpretation, Lit, Literal, Not, NProgram, NRule, Or,
    RuleElement, WeightConstraint, WProgram, WRule, big_and,
)

ATOM_NAMES = ('a', 'b', 'c', 'd', 'e', 'f', 'g', 'h')


@dataclass(frozen=True)
class GeneratorParams:
    version: int = 1
    max_atoms: int = 5
    max_rules: int = 4
    max_length: int = 4
    max_weight: int = 4
    max_body: int = 2
    bound_margin: int = 2
    omit_bound_rate: float = 0.3
    naf_rate: float = 0.3
    classical_negation_rate: float = 0.1
    headless_rate: float = 0.1
    element_head_rate: float = 0.2


DEFAULT_PARAMS = GeneratorParams()
# smaller programs for the here-and-there and brute-force checks
SMALL_PARAMS = replace(DEFAULT_PARAMS, max_atoms=3, max_rules=3, max_length=3, max_weight=3)


def make_rng(seed, salt=''):
    return random.Random(f"{seed}:{DEFAULT_PARAMS.version}:{salt}")


def random_atoms(rng, params=DEFAULT_PARAMS):
    return [Atom(n) for n in ATOM_NAMES[:rng.randint(1, params.max_atoms)]]


def random_literal(rng, atoms, params=DEFAULT_PARAMS):
    return Literal(rng.choice(atoms), rng.random() < params.classical_negation_rate)


def random_element(rng, atoms, params=DEFAULT_PARAMS):
    return RuleElement(random_literal(rng, atoms, params), rng.random() < params.naf_rate)


def _random_bound(rng, total, params):
    if rng.random() < params.omit_bound_rate:
        return None
    return Bound(rng.randint(-params.bound_margin, int(total) + params.bound_margin))


def random_constraint(rng, atoms, params=DEFAULT_PARAMS, min_length=0):
    length = rng.randint(min_length, params.max_length)
    pairs = [(random_element(rng, atoms, params), Fraction(rng.randint(0, params.max_weight)))
             for _ in range(length)]
    total = sum((w for _, w in pairs), Fraction(0))
    lower = _random_bound(rng, total, params) or NEG_INF
    upper = _random_bound(rng, total, params) or POS_INF
    return WeightConstraint(lower, pairs, upper)


def random_head(rng, atoms, params=DEFAULT_PARAMS):
    roll = rng.random()
    if roll < params.headless_rate:
        return HEADLESS
    if roll < params.headless_rate + params.element_head_rate:
        return WeightConstraint.element(RuleElement(random_literal(rng, atoms, params)))
    return random_constraint(rng, atoms, params, min_length=1)


def random_wrule(rng, atoms, params=DEFAULT_PARAMS):
    body = [random_constraint(rng, atoms, params) for _ in range(rng.randint(0, params.max_body))]
    return WRule(random_head(rng, atoms, params), body)


def random_wprogram(rng, params=DEFAULT_PARAMS, atoms=None):
    atoms = atoms or random_atoms(rng, params)
    return WProgram(random_wrule(rng, atoms, params) for _ in range(rng.randint(1, params.max_rules)))


def weight_corpus(seed, cases, params=DEFAULT_PARAMS):
    rng = make_rng(seed, 'weight')
    return [random_wprogram(rng, params) for _ in range(cases)]


def random_interpretation(rng, atoms, params=DEFAULT_PARAMS):
    literals = []
    for atom in atoms:
        roll = rng.random()
        if roll < 0.4:
            literals.append(Literal(atom))
        elif roll < 0.4 + params.classical_negation_rate:
            literals.append(Literal(atom, True))
    return Interpretation(frozenset(literals))


def variant_of(rng, program):
    """A program with the same meaning: rules shuffled, one duplicated, pairs reordered."""
    rules = []
    for rule in program.rules:
        body = [_shuffled_constraint(rng, c) for c in rule.body]
        rules.append(WRule(_shuffled_constraint(rng, rule.head), body))
    if rules:
        rules.append(rng.choice(rules))
    rng.shuffle(rules)
    return WProgram(rules)


def nested_variant_of(rng, program):
    rules = list(program.rules)
    if rules:
        rules.append(rng.choice(rules))
    rng.shuffle(rules)
    return NProgram(rules, program.aux_atoms)


def _shuffled_constraint(rng, constraint):
    pairs = list(constraint.pairs)
    rng.shuffle(pairs)
    return WeightConstraint(constraint.lower, pairs, constraint.upper)


def random_unary_wprogram(rng, atoms, size=3):
    """Facts l and rules l :- l' (the extensions that witness strong non-equivalence)."""
    rules = []
    for _ in range(rng.randint(0, size)):
        head = WeightConstraint.element(RuleElement(Literal(rng.choice(atoms))))
        if rng.random() < 0.5:
            rules.append(WRule(head))
        else:
            rules.append(WRule(head, [WeightConstraint.element(RuleElement(Literal(rng.choice(atoms))))]))
    return WProgram(rules)


def random_unary_nprogram(rng, atoms, size=3):
    rules = []
    for _ in range(rng.randint(0, size)):
        head = Lit(Literal(rng.choice(atoms)))
        body = TOP if rng.random() < 0.5 else Lit(Literal(rng.choice(atoms)))
        rules.append(NRule(head, body))
    return NProgram(rules)


def random_nonnested_nprogram(rng, atoms, max_rules=5, max_body=3, constraint_rate=0.15):
    """Heads an atom or ⊥, bodies conjunctions of atoms possibly prefixed with not."""
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        head = BOT if rng.random() < constraint_rate else Lit(Literal(rng.choice(atoms)))
        body = []
        for _ in range(rng.randint(0, max_body)):
            lit = Lit(Literal(rng.choice(atoms)))
            body.append(Not(lit) if rng.random() < 0.4 else lit)
        rules.append(NRule(head, big_and(body)))
    return NProgram(rules)


def random_formula(rng, atoms, depth=2, params=DEFAULT_PARAMS):
    if depth <= 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.05:
            return TOP
        if roll < 0.1:
            return BOT
        return Lit(random_literal(rng, atoms, params))
    kind = rng.choice(('not', 'and', 'or'))
    if kind == 'not':
        return Not(random_formula(rng, atoms, depth - 1, params))
    items = tuple(random_formula(rng, atoms, depth - 1, params) for _ in range(2))
    return And(items) if kind == 'and' else Or(items)


def random_nprogram(rng, atoms, params=DEFAULT_PARAMS, depth=2, body_atoms=None):
    body_atoms = body_atoms or atoms
    return NProgram(
        NRule(random_formula(rng, atoms, depth, params), random_formula(rng, body_atoms, depth, params))
        for _ in range(rng.randint(1, params.max_rules))
    )
