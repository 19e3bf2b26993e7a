"""Abstract syntax shared by weight-constraint programs and nested programs.

All values are immutable and compare structurally. Weights and bounds are
exact rationals (``fractions.Fraction``); a decimal such as ``0.5`` is the
rational 1/2, never a float.
"""
import itertools
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from wcnest.errors import InvalidWeightError

RESERVED_PREFIX = 'q_'

_ATOM_NAME = re.compile(r'[a-z][A-Za-z0-9_]*\Z')


class AtomKind(str, Enum):
    USER = 'user'
    AUX_NEGATION = 'aux-negation'
    AUX_WEIGHT = 'aux-weight'


@dataclass(frozen=True)
class Atom:
    name: str
    # provenance only; names are the keys
    kind: AtomKind = field(default=AtomKind.USER, compare=False)

    def __post_init__(self):
        if not _ATOM_NAME.match(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")

    @property
    def is_aux(self):
        return self.kind is not AtomKind.USER

    def __lt__(self, other):
        return self.name < other.name

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Literal:
    atom: Atom
    neg: bool = False

    @classmethod
    def of(cls, text):
        text = text.strip()
        if text.startswith('-'):
            return cls(Atom(text[1:].strip()), True)
        return cls(Atom(text))

    def sort_key(self):
        return (self.atom.name, self.neg)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"-{self.atom}" if self.neg else str(self.atom)


def complement(lit):
    return Literal(lit.atom, not lit.neg)


@dataclass(frozen=True)
class RuleElement:
    lit: Literal
    naf: bool = False

    @classmethod
    def of(cls, text):
        text = text.strip()
        if text.startswith('not '):
            return cls(Literal.of(text[4:]), True)
        return cls(Literal.of(text))

    @property
    def positive(self):
        return not self.naf

    def __str__(self):
        return f"not {self.lit}" if self.naf else str(self.lit)


def as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, an int or a decimal string")
    return Fraction(value)


def format_number(value):
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Bound:
    """A rational number or one of -inf / +inf."""

    value: Fraction | None = None
    infinity: int = 0

    def __post_init__(self):
        if self.infinity not in (-1, 0, 1):
            raise ValueError("infinity must be -1, 0 or 1")
        if self.infinity == 0:
            if self.value is None:
                raise ValueError("finite bound needs a value")
            object.__setattr__(self, 'value', as_fraction(self.value))
        elif self.value is not None:
            raise ValueError("infinite bound carries no value")

    @classmethod
    def of(cls, value):
        if isinstance(value, Bound):
            return value
        return cls(as_fraction(value))

    @property
    def is_finite(self):
        return self.infinity == 0

    def _key(self):
        return (self.infinity, self.value if self.infinity == 0 else 0)

    @staticmethod
    def _other_key(other):
        if isinstance(other, Bound):
            return other._key()
        if isinstance(other, (int, Fraction)):
            return (0, Fraction(other))
        return None

    def _compare(self, other, op):
        key = self._other_key(other)
        if key is None:
            return NotImplemented
        return op(self._key(), key)

    def __lt__(self, other):
        return self._compare(other, lambda a, b: a < b)

    def __le__(self, other):
        return self._compare(other, lambda a, b: a <= b)

    def __gt__(self, other):
        return self._compare(other, lambda a, b: a > b)

    def __ge__(self, other):
        return self._compare(other, lambda a, b: a >= b)

    def minus(self, amount):
        if not self.is_finite:
            return self
        return Bound(self.value - as_fraction(amount))

    def __str__(self):
        if self.infinity < 0:
            return '-inf'
        if self.infinity > 0:
            return 'inf'
        return format_number(self.value)


NEG_INF = Bound(None, -1)
POS_INF = Bound(None, 1)


@dataclass(frozen=True)
class WeightConstraint:
    lower: Bound = NEG_INF
    pairs: tuple = ()
    upper: Bound = POS_INF

    def __post_init__(self):
        object.__setattr__(self, 'lower', Bound.of(self.lower))
        object.__setattr__(self, 'upper', Bound.of(self.upper))
        pairs = []
        for element, weight in self.pairs:
            weight = as_fraction(weight)
            if weight < 0:
                raise InvalidWeightError(
                    f"negative weight {format_number(weight)} for {element}; negative weights are rejected"
                )
            pairs.append((element, weight))
        object.__setattr__(self, 'pairs', tuple(pairs))

    @classmethod
    def element(cls, element):
        """The identification of a rule element c with 1 <= {c=1}."""
        return cls(Bound(1), ((element, Fraction(1)),), POS_INF)

    @property
    def length(self):
        return len(self.pairs)

    @property
    def weight(self):
        return sum((w for _, w in self.pairs), Fraction(0))

    @property
    def elements(self):
        return tuple(c for c, _ in self.pairs)

    def lower_part(self):
        return WeightConstraint(self.lower, self.pairs, POS_INF)

    def upper_part(self):
        return WeightConstraint(NEG_INF, self.pairs, self.upper)

    def positive_literals(self):
        seen = {}
        for c in self.elements:
            if c.positive:
                seen.setdefault(c.lit, None)
        return tuple(seen)

    @property
    def is_element_shorthand(self):
        return (self.lower == Bound(1) and self.upper == POS_INF and len(self.pairs) == 1
                and self.pairs[0][1] == 1)


HEADLESS = WeightConstraint(Bound(1), (), POS_INF)


@dataclass(frozen=True)
class WRule:
    head: WeightConstraint = HEADLESS
    body: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'body', tuple(self.body))

    @property
    def constraints(self):
        return (self.head,) + self.body


@dataclass(frozen=True)
class WProgram:
    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'rules', tuple(self.rules))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __add__(self, other):
        return WProgram(self.rules + other.rules)

    def constraints(self):
        for rule in self.rules:
            yield from rule.constraints


# Formulas -------------------------------------------------------------------

class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


BOT = Bot()
TOP = Top()


@dataclass(frozen=True)
class Lit(Formula):
    literal: Literal

    @classmethod
    def of(cls, text):
        return cls(Literal.of(text))


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    items: tuple

    def __post_init__(self):
        object.__setattr__(self, 'items', tuple(self.items))
        if len(self.items) < 2:
            raise ValueError("And needs at least two conjuncts; use big_and")


@dataclass(frozen=True)
class Or(Formula):
    items: tuple

    def __post_init__(self):
        object.__setattr__(self, 'items', tuple(self.items))
        if len(self.items) < 2:
            raise ValueError("Or needs at least two disjuncts; use big_or")


# Implies and Iff only occur in propositional readings of programs.
@dataclass(frozen=True)
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


def big_and(formulas):
    formulas = tuple(formulas)
    if not formulas:
        return TOP
    if len(formulas) == 1:
        return formulas[0]
    return And(formulas)


def big_or(formulas):
    formulas = tuple(formulas)
    if not formulas:
        return BOT
    if len(formulas) == 1:
        return formulas[0]
    return Or(formulas)


def element_formula(element):
    """A rule element read as a nested expression."""
    if element.naf:
        return Not(Lit(element.lit))
    return Lit(element.lit)


def subformulas(formula):
    yield formula
    if isinstance(formula, Not):
        yield from subformulas(formula.operand)
    elif isinstance(formula, (And, Or)):
        for item in formula.items:
            yield from subformulas(item)
    elif isinstance(formula, Implies):
        yield from subformulas(formula.antecedent)
        yield from subformulas(formula.consequent)
    elif isinstance(formula, Iff):
        yield from subformulas(formula.left)
        yield from subformulas(formula.right)


def formula_literals(formula):
    return _unique(f.literal for f in subformulas(formula) if isinstance(f, Lit))


def formula_atoms(formula):
    return _unique(lit.atom for lit in formula_literals(formula))


def is_naf_free(formula):
    return not any(isinstance(f, Not) for f in subformulas(formula))


@dataclass(frozen=True)
class NRule:
    head: Formula
    body: Formula = TOP


@dataclass(frozen=True)
class NProgram:
    rules: tuple = ()
    aux_atoms: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'rules', tuple(self.rules))
        object.__setattr__(self, 'aux_atoms', frozenset(self.aux_atoms))
        if self.aux_atoms:
            missing = self.aux_atoms - set(signature(self))
            if missing:
                raise ValueError(f"aux atoms not occurring in the program: {sorted(missing)}")

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __add__(self, other):
        return NProgram(self.rules + other.rules, self.aux_atoms | other.aux_atoms)


def head_literals(program):
    """Literals occurring in rule heads of a nested program, first-occurrence order."""
    return _unique(lit for rule in program.rules for lit in formula_literals(rule.head))


def signature(program):
    """All atoms of a program in first-occurrence order."""
    if isinstance(program, WProgram):
        atoms = (c.lit.atom for rule in program.rules
                 for constraint in rule.constraints for c in constraint.elements)
    else:
        atoms = (atom for rule in program.rules
                 for part in (rule.head, rule.body) for atom in formula_atoms(part))
    return _unique(atoms)


def _unique(items):
    return tuple(dict.fromkeys(items))


# Interpretations --------------------------------------------------------------

@dataclass(frozen=True)
class Interpretation:
    """A consistent finite set of literals."""

    literals: frozenset = frozenset()

    def __post_init__(self):
        literals = frozenset(self.literals)
        object.__setattr__(self, 'literals', literals)
        for lit in literals:
            if complement(lit) in literals:
                raise ValueError(f"inconsistent interpretation: contains both {lit.atom} and -{lit.atom}")

    @classmethod
    def of(cls, *texts):
        return cls(frozenset(Literal.of(t) for t in texts))

    def __contains__(self, lit):
        return lit in self.literals

    def __iter__(self):
        return iter(sorted(self.literals))

    def __len__(self):
        return len(self.literals)

    def __le__(self, other):
        return self.literals <= other.literals

    def __lt__(self, other):
        return self.literals < other.literals

    def atoms(self):
        return frozenset(lit.atom for lit in self.literals)

    def without(self, atoms):
        atoms = frozenset(atoms)
        return Interpretation(frozenset(l for l in self.literals if l.atom not in atoms))

    def sort_key(self):
        return (len(self.literals), tuple(l.sort_key() for l in sorted(self.literals)))

    def __str__(self):
        return '{' + ', '.join(str(l) for l in self) + '}'


def sort_interpretations(interpretations):
    return sorted(interpretations, key=Interpretation.sort_key)


def candidate_interpretations(universe):
    """All consistent subsets of a literal universe, ordered by size then lexicographically."""
    options = {}
    for lit in universe:
        options.setdefault(lit.atom, set()).add(lit)
    choices = [[None] + sorted(lits) for _, lits in sorted(options.items())]
    candidates = (
        Interpretation(frozenset(l for l in combo if l is not None))
        for combo in itertools.product(*choices)
    )
    return sort_interpretations(candidates)


def subsets(interpretation, proper=False):
    """Subsets of an interpretation (all consistent), smallest first."""
    members = sorted(interpretation.literals)
    top = len(members) if not proper else len(members) - 1
    for size in range(top + 1):
        for combo in itertools.combinations(members, size):
            yield Interpretation(frozenset(combo))


# Auxiliary atoms --------------------------------------------------------------

@dataclass(frozen=True)
class NafAtomKey:
    literal: Literal


@dataclass(frozen=True)
class WeightAtomKey:
    relation: str
    bound: Bound
    prefix: tuple

    def __post_init__(self):
        if self.relation not in ('le', 'lt'):
            raise ValueError("relation must be 'le' or 'lt'")
        object.__setattr__(self, 'prefix', tuple(self.prefix))

    @property
    def total_weight(self):
        return sum((w for _, w in self.prefix), Fraction(0))


def _escape(name):
    return name.replace('_', '__')


def _encode_number(value):
    value = as_fraction(value)
    text = str(abs(value.numerator))
    if value.denominator != 1:
        text += f"d{value.denominator}"
    return ('m' if value < 0 else '') + text


def _encode_bound(bound):
    if bound.infinity < 0:
        return 'minf'
    if bound.infinity > 0:
        return 'inf'
    return _encode_number(bound.value)


def _encode_literal(lit):
    return ('neg_' if lit.neg else '') + _escape(lit.atom.name)


def _encode_element(element):
    return ('not_' if element.naf else '') + _encode_literal(element.lit)


def aux_name(key):
    """Deterministic, injective atom for a negation atom or a weight atom.

    Tokens are joined by single underscores; underscores inside user names
    are doubled, and no token starts with an underscore.
    """
    if isinstance(key, NafAtomKey):
        return Atom(f"{RESERVED_PREFIX}not_{_encode_literal(key.literal)}", AtomKind.AUX_NEGATION)
    tokens = ['q', _encode_bound(key.bound), key.relation]
    for element, weight in key.prefix:
        tokens += [_encode_element(element), _encode_number(weight)]
    return Atom('_'.join(tokens), AtomKind.AUX_WEIGHT)


# Verdicts ---------------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of an equivalence check; truthy iff the programs are equivalent."""

    equivalent: bool
    counterexample: object = None
    method: str = ''

    def __bool__(self):
        return self.equivalent

    def to_dict(self):
        result = {'equivalent': 'yes' if self.equivalent else 'no'}
        if self.method:
            result['method'] = self.method
        if self.counterexample is not None:
            result['counterexample'] = _describe(self.counterexample)
        return result


def _describe(value):
    if isinstance(value, tuple):
        return ' '.join(_describe(v) for v in value)
    return str(value)
