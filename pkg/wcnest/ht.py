"""Logic of here-and-there and strong equivalence.

An HT-interpretation is a pair (H, T) of atom sets with H ⊆ T. Formulas are
evaluated with the two-world Kripke clauses; two programs are strongly
equivalent iff their rules, read as implications, have the same HT-models.
Classical negation is first replaced by fresh atoms a' together with the
constraints not (a, a').
"""
import itertools
import logging
from dataclasses import dataclass, field

from wcnest import config
from wcnest.errors import ClassicalNegationError, EnumerationCapExceeded
from wcnest.models.core import (
    And, Atom, Bot, EquivalenceVerdict, Iff, Implies, Interpretation, Lit, Literal, Not, NProgram, NRule,
    Or, Top, formula_atoms, signature,
)
from wcnest.translate import tr_basic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HTInterpretation:
    here: frozenset
    there: frozenset

    def __post_init__(self):
        object.__setattr__(self, 'here', frozenset(self.here))
        object.__setattr__(self, 'there', frozenset(self.there))
        if not self.here <= self.there:
            raise ValueError("here must be a subset of there")

    @classmethod
    def of(cls, here, there):
        return cls(frozenset(Atom(n) for n in here), frozenset(Atom(n) for n in there))

    def __str__(self):
        def names(atoms):
            return '{' + ', '.join(sorted(a.name for a in atoms)) + '}'
        return f"({names(self.here)}, {names(self.there)})"


def rule_to_implication(rule):
    return Implies(rule.body, rule.head)


def _atom_of(literal):
    if literal.neg:
        raise ClassicalNegationError(literal)
    return literal.atom


def classically_satisfies(there, formula):
    """Truth of a formula in the classical interpretation given by an atom set."""
    match formula:
        case Lit(literal):
            return _atom_of(literal) in there
        case Top():
            return True
        case Bot():
            return False
        case Not(operand):
            return not classically_satisfies(there, operand)
        case And(items):
            return all(classically_satisfies(there, f) for f in items)
        case Or(items):
            return any(classically_satisfies(there, f) for f in items)
        case Implies(antecedent, consequent):
            return not classically_satisfies(there, antecedent) or classically_satisfies(there, consequent)
        case Iff(left, right):
            return classically_satisfies(there, left) == classically_satisfies(there, right)
    raise TypeError(f"cannot evaluate {type(formula).__name__}")


def ht_satisfies(interpretation, formula):
    here, there = interpretation.here, interpretation.there
    match formula:
        case Lit(literal):
            return _atom_of(literal) in here
        case Top():
            return True
        case Bot():
            return False
        case Not(operand):
            # not F is F -> bot; by persistence only the there-world matters
            return not classically_satisfies(there, operand)
        case And(items):
            return all(ht_satisfies(interpretation, f) for f in items)
        case Or(items):
            return any(ht_satisfies(interpretation, f) for f in items)
        case Implies(antecedent, consequent):
            return ((not ht_satisfies(interpretation, antecedent) or ht_satisfies(interpretation, consequent))
                    and classically_satisfies(there, formula))
        case Iff(left, right):
            return (ht_satisfies(interpretation, Implies(left, right))
                    and ht_satisfies(interpretation, Implies(right, left)))
    raise TypeError(f"cannot evaluate {type(formula).__name__}")


@dataclass(frozen=True)
class CNElimination:
    program: NProgram
    constraints: tuple = ()
    atom_map: dict = field(default_factory=dict, compare=False)


def _negated_atoms(formulas):
    seen = {}
    for formula in formulas:
        for atom in _negated_in(formula):
            seen.setdefault(atom, None)
    return tuple(seen)


def _negated_in(formula):
    match formula:
        case Lit(literal):
            if literal.neg:
                yield literal.atom
        case Not(operand):
            yield from _negated_in(operand)
        case And(items) | Or(items):
            for item in items:
                yield from _negated_in(item)
        case Implies(a, b) | Iff(a, b):
            yield from _negated_in(a)
            yield from _negated_in(b)


def _formula_names(formulas):
    return {atom.name for f in formulas for atom in formula_atoms(f)}


def fresh_atom_map(formulas, taken=()):
    """Map every classically negated atom a to a fresh atom standing for -a."""
    formulas = list(formulas)
    used = _formula_names(formulas) | set(taken)
    atom_map = {}
    for atom in _negated_atoms(formulas):
        name = f"{atom.name}_neg"
        while name in used:
            name += '_'
        used.add(name)
        atom_map[atom] = Atom(name)
    return atom_map


def rename_negation(formula, atom_map):
    match formula:
        case Lit(literal):
            if literal.neg:
                return Lit(Literal(atom_map[literal.atom]))
            return formula
        case Not(operand):
            return Not(rename_negation(operand, atom_map))
        case And(items):
            return And(tuple(rename_negation(f, atom_map) for f in items))
        case Or(items):
            return Or(tuple(rename_negation(f, atom_map) for f in items))
        case Implies(a, b):
            return Implies(rename_negation(a, atom_map), rename_negation(b, atom_map))
        case Iff(a, b):
            return Iff(rename_negation(a, atom_map), rename_negation(b, atom_map))
    return formula


def _program_formulas(program):
    return [part for rule in program.rules for part in (rule.head, rule.body)]


def consistency_constraints(atom_map):
    return tuple(Not(And((Lit(Literal(a)), Lit(Literal(primed))))) for a, primed in atom_map.items())


def eliminate_classical_negation(program, atom_map=None):
    """Replace every -a by a fresh atom a'; returns the program, the formulas not (a, a') and the map."""
    if atom_map is None:
        atom_map = fresh_atom_map(_program_formulas(program))
    rules = [NRule(rename_negation(r.head, atom_map), rename_negation(r.body, atom_map)) for r in program.rules]
    used = set(_negated_atoms(_program_formulas(program)))
    local_map = {a: p for a, p in atom_map.items() if a in used}
    renamed = NProgram(rules, program.aux_atoms)
    return CNElimination(renamed, consistency_constraints(local_map), local_map)


def restore_classical_negation(model, atom_map):
    """Map a model of the renamed program back to a set of literals."""
    inverse = {primed: atom for atom, primed in atom_map.items()}
    atoms = model.atoms() if isinstance(model, Interpretation) else model
    return Interpretation(frozenset(
        Literal(inverse[a], True) if a in inverse else Literal(a) for a in atoms
    ))


def _ordered_subsets(atoms):
    for size in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, size):
            yield frozenset(combo)


def _check_cap(atoms, cap):
    cap = config.get_ht_cap() if cap is None else cap
    if len(atoms) > cap:
        raise EnumerationCapExceeded(len(atoms), cap, 'atoms in the here-and-there check')


def _sorted_atoms(atoms):
    return tuple(sorted(set(atoms), key=lambda a: a.name))


def ht_models(formulas, atoms, cap=None):
    formulas = list(formulas)
    atoms = _sorted_atoms(atoms)
    _check_cap(atoms, cap)
    models = []
    for there in _ordered_subsets(atoms):
        if not all(classically_satisfies(there, f) for f in formulas):
            continue
        for here in _ordered_subsets(tuple(a for a in atoms if a in there)):
            candidate = HTInterpretation(here, there)
            if all(ht_satisfies(candidate, f) for f in formulas):
                models.append(candidate)
    return models


def _first_difference(first, second, atoms, cap):
    """The first HT-interpretation satisfying exactly one of the two theories, or None."""
    atoms = _sorted_atoms(atoms)
    _check_cap(atoms, cap)
    for there in _ordered_subsets(atoms):
        left_there = all(classically_satisfies(there, f) for f in first)
        right_there = all(classically_satisfies(there, f) for f in second)
        if not left_there and not right_there:
            continue
        for here in _ordered_subsets(tuple(a for a in atoms if a in there)):
            candidate = HTInterpretation(here, there)
            left = left_there and all(ht_satisfies(candidate, f) for f in first)
            right = right_there and all(ht_satisfies(candidate, f) for f in second)
            if left != right:
                return candidate
    return None


def _atoms_of(formulas):
    return [atom for f in formulas for atom in formula_atoms(f)]


def ht_equivalent(first, second, cap=None):
    """HT-equivalence of two formulas (classical negation renamed consistently)."""
    atom_map = fresh_atom_map([first, second])
    left = [rename_negation(first, atom_map)]
    right = [rename_negation(second, atom_map)]
    return _first_difference(left, right, _atoms_of(left + right), cap) is None


def ht_entails(premises, conclusion, cap=None):
    premises = list(premises)
    atom_map = fresh_atom_map(premises + [conclusion])
    renamed = [rename_negation(f, atom_map) for f in premises]
    goal = rename_negation(conclusion, atom_map)
    for model in ht_models(renamed, _atoms_of(renamed + [goal]), cap):
        if not ht_satisfies(model, goal):
            return False
    return True


def ht_valid(formula, cap=None):
    return ht_entails([], formula, cap)


def program_theory(program, atom_map):
    """Rules as implications plus the consistency constraints, after renaming classical negation."""
    elimination = eliminate_classical_negation(program, atom_map)
    theory = [rule_to_implication(r) for r in elimination.program.rules]
    return theory + list(consistency_constraints(atom_map))


def strong_eq_nested(first, second, cap=None):
    formulas = _program_formulas(first) + _program_formulas(second)
    atom_map = fresh_atom_map(formulas)
    left = program_theory(first, atom_map)
    right = program_theory(second, atom_map)
    atoms = list(signature(first)) + list(signature(second)) + list(atom_map.values())
    difference = _first_difference(left, right, atoms, cap)
    if difference is not None:
        logger.debug("HT-interpretation %s separates the programs", difference)
        return EquivalenceVerdict(False, difference, 'ht')
    return EquivalenceVerdict(True, None, 'ht')


def strong_eq_weight(first, second, cap=None):
    return strong_eq_nested(tr_basic(first).output, tr_basic(second).output, cap)

