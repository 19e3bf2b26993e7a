"""Completion of nondisjunctive programs, tightness, and DIMACS export.

For a tight program the classical models of the completion are exactly its
answer sets, so the answer sets of a weight program can be read off the CNF
of completion(tr_nn(Ω)).
"""
import io
import itertools
import logging
from dataclasses import dataclass, field

import networkx as nx
from pysat.formula import CNF, IDPool
from pysat.solvers import Solver

from wcnest import config
from wcnest.errors import ClassicalNegationError, EnumerationCapExceeded, NotTightError, PreconditionError
from wcnest.ht import classically_satisfies, eliminate_classical_negation, restore_classical_negation
from wcnest.models.core import (
    BOT, TOP, And, Atom, Bot, Iff, Implies, Interpretation, Lit, Literal, Not, NProgram, Or, Top,
    big_or, formula_atoms, signature, sort_interpretations, subformulas,
)
from wcnest.nsem import answer_sets_n, reduct_formula, satisfies_formula
from wcnest.translate import translate
from wcnest.wsem import answer_sets_w

logger = logging.getLogger(__name__)

SAT_SOLVER = 'm22'


def _is_naf_literal(formula):
    return isinstance(formula, Lit) or (isinstance(formula, Not) and isinstance(formula.operand, Lit))


def _is_simple_head(formula):
    return isinstance(formula, (Lit, Bot))


def is_nonnested(program):
    """Heads are literals or ⊥, bodies conjunctions of literals possibly prefixed with not."""
    for rule in program.rules:
        if not _is_simple_head(rule.head):
            return False
        body = rule.body
        items = body.items if isinstance(body, And) else (body,)
        if not (isinstance(body, Top) or all(_is_naf_literal(item) for item in items)):
            return False
    return True


def is_nondisjunctive(program):
    return all(_is_simple_head(rule.head) for rule in program.rules)


def _require_nondisjunctive(program):
    if not is_nondisjunctive(program):
        raise PreconditionError("completion needs every rule head to be a literal or bot")
    for rule in program.rules:
        for part in (rule.head, rule.body):
            for formula in subformulas(part):
                if isinstance(formula, Lit) and formula.literal.neg:
                    raise ClassicalNegationError(formula.literal)


def completion(program):
    """a <-> (disjunction of the bodies of the rules with head a) per atom, then not Body per ⊥-rule."""
    _require_nondisjunctive(program)
    formulas = []
    for atom in signature(program):
        head = Lit(Literal(atom))
        bodies = [rule.body for rule in program.rules if rule.head == head]
        formulas.append(Iff(head, big_or(bodies)))
    for rule in program.rules:
        if isinstance(rule.head, Bot):
            formulas.append(Not(rule.body))
    return tuple(formulas)


def _positive_atoms(formula):
    match formula:
        case Lit(literal):
            yield literal.atom
        case And(items) | Or(items):
            for item in items:
                yield from _positive_atoms(item)


def positive_dependency_graph(program):
    graph = nx.DiGraph()
    graph.add_nodes_from(signature(program))
    for rule in program.rules:
        if isinstance(rule.head, Lit):
            for atom in _positive_atoms(rule.body):
                graph.add_edge(rule.head.literal.atom, atom)
    return graph


def positive_cycle(program):
    """Atoms along a positive dependency cycle, or None when the program is tight."""
    try:
        edges = nx.find_cycle(positive_dependency_graph(program))
    except nx.NetworkXNoCycle:
        return None
    return [source for source, _ in edges] + [edges[0][0]]


def is_tight(program):
    if not is_nondisjunctive(program):
        raise PreconditionError("tightness is defined for programs with literal or bot heads")
    return nx.is_directed_acyclic_graph(positive_dependency_graph(program))


def check_tight(program):
    cycle = positive_cycle(program)
    if cycle is not None:
        raise NotTightError(cycle)


# CNF ------------------------------------------------------------------------

@dataclass(frozen=True)
class CnfDocument:
    clauses: tuple
    names: dict = field(compare=False)
    num_vars: int = 0

    @property
    def atom_vars(self):
        return {name: var for var, name in self.names.items() if not name.startswith('_')}

    def to_cnf(self):
        cnf = CNF(from_clauses=[list(c) for c in self.clauses])
        cnf.nv = self.num_vars
        return cnf

    @property
    def text(self):
        buffer = io.StringIO()
        comments = [f"c map {var} {name}" for var, name in sorted(self.names.items())]
        self.to_cnf().to_fp(buffer, comments=comments)
        return buffer.getvalue()

    def write(self, path):
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(self.text)


def _negate(formula):
    if isinstance(formula, Top):
        return BOT
    if isinstance(formula, Bot):
        return TOP
    return Not(formula)


def fold_constants(formula):
    """Remove ⊤ and ⊥ from inside a formula (the result is ⊤, ⊥, or constant-free)."""
    match formula:
        case Not(operand):
            return _negate(fold_constants(operand))
        case And(items):
            parts = []
            for item in map(fold_constants, items):
                if isinstance(item, Bot):
                    return BOT
                if not isinstance(item, Top):
                    parts.append(item)
            return _collapse(parts, And, TOP)
        case Or(items):
            parts = []
            for item in map(fold_constants, items):
                if isinstance(item, Top):
                    return TOP
                if not isinstance(item, Bot):
                    parts.append(item)
            return _collapse(parts, Or, BOT)
        case Implies(antecedent, consequent):
            a, b = fold_constants(antecedent), fold_constants(consequent)
            if isinstance(a, Bot) or isinstance(b, Top):
                return TOP
            if isinstance(a, Top):
                return b
            if isinstance(b, Bot):
                return _negate(a)
            return Implies(a, b)
        case Iff(left, right):
            a, b = fold_constants(left), fold_constants(right)
            for constant, other in ((a, b), (b, a)):
                if isinstance(constant, Top):
                    return other
                if isinstance(constant, Bot):
                    return _negate(other)
            return Iff(a, b)
    return formula


def _collapse(parts, node, empty):
    if not parts:
        return empty
    if len(parts) == 1:
        return parts[0]
    return node(tuple(parts))


class TseitinEncoder:
    """Definitional CNF encoding; one gate variable per distinct compound subformula."""

    def __init__(self, atoms=()):
        self.pool = IDPool()
        self.names = {}
        self.clauses = []
        self._top = None
        for atom in atoms:
            self.atom_var(atom)

    def atom_var(self, atom):
        key = ('atom', atom.name)
        if key not in self.pool.obj2id:
            var = self.pool.id(key)
            self.names[var] = atom.name
        return self.pool.id(key)

    def top_var(self):
        if self._top is None:
            self._top = self.pool.id(('const', 'top'))
            self.names[self._top] = '_top'
            self.clauses.append([self._top])
        return self._top

    def literal(self, formula):
        match formula:
            case Lit(literal):
                if literal.neg:
                    raise ClassicalNegationError(literal)
                return self.atom_var(literal.atom)
            case Not(operand):
                return -self.literal(operand)
            case Top():
                return self.top_var()
            case Bot():
                return -self.top_var()
        return self._gate(formula)

    def _gate(self, formula):
        key = ('gate', formula)
        if key in self.pool.obj2id:
            return self.pool.obj2id[key]
        match formula:
            case And(items):
                xs = [self.literal(f) for f in items]
                g = self._new_gate(key)
                self.clauses.extend([-g, x] for x in xs)
                self.clauses.append([g] + [-x for x in xs])
            case Or(items):
                xs = [self.literal(f) for f in items]
                g = self._new_gate(key)
                self.clauses.extend([g, -x] for x in xs)
                self.clauses.append([-g] + xs)
            case Implies(antecedent, consequent):
                a, b = self.literal(antecedent), self.literal(consequent)
                g = self._new_gate(key)
                self.clauses.extend([[-g, -a, b], [g, a], [g, -b]])
            case Iff(left, right):
                a, b = self.literal(left), self.literal(right)
                g = self._new_gate(key)
                self.clauses.extend([[-g, -a, b], [-g, a, -b], [g, a, b], [g, -a, -b]])
            case _:
                raise TypeError(f"cannot encode {type(formula).__name__}")
        return g

    def _new_gate(self, key):
        var = self.pool.id(key)
        self.names[var] = f"_g{var}"
        return var

    def add(self, formula):
        """Assert a formula at the top level."""
        formula = fold_constants(formula)
        match formula:
            case Top():
                return
            case Bot():
                self.clauses.append([-self.top_var()])
            case And(items):
                for item in items:
                    self.add(item)
            case Iff(left, right):
                a, b = self.literal(left), self.literal(right)
                self.clauses.extend([[-a, b], [a, -b]])
            case Implies(antecedent, consequent):
                a, b = self.literal(antecedent), self.literal(consequent)
                self.clauses.append([-a, b])
            case Or(items):
                self.clauses.append([self.literal(f) for f in items])
            case Not(operand):
                self.clauses.append([-self.literal(operand)])
            case _:
                self.clauses.append([self.literal(formula)])

    def document(self):
        return CnfDocument(tuple(tuple(c) for c in self.clauses), dict(self.names), self.pool.top)


def _formula_atoms_in_order(formulas):
    return tuple(dict.fromkeys(atom for f in formulas for atom in formula_atoms(f)))


def to_dimacs(formulas, atoms=None):
    """Tseitin CNF of a set of formulas; atoms get the first variables, in the given order."""
    formulas = list(formulas)
    if atoms is None:
        atoms = _formula_atoms_in_order(formulas)
    encoder = TseitinEncoder(atoms)
    for formula in formulas:
        encoder.add(formula)
    document = encoder.document()
    logger.debug("encoded %d formulas into %d variables and %d clauses",
                 len(formulas), document.num_vars, len(document.clauses))
    return document


def cnf_models(document, atoms=None):
    """Models of a CNF document projected onto atom variables, as atom sets."""
    atom_vars = document.atom_vars
    if atoms is not None:
        atom_vars = {a.name: atom_vars[a.name] for a in atoms if a.name in atom_vars}
    projected = sorted(atom_vars.values())
    names = {var: name for name, var in atom_vars.items()}
    found = set()
    with Solver(name=SAT_SOLVER, bootstrap_with=[list(c) for c in document.clauses]) as solver:
        while solver.solve():
            model = solver.get_model() or []
            values = {abs(lit): lit > 0 for lit in model}
            fixed = [v for v in projected if v in values]
            free = [v for v in projected if v not in values]
            base = frozenset(Atom(names[v]) for v in fixed if values[v])
            for choice in itertools.product((False, True), repeat=len(free)):
                found.add(base | frozenset(Atom(names[v]) for v, on in zip(free, choice) if on))
            blocking = [-v if values[v] else v for v in fixed]
            if not blocking:
                break
            solver.add_clause(blocking)
    return sorted(found, key=lambda atoms: (len(atoms), sorted(a.name for a in atoms)))


def classical_models(formulas, atoms, cap=None):
    """Truth-table enumeration of the classical models over the given atoms."""
    formulas = list(formulas)
    atoms = tuple(sorted(set(atoms), key=lambda a: a.name))
    cap = config.get_cap() if cap is None else cap
    if len(atoms) > cap:
        raise EnumerationCapExceeded(len(atoms), cap)
    models = []
    for size in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, size):
            there = frozenset(combo)
            if all(classically_satisfies(there, f) for f in formulas):
                models.append(there)
    return models


def _as_interpretation(atoms):
    return Interpretation(frozenset(Literal(a) for a in atoms))


def _least_model(program, z):
    """Least set of atoms closed under the reduct Π^Z (heads literals, ⊥ rules ignored)."""
    rules = [(rule.head.literal, reduct_formula(rule.body, z)) for rule in program.rules
             if isinstance(rule.head, Lit)]
    derived = set()
    changed = True
    while changed:
        changed = False
        current = Interpretation(frozenset(derived))
        for head, body in rules:
            if head not in derived and satisfies_formula(current, body):
                derived.add(head)
                changed = True
    return frozenset(derived)


def answer_sets_nonnested(program):
    """Answer sets of a nondisjunctive program: supported models equal to the least model of their reduct."""
    elimination = eliminate_classical_negation(program)
    renamed = elimination.program
    formulas = list(completion(renamed)) + list(elimination.constraints)
    atoms = signature(renamed)
    document = to_dimacs(formulas, atoms)
    result = []
    for model in cnf_models(document, atoms):
        z = _as_interpretation(model)
        if _least_model(renamed, z) == z.literals:
            result.append(restore_classical_negation(model, elimination.atom_map))
    return sort_interpretations(result)


@dataclass(frozen=True)
class CompletionReport:
    passed: bool
    mode: str
    models: tuple
    projected: tuple
    answer_sets: tuple
    q_omega: frozenset = frozenset()
    document: CnfDocument = None

    @property
    def injective(self):
        return len(set(self.projected)) == len(self.models)

    def to_dict(self):
        return {
            'check': 'completion',
            'mode': self.mode,
            'status': 'pass' if self.passed else 'fail',
            'models': len(self.models),
            'answer_sets': len(self.answer_sets),
        }


def completion_cnf(program):
    """CNF of the completion of a tight nondisjunctive program, classical negation eliminated first."""
    elimination = eliminate_classical_negation(program)
    check_tight(elimination.program)
    formulas = list(completion(elimination.program)) + list(elimination.constraints)
    return elimination, to_dimacs(formulas, signature(elimination.program))


def completion_document(program, mode='nn'):
    """CNF of the completion of the translated weight program."""
    report = translate(program, mode)
    elimination, document = completion_cnf(report.output)
    return report, elimination, document


NESTED_MODE = 'nested'


def verify_completion(program, mode='nn', cap=None):
    """Compare the projected models of the completion with the answer sets of the program.

    A weight program is translated first (mode nn or nd) and the auxiliary atoms
    are projected away. A nested program is completed as it is, auxiliary atoms
    included.
    """
    if isinstance(program, NProgram):
        mode, q_omega = NESTED_MODE, frozenset()
        elimination, document = completion_cnf(program)
        expected = answer_sets_n(program, cap)
    else:
        report, elimination, document = completion_document(program, mode)
        q_omega = report.q_omega
        expected = answer_sets_w(program, cap)
    atoms = signature(elimination.program)
    models = cnf_models(document, atoms)
    projected = [
        restore_classical_negation(model, elimination.atom_map).without(q_omega)
        for model in models
    ]
    ordered = sort_interpretations(set(projected))
    passed = ordered == expected and len(set(projected)) == len(projected)
    if not passed:
        logger.debug("completion models %s differ from answer sets %s",
                     [str(z) for z in ordered], [str(z) for z in expected])
    return CompletionReport(passed, mode, tuple(models), tuple(projected), tuple(expected),
                            q_omega, document)
