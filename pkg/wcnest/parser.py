"""Grammars, validating parsers and canonical printers for both languages.

Weight programs::

    0 <= {a, b} <= 1.
    1 <= {a=2} <= 2 :- 1 <= {not a=3, not b=2} <= 4.

Nested programs::

    a ; not a.
    a :- not not a.
"""
import logging
from fractions import Fraction
from typing import NamedTuple

from lark import Lark, Transformer
from lark.exceptions import LarkError, UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from wcnest.errors import ParseError
from wcnest.models.core import (
    BOT, HEADLESS, NEG_INF, POS_INF, TOP, And, Atom, Bot, Bound, Lit, Literal, Not, NProgram, NRule, Or,
    RESERVED_PREFIX, RuleElement, Top, WeightConstraint, WProgram, WRule, format_number,
)

logger = logging.getLogger(__name__)

_COMMON = r'''
    ATOM: /[a-z][A-Za-z0-9_]*/
    NUMBER: /-?\d+(\.\d+|\/\d+)?/
    COMMENT: /%[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
'''

WEIGHT_GRAMMAR = r'''
    start: rule*
    rule: constraint "."
        | constraint ":-" body? "."
        | ":-" body? "."
    body: constraint ("," constraint)*

    constraint: lower? "{" pairs? "}" upper?   -> set_constraint
              | element                         -> element_constraint
    lower: number "<="
    upper: "<=" number
    pairs: pair ("," pair)*
    pair: element ("=" number)?
    element: NOT? literal
    literal: ATOM            -> positive
           | "-" ATOM        -> negative
    number: NUMBER

    NOT: "not"
''' + _COMMON

NESTED_GRAMMAR = r'''
    start: rule*
    rule: formula (":-" formula)? "."

    ?formula: disjunction
    ?disjunction: conjunction (";" conjunction)*
    ?conjunction: unary ("," unary)*
    ?unary: NOT unary        -> negation
          | primary
    ?primary: BOT            -> bottom
            | TOP            -> top
            | literal
            | "(" formula ")"
    literal: ATOM            -> positive
           | "-" ATOM        -> negative

    NOT: "not"
    BOT: "bot"
    TOP: "top"
''' + _COMMON

_KEYWORDS = {'not', 'bot', 'top'}

_weight_parser = Lark(WEIGHT_GRAMMAR, parser='lalr', propagate_positions=True)
_nested_parser = Lark(NESTED_GRAMMAR, parser='lalr', propagate_positions=True)


def _validation(token, message):
    return ParseError(getattr(token, 'line', 1) or 1, getattr(token, 'column', 1) or 1, message, 'validation')


def _atom(token, reserve_prefix):
    name = str(token)
    if name in _KEYWORDS:
        raise _validation(token, f"keyword {name!r} cannot be used as an atom")
    if reserve_prefix and name.startswith(RESERVED_PREFIX):
        raise _validation(token, f"atom {name!r} uses the reserved prefix {RESERVED_PREFIX!r}")
    return Atom(name)


class _BoundSide(NamedTuple):
    side: str
    bound: Bound


class _LiteralMixin:
    reserve_prefix = False

    def positive(self, children):
        return Literal(_atom(children[0], self.reserve_prefix))

    def negative(self, children):
        return Literal(_atom(children[0], self.reserve_prefix), True)


class WeightProgramTransformer(_LiteralMixin, Transformer):
    reserve_prefix = True

    def start(self, rules):
        return WProgram(rules)

    def number(self, children):
        token = children[0]
        try:
            return (Fraction(str(token)), token)
        except ZeroDivisionError:
            raise _validation(token, f"division by zero in {token}")

    def lower(self, children):
        return _BoundSide('lower', Bound(children[0][0]))

    def upper(self, children):
        return _BoundSide('upper', Bound(children[0][0]))

    def pairs(self, children):
        return list(children)

    def element(self, children):
        naf = len(children) == 2
        return RuleElement(children[-1], naf)

    def pair(self, children):
        element = children[0]
        if len(children) == 1:
            return (element, Fraction(1))
        weight, token = children[1]
        if weight < 0:
            raise _validation(
                token,
                f"negative weight {format_number(weight)}; negative weights are rejected "
                f"(eliminating them leads to results that seem unintuitive)",
            )
        return (element, weight)

    def set_constraint(self, children):
        bounds = {'lower': NEG_INF, 'upper': POS_INF}
        pairs = []
        for child in children:
            if isinstance(child, _BoundSide):
                bounds[child.side] = child.bound
            elif isinstance(child, list):
                pairs = child
        return WeightConstraint(bounds['lower'], pairs, bounds['upper'])

    def element_constraint(self, children):
        return WeightConstraint.element(children[0])

    def body(self, children):
        return list(children)

    def rule(self, children):
        head, body = HEADLESS, []
        for child in children:
            if isinstance(child, WeightConstraint):
                head = child
            elif isinstance(child, list):
                body = child
        return WRule(head, body)


class NestedProgramTransformer(_LiteralMixin, Transformer):

    def start(self, rules):
        return NProgram(rules)

    def rule(self, children):
        if len(children) == 1:
            return NRule(children[0], TOP)
        return NRule(children[0], children[1])

    def disjunction(self, children):
        return Or(children)

    def conjunction(self, children):
        return And(children)

    def negation(self, children):
        return Not(children[-1])

    def bottom(self, _):
        return BOT

    def top(self, _):
        return TOP

    def positive(self, children):
        return Lit(super().positive(children))

    def negative(self, children):
        return Lit(super().negative(children))


def _end_position(text):
    lines = text.split('\n')
    return len(lines), len(lines[-1]) + 1


def _syntax_error(exc, text):
    line = getattr(exc, 'line', -1)
    column = getattr(exc, 'column', -1)
    if not isinstance(line, int) or line < 1 or not isinstance(column, int) or column < 1:
        line, column = _end_position(text)
    if isinstance(exc, UnexpectedCharacters):
        message = f"unexpected character {exc.char!r}"
    elif isinstance(exc, UnexpectedEOF):
        message = "unexpected end of input"
    elif isinstance(exc, UnexpectedInput) and getattr(exc, 'token', None) is not None:
        token = exc.token
        message = "unexpected end of input" if token.type == '$END' else f"unexpected token {str(token)!r}"
    else:
        message = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
    return ParseError(line, column, message, 'syntax')


def _decode(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode('utf-8')
        except UnicodeDecodeError as exc:
            raise ParseError(1, exc.start + 1, "input is not valid UTF-8", 'syntax') from None
    return text


def _parse(parser, transformer, text):
    text = _decode(text)
    try:
        tree = parser.parse(text)
    except LarkError as exc:
        raise _syntax_error(exc, text) from None
    try:
        return transformer.transform(tree)
    except VisitError as exc:
        original = exc.orig_exc
        if isinstance(original, ParseError):
            raise original from None
        if isinstance(original, ValueError):
            meta = getattr(exc.obj, 'meta', None)
            line = getattr(meta, 'line', 1) or 1
            column = getattr(meta, 'column', 1) or 1
            raise ParseError(line, column, str(original), 'validation') from None
        raise


def parse_weight_program(text):
    """Parse a program with weight constraints; raises ParseError."""
    program = _parse(_weight_parser, WeightProgramTransformer(), text)
    logger.debug("parsed weight program with %d rules", len(program))
    return program


def parse_nested_program(text):
    """Parse a program with nested expressions; raises ParseError."""
    program = _parse(_nested_parser, NestedProgramTransformer(), text)
    logger.debug("parsed nested program with %d rules", len(program))
    return program


# Printing ---------------------------------------------------------------------

def format_literal(lit):
    return str(lit)


def format_element(element):
    return str(element)


def _format_pair(element, weight):
    if weight == 1:
        return format_element(element)
    return f"{format_element(element)}={format_number(weight)}"


def _format_finite(bound, side):
    if not bound.is_finite:
        raise ValueError(f"{side} bound {bound} cannot be written in program text")
    return format_number(bound.value)


def format_constraint(constraint):
    if constraint.is_element_shorthand:
        return format_element(constraint.pairs[0][0])
    text = '{' + ', '.join(_format_pair(c, w) for c, w in constraint.pairs) + '}'
    if constraint.lower != NEG_INF:
        text = f"{_format_finite(constraint.lower, 'lower')} <= {text}"
    if constraint.upper != POS_INF:
        text = f"{text} <= {_format_finite(constraint.upper, 'upper')}"
    return text


def format_weight_rule(rule):
    head = '' if rule.head == HEADLESS else format_constraint(rule.head)
    body = ', '.join(format_constraint(c) for c in rule.body)
    if rule.head == HEADLESS:
        return f":- {body}." if body else ":- ."
    if body:
        return f"{head} :- {body}."
    return f"{head}."


def print_weight_program(program):
    return '\n'.join(format_weight_rule(rule) for rule in program.rules)


_PRECEDENCE = {Or: 1, And: 2, Not: 3}


def _precedence(formula):
    return _PRECEDENCE.get(type(formula), 4)


def format_formula(formula):
    if isinstance(formula, Bot):
        return 'bot'
    if isinstance(formula, Top):
        return 'top'
    if isinstance(formula, Lit):
        return format_literal(formula.literal)
    if isinstance(formula, Not):
        inner = format_formula(formula.operand)
        if _precedence(formula.operand) < _precedence(formula):
            inner = f"({inner})"
        return f"not {inner}"
    if isinstance(formula, (And, Or)):
        separator = ', ' if isinstance(formula, And) else '; '
        own = _precedence(formula)
        parts = []
        for item in formula.items:
            text = format_formula(item)
            # equal precedence is parenthesised too, so nesting survives a round trip
            if _precedence(item) <= own:
                text = f"({text})"
            parts.append(text)
        return separator.join(parts)
    raise TypeError(f"{type(formula).__name__} cannot appear in a nested program")


def format_nested_rule(rule):
    head = format_formula(rule.head)
    if rule.body == TOP:
        return f"{head}."
    return f"{head} :- {format_formula(rule.body)}."


def print_nested_program(program):
    return '\n'.join(format_nested_rule(rule) for rule in program.rules)
