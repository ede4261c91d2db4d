"""
Parser for ``.tpc`` libraries.

A library is a sequence of definitions ``Name := tpc``. The right-hand side
is one of the six combinator forms, and the bodies of theory literals and
extensions are lists of judgments written in the expression syntax the
kernel prints:

    >>> [monoid] = parse_tpc('''
    ... Monoid := Theory {
    ...   U:type;  *:(U,U) -> U;  e:U;
    ...   axiom rightIdentity_*_e: forall x:U. x*e = x;
    ...   axiom leftIdentity_*_e: forall x:U. e*x = x;
    ...   axiom associative_*: forall x,y,z:U. (x*y)*z = x*(y*z)}
    ... ''', 'monoids.tpc')
    >>> monoid.name
    'Monoid'
    >>> [judgment.label for judgment in monoid.term.body]
    ['U', '*', 'e', 'rightIdentity_*_e', 'leftIdentity_*_e', 'associative_*']
    >>> print(monoid.term.body[5].classifier)
    forall x,y,z:U. (x*y)*z = x*(y*z)
    >>> str(monoid.term.body[3].span)
    'monoids.tpc:4:3'

Syntax errors point at the offending token:

    >>> parse_tpc('Broken := Theory { U:type; e: }', 'broken.tpc')
    Traceback (most recent call last):
    ...
    theory_combinators.errors.TpcSyntaxError: unexpected '}'
"""

import logging
from functools import lru_cache
from typing import Any, List, Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

from theory_combinators.errors import Span, TpcSyntaxError
from theory_combinators.kernel import (
    UNIVERSE,
    And,
    Apply,
    Arrow,
    Equals,
    Expression,
    Implies,
    Label,
    Not,
    Or,
    Product,
    forall,
)
from theory_combinators.terms import (
    Combine,
    Definition,
    Empty,
    ExtendBy,
    Judgment,
    Rename,
    Renaming,
    Seq,
    TheoryLiteral,
)

logger = logging.getLogger(__name__)

GRAMMAR = r'''
start: definition*

definition: NAME ":=" tpc

tpc: "Empty"                                                   -> empty
   | "Theory" "{" body "}"                                     -> theory
   | NAME "extended" "by" "{" body "}"                         -> extend
   | "extend" NAME "by" "{" body "}"                           -> extend
   | "combine" NAME renaming? "," NAME renaming? ("over" NAME)?  -> combine
   | NAME ";" NAME                                             -> seq
   | NAME renaming                                             -> rename

renaming: "[" (rename_pair ("," rename_pair)*)? "]"
rename_pair: label "|->" label

body: (judgment (";" judgment)* ";"?)?

judgment: "axiom" label ":" expr  -> axiom
        | label ":" expr          -> declaration

label: NAME | NUMERAL | OP | "(" OP ")"

?expr: _forall binders ":" arrow_type "." expr   -> universal
     | implication

binders: NAME ("," NAME)*

?implication: disjunction
            | disjunction "implies" implication    -> implies
?disjunction: conjunction
            | disjunction "or" conjunction         -> or_
?conjunction: negation
            | conjunction "and" negation           -> and_
?negation: equality
         | "not" negation                          -> not_
?equality: arrow_type
         | arrow_type "=" arrow_type               -> equals
?arrow_type: product_type
           | product_type _arrow arrow_type        -> arrow
?product_type: infix
             | infix ("×" infix)+                  -> product
?infix: application
      | infix OP application                      -> infix
?application: atom
            | application "(" expr ("," expr)* ")" -> apply
?atom: label_ref
     | "type"                                     -> universe
     | "Type"                                     -> universe
     | "(" expr ")"
     | "(" expr ("," expr)+ ")"                   -> product

label_ref: NAME | NUMERAL | "(" OP ")"

_forall: "forall" | "∀"
_arrow: "->" | "→"

NAME: /[A-Za-z][A-Za-z0-9']*(?:_+(?:[A-Za-z0-9']+|[*+\/^~@&%$!?#]+'*))*/
NUMERAL: /[0-9]+'*/
OP: /[*+\/^~@&%$!?#]+'*/
COMMENT: /--[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
'''


@lru_cache(maxsize=None)
def _parser() -> Lark:
    # The basic lexer reserves keywords everywhere, not only where the parser
    # expects them.
    return Lark(GRAMMAR, start=['start', 'expr'], parser='lalr', lexer='basic',
                propagate_positions=True)


@v_args(meta=True)
class TpcTransformer(Transformer):
    """Turn lark trees into ``terms`` and ``kernel`` objects, keeping spans."""

    def __init__(self, filename: str) -> None:
        super().__init__()
        self.filename = filename

    def _span(self, meta: Any) -> Optional[Span]:
        if getattr(meta, 'empty', True):
            return None
        return Span(self.filename, meta.line, meta.column, meta.end_line, meta.end_column)

    def start(self, meta: Any, children: List[Definition]) -> List[Definition]:
        return list(children)

    def definition(self, meta: Any, children: List[Any]) -> Definition:
        name, term = children
        return Definition(str(name), term, self._span(meta))

    def empty(self, meta: Any, children: List[Any]) -> Empty:
        return Empty(self._span(meta))

    def theory(self, meta: Any, children: List[Any]) -> TheoryLiteral:
        [body] = children
        return TheoryLiteral(body, self._span(meta))

    def extend(self, meta: Any, children: List[Any]) -> ExtendBy:
        base, body = children
        return ExtendBy(str(base), body, self._span(meta))

    def combine(self, meta: Any, children: List[Any]) -> Combine:
        rest = list(children)
        left = str(rest.pop(0))
        left_renaming = rest.pop(0) if rest and isinstance(rest[0], Renaming) else Renaming()
        right = str(rest.pop(0))
        right_renaming = rest.pop(0) if rest and isinstance(rest[0], Renaming) else Renaming()
        over = str(rest[0]) if rest else None
        return Combine(left, left_renaming, right, right_renaming, over, self._span(meta))

    def seq(self, meta: Any, children: List[Any]) -> Seq:
        first, second = children
        return Seq(str(first), str(second), self._span(meta))

    def rename(self, meta: Any, children: List[Any]) -> Rename:
        base, renaming = children
        return Rename(str(base), renaming, self._span(meta))

    def renaming(self, meta: Any, children: List[Any]) -> Renaming:
        return Renaming(tuple(children), self._span(meta))

    def rename_pair(self, meta: Any, children: List[str]) -> tuple:
        source, target = children
        return source, target

    def body(self, meta: Any, children: List[Judgment]) -> tuple:
        return tuple(children)

    def axiom(self, meta: Any, children: List[Any]) -> Judgment:
        label, classifier = children
        return Judgment(label, classifier, True, self._span(meta))

    def declaration(self, meta: Any, children: List[Any]) -> Judgment:
        label, classifier = children
        return Judgment(label, classifier, False, self._span(meta))

    def label(self, meta: Any, children: List[Token]) -> str:
        return str(children[0])

    def label_ref(self, meta: Any, children: List[Token]) -> Expression:
        return Label(str(children[0]))

    def universe(self, meta: Any, children: List[Any]) -> Expression:
        return UNIVERSE

    def binders(self, meta: Any, children: List[Token]) -> List[str]:
        return [str(name) for name in children]

    def universal(self, meta: Any, children: List[Any]) -> Expression:
        names, domain, body = children
        return forall(names, domain, body)

    def implies(self, meta: Any, children: List[Expression]) -> Expression:
        return Implies(*children)

    def or_(self, meta: Any, children: List[Expression]) -> Expression:
        return Or(*children)

    def and_(self, meta: Any, children: List[Expression]) -> Expression:
        return And(*children)

    def not_(self, meta: Any, children: List[Expression]) -> Expression:
        return Not(children[0])

    def equals(self, meta: Any, children: List[Expression]) -> Expression:
        return Equals(*children)

    def arrow(self, meta: Any, children: List[Expression]) -> Expression:
        return Arrow(*children)

    def product(self, meta: Any, children: List[Expression]) -> Expression:
        return Product(tuple(children))

    def infix(self, meta: Any, children: List[Any]) -> Expression:
        left, op, right = children
        return Apply(Label(str(op)), (left, right))

    def apply(self, meta: Any, children: List[Expression]) -> Expression:
        function, *arguments = children
        return Apply(function, tuple(arguments))


def parse_tpc(text: str, filename: str = '<string>') -> List[Definition]:
    """
    Parse a whole library. Both spellings of an extension are accepted:

    >>> [a, b] = parse_tpc('''
    ... A := Monoid extended by { axiom commutative_*: forall x,y:U. x*y = y*x }
    ... B := extend Monoid by { }
    ... ''')
    >>> a.term.base, b.term.base, b.term.body
    ('Monoid', 'Monoid', ())

    ``combine`` takes optional renamings and an optional base:

    >>> [g] = parse_tpc('G := combine M [], N [e |-> 0] over K')
    >>> g.term.over, str(g.term.right_renaming)
    ('K', '[e |-> 0]')
    >>> [h] = parse_tpc('H := CommutativeGroup[ * |-> +, e |-> 0 ]')
    >>> h.term.renaming.pairs
    (('*', '+'), ('e', '0'))
    """
    logger.debug('parsing %s', filename)
    try:
        tree = _parser().parse(text, start='start')
    except UnexpectedInput as error:
        raise _syntax_error(error, text, filename) from None
    return TpcTransformer(filename).transform(tree)


def parse_expression(text: str) -> Expression:
    """
    Parse a single expression:

    >>> print(parse_expression('∀ x:U. not x = e implies x*x = x'))
    forall x:U. not x = e implies x*x = x
    >>> parse_expression('(U,U) → U') == parse_expression('U × U -> U')
    True
    """
    try:
        tree = _parser().parse(text, start='expr')
    except UnexpectedInput as error:
        raise _syntax_error(error, text, '<expression>') from None
    return TpcTransformer('<expression>').transform(tree)


def _syntax_error(error: UnexpectedInput, text: str, filename: str) -> TpcSyntaxError:
    line, column = getattr(error, 'line', -1), getattr(error, 'column', -1)
    if line is None or line < 1:
        lines = text.splitlines() or ['']
        line, column = len(lines), len(lines[-1]) + 1
    if isinstance(error, UnexpectedToken):
        expected = frozenset(error.expected)
        if error.token.type == '$END':
            message = 'unexpected end of input'
        else:
            message = f'unexpected {str(error.token)!r}'
    elif isinstance(error, UnexpectedCharacters):
        expected = frozenset(error.allowed or ())
        message = f'unexpected character {error.char!r}'
    else:
        expected = frozenset(getattr(error, 'expected', None) or ())
        message = 'unexpected end of input'
    return TpcSyntaxError(message, Span(filename, line, column), expected)
