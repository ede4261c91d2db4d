"""
The background type theory theory presentations are written in.

Expressions are immutable trees. Context labels are rigid names, while bound
variables are de Bruijn indices that keep their name for printing only, so
two expressions are α-equivalent exactly when they compare equal. The
judgements take the context as a plain mapping from labels to classifiers,
so a ``dict`` is enough to try them out:

    >>> ctx = {'U': UNIVERSE, '*': Arrow(Product((Label('U'), Label('U'))), Label('U'))}
    >>> print(ctx['*'])
    (U,U) -> U
    >>> check_classifier(ctx, ctx['*'])
    <Sort.TYPE: 'Type'>
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, FrozenSet, Mapping, Sequence, Tuple, Union

from theory_combinators.errors import (
    IllFormedExpressionError,
    SortMismatchError,
    TypeMismatchError,
    UnboundLabelError,
)

logger = logging.getLogger(__name__)


class Sort(Enum):
    TYPE = 'Type'
    TERM = 'Term'
    KIND = 'Kind'
    PROP = 'Prop'

    def __str__(self) -> str:
        return self.value


class Expression:
    """Base class of every expression node."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Universe(Expression):
    """``type``, the classifier of type declarations."""


UNIVERSE = Universe()


@dataclass(frozen=True)
class Label(Expression):
    name: str

    @property
    def infix(self) -> bool:
        return is_operator(self.name)


@dataclass(frozen=True)
class Bound(Expression):
    index: int
    name: str = field(compare=False)


@dataclass(frozen=True)
class Product(Expression):
    factors: Tuple[Expression, ...]


@dataclass(frozen=True)
class Arrow(Expression):
    domain: Expression
    codomain: Expression


@dataclass(frozen=True)
class Apply(Expression):
    function: Expression
    arguments: Tuple[Expression, ...]


@dataclass(frozen=True)
class Forall(Expression):
    name: str = field(compare=False)
    domain: Expression
    body: Expression


@dataclass(frozen=True)
class Equals(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class And(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Or(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Implies(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Not(Expression):
    operand: Expression


_BINARY = (Equals, And, Or, Implies)
_CONNECTIVES = (And, Or, Implies)

Assignable = Union[Expression, str]


def is_operator(label: str) -> bool:
    """
    Tell whether a label is an operator symbol, printed infix when applied to
    two arguments:

    >>> is_operator('*'), is_operator('+'), is_operator('e'), is_operator('0')
    (True, True, False, False)
    """
    return bool(label) and not (label[0].isalnum() or label[0] in "_'")


def as_expression(value: Assignable) -> Expression:
    """Strings stand for labels."""
    return Label(value) if isinstance(value, str) else value


def forall(names: Sequence[str], domain: Expression, body: Expression) -> Expression:
    """
    Bind ``names`` in ``body``, turning the labels with those names into bound
    variables. ``forall x,y:U. body`` becomes two nested ``Forall`` nodes:

    >>> op = Label('*')
    >>> x, y = Label('x'), Label('y')
    >>> commutative = forall(['x', 'y'], Label('U'),
    ...                      Equals(Apply(op, (x, y)), Apply(op, (y, x))))
    >>> print(commutative)
    forall x,y:U. x*y = y*x
    >>> commutative.body.body.left
    Apply(function=Label(name='*'), arguments=(Bound(index=1, name='x'), Bound(index=0, name='y')))
    """
    for name in reversed(names):
        body = Forall(name, domain, abstract(body, name))
    return body


def abstract(e: Expression, name: str) -> Expression:
    def leaf(node: Expression, depth: int) -> Expression:
        if isinstance(node, Label) and node.name == name:
            return Bound(depth, name)
        return node
    return _rebuild(e, leaf)


def _rebuild(e: Expression, leaf: Callable[[Expression, int], Expression],
             depth: int = 0) -> Expression:
    if isinstance(e, (Label, Bound)):
        return leaf(e, depth)
    if isinstance(e, Universe):
        return e
    if isinstance(e, Product):
        return Product(tuple(_rebuild(f, leaf, depth) for f in e.factors))
    if isinstance(e, Arrow):
        return Arrow(_rebuild(e.domain, leaf, depth), _rebuild(e.codomain, leaf, depth))
    if isinstance(e, Apply):
        return Apply(
            _rebuild(e.function, leaf, depth),
            tuple(_rebuild(a, leaf, depth) for a in e.arguments))
    if isinstance(e, Forall):
        return Forall(
            e.name, _rebuild(e.domain, leaf, depth), _rebuild(e.body, leaf, depth + 1))
    if isinstance(e, Not):
        return Not(_rebuild(e.operand, leaf, depth))
    if isinstance(e, _BINARY):
        return type(e)(_rebuild(e.left, leaf, depth), _rebuild(e.right, leaf, depth))
    raise IllFormedExpressionError(e)


def substitute(e: Expression, assignment: Mapping[str, Assignable]) -> Expression:
    """
    Substitute labels simultaneously. Bound variables are never touched, so
    an assignment can neither capture nor replace them. Renaming the monoid
    operations of an identity axiom:

    >>> x = Label('x')
    >>> identity = forall(['x'], Label('U'), Equals(Apply(Label('*'), (Label('e'), x)), x))
    >>> print(substitute(identity, {'*': '+', 'e': '0'}))
    forall x:U. 0+x = x

    The empty substitution is the identity, and binders shadow labels:

    >>> substitute(identity, {}) == identity
    True
    >>> shadowing = forall(['U'], Label('T'), Label('U'))
    >>> print(substitute(shadowing, {'U': 'V'}))
    forall U:T. U
    """
    if not assignment:
        return e
    replacements = {label: as_expression(term) for label, term in assignment.items()}

    def leaf(node: Expression, depth: int) -> Expression:
        if isinstance(node, Label):
            return replacements.get(node.name, node)
        return node
    return _rebuild(e, leaf)


def alpha_equal(a: Expression, b: Expression) -> bool:
    """
    Tell whether two expressions differ only in the names of bound variables.

    >>> x, y = Label('x'), Label('y')
    >>> def idempotent(op, v):
    ...     return forall([v.name], Label('U'), Equals(Apply(Label(op), (v, v)), v))
    >>> alpha_equal(idempotent('*', x), idempotent('*', y))
    True
    >>> alpha_equal(idempotent('*', x), idempotent('+', x))
    False
    """
    return a == b


def free_labels(e: Expression) -> FrozenSet[str]:
    """
    The labels an expression refers to:

    >>> sorted(free_labels(forall(['x'], Label('U'), Equals(Label('x'), Label('e')))))
    ['U', 'e']
    """
    if isinstance(e, Label):
        return frozenset([e.name])
    if isinstance(e, (Bound, Universe)):
        return frozenset()
    return frozenset().union(*(free_labels(c) for c in _children(e)))


def _children(e: Expression) -> Tuple[Expression, ...]:
    if isinstance(e, Product):
        return e.factors
    if isinstance(e, Arrow):
        return (e.domain, e.codomain)
    if isinstance(e, Apply):
        return (e.function,) + e.arguments
    if isinstance(e, Forall):
        return (e.domain, e.body)
    if isinstance(e, Not):
        return (e.operand,)
    if isinstance(e, _BINARY):
        return (e.left, e.right)
    return ()


def check_classifier(ctx: Mapping[str, Expression], e: Expression) -> Sort:
    """
    Return the sort ``s`` such that ``ctx ⊢ e : s``, for an expression used as
    the classifier of a context entry.

    >>> U = Label('U')
    >>> check_classifier({'U': UNIVERSE}, Arrow(Product((U, U)), U))
    <Sort.TYPE: 'Type'>
    >>> check_classifier({}, UNIVERSE)
    <Sort.KIND: 'Kind'>
    >>> check_classifier({'U': UNIVERSE, 'e': U},
    ...                  forall(['x'], U, Equals(Label('x'), Label('e'))))
    <Sort.PROP: 'Prop'>

    Terms are not classifiers, and every label must be declared:

    >>> check_classifier({'U': UNIVERSE, 'e': U}, Label('e'))
    Traceback (most recent call last):
    ...
    theory_combinators.errors.SortMismatchError: e: expected a classifier, found Term
    >>> check_classifier({}, U)
    Traceback (most recent call last):
    ...
    theory_combinators.errors.UnboundLabelError: unbound label U
    """
    return _sort(ctx, (), e)


def _sort(ctx: Mapping[str, Expression], scope: Tuple[Expression, ...],
          e: Expression) -> Sort:
    if isinstance(e, Universe):
        return Sort.KIND
    if isinstance(e, Label):
        if isinstance(_lookup(ctx, e.name), Universe):
            return Sort.TYPE
        raise SortMismatchError('a classifier', Sort.TERM, e.name)
    if isinstance(e, Product):
        if len(e.factors) < 2:
            raise IllFormedExpressionError(e, 'a product needs two factors or more')
        for factor in e.factors:
            _expect(ctx, scope, factor, Sort.TYPE)
        return Sort.TYPE
    if isinstance(e, Arrow):
        _expect(ctx, scope, e.domain, Sort.TYPE)
        _expect(ctx, scope, e.codomain, Sort.TYPE)
        return Sort.TYPE
    if isinstance(e, Equals):
        left = _infer(ctx, scope, e.left)
        right = _infer(ctx, scope, e.right)
        if _sort(ctx, scope, left) is not Sort.TYPE:
            raise SortMismatchError('terms of a type', Sort.PROP, render(e))
        if not alpha_equal(left, right):
            raise TypeMismatchError(render(e.right), render(left), render(right))
        return Sort.PROP
    if isinstance(e, _CONNECTIVES):
        _expect(ctx, scope, e.left, Sort.PROP)
        _expect(ctx, scope, e.right, Sort.PROP)
        return Sort.PROP
    if isinstance(e, Not):
        _expect(ctx, scope, e.operand, Sort.PROP)
        return Sort.PROP
    if isinstance(e, Forall):
        _expect(ctx, scope, e.domain, Sort.TYPE)
        _expect(ctx, scope + (e.domain,), e.body, Sort.PROP)
        return Sort.PROP
    if isinstance(e, (Bound, Apply)):
        raise SortMismatchError('a classifier', Sort.TERM, _render_in(e, scope))
    raise IllFormedExpressionError(e)


def _expect(ctx: Mapping[str, Expression], scope: Tuple[Expression, ...],
            e: Expression, sort: Sort) -> None:
    found = _sort(ctx, scope, e)
    if found is not sort:
        raise SortMismatchError(sort, found, _render_in(e, scope))


def _lookup(ctx: Mapping[str, Expression], label: str) -> Expression:
    try:
        return ctx[label]
    except KeyError:
        raise UnboundLabelError(label) from None


def infer_term(ctx: Mapping[str, Expression], t: Expression) -> Expression:
    """
    Return the type of a term. Labels of types are terms of ``type`` and
    labels of axioms are terms of their proposition:

    >>> U = Label('U')
    >>> ctx = {'U': UNIVERSE, 'inv': Arrow(U, U), 'e': U}
    >>> print(infer_term(ctx, Apply(Label('inv'), (Label('e'),))))
    U
    >>> print(infer_term(ctx, U))
    type
    >>> infer_term(ctx, Apply(Label('inv'), (U,)))
    Traceback (most recent call last):
    ...
    theory_combinators.errors.TypeMismatchError: type mismatch for U: expected U, found type
    """
    return _infer(ctx, (), t)


def _infer(ctx: Mapping[str, Expression], scope: Tuple[Expression, ...],
           t: Expression) -> Expression:
    if isinstance(t, Label):
        return _lookup(ctx, t.name)
    if isinstance(t, Bound):
        if t.index >= len(scope):
            raise IllFormedExpressionError(t, 'variable bound nowhere')
        return scope[-1 - t.index]
    if isinstance(t, Apply):
        function_type = _infer(ctx, scope, t.function)
        if not isinstance(function_type, Arrow):
            raise TypeMismatchError(
                _render_in(t.function, scope), 'a function', render(function_type))
        domain = function_type.domain
        parameters = domain.factors if isinstance(domain, Product) else (domain,)
        if len(parameters) != len(t.arguments):
            raise TypeMismatchError(
                _render_in(t, scope), f'{len(parameters)} arguments',
                f'{len(t.arguments)} arguments')
        for parameter, argument in zip(parameters, t.arguments):
            actual = _infer(ctx, scope, argument)
            if not alpha_equal(actual, parameter):
                raise TypeMismatchError(
                    _render_in(argument, scope), render(parameter), render(actual))
        return function_type.codomain
    if isinstance(t, (Product, Arrow)):
        _sort(ctx, scope, t)
        return UNIVERSE
    if isinstance(t, Universe):
        raise SortMismatchError('a term', Sort.KIND, 'type')
    raise SortMismatchError('a term', Sort.PROP, _render_in(t, scope))


def check_term(ctx: Mapping[str, Expression], t: Expression, expected: Expression) -> bool:
    """
    Tell whether ``ctx ⊢ t : expected`` holds, up to α-equivalence:

    >>> U = Label('U')
    >>> ctx = {'U': UNIVERSE, 'e': U}
    >>> check_term(ctx, Label('e'), U)
    True
    >>> check_term(ctx, U, UNIVERSE)
    True

    A type is not a term of itself:

    >>> check_term(ctx, U, U)
    False
    """
    try:
        actual = infer_term(ctx, t)
    except (TypeMismatchError, SortMismatchError) as error:
        logger.debug('%s does not check against %s: %s', t, expected, error)
        return False
    return alpha_equal(actual, expected)


_FORALL, _IMPLIES, _OR, _AND, _NOT, _EQUALS, _ARROW, _PRODUCT, _INFIX, _APPLY, _ATOM = range(11)


def render(e: Expression) -> str:
    """
    Print an expression in the concrete syntax of ``.tpc`` files. Applications
    of operators are infix, and nested ones are always parenthesized:

    >>> op = Label('*')
    >>> x, y, z = Label('x'), Label('y'), Label('z')
    >>> def mul(a, b):
    ...     return Apply(op, (a, b))
    >>> print(forall(['x', 'y', 'z'], Label('U'),
    ...              Equals(mul(mul(x, y), z), mul(x, mul(y, z)))))
    forall x,y,z:U. (x*y)*z = x*(y*z)

    Bound variables are renamed when a label with the same name would be
    captured:

    >>> print(Forall('e', Label('U'), Equals(Bound(0, 'e'), Label('e'))))
    forall e':U. e' = e
    """
    return _render(e, (), _FORALL)


def _render_in(e: Expression, scope: Tuple[Expression, ...]) -> str:
    # Error messages only: the names of the enclosing binders are gone.
    return _render(e, tuple(f'#{i}' for i in range(len(scope) - 1, -1, -1)), _FORALL)


def _render(e: Expression, names: Tuple[str, ...], minimum: int) -> str:
    text, level = _render_at(e, names)
    return f'({text})' if level < minimum else text


def _render_at(e: Expression, names: Tuple[str, ...]) -> Tuple[str, int]:
    if isinstance(e, Universe):
        return 'type', _ATOM
    if isinstance(e, Label):
        return (f'({e.name})' if e.infix else e.name), _ATOM
    if isinstance(e, Bound):
        if e.index < len(names):
            return names[-1 - e.index], _ATOM
        return f'#{e.index}', _ATOM
    if isinstance(e, Product):
        return '(' + ','.join(_render(f, names, _FORALL) for f in e.factors) + ')', _ATOM
    if isinstance(e, Arrow):
        domain = _render(e.domain, names, _PRODUCT)
        return f'{domain} -> {_render(e.codomain, names, _ARROW)}', _ARROW
    if isinstance(e, Apply):
        if isinstance(e.function, Label) and e.function.infix and len(e.arguments) == 2:
            left, right = (_render(a, names, _APPLY) for a in e.arguments)
            return f'{left}{e.function.name}{right}', _INFIX
        arguments = ','.join(_render(a, names, _FORALL) for a in e.arguments)
        return f'{_render(e.function, names, _APPLY)}({arguments})', _APPLY
    if isinstance(e, Equals):
        left, right = _render(e.left, names, _ARROW), _render(e.right, names, _ARROW)
        return f'{left} = {right}', _EQUALS
    if isinstance(e, And):
        return f'{_render(e.left, names, _AND)} and {_render(e.right, names, _NOT)}', _AND
    if isinstance(e, Or):
        return f'{_render(e.left, names, _OR)} or {_render(e.right, names, _AND)}', _OR
    if isinstance(e, Implies):
        left, right = _render(e.left, names, _OR), _render(e.right, names, _IMPLIES)
        return f'{left} implies {right}', _IMPLIES
    if isinstance(e, Not):
        return f'not {_render(e.operand, names, _NOT)}', _NOT
    if isinstance(e, Forall):
        return _render_forall(e, names), _FORALL
    raise IllFormedExpressionError(e)


def _render_forall(e: Forall, names: Tuple[str, ...]) -> str:
    domain = e.domain
    chosen = []
    body: Expression = e
    while isinstance(body, Forall) and alpha_equal(body.domain, domain):
        taken = free_labels(body.body) | set(names) | set(chosen)
        candidate = body.name
        while candidate in taken:
            candidate += "'"
        chosen.append(candidate)
        body = body.body
    rendered_body = _render(body, names + tuple(chosen), _FORALL)
    return f'forall {",".join(chosen)}:{_render(domain, names, _ARROW)}. {rendered_body}'
