"""
Syntax trees of theory presentation combinator terms.

A library is a list of ``Definition``s, each binding a name to one of six
term forms. Terms only refer to theories by name, so every name must be
defined earlier in the library.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from theory_combinators.errors import Span
from theory_combinators.kernel import Expression


@dataclass(frozen=True)
class Judgment:
    """One ``label: classifier`` or ``axiom label: proposition`` of a body."""

    label: str
    classifier: Expression
    axiom: bool = False
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Renaming:
    """``[a |-> b, ...]``"""

    pairs: Tuple[Tuple[str, str], ...] = ()
    span: Optional[Span] = field(default=None, compare=False)

    def __str__(self) -> str:
        return '[' + ', '.join(f'{a} |-> {b}' for a, b in self.pairs) + ']'


@dataclass(frozen=True)
class Empty:
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class TheoryLiteral:
    body: Tuple[Judgment, ...] = ()
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class ExtendBy:
    base: str
    body: Tuple[Judgment, ...] = ()
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Combine:
    left: str
    left_renaming: Renaming
    right: str
    right_renaming: Renaming
    over: Optional[str] = None
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Seq:
    first: str
    second: str
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True)
class Rename:
    base: str
    renaming: Renaming
    span: Optional[Span] = field(default=None, compare=False)


TpcTerm = Union[Empty, TheoryLiteral, ExtendBy, Combine, Seq, Rename]


@dataclass(frozen=True)
class Definition:
    name: str
    term: TpcTerm
    span: Optional[Span] = field(default=None, compare=False)


def references(term: TpcTerm) -> Tuple[str, ...]:
    """
    The theory names a term refers to, in order of appearance:

    >>> references(Combine('CommutativeMonoid', Renaming(), 'Group', Renaming(), 'Monoid'))
    ('CommutativeMonoid', 'Group', 'Monoid')
    >>> references(Empty())
    ()
    """
    if isinstance(term, (ExtendBy, Rename)):
        return (term.base,)
    if isinstance(term, Seq):
        return (term.first, term.second)
    if isinstance(term, Combine):
        over = (term.over,) if term.over is not None else ()
        return (term.left, term.right) + over
    return ()
