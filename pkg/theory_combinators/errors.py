"""
Exceptions raised by the theory combinators package.

Every error derives from ``TpcError`` and may carry a ``Span`` pointing into
the ``.tpc`` source it came from. Errors raised by the pure algorithms have no
span; the evaluator attaches the span of the offending definition or judgment
before the error reaches the user:

    >>> error = UnboundLabelError('U')
    >>> str(error)
    'unbound label U'
    >>> located = error.at(Span('monoids.tpc', 3, 5))
    >>> located is error
    True
    >>> str(located.span)
    'monoids.tpc:3:5'

A span is only set once, so the innermost location wins:

    >>> error.at(Span('other.tpc', 1, 1)).span.filename
    'monoids.tpc'
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class Span:
    """A location in a source file; lines and columns start at 1."""

    filename: str
    line: int
    column: int
    end_line: Optional[int] = None
    end_column: Optional[int] = None

    def __str__(self) -> str:
        return f'{self.filename}:{self.line}:{self.column}'


class TpcError(Exception):
    """Base class of every error of the package."""

    def __init__(self, message: str, span: Optional[Span] = None) -> None:
        super().__init__(message)
        self.message = message
        self.span = span

    def at(self, span: Optional[Span]) -> 'TpcError':
        if self.span is None:
            self.span = span
        return self

    def __str__(self) -> str:
        return self.message


# kernel

class UnboundLabelError(TpcError):
    def __init__(self, label: str) -> None:
        super().__init__(f'unbound label {label}')
        self.label = label


class SortMismatchError(TpcError):
    def __init__(self, expected: Any, found: Any, subject: Any = None) -> None:
        prefix = f'{subject}: ' if subject is not None else ''
        super().__init__(f'{prefix}expected {expected}, found {found}')
        self.expected = expected
        self.found = found
        self.subject = subject


class IllFormedExpressionError(TpcError):
    def __init__(self, position: Any, reason: str = 'ill-formed expression') -> None:
        super().__init__(f'{reason}: {position}')
        self.position = position


class TypeMismatchError(TpcError):
    """
    ``subject`` is the offending term, or the target label when raised while
    checking an assignment.
    """

    def __init__(self, subject: Any, expected: Any, actual: Any) -> None:
        super().__init__(
            f'type mismatch for {subject}: expected {expected}, found {actual}')
        self.subject = subject
        self.expected = expected
        self.actual = actual


# context

class DuplicateLabelError(TpcError):
    def __init__(self, label: str) -> None:
        super().__init__(f'duplicate label {label}')
        self.label = label


class IllFormedEntryError(TpcError):
    def __init__(self, label: str, cause: TpcError) -> None:
        super().__init__(f'ill-formed entry {label}: {cause}')
        self.label = label
        self.cause = cause


class MissingTargetError(TpcError):
    def __init__(self, label: str) -> None:
        super().__init__(f'assignment does not map {label}')
        self.label = label


class ExtraTargetError(TpcError):
    def __init__(self, label: str) -> None:
        super().__init__(f'assignment maps {label}, which is not in the target')
        self.label = label


class ContextMismatchError(TpcError):
    def __init__(self, expected: Any, found: Any) -> None:
        super().__init__(f'context mismatch: expected {expected}, found {found}')
        self.expected = expected
        self.found = found


class NonInjectiveRenamingError(TpcError):
    def __init__(self, label: str) -> None:
        super().__init__(f'renaming is not injective at {label}')
        self.label = label


class ClashInContextError(TpcError):
    def __init__(self, label: str) -> None:
        super().__init__(f'renaming target {label} already occurs in the context')
        self.label = label


# category

class NotGeneralExtensionError(TpcError):
    def __init__(self, arrow: Any, found: Any) -> None:
        super().__init__(f'not a general extension ({found}): {arrow}')
        self.arrow = arrow
        self.found = found


class NotExtensionError(TpcError):
    def __init__(self, arrow: Any, found: Any) -> None:
        super().__init__(f'not an extension ({found}): {arrow}')
        self.arrow = arrow
        self.found = found


class NotNominalError(TpcError):
    def __init__(self, arrow: Any) -> None:
        super().__init__(f'not a nominal assignment: {arrow}')
        self.arrow = arrow


class BaseMismatchError(TpcError):
    pass


class FreshLabelExhaustionError(TpcError):
    def __init__(self, label: str) -> None:
        super().__init__(f'no fresh variant of {label} available')
        self.label = label


class PropertyViolationError(TpcError):
    pass


# combinators

class TpcSyntaxError(TpcError):
    def __init__(self, message: str, span: Optional[Span] = None,
                 expected: Optional[frozenset] = None) -> None:
        super().__init__(message, span)
        self.expected = expected or frozenset()


class IllFormedExtensionError(TpcError):
    def __init__(self, label: str, cause: TpcError) -> None:
        super().__init__(f'ill-formed extension at {label}: {cause}')
        self.label = label
        self.cause = cause


class RenamingDisturbsBaseError(TpcError):
    def __init__(self, label: str) -> None:
        super().__init__(f'renaming moves {label}, which belongs to the base')
        self.label = label


class NotAPullbackError(TpcError):
    def __init__(self, diagnostic: str) -> None:
        super().__init__(f'not a pullback: {diagnostic}')
        self.diagnostic = diagnostic


class UnknownNameError(TpcError):
    def __init__(self, name: str) -> None:
        super().__init__(f'unknown theory {name}')
        self.name = name


class DuplicateDefinitionError(TpcError):
    def __init__(self, name: str) -> None:
        super().__init__(f'theory {name} is already defined')
        self.name = name


class CompositionMismatchError(TpcError):
    pass


class CombineBranchesDisagreeError(TpcError):
    pass


class CombineClashError(TpcError):
    def __init__(self, label: str) -> None:
        super().__init__(
            f'{label} is added by both branches outside the base; '
            'rename it in one branch or put it in the base')
        self.label = label
