"""
Contexts and the assignments between them.

A context is an ordered list of ``label: classifier`` entries, each well
formed with respect to the entries before it. An assignment ``Γ → Δ`` maps
every label of the target ``Δ`` to a term over the source ``Γ``, so arrows
point from the bigger theory to the smaller one.

The semigroup and its additive variant are the running examples:

    >>> semigroup = example_context('semigroup')
    >>> print(semigroup)
    <U:type; *:(U,U) -> U; associative:forall x,y,z:U. (x*y)*z = x*(y*z)>
    >>> pi = LabelPermutation.from_pairs([('*', '+')])
    >>> additive = apply_permutation(pi, semigroup)
    >>> print(additive)
    <U:type; +:(U,U) -> U; associative:forall x,y,z:U. (x+y)+z = x+(y+z)>
    >>> print(renaming_arrow(pi, semigroup))
    [U |-> U, * |-> +, associative |-> associative]
    >>> classify(renaming_arrow(pi, semigroup))
    <AssignmentClass.RENAMING: 'renaming'>
"""

from __future__ import annotations

import logging
from collections.abc import Mapping as MappingABC
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import (
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from theory_combinators.errors import (
    ClashInContextError,
    ContextMismatchError,
    DuplicateLabelError,
    ExtraTargetError,
    IllFormedEntryError,
    MissingTargetError,
    NonInjectiveRenamingError,
    Span,
    TpcError,
    TypeMismatchError,
)
from theory_combinators.kernel import (
    Apply,
    Arrow,
    Assignable,
    Equals,
    Expression,
    Label,
    Product,
    Sort,
    UNIVERSE,
    alpha_equal,
    as_expression,
    check_classifier,
    forall,
    infer_term,
    render,
    substitute,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Entry:
    label: str
    classifier: Expression
    span: Optional[Span] = field(default=None, compare=False)

    def __str__(self) -> str:
        return f'{self.label}:{render(self.classifier)}'


@dataclass(frozen=True)
class Context(MappingABC):
    """
    A context, also usable as a mapping from labels to classifiers. Unlike a
    mapping, two contexts are equal only if their entries come in the same
    order:

    >>> U, V = Entry('U', UNIVERSE), Entry('V', UNIVERSE)
    >>> Context((U, V)) == Context((V, U))
    False
    >>> dict(Context((U, V))) == dict(Context((V, U)))
    True
    """

    entries: Tuple[Entry, ...] = ()

    @cached_property
    def _index(self) -> Dict[str, Expression]:
        return {entry.label: entry.classifier for entry in self.entries}

    def __getitem__(self, label: str) -> Expression:
        return self._index[label]

    def __iter__(self) -> Iterator[str]:
        return (entry.label for entry in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Context):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(entry.label for entry in self.entries)

    def entry(self, label: str) -> Entry:
        for entry in self.entries:
            if entry.label == label:
                return entry
        raise KeyError(label)

    def prefix(self, length: int) -> 'Context':
        return Context(self.entries[:length])

    def concat(self, other: Iterable[Entry]) -> 'Context':
        """``Γ ⨟ Δ``; call ``check_context`` on the result to validate it."""
        return Context(self.entries + tuple(other))

    def sort_of(self, label: str) -> Sort:
        """The sort of the classifier of ``label``."""
        position = self.labels.index(label)
        return check_classifier(self.prefix(position), self.entries[position].classifier)

    def __str__(self) -> str:
        return '<' + '; '.join(str(entry) for entry in self.entries) + '>'


EMPTY = Context()

RawEntry = Union[Entry, Tuple[str, Expression]]


def check_context(raw_entries: Iterable[RawEntry]) -> Context:
    """
    Validate a list of entries, each against the entries before it.

    >>> U = Label('U')
    >>> print(check_context([('U', UNIVERSE), ('e', U)]))
    <U:type; e:U>
    >>> check_context([])
    Context(entries=())
    >>> check_context([('e', U), ('U', UNIVERSE)])
    Traceback (most recent call last):
    ...
    theory_combinators.errors.IllFormedEntryError: ill-formed entry e: unbound label U
    """
    checked: List[Entry] = []
    seen: Dict[str, Expression] = {}
    for raw in raw_entries:
        entry = raw if isinstance(raw, Entry) else Entry(*raw)
        if entry.label in seen:
            raise DuplicateLabelError(entry.label).at(entry.span)
        try:
            check_classifier(seen, entry.classifier)
        except TpcError as cause:
            raise IllFormedEntryError(entry.label, cause).at(entry.span) from cause
        seen[entry.label] = entry.classifier
        checked.append(entry)
    return Context(tuple(checked))


@dataclass(frozen=True)
class Assignment:
    """
    An arrow ``source → target``: one term over ``source`` per target label,
    in target order. Build them with ``check_assignment``.
    """

    source: Context
    target: Context
    mapping: Tuple[Tuple[str, Expression], ...]

    @cached_property
    def _index(self) -> Dict[str, Expression]:
        return dict(self.mapping)

    def __getitem__(self, label: str) -> Expression:
        return self._index[label]

    def as_dict(self) -> Dict[str, Expression]:
        return dict(self.mapping)

    @property
    def dom(self) -> Context:
        return self.source

    @property
    def cod(self) -> Context:
        return self.target

    @property
    def is_nominal(self) -> bool:
        return all(isinstance(term, Label) for _, term in self.mapping)

    def __str__(self) -> str:
        return '[' + ', '.join(
            f'{label} |-> {_render_term(term)}' for label, term in self.mapping) + ']'


def _render_term(term: Expression) -> str:
    if isinstance(term, Label):
        return term.name
    return render(term)


RawMapping = Union[Mapping[str, Assignable], Iterable[Tuple[str, Assignable]]]


def check_assignment(source: Context, target: Context, raw_mapping: RawMapping) -> Assignment:
    """
    Validate an assignment ``source → target``. Each term must have the type
    of its target label, with the labels before it substituted. Forgetting
    that an Abelian semigroup is commutative gives a semigroup:

    >>> semigroup = example_context('semigroup')
    >>> abelian = example_context('abelian semigroup')
    >>> u = check_assignment(abelian, semigroup,
    ...                      {'U': 'U', '*': '+', 'associative': 'associative'})
    >>> print(u)
    [U |-> U, * |-> +, associative |-> associative]

    Every target label is mapped exactly once:

    >>> check_assignment(abelian, semigroup, {'U': 'U', '*': '+'})
    Traceback (most recent call last):
    ...
    theory_combinators.errors.MissingTargetError: assignment does not map associative
    >>> check_assignment(abelian, semigroup, {'U': 'U', '*': '+', 'associative': 'commutative'})
    Traceback (most recent call last):
    ...
    theory_combinators.errors.TypeMismatchError: type mismatch for associative: expected forall x,y,z:U. (x+y)+z = x+(y+z), found forall x,y:U. x+y = y+x
    """
    pairs = raw_mapping.items() if isinstance(raw_mapping, MappingABC) else raw_mapping
    given: Dict[str, Expression] = {}
    for label, term in pairs:
        if label not in target:
            raise ExtraTargetError(label)
        if label in given:
            raise ExtraTargetError(label)
        given[label] = as_expression(term)
    mapping = []
    for entry in target.entries:
        if entry.label not in given:
            raise MissingTargetError(entry.label)
        term = given[entry.label]
        expected = substitute(entry.classifier, dict(mapping))
        actual = infer_term(source, term)
        if not alpha_equal(actual, expected):
            raise TypeMismatchError(entry.label, render(expected), render(actual))
        mapping.append((entry.label, term))
    return Assignment(source, target, tuple(mapping))


def identity(ctx: Context) -> Assignment:
    return Assignment(ctx, ctx, tuple((label, Label(label)) for label in ctx.labels))


def diagonal(source: Context, target: Context) -> Assignment:
    """``δ``, mapping every label of ``target`` to itself; validated."""
    return check_assignment(source, target, {label: label for label in target.labels})


def compose(g: Assignment, f: Assignment) -> Assignment:
    """
    ``g ∘ f``: with ``f : Γ → Δ`` and ``g : Δ → Ξ``, map every label of ``Ξ`` to
    its term under ``g`` with ``f`` substituted.

    >>> semigroup = example_context('semigroup')
    >>> pi = LabelPermutation.from_pairs([('*', '+')])
    >>> there = renaming_arrow(pi, semigroup)
    >>> back = renaming_arrow(pi.inverse(), apply_permutation(pi, semigroup))
    >>> compose(there, back) == identity(semigroup)
    True
    >>> compose(there, identity(semigroup))
    Traceback (most recent call last):
    ...
    theory_combinators.errors.ContextMismatchError: context mismatch: expected <U:type; +:(U,U) -> U; associative:forall x,y,z:U. (x+y)+z = x+(y+z)>, found <U:type; *:(U,U) -> U; associative:forall x,y,z:U. (x*y)*z = x*(y*z)>
    """
    if g.source != f.target:
        raise ContextMismatchError(g.source, f.target)
    terms = f.as_dict()
    return Assignment(
        f.source, g.target,
        tuple((label, substitute(term, terms)) for label, term in g.mapping))


class AssignmentClass(Enum):
    """
    The kinds of assignments, from the most general to the most specific:
    ``DIAGONAL ⊆ EXTENSION ⊆ GENERAL_EXTENSION ⊆ NOMINAL ⊆ GENERAL`` and
    ``RENAMING ⊆ GENERAL_EXTENSION``.
    """

    GENERAL = 'general'
    NOMINAL = 'nominal'
    GENERAL_EXTENSION = 'general extension'
    EXTENSION = 'extension'
    RENAMING = 'renaming'
    DIAGONAL = 'diagonal'

    def __str__(self) -> str:
        return self.value

    @property
    def is_general_extension(self) -> bool:
        return self in _GENERAL_EXTENSIONS

    @property
    def is_extension(self) -> bool:
        return self in (AssignmentClass.EXTENSION, AssignmentClass.DIAGONAL)


_GENERAL_EXTENSIONS = frozenset([
    AssignmentClass.GENERAL_EXTENSION,
    AssignmentClass.EXTENSION,
    AssignmentClass.RENAMING,
    AssignmentClass.DIAGONAL,
])


def classify(a: Assignment) -> AssignmentClass:
    """
    Return the most specific class of a valid assignment. The identity is
    diagonal, and forgetting entries is an extension:

    >>> abelian = example_context('abelian semigroup')
    >>> classify(identity(abelian))
    <AssignmentClass.DIAGONAL: 'diagonal'>
    >>> additive = apply_permutation(LabelPermutation.from_pairs([('*', '+')]),
    ...                              example_context('semigroup'))
    >>> classify(diagonal(abelian, additive))
    <AssignmentClass.EXTENSION: 'extension'>

    An assignment using a label twice is nominal, but not a general extension:

    >>> one = check_context([('U', UNIVERSE)])
    >>> two = check_context([('U', UNIVERSE), ("U'", UNIVERSE)])
    >>> classify(check_assignment(one, two, {'U': 'U', "U'": 'U'}))
    <AssignmentClass.NOMINAL: 'nominal'>
    """
    if not a.is_nominal:
        return AssignmentClass.GENERAL
    images = [term.name for _, term in a.mapping]
    if len(set(images)) != len(images):
        return AssignmentClass.NOMINAL
    if all(label == image for label, image in zip(a.target.labels, images)):
        if a.source == a.target:
            return AssignmentClass.DIAGONAL
        return AssignmentClass.EXTENSION
    if len(a.source) == len(a.target):
        pi = LabelPermutation.complete(dict(zip(a.target.labels, images)))
        if apply_permutation(pi, a.target) == a.source:
            return AssignmentClass.RENAMING
    return AssignmentClass.GENERAL_EXTENSION


def is_sub_context(inner: Context, outer: Context) -> bool:
    """
    Tell whether every entry of ``inner`` occurs in ``outer``, in any order:

    >>> semigroup = example_context('semigroup')
    >>> is_sub_context(semigroup, example_context('monoid'))
    True
    >>> is_sub_context(EMPTY, semigroup), is_sub_context(semigroup, EMPTY)
    (True, False)
    """
    return all(
        entry.label in outer and alpha_equal(entry.classifier, outer[entry.label])
        for entry in inner.entries)


@dataclass(frozen=True)
class LabelPermutation:
    """
    A permutation of labels with finite support, stored as the sorted list of
    the labels it moves.
    """

    moves: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        sources = [source for source, _ in self.moves]
        targets = [target for _, target in self.moves]
        if sorted(sources) != sorted(targets) or len(set(sources)) != len(sources):
            raise NonInjectiveRenamingError(
                next((t for t in targets if targets.count(t) > 1 or t not in sources),
                     sources[0] if sources else ''))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, str]]) -> 'LabelPermutation':
        """
        Extend an injective list of pairs to a permutation; ``a ↦ b`` forces
        ``b ↦ a`` unless ``b`` is itself renamed:

        >>> LabelPermutation.from_pairs([('*', '+'), ('e', '0')]).moves
        (('*', '+'), ('+', '*'), ('0', 'e'), ('e', '0'))
        >>> LabelPermutation.from_pairs([('a', 'b'), ('b', 'c')]).moves
        (('a', 'b'), ('b', 'c'), ('c', 'a'))
        """
        partial: Dict[str, str] = {}
        for source, target in pairs:
            if source in partial:
                raise NonInjectiveRenamingError(source)
            partial[source] = target
        return cls.complete(partial)

    @classmethod
    def complete(cls, partial: Mapping[str, str]) -> 'LabelPermutation':
        partial = {source: target for source, target in partial.items() if source != target}
        images = list(partial.values())
        if len(set(images)) != len(images):
            raise NonInjectiveRenamingError(
                next(target for target in images if images.count(target) > 1))
        moves = dict(partial)
        # Close every open chain a -> ... -> z back onto its start.
        for start in partial:
            if start in partial.values():
                continue
            end = start
            while end in partial:
                end = partial[end]
            moves[end] = start
        return cls(tuple(sorted(moves.items())))

    def __call__(self, label: str) -> str:
        return self._index.get(label, label)

    @cached_property
    def _index(self) -> Dict[str, str]:
        return dict(self.moves)

    @property
    def support(self) -> Tuple[str, ...]:
        return tuple(source for source, _ in self.moves)

    @property
    def is_identity(self) -> bool:
        return not self.moves

    def inverse(self) -> 'LabelPermutation':
        return LabelPermutation(tuple(sorted((t, s) for s, t in self.moves)))

    def as_assignment(self) -> Dict[str, Expression]:
        return {source: Label(target) for source, target in self.moves}

    def __str__(self) -> str:
        return '[' + ', '.join(f'{s} |-> {t}' for s, t in self.moves) + ']'


IDENTITY_PERMUTATION = LabelPermutation()


def apply_permutation(pi: LabelPermutation, ctx: Context) -> Context:
    """``π·Γ``: rename the labels of a context and every reference to them."""
    renaming = pi.as_assignment()
    return Context(tuple(
        Entry(pi(entry.label), substitute(entry.classifier, renaming), entry.span)
        for entry in ctx.entries))


def permute_assignment(pi: LabelPermutation, f: Assignment) -> Assignment:
    """
    ``π·f : π·Γ → π·Δ``, the action of a permutation on an arrow:

    >>> semigroup = example_context('semigroup')
    >>> abelian = example_context('abelian semigroup')
    >>> pi = LabelPermutation.from_pairs([('+', '*')])
    >>> print(permute_assignment(pi, diagonal(abelian, apply_permutation(pi, semigroup))))
    [U |-> U, * |-> *, associative |-> associative]
    """
    renaming = pi.as_assignment()
    return Assignment(
        apply_permutation(pi, f.source),
        apply_permutation(pi, f.target),
        tuple((pi(label), substitute(term, renaming)) for label, term in f.mapping))


def renaming_arrow(pi: LabelPermutation, ctx: Context) -> Assignment:
    """``I_π(Γ) : π·Γ → Γ``, sending each label ``x`` to ``π(x)``."""
    return Assignment(
        apply_permutation(pi, ctx), ctx,
        tuple((label, Label(pi(label))) for label in ctx.labels))


def parse_renaming_spec(pairs: Sequence[Tuple[str, str]], ctx: Context) -> LabelPermutation:
    """
    Turn the pairs of a ``[a |-> b, ...]`` renaming into a permutation, refusing
    to map a label onto one the context already uses:

    >>> semigroup = example_context('semigroup')
    >>> print(parse_renaming_spec([('*', '+')], semigroup))
    [* |-> +, + |-> *]
    >>> parse_renaming_spec([], semigroup).is_identity
    True
    >>> parse_renaming_spec([('*', 'U')], semigroup)
    Traceback (most recent call last):
    ...
    theory_combinators.errors.ClashInContextError: renaming target U already occurs in the context
    """
    sources = {source for source, _ in pairs}
    targets = set()
    for source, target in pairs:
        if target in targets:
            raise NonInjectiveRenamingError(target)
        targets.add(target)
        if source != target and target in ctx and target not in sources:
            raise ClashInContextError(target)
    pi = LabelPermutation.from_pairs(pairs)
    logger.debug('renaming %s on %s', pi, ctx)
    return pi


def example_context(name: str) -> Context:
    """
    Small contexts used across the documentation and the tests: ``semigroup``,
    ``abelian semigroup`` (written additively) and ``monoid``.
    """
    U = Label('U')

    def op(symbol: str) -> Tuple[str, Expression]:
        return symbol, Arrow(Product((U, U)), U)

    def associative(symbol: str) -> Tuple[str, Expression]:
        x, y, z = Label('x'), Label('y'), Label('z')

        def app(a: Expression, b: Expression) -> Expression:
            return Apply(Label(symbol), (a, b))
        return 'associative', forall(
            ['x', 'y', 'z'], U, Equals(app(app(x, y), z), app(x, app(y, z))))

    def identity_law(law: str, symbol: str, unit: str, right: bool) -> Tuple[str, Expression]:
        x = Label('x')
        arguments = (x, Label(unit)) if right else (Label(unit), x)
        return law, forall(['x'], U, Equals(Apply(Label(symbol), arguments), x))

    if name == 'semigroup':
        entries = [('U', UNIVERSE), op('*'), associative('*')]
    elif name == 'abelian semigroup':
        x, y = Label('x'), Label('y')
        commutative = forall(
            ['x', 'y'], U,
            Equals(Apply(Label('+'), (x, y)), Apply(Label('+'), (y, x))))
        entries = [('U', UNIVERSE), op('+'), associative('+'), ('commutative', commutative)]
    elif name == 'monoid':
        entries = [
            ('U', UNIVERSE), op('*'), associative('*'), ('e', U),
            identity_law('rightIdentity', '*', 'e', True),
            identity_law('leftIdentity', '*', 'e', False),
        ]
    else:
        raise KeyError(name)
    return check_context(entries)
