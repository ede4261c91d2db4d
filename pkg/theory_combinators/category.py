"""
General extensions and the Cartesian liftings behind ``combine``.

A general extension is a nominal assignment that uses every source label at
most once. Every general extension splits into an extension followed by a
renaming, and every general extension can be pulled back along any nominal
assignment. This module builds both constructions, together with the
mediating arrows that make the lifting a pullback.

Lifting "forget the identity" along "forget commutativity" gives the Abelian
monoid, once the new unit is named ``0``:

    >>> from theory_combinators.context import check_assignment, diagonal, example_context
    >>> semigroup = example_context('semigroup')
    >>> abelian = example_context('abelian semigroup')
    >>> u = check_assignment(abelian, semigroup,
    ...                      {'U': 'U', '*': '+', 'associative': 'associative'})
    >>> a = GeneralExtension(diagonal(example_context('monoid'), semigroup))
    >>> lift = cartesian_lift(u, a, names={'e': '0'})
    >>> for entry in lift.apex.entries:
    ...     print(entry)
    U:type
    +:(U,U) -> U
    associative:forall x,y,z:U. (x+y)+z = x+(y+z)
    commutative:forall x,y:U. x+y = y+x
    0:U
    rightIdentity:forall x:U. x+0 = x
    leftIdentity:forall x:U. 0+x = x
    >>> print(lift.top)
    [U |-> U, * |-> +, associative |-> associative, e |-> 0, rightIdentity |-> rightIdentity, leftIdentity |-> leftIdentity]
    >>> check_pullback_square(lift.square)
    True
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Set, Tuple, Union

from theory_combinators.context import (
    AssignmentClass,
    Assignment,
    Context,
    Entry,
    LabelPermutation,
    apply_permutation,
    check_assignment,
    check_context,
    classify,
    compose,
    identity,
    renaming_arrow,
)
from theory_combinators.errors import (
    BaseMismatchError,
    ContextMismatchError,
    FreshLabelExhaustionError,
    NotExtensionError,
    NotGeneralExtensionError,
    NotNominalError,
    PropertyViolationError,
    TpcError,
)
from theory_combinators.kernel import Expression, Label, alpha_equal, free_labels, substitute

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneralExtension:
    """An object of 𝔼: an arrow ``dom → cod`` that is a general extension."""

    arrow: Assignment

    def __post_init__(self) -> None:
        kind = classify(self.arrow)
        if not kind.is_general_extension:
            raise NotGeneralExtensionError(self.arrow, kind)

    @property
    def dom(self) -> Context:
        return self.arrow.source

    @property
    def cod(self) -> Context:
        return self.arrow.target

    @property
    def kind(self) -> AssignmentClass:
        return classify(self.arrow)

    def __str__(self) -> str:
        return str(self.arrow)


ArrowLike = Union[Assignment, GeneralExtension]


def as_general_extension(a: ArrowLike) -> GeneralExtension:
    return a if isinstance(a, GeneralExtension) else GeneralExtension(a)


@dataclass(frozen=True)
class ExtSquare:
    """
    An arrow ``left → right`` of 𝔼: a commuting square of nominal assignments

    ::

        left.dom  --top-->    right.dom
           |                     |
          left                 right
           v                     v
        left.cod  --bottom--> right.cod
    """

    top: Assignment
    bottom: Assignment
    left: GeneralExtension
    right: GeneralExtension

    def __post_init__(self) -> None:
        for side in (self.top, self.bottom):
            if not side.is_nominal:
                raise NotNominalError(side)
        if self.top.source != self.left.dom or self.bottom.source != self.left.cod:
            raise ContextMismatchError(self.left.arrow, (self.top, self.bottom))
        if self.top.target != self.right.dom or self.bottom.target != self.right.cod:
            raise ContextMismatchError(self.right.arrow, (self.top, self.bottom))
        if compose(self.right.arrow, self.top) != compose(self.bottom, self.left.arrow):
            raise PropertyViolationError('the square does not commute')

    @property
    def cod(self) -> Assignment:
        """The image of the square under ``cod : 𝔼 → 𝔹``."""
        return self.bottom


def identity_square(a: ArrowLike) -> ExtSquare:
    a = as_general_extension(a)
    return ExtSquare(identity(a.dom), identity(a.cod), a, a)


def compose_squares(g: ExtSquare, f: ExtSquare) -> ExtSquare:
    """``g ∘ f`` in 𝔼, pasting ``f : A → B`` and ``g : B → C`` side by side."""
    if f.right != g.left:
        raise ContextMismatchError(g.left.arrow, f.right.arrow)
    return ExtSquare(compose(g.top, f.top), compose(g.bottom, f.bottom), f.left, g.right)


@dataclass(frozen=True)
class CartesianLift:
    """
    The lifting ``ū(A) : u*(A) → A`` of ``over = A`` along ``along = u``.
    ``lifted`` is ``u*(A) : apex → Γ`` and ``top`` is ``ū(A)⁺ : apex → Δ⁺``.
    """

    apex: Context
    lifted: GeneralExtension
    top: Assignment
    along: Assignment
    over: GeneralExtension

    @property
    def square(self) -> ExtSquare:
        return ExtSquare(self.top, self.along, self.lifted, self.over)


def decompose(a: ArrowLike) -> Tuple[Assignment, Assignment]:
    """
    Split a general extension ``a : Δ⁺ → Δ`` into an extension ``ext`` onto a
    renamed copy of ``Δ`` followed by a renaming ``ren``, so that
    ``compose(ren, ext) == a``:

    >>> from theory_combinators.context import check_assignment, example_context
    >>> semigroup = example_context('semigroup')
    >>> u = check_assignment(example_context('abelian semigroup'), semigroup,
    ...                      {'U': 'U', '*': '+', 'associative': 'associative'})
    >>> ext, ren = decompose(u)
    >>> print(ext.target)
    <U:type; +:(U,U) -> U; associative:forall x,y,z:U. (x+y)+z = x+(y+z)>
    >>> classify(ext), classify(ren)
    (<AssignmentClass.EXTENSION: 'extension'>, <AssignmentClass.RENAMING: 'renaming'>)
    >>> compose(ren, ext) == u
    True
    """
    arrow = as_general_extension(a).arrow
    delta = arrow.target
    pi = LabelPermutation.complete({y: arrow[y].name for y in delta.labels})
    renamed = apply_permutation(pi, delta)
    ext = compose(renaming_arrow(pi.inverse(), renamed), arrow)
    ren = renaming_arrow(pi, delta)
    logger.debug('decomposed %s with %s', arrow, pi)
    return ext, ren


def normalize_initial_segment(a: ArrowLike) -> Tuple[Context, Assignment]:
    """
    Reorder the source of an extension ``a : Γ⁺ → Γ`` so that ``Γ`` comes
    first. Returns the reordered context ``Γ°`` with the isomorphism
    ``Γ° → Γ⁺``.

    >>> from theory_combinators.context import check_context, diagonal, example_context
    >>> from theory_combinators.kernel import Label, UNIVERSE
    >>> swapped = check_context([('U', UNIVERSE), ('e', Label('U')), ('f', Label('U'))])
    >>> small = check_context([('U', UNIVERSE), ('f', Label('U'))])
    >>> reordered, iso = normalize_initial_segment(diagonal(swapped, small))
    >>> print(reordered)
    <U:type; f:U; e:U>
    >>> print(iso)
    [U |-> U, e |-> e, f |-> f]
    """
    arrow = a.arrow if isinstance(a, GeneralExtension) else a
    kind = classify(arrow)
    if not kind.is_extension:
        raise NotExtensionError(arrow, kind)
    base, extended = arrow.target, arrow.source
    prefix = [extended.entry(label) for label in base.labels]
    rest = [entry for entry in extended.entries if entry.label not in base]
    reordered = check_context(prefix + rest)
    iso = Assignment(
        reordered, extended, tuple((label, Label(label)) for label in extended.labels))
    return reordered, iso


def cartesian_lift(u: Assignment, a: ArrowLike,
                   names: Optional[Mapping[str, str]] = None) -> CartesianLift:
    """
    Pull the general extension ``a : Δ⁺ → Δ`` back along the nominal
    assignment ``u : Γ → Δ``. The apex is ``Γ`` followed by the entries ``a``
    adds, with ``u`` substituted in their classifiers.

    The labels of the new entries are kept when they are free in ``Γ``;
    otherwise they get primes. ``names`` picks other labels for them, which
    is how a user chooses among the isomorphic liftings. Lifting the unique
    extension ``⟨U:type⟩ → ⟨⟩`` over itself:

    >>> from theory_combinators.context import EMPTY, check_assignment, check_context
    >>> from theory_combinators.kernel import UNIVERSE
    >>> point = check_context([('U', UNIVERSE)])
    >>> bang = check_assignment(point, EMPTY, {})
    >>> lift = cartesian_lift(bang, bang)
    >>> print(lift.apex)
    <U:type; U':type>
    >>> print(lift.top)
    [U |-> U']
    """
    if not u.is_nominal:
        raise NotNominalError(u)
    a = as_general_extension(a)
    if a.cod != u.target:
        raise BaseMismatchError(
            f'cannot lift {a} along {u}: {a.cod} is not {u.target}')
    names = names or {}
    ext, ren = decompose(a)
    reordered, _ = normalize_initial_segment(ext)
    back = Assignment(
        ren.target, ren.source,
        tuple((term.name, Label(label)) for label, term in ren.mapping))
    shifted = compose(back, u)

    gamma = u.source
    taken: Set[str] = set(gamma.labels)
    avoid: Set[str] = taken | set(a.dom.labels)
    renaming: Dict[str, Expression] = dict(shifted.mapping)
    tail: List[Entry] = []
    for entry in reordered.entries[len(ext.target):]:
        fresh = _fresh_label(entry.label, names.get(entry.label, entry.label), taken, avoid)
        taken.add(fresh)
        avoid.add(fresh)
        renaming[entry.label] = Label(fresh)
        tail.append(Entry(fresh, substitute(entry.classifier, renaming), entry.span))

    apex = check_context(gamma.entries + tuple(tail))
    lifted = GeneralExtension(
        Assignment(apex, gamma, tuple((label, Label(label)) for label in gamma.labels)))
    top = Assignment(apex, a.dom, tuple((label, renaming[label]) for label in a.dom.labels))
    logger.debug('lifted %s along %s: %s', a, u, apex)
    return CartesianLift(apex, lifted, top, u, a)


def _fresh_label(label: str, preferred: str, taken: Set[str], avoid: Set[str]) -> str:
    if preferred not in taken:
        return preferred
    candidate = preferred
    for _ in range(len(avoid) + 1):
        candidate += "'"
        if candidate not in avoid:
            return candidate
    raise FreshLabelExhaustionError(label)


def mediating_arrow(lift: CartesianLift, x: ArrowLike, g: ExtSquare,
                    v: Assignment) -> Assignment:
    """
    The top ``v⁺ : Ξ⁺ → apex`` of the unique arrow ``x → u*(A)`` over ``v``,
    given a square ``g : x → A`` with ``cod(g) = u ∘ v``. It need not be a
    general extension: lifting ``⟨U:type⟩ → ⟨⟩`` over itself and mediating
    the identity square gives ``[U |-> U, U' |-> U]``.

    >>> from theory_combinators.context import EMPTY, check_assignment, check_context
    >>> from theory_combinators.kernel import UNIVERSE
    >>> point = check_context([('U', UNIVERSE)])
    >>> bang = GeneralExtension(check_assignment(point, EMPTY, {}))
    >>> lift = cartesian_lift(bang.arrow, bang)
    >>> x = GeneralExtension(identity(point))
    >>> g = ExtSquare(identity(point), bang.arrow, x, bang)
    >>> f = mediating_arrow(lift, x, g, identity(point))
    >>> print(f)
    [U |-> U, U' |-> U]
    >>> classify(f)
    <AssignmentClass.NOMINAL: 'nominal'>
    """
    x = as_general_extension(x)
    if g.left != x:
        raise PropertyViolationError(f'the square does not start at {x}')
    if g.right != lift.over:
        raise PropertyViolationError(f'the square does not end at {lift.over}')
    if compose(lift.along, v) != g.bottom:
        raise PropertyViolationError(f'{lift.along} after {v} is not {g.bottom}')
    through = compose(v, x.arrow)
    base = set(lift.lifted.cod.labels)
    origin = {
        term.name: label for label, term in lift.top.mapping
        if isinstance(term, Label) and term.name not in base
    }
    mapping = {
        label: through[label] if label in base else g.top[origin[label]]
        for label in lift.apex.labels
    }
    return check_assignment(x.dom, lift.apex, mapping)


def meet_context(a: Context, b: Context) -> Context:
    """
    The greatest context contained in both ``a`` and ``b``, in the order of
    ``a``: the shared entries whose classifiers only refer to shared labels.

    >>> from theory_combinators.context import LabelPermutation, apply_permutation, example_context
    >>> semigroup = example_context('semigroup')
    >>> additive = apply_permutation(LabelPermutation.from_pairs([('*', '+')]), semigroup)
    >>> print(meet_context(semigroup, additive))
    <U:type>
    >>> meet_context(semigroup, example_context('monoid')) == semigroup
    True
    """
    kept: List[Entry] = []
    shared: Set[str] = set()
    for entry in a.entries:
        if (entry.label in b and alpha_equal(entry.classifier, b[entry.label])
                and free_labels(entry.classifier) <= shared):
            kept.append(entry)
            shared.add(entry.label)
    return Context(tuple(kept))


def check_pullback_square(sq: ExtSquare) -> bool:
    """
    Tell whether a commuting square is a pullback in 𝔹. The canonical
    lifting of ``sq.right`` along ``sq.bottom`` is rebuilt, and the square
    must be isomorphic to it over the cospan. The identity square of
    ``⟨U:type⟩ → ⟨⟩`` commutes but misses the second copy of ``U``:

    >>> from theory_combinators.context import EMPTY, check_assignment, check_context
    >>> from theory_combinators.kernel import UNIVERSE
    >>> point = check_context([('U', UNIVERSE)])
    >>> bang = GeneralExtension(check_assignment(point, EMPTY, {}))
    >>> check_pullback_square(identity_square(bang))
    True
    >>> x = GeneralExtension(identity(point))
    >>> check_pullback_square(ExtSquare(identity(point), bang.arrow, x, bang))
    False
    """
    try:
        canonical = cartesian_lift(sq.bottom, sq.right)
        phi = mediating_arrow(canonical, sq.left, sq, identity(sq.left.cod))
    except TpcError as error:
        logger.debug('no mediating arrow into the canonical lifting: %s', error)
        return False
    images = [term.name for _, term in phi.mapping if isinstance(term, Label)]
    if len(images) != len(phi.mapping) or len(set(images)) != len(images) \
            or len(sq.left.dom) != len(canonical.apex):
        logger.debug('%s is not a bijection', phi)
        return False
    try:
        check_assignment(
            canonical.apex, sq.left.dom,
            {image: Label(label) for label, image in zip(canonical.apex.labels, images)})
    except TpcError as error:
        logger.debug('%s has no inverse: %s', phi, error)
        return False
    return (compose(canonical.lifted.arrow, phi) == sq.left.arrow
            and compose(canonical.top, phi) == sq.top)
