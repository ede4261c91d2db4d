"""
Evaluation of ``.tpc`` libraries.

Every definition gets two meanings: a context, the theory it presents, and
a general extension ``dom → cod``, the way it was built on top of its base.
``TheoryEnv`` evaluates definitions in order and keeps both:

    >>> env, errors = load_library('''
    ... Semigroup := Theory {
    ...   U:type; *:(U,U) -> U;
    ...   axiom associative_*: forall x,y,z:U. (x*y)*z = x*(y*z) }
    ... Monoid := Semigroup extended by {
    ...   e:U;
    ...   axiom rightIdentity_*_e: forall x:U. x*e = x;
    ...   axiom leftIdentity_*_e: forall x:U. e*x = x }
    ... ''')
    >>> errors
    []
    >>> print(env['Monoid'].extension.cod)
    <U:type; *:(U,U) -> U; associative_*:forall x,y,z:U. (x*y)*z = x*(y*z)>
    >>> print(flatten('Monoid', env))
    Monoid := Theory {
      U:type;
      *:(U,U) -> U;
      axiom associative_*: forall x,y,z:U. (x*y)*z = x*(y*z);
      e:U;
      axiom rightIdentity_*_e: forall x:U. x*e = x;
      axiom leftIdentity_*_e: forall x:U. e*x = x
    }
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Set, Tuple

from theory_combinators.category import (
    CartesianLift,
    GeneralExtension,
    cartesian_lift,
    check_pullback_square,
    meet_context,
)
from theory_combinators.context import (
    EMPTY,
    Assignment,
    AssignmentClass,
    Context,
    Entry,
    LabelPermutation,
    apply_permutation,
    check_assignment,
    check_context,
    classify,
    compose,
    diagonal,
    identity,
    is_sub_context,
    parse_renaming_spec,
    permute_assignment,
    renaming_arrow,
)
from theory_combinators.errors import (
    BaseMismatchError,
    CombineBranchesDisagreeError,
    CombineClashError,
    CompositionMismatchError,
    DuplicateDefinitionError,
    IllFormedEntryError,
    IllFormedExtensionError,
    NotAPullbackError,
    RenamingDisturbsBaseError,
    SortMismatchError,
    TpcError,
    UnboundLabelError,
    UnknownNameError,
)
from theory_combinators.kernel import Sort
from theory_combinators.parser import parse_tpc
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
    TpcTerm,
    references,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TheorySemantics:
    """The two meanings of a definition."""

    context: Context
    extension: GeneralExtension

    @property
    def compatible(self) -> bool:
        return self.context == self.extension.dom


class TheoryEnv:
    """
    The definitions of a library, in order. A name can only be used after
    its definition, so the environment is acyclic by construction:

    >>> env = TheoryEnv()
    >>> [a, b] = parse_tpc('A := Empty  B := A extended by { U:type }')
    >>> env.define(b)
    Traceback (most recent call last):
    ...
    theory_combinators.errors.UnknownNameError: unknown theory A
    >>> print(env.define(a).context)
    <>
    >>> print(env.define(b).context)
    <U:type>
    >>> list(env)
    ['A', 'B']
    """

    def __init__(self) -> None:
        self._definitions: 'OrderedDict[str, Tuple[Definition, TheorySemantics]]' = OrderedDict()
        #: names whose definitions failed, or were skipped because they use one
        self.failed: Set[str] = set()

    def define(self, definition: Definition) -> TheorySemantics:
        if definition.name in self._definitions:
            raise DuplicateDefinitionError(definition.name).at(definition.span)
        logger.debug('evaluating %s', definition.name)
        semantics = evaluate(definition.term, self)
        self._definitions[definition.name] = (definition, semantics)
        return semantics

    def __getitem__(self, name: str) -> TheorySemantics:
        try:
            return self._definitions[name][1]
        except KeyError:
            raise UnknownNameError(name) from None

    def __contains__(self, name: object) -> bool:
        return name in self._definitions

    def __iter__(self) -> Iterator[str]:
        return iter(self._definitions)

    def __len__(self) -> int:
        return len(self._definitions)

    def definition(self, name: str) -> Definition:
        try:
            return self._definitions[name][0]
        except KeyError:
            raise UnknownNameError(name) from None

    def names(self) -> List[str]:
        return list(self._definitions)


def evaluate(term: TpcTerm, env: TheoryEnv) -> TheorySemantics:
    """Both meanings of a term; the term is rejected if either one fails."""
    return TheorySemantics(eval_context(term, env), eval_extension(term, env))


def _entries(body: Tuple[Judgment, ...]) -> Tuple[Entry, ...]:
    return tuple(Entry(j.label, j.classifier, j.span) for j in body)


def _extend(base: Context, body: Tuple[Judgment, ...]) -> Context:
    try:
        return check_context(base.entries + _entries(body))
    except TpcError as cause:
        label = getattr(cause, 'label', '')
        raise IllFormedExtensionError(label, cause).at(cause.span) from cause


def _check_axioms(ctx: Context, body: Tuple[Judgment, ...]) -> Context:
    """Only propositions may be marked ``axiom``."""
    for judgment in body:
        if judgment.axiom:
            sort = ctx.sort_of(judgment.label)
            if sort is not Sort.PROP:
                cause = SortMismatchError(Sort.PROP, sort, judgment.label)
                raise IllFormedEntryError(judgment.label, cause).at(judgment.span)
    return ctx


def renaming_permutation(renaming: Renaming, ctx: Context) -> LabelPermutation:
    """
    The permutation a ``[a |-> b, ...]`` renaming denotes on ``ctx``. Every
    renamed label must occur in ``ctx``.
    """
    for source, _ in renaming.pairs:
        if source not in ctx:
            raise UnboundLabelError(source).at(renaming.span)
    try:
        return parse_renaming_spec(renaming.pairs, ctx)
    except TpcError as error:
        raise error.at(renaming.span)


def _fix_base(pi: LabelPermutation, base: Context, renaming: Renaming) -> None:
    for label in base.labels:
        if pi(label) != label:
            raise RenamingDisturbsBaseError(label).at(renaming.span)


@dataclass(frozen=True)
class CombinePullback:
    """
    The pieces of ``combine A₁ r₁, A₂ r₂``: the base, both renamed branches
    and the Cartesian lifting whose apex is the combined theory.
    """

    base: Context
    permutations: Tuple[LabelPermutation, LabelPermutation]
    branches: Tuple[Context, Context]
    lift: CartesianLift

    @property
    def apex(self) -> Context:
        return self.lift.apex

    def legs(self, originals: Tuple[Context, Context]) -> Tuple[Assignment, Assignment]:
        """The arrows from the apex back to the un-renamed branches."""
        return tuple(
            compose(renaming_arrow(pi, original), diagonal(self.apex, branch))
            for pi, original, branch in zip(self.permutations, originals, self.branches))


def combine_contexts(term: Combine, env: TheoryEnv) -> CombinePullback:
    """
    Combine two theories over their common part, or over ``term.over`` when
    given. Both renamings must leave the base alone, and the branches may
    not add the same label twice.
    """
    left, right = env[term.left].context, env[term.right].context
    if term.over is not None:
        base = env[term.over].context
        for name, branch in ((term.left, left), (term.right, right)):
            if not is_sub_context(base, branch):
                raise BaseMismatchError(f'{term.over} is not contained in {name}').at(term.span)
    else:
        base = meet_context(left, right)
    permutations = (
        renaming_permutation(term.left_renaming, left),
        renaming_permutation(term.right_renaming, right),
    )
    for pi, renaming in zip(permutations, (term.left_renaming, term.right_renaming)):
        _fix_base(pi, base, renaming)
    first, second = (apply_permutation(pi, ctx) for pi, ctx in zip(permutations, (left, right)))
    for label in second.labels:
        if label not in base and label in first:
            raise CombineClashError(label).at(term.span)
    lift = cartesian_lift(
        diagonal(first, base), GeneralExtension(diagonal(second, base)))
    if not check_pullback_square(lift.square):
        raise NotAPullbackError(f'{lift.apex} over {base}').at(term.span)
    logger.debug('combined %s and %s over %s', term.left, term.right, base)
    return CombinePullback(base, permutations, (first, second), lift)


def eval_context(term: TpcTerm, env: TheoryEnv) -> Context:
    """
    ``⟦term⟧`` as a context. A renaming renames every occurrence of a label:

    >>> env, _ = load_library('''
    ... M := Theory { U:type; *:(U,U) -> U; e:U; axiom unit_*_e: forall x:U. x*e = x }
    ... ''')
    >>> [a] = parse_tpc('A := M[* |-> +, e |-> 0, unit_*_e |-> unit_+_0]')
    >>> print(eval_context(a.term, env))
    <U:type; +:(U,U) -> U; 0:U; unit_+_0:forall x:U. x+0 = x>
    >>> print(eval_context(Seq('M', 'M'), env) == env['M'].context)
    True
    """
    try:
        if isinstance(term, Empty):
            return EMPTY
        if isinstance(term, TheoryLiteral):
            return _check_axioms(check_context(_entries(term.body)), term.body)
        if isinstance(term, ExtendBy):
            return _check_axioms(_extend(env[term.base].context, term.body), term.body)
        if isinstance(term, Rename):
            ctx = env[term.base].context
            return apply_permutation(renaming_permutation(term.renaming, ctx), ctx)
        if isinstance(term, Seq):
            env[term.first]  # must be defined
            return env[term.second].context
        if isinstance(term, Combine):
            return combine_contexts(term, env).apex
    except TpcError as error:
        raise error.at(term.span)
    raise TypeError(f'not a tpc term: {term!r}')


def eval_extension(term: TpcTerm, env: TheoryEnv) -> GeneralExtension:
    """
    ``⟦term⟧`` as a general extension. A theory literal extends the empty
    theory, and ``A ; B`` follows ``⟦A⟧`` by ``⟦B⟧``:

    >>> env, _ = load_library('''
    ... Pointed := Theory { U:type; e:U }
    ... Set := Theory { U:type }
    ... Forget := extend Set by { e:U }
    ... ''')
    >>> print(eval_extension(TheoryLiteral(), env))
    []
    >>> forget_all = eval_extension(Seq('Forget', 'Set'), env)
    >>> print(forget_all.dom, forget_all.cod)
    <U:type; e:U> <>
    >>> eval_extension(Seq('Set', 'Forget'), env)
    Traceback (most recent call last):
    ...
    theory_combinators.errors.CompositionMismatchError: cannot follow Set by Forget: <> is not <U:type; e:U>
    """
    try:
        if isinstance(term, Empty):
            return GeneralExtension(identity(EMPTY))
        if isinstance(term, TheoryLiteral):
            return GeneralExtension(check_assignment(eval_context(term, env), EMPTY, {}))
        if isinstance(term, ExtendBy):
            return GeneralExtension(diagonal(eval_context(term, env), env[term.base].context))
        if isinstance(term, Rename):
            arrow = env[term.base].extension.arrow
            pi = renaming_permutation(term.renaming, arrow.source)
            return GeneralExtension(permute_assignment(pi, arrow))
        if isinstance(term, Seq):
            first, second = env[term.first].extension, env[term.second].extension
            if first.cod != second.dom:
                raise CompositionMismatchError(
                    f'cannot follow {term.first} by {term.second}: '
                    f'{first.cod} is not {second.dom}')
            return GeneralExtension(compose(second.arrow, first.arrow))
        if isinstance(term, Combine):
            return _combine_extensions(term, env)
    except TpcError as error:
        raise error.at(term.span)
    raise TypeError(f'not a tpc term: {term!r}')


def _combine_extensions(term: Combine, env: TheoryEnv) -> GeneralExtension:
    arrows = (env[term.left].extension.arrow, env[term.right].extension.arrow)
    base = env[term.over].context if term.over is not None else arrows[0].target
    for name, arrow in zip((term.left, term.right), arrows):
        if arrow.target != base:
            raise BaseMismatchError(f'{name} does not extend {base}: {arrow.target}')
    renamed = []
    for arrow, renaming in zip(arrows, (term.left_renaming, term.right_renaming)):
        pi = renaming_permutation(renaming, arrow.source)
        _fix_base(pi, base, renaming)
        renamed.append(compose(arrow, renaming_arrow(pi, arrow.source)))
    first, second = renamed
    images = {term_.name for _, term_ in second.mapping}
    for label in second.source.labels:
        if label not in images and label in first.source:
            raise CombineClashError(label)
    lift = cartesian_lift(first, GeneralExtension(second))
    through_first = compose(first, lift.lifted.arrow)
    through_second = compose(second, lift.top)
    if through_first != through_second:
        raise CombineBranchesDisagreeError(
            f'{through_first} and {through_second} differ on {lift.apex}')
    if not check_pullback_square(lift.square):
        raise NotAPullbackError(f'{lift.apex} over {base}')
    return GeneralExtension(through_first)


class Compatibility(Enum):
    COMPATIBLE = 'compatible'
    BENIGN = 'benign'
    INCOMPATIBLE = 'incompatible'
    VIOLATION = 'violation'

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CompatibilityReport:
    """
    Whether the two meanings of a definition agree. ``hypotheses`` are the
    conditions under which they are known to agree, each with whether it
    holds. Agreement without the hypotheses is benign; disagreement despite
    them is a violation.
    """

    name: str
    hypotheses: Tuple[Tuple[str, bool], ...]
    agree: bool
    context: Context = field(compare=False, default=EMPTY)
    domain: Context = field(compare=False, default=EMPTY)

    @property
    def hypotheses_hold(self) -> bool:
        return all(holds for _, holds in self.hypotheses)

    @property
    def status(self) -> Compatibility:
        if self.hypotheses_hold:
            return Compatibility.COMPATIBLE if self.agree else Compatibility.VIOLATION
        return Compatibility.BENIGN if self.agree else Compatibility.INCOMPATIBLE

    def __str__(self) -> str:
        failed = [text for text, holds in self.hypotheses if not holds]
        suffix = f" ({'; '.join(failed)} does not hold)" if failed else ''
        return f'{self.name}: {self.status}{suffix}'


def check_compatibility(term: TpcTerm, env: TheoryEnv, name: str = '') -> CompatibilityReport:
    """
    Compare ``⟦term⟧`` with the domain of its general extension. They agree
    on every form but ``combine`` and ``;``, where they only agree on pure
    extensions over the natural base and on identities. The hypothesis for
    ``A ; B`` is conservative: ``⟦A⟧`` must be an identity, although the
    meanings also agree whenever ``dom ⟦A⟧`` happens to equal ``⟦B⟧``, and
    such sequences are reported as benign rather than compatible:

    >>> env, _ = load_library('''
    ... Set := Theory { U:type }
    ... Pointed := Set extended by { e:U }
    ... Twice := Pointed ; Set
    ... ''')
    >>> print(check_compatibility(env.definition('Pointed').term, env, 'Pointed'))
    Pointed: compatible
    >>> print(check_compatibility(env.definition('Twice').term, env, 'Twice'))
    Twice: incompatible (Pointed is an identity does not hold)
    >>> print(check_compatibility(Empty(), env, 'Nothing'))
    Nothing: compatible
    """
    semantics = evaluate(term, env)
    hypotheses: List[Tuple[str, bool]] = [
        (f'{ref} is compatible', env[ref].compatible) for ref in dict.fromkeys(references(term))
    ]
    if isinstance(term, Seq):
        kind = classify(env[term.first].extension.arrow)
        hypotheses.append((f'{term.first} is an identity', kind is AssignmentClass.DIAGONAL))
    elif isinstance(term, Combine):
        left, right = env[term.left], env[term.right]
        natural = meet_context(left.context, right.context)
        if term.over is not None:
            natural = env[term.over].context
        hypotheses.append((
            'both branches extend '
            + (term.over if term.over is not None else 'their common part'),
            left.extension.cod == natural and right.extension.cod == natural))
        for ref, renaming in ((term.left, term.left_renaming), (term.right, term.right_renaming)):
            pure = env[ref].extension.kind.is_extension and all(a == b for a, b in renaming.pairs)
            subject = f'{ref} {renaming}' if renaming.pairs else ref
            hypotheses.append((f'{subject} involves no renaming', pure))
    report = CompatibilityReport(
        name, tuple(hypotheses), semantics.compatible,
        semantics.context, semantics.extension.dom)
    logger.debug('%s', report)
    return report


def flatten(name: str, env: TheoryEnv, base: bool = False) -> str:
    """
    Print a theory as a single ``Theory { ... }`` literal, declarations as
    ``label:classifier`` and propositions as axioms. ``base`` prints the
    theory the definition builds on instead:

    >>> env, _ = load_library('Nothing := Empty  Point := Theory { U:type }')
    >>> print(flatten('Nothing', env))
    Nothing := Theory { }
    >>> print(flatten('Point', env, base=True))
    Point := Theory { }
    """
    extension = env[name].extension
    return flatten_context(name, extension.cod if base else extension.dom)


def flatten_context(name: str, ctx: Context) -> str:
    if not ctx.entries:
        return f'{name} := Theory {{ }}'
    lines = []
    for entry in ctx.entries:
        if ctx.sort_of(entry.label) is Sort.PROP:
            lines.append(f'  axiom {entry.label}: {entry.classifier}')
        else:
            lines.append(f'  {entry}')
    return f'{name} := Theory {{\n' + ';\n'.join(lines) + '\n}'


def load_library(text: str, filename: str = '<string>') -> Tuple[TheoryEnv, List[TpcError]]:
    """
    Parse and evaluate a library, collecting one error per failing
    definition. Definitions that use a failed one are skipped silently:

    >>> env, errors = load_library('''
    ... B := A extended by { e:U }
    ... C := B ; B
    ... A := Theory { U:type }
    ... ''', 'forward.tpc')
    >>> [f'{error.span}: {error}' for error in errors]
    ['forward.tpc:2:6: unknown theory A']
    >>> list(env)
    ['A']
    """
    env = TheoryEnv()
    try:
        definitions = parse_tpc(text, filename)
    except TpcError as error:
        return env, [error]
    errors: List[TpcError] = []
    for definition in definitions:
        if env.failed.intersection(references(definition.term)):
            logger.debug('skipping %s', definition.name)
            env.failed.add(definition.name)
            continue
        try:
            env.define(definition)
        except TpcError as error:
            errors.append(error.at(definition.span))
            if definition.name not in env:
                env.failed.add(definition.name)
    return env, errors


def branch_legs(term: Combine, env: TheoryEnv) -> Dict[str, Assignment]:
    """
    The arrows from a combined theory to the theories it combines, keyed by
    ``left``, ``right`` and, with ``over``, ``over``.
    """
    pullback = combine_contexts(term, env)
    originals = (env[term.left].context, env[term.right].context)
    left, right = pullback.legs(originals)
    legs = {'left': left, 'right': right}
    if term.over is not None:
        legs['over'] = diagonal(pullback.apex, pullback.base)
    return legs


def structural_arrows(name: str, env: TheoryEnv) -> List[Tuple[str, Assignment]]:
    """
    The arrows from a defined theory to the theories its definition uses,
    pointing from the bigger theory to the smaller one.
    """
    term = env.definition(name).term
    ctx = env[name].context
    if isinstance(term, ExtendBy):
        return [(term.base, diagonal(ctx, env[term.base].context))]
    if isinstance(term, Rename):
        base = env[term.base].context
        return [(term.base, renaming_arrow(renaming_permutation(term.renaming, base), base))]
    if isinstance(term, Seq):
        return [(term.second, identity(ctx))]
    if isinstance(term, Combine):
        legs = branch_legs(term, env)
        arrows = [(term.left, legs['left']), (term.right, legs['right'])]
        if term.over is not None:
            arrows.append((term.over, legs['over']))
        return arrows
    return []


def diagnostics(errors: List[TpcError]) -> Iterator[str]:
    """``file:line:col: error: message`` lines, in the order of the errors."""
    for error in errors:
        where = f'{error.span}: ' if error.span is not None else ''
        yield f'{where}error: {error}'
