"""
Bounded enumeration over a small signature: two types ``A`` and ``B`` and two
constants ``c`` and ``d`` of type ``A``. Every well-formed context over these
entries is built, together with every nominal assignment between them.
"""

import itertools
import random
import unittest
from functools import lru_cache
from typing import Dict, List, Tuple

from theory_combinators.category import (
    ExtSquare,
    GeneralExtension,
    cartesian_lift,
    check_pullback_square,
    decompose,
    mediating_arrow,
    meet_context,
)
from theory_combinators.context import (
    AssignmentClass,
    Assignment,
    Context,
    LabelPermutation,
    apply_permutation,
    check_assignment,
    check_context,
    classify,
    compose,
    identity,
    is_sub_context,
    renaming_arrow,
)
from theory_combinators.errors import TpcError
from theory_combinators.kernel import (
    UNIVERSE,
    Equals,
    Expression,
    Label,
    Not,
    alpha_equal,
    as_expression,
    forall,
    substitute,
)

POOL = (('A', UNIVERSE), ('B', UNIVERSE), ('c', Label('A')), ('d', Label('A')))


@lru_cache(maxsize=None)
def contexts(size: int) -> Tuple[Context, ...]:
    """Every well-formed context of at most ``size`` pool entries."""
    found = []
    for length in range(size + 1):
        for entries in itertools.permutations(POOL, length):
            try:
                found.append(check_context(entries))
            except TpcError:
                pass
    return tuple(found)


@lru_cache(maxsize=None)
def nominal_arrows(source: Context, target: Context) -> Tuple[Assignment, ...]:
    found = []
    for images in itertools.product(source.labels, repeat=len(target)):
        try:
            found.append(check_assignment(source, target, zip(target.labels, images)))
        except TpcError:
            pass
    return tuple(found)


@lru_cache(maxsize=None)
def general_extensions(size: int) -> Tuple[Assignment, ...]:
    found = []
    for source in contexts(size):
        for target in contexts(size):
            if len(target) > len(source):
                continue
            for images in itertools.permutations(source.labels, len(target)):
                try:
                    found.append(check_assignment(source, target, zip(target.labels, images)))
                except TpcError:
                    pass
    return tuple(found)


def all_arrows(size: int) -> List[Assignment]:
    return [a for source in contexts(size) for target in contexts(size)
            for a in nominal_arrows(source, target)]


class SignatureTests(unittest.TestCase):
    def test_contexts(self) -> None:
        self.assertEqual(len(contexts(3)), 15)
        self.assertEqual(len(contexts(4)), 23)

    def test_every_context_is_well_formed(self) -> None:
        for ctx in contexts(4):
            self.assertEqual(check_context(ctx.entries), ctx)


class CategoryLawTests(unittest.TestCase):
    def test_identities_are_neutral(self) -> None:
        for f in all_arrows(3):
            self.assertEqual(compose(identity(f.target), f), f)
            self.assertEqual(compose(f, identity(f.source)), f)

    def test_composition_of_nominal_arrows_composes_indexing_functions(self) -> None:
        for f in all_arrows(3):
            for middle in contexts(3):
                for g in nominal_arrows(f.target, middle):
                    composite = compose(g, f)
                    direct = {z: f[term.name] for z, term in g.mapping}
                    self.assertEqual(composite.as_dict(), direct)
                    self.assertEqual(
                        check_assignment(composite.source, composite.target, composite.mapping),
                        composite)

    def test_composition_is_associative(self) -> None:
        small = contexts(2)
        for f in all_arrows(2):
            for g in (g for middle in small for g in nominal_arrows(f.target, middle)):
                for h in (h for last in small for h in nominal_arrows(g.target, last)):
                    self.assertEqual(compose(h, compose(g, f)), compose(compose(h, g), f))

    def test_composition_is_associative_on_sampled_chains(self) -> None:
        rng = random.Random(1729)
        arrows = all_arrows(3)
        outgoing: Dict[Context, List[Assignment]] = {}
        for a in arrows:
            outgoing.setdefault(a.source, []).append(a)
        checked = 0
        while checked < 2000:
            f = rng.choice(arrows)
            g_candidates = outgoing.get(f.target, [])
            if not g_candidates:
                continue
            g = rng.choice(g_candidates)
            h_candidates = outgoing.get(g.target, [])
            if not h_candidates:
                continue
            h = rng.choice(h_candidates)
            self.assertEqual(compose(h, compose(g, f)), compose(compose(h, g), f))
            checked += 1

    def test_general_extensions_are_closed_under_composition(self) -> None:
        for f in all_arrows(3):
            if not classify(f).is_general_extension:
                continue
            for middle in contexts(3):
                for g in nominal_arrows(f.target, middle):
                    if classify(g).is_general_extension:
                        self.assertTrue(classify(compose(g, f)).is_general_extension)

    def test_renamings_are_invertible(self) -> None:
        renamings = [a for a in all_arrows(3) if classify(a) is AssignmentClass.RENAMING]
        self.assertTrue(renamings)
        for a in renamings:
            pi = LabelPermutation.complete({label: term.name for label, term in a.mapping})
            self.assertEqual(apply_permutation(pi, a.target), a.source)
            inverse = renaming_arrow(pi.inverse(), a.source)
            self.assertEqual(compose(a, inverse), identity(a.target))
            self.assertEqual(compose(inverse, a), identity(a.source))

    def test_extensions_exist_exactly_for_sub_contexts(self) -> None:
        for source in contexts(3):
            for target in contexts(3):
                extensions = [a for a in nominal_arrows(source, target)
                              if classify(a).is_extension]
                with self.subTest(source=str(source), target=str(target)):
                    self.assertEqual(len(extensions), int(is_sub_context(target, source)))


class DecompositionTests(unittest.TestCase):
    def test_every_general_extension_splits(self) -> None:
        arrows = general_extensions(4)
        self.assertGreater(len(arrows), 100)
        for a in arrows:
            ext, ren = decompose(a)
            self.assertEqual(compose(ren, ext), a)
            self.assertTrue(classify(ext).is_extension)
            self.assertIn(classify(ren), (AssignmentClass.RENAMING, AssignmentClass.DIAGONAL))
            self.assertEqual(check_assignment(ext.source, ext.target, ext.mapping), ext)


class PullbackTests(unittest.TestCase):
    def setUp(self) -> None:
        rng = random.Random(2018)
        extensions = [GeneralExtension(a) for a in general_extensions(3)]
        self.cospans: List[Tuple[Assignment, GeneralExtension]] = []
        while len(self.cospans) < 24:
            a = rng.choice(extensions)
            incoming = [u for source in contexts(3) for u in nominal_arrows(source, a.cod)]
            if incoming:
                self.cospans.append((rng.choice(incoming), a))
        self.competitors = [GeneralExtension(a) for a in general_extensions(2)]

    def test_lifts_are_pullbacks(self) -> None:
        for u, a in self.cospans:
            lift = cartesian_lift(u, a)
            self.assertTrue(check_pullback_square(lift.square), f'{u} and {a}')
            self.assertEqual(lift.lifted.cod, u.source)
            self.assertTrue(lift.lifted.kind.is_extension)

    def test_lifting_a_general_extension_gives_a_general_extension(self) -> None:
        for u, a in self.cospans:
            if classify(u).is_general_extension:
                self.assertTrue(classify(cartesian_lift(u, a).top).is_general_extension)

    def test_mediating_arrows_exist_and_are_unique(self) -> None:
        squares = 0
        for u, a in self.cospans:
            lift = cartesian_lift(u, a)
            own = mediating_arrow(lift, lift.lifted, lift.square, identity(u.source))
            self.assertEqual(own, identity(lift.apex))
            for x in self.competitors:
                for v in nominal_arrows(x.cod, u.source):
                    bottom = compose(u, v)
                    for top in nominal_arrows(x.dom, a.dom):
                        if compose(a.arrow, top) != compose(bottom, x.arrow):
                            continue
                        square = ExtSquare(top, bottom, x, a)
                        self._check_universal_property(lift, x, square, v)
                        squares += 1
        self.assertTrue(squares)

    def _check_universal_property(self, lift, x: GeneralExtension, square: ExtSquare,
                                  v: Assignment) -> None:
        m = mediating_arrow(lift, x, square, v)
        self.assertEqual(compose(lift.lifted.arrow, m), compose(v, x.arrow))
        self.assertEqual(compose(lift.top, m), square.top)

        expected_base = compose(v, x.arrow).as_dict()
        solutions = []
        for images in itertools.product(x.dom.labels, repeat=len(lift.apex)):
            candidate = dict(zip(lift.apex.labels, images))
            if any(Label(candidate[label]) != term for label, term in expected_base.items()):
                continue
            if all(Label(candidate[term.name]) == square.top[label]
                   for label, term in lift.top.mapping):
                solutions.append(candidate)
        self.assertEqual(solutions, [{label: term.name for label, term in m.mapping}])


class MeetTests(unittest.TestCase):
    def test_meet_is_the_greatest_common_sub_context(self) -> None:
        small = contexts(3)
        for a in small:
            for b in small:
                meet = meet_context(a, b)
                self.assertTrue(is_sub_context(meet, a))
                self.assertTrue(is_sub_context(meet, b))
                for common in small:
                    if is_sub_context(common, a) and is_sub_context(common, b):
                        self.assertTrue(is_sub_context(common, meet))


def small_expressions() -> List[Expression]:
    a, b, x = Label('a'), Label('b'), Label('x')
    atoms = [a, b, x]
    equations = [Equals(p, q) for p in atoms for q in atoms]
    quantified = [forall(['x'], domain, body)
                  for domain in (a, b) for body in equations[:4]]
    return atoms + equations + quantified + [Not(e) for e in quantified[:3]]


SUBSTITUTIONS = ({}, {'a': 'b'}, {'a': 'x', 'x': 'a'}, {'b': Equals(Label('a'), Label('a'))},
                 {'x': 'b', 'b': 'b'})


class SubstitutionLawTests(unittest.TestCase):
    def test_substitutions_compose(self) -> None:
        for e in small_expressions():
            for first in SUBSTITUTIONS:
                for second in SUBSTITUTIONS:
                    both = {label: substitute(as_expression(term), second)
                            for label, term in first.items()}
                    for label, term in second.items():
                        both.setdefault(label, as_expression(term))
                    self.assertTrue(alpha_equal(substitute(substitute(e, first), second),
                                                substitute(e, both)))

    def test_alpha_equality_is_an_equivalence(self) -> None:
        expressions = small_expressions()
        for p in expressions:
            self.assertTrue(alpha_equal(p, p))
            for q in expressions:
                self.assertEqual(alpha_equal(p, q), alpha_equal(q, p))
                if not alpha_equal(p, q):
                    continue
                for r in expressions:
                    if alpha_equal(q, r):
                        self.assertTrue(alpha_equal(p, r))


if __name__ == "__main__":  # pragma: no cover
    unittest.main()
