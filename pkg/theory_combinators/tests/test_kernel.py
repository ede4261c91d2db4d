import unittest

from theory_combinators.errors import (
    IllFormedExpressionError,
    SortMismatchError,
    TypeMismatchError,
    UnboundLabelError,
)
from theory_combinators.kernel import (
    UNIVERSE,
    And,
    Apply,
    Arrow,
    Bound,
    Equals,
    Forall,
    Label,
    Not,
    Or,
    Product,
    Sort,
    alpha_equal,
    check_classifier,
    check_term,
    forall,
    free_labels,
    infer_term,
    render,
    substitute,
)

U, V = Label('U'), Label('V')
x, y = Label('x'), Label('y')

GROUP = {
    'U': UNIVERSE,
    'V': UNIVERSE,
    '*': Arrow(Product((U, U)), U),
    'inv': Arrow(U, U),
    'e': U,
    'v': V,
}


def mul(a, b):
    return Apply(Label('*'), (a, b))


class CheckClassifierTests(unittest.TestCase):
    def test_sorts_of_classifiers(self) -> None:
        self.assertIs(check_classifier(GROUP, UNIVERSE), Sort.KIND)
        self.assertIs(check_classifier(GROUP, U), Sort.TYPE)
        self.assertIs(check_classifier(GROUP, Arrow(Product((U, V)), U)), Sort.TYPE)
        self.assertIs(
            check_classifier(GROUP, forall(['x'], U, Equals(mul(x, Label('e')), x))), Sort.PROP)

    def test_connectives_are_propositions(self) -> None:
        p = Equals(Label('e'), Label('e'))
        q = forall(['x'], U, Equals(Apply(Label('inv'), (x,)), x))
        self.assertIs(check_classifier(GROUP, And(p, Not(q))), Sort.PROP)
        self.assertIs(check_classifier(GROUP, Or(q, p)), Sort.PROP)

    def test_unbound_label(self) -> None:
        with self.assertRaises(UnboundLabelError) as raised:
            check_classifier(GROUP, Label('W'))
        self.assertEqual(raised.exception.label, 'W')

    def test_term_is_not_a_classifier(self) -> None:
        with self.assertRaises(SortMismatchError):
            check_classifier(GROUP, Label('e'))
        with self.assertRaises(SortMismatchError):
            check_classifier(GROUP, mul(Label('e'), Label('e')))

    def test_product_needs_two_factors(self) -> None:
        with self.assertRaises(IllFormedExpressionError):
            check_classifier(GROUP, Product((U,)))

    def test_equation_between_different_types(self) -> None:
        with self.assertRaises(TypeMismatchError):
            check_classifier(GROUP, Equals(Label('e'), Label('v')))

    def test_equation_between_types(self) -> None:
        with self.assertRaises(SortMismatchError):
            check_classifier(GROUP, Equals(U, U))

    def test_forall_domain_must_be_a_type(self) -> None:
        with self.assertRaises(SortMismatchError):
            check_classifier(GROUP, forall(['x'], Label('e'), Equals(x, x)))

    def test_forall_body_must_be_a_proposition(self) -> None:
        with self.assertRaises(SortMismatchError):
            check_classifier(GROUP, forall(['x'], U, U))


class TypingTests(unittest.TestCase):
    def test_infer_application(self) -> None:
        self.assertEqual(infer_term(GROUP, mul(Label('e'), Apply(Label('inv'), (Label('e'),)))), U)

    def test_bound_variables_take_their_domain(self) -> None:
        self.assertIs(
            check_classifier(GROUP, forall(['x', 'y'], U, Equals(mul(x, y), mul(y, x)))),
            Sort.PROP)

    def test_wrong_number_of_arguments(self) -> None:
        with self.assertRaises(TypeMismatchError):
            infer_term(GROUP, Apply(Label('inv'), (Label('e'), Label('e'))))

    def test_wrong_argument_type(self) -> None:
        with self.assertRaises(TypeMismatchError):
            infer_term(GROUP, mul(Label('e'), Label('v')))

    def test_applying_a_constant(self) -> None:
        with self.assertRaises(TypeMismatchError):
            infer_term(GROUP, Apply(Label('e'), (Label('e'),)))

    def test_check_term(self) -> None:
        self.assertTrue(check_term(GROUP, Label('e'), U))
        self.assertFalse(check_term(GROUP, Label('e'), V))
        self.assertTrue(check_term(GROUP, Label('*'), Arrow(Product((U, U)), U)))
        self.assertFalse(check_term(GROUP, mul(Label('e'), Label('v')), U))


class SubstitutionTests(unittest.TestCase):
    def test_substitution_is_simultaneous(self) -> None:
        swapped = substitute(Equals(Label('a'), Label('b')), {'a': 'b', 'b': 'a'})
        self.assertEqual(swapped, Equals(Label('b'), Label('a')))

    def test_substitution_does_not_capture(self) -> None:
        law = forall(['x'], U, Equals(x, y))
        substituted = substitute(law, {'y': 'x'})
        self.assertEqual(render(substituted), "forall x':U. x' = x")
        self.assertEqual(free_labels(substituted), frozenset(['U', 'x']))

    def test_substituting_a_term(self) -> None:
        law = Equals(Label('a'), Label('e'))
        self.assertEqual(
            render(substitute(law, {'a': Apply(Label('inv'), (Label('e'),))})), 'inv(e) = e')

    def test_renaming_a_type_in_a_binder_domain(self) -> None:
        law = forall(['x'], U, Equals(x, x))
        self.assertEqual(render(substitute(law, {'U': 'V'})), 'forall x:V. x = x')


class AlphaEqualityTests(unittest.TestCase):
    def test_bound_names_do_not_matter(self) -> None:
        self.assertTrue(alpha_equal(
            forall(['x', 'y'], U, Equals(mul(x, y), mul(y, x))),
            forall(['a', 'b'], U, Equals(mul(Label('a'), Label('b')),
                                         mul(Label('b'), Label('a'))))))

    def test_binding_structure_matters(self) -> None:
        self.assertFalse(alpha_equal(
            forall(['x', 'y'], U, Equals(x, y)),
            forall(['x', 'y'], U, Equals(y, x))))

    def test_domains_matter(self) -> None:
        self.assertFalse(alpha_equal(forall(['x'], U, Equals(x, x)),
                                     forall(['x'], V, Equals(x, x))))

    def test_free_labels_are_rigid(self) -> None:
        self.assertFalse(alpha_equal(Label('e'), Label('f')))


class RenderTests(unittest.TestCase):
    def test_operators(self) -> None:
        self.assertEqual(render(Label('*')), '(*)')
        self.assertEqual(render(mul(mul(x, y), x)), '(x*y)*x')
        self.assertEqual(render(Apply(Label('*'), (x,))), '(*)(x)')

    def test_arrows(self) -> None:
        self.assertEqual(render(Arrow(U, Arrow(U, U))), 'U -> U -> U')
        self.assertEqual(render(Arrow(Arrow(U, U), U)), '(U -> U) -> U')
        self.assertEqual(render(Arrow(Product((U, V)), U)), '(U,V) -> U')

    def test_connectives(self) -> None:
        p, q = Equals(x, x), Equals(y, y)
        self.assertEqual(render(And(Or(p, q), Not(p))), '(x = x or y = y) and not x = x')
        self.assertEqual(render(Not(And(p, q))), 'not (x = x and y = y)')

    def test_grouped_binders(self) -> None:
        law = forall(['x', 'y'], U, forall(['z'], V, Equals(x, x)))
        self.assertEqual(render(law), 'forall x,y:U. forall z:V. x = x')

    def test_dangling_index(self) -> None:
        self.assertEqual(render(Bound(3, 'x')), '#3')

    def test_nested_shadowing(self) -> None:
        inner = Forall('x', U, Equals(Bound(0, 'x'), Bound(1, 'x')))
        self.assertEqual(render(Forall('x', V, inner)), "forall x:V. forall x':U. x' = x")


if __name__ == "__main__":  # pragma: no cover
    unittest.main()
