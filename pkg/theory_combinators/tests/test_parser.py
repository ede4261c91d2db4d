import unittest
from pathlib import Path

from theory_combinators.errors import Span, TpcSyntaxError
from theory_combinators.kernel import (
    UNIVERSE,
    And,
    Apply,
    Arrow,
    Equals,
    Implies,
    Label,
    Not,
    Or,
    Product,
    forall,
)
from theory_combinators.parser import parse_expression, parse_tpc
from theory_combinators.terms import (
    Combine,
    Empty,
    ExtendBy,
    Judgment,
    Rename,
    Renaming,
    Seq,
    TheoryLiteral,
    references,
)

RESOURCES = Path(__file__).resolve().parent / 'resources'

a, b, c, d = Label('a'), Label('b'), Label('c'), Label('d')
x, y, U = Label('x'), Label('y'), Label('U')


def read(name: str) -> str:
    return (RESOURCES / name).read_text(encoding='utf-8')


class ResourceTests(unittest.TestCase):
    def test_monoids(self) -> None:
        definitions = parse_tpc(read('monoids.tpc'), 'monoids.tpc')
        self.assertEqual(
            [definition.name for definition in definitions],
            ['Monoid', 'CommutativeMonoid', 'Group', 'CommutativeGroup', 'AbelianGroup',
             'CommutativeMonoidFlat'])
        self.assertEqual(
            [type(definition.term) for definition in definitions],
            [TheoryLiteral, ExtendBy, ExtendBy, Combine, Rename, TheoryLiteral])

    def test_combine_over(self) -> None:
        definitions = parse_tpc(read('monoids.tpc'), 'monoids.tpc')
        self.assertEqual(
            definitions[3].term,
            Combine('CommutativeMonoid', Renaming(), 'Group', Renaming(), 'Monoid'))

    def test_renaming_over_several_lines(self) -> None:
        double = parse_tpc(read('ring.tpc'), 'ring.tpc')[2]
        self.assertEqual(double.name, 'DoubleMonoid')
        self.assertEqual(double.term.left_renaming.pairs[:2], (('*', '+'), ('e', '0')))
        self.assertEqual(len(double.term.left_renaming.pairs), 5)
        self.assertEqual(double.term.right_renaming, Renaming())
        self.assertEqual(double.term.over, 'Carrier')
        self.assertEqual(references(double.term), ('Monoid', 'Monoid', 'Carrier'))

    def test_both_spellings_of_extend(self) -> None:
        hierarchy = parse_tpc(read('hierarchy.tpc'), 'hierarchy.tpc')
        self.assertEqual(hierarchy[1].term.base, 'Magma')
        self.assertEqual(hierarchy[4].term.base, 'Group')
        self.assertEqual(hierarchy[5].term.renaming.pairs,
                         (('*', '+'), ('e', '0'), ('inv', 'neg')))

    def test_sequence(self) -> None:
        forgetful = parse_tpc(read('seq.tpc'), 'seq.tpc')[-1]
        self.assertEqual(forgetful.term, Seq('CommutativeMonoid', 'Monoid'))

    def test_definition_spans(self) -> None:
        definitions = parse_tpc(read('monoids.tpc'), 'monoids.tpc')
        self.assertEqual(definitions[0].span.line, 3)
        self.assertEqual(definitions[1].span.line, 9)
        self.assertEqual(str(definitions[1].term.body[0].span), 'monoids.tpc:10:3')


class TermFormTests(unittest.TestCase):
    def test_empty(self) -> None:
        [definition] = parse_tpc('Nothing := Empty')
        self.assertEqual(definition.term, Empty())

    def test_empty_body(self) -> None:
        [definition] = parse_tpc('Nothing := Theory { }')
        self.assertEqual(definition.term, TheoryLiteral(()))

    def test_trailing_separator(self) -> None:
        [definition] = parse_tpc('P := Theory { U:type; e:U; }')
        self.assertEqual(definition.term.body, (Judgment('U', UNIVERSE), Judgment('e', U)))

    def test_axioms_are_marked(self) -> None:
        [definition] = parse_tpc('P := Theory { U:type; e:U; axiom unit: e = e }')
        self.assertEqual([judgment.axiom for judgment in definition.term.body],
                         [False, False, True])

    def test_parenthesized_operator_labels(self) -> None:
        [definition] = parse_tpc('M := Theory { U:type; (*):(U,U) -> U }')
        self.assertEqual(definition.term.body[1].label, '*')

    def test_empty_renaming(self) -> None:
        [definition] = parse_tpc('Same := Monoid []')
        self.assertEqual(definition.term, Rename('Monoid', Renaming()))

    def test_combine_without_base(self) -> None:
        [definition] = parse_tpc('Both := combine Left, Right [f |-> g]')
        self.assertIsNone(definition.term.over)
        self.assertEqual(definition.term.left_renaming, Renaming())
        self.assertEqual(definition.term.right_renaming.pairs, (('f', 'g'),))

    def test_comments_are_ignored(self) -> None:
        definitions = parse_tpc('-- nothing yet\nA := Empty -- the empty theory\n-- B := Empty\n')
        self.assertEqual([definition.name for definition in definitions], ['A'])

    def test_empty_library(self) -> None:
        self.assertEqual(parse_tpc(''), [])


class ExpressionTests(unittest.TestCase):
    def test_connective_precedence(self) -> None:
        self.assertEqual(
            parse_expression('a = b and not c = d or a = a'),
            Or(And(Equals(a, b), Not(Equals(c, d))), Equals(a, a)))

    def test_implication_is_right_associative(self) -> None:
        p, q, r = Equals(a, a), Equals(b, b), Equals(c, c)
        self.assertEqual(parse_expression('a = a implies b = b implies c = c'),
                         Implies(p, Implies(q, r)))

    def test_quantifier_scopes_to_the_end(self) -> None:
        self.assertEqual(
            parse_expression('forall x,y:U. x = y or y = x'),
            forall(['x', 'y'], U, Or(Equals(x, y), Equals(y, x))))

    def test_arrows(self) -> None:
        self.assertEqual(parse_expression('U -> U -> U'), Arrow(U, Arrow(U, U)))
        self.assertEqual(parse_expression('(U, U) -> U'), Arrow(Product((U, U)), U))
        self.assertEqual(parse_expression('U × U → U'), Arrow(Product((U, U)), U))

    def test_infix_is_left_associative(self) -> None:
        self.assertEqual(
            parse_expression('x*y+x'),
            Apply(Label('+'), (Apply(Label('*'), (x, y)), x)))

    def test_prefix_application(self) -> None:
        self.assertEqual(parse_expression('inv(x)*x'),
                         Apply(Label('*'), (Apply(Label('inv'), (x,)), x)))
        self.assertEqual(parse_expression('(*)(x, y)'), Apply(Label('*'), (x, y)))

    def test_universe(self) -> None:
        self.assertIs(parse_expression('type'), UNIVERSE)
        self.assertIs(parse_expression('Type'), UNIVERSE)

    def test_primes_and_numerals(self) -> None:
        self.assertEqual(parse_expression("x' = 0"), Equals(Label("x'"), Label('0')))

    def test_symbol_chunks_in_names(self) -> None:
        self.assertEqual(parse_expression('rightIdentity_*_e'), Label('rightIdentity_*_e'))


class SyntaxErrorTests(unittest.TestCase):
    def test_unexpected_token(self) -> None:
        with self.assertRaises(TpcSyntaxError) as raised:
            parse_tpc('A := Theory { U:type; e: }', 'broken.tpc')
        self.assertEqual(raised.exception.message, "unexpected '}'")
        self.assertEqual(raised.exception.span, Span('broken.tpc', 1, 26))

    def test_unexpected_end_of_input(self) -> None:
        with self.assertRaises(TpcSyntaxError) as raised:
            parse_tpc('A := Theory { U:type', 'short.tpc')
        self.assertEqual(raised.exception.message, 'unexpected end of input')
        self.assertEqual(raised.exception.span.filename, 'short.tpc')

    def test_unexpected_character(self) -> None:
        with self.assertRaises(TpcSyntaxError) as raised:
            parse_tpc('A := Theory { U:type; e < U }', 'odd.tpc')
        self.assertEqual(raised.exception.message, "unexpected character '<'")
        self.assertEqual((raised.exception.span.line, raised.exception.span.column), (1, 25))

    def test_keywords_are_reserved(self) -> None:
        with self.assertRaises(TpcSyntaxError) as raised:
            parse_tpc('Theory := Empty')
        self.assertEqual(raised.exception.message, "unexpected 'Theory'")

    def test_error_on_a_later_line(self) -> None:
        with self.assertRaises(TpcSyntaxError) as raised:
            parse_tpc('A := Empty\nB := combine A\n', 'later.tpc')
        self.assertEqual(raised.exception.span.line, 2)

    def test_bad_expression(self) -> None:
        with self.assertRaises(TpcSyntaxError):
            parse_expression('forall x. x = x')


if __name__ == "__main__":  # pragma: no cover
    unittest.main()
