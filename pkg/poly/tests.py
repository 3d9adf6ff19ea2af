"""
Tests for the poly app.

Tests cover:
- Parsing (valid forms, errors with positions, extension-field coefficients)
- Evaluation, partial derivatives and linear substitution
- Groebner bases and projective emptiness
"""
import random

import numpy as np
from django.test import SimpleTestCase, override_settings

from conicbundle.exceptions import (
    DimensionMismatchError,
    FormParseError,
    GroebnerResourceError,
    HomogeneityError,
    MixedFieldError,
    SingularMatrixError,
)
from field import linalg
from field.services import extension, make_field
from field.vectorized import projective_chunks, vector_field

from .forms import Form
from .groebner import Ideal, groebner_basis, normal_form, projective_is_empty
from .parser import parse_form
from .services import evaluate_form, jacobian_ideal, substitute_linear
from .vectorized import compile_form

EXAMPLE_CUBIC = ("x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*(x0^2+x1^2) + x4*(x1^2+x2^2)"
                 " + x0*x2^2 + x2*x0^2")
FERMAT = "x0^3+x1^3+x2^3+x3^3+x4^3"


def random_invertible(F, n, rng):
    while True:
        m = [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)]
        if linalg.determinant(F, m):
            return m


# =============================================================================
# PARSER
# =============================================================================

class ParseFormTests(SimpleTestCase):
    def setUp(self):
        self.F2 = make_field(2, 1)

    def test_example_cubic(self):
        f = parse_form(EXAMPLE_CUBIC, self.F2)
        self.assertEqual(f.degree, 3)
        self.assertTrue(f.is_homogeneous)
        self.assertEqual(f.coefficient((1, 0, 0, 2, 0)), self.F2.one)

    def test_fermat(self):
        f = parse_form(FERMAT, self.F2)
        self.assertEqual(len(f.terms), 5)

    def test_homogeneity_demanded(self):
        with self.assertRaises(HomogeneityError):
            parse_form("x0^3 + x1", self.F2)
        f = parse_form("x0^3 + x1", self.F2, homogeneous=False)
        self.assertFalse(f.is_homogeneous)

    def test_syntax_error_position(self):
        with self.assertRaises(FormParseError) as ctx:
            parse_form("x0^3 + * x1^3", self.F2)
        self.assertEqual(ctx.exception.position, 7)

    def test_unknown_variable(self):
        with self.assertRaises(FormParseError) as ctx:
            parse_form("x7^3", self.F2)
        self.assertEqual(ctx.exception.position, 0)

    def test_coefficient_not_in_field(self):
        with self.assertRaises(FormParseError):
            parse_form("t*x0^3", self.F2)

    def test_unbalanced_parentheses(self):
        with self.assertRaises(FormParseError):
            parse_form("x3*(x0^2+x1^2", self.F2)

    def test_extension_coefficients(self):
        F4 = make_field(2, 2)
        f = parse_form("(1+t)*x0^3 + t*x1^3", F4)
        self.assertEqual(f.coefficient((3, 0, 0, 0, 0)), F4.gen + 1)
        self.assertEqual(f.coefficient((0, 3, 0, 0, 0)), F4.gen)

    def test_integers_reduce_mod_p(self):
        F3 = make_field(3, 1)
        f = parse_form("4*x0 - x1", F3, ["x0", "x1"])
        self.assertEqual(f.coefficient((1, 0)), F3.one)
        self.assertEqual(f.coefficient((0, 1)), F3(2))

    def test_print_round_trip(self):
        for F, text in [(self.F2, EXAMPLE_CUBIC), (self.F2, FERMAT),
                        (make_field(2, 2), "(1+t)*x0^2*x1 + t*x4^3 + x2*x3*x4"),
                        (make_field(3, 2), "2*x0^3 + (1+2*t)*x1*x2^2 - x3^3")]:
            f = parse_form(text, F)
            self.assertEqual(parse_form(str(f), F), f)


# =============================================================================
# EVALUATION, PARTIALS, SUBSTITUTION
# =============================================================================

class EvaluateFormTests(SimpleTestCase):
    def setUp(self):
        self.F2 = make_field(2, 1)
        self.fermat = parse_form(FERMAT, self.F2)

    def test_fermat_points(self):
        self.assertEqual(evaluate_form(self.fermat, [1, 1, 0, 0, 0]), self.F2.zero)
        self.assertEqual(evaluate_form(self.fermat, [1, 0, 0, 0, 0]), self.F2.one)

    def test_example_cubic_contains_line_point(self):
        f = parse_form(EXAMPLE_CUBIC, self.F2)
        self.assertEqual(evaluate_form(f, [0, 0, 0, 1, 0]), self.F2.zero)

    def test_extension_point(self):
        F4 = make_field(2, 2)
        g = F4.gen
        self.assertEqual(evaluate_form(self.fermat, [F4.one, g, F4.zero, F4.zero, F4.zero]),
                         F4.zero)

    def test_raw_encodings_over_gf9(self):
        F9 = make_field(3, 2)
        f = parse_form("x0^2*x1 + t*x2^3", F9, ["x0", "x1", "x2"])
        a, b, c = F9.wrap(4), F9.wrap(5), F9.wrap(7)
        self.assertEqual(evaluate_form(f, [4, 5, 7]), a ** 2 * b + F9.gen * c ** 3)
        with self.assertRaises(MixedFieldError):
            evaluate_form(f, [9, 0, 0])

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            evaluate_form(self.fermat, [1, 0, 0])


class JacobianTests(SimpleTestCase):
    def test_fermat_char2(self):
        F2 = make_field(2, 1)
        ideal = jacobian_ideal(parse_form(FERMAT, F2))
        for i in range(5):
            exp = [0] * 5
            exp[i] = 2
            self.assertEqual(ideal.generators[i + 1], Form(F2, 5, {tuple(exp): 1}))

    def test_cube_in_char3(self):
        f = parse_form("x0^3", make_field(3, 1))
        self.assertTrue(f.partial(0).is_zero())

    def test_example_cubic_x3_partial(self):
        F2 = make_field(2, 1)
        f = parse_form(EXAMPLE_CUBIC, F2)
        expected = parse_form("x4*x1 + x0^2 + x1^2", F2)
        self.assertEqual(f.partial(3), expected)


class SubstituteLinearTests(SimpleTestCase):
    def setUp(self):
        self.F2 = make_field(2, 1)
        self.example = parse_form(EXAMPLE_CUBIC, self.F2)

    def test_identity(self):
        self.assertEqual(substitute_linear(self.example, linalg.identity(5)), self.example)

    def test_swap_preserves_fermat(self):
        fermat = parse_form(FERMAT, self.F2)
        swap = [[0, 0, 1, 0, 0], [0, 1, 0, 0, 0], [1, 0, 0, 0, 0],
                [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
        self.assertEqual(substitute_linear(fermat, swap), fermat)

    def test_singular(self):
        with self.assertRaises(SingularMatrixError):
            substitute_linear(self.example, [[1] * 5] * 5)

    def test_inverse_round_trip_and_evaluation(self):
        rng = random.Random(11)
        F4 = make_field(2, 2)
        f = parse_form("(1+t)*x0^2*x1 + t*x4^3 + x2*x3*x4 + x1^3", F4)
        for _ in range(5):
            m = random_invertible(F4, 5, rng)
            g = substitute_linear(f, m)
            self.assertEqual(g.degree, 3)
            self.assertTrue(g.is_homogeneous)
            self.assertEqual(substitute_linear(g, linalg.inverse(F4, m)), f)
            v = [rng.randrange(4) for _ in range(5)]
            self.assertEqual(g.evaluate_raw(v), f.evaluate_raw(linalg.matvec(F4, m, v)))

    def test_matrix_entries_are_encodings(self):
        F4 = make_field(2, 2)
        f = parse_form("x0^3", F4, ["x0", "x1"])
        g = substitute_linear(f, [[2, 3], [0, 1]])
        self.assertEqual(g, Form.linear(F4, [2, 3]) ** 3)

    def test_extension_field_round_trips(self):
        rng = random.Random(29)
        for F in (make_field(2, 3), make_field(3, 2)):
            f = parse_form("t*x0^2*x1 + x2^3 + x0*x1*x2", F, ["x0", "x1", "x2"])
            for _ in range(3):
                m = random_invertible(F, 3, rng)
                g = substitute_linear(f, m)
                self.assertEqual(substitute_linear(g, linalg.inverse(F, m)), f)
                for v in linalg.projective_points(F, 2):
                    self.assertEqual(g.evaluate_raw(list(v)),
                                     f.evaluate_raw(linalg.matvec(F, m, list(v))))


# =============================================================================
# GROEBNER BASES AND EMPTINESS
# =============================================================================

class GroebnerTests(SimpleTestCase):
    def setUp(self):
        self.F2 = make_field(2, 1)

    def forms(self, *texts, names=("x", "y"), field=None):
        return [parse_form(t, field or self.F2, list(names), homogeneous=False) for t in texts]

    def test_already_a_basis(self):
        gb = groebner_basis(Ideal(self.forms("x", "y")))
        self.assertEqual(set(gb.generators), set(self.forms("x", "y")))

    def test_square_and_linear(self):
        F3 = make_field(3, 1)
        gb = groebner_basis(Ideal(self.forms("x^2", "x+y", field=F3)))
        self.assertEqual(list(gb.generators), self.forms("y^2", "x+y", field=F3))

    def test_dehomogenized_squares_give_unit(self):
        squares = [parse_form(f"x{i}^2", self.F2) for i in range(5)]
        chart = Ideal(squares).dehomogenize(0)
        self.assertTrue(groebner_basis(chart).is_unit())

    def test_generators_reduce_to_zero(self):
        F4 = make_field(2, 2)
        gens = self.forms("x^2*y + t*y^3 + x", "x*y^2 + x + 1", "y^3 + t*x*y",
                          field=F4)
        gb = groebner_basis(Ideal(gens))
        for g in gens:
            self.assertTrue(normal_form(g, gb).is_zero())

    def test_lex_order(self):
        F3 = make_field(3, 1)
        gens = self.forms("x^2 + y", "x*y - 1", field=F3)
        gb = groebner_basis(Ideal(gens, order="lex"))
        for g in gens:
            self.assertTrue(normal_form(g, gb).is_zero())
        self.assertTrue(any(g.variables_used() == [1] for g in gb))

    def test_degree_cap(self):
        with self.assertRaises(GroebnerResourceError):
            groebner_basis(Ideal(self.forms("x^2 + y^2", "x*y")), degree_cap=2)

    @override_settings(CONICBUNDLE_LIMITS={"GROEBNER_PAIR_CAP": 0})
    def test_pair_budget_from_settings(self):
        with self.assertRaises(GroebnerResourceError):
            groebner_basis(Ideal(self.forms("x^2 + y^2", "x*y")))


class ProjectiveEmptinessTests(SimpleTestCase):
    def setUp(self):
        self.F2 = make_field(2, 1)

    def test_irrelevant_ideal(self):
        gens = [Form.variable(self.F2, 5, i) for i in range(5)]
        self.assertTrue(projective_is_empty(Ideal(gens)))

    def test_product_is_nonempty(self):
        self.assertFalse(projective_is_empty(Ideal([parse_form("x0*x1", self.F2)])))

    def test_rational_point_fixture(self):
        ideal = Ideal([parse_form("x0*x1", self.F2), parse_form("x2", self.F2)])
        self.assertFalse(projective_is_empty(ideal))

    def test_example_cubic_is_smooth(self):
        ideal = jacobian_ideal(parse_form(EXAMPLE_CUBIC, self.F2))
        self.assertTrue(projective_is_empty(ideal))

    def test_threads_do_not_change_verdict(self):
        ideal = jacobian_ideal(parse_form(EXAMPLE_CUBIC, self.F2))
        self.assertEqual(projective_is_empty(ideal, threads=1),
                         projective_is_empty(ideal, threads=4))

    def test_rejects_inhomogeneous(self):
        f = parse_form("x0^2 + x1", self.F2, homogeneous=False)
        with self.assertRaises(HomogeneityError):
            projective_is_empty(Ideal([f]))

    def test_soundness_against_enumeration(self):
        """Empty verdicts admit no common zero over GF(2), GF(4) and GF(8)."""
        for text in (FERMAT, EXAMPLE_CUBIC):
            f = parse_form(text, self.F2)
            ideal = jacobian_ideal(f)
            self.assertTrue(projective_is_empty(ideal))
            for m in (1, 2, 3):
                E = extension(self.F2, m)
                vf = vector_field(E)
                evaluators = [compile_form(g, vf) for g in ideal if not g.is_zero()]
                for coords in projective_chunks(E.q, 4):
                    common = np.ones(coords[0].shape, dtype=bool)
                    for ev in evaluators:
                        common &= ev(coords) == 0
                    self.assertFalse(common.any())


class CompileFormTests(SimpleTestCase):
    def test_matches_scalar_evaluation(self):
        F8 = make_field(2, 3)
        f = parse_form("(1+t)*x0^2*x1 + t^2*x2^3 + x0*x1*x2 + x1^3", F8, ["x0", "x1", "x2"])
        ev = compile_form(f, vector_field(F8))
        for coords in projective_chunks(F8.q, 2):
            values = ev(coords).tolist()
            for point, value in zip(zip(*(c.tolist() for c in coords)), values):
                self.assertEqual(f.evaluate_raw(list(point)), value)
