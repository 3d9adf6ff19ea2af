"""
Tests for the cubic app.

Tests cover:
- Smoothness and Hermitian detection
- Rational line enumeration (vectorized and scalar paths)
- Good-line frames, the discriminant quintic and the double-line locus
- Classification, including equivariance under random coordinate changes
"""
import random

from django.test import SimpleTestCase, override_settings

from conicbundle.exceptions import EnumerationBudgetError, InF0Error, NotOnCubicError
from field import linalg
from field.services import embedding, make_field
from poly.forms import Form
from poly.parser import parse_form
from poly.services import evaluate_form, jacobian_ideal

from .catalog import CATALOG, DEFAULT_LINES, resolve_cubic
from .frames import (
    LineTag,
    NotGoodReason,
    classify_line,
    discriminant_is_smooth,
    discriminant_quintic,
    double_line_ideal,
    good_line_frame,
    has_double_line_fibers,
)
from .lines import (
    LineInP4,
    candidate_lines,
    contains_line,
    enumerate_lines,
    gaussian_line_count,
    lines_meeting,
)
from .services import is_hermitian, is_smooth_cubic
from .threefold import MONOMIALS, CubicThreefold

Y = ["y0", "y1", "y2"]


def random_invertible(F, n, rng):
    while True:
        m = [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)]
        if linalg.determinant(F, m):
            return m


class CubicFixtures(SimpleTestCase):
    def setUp(self):
        self.F2 = make_field(2, 1)
        self.F4 = make_field(2, 2)
        self.example = resolve_cubic("good-line-example", self.F2)
        self.fermat = resolve_cubic("fermat", self.F2)
        self.l0 = LineInP4.parse(DEFAULT_LINES["good-line-example"], self.F2)


# =============================================================================
# THREEFOLDS
# =============================================================================

class ThreefoldTests(CubicFixtures):
    def test_monomial_order(self):
        self.assertEqual(len(MONOMIALS), 35)
        self.assertEqual(MONOMIALS[0], (3, 0, 0, 0, 0))
        self.assertEqual(MONOMIALS[1], (2, 1, 0, 0, 0))
        self.assertEqual(MONOMIALS[-1], (0, 0, 0, 0, 3))

    def test_coefficient_vector_round_trip(self):
        vector = self.example.coefficient_vector()
        self.assertEqual(CubicThreefold.from_coefficients(self.F2, vector), self.example)
        self.assertEqual(sum(1 for c in vector if c), len(self.example.form.terms))

    def test_coefficients_keep_encodings(self):
        X = CubicThreefold.from_coefficients(self.F4, [3] + [0] * 33 + [2])
        self.assertEqual(X.form.coefficient(MONOMIALS[0]), self.F4.gen + 1)
        self.assertEqual(X.form.coefficient(MONOMIALS[-1]), self.F4.gen)

    def test_transform_over_gf4(self):
        rng = random.Random(41)
        X = self.fermat.base_change(self.F4)
        line = LineInP4(self.F4, [[1, 2, 0, 0, 0], [0, 0, 1, 2, 0]])
        for _ in range(3):
            m = random_invertible(self.F4, 5, rng)
            Y = X.transform(m)
            self.assertEqual(Y.transform(linalg.inverse(self.F4, m)), X)
            for v in linalg.projective_points(self.F4, 4):
                self.assertEqual(Y.form.evaluate_raw(list(v)),
                                 X.form.evaluate_raw(linalg.matvec(self.F4, m, list(v))))
            self.assertTrue(contains_line(Y, line.apply(linalg.inverse(self.F4, m))))

    def test_base_change_from_gf4(self):
        F16 = make_field(2, 4)
        X = CubicThreefold.parse("t*x0^3 + (1+t)*x1^2*x2 + x3*x4^2", self.F4)
        Y = X.base_change(F16)
        phi = embedding(self.F4, F16)
        for v in linalg.projective_points(self.F4, 4):
            self.assertEqual(Y.form.evaluate_raw([phi(x) for x in v]),
                             phi(X.form.evaluate_raw(list(v))))
        line = LineInP4(self.F4, [[1, 2, 0, 0, 0], [0, 0, 1, 2, 0]])
        self.assertTrue(contains_line(self.fermat.base_change(F16), line.base_change(F16, phi)))

    def test_smoothness(self):
        self.assertTrue(is_smooth_cubic(self.example))
        self.assertTrue(is_smooth_cubic(self.fermat))
        self.assertFalse(is_smooth_cubic(CubicThreefold.parse("x0^3", self.F2)))

    def test_hermitian(self):
        self.assertTrue(is_hermitian(self.fermat))
        self.assertTrue(is_hermitian(resolve_cubic("klein", self.F2)))
        self.assertFalse(is_hermitian(self.example))

    def test_hermitian_outside_char2(self):
        X = resolve_cubic("fermat", make_field(3, 1))
        with self.assertLogs("cubic.services", level="WARNING"):
            self.assertFalse(is_hermitian(X))


# =============================================================================
# LINES
# =============================================================================

class LineEnumerationTests(CubicFixtures):
    def test_candidate_counts(self):
        self.assertEqual(gaussian_line_count(2), 155)
        self.assertEqual(len(set(candidate_lines(self.F2))), 155)
        self.assertEqual(gaussian_line_count(4), 5797)

    def test_example_contains_its_line(self):
        self.assertIn(self.l0, enumerate_lines(self.example))

    def test_fermat_line_over_gf4(self):
        g = self.F4.gen
        line = LineInP4(self.F4, [[1, g, 0, 0, 0], [0, 0, 1, g, 0]])
        self.assertIn(line, enumerate_lines(self.fermat, self.F4))

    def test_vectorized_matches_scalar(self):
        for name in ("good-line-example", "klein", "double-line-witness"):
            X = resolve_cubic(name, self.F2)
            scalar = sorted(l for l in candidate_lines(self.F2) if contains_line(X, l))
            self.assertEqual(enumerate_lines(X), scalar)

    def test_line_rows_keep_encodings(self):
        line = LineInP4(self.F4, [[1, 2, 0, 0, 0], [0, 0, 1, 2, 0]])
        self.assertEqual(line.rows, ((1, 2, 0, 0, 0), (0, 0, 1, 2, 0)))
        self.assertEqual(line, LineInP4.parse("1,t,0,0,0;0,0,1,t,0", self.F4))

    def test_hermitian_line_count_over_gf4(self):
        lines = enumerate_lines(self.fermat, self.F4)
        self.assertEqual(len(lines), 297)
        self.assertEqual(len(set(lines)), 297)
        X = self.fermat.base_change(self.F4)
        self.assertTrue(all(contains_line(X, line) for line in lines))
        self.assertTrue(any(x > 1 for line in lines for row in line.rows for x in row))

    def test_lines_pass_pointwise_check(self):
        X = self.fermat.base_change(self.F4)
        for line in enumerate_lines(self.fermat, self.F4):
            for point in line.points():
                self.assertEqual(X.form.evaluate_raw(list(point)), 0)

    def test_output_independent_of_threads(self):
        self.assertEqual(enumerate_lines(self.fermat, self.F4, threads=1),
                         enumerate_lines(self.fermat, self.F4, threads=3))

    def test_odd_characteristic_scalar_path(self):
        F3 = make_field(3, 1)
        X = resolve_cubic("good-line-example", F3)
        lines = enumerate_lines(X)
        self.assertIn(LineInP4.parse("0,0,0,1,0;0,0,0,0,1", F3), lines)

    @override_settings(CONICBUNDLE_LIMITS={"LINES_MAX_Q": 2})
    def test_budget(self):
        with self.assertRaises(EnumerationBudgetError):
            enumerate_lines(self.fermat, self.F4)

    def test_line_canonical_form(self):
        a = LineInP4(self.F2, [[1, 1, 0, 0, 0], [0, 1, 1, 0, 0]])
        b = LineInP4(self.F2, [[1, 0, 1, 0, 0], [1, 1, 0, 0, 0]])
        self.assertEqual(a, b)


# =============================================================================
# FRAMES AND DISCRIMINANT
# =============================================================================

class GoodLineFrameTests(CubicFixtures):
    def test_example_frame(self):
        fr = good_line_frame(self.example, self.l0)
        self.assertEqual(fr.matrix, tuple(tuple(r) for r in linalg.identity(5)))
        self.assertEqual(fr.q0, parse_form("y0^2 + y1^2", self.F2, Y))
        self.assertEqual(fr.q1, parse_form("y1^2 + y2^2", self.F2, Y))
        self.assertEqual(fr.r, parse_form("y0*y2^2 + y2*y0^2", self.F2, Y))
        self.assertEqual(fr.reassemble(), self.example.form)

    def test_fermat_lines_are_in_f0(self):
        for F in (self.F2, self.F4):
            X = self.fermat.base_change(F)
            lines = enumerate_lines(self.fermat, F)
            self.assertTrue(lines)
            for line in lines:
                with self.assertRaises(InF0Error):
                    good_line_frame(X, line)

    def test_line_not_on_cubic(self):
        line = LineInP4.parse("1,0,0,0,0;0,0,0,1,0", self.F2)
        self.assertFalse(contains_line(self.example, line))
        with self.assertRaises(NotOnCubicError):
            good_line_frame(self.example, line)

    def test_reassembly_after_random_changes(self):
        rng = random.Random(5)
        for _ in range(5):
            m = random_invertible(self.F2, 5, rng)
            X = self.example.transform(m)
            line = self.l0.apply(linalg.inverse(self.F2, m))
            fr = good_line_frame(X, line)
            self.assertEqual(fr.reassemble(), fr.normalized_form())


class DiscriminantTests(CubicFixtures):
    def test_example_discriminant(self):
        fr = good_line_frame(self.example, self.l0)
        h = discriminant_quintic(fr)
        expected = parse_form(
            "y0*(y1^2+y2^2)^2 + y1^2*(y0*y2^2+y2*y0^2) + y1*(y0^2+y1^2)*(y1^2+y2^2)"
            " + y2*(y0^2+y1^2)^2", self.F2, Y)
        self.assertEqual(h, expected)
        self.assertEqual(h.degree, 5)
        self.assertTrue(h.is_homogeneous)

    def test_symbolic_formula(self):
        fr = good_line_frame(self.example, self.l0)
        y0, y1, y2 = (Form.variable(self.F2, 3, i) for i in range(3))
        formula = y0 * fr.q1 ** 2 + y1 ** 2 * fr.r + y1 * fr.q0 * fr.q1 + y2 * fr.q0 ** 2
        self.assertEqual(discriminant_quintic(fr), formula)

    def test_odd_characteristic_is_conic_determinant(self):
        """H equals -4 det of the conic's symmetric matrix over GF(5)."""
        F = make_field(5, 1)
        rng = random.Random(3)
        x = [Form.variable(F, 5, i) for i in range(5)]

        def random_form(degree):
            terms = {}
            for e0 in range(degree + 1):
                for e1 in range(degree + 1 - e0):
                    terms[(e0, e1, degree - e0 - e1, 0, 0)] = rng.randrange(5)
            return Form(F, 5, terms)

        f = (x[3] ** 2 * x[0] + x[3] * x[4] * x[1] + x[4] ** 2 * x[2]
             + x[3] * random_form(2) + x[4] * random_form(2) + random_form(3))
        X = CubicThreefold(f)
        fr = good_line_frame(X, LineInP4(F, [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]))
        h = discriminant_quintic(fr)
        self.assertEqual(h.degree, 5)
        half = F.inv(2)
        for y in linalg.projective_points(F, 2):
            a, b, c, d, e, r = fr.fiber_coefficients_raw(list(y))
            s = [[a, F.mul(half, b), F.mul(half, d)],
                 [F.mul(half, b), c, F.mul(half, e)],
                 [F.mul(half, d), F.mul(half, e), r]]
            det = linalg.determinant(F, s)
            self.assertEqual(h.evaluate_raw(list(y)), F.mul(F.neg(4), det))

    def test_transformed_discriminant_is_linear_change(self):
        rng = random.Random(17)
        fr1 = good_line_frame(self.example, self.l0)
        h1 = discriminant_quintic(fr1)
        for _ in range(5):
            m = random_invertible(self.F2, 5, rng)
            X = self.example.transform(m)
            fr2 = good_line_frame(X, self.l0.apply(linalg.inverse(self.F2, m)))
            t = linalg.matmul(self.F2, linalg.matmul(self.F2, linalg.inverse(self.F2, fr1.matrix), m),
                              fr2.matrix)
            for i in range(3):
                self.assertEqual(t[i][3:], [0, 0])
            a = [row[:3] for row in t[:3]]
            self.assertEqual(h1.substitute_linear(a), discriminant_quintic(fr2))


# =============================================================================
# CLASSIFICATION
# =============================================================================

class ClassifyLineTests(CubicFixtures):
    def test_example_is_good(self):
        result = classify_line(self.example, self.l0)
        self.assertEqual(result.tag, LineTag.GOOD)
        self.assertEqual(result.as_dict(), {"class": "Good"})

    def test_double_line_witness(self):
        X = resolve_cubic("double-line-witness", self.F2)
        line = LineInP4.parse(DEFAULT_LINES["double-line-witness"], self.F2)
        result = classify_line(X, line)
        self.assertEqual(result.tag, LineTag.NOT_GOOD)
        self.assertEqual(result.reason, NotGoodReason.DOUBLE_LINE_FIBER)
        fr = good_line_frame(X, line)
        for g in double_line_ideal(fr):
            self.assertEqual(evaluate_form(g, [0, 0, 1]), self.F2.zero)

    def test_singular_discriminant_needs_a_singular_cubic(self):
        # Q0 = y0^2, Q1 = y2^2: no double lines, but H is singular at [0:1:0]
        # and X is singular at [0:1:0:0:0].
        X = CubicThreefold.parse(
            "x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*x0^2 + x4*x2^2 + x0*x2^2 + x2*x0^2", self.F2)
        fr = good_line_frame(X, self.l0)
        self.assertEqual(fr.q0, parse_form("y0^2", self.F2, Y))
        self.assertEqual(fr.q1, parse_form("y2^2", self.F2, Y))
        self.assertFalse(has_double_line_fibers(fr))
        self.assertFalse(discriminant_is_smooth(fr))
        for g in jacobian_ideal(discriminant_quintic(fr)).generators:
            self.assertEqual(evaluate_form(g, [0, 1, 0]), self.F2.zero)
        self.assertFalse(is_smooth_cubic(X))
        result = classify_line(X, self.l0)
        self.assertEqual(result.tag, LineTag.NOT_GOOD)
        self.assertEqual(result.reason, NotGoodReason.SINGULAR_DISCRIMINANT)
        self.assertEqual(result.as_dict(), {"class": "NotGood", "reason": "SingularDiscriminant"})

    def test_fermat_has_no_good_lines(self):
        for F in (self.F2, self.F4):
            X = self.fermat.base_change(F)
            for line in enumerate_lines(X):
                self.assertEqual(classify_line(X, line).tag, LineTag.IN_F0)

    def test_equivariance_under_random_changes(self):
        rng = random.Random(2024)
        for _ in range(20):
            m = random_invertible(self.F2, 5, rng)
            X = self.example.transform(m)
            line = self.l0.apply(linalg.inverse(self.F2, m))
            self.assertEqual(classify_line(X, line), classify_line(self.example, self.l0))

    def test_good_means_empty_double_line_locus(self):
        for line in enumerate_lines(self.example):
            result = classify_line(self.example, line)
            if result.is_good:
                fr = result.frame
                for y in linalg.projective_points(self.F2, 2):
                    values = [g.evaluate_raw(list(y)) for g in double_line_ideal(fr)]
                    self.assertTrue(any(values))

    def test_catalog_names(self):
        self.assertEqual(set(CATALOG), {"good-line-example", "fermat", "klein",
                                        "double-line-witness"})
