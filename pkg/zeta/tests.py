"""
Tests for the zeta app.

Tests cover:
- L-polynomials from counts (Newton identities, functional equation, Weil checks)
- Prym factor by exact division
- p-rank from L mod p
- Direct threefold counts and the intermediate-Jacobian identity
"""
from dataclasses import replace

from django.test import SimpleTestCase, override_settings

from conicbundle.exceptions import (
    DimensionMismatchError,
    EnumerationBudgetError,
    NonExactDivisionError,
    NonIntegralError,
    WeilViolationError,
)
from cubic.catalog import DEFAULT_LINES, resolve_cubic
from cubic.frames import good_line_frame
from cubic.lines import LineInP4
from field import linalg
from field.services import embedding, make_field
from poly.forms import Form

from .lpoly import LPolynomial, l_polynomial_from_counts, p_rank_from_l, prym_l_polynomial
from .services import count_threefold_points, ij_rhs, verify_ij_identity, zeta_functions


def example(field=None):
    field = field or make_field(2, 1)
    X = resolve_cubic("good-line-example", field)
    line = LineInP4.parse(DEFAULT_LINES["good-line-example"], field)
    return X, good_line_frame(X, line)


# =============================================================================
# L-POLYNOMIALS FROM COUNTS
# =============================================================================

class LPolynomialTests(SimpleTestCase):
    def test_genus_zero(self):
        L = l_polynomial_from_counts(3, 0, [4, 10])
        self.assertEqual(L.as_list(), [1])
        self.assertTrue(L.satisfies_weil_bound())

    def test_genus_zero_rejects_extra_points(self):
        with self.assertRaises(WeilViolationError):
            l_polynomial_from_counts(3, 0, [5])

    def test_genus_one(self):
        L = l_polynomial_from_counts(5, 1, [4])
        self.assertEqual(L.as_list(), [1, -2, 5])
        self.assertTrue(L.satisfies_functional_equation())
        self.assertTrue(L.satisfies_weil_bound())
        self.assertEqual(L.point_counts(2), [4, 32])

    def test_extra_counts_are_cross_checked(self):
        l_polynomial_from_counts(5, 1, [4, 32])
        with self.assertRaises(WeilViolationError):
            l_polynomial_from_counts(5, 1, [4, 33])

    def test_weil_interval(self):
        with self.assertRaises(WeilViolationError):
            l_polynomial_from_counts(5, 1, [20])

    def test_non_integral_coefficient(self):
        with self.assertRaises(NonIntegralError):
            l_polynomial_from_counts(2, 2, [3, 4])

    def test_too_few_counts(self):
        with self.assertRaises(DimensionMismatchError):
            l_polynomial_from_counts(2, 3, [3, 5])

    def test_product(self):
        a = LPolynomial(5, 1, (1, -2, 5))
        b = LPolynomial(5, 1, (1, 0, 5))
        self.assertEqual((a * b).as_list(), [1, -2, 10, -10, 25])

    def test_roots_on_repeated_factor(self):
        a = LPolynomial(2, 1, (1, 0, 2))
        self.assertTrue((a * a * a).satisfies_weil_bound())


class PRankTests(SimpleTestCase):
    def test_supersingular(self):
        self.assertEqual(p_rank_from_l(LPolynomial(2, 1, (1, 0, 2)), 2), 0)

    def test_ordinary(self):
        self.assertEqual(p_rank_from_l(LPolynomial(2, 1, (1, -1, 2)), 2), 1)


class PrymDivisionTests(SimpleTestCase):
    def test_non_exact(self):
        curve = LPolynomial(5, 1, (1, -2, 5))
        cover = LPolynomial(5, 1, (1, 0, 5)) * LPolynomial(5, 1, (1, -1, 5))
        with self.assertRaises(NonExactDivisionError):
            prym_l_polynomial(curve, cover)

    def test_different_fields(self):
        with self.assertRaises(DimensionMismatchError):
            prym_l_polynomial(LPolynomial(5, 1, (1, -2, 5)), LPolynomial(3, 1, (1, 0, 3)))


# =============================================================================
# THE GOOD-LINE EXAMPLE: L_C, L_Ctilde, L_Prym
# =============================================================================

class ExampleZetaTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.X, cls.frame = example()
        cls.report = zeta_functions(cls.frame, 11)

    def test_degrees(self):
        self.assertEqual(self.report.curve.degree, 12)
        self.assertEqual(self.report.cover.degree, 22)
        self.assertEqual(self.report.prym.polynomial.degree, 10)
        self.assertEqual(self.report.prym.dimension, 5)

    def test_functional_equation_and_weil(self):
        for L in (self.report.curve, self.report.cover, self.report.prym.polynomial):
            self.assertEqual(L.coefficients[0], 1)
            self.assertTrue(L.satisfies_functional_equation())
            self.assertTrue(L.satisfies_weil_bound())

    def test_exact_division(self):
        product = self.report.curve * self.report.prym.polynomial
        self.assertEqual(product.coefficients, self.report.cover.coefficients)

    def test_reconstruction(self):
        counts = self.report.curve.point_counts(2)
        self.assertEqual(counts[0], 4)
        self.assertEqual(self.report.cover.point_counts(1), [6])

    def test_report_keys(self):
        data = self.report.as_dict()
        self.assertEqual(len(data["L_C"]), 13)
        self.assertEqual(len(data["L_Ctilde"]), 23)
        self.assertEqual(len(data["L_Prym"]), 11)

    def test_fake_disconnected_cover(self):
        L = self.report.curve
        with self.assertLogs("zeta.lpoly", level="WARNING"):
            prym = prym_l_polynomial(L, L * L)
        self.assertEqual(prym.polynomial, L)

    def test_too_few_extension_degrees(self):
        with self.assertRaises(DimensionMismatchError):
            zeta_functions(self.frame, 8)


# =============================================================================
# THREEFOLD COUNTS AND THE IDENTITY
# =============================================================================

class ThreefoldCountTests(SimpleTestCase):
    def test_fermat_over_gf2(self):
        # x^3 = x on GF(2): the even-weight vectors.
        X = resolve_cubic("fermat", make_field(2, 1))
        self.assertEqual(count_threefold_points(X, 1), 15)

    def test_fermat_over_gf3(self):
        # x^3 = x on GF(3): a hyperplane.
        X = resolve_cubic("fermat", make_field(3, 1))
        self.assertEqual(count_threefold_points(X, 1), 40)

    def test_example_matches_brute_force_over_gf4(self):
        X, _ = example()
        F4 = make_field(2, 2)
        phi = embedding(X.field, F4)
        brute = sum(1 for x in linalg.projective_points(F4, 4)
                    if X.form.evaluate_raw(list(x), F4, phi) == 0)
        self.assertEqual(count_threefold_points(X, 2), brute)
        self.assertLessEqual(brute, linalg.projective_size(4, 4))

    def test_threads_do_not_change_counts(self):
        X, _ = example()
        self.assertEqual(count_threefold_points(X, 3, threads=3, chunk=50),
                         count_threefold_points(X, 3))

    @override_settings(CONICBUNDLE_LIMITS={"THREEFOLD_MAX_POINTS": 100})
    def test_budget(self):
        X, _ = example()
        with self.assertRaises(EnumerationBudgetError):
            count_threefold_points(X, 2)


class IdentityTests(SimpleTestCase):
    def test_first_extension(self):
        X, fr = example()
        report = verify_ij_identity(X, fr, [1])
        row = report.rows[0]
        self.assertEqual((row.lhs, row.rhs, row.curve, row.cover), (19, 19, 4, 6))
        self.assertEqual(report.as_list()[0]["pass"], True)

    def test_holds_to_m4(self):
        X, fr = example()
        report = verify_ij_identity(X, fr, range(1, 5))
        self.assertTrue(report.passed, report.as_list())

    def test_equal_counts_give_projective_space_count(self):
        self.assertEqual(ij_rhs(4, 5, 5), 4 ** 3 + 4 ** 2 + 4 + 1)

    def test_corrupted_frame_fails(self):
        X, fr = example()
        y0, y1 = Form.variable(fr.field, 3, 0), Form.variable(fr.field, 3, 1)
        bad = replace(fr, q1=fr.q1 + y0 * y1)
        report = verify_ij_identity(X, bad, [1, 2])
        self.assertFalse(report.passed)
        self.assertEqual(report.rows[0].lhs, 19)
        self.assertEqual(report.rows[0].rhs, 23)
