"""
Tests for the quadrics app.

Tests cover:
- Polar forms and smoothness, including characteristic 2
- Exhaustive generator enumeration
- The two-family parity law
"""
from django.test import SimpleTestCase, override_settings

from conicbundle.exceptions import (
    DimensionMismatchError,
    EnumerationBudgetError,
    NonSmoothQuadricError,
    OddDimensionError,
)
from field import linalg
from field.services import make_field

from .generators import (
    QuadraticSpace,
    enumerate_generators,
    hyperbolic_generator_count,
    intersection_dimension,
    is_totally_singular,
    polar_and_smoothness,
    singular_points,
    verify_generator_parity,
)
from .services import build_quadratic_space, generator_parity, parse_quadratic_space


class PolarFormTests(SimpleTestCase):
    def setUp(self):
        self.F2 = make_field(2, 1)

    def test_hyperbolic_plane_pair(self):
        Q = parse_quadratic_space("0,1,0,0,0,0,0,0,1,0", self.F2)
        _, smooth = polar_and_smoothness(Q)
        self.assertTrue(smooth)

    def test_square_is_not_smooth_in_char2(self):
        Q = QuadraticSpace.from_upper_triangular(self.F2, [1, 0, 0])
        b, smooth = polar_and_smoothness(Q)
        self.assertEqual(b, [[0, 0], [0, 0]])
        self.assertFalse(smooth)
        with self.assertRaises(NonSmoothQuadricError):
            enumerate_generators(Q)

    def test_anisotropic_binary_form(self):
        Q = QuadraticSpace.from_upper_triangular(self.F2, [1, 1, 1])
        _, smooth = polar_and_smoothness(Q)
        self.assertTrue(smooth)
        self.assertEqual(enumerate_generators(Q), [])

    def test_polar_is_alternating_in_char2(self):
        F4 = make_field(2, 2)
        Q = parse_quadratic_space("1,t,1,0,t,1+t,1,0,1,t", F4)
        b = Q.polar_matrix()
        self.assertTrue(all(b[i][i] == 0 for i in range(4)))
        for u in linalg.projective_points(F4, 3):
            for v in ((1, 0, 0, 0), (0, 1, 2, 3)):
                self.assertEqual(Q.polar(u, v), linalg.matvec(F4, [list(u)], linalg.matvec(F4, b, list(v)))[0])

    def test_scaling(self):
        for F in (make_field(2, 2), make_field(3, 1)):
            Q = QuadraticSpace.hyperbolic(F, 2)
            v = [1, 2 % F.q, 1, 1]
            for lam in F.raw_elements():
                scaled = [F.mul(lam, x) for x in v]
                self.assertEqual(Q.evaluate(scaled), F.mul(F.mul(lam, lam), Q.evaluate(v)))

    def test_odd_dimension(self):
        Q = QuadraticSpace.from_upper_triangular(self.F2, [1, 1, 0, 1, 1, 1])
        with self.assertRaises(OddDimensionError):
            polar_and_smoothness(Q)

    def test_bad_triangle(self):
        with self.assertRaises(DimensionMismatchError):
            QuadraticSpace.from_upper_triangular(self.F2, [1, 0])

    def test_elliptic_is_smooth(self):
        for F in (self.F2, make_field(3, 1)):
            _, smooth = polar_and_smoothness(QuadraticSpace.elliptic(F, 2))
            self.assertTrue(smooth)


class GeneratorTests(SimpleTestCase):
    CASES = ((1, 2), (2, 2), (3, 2), (2, 3))

    def test_counts_match_product_formula(self):
        expected = {(1, 2): 2, (2, 2): 6, (3, 2): 30, (2, 3): 8}
        for n, q in self.CASES:
            gens = enumerate_generators(QuadraticSpace.hyperbolic(make_field(q, 1), n))
            self.assertEqual(len(gens), expected[(n, q)])
            self.assertEqual(len(gens), hyperbolic_generator_count(q, n))

    def test_points_of_the_hyperbolic_line(self):
        gens = enumerate_generators(QuadraticSpace.hyperbolic(make_field(2, 1), 1))
        self.assertEqual([g.rows for g in gens], [((0, 1),), ((1, 0),)])

    def test_totally_singular_and_sorted(self):
        F = make_field(2, 1)
        Q = QuadraticSpace.hyperbolic(F, 3)
        gens = enumerate_generators(Q)
        self.assertEqual([g.rows for g in gens], sorted(g.rows for g in gens))
        for g in gens:
            self.assertEqual(g.dimension, 2)
            self.assertTrue(is_totally_singular(Q, g.rows))

    def test_elliptic_has_no_generators(self):
        self.assertEqual(enumerate_generators(QuadraticSpace.elliptic(make_field(2, 1), 2)), [])

    @override_settings(CONICBUNDLE_LIMITS={"QUADRIC_MAX_DIMENSION": 4})
    def test_budget(self):
        with self.assertRaises(EnumerationBudgetError):
            enumerate_generators(QuadraticSpace.hyperbolic(make_field(2, 1), 3))


class ExtensionFieldQuadricTests(SimpleTestCase):
    def setUp(self):
        self.F4 = make_field(2, 2)

    def test_upper_triangle_keeps_encodings(self):
        Q = QuadraticSpace.from_upper_triangular(self.F4, [1, 1, 2])
        self.assertEqual(Q.coefficients, ((1, 1), (0, 2)))
        self.assertEqual(Q.as_upper_triangular(), ["1", "1", "t"])
        self.assertEqual(singular_points(Q), [])

    def test_elliptic_lines_are_anisotropic(self):
        for F in (self.F4, make_field(2, 3), make_field(3, 2)):
            Q = QuadraticSpace.elliptic(F, 1)
            self.assertTrue(polar_and_smoothness(Q)[1])
            self.assertEqual(singular_points(Q), [])

    def test_elliptic_quadric_point_counts(self):
        for F in (self.F4, make_field(3, 2)):
            Q = QuadraticSpace.elliptic(F, 2)
            self.assertEqual(len(singular_points(Q)), F.q ** 2 + 1)

    @override_settings(CONICBUNDLE_LIMITS={"QUADRIC_MAX_Q": 9})
    def test_elliptic_quadrics_have_no_generators(self):
        for F in (self.F4, make_field(2, 3), make_field(3, 2)):
            self.assertEqual(enumerate_generators(QuadraticSpace.elliptic(F, 2)), [])

    def test_hyperbolic_over_gf4(self):
        gens = enumerate_generators(QuadraticSpace.hyperbolic(self.F4, 2))
        self.assertEqual(len(gens), hyperbolic_generator_count(4, 2))
        report = verify_generator_parity(self.F4, gens)
        self.assertTrue(report.passed)
        self.assertEqual(report.class_sizes, (5, 5))


class ParityTests(SimpleTestCase):
    def test_two_equal_classes(self):
        sizes = {(1, 2): (1, 1), (2, 2): (3, 3), (3, 2): (15, 15), (2, 3): (4, 4)}
        for (n, q), expected in sizes.items():
            F = make_field(q, 1)
            report = verify_generator_parity(F, enumerate_generators(QuadraticSpace.hyperbolic(F, n)))
            self.assertTrue(report.passed, report.as_dict())
            self.assertEqual(report.class_sizes, expected)
            self.assertEqual(report.pairs_checked, sum(expected) ** 2)
            self.assertEqual(report.violations, ())

    def test_rulings_of_the_quadric_surface(self):
        F = make_field(2, 1)
        report = verify_generator_parity(F, enumerate_generators(QuadraticSpace.hyperbolic(F, 2)))
        for g in report.generators:
            for h in report.generators:
                d = intersection_dimension(F, g, h)
                if g == h:
                    self.assertEqual(d, 1)
                elif g.label == h.label:
                    self.assertEqual(d, -1)
                else:
                    self.assertEqual(d, 0)

    def test_two_points(self):
        F = make_field(2, 1)
        report = verify_generator_parity(F, enumerate_generators(QuadraticSpace.hyperbolic(F, 1)))
        g, h = report.generators
        self.assertNotEqual(g.label, h.label)
        self.assertEqual(intersection_dimension(F, g, h), -1)

    def test_threads_do_not_change_the_report(self):
        F = make_field(2, 1)
        gens = enumerate_generators(QuadraticSpace.hyperbolic(F, 3))
        self.assertEqual(verify_generator_parity(F, gens, threads=4).as_dict(),
                         verify_generator_parity(F, gens).as_dict())

    def test_summary(self):
        result = generator_parity(build_quadratic_space(make_field(2, 1), n=2))
        self.assertEqual(result["class_sizes"], [3, 3])
        self.assertTrue(result["pass"])
        self.assertEqual(result["generators"], 6)

    def test_empty(self):
        with self.assertLogs("quadrics.generators", level="WARNING"):
            report = verify_generator_parity(make_field(2, 1), [])
        self.assertFalse(report.passed)
