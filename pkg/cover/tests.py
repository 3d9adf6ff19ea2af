"""
Tests for the cover app.

Tests cover:
- Fiber splitting against the brute-force conic point count
- Tower consistency of splitting
- Etaleness
- Curve and cover counts (vectorized vs scalar, thread determinism, budgets)
"""
import math
import random

from django.test import SimpleTestCase, override_settings

from conicbundle.exceptions import EnumerationBudgetError, NotEtaleError, PointNotOnDiscriminantError
from cubic.catalog import DEFAULT_LINES, resolve_cubic
from cubic.frames import discriminant_quintic, good_line_frame
from cubic.lines import LineInP4, lines_meeting
from cubic.threefold import CubicThreefold
from field import linalg
from field.services import embedding, extension, make_field
from poly.forms import Form

from .counting import count_curve_and_cover, count_plane_curve
from .fibers import (
    SplitType,
    conic_point_count,
    discriminant_value,
    expected_point_count,
    fiber_conic,
    fiber_splitting,
)
from .services import is_etale


def frame_for(name, field):
    X = resolve_cubic(name, field)
    return good_line_frame(X, LineInP4.parse(DEFAULT_LINES[name], field))


def random_frame(field, seed):
    """A cubic with L_i = x_i and random Q0, Q1, R over ``field``."""
    rng = random.Random(seed)
    x = [Form.variable(field, 5, i) for i in range(5)]

    def random_form(degree):
        terms = {}
        for e0 in range(degree + 1):
            for e1 in range(degree + 1 - e0):
                terms[(e0, e1, degree - e0 - e1, 0, 0)] = rng.randrange(field.q)
        return Form(field, 5, terms)

    f = (x[3] ** 2 * x[0] + x[3] * x[4] * x[1] + x[4] ** 2 * x[2]
         + x[3] * random_form(2) + x[4] * random_form(2) + random_form(3))
    line = LineInP4(field, [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    return good_line_frame(CubicThreefold(f), line)


def points_on_curve(fr, E):
    embed = None if E == fr.field else embedding(fr.field, E)
    for y in linalg.projective_points(E, 2):
        co = fr.fiber_coefficients_raw(list(y), E if embed else None, embed)
        if discriminant_value(E, co) == 0:
            yield y, co


# =============================================================================
# FIBER SPLITTING
# =============================================================================

class FiberSplittingTests(SimpleTestCase):
    def setUp(self):
        self.F2 = make_field(2, 1)
        self.fr = frame_for("good-line-example", self.F2)

    def test_example_fibers_over_gf2(self):
        expected = {
            (1, 0, 0): SplitType.SPLIT,
            (0, 0, 1): SplitType.SPLIT,
            (1, 0, 1): SplitType.SPLIT,
            (1, 1, 1): SplitType.NONSPLIT,
        }
        found = {tuple(y): fiber_splitting(self.fr, list(y))
                 for y, _ in points_on_curve(self.fr, self.F2)}
        self.assertEqual(found, expected)

    def test_point_off_curve(self):
        with self.assertRaises(PointNotOnDiscriminantError):
            fiber_splitting(self.fr, [0, 1, 0])

    def test_extension_point(self):
        F4 = make_field(2, 2)
        y = [F4.one, F4.zero, F4.zero]
        self.assertEqual(fiber_splitting(self.fr, y), SplitType.SPLIT)

    def test_raw_points_over_a_gf4_frame(self):
        F4 = make_field(2, 2)
        fr4 = frame_for("good-line-example", F4)
        for y in linalg.projective_points(F4, 2):
            raw = fiber_conic(fr4, list(y))
            wrapped = fiber_conic(fr4, [F4.wrap(v) for v in y])
            self.assertEqual(raw.point, tuple(y))
            self.assertEqual(raw, wrapped)

    def test_oracle_char2(self):
        for fr in (self.fr, random_frame(self.F2, 1), random_frame(self.F2, 2),
                   frame_for("double-line-witness", self.F2)):
            for m in (1, 2):
                E = extension(self.F2, m)
                for y, co in points_on_curve(fr, E):
                    kind = fiber_conic(fr, [E.wrap(v) for v in y]).split_type()
                    self.assertEqual(conic_point_count(E, co), expected_point_count(kind, E.q))

    def test_oracle_odd_characteristic(self):
        for p, seed in ((3, 4), (3, 5), (5, 6)):
            F = make_field(p, 1)
            fr = random_frame(F, seed)
            for m in (1, 2):
                E = extension(F, m)
                for y, co in points_on_curve(fr, E):
                    kind = fiber_conic(fr, [E.wrap(v) for v in y]).split_type()
                    self.assertEqual(conic_point_count(E, co), expected_point_count(kind, E.q))

    def test_double_line_witness(self):
        fr = frame_for("double-line-witness", self.F2)
        self.assertEqual(fiber_splitting(fr, [0, 0, 1]), SplitType.DOUBLE_LINE)

    def test_tower_consistency(self):
        for fr in (self.fr, random_frame(self.F2, 7)):
            for m in (1, 2):
                E = extension(self.F2, m)
                E2 = extension(self.F2, 2 * m)
                phi = embedding(E, E2)
                for y, _ in points_on_curve(fr, E):
                    kind = fiber_splitting(fr, [E.wrap(v) for v in y])
                    lifted = fiber_splitting(fr, [E2.wrap(phi(v)) for v in y])
                    if kind == SplitType.DOUBLE_LINE:
                        self.assertEqual(lifted, SplitType.DOUBLE_LINE)
                    else:
                        self.assertEqual(lifted, SplitType.SPLIT)


# =============================================================================
# ETALENESS
# =============================================================================

class EtaleTests(SimpleTestCase):
    def test_example_is_etale(self):
        self.assertTrue(is_etale(frame_for("good-line-example", make_field(2, 1))))

    def test_witness_is_not_etale(self):
        fr = frame_for("double-line-witness", make_field(2, 1))
        self.assertFalse(is_etale(fr))
        with self.assertRaises(NotEtaleError):
            count_curve_and_cover(fr, 1)


# =============================================================================
# COUNTS
# =============================================================================

class CountTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.F2 = make_field(2, 1)
        cls.fr = frame_for("good-line-example", cls.F2)
        cls.table = count_curve_and_cover(cls.fr, 6)

    def test_first_row(self):
        row = self.table.row(1)
        self.assertEqual((row.curve, row.cover), (4, 6))
        self.assertEqual(self.table.as_dict()["counts"][0], {"m": 1, "N": 4, "Ntilde": 6})
        self.assertEqual(self.table.as_dict()["q"], 2)

    def test_weil_interval_and_parity(self):
        for row in self.table.rows:
            qm = 2 ** row.m
            self.assertLessEqual(abs(row.curve - (qm + 1)), 12 * math.sqrt(qm))
            self.assertEqual(row.cover % 2, 0)
            self.assertTrue(0 <= row.cover <= 2 * row.curve)
            self.assertEqual(row.double_lines, 0)

    def test_scalar_and_vectorized_agree(self):
        scalar = count_curve_and_cover(self.fr, 4, vectorized=False)
        self.assertEqual(scalar.rows, self.table.rows[:4])

    def test_threads_do_not_change_counts(self):
        threaded = count_curve_and_cover(self.fr, 6, threads=4, chunk=97)
        self.assertEqual(threaded.rows, self.table.rows)

    def test_curve_counts_match_discriminant(self):
        h = discriminant_quintic(self.fr)
        self.assertEqual(count_plane_curve(h, 6), self.table.curve_counts())

    def test_cover_counts_lines_in_fibers(self):
        """Rational lines meeting l (other than l) are the points of C~."""
        X = resolve_cubic("good-line-example", self.F2)
        line = LineInP4.parse(DEFAULT_LINES["good-line-example"], self.F2)
        self.assertEqual(len(lines_meeting(X, line)), self.table.row(1).cover)
        self.assertEqual(len(lines_meeting(X, line, make_field(2, 2))), self.table.row(2).cover)

    def test_odd_characteristic_counts(self):
        F3 = make_field(3, 1)
        fr = random_frame(F3, 9)
        table = count_curve_and_cover(fr, 2, require_etale=False)
        for m, row in enumerate(table.rows, start=1):
            E = extension(F3, m)
            curve = sum(1 for _ in points_on_curve(fr, E))
            self.assertEqual(row.curve, curve)
            self.assertEqual(row.cover % 2, 0)

    @override_settings(CONICBUNDLE_LIMITS={"COVER_MAX_FIELD": 16})
    def test_budget(self):
        with self.assertRaises(EnumerationBudgetError):
            count_curve_and_cover(self.fr, 5)
