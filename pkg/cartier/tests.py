"""
Tests for the cartier app.

Tests cover:
- Basis order and the entry rule on the Fermat quintic
- Ranks of trivial matrices
- Chart selection, fallback and chart independence
- Agreement of the p-rank with deg(L_C mod 2)
"""
from django.test import SimpleTestCase

from conicbundle.exceptions import ChartError, CharacteristicError, InputDataError
from cover.counting import count_plane_curve
from cubic.catalog import DEFAULT_LINES, resolve_cubic
from cubic.frames import discriminant_quintic, good_line_frame
from cubic.lines import LineInP4
from field.services import embedding, make_field
from poly.parser import parse_form
from zeta.lpoly import l_polynomial_from_counts, p_rank_from_l
from zeta.services import zeta_functions

from .manin import BASIS, CartierMatrix, PlaneQuintic, cartier_matrix, cartier_ranks, parse_chart
from .services import discriminant_cartier

Y = ["y0", "y1", "y2"]


def quintic(text, field):
    return parse_form(text, field, Y)


def example_frame():
    F = make_field(2, 1)
    X = resolve_cubic("good-line-example", F)
    return good_line_frame(X, LineInP4.parse(DEFAULT_LINES["good-line-example"], F))


class RankTests(SimpleTestCase):
    def setUp(self):
        self.F = make_field(2, 1)

    def test_basis(self):
        self.assertEqual(BASIS, ((1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)))

    def test_zero_matrix(self):
        M = CartierMatrix(self.F, tuple((0,) * 6 for _ in range(6)))
        self.assertEqual(cartier_ranks(M), (0, 6))

    def test_identity(self):
        for F in (self.F, make_field(2, 2)):
            M = CartierMatrix(F, tuple(tuple(int(i == j) for j in range(6)) for i in range(6)))
            self.assertEqual(cartier_ranks(M, F.k), (6, 0))

    def test_nilpotent_matrix(self):
        rows = [[0] * 6 for _ in range(6)]
        rows[0][1] = 1
        M = CartierMatrix(self.F, tuple(tuple(r) for r in rows))
        self.assertEqual(cartier_ranks(M), (0, 5))


class FermatQuinticTests(SimpleTestCase):
    def setUp(self):
        self.F = make_field(2, 1)
        self.H = quintic("y0^5 + y1^5 + y2^5", self.F)

    def test_entries(self):
        M = cartier_matrix(PlaneQuintic(self.H))
        ones = {(r, c) for r in BASIS for c in BASIS if M.entry(r, c)}
        self.assertEqual(ones, {((3, 1), (1, 2)), ((1, 3), (2, 1)), ((1, 1), (2, 2))})

    def test_ranks(self):
        M = cartier_matrix(PlaneQuintic(self.H))
        self.assertEqual(cartier_ranks(M), (0, 3))

    def test_ranks_after_base_change(self):
        F4 = make_field(2, 2)
        H4 = self.H.base_change(F4, embedding(self.F, F4))
        self.assertEqual(cartier_ranks(cartier_matrix(PlaneQuintic(H4))), (0, 3))

    def test_manin_agreement(self):
        L = l_polynomial_from_counts(2, 6, count_plane_curve(self.H, 6))
        self.assertEqual(p_rank_from_l(L, 2), 0)


class ChartTests(SimpleTestCase):
    def setUp(self):
        self.F = make_field(2, 1)
        # Only even powers of y1 on the default chart.
        self.H = quintic("y0^5 + y0*y1^4 + y2^5", self.F)

    def test_fallback(self):
        with self.assertLogs("cartier.manin", level="WARNING"):
            C = PlaneQuintic(self.H, check_smooth=False)
        self.assertEqual(C.chart, (1, 0, 2))

    def test_explicit_invalid_chart(self):
        with self.assertRaises(ChartError):
            PlaneQuintic(self.H, (0, 1, 2), check_smooth=False)

    def test_parse_chart(self):
        self.assertEqual(parse_chart("1, 0, 2"), (1, 0, 2))
        for bad in ("0,1", "0,0,2", "a,b,c"):
            with self.assertRaises(ChartError):
                parse_chart(bad)

    def test_odd_characteristic(self):
        with self.assertRaises(CharacteristicError):
            PlaneQuintic(quintic("y0^5 + y1^5 + y2^5", make_field(3, 1)))

    def test_singular(self):
        with self.assertRaises(InputDataError):
            PlaneQuintic(quintic("y0^5", self.F))


class DiscriminantCartierTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.frame = example_frame()
        cls.H = discriminant_quintic(cls.frame)
        cls.L = zeta_functions(cls.frame, 6, with_prym=False).curve

    def test_manin_agreement(self):
        result = discriminant_cartier(self.frame)
        self.assertEqual(result["p_rank"], p_rank_from_l(self.L, 2))
        self.assertEqual(len(result["matrix"]), 6)

    def test_rank_bounds(self):
        M = cartier_matrix(PlaneQuintic(self.H))
        p_rank, a_number = cartier_ranks(M)
        self.assertLessEqual(p_rank, M.rank())
        self.assertEqual(a_number, 6 - M.rank())

    def test_chart_independence(self):
        C = PlaneQuintic(self.H)
        charts = C.valid_charts()
        self.assertGreaterEqual(len(charts), 2)
        ranks = {cartier_ranks(cartier_matrix(PlaneQuintic(self.H, chart, check_smooth=False)))
                 for chart in charts}
        self.assertEqual(len(ranks), 1)
