"""
Tests for the field app.

Tests cover:
- Field construction and default moduli
- Element arithmetic, Frobenius, trace and square roots (exhaustive on small fields)
- Artin-Schreier solving
- Subfield embeddings and literals
- Linear algebra and vectorized kernels
"""
import numpy as np
from django.test import SimpleTestCase, override_settings

from conicbundle.exceptions import (
    CharacteristicError,
    FieldConstructionError,
    FieldZeroDivisionError,
    FormParseError,
    MixedFieldError,
    SingularMatrixError,
)

from . import linalg
from .literals import parse_element, parse_field_literal
from .services import (
    artin_schreier_solve,
    embedding,
    extension,
    field_arith,
    frobenius_trace,
    make_field,
    smallest_irreducible,
    sqrt_char2,
)
from .vectorized import projective_chunks, vector_field

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (5, 1), (7, 2)]


# =============================================================================
# CONSTRUCTION
# =============================================================================

class FieldConstructionTests(SimpleTestCase):
    def test_prime_field(self):
        F = make_field(2, 1)
        self.assertEqual(F.q, 2)
        self.assertEqual([x.value for x in F.elements()], [0, 1])

    def test_gf4_default_modulus(self):
        self.assertEqual(make_field(2, 2).modulus, (1, 1, 1))

    def test_gf8_default_modulus_is_t3_t_1(self):
        self.assertEqual(smallest_irreducible(2, 3), (1, 1, 0, 1))

    def test_gf2048_default_modulus(self):
        """Smallest degree-11 irreducible over GF(2) is t^11 + t^2 + 1."""
        F = make_field(2, 11)
        self.assertEqual(F.q, 2048)
        expected = [0] * 12
        expected[0] = expected[2] = expected[11] = 1
        self.assertEqual(F.modulus, tuple(expected))

    def test_deterministic_construction(self):
        self.assertEqual(make_field(2, 7).modulus, make_field(2, 7).modulus)
        self.assertIs(make_field(3, 3), make_field(3, 3))

    def test_reducible_modulus_rejected(self):
        with self.assertRaises(FieldConstructionError):
            make_field(2, 2, [1, 0, 1])

    def test_non_prime_rejected(self):
        with self.assertRaises(FieldConstructionError):
            make_field(4, 1)

    def test_non_monic_rejected(self):
        with self.assertRaises(FieldConstructionError):
            make_field(3, 2, [1, 0, 2])

    def test_size_budget(self):
        with self.assertRaises(FieldConstructionError):
            make_field(2, 65)

    @override_settings(CONICBUNDLE_LIMITS={"FIELD_MAX_CARDINALITY": 16})
    def test_size_budget_follows_settings(self):
        with self.assertRaises(FieldConstructionError):
            make_field(2, 5)

    def test_large_field_without_tables(self):
        F = make_field(2, 20)
        self.assertFalse(F.has_tables)
        a = F.gen ** 12345
        self.assertEqual(a * a.inverse(), F.one)
        self.assertEqual(a ** F.q, a)


# =============================================================================
# ARITHMETIC
# =============================================================================

class FieldArithmeticTests(SimpleTestCase):
    def setUp(self):
        self.F4 = make_field(2, 2)
        self.g = self.F4.gen

    def test_gf4_square_of_generator(self):
        self.assertEqual(field_arith("mul", self.g, self.g), self.g + 1)

    def test_gf4_inverse(self):
        self.assertEqual(field_arith("inv", self.g), self.g + 1)

    def test_gf8_order_divides_seven(self):
        F8 = make_field(2, 3)
        for a in F8.elements():
            if a:
                self.assertEqual(field_arith("pow", a, 7), F8.one)

    def test_inverse_of_zero(self):
        with self.assertRaises(FieldZeroDivisionError):
            field_arith("inv", self.F4.zero)

    def test_mixed_fields(self):
        with self.assertRaises(MixedFieldError):
            field_arith("add", self.g, make_field(2, 3).gen)

    def test_raw_keeps_encodings(self):
        self.assertEqual([self.F4.raw(v) for v in range(4)], [0, 1, 2, 3])
        self.assertEqual(self.F4.raw(self.g), 2)
        self.assertEqual(self.F4.coerce(3), 1)
        self.assertEqual(make_field(3, 1).raw(-1), 2)
        for bad in (4, -1, 2.0):
            with self.assertRaises(MixedFieldError):
                self.F4.raw(bad)

    def test_field_axioms_exhaustive(self):
        for p, k in SMALL_FIELDS:
            F = make_field(p, k)
            elems = list(F.elements())
            for a in elems:
                self.assertEqual(a + (-a), F.zero)
                if a:
                    self.assertEqual(a * a.inverse(), F.one)
                self.assertEqual(a ** F.q, a)

    def test_distributivity_gf9(self):
        F = make_field(3, 2)
        elems = list(F.elements())
        for a in elems:
            for b in elems:
                for c in elems[:4]:
                    self.assertEqual(a * (b + c), a * b + a * c)

    def test_slow_and_table_multiplication_agree(self):
        F = make_field(2, 6)
        for a in range(F.q):
            for b in range(0, F.q, 7):
                self.assertEqual(F.mul(a, b), F._slow_mul(a, b))


class FrobeniusTraceTests(SimpleTestCase):
    def test_gf4_traces(self):
        F = make_field(2, 2)
        self.assertEqual(frobenius_trace(F.gen)[1], 1)
        self.assertEqual(frobenius_trace(F.one)[1], 0)

    def test_trace_zero_hyperplane_gf8(self):
        F = make_field(2, 3)
        self.assertEqual(sum(1 for a in F.elements() if frobenius_trace(a)[1] == 0), 4)

    def test_frobenius_is_automorphism(self):
        for p, k in SMALL_FIELDS:
            F = make_field(p, k)
            if F.q > 64:
                continue
            elems = list(F.elements())
            for a in elems:
                for b in elems:
                    self.assertEqual((a + b).frobenius(), a.frobenius() + b.frobenius())
                    self.assertEqual((a * b).frobenius(), a.frobenius() * b.frobenius())

    def test_trace_matches_definition(self):
        for p, k in SMALL_FIELDS:
            F = make_field(p, k)
            for a in F.elements():
                total, x = F.zero, a
                for _ in range(k):
                    total = total + x
                    x = x ** p
                self.assertEqual(total.value, a.trace())
                self.assertLess(a.trace(), p)


class SquareRootTests(SimpleTestCase):
    def test_sqrt_one(self):
        self.assertEqual(sqrt_char2(make_field(2, 3).one), make_field(2, 3).one)

    def test_gf4_sqrt_generator(self):
        F = make_field(2, 2)
        self.assertEqual(sqrt_char2(F.gen), F.gen + 1)

    def test_gf32_exhaustive(self):
        F = make_field(2, 5)
        roots = set()
        for a in F.elements():
            r = sqrt_char2(a)
            self.assertEqual(r * r, a)
            roots.add(r.value)
        self.assertEqual(len(roots), 32)

    def test_multiplicative(self):
        F = make_field(2, 6)
        elems = list(F.elements())
        for a in elems:
            for b in elems[::5]:
                self.assertEqual(sqrt_char2(a * b), sqrt_char2(a) * sqrt_char2(b))

    def test_wrong_characteristic(self):
        with self.assertRaises(CharacteristicError):
            sqrt_char2(make_field(3, 1).one)


class ArtinSchreierTests(SimpleTestCase):
    def test_gf2_unsolvable(self):
        self.assertIsNone(artin_schreier_solve(make_field(2, 1).one))

    def test_gf4_one(self):
        F = make_field(2, 2)
        z = artin_schreier_solve(F.one)
        self.assertIn(z, (F.gen, F.gen + 1))
        self.assertEqual(z * z + z, F.one)

    def test_exhaustive_small_fields(self):
        for k in range(1, 7):
            F = make_field(2, k)
            solved = 0
            for a in F.elements():
                z = artin_schreier_solve(a)
                if a.trace() == 1:
                    self.assertIsNone(z)
                    continue
                solved += 1
                self.assertEqual(z * z + z, a)
                self.assertEqual((z + 1) * (z + 1) + (z + 1), a)
            self.assertEqual(solved, F.q // 2)

    def test_large_field(self):
        F = make_field(2, 20)
        a = F.gen ** 777
        z = artin_schreier_solve(a)
        if a.trace() == 0:
            self.assertEqual(z * z + z, a)
        else:
            self.assertIsNone(z)


# =============================================================================
# EMBEDDINGS AND LITERALS
# =============================================================================

class EmbeddingTests(SimpleTestCase):
    def test_embedding_is_homomorphism(self):
        for k, m in [(2, 2), (2, 3), (3, 2), (1, 4)]:
            F = make_field(2, k)
            E = extension(F, m)
            phi = embedding(F, E)
            for a in F.elements():
                for b in F.elements():
                    self.assertEqual(phi.element(a * b), phi.element(a) * phi.element(b))
                    self.assertEqual(phi.element(a + b), phi.element(a) + phi.element(b))

    def test_embedding_odd_characteristic(self):
        F = make_field(3, 1)
        E = make_field(3, 2)
        phi = embedding(F, E)
        self.assertEqual(phi.element(F(2)), E(2))

    def test_not_a_subfield(self):
        with self.assertRaises(MixedFieldError):
            embedding(make_field(2, 2), make_field(2, 3))


class LiteralTests(SimpleTestCase):
    def test_field_literals(self):
        self.assertEqual(parse_field_literal("GF(2)").q, 2)
        self.assertEqual(parse_field_literal("GF(2^11)").q, 2048)
        self.assertEqual(parse_field_literal("GF(4)").k, 2)
        F = parse_field_literal("GF(2^3; mod=1,0,1,1)")
        self.assertEqual(F.modulus, (1, 0, 1, 1))

    def test_bad_literal(self):
        with self.assertRaises(FieldConstructionError):
            parse_field_literal("GF(6)")
        with self.assertRaises(FieldConstructionError):
            parse_field_literal("F_2")

    def test_element_round_trip(self):
        F = make_field(3, 3)
        for a in F.elements():
            self.assertEqual(parse_element(str(a), F), a)

    def test_element_notation(self):
        F = make_field(2, 3)
        self.assertEqual(str(F.gen + 1), "1+t")
        self.assertEqual(str(F.gen ** 2), "t^2")
        self.assertEqual(str(F.zero), "0")

    def test_element_parse_error(self):
        with self.assertRaises(FormParseError):
            parse_element("1+*t", make_field(2, 2))


# =============================================================================
# LINEAR ALGEBRA AND VECTORIZED KERNELS
# =============================================================================

class LinalgTests(SimpleTestCase):
    def test_inverse_round_trip(self):
        F = make_field(2, 2)
        a = [[1, 2, 0], [0, 1, 3], [2, 0, 1]]
        self.assertNotEqual(linalg.determinant(F, a), 0)
        inv = linalg.inverse(F, a)
        self.assertEqual(linalg.matmul(F, a, inv), linalg.identity(3))

    def test_singular(self):
        with self.assertRaises(SingularMatrixError):
            linalg.inverse(make_field(2, 1), [[1, 1], [1, 1]])

    def test_rref_canonical(self):
        F = make_field(2, 1)
        rows, pivots = linalg.rref(F, [[1, 1, 0], [1, 0, 1]])
        self.assertEqual(rows, [[1, 0, 1], [0, 1, 1]])
        self.assertEqual(pivots, [0, 1])

    def test_projective_points_count(self):
        F = make_field(2, 2)
        pts = list(linalg.projective_points(F, 2))
        self.assertEqual(len(pts), 21)
        self.assertEqual(len(set(pts)), 21)


class VectorFieldTests(SimpleTestCase):
    def test_matches_scalar_arithmetic(self):
        F = make_field(2, 5)
        vf = vector_field(F)
        a, b = np.meshgrid(np.arange(F.q), np.arange(F.q))
        a, b = a.ravel(), b.ravel()
        prod = vf.mul(a, b)
        for x, y, z in zip(a.tolist(), b.tolist(), prod.tolist()):
            self.assertEqual(F.mul(x, y), z)
        cubes = vf.power(np.arange(F.q), 3)
        self.assertEqual(cubes.tolist(), [F.pow(x, 3) for x in range(F.q)])
        self.assertEqual(vf.trace(np.arange(F.q)).tolist(), [F.trace(x) for x in range(F.q)])

    def test_chunks_match_scalar_enumeration(self):
        F = make_field(2, 2)
        scalar = list(linalg.projective_points(F, 2))
        chunked = []
        for coords in projective_chunks(F.q, 2, chunk=5):
            chunked.extend(zip(*(c.tolist() for c in coords)))
        self.assertEqual(chunked, scalar)

    def test_rejects_odd_characteristic(self):
        with self.assertRaises(CharacteristicError):
            vector_field(make_field(3, 1))
