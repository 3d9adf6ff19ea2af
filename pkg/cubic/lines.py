"""
Rational lines in P^4 and their enumeration on a cubic threefold.

A line is stored as the reduced row echelon form of a 2x5 spanning matrix,
so equal lines have equal matrices and sort stably. A line lies on X when the
binary cubic f(s*a + u*b) vanishes identically for a basis (a, b).
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, product
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from conicbundle.exceptions import DimensionMismatchError, EnumerationBudgetError, SingularMatrixError
from conicbundle.limits import get_limit, resolve_threads
from field import linalg
from field.galois import Field
from field.literals import parse_element
from field.services import embedding
from field.vectorized import DEFAULT_CHUNK, VectorField, vector_field
from poly.forms import Form

from .threefold import CubicThreefold

logger = logging.getLogger(__name__)

PIVOT_PAIRS: Tuple[Tuple[int, int], ...] = tuple(combinations(range(5), 2))


class LineInP4:
    """A line of P^4 over ``field`` in canonical RREF."""

    __slots__ = ("field", "rows", "pivots")

    def __init__(self, field: Field, rows: Sequence[Sequence]):
        raw = [[field.raw(x) for x in row] for row in rows]
        if any(len(row) != 5 for row in raw):
            raise DimensionMismatchError("line points need 5 coordinates")
        reduced, pivots = linalg.rref(field, raw)
        if len(pivots) != 2:
            raise SingularMatrixError("the given points do not span a line")
        self.field = field
        self.rows = (tuple(reduced[0]), tuple(reduced[1]))
        self.pivots = tuple(pivots)

    @classmethod
    def parse(cls, text: str, field: Field) -> "LineInP4":
        """Parse ``"a0,...,a4;b0,...,b4"`` (two spanning points)."""
        parts = [p for p in text.split(";") if p.strip()]
        if len(parts) != 2:
            raise DimensionMismatchError("a line is given by two points separated by ';'")
        rows = [[parse_element(c, field) for c in part.split(",")] for part in parts]
        return cls(field, rows)

    def sort_key(self) -> Tuple:
        return (self.pivots, self.rows)

    def __lt__(self, other: "LineInP4") -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other) -> bool:
        return (isinstance(other, LineInP4) and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.field, self.rows))

    def format(self) -> str:
        return ";".join(",".join(self.field.format(x) for x in row) for row in self.rows)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LineInP4({self.field}, {self.format()})"

    def points(self) -> Iterator[Tuple[int, ...]]:
        """The q+1 rational points, as raw coordinate tuples."""
        F = self.field
        a, b = self.rows
        for s, u in linalg.projective_points(F, 1):
            yield tuple(F.add(F.mul(s, x), F.mul(u, y)) for x, y in zip(a, b))

    def apply(self, matrix: Sequence[Sequence]) -> "LineInP4":
        """The image line {Mv : v on the line}."""
        m = [[self.field.raw(x) for x in row] for row in matrix]
        return LineInP4(self.field, [linalg.matvec(self.field, m, row) for row in self.rows])

    def meets(self, other: "LineInP4") -> bool:
        return linalg.rank(self.field, list(self.rows) + list(other.rows)) <= 3

    def base_change(self, target: Field, embed: Callable[[int], int]) -> "LineInP4":
        return LineInP4(target, [[embed(x) for x in row] for row in self.rows])


def restrict_to_line(form: Form, line: LineInP4) -> Form:
    """The binary form f(s*a + u*b) in variables (s, u)."""
    F = line.field
    a, b = line.rows
    images = [Form(F, 2, {(1, 0): x, (0, 1): y}) for x, y in zip(a, b)]
    return form.compose(images)


def contains_line(X: CubicThreefold, line: LineInP4) -> bool:
    return restrict_to_line(X.form, line).is_zero()


def gaussian_line_count(q: int) -> int:
    """Number of lines in P^4(GF(q))."""
    return ((q ** 5 - 1) * (q ** 4 - 1)) // ((q ** 2 - 1) * (q - 1))


def _free_positions(i: int, j: int) -> Tuple[List[int], List[int]]:
    return [k for k in range(i + 1, 5) if k != j], list(range(j + 1, 5))


def candidate_lines(field: Field) -> Iterator[LineInP4]:
    """Every line of P^4(field) in canonical order, one RREF per line."""
    for i, j in PIVOT_PAIRS:
        free_a, free_b = _free_positions(i, j)
        for values in product(range(field.q), repeat=len(free_a) + len(free_b)):
            a = [0] * 5
            b = [0] * 5
            a[i] = 1
            b[j] = 1
            for pos, v in zip(free_a, values[:len(free_a)]):
                a[pos] = v
            for pos, v in zip(free_b, values[len(free_a):]):
                b[pos] = v
            yield LineInP4(field, [a, b])


# ---------- vectorized containment (characteristic 2) ----------

def _binary_cubic_coefficients(vf: VectorField, terms, a, b) -> List[np.ndarray]:
    """Coefficients of s^3, s^2 u, s u^2, u^3 in f(s*a + u*b), entrywise."""
    shape = a[0].shape
    total = [np.zeros(shape, dtype=np.int64) for _ in range(4)]
    for c, exp in terms:
        poly = [vf.const(c, shape)]
        for k, e in enumerate(exp):
            for _ in range(e):
                new = [vf.mul(poly[0], a[k])]
                for d in range(1, len(poly)):
                    new.append(vf.mul(poly[d], a[k]) ^ vf.mul(poly[d - 1], b[k]))
                new.append(vf.mul(poly[-1], b[k]))
                poly = new
        for d in range(4):
            total[d] ^= poly[d]
    return total


def _scan_pivot_pair(X: CubicThreefold, pair: Tuple[int, int], vf: VectorField,
                     chunk: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    i, j = pair
    q = vf.q
    free_a, free_b = _free_positions(i, j)
    nfree = len(free_a) + len(free_b)
    total = q ** nfree
    terms = [(c, exp) for exp, c in X.form.iter_terms()]
    found = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        size = idx.shape[0]
        digits = []
        rest = idx
        for _ in range(nfree):
            rest, digit = np.divmod(rest, q)
            digits.append(digit)
        digits.reverse()
        zeros = np.zeros(size, dtype=np.int64)
        a = [zeros] * 5
        b = [zeros] * 5
        a[i] = np.ones(size, dtype=np.int64)
        b[j] = np.ones(size, dtype=np.int64)
        for pos, digit in zip(free_a, digits[:len(free_a)]):
            a[pos] = digit
        for pos, digit in zip(free_b, digits[len(free_a):]):
            b[pos] = digit
        coeffs = _binary_cubic_coefficients(vf, terms, a, b)
        mask = (coeffs[0] == 0) & (coeffs[1] == 0) & (coeffs[2] == 0) & (coeffs[3] == 0)
        for hit in np.nonzero(mask)[0].tolist():
            found.append((tuple(int(x[hit]) for x in a), tuple(int(x[hit]) for x in b)))
    return found


def enumerate_lines(X: CubicThreefold, field: Optional[Field] = None,
                    threads: Optional[int] = None, chunk: int = DEFAULT_CHUNK) -> List[LineInP4]:
    """
    All ``field``-rational lines on X, sorted by canonical RREF.

    Args:
        X: the cubic threefold.
        field: field of definition for the lines; an extension of X's field
            (defaults to X's field).
        threads: worker threads over pivot-pair partitions; output is identical
            for every value.
    """
    field = field or X.field
    Xe = X.base_change(field)
    q = field.q
    candidates = gaussian_line_count(q)
    if q > get_limit("LINES_MAX_Q") or candidates > get_limit("LINES_MAX_CANDIDATES"):
        raise EnumerationBudgetError(
            f"line enumeration over {field} exceeds the budget",
            {"q": q, "candidates": candidates, "max_q": get_limit("LINES_MAX_Q")})

    if field.p == 2 and (field.has_tables or q == 2):
        vf = vector_field(field)

        def scan(pair):
            return _scan_pivot_pair(Xe, pair, vf, chunk)

        workers = resolve_threads(threads)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(scan, PIVOT_PAIRS))
        else:
            parts = [scan(pair) for pair in PIVOT_PAIRS]
        lines = [LineInP4(field, [a, b]) for part in parts for a, b in part]
    else:
        lines = [line for line in candidate_lines(field) if contains_line(Xe, line)]
    lines.sort()
    logger.info(f"Found {len(lines)} {field}-rational lines among {candidates} candidates")
    return lines


def lines_meeting(X: CubicThreefold, line: LineInP4, field: Optional[Field] = None,
                  threads: Optional[int] = None) -> List[LineInP4]:
    """Rational lines of X other than ``line`` that meet it."""
    field = field or line.field
    if field != line.field:
        line = line.base_change(field, embedding(line.field, field))
    return [m for m in enumerate_lines(X, field, threads) if m != line and m.meets(line)]
