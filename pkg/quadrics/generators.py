"""
Quadratic spaces of even dimension 2n over GF(q), their generators and the
two-family parity law.

A generator is a totally singular subspace of vector dimension n, i.e. a
projective (n-1)-plane on the quadric V(q) in P^(2n-1). Dimensions below are
projective, and the empty intersection has dimension -1.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Sequence, Tuple

from conicbundle.exceptions import (
    DimensionMismatchError,
    EnumerationBudgetError,
    InvariantBreach,
    NonSmoothQuadricError,
    OddDimensionError,
)
from conicbundle.limits import get_limit, resolve_threads
from field import linalg
from field.galois import Field

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[int, ...], ...]


class QuadraticSpace:
    """q(x) = sum_{i <= j} a_ij x_i x_j on GF(q)^d."""

    def __init__(self, field: Field, coefficients: Sequence[Sequence[int]]):
        d = len(coefficients)
        if any(len(row) != d for row in coefficients):
            raise DimensionMismatchError("quadratic form coefficients must be a square matrix")
        self.field = field
        self.dimension = d
        # Entries below the diagonal are ignored.
        self.coefficients: Rows = tuple(
            tuple(field.raw(coefficients[i][j]) if j >= i else 0 for j in range(d))
            for i in range(d))

    @classmethod
    def from_upper_triangular(cls, field: Field, values: Sequence) -> "QuadraticSpace":
        """Values a_00, a_01, ..., a_0(d-1), a_11, ... read row by row."""
        d = 0
        while d * (d + 1) // 2 < len(values):
            d += 1
        if d * (d + 1) // 2 != len(values):
            raise DimensionMismatchError(
                f"{len(values)} entries do not fill an upper triangle", {"entries": len(values)})
        rows = [[0] * d for _ in range(d)]
        it = iter(values)
        for i in range(d):
            for j in range(i, d):
                rows[i][j] = field.raw(next(it))
        return cls(field, rows)

    @classmethod
    def hyperbolic(cls, field: Field, n: int) -> "QuadraticSpace":
        """x0*x1 + x2*x3 + ... + x(2n-2)*x(2n-1)."""
        rows = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            rows[2 * i][2 * i + 1] = 1
        return cls(field, rows)

    @classmethod
    def elliptic(cls, field: Field, n: int) -> "QuadraticSpace":
        """The hyperbolic form on 2n-2 coordinates plus an anisotropic binary form."""
        rows = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n - 1):
            rows[2 * i][2 * i + 1] = 1
        a, b = 2 * n - 2, 2 * n - 1
        rows[a][a] = 1
        if field.p == 2:
            rows[a][b] = 1
            rows[b][b] = next(c for c in field.raw_elements() if field.trace(c) == 1)
        else:
            rows[b][b] = field.neg(next(c for c in field.raw_elements()
                                        if c and not field.is_square(c)))
        return cls(field, rows)

    @property
    def n(self) -> int:
        return self.dimension // 2

    def evaluate(self, v: Sequence[int]) -> int:
        F = self.field
        total = 0
        for i, row in enumerate(self.coefficients):
            if not v[i]:
                continue
            for j in range(i, self.dimension):
                if row[j] and v[j]:
                    total = F.add(total, F.mul(row[j], F.mul(v[i], v[j])))
        return total

    def polar_matrix(self) -> List[List[int]]:
        """Gram matrix of b(u, v) = q(u + v) - q(u) - q(v)."""
        F = self.field
        d = self.dimension
        b = [[0] * d for _ in range(d)]
        for i in range(d):
            b[i][i] = F.mul(F.scalar(2), self.coefficients[i][i])
            for j in range(i + 1, d):
                b[i][j] = b[j][i] = self.coefficients[i][j]
        return b

    def polar(self, u: Sequence[int], v: Sequence[int]) -> int:
        F = self.field
        return F.sub(F.sub(self.evaluate([F.add(x, y) for x, y in zip(u, v)]),
                           self.evaluate(u)), self.evaluate(v))

    def as_upper_triangular(self) -> List[str]:
        return [self.field.format(self.coefficients[i][j])
                for i in range(self.dimension) for j in range(i, self.dimension)]


def polar_and_smoothness(Q: QuadraticSpace) -> Tuple[List[List[int]], bool]:
    """The polar Gram matrix and whether V(q) is smooth (b nondegenerate)."""
    if Q.dimension % 2:
        raise OddDimensionError(
            f"quadratic space of odd dimension {Q.dimension}", {"dimension": Q.dimension})
    b = Q.polar_matrix()
    smooth = linalg.determinant(Q.field, b) != 0
    logger.info(f"quadric of dimension {Q.dimension} over {Q.field} smooth: {smooth}")
    return b, smooth


@dataclass(frozen=True)
class Generator:
    """A totally singular subspace in RREF, with its family label once classified."""

    rows: Rows
    label: Optional[int] = dataclass_field(default=None, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.rows) - 1

    def with_label(self, label: int) -> "Generator":
        return Generator(self.rows, label)

    def as_dict(self, field: Field) -> Dict:
        return {"rows": [[field.format(x) for x in r] for r in self.rows], "label": self.label}


def _canonical(F: Field, rows) -> Rows:
    reduced, _ = linalg.rref(F, rows)
    return tuple(tuple(r) for r in reduced)


def intersection_dimension(F: Field, g: Generator, h: Generator) -> int:
    """Projective dimension of g ∩ h."""
    joint = linalg.rank(F, list(g.rows) + list(h.rows))
    return len(g.rows) + len(h.rows) - joint - 1


def is_totally_singular(Q: QuadraticSpace, rows: Sequence[Sequence[int]]) -> bool:
    return all(Q.evaluate(v) == 0 for v in linalg.span_vectors(Q.field, rows))


def singular_points(Q: QuadraticSpace) -> List[Tuple[int, ...]]:
    return [v for v in linalg.projective_points(Q.field, Q.dimension - 1) if Q.evaluate(v) == 0]


def _check_budget(Q: QuadraticSpace) -> None:
    max_dim = get_limit("QUADRIC_MAX_DIMENSION")
    max_q = get_limit("QUADRIC_MAX_Q")
    if Q.dimension > max_dim or Q.field.q > max_q:
        raise EnumerationBudgetError(
            f"generator enumeration in dimension {Q.dimension} over GF({Q.field.q}) exceeds the budget",
            {"dimension": Q.dimension, "q": Q.field.q, "max_dimension": max_dim, "max_q": max_q})


def enumerate_generators(Q: QuadraticSpace) -> List[Generator]:
    """
    All generators of a smooth quadric, sorted by RREF.

    Totally singular flags are grown one singular point at a time: a point v
    extends W when q(v) = 0 and b(v, w) = 0 for every basis vector w of W.
    Each level is deduplicated on canonical RREF.
    """
    _, smooth = polar_and_smoothness(Q)
    _check_budget(Q)
    if not smooth:
        raise NonSmoothQuadricError("the quadric is singular", {"form": Q.as_upper_triangular()})
    F = Q.field
    b = Q.polar_matrix()
    points = singular_points(Q)

    level = {()}
    for size in range(Q.n):
        grown = set()
        for rows in level:
            polars = [linalg.matvec(F, b, list(w)) for w in rows]
            for v in points:
                if any(linalg.matvec(F, [list(v)], bw)[0] for bw in polars):
                    continue
                if rows and linalg.rank(F, list(rows) + [v]) == size:
                    continue
                grown.add(_canonical(F, list(rows) + [v]))
        level = grown
        logger.debug(f"{len(level)} totally singular subspaces of dimension {size + 1}")

    gens = [Generator(rows) for rows in sorted(level)]
    for g in gens:
        if not is_totally_singular(Q, g.rows):
            raise InvariantBreach("enumerated subspace is not totally singular",
                                  {"rows": [list(r) for r in g.rows]})
    logger.info(f"{len(gens)} generators of the quadric in P^{Q.dimension - 1}(GF({F.q}))")
    return gens


def hyperbolic_generator_count(q: int, n: int) -> int:
    """prod_{i=0}^{n-1} (1 + q^i)."""
    count = 1
    for i in range(n):
        count *= 1 + q ** i
    return count


@dataclass(frozen=True)
class ParityReport:
    generators: Tuple[Generator, ...]
    class_sizes: Tuple[int, ...]
    pairs_checked: int
    violations: Tuple[Tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return (len(self.class_sizes) == 2 and self.class_sizes[0] == self.class_sizes[1]
                and not self.violations)

    def as_dict(self) -> Dict:
        return {
            "generators": len(self.generators),
            "class_sizes": list(self.class_sizes),
            "pairs_checked": self.pairs_checked,
            "violations": [list(v) for v in self.violations],
            "pass": self.passed,
        }


def verify_generator_parity(field: Field, gens: Sequence[Generator],
                            threads: Optional[int] = None) -> ParityReport:
    """
    Label generators by dim(g0 ∩ h) - dim(g0) mod 2 relative to the first
    one, then check dim(g ∩ h) ≡ dim(g) + a + b (mod 2) on every ordered pair.
    """
    gens = list(gens)
    if not gens:
        logger.warning("no generators to classify")
        return ParityReport((), (), 0, ())
    g0 = gens[0]
    labelled = [h.with_label((intersection_dimension(field, g0, h) - g0.dimension) % 2)
                for h in gens]

    def check_row(i: int) -> List[Tuple[int, int]]:
        g = labelled[i]
        bad = []
        for j, h in enumerate(labelled):
            if (intersection_dimension(field, g, h) - g.dimension - g.label - h.label) % 2:
                bad.append((i, j))
        return bad

    workers = resolve_threads(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(check_row, range(len(labelled))))
    else:
        rows = [check_row(i) for i in range(len(labelled))]
    violations = tuple(v for row in rows for v in row)

    sizes = [0, 0]
    for g in labelled:
        sizes[g.label] += 1
    class_sizes = tuple(s for s in sizes if s)
    report = ParityReport(tuple(labelled), class_sizes, len(labelled) ** 2, violations)
    if not report.passed:
        logger.warning(f"parity check failed: classes {class_sizes}, {len(violations)} violations")
    return report
