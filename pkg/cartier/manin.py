"""
Cartier-Manin matrix of a smooth plane quintic in characteristic 2.

On an affine chart with equation F(x, y) = sum F_ab x^a y^b, the regular
differentials have the basis

    w_kl = x^(k-1) y^(l-1) dx / F_y,    k, l >= 1, k + l <= 4,

and the Cartier operator sends w_kl to sum_(i,j) F_(2i-k, 2j-l)^(1/2) w_ij.
Indices outside the support of F contribute 0.
"""
import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Tuple

from conicbundle.exceptions import (
    ChartError,
    CharacteristicError,
    DimensionMismatchError,
    HomogeneityError,
    InputDataError,
)
from field import linalg
from field.galois import Field
from poly.forms import Form
from poly.groebner import projective_is_empty
from poly.services import jacobian_ideal

logger = logging.getLogger(__name__)

# (k, l) in this order indexes rows and columns.
BASIS: Tuple[Tuple[int, int], ...] = ((1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1))

# z = 1 first, then x and y swapped, then the other two charts.
CHART_ORDER: Tuple[Tuple[int, int, int], ...] = ((0, 1, 2), (1, 0, 2)) + tuple(
    c for c in permutations(range(3)) if c[2] != 2)

Chart = Tuple[int, int, int]


def parse_chart(text: str) -> Chart:
    """'0,1,2' names the coordinates playing x, y and z (z is set to 1)."""
    try:
        chart = tuple(int(part) for part in text.replace(" ", "").split(","))
    except ValueError:
        raise ChartError(f"cannot read chart {text!r}", {"chart": text})
    if sorted(chart) != [0, 1, 2]:
        raise ChartError("a chart is a permutation of 0,1,2", {"chart": text})
    return chart


def affine_table(H: Form, chart: Chart) -> Dict[Tuple[int, int], int]:
    """Coefficients F_ab of H with the chart's z set to 1."""
    F = H.field
    xi, yi, _ = chart
    table: Dict[Tuple[int, int], int] = {}
    for exp, c in H.terms.items():
        key = (exp[xi], exp[yi])
        table[key] = F.add(table.get(key, 0), c)
    return {k: v for k, v in table.items() if v}


def _y_derivative_vanishes(table: Dict[Tuple[int, int], int]) -> bool:
    """F_y is identically zero iff every y-exponent is even."""
    return all(b % 2 == 0 for (_, b) in table)


class PlaneQuintic:
    """A plane quintic H(y0, y1, y2) in characteristic 2 with a chosen chart."""

    def __init__(self, H: Form, chart: Optional[Chart] = None, check_smooth: bool = True):
        if H.field.p != 2:
            raise CharacteristicError(
                f"Cartier matrices are implemented in characteristic 2, not over {H.field}")
        if H.nvars != 3 or H.degree != 5 or not H.is_homogeneous:
            raise HomogeneityError("expected a homogeneous quintic in three variables",
                                   {"nvars": H.nvars, "degree": H.degree})
        if check_smooth and not projective_is_empty(jacobian_ideal(H)):
            raise InputDataError("the plane quintic is singular")
        self.form = H
        self.chart = self._select_chart(chart)
        self.table = affine_table(H, self.chart)

    @property
    def field(self) -> Field:
        return self.form.field

    def valid_charts(self) -> List[Chart]:
        return [c for c in CHART_ORDER if self._chart_ok(c)]

    def _chart_ok(self, chart: Chart) -> bool:
        table = affine_table(self.form, chart)
        return any(b > 0 for (_, b) in table) and not _y_derivative_vanishes(table)

    def _select_chart(self, chart: Optional[Chart]) -> Chart:
        if chart is not None:
            if not self._chart_ok(chart):
                raise ChartError(f"F_y vanishes identically on chart {chart}", {"chart": list(chart)})
            return chart
        for i, candidate in enumerate(CHART_ORDER):
            if self._chart_ok(candidate):
                if i:
                    logger.warning(f"chart {CHART_ORDER[0]} degenerates; using {candidate}")
                return candidate
        raise ChartError("no affine chart has F_y != 0")

    def coefficient(self, a: int, b: int) -> int:
        if a < 0 or b < 0:
            return 0
        return self.table.get((a, b), 0)

    def affine_form(self) -> Form:
        """F(x, y) as a form in two variables."""
        return Form(self.field, 2, dict(self.table))


@dataclass(frozen=True)
class CartierMatrix:
    field: Field
    rows: Tuple[Tuple[int, ...], ...]
    chart: Optional[Chart] = None

    def __post_init__(self):
        if len(self.rows) != len(BASIS) or any(len(r) != len(BASIS) for r in self.rows):
            raise DimensionMismatchError("a Cartier matrix here is 6x6")

    def entry(self, row: Tuple[int, int], col: Tuple[int, int]) -> int:
        return self.rows[BASIS.index(row)][BASIS.index(col)]

    def frobenius(self, times: int = 1) -> "CartierMatrix":
        F = self.field
        rows = self.rows
        for _ in range(times):
            rows = tuple(tuple(F.frobenius(x) for x in r) for r in rows)
        return CartierMatrix(F, rows, self.chart)

    def rank(self) -> int:
        return linalg.rank(self.field, self.rows)

    def as_dict(self) -> Dict:
        out = {
            "basis": [f"({k},{l})" for k, l in BASIS],
            "matrix": [[self.field.format(x) for x in r] for r in self.rows],
        }
        if self.chart is not None:
            out["chart"] = list(self.chart)
        return out


def cartier_matrix(C: PlaneQuintic) -> CartierMatrix:
    """M[(i,j),(k,l)] = F_(2i-k, 2j-l)^(1/2)."""
    F = C.field
    rows = tuple(
        tuple(F.sqrt(C.coefficient(2 * i - k, 2 * j - l)) for (k, l) in BASIS)
        for (i, j) in BASIS)
    logger.info(f"Cartier matrix over {F} on chart {C.chart}")
    return CartierMatrix(F, rows, C.chart)


def cartier_ranks(M: CartierMatrix, k: Optional[int] = None) -> Tuple[int, int]:
    """
    (p_rank, a_number) of the Cartier matrix.

    p_rank is the rank of M^(s^(g-1)) ... M^(s) M with s the entrywise
    squaring; a_number is g - rank(M).
    """
    F = M.field
    if k is not None and k != F.k:
        raise DimensionMismatchError(
            f"matrix entries live in GF(2^{F.k}), not GF(2^{k})", {"k": k})
    g = len(BASIS)
    product = [list(r) for r in M.rows]
    for i in range(1, g):
        product = linalg.matmul(F, M.frobenius(i).rows, product)
    p_rank = linalg.rank(F, product)
    a_number = g - M.rank()
    return p_rank, a_number
