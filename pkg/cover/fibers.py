"""
Fibers of the conic bundle over points of the discriminant curve.

Over a point y of C the fiber conic

    G = a*u^2 + b*u*v + c*v^2 + d*u*t + e*v*t + f*t^2,
    (a, b, c, d, e, f) = (y0, y1, y2, Q0(y), Q1(y), R(y)),

is degenerate. It is a double line, or a pair of distinct lines through a
rational singular point w; the pair is split when both lines are rational.
The test restricts G to a coordinate line missing w and asks whether the
resulting binary quadratic has rational roots: a trace condition in
characteristic 2, a square discriminant otherwise.
"""
import enum
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from conicbundle.exceptions import MixedFieldError, PointNotOnDiscriminantError
from cubic.frames import GoodLineFrame
from field import linalg
from field.galois import Field, FieldElement
from field.services import embedding

logger = logging.getLogger(__name__)

Coefficients = Tuple[int, int, int, int, int, int]


class SplitType(str, enum.Enum):
    SPLIT = "Split"
    NONSPLIT = "Nonsplit"
    DOUBLE_LINE = "DoubleLine"


@dataclass(frozen=True)
class FiberConic:
    """The fiber conic over a point of C, with raw coefficients in ``field``."""

    field: Field
    point: Tuple[int, int, int]
    coefficients: Coefficients

    def discriminant(self) -> int:
        return discriminant_value(self.field, self.coefficients)

    def split_type(self) -> SplitType:
        return split_type_raw(self.field, self.coefficients)


def discriminant_value(F: Field, co: Coefficients) -> int:
    """a*e^2 + b^2*f - b*d*e + c*d^2 - 4*a*c*f."""
    a, b, c, d, e, f = co
    h = F.add(F.mul(a, F.mul(e, e)), F.mul(F.mul(b, b), f))
    h = F.sub(h, F.mul(b, F.mul(d, e)))
    h = F.add(h, F.mul(c, F.mul(d, d)))
    if F.p != 2:
        h = F.sub(h, F.mul(F.scalar(4), F.mul(a, F.mul(c, f))))
    return h


def transversal_form(co: Coefficients, w: Sequence[int]) -> Tuple[int, int, int]:
    """
    Restriction of G to the first coordinate line {w_k = 0} missing w:
    u = 0 gives (c, e, f), v = 0 gives (a, d, f), t = 0 gives (a, b, c).
    """
    a, b, c, d, e, f = co
    if w[0]:
        return c, e, f
    if w[1]:
        return a, d, f
    return a, b, c


def _conic_matrix(F: Field, co: Coefficients):
    a, b, c, d, e, f = co
    two = F.scalar(2)
    return [[F.mul(two, a), b, d], [b, F.mul(two, c), e], [d, e, F.mul(two, f)]]


def _adjugate_row(F: Field, m, i: int):
    """Row i of the adjugate of a symmetric 3x3 matrix."""
    j, k = [x for x in range(3) if x != i]
    row = []
    for col in range(3):
        r, s = [x for x in range(3) if x != col]
        minor = F.sub(F.mul(m[j][r], m[k][s]), F.mul(m[j][s], m[k][r]))
        row.append(minor if (i + col) % 2 == 0 else F.neg(minor))
    return row


def split_type_raw(F: Field, co: Coefficients) -> SplitType:
    """Split type of a degenerate fiber conic (discriminant already zero)."""
    a, b, c, d, e, f = co
    if F.p == 2:
        if b == 0 and d == 0 and e == 0:
            return SplitType.DOUBLE_LINE
        alpha, beta, gamma = transversal_form(co, (e, d, b))
        if alpha == 0 or gamma == 0:
            return SplitType.SPLIT
        ratio = F.div(F.mul(alpha, gamma), F.mul(beta, beta))
        return SplitType.SPLIT if F.trace(ratio) == 0 else SplitType.NONSPLIT

    m = _conic_matrix(F, co)
    w = None
    for i in range(3):
        row = _adjugate_row(F, m, i)
        if any(row):
            w = row
            break
    if w is None:
        return SplitType.DOUBLE_LINE
    alpha, beta, gamma = transversal_form(co, w)
    disc = F.sub(F.mul(beta, beta), F.mul(F.scalar(4), F.mul(alpha, gamma)))
    return SplitType.SPLIT if F.is_square(disc) else SplitType.NONSPLIT


def fiber_conic(fr: GoodLineFrame, y: Sequence) -> FiberConic:
    """
    The fiber conic over ``y``; coordinates may lie in an extension of the
    frame's field (FieldElements) or be prime-field integers.
    """
    if len(y) != 3:
        raise PointNotOnDiscriminantError("a point of P^2 has 3 coordinates")
    target: Optional[Field] = None
    for x in y:
        if isinstance(x, FieldElement):
            if target is not None and x.field != target:
                raise MixedFieldError(f"point mixes {target} and {x.field}")
            target = x.field
    E = target or fr.field
    raw = tuple(E.raw(x) for x in y)
    if not any(raw):
        raise PointNotOnDiscriminantError("the zero vector is not a point")
    embed = None if E == fr.field else embedding(fr.field, E)
    co = fr.fiber_coefficients_raw(list(raw), E if embed else None, embed)
    return FiberConic(E, raw, co)


def fiber_splitting(fr: GoodLineFrame, y: Sequence) -> SplitType:
    """Split, Nonsplit or DoubleLine for the fiber over a point y of C."""
    conic = fiber_conic(fr, y)
    if conic.discriminant() != 0:
        raise PointNotOnDiscriminantError(
            "point does not lie on the discriminant curve",
            {"point": [conic.field.format(x) for x in conic.point]})
    return conic.split_type()


def conic_point_count(F: Field, co: Coefficients) -> int:
    """Rational points of the conic G in P^2(F), by enumeration."""
    a, b, c, d, e, f = co
    count = 0
    for u, v, t in linalg.projective_points(F, 2):
        value = 0
        for coef, x, z in ((a, u, u), (b, u, v), (c, v, v), (d, u, t), (e, v, t), (f, t, t)):
            if coef:
                value = F.add(value, F.mul(coef, F.mul(x, z)))
        if value == 0:
            count += 1
    return count


def expected_point_count(kind: SplitType, q: int) -> int:
    return {SplitType.SPLIT: 2 * q + 1, SplitType.NONSPLIT: 1,
            SplitType.DOUBLE_LINE: q + 1}[kind]
