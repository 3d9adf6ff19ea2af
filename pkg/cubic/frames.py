"""
Good-line frames, the discriminant quintic and line classification.

For a line l on X, coordinates are chosen so that l = V(x0, x1, x2) and

    f = x3^2*L0 + x3*x4*L1 + x4^2*L2 + x3*Q0 + x4*Q1 + R

with L_i linear, Q_j quadratic and R cubic in (x0, x1, x2). When the L_i are
independent a further change on (x0, x1, x2) makes L_i = x_i; projecting from
l then exhibits X (blown up along l) as a conic bundle over P^2 with fiber

    G = y0*u^2 + y1*u*v + y2*v^2 + Q0(y)*u*t + Q1(y)*v*t + R(y)*t^2.
"""
import enum
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from conicbundle.exceptions import InF0Error, InvariantBreach, NotOnCubicError, SingularMatrixError
from field import linalg
from field.galois import Field
from poly.forms import Form
from poly.groebner import Ideal, projective_is_empty
from poly.services import jacobian_ideal

from .lines import LineInP4, contains_line
from .threefold import CubicThreefold

logger = logging.getLogger(__name__)

# Exponents of (x3, x4) carrying L0, L1, L2.
QUADRATIC_KEYS = ((2, 0), (1, 1), (0, 2))


class LineTag(str, enum.Enum):
    GOOD = "Good"
    IN_F0 = "InF0"
    NOT_GOOD = "NotGood"


class NotGoodReason(str, enum.Enum):
    SINGULAR_DISCRIMINANT = "SingularDiscriminant"
    DOUBLE_LINE_FIBER = "DoubleLineFiber"


@dataclass(frozen=True)
class GoodLineFrame:
    """Normalized data of a line l on X with independent L_i."""

    cubic: CubicThreefold
    line: LineInP4
    matrix: Tuple[Tuple[int, ...], ...]
    q0: Form
    q1: Form
    r: Form

    @property
    def field(self) -> Field:
        return self.cubic.field

    def normalized_form(self) -> Form:
        """f o M, computed from the cubic."""
        return self.cubic.form.substitute_linear(self.matrix)

    def reassemble(self) -> Form:
        """x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*Q0 + x4*Q1 + R in x0..x4."""
        F = self.field
        x = [Form.variable(F, 5, i) for i in range(5)]
        lift = [0, 1, 2]
        return (x[3] ** 2 * x[0] + x[3] * x[4] * x[1] + x[4] ** 2 * x[2]
                + x[3] * self.q0.embed_variables(5, lift)
                + x[4] * self.q1.embed_variables(5, lift)
                + self.r.embed_variables(5, lift))

    def fiber_coefficients_raw(self, y, target: Optional[Field] = None, embed=None
                               ) -> Tuple[int, int, int, int, int, int]:
        """(y0, y1, y2, Q0(y), Q1(y), R(y)) at a raw point of P^2."""
        return (y[0], y[1], y[2],
                self.q0.evaluate_raw(y, target, embed),
                self.q1.evaluate_raw(y, target, embed),
                self.r.evaluate_raw(y, target, embed))

    def as_dict(self) -> Dict:
        F = self.field
        return {
            "matrix": [[F.format(x) for x in row] for row in self.matrix],
            "Q0": str(self.q0.format(["y0", "y1", "y2"])),
            "Q1": str(self.q1.format(["y0", "y1", "y2"])),
            "R": str(self.r.format(["y0", "y1", "y2"])),
        }


@dataclass(frozen=True)
class LineClassification:
    tag: LineTag
    reason: Optional[NotGoodReason] = None
    frame: Optional[GoodLineFrame] = None

    @property
    def is_good(self) -> bool:
        return self.tag == LineTag.GOOD

    def label(self) -> str:
        if self.reason is not None:
            return f"{self.tag.value}({self.reason.value})"
        return self.tag.value

    def as_dict(self) -> Dict:
        data = {"class": self.tag.value}
        if self.reason is not None:
            data["reason"] = self.reason.value
        return data

    def __eq__(self, other) -> bool:
        if not isinstance(other, LineClassification):
            return NotImplemented
        return self.tag == other.tag and self.reason == other.reason

    def __hash__(self) -> int:
        return hash((self.tag, self.reason))


# ---------- frames ----------

def _completion(field: Field, rows) -> List[List[int]]:
    """Standard vectors, in index order, extending ``rows`` to a basis of F^5."""
    span = [list(r) for r in rows]
    chosen = []
    for i in range(5):
        e = [1 if k == i else 0 for k in range(5)]
        if linalg.rank(field, span + [e]) > len(span):
            span.append(e)
            chosen.append(e)
        if len(chosen) == 3:
            break
    return chosen


def good_line_frame(X: CubicThreefold, line: LineInP4) -> GoodLineFrame:
    """
    Normalize (X, l): l goes to V(x0, x1, x2), then (L0, L1, L2) to (x0, x1, x2).

    Raises:
        NotOnCubicError: l is not contained in X.
        InF0Error: L0, L1, L2 are linearly dependent.
    """
    F = X.field
    if line.field != F:
        raise NotOnCubicError(f"line over {line.field} for a cubic over {F}")
    if not contains_line(X, line):
        raise NotOnCubicError(f"line {line} is not contained in the cubic",
                              {"line": line.format()})
    columns = _completion(F, line.rows) + [list(r) for r in line.rows]
    m0 = linalg.transpose(columns)
    f1 = X.form.substitute_linear(m0)
    parts = f1.split_by((3, 4))

    lam = []
    for key in QUADRATIC_KEYS:
        coefficient = parts.get(key, Form.zero(F, 3))
        lam.append([coefficient.terms.get(tuple(1 if k == j else 0 for k in range(3)), 0)
                    for j in range(3)])
    try:
        lam_inv = linalg.inverse(F, lam)
    except SingularMatrixError:
        raise InF0Error(f"L0, L1, L2 are dependent for line {line}",
                        {"line": line.format()}) from None

    block = [[lam_inv[i][j] if i < 3 and j < 3 else (1 if i == j else 0)
              for j in range(5)] for i in range(5)]
    matrix = linalg.matmul(F, m0, block)
    normal = X.form.substitute_linear(matrix)
    parts = normal.split_by((3, 4))
    zero3 = Form.zero(F, 3)
    frame = GoodLineFrame(
        cubic=X,
        line=line,
        matrix=tuple(tuple(row) for row in matrix),
        q0=parts.get((1, 0), zero3),
        q1=parts.get((0, 1), zero3),
        r=parts.get((0, 0), zero3),
    )
    if frame.reassemble() != normal:
        raise InvariantBreach("frame does not reassemble the normalized cubic",
                              {"line": line.format()})
    logger.debug(f"Frame for {line}: Q0={frame.q0}, Q1={frame.q1}, R={frame.r}")
    return frame


# ---------- discriminant and double-line locus ----------

def _y(F: Field) -> List[Form]:
    return [Form.variable(F, 3, i) for i in range(3)]


def discriminant_quintic(fr: GoodLineFrame) -> Form:
    """
    H = y0*Q1^2 + y1^2*R - y1*Q0*Q1 + y2*Q0^2 - 4*y0*y2*R.

    This is -4 times the determinant of the symmetric matrix of the fiber
    conic; in characteristic 2 it is y0*Q1^2 + y1^2*R + y1*Q0*Q1 + y2*Q0^2.
    """
    F = fr.field
    y0, y1, y2 = _y(F)
    q0, q1, r = fr.q0, fr.q1, fr.r
    h = y0 * q1 ** 2 + y1 ** 2 * r - y1 * q0 * q1 + y2 * q0 ** 2
    if F.p != 2:
        h = h - (y0 * y2 * r).scale(F.scalar(4))
    return h


def double_line_ideal(fr: GoodLineFrame) -> Ideal:
    """
    Points of P^2 whose fiber conic is a double line.

    In characteristic 2 this is V(y1, Q0, Q1). Otherwise it is the vanishing
    of H and of every 2x2 minor of the conic matrix 2S, i.e. the adjugate.
    """
    F = fr.field
    y0, y1, y2 = _y(F)
    q0, q1, r = fr.q0, fr.q1, fr.r
    if F.p == 2:
        gens = [y1, q0, q1]
    else:
        two, four = F.scalar(2), F.scalar(4)
        gens = [
            discriminant_quintic(fr),
            (y2 * r).scale(four) - q1 ** 2,
            (y0 * r).scale(four) - q0 ** 2,
            (y0 * y2).scale(four) - y1 ** 2,
            q0 * q1 - (y1 * r).scale(two),
            y1 * q1 - (y2 * q0).scale(two),
            y1 * q0 - (y0 * q1).scale(two),
        ]
    return Ideal([g for g in gens if not g.is_zero()], F, 3)


def has_double_line_fibers(fr: GoodLineFrame, threads: Optional[int] = None) -> bool:
    ideal = double_line_ideal(fr)
    if not ideal.generators:
        return True
    return not projective_is_empty(ideal, threads)


def discriminant_is_smooth(fr: GoodLineFrame, threads: Optional[int] = None) -> bool:
    return projective_is_empty(jacobian_ideal(discriminant_quintic(fr)), threads)


def classify_line(X: CubicThreefold, line: LineInP4,
                  threads: Optional[int] = None) -> LineClassification:
    """
    InF0 when the L_i are dependent; otherwise Good iff the discriminant is
    smooth and no fiber is a double line, else NotGood with the first failing
    reason (double-line fibers are reported before a singular discriminant).
    """
    try:
        fr = good_line_frame(X, line)
    except InF0Error:
        logger.info(f"Line {line} lies in F0")
        return LineClassification(LineTag.IN_F0)
    if has_double_line_fibers(fr, threads):
        result = LineClassification(LineTag.NOT_GOOD, NotGoodReason.DOUBLE_LINE_FIBER, fr)
    elif not discriminant_is_smooth(fr, threads):
        result = LineClassification(LineTag.NOT_GOOD, NotGoodReason.SINGULAR_DISCRIMINANT, fr)
    else:
        result = LineClassification(LineTag.GOOD, None, fr)
    logger.info(f"Line {line} classified {result.label()}")
    return result
