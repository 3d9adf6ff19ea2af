"""
Polynomial operations exposed to the other apps: parsing, evaluation,
Jacobian ideals, linear substitution and the Groebner entry points.
"""
import logging
from typing import Optional, Sequence

from conicbundle.exceptions import DimensionMismatchError, MixedFieldError, SingularMatrixError
from field import linalg
from field.galois import Field, FieldElement
from field.services import embedding

from .forms import Form
from .groebner import Ideal, groebner_basis, normal_form, projective_is_empty
from .parser import parse_form

logger = logging.getLogger(__name__)

__all__ = [
    "Ideal",
    "evaluate_form",
    "groebner_basis",
    "jacobian_ideal",
    "normal_form",
    "parse_form",
    "projective_is_empty",
    "raw_matrix",
    "substitute_linear",
]


def evaluate_form(f: Form, point: Sequence) -> FieldElement:
    """
    Evaluate ``f`` at ``point``. Coordinates may be FieldElements of an
    extension of f's field; coefficients are then mapped by the subfield
    embedding. Integers are read in the prime field.
    """
    if len(point) != f.nvars:
        raise DimensionMismatchError(
            f"point has {len(point)} coordinates, form has {f.nvars} variables")
    target: Optional[Field] = None
    for x in point:
        if isinstance(x, FieldElement):
            if target is not None and x.field != target:
                raise MixedFieldError(f"point mixes {target} and {x.field}")
            target = x.field
    target = target or f.field
    values = [target.raw(x) for x in point]
    if target == f.field:
        return FieldElement(target, f.evaluate_raw(values))
    phi = embedding(f.field, target)
    return FieldElement(target, f.evaluate_raw(values, target, phi))


def jacobian_ideal(f: Form) -> Ideal:
    """The ideal (f, df/dx_0, ..., df/dx_{n-1})."""
    return Ideal([f] + [f.partial(i) for i in range(f.nvars)], f.field, f.nvars)


def raw_matrix(field: Field, matrix: Sequence[Sequence]) -> list:
    return [[field.raw(x) for x in row] for row in matrix]


def substitute_linear(f: Form, matrix: Sequence[Sequence]) -> Form:
    """f(Mx) for an invertible n x n matrix M."""
    m = raw_matrix(f.field, matrix)
    if len(m) != f.nvars or any(len(row) != f.nvars for row in m):
        raise DimensionMismatchError(f"matrix must be {f.nvars}x{f.nvars}")
    if linalg.determinant(f.field, m) == 0:
        raise SingularMatrixError("linear substitution matrix is singular")
    return f.substitute_linear(m)
