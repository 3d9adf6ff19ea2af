"""
Cubic threefolds X = V(f) in P^4.

Coefficient vectors index the 35 cubic monomials by exponent tuple in
descending lexicographic order: x0^3, x0^2*x1, x0^2*x2, ..., x4^3.
"""
from itertools import product
from typing import List, Sequence, Tuple

from conicbundle.exceptions import DimensionMismatchError, HomogeneityError
from field.galois import Field, FieldElement
from field.services import embedding
from poly.forms import Form
from poly.parser import parse_form
from poly.services import substitute_linear

MONOMIALS: Tuple[Tuple[int, ...], ...] = tuple(sorted(
    (e for e in product(range(4), repeat=5) if sum(e) == 3), reverse=True))


class CubicThreefold:
    """A nonzero homogeneous cubic form in x0..x4."""

    def __init__(self, form: Form):
        if form.nvars != 5:
            raise DimensionMismatchError(f"a cubic threefold needs 5 variables, got {form.nvars}")
        if form.is_zero():
            raise HomogeneityError("the zero form does not define a threefold")
        if not form.is_homogeneous or form.degree != 3:
            raise HomogeneityError(
                f"expected a homogeneous cubic, got degree {form.degree}",
                {"homogeneous": form.is_homogeneous})
        self.form = form

    @classmethod
    def parse(cls, text: str, field: Field) -> "CubicThreefold":
        return cls(parse_form(text, field))

    @classmethod
    def from_coefficients(cls, field: Field, coefficients: Sequence) -> "CubicThreefold":
        if len(coefficients) != len(MONOMIALS):
            raise DimensionMismatchError(
                f"expected {len(MONOMIALS)} coefficients, got {len(coefficients)}")
        terms = {e: field.raw(c) for e, c in zip(MONOMIALS, coefficients)}
        return cls(Form(field, 5, terms))

    @property
    def field(self) -> Field:
        return self.form.field

    def coefficient_vector(self) -> List[FieldElement]:
        return [self.form.coefficient(e) for e in MONOMIALS]

    def transform(self, matrix: Sequence[Sequence]) -> "CubicThreefold":
        """X o M, i.e. the cubic f(Mx)."""
        return CubicThreefold(substitute_linear(self.form, matrix))

    def base_change(self, target: Field) -> "CubicThreefold":
        if target == self.field:
            return self
        return CubicThreefold(self.form.base_change(target, embedding(self.field, target)))

    def __eq__(self, other) -> bool:
        return isinstance(other, CubicThreefold) and self.form == other.form

    def __hash__(self) -> int:
        return hash(self.form)

    def __str__(self) -> str:
        return str(self.form)

    def __repr__(self) -> str:
        return f"CubicThreefold({self.field}, {self.form})"
