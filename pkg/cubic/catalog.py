"""
Named cubics accepted wherever a cubic form is expected.
"""
from field.galois import Field

from .threefold import CubicThreefold

CATALOG = {
    # Smooth over GF(2) with the good line V(x0, x1, x2).
    "good-line-example": (
        "x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*(x0^2+x1^2) + x4*(x1^2+x2^2)"
        " + x0*x2^2 + x2*x0^2"),
    "fermat": "x0^3 + x1^3 + x2^3 + x3^3 + x4^3",
    "klein": "x0*x1^2 + x1*x2^2 + x2*x3^2 + x3*x4^2 + x4*x0^2",
    # V(x0, x1, x2) has independent L_i but a double-line fiber over [0:0:1].
    "double-line-witness": (
        "x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*x0*x2 + x4*x0^2 + x2^3 + x1^3"),
}

DEFAULT_LINES = {
    "good-line-example": "0,0,0,1,0;0,0,0,0,1",
    "double-line-witness": "0,0,0,1,0;0,0,0,0,1",
}


def resolve_cubic(text: str, field: Field) -> CubicThreefold:
    """A catalog name or explicit form text."""
    return CubicThreefold.parse(CATALOG.get(text.strip(), text), field)
