"""
Quadric services: reading forms, smoothness and the generator parity check.
"""
import logging
from typing import Dict, Optional

from conicbundle.exceptions import UsageError
from field.galois import Field
from field.literals import parse_element

from .generators import (
    Generator,
    ParityReport,
    QuadraticSpace,
    enumerate_generators,
    hyperbolic_generator_count,
    polar_and_smoothness,
    verify_generator_parity,
)

logger = logging.getLogger(__name__)

__all__ = [
    "Generator",
    "ParityReport",
    "QuadraticSpace",
    "enumerate_generators",
    "generator_parity",
    "hyperbolic_generator_count",
    "parse_quadratic_space",
    "polar_and_smoothness",
    "verify_generator_parity",
]


def parse_quadratic_space(text: str, field: Field) -> QuadraticSpace:
    """Comma-separated upper-triangular coefficients, e.g. ``0,1,0,0,0,0,0,0,1,0``."""
    values = [parse_element(part, field) for part in text.split(",")]
    return QuadraticSpace.from_upper_triangular(field, values)


def build_quadratic_space(field: Field, text: Optional[str] = None, n: Optional[int] = None,
                          kind: str = "hyperbolic") -> QuadraticSpace:
    if text:
        return parse_quadratic_space(text, field)
    if not n or n < 1:
        raise UsageError("give --quadric or a positive --n")
    if kind == "hyperbolic":
        return QuadraticSpace.hyperbolic(field, n)
    if kind == "elliptic":
        return QuadraticSpace.elliptic(field, n)
    raise UsageError(f"unknown quadric kind {kind!r}", {"kind": kind})


def generator_parity(Q: QuadraticSpace, threads: Optional[int] = None) -> Dict:
    """Enumerate generators and verify the parity law; a JSON-ready summary."""
    gens = enumerate_generators(Q)
    report = verify_generator_parity(Q.field, gens, threads)
    result = {"n": Q.n, "q": Q.field.q, "form": Q.as_upper_triangular(), **report.as_dict()}
    logger.info(f"generator parity over GF({Q.field.q}), n={Q.n}: {report.class_sizes}")
    return result
