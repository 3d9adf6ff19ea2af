"""
Cubic threefold services: smoothness, Hermitian detection and the entry
points for lines, frames and classification.
"""
import logging
from typing import Optional

from poly.groebner import projective_is_empty
from poly.services import jacobian_ideal

from .frames import (
    GoodLineFrame,
    LineClassification,
    LineTag,
    NotGoodReason,
    classify_line,
    discriminant_quintic,
    double_line_ideal,
    good_line_frame,
)
from .lines import LineInP4, contains_line, enumerate_lines, lines_meeting
from .threefold import CubicThreefold

logger = logging.getLogger(__name__)

__all__ = [
    "CubicThreefold",
    "GoodLineFrame",
    "LineClassification",
    "LineInP4",
    "LineTag",
    "NotGoodReason",
    "classify_line",
    "contains_line",
    "discriminant_quintic",
    "double_line_ideal",
    "enumerate_lines",
    "good_line_frame",
    "is_hermitian",
    "is_smooth_cubic",
    "lines_meeting",
]


def is_smooth_cubic(X: CubicThreefold, threads: Optional[int] = None) -> bool:
    """Jacobian criterion: V(f, df/dx_i) is empty over the algebraic closure."""
    smooth = projective_is_empty(jacobian_ideal(X.form), threads)
    logger.info(f"Cubic over {X.field} smooth: {smooth}")
    return smooth


def is_hermitian(X: CubicThreefold) -> bool:
    """
    In characteristic 2, True iff no monomial x_i*x_j*x_k with distinct
    i, j, k has a nonzero coefficient.
    """
    if X.field.p != 2:
        logger.warning(f"Hermitian test asked over {X.field}; only characteristic 2 applies")
        return False
    return all(max(exp) >= 2 for exp in X.form.terms)
