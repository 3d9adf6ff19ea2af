"""
Cartier services: the Cartier-Manin matrix of a plane quintic and its ranks.
"""
import logging
from typing import Dict, Optional

from cubic.frames import GoodLineFrame, discriminant_quintic

from .manin import (
    BASIS,
    CartierMatrix,
    Chart,
    PlaneQuintic,
    cartier_matrix,
    cartier_ranks,
    parse_chart,
)

logger = logging.getLogger(__name__)

__all__ = [
    "BASIS",
    "CartierMatrix",
    "PlaneQuintic",
    "cartier_matrix",
    "cartier_ranks",
    "discriminant_cartier",
    "parse_chart",
]


def discriminant_cartier(fr: GoodLineFrame, chart: Optional[Chart] = None) -> Dict:
    """Cartier matrix and ranks of the discriminant quintic of a frame."""
    C = PlaneQuintic(discriminant_quintic(fr), chart)
    M = cartier_matrix(C)
    p_rank, a_number = cartier_ranks(M)
    logger.info(f"Cartier ranks of {fr.line}: p_rank={p_rank} a_number={a_number}")
    return {**M.as_dict(), "p_rank": p_rank, "a_number": a_number}
