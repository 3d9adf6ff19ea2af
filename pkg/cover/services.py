"""
Cover services: etaleness, fiber splitting and point counts.
"""
import logging
from typing import Optional

from cubic.frames import GoodLineFrame, has_double_line_fibers

from .counting import CountRow, CountTable, count_curve_and_cover, count_plane_curve
from .fibers import FiberConic, SplitType, conic_point_count, fiber_conic, fiber_splitting

logger = logging.getLogger(__name__)

__all__ = [
    "CountRow",
    "CountTable",
    "FiberConic",
    "SplitType",
    "conic_point_count",
    "count_curve_and_cover",
    "count_plane_curve",
    "fiber_conic",
    "fiber_splitting",
    "is_etale",
]


def is_etale(fr: GoodLineFrame, threads: Optional[int] = None) -> bool:
    """True iff no fiber over the closure is a double line."""
    etale = not has_double_line_fibers(fr, threads)
    logger.info(f"Cover for line {fr.line} etale: {etale}")
    return etale
