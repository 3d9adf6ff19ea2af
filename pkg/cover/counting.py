"""
Point counts of the discriminant curve C and its double cover C~ over the
extensions GF(q^m).

For each m the plane P^2(GF(q^m)) is enumerated afresh: N_m counts points
with H = 0 and Ntilde_m is twice the number of split fibers. In
characteristic 2 the sweep is vectorized over chunks of P^2; chunk results
are summed, so thread count never changes the numbers.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Tuple

import numpy as np

from conicbundle.exceptions import EnumerationBudgetError, InvariantBreach, NotEtaleError
from conicbundle.limits import get_limit, resolve_threads
from cubic.frames import GoodLineFrame, has_double_line_fibers
from field import linalg
from field.galois import Field
from field.services import embedding, extension
from field.vectorized import DEFAULT_CHUNK, VectorField, projective_chunks, vector_field
from poly.forms import Form
from poly.vectorized import compile_form

from .fibers import SplitType, discriminant_value, split_type_raw

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CountRow:
    m: int
    curve: int
    cover: int
    double_lines: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {"m": self.m, "N": self.curve, "Ntilde": self.cover}


@dataclass(frozen=True)
class CountTable:
    field: Field
    rows: Tuple[CountRow, ...] = dataclass_field(default_factory=tuple)

    @property
    def q(self) -> int:
        return self.field.q

    def curve_counts(self) -> List[int]:
        return [row.curve for row in self.rows]

    def cover_counts(self) -> List[int]:
        return [row.cover for row in self.rows]

    def row(self, m: int) -> CountRow:
        return self.rows[m - 1]

    def as_dict(self) -> Dict:
        return {"q": self.q, "counts": [row.as_dict() for row in self.rows]}


# ---------- vectorized kernel ----------

def _vector_chunk(vf: VectorField, evaluators, coords) -> Tuple[int, int, int]:
    a, b, c = coords
    d, e, f = (ev(coords) for ev in evaluators)
    h = (vf.mul(a, vf.square(e)) ^ vf.mul(vf.square(b), f)
         ^ vf.mul(b, vf.mul(d, e)) ^ vf.mul(c, vf.square(d)))
    on_curve = h == 0
    double = (b == 0) & (d == 0) & (e == 0)
    case_e = e != 0
    case_d = (~case_e) & (d != 0)
    case_b = ~(case_e | case_d)
    alpha = np.where(case_e, c, a)
    beta = np.where(case_e, e, np.where(case_d, d, b))
    gamma = np.where(case_b, c, f)
    ratio = vf.mul(vf.mul(alpha, gamma), vf.inv(vf.square(beta)))
    split = (~double) & (vf.trace(ratio) == 0)
    return (int(np.count_nonzero(on_curve)),
            int(np.count_nonzero(on_curve & split)),
            int(np.count_nonzero(on_curve & double)))


def _count_vectorized(fr: GoodLineFrame, E: Field, threads: int,
                      chunk: int) -> Tuple[int, int, int]:
    vf = vector_field(E)
    embed = None if E == fr.field else embedding(fr.field, E)
    evaluators = [compile_form(g, vf, embed) for g in (fr.q0, fr.q1, fr.r)]

    def work(coords):
        return _vector_chunk(vf, evaluators, coords)

    chunks = projective_chunks(E.q, 2, chunk)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(coords) for coords in chunks]
    return tuple(sum(p[i] for p in parts) for i in range(3))


def _count_scalar(fr: GoodLineFrame, E: Field) -> Tuple[int, int, int]:
    embed = None if E == fr.field else embedding(fr.field, E)
    curve = split = double = 0
    for y in linalg.projective_points(E, 2):
        co = fr.fiber_coefficients_raw(list(y), E if embed else None, embed)
        if discriminant_value(E, co) != 0:
            continue
        curve += 1
        kind = split_type_raw(E, co)
        if kind == SplitType.SPLIT:
            split += 1
        elif kind == SplitType.DOUBLE_LINE:
            double += 1
    return curve, split, double


def _check_budget(F: Field, max_m: int) -> None:
    cap = get_limit("COVER_MAX_FIELD")
    if F.q ** max_m > cap:
        raise EnumerationBudgetError(
            f"counting over GF({F.q}^{max_m}) exceeds the budget",
            {"q": F.q, "m": max_m, "max_field": cap})


def count_curve_and_cover(fr: GoodLineFrame, max_m: int, threads: Optional[int] = None,
                          require_etale: bool = True, vectorized: Optional[bool] = None,
                          chunk: int = DEFAULT_CHUNK) -> CountTable:
    """
    N_m(C) and Ntilde_m(C~) for m = 1..max_m.

    Args:
        fr: the frame defining C and the cover.
        max_m: largest extension degree.
        threads: workers for the chunked sweep; results do not depend on it.
        require_etale: refuse frames with double-line fibers.
        vectorized: force (True) or disable (False) the numpy path; by default
            it is used whenever the field allows it.
    """
    F = fr.field
    _check_budget(F, max_m)
    if require_etale and has_double_line_fibers(fr, threads):
        raise NotEtaleError("the cover has double-line fibers")
    workers = resolve_threads(threads)
    rows = []
    for m in range(1, max_m + 1):
        E = extension(F, m)
        use_vector = vectorized
        if use_vector is None:
            use_vector = E.p == 2 and E.has_tables
        if use_vector:
            curve, split, double = _count_vectorized(fr, E, workers, chunk)
        else:
            curve, split, double = _count_scalar(fr, E)
        if require_etale and double:
            raise InvariantBreach("double-line fiber found on an etale cover", {"m": m})
        rows.append(CountRow(m, curve, 2 * split, double))
        logger.info(f"m={m}: N={curve} Ntilde={2 * split} double={double} over {E}")
    return CountTable(F, tuple(rows))


def count_plane_curve(h: Form, max_m: int, threads: Optional[int] = None,
                      chunk: int = DEFAULT_CHUNK) -> List[int]:
    """#V(h)(GF(q^m)) in P^2 for m = 1..max_m."""
    F = h.field
    _check_budget(F, max_m)
    workers = resolve_threads(threads)
    counts = []
    for m in range(1, max_m + 1):
        E = extension(F, m)
        embed = None if E == F else embedding(F, E)
        if E.p == 2 and E.has_tables:
            ev = compile_form(h, vector_field(E), embed)

            def work(coords, ev=ev):
                return int(np.count_nonzero(ev(coords) == 0))

            chunks = projective_chunks(E.q, 2, chunk)
            if workers > 1:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    total = sum(pool.map(work, chunks))
            else:
                total = sum(work(c) for c in chunks)
        else:
            total = sum(1 for y in linalg.projective_points(E, 2)
                        if h.evaluate_raw(list(y), E if embed else None, embed) == 0)
        counts.append(total)
    return counts
