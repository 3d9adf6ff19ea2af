"""
Ideals, Buchberger Groebner bases and projective emptiness.

Buchberger's algorithm with the normal selection strategy and the
Gebauer-Moeller pair update (coprime leading monomials and chain criterion).
Runs are bounded by a degree cap and a pair budget; exceeding either raises
GroebnerResourceError instead of returning a partial basis.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Set, Tuple

from conicbundle.exceptions import (
    DimensionMismatchError,
    GroebnerResourceError,
    HomogeneityError,
    MixedFieldError,
    UsageError,
)
from conicbundle.limits import get_limit, resolve_threads
from field.galois import Field

from .forms import ORDER_KEYS, Exponent, Form, Terms, add_terms

logger = logging.getLogger(__name__)


class Ideal:
    """Generators over a shared field and variable count, with a monomial order tag."""

    def __init__(self, generators: Sequence[Form], field: Optional[Field] = None,
                 nvars: Optional[int] = None, order: str = "grevlex"):
        generators = tuple(generators)
        if order not in ORDER_KEYS:
            raise UsageError(f"unknown monomial order {order!r}")
        if generators:
            field = field or generators[0].field
            nvars = generators[0].nvars if nvars is None else nvars
        if field is None or nvars is None:
            raise UsageError("an empty ideal needs an explicit field and variable count")
        for g in generators:
            if g.field != field:
                raise MixedFieldError(f"generator over {g.field} in an ideal over {field}")
            if g.nvars != nvars:
                raise DimensionMismatchError(
                    f"generator in {g.nvars} variables in an ideal of {nvars}")
        self.field = field
        self.nvars = nvars
        self.generators = generators
        self.order = order

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Ideal) and self.field == other.field
                and self.nvars == other.nvars and self.order == other.order
                and self.generators == other.generators)

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.generators)})"

    def is_unit(self) -> bool:
        """True if the generators are exactly the constant 1 (reduced-basis form)."""
        return (len(self.generators) == 1 and self.generators[0].degree == 0
                and self.generators[0].terms.get((0,) * self.nvars) == 1)

    def nonzero(self) -> "Ideal":
        return Ideal([g for g in self.generators if not g.is_zero()],
                     self.field, self.nvars, self.order)

    def dehomogenize(self, i: int) -> "Ideal":
        return Ideal([g.dehomogenize(i) for g in self.generators],
                     self.field, self.nvars, self.order)


# ---------- monomials ----------

def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exponent, b: Exponent) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------- polynomial kernels ----------

class _Poly:
    __slots__ = ("terms", "lm")

    def __init__(self, terms: Terms, key):
        self.terms = terms
        self.lm = max(terms, key=key)


def _monic(field: Field, terms: Terms, key) -> Terms:
    lead = terms[max(terms, key=key)]
    if lead == 1:
        return terms
    inv = field.inv(lead)
    return {e: field.mul(inv, c) for e, c in terms.items()}


def _reduce(field: Field, terms: Terms, basis: Sequence[_Poly], key) -> Terms:
    """Full reduction of ``terms`` by monic ``basis``; returns the remainder."""
    f = dict(terms)
    remainder: Terms = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for g in basis:
            if _divides(g.lm, m):
                shift = tuple(x - y for x, y in zip(m, g.lm))
                add_terms(field, f, g.terms, scale=field.neg(c), shift=shift)
                break
        else:
            remainder[m] = c
            del f[m]
    return remainder


def _spoly(field: Field, a: _Poly, b: _Poly) -> Terms:
    lcm = _lcm(a.lm, b.lm)
    out: Terms = {}
    add_terms(field, out, a.terms, shift=tuple(x - y for x, y in zip(lcm, a.lm)))
    add_terms(field, out, b.terms, scale=field.neg(1),
              shift=tuple(x - y for x, y in zip(lcm, b.lm)))
    return out


# ---------- Buchberger ----------

class _Buchberger:
    def __init__(self, ideal: Ideal, degree_cap: int, pair_cap: int):
        self.field = ideal.field
        self.nvars = ideal.nvars
        self.key = ORDER_KEYS[ideal.order]
        self.degree_cap = degree_cap
        self.pair_cap = pair_cap
        self.polys: List[_Poly] = []
        self.G: Set[int] = set()
        self.B: Set[Tuple[int, int]] = set()
        self.unit = False
        self.pairs_done = 0

    def _add(self, terms: Terms) -> int:
        poly = _Poly(_monic(self.field, terms, self.key), self.key)
        self.polys.append(poly)
        if sum(poly.lm) == 0:
            self.unit = True
        return len(self.polys) - 1

    def _update(self, ih: int) -> None:
        polys = self.polys
        mh = polys[ih].lm
        candidates = set(self.G)
        kept: Set[Tuple[int, int]] = set()
        while candidates:
            ig = candidates.pop()
            lcm_hg = _lcm(mh, polys[ig].lm)

            def lcm_divides(ip: int) -> bool:
                return _divides(_lcm(mh, polys[ip].lm), lcm_hg)

            if _coprime(mh, polys[ig].lm) or (
                    not any(lcm_divides(ip) for ip in candidates)
                    and not any(lcm_divides(pair[1]) for pair in kept)):
                kept.add((ih, ig))
        fresh = {(a, b) for a, b in kept if not _coprime(mh, polys[b].lm)}

        old = set()
        for i1, i2 in self.B:
            m1, m2 = polys[i1].lm, polys[i2].lm
            lcm12 = _lcm(m1, m2)
            if (not _divides(mh, lcm12) or _lcm(m1, mh) == lcm12
                    or _lcm(m2, mh) == lcm12):
                old.add((i1, i2))
        self.B = old | fresh
        self.G = {ig for ig in self.G if not _divides(mh, polys[ig].lm)}
        self.G.add(ih)

    def _select(self) -> Tuple[int, int]:
        polys, key = self.polys, self.key
        return min(self.B, key=lambda pr: (key(_lcm(polys[pr[0]].lm, polys[pr[1]].lm)),
                                           min(pr), max(pr)))

    def _sorted_basis(self) -> List[_Poly]:
        return sorted((self.polys[i] for i in self.G), key=lambda g: self.key(g.lm))

    def run(self, generators: Sequence[Form]) -> List[Terms]:
        inputs = [dict(g.terms) for g in generators if not g.is_zero()]
        inputs.sort(key=lambda t: self.key(max(t, key=self.key)))
        for terms in inputs:
            r = _reduce(self.field, terms, self._sorted_basis(), self.key)
            if not r:
                continue
            ih = self._add(r)
            if self.unit:
                return [{(0,) * self.nvars: 1}]
            self._update(ih)

        while self.B:
            i, j = self._select()
            self.B.discard((i, j))
            lcm = _lcm(self.polys[i].lm, self.polys[j].lm)
            if sum(lcm) > self.degree_cap:
                raise GroebnerResourceError(
                    f"S-pair of degree {sum(lcm)} exceeds the degree cap",
                    {"degree": sum(lcm), "cap": self.degree_cap})
            self.pairs_done += 1
            if self.pairs_done > self.pair_cap:
                raise GroebnerResourceError(
                    "S-pair budget exhausted", {"cap": self.pair_cap})
            h = _reduce(self.field, _spoly(self.field, self.polys[i], self.polys[j]),
                        self._sorted_basis(), self.key)
            if not h:
                continue
            ih = self._add(h)
            if self.unit:
                return [{(0,) * self.nvars: 1}]
            self._update(ih)

        reduced = []
        for ig in sorted(self.G):
            others = [self.polys[i] for i in sorted(self.G - {ig},
                                                   key=lambda i: self.key(self.polys[i].lm))]
            r = _reduce(self.field, self.polys[ig].terms, others, self.key)
            if r:
                reduced.append(_monic(self.field, r, self.key))
        reduced.sort(key=lambda t: self.key(max(t, key=self.key)), reverse=True)
        return reduced


def groebner_basis(ideal: Ideal, degree_cap: Optional[int] = None,
                   pair_cap: Optional[int] = None) -> Ideal:
    """
    Reduced Groebner basis of ``ideal`` under its order tag.

    Generators of the result are monic and sorted by decreasing leading
    monomial. The unit ideal comes back as the single generator 1.
    """
    if degree_cap is None:
        degree_cap = get_limit("GROEBNER_DEGREE_CAP")
    if pair_cap is None:
        pair_cap = get_limit("GROEBNER_PAIR_CAP")
    engine = _Buchberger(ideal, degree_cap, pair_cap)
    basis = engine.run(ideal.generators)
    logger.debug(f"Groebner basis with {len(basis)} elements after {engine.pairs_done} pairs")
    return Ideal([Form(ideal.field, ideal.nvars, t) for t in basis],
                 ideal.field, ideal.nvars, ideal.order)


def normal_form(f: Form, basis: Ideal) -> Form:
    """Remainder of ``f`` on division by ``basis`` (meaningful when it is a Groebner basis)."""
    key = ORDER_KEYS[basis.order]
    polys = [_Poly(_monic(basis.field, g.terms, key), key) for g in basis if not g.is_zero()]
    polys.sort(key=lambda g: key(g.lm))
    return Form(f.field, f.nvars, _reduce(f.field, f.terms, polys, key))


def contains_one(ideal: Ideal) -> bool:
    return groebner_basis(ideal).is_unit()


def projective_is_empty(ideal: Ideal, threads: Optional[int] = None) -> bool:
    """
    True iff the homogeneous ideal has no zero in projective space over the
    algebraic closure: every affine chart x_i = 1 must give the unit ideal.
    """
    for g in ideal:
        if not g.is_homogeneous:
            raise HomogeneityError(f"generator {g} is not homogeneous")
    ideal = ideal.nonzero()
    if not ideal.generators:
        return False
    charts = [ideal.dehomogenize(i) for i in range(ideal.nvars)]
    threads = resolve_threads(threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(contains_one, charts))
    else:
        verdicts = []
        for chart in charts:
            verdicts.append(contains_one(chart))
            if not verdicts[-1]:
                break
    empty = all(verdicts)
    logger.info(f"Projective emptiness over {ideal.field} "
                f"({len(ideal)} generators, {ideal.nvars} variables): {empty}")
    return empty

