"""
L-polynomials of curves over GF(q).

L(t) = 1 + a_1 t + ... + a_{2g} t^{2g} = prod (1 - alpha_i t), and the point
counts satisfy N_m = q^m + 1 - s_m with s_m = sum alpha_i^m. All coefficient
algebra is exact; floating point is only used for the root check on |alpha_i|.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from conicbundle.exceptions import (
    DimensionMismatchError,
    InvariantBreach,
    NonExactDivisionError,
    NonIntegralError,
    WeilViolationError,
)

logger = logging.getLogger(__name__)

WEIL_TOLERANCE = 1e-6


# ---------- exact polynomial helpers (descending coefficient lists) ----------

def _strip(a: List[Fraction]) -> List[Fraction]:
    i = 0
    while i < len(a) - 1 and a[i] == 0:
        i += 1
    return a[i:]


def _derivative(a: Sequence[Fraction]) -> List[Fraction]:
    n = len(a) - 1
    if n == 0:
        return [Fraction(0)]
    return [c * (n - i) for i, c in enumerate(a[:-1])]


def _divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    a = _strip([Fraction(c) for c in a])
    b = _strip([Fraction(c) for c in b])
    if len(a) < len(b):
        return [Fraction(0)], a
    quotient = []
    rest = list(a)
    while len(rest) >= len(b):
        factor = rest[0] / b[0]
        quotient.append(factor)
        for i, c in enumerate(b):
            rest[i] -= factor * c
        rest.pop(0)
    return quotient, _strip(rest or [Fraction(0)])


def _gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    a = _strip([Fraction(c) for c in a])
    b = _strip([Fraction(c) for c in b])
    while any(b):
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[0] for c in a]


def squarefree_part(coefficients: Sequence[int]) -> List[Fraction]:
    """P / gcd(P, P') for a descending integer coefficient list, made monic."""
    p = _strip([Fraction(c) for c in coefficients])
    if len(p) == 1:
        return [Fraction(1)]
    g = _gcd(p, _derivative(p))
    quotient, _ = _divmod(p, g)
    return [c / quotient[0] for c in quotient]


# ---------- L-polynomials ----------

def power_sums_from_coefficients(a: Sequence[int], count: int) -> List[int]:
    """s_1..s_count from m*a_m = -sum_{i<m} a_i s_{m-i}."""
    s: List[int] = []
    for m in range(1, count + 1):
        am = a[m] if m < len(a) else 0
        value = -m * am - sum(a[i] * s[m - i - 1] for i in range(1, min(m, len(a))))
        s.append(value)
    return s


@dataclass(frozen=True)
class LPolynomial:
    """Numerator of the zeta function of a genus-g curve over GF(q)."""

    q: int
    g: int
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != 2 * self.g + 1:
            raise DimensionMismatchError(
                f"genus {self.g} needs {2 * self.g + 1} coefficients",
                {"received": len(self.coefficients)})
        if self.coefficients[0] != 1:
            raise InvariantBreach("L(0) must be 1", {"L": list(self.coefficients)})

    @property
    def degree(self) -> int:
        return 2 * self.g

    def satisfies_functional_equation(self) -> bool:
        a = self.coefficients
        return all(a[2 * self.g - i] == self.q ** (self.g - i) * a[i] for i in range(self.g + 1))

    def power_sums(self, count: int) -> List[int]:
        return power_sums_from_coefficients(self.coefficients, count)

    def point_counts(self, count: int) -> List[int]:
        """N_1..N_count of the curve with this L-polynomial."""
        return [self.q ** m + 1 - s for m, s in enumerate(self.power_sums(count), start=1)]

    def reciprocal_roots(self) -> np.ndarray:
        """Roots of the exact square-free part of t^{2g} L(1/t), polished by Newton steps."""
        if self.g == 0:
            return np.zeros(0, dtype=complex)
        sf = squarefree_part(self.coefficients)
        poly = np.array([float(c) for c in sf])
        deriv = np.polyder(poly)
        roots = np.roots(poly).astype(complex)
        for _ in range(4):
            step = np.polyval(poly, roots) / np.polyval(deriv, roots)
            roots = roots - np.where(np.isfinite(step), step, 0)
        return roots

    def weil_deviation(self) -> float:
        roots = self.reciprocal_roots()
        if roots.size == 0:
            return 0.0
        return float(np.max(np.abs(np.abs(roots) - np.sqrt(self.q))))

    def satisfies_weil_bound(self, tolerance: float = WEIL_TOLERANCE) -> bool:
        return self.weil_deviation() < tolerance

    def reduce_mod(self, p: int) -> List[int]:
        return [c % p for c in self.coefficients]

    def __mul__(self, other: "LPolynomial") -> "LPolynomial":
        if self.q != other.q:
            raise DimensionMismatchError(f"cannot multiply L-polynomials over q={self.q} and q={other.q}")
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return LPolynomial(self.q, self.g + other.g, tuple(out))

    def as_list(self) -> List[int]:
        return list(self.coefficients)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coefficients):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*t^{i}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class PrymLPolynomial:
    """L_Ctilde / L_C, the L-polynomial of the Prym part of the cover's Jacobian."""

    polynomial: LPolynomial
    curve: LPolynomial
    cover: LPolynomial

    @property
    def dimension(self) -> int:
        return self.polynomial.g

    def as_list(self) -> List[int]:
        return self.polynomial.as_list()


def _weil_bound_ok(q: int, g: int, m: int, n: int) -> bool:
    """|N - (q^m + 1)| <= 2g q^{m/2}, in integers."""
    defect = n - q ** m - 1
    return defect * defect <= 4 * g * g * q ** m


def l_polynomial_from_counts(q: int, g: int, counts: Sequence[int]) -> LPolynomial:
    """
    Build L(t) of a genus-g curve from N_1..N_g.

    Args:
        q: base field size.
        g: genus.
        counts: N_1, N_2, ...; at least g values. Counts past N_g are not used
            for the reconstruction, only compared with what L predicts.

    Raises:
        WeilViolationError: counts outside the Weil interval, roots off the
            circle |alpha| = sqrt(q), or extra counts that L does not reproduce.
        NonIntegralError: a Newton step produced a non-integer coefficient.
    """
    if g < 0:
        raise DimensionMismatchError("genus must be non-negative", {"g": g})
    if len(counts) < g:
        raise DimensionMismatchError(
            f"genus {g} needs {g} point counts, got {len(counts)}",
            {"g": g, "counts": list(counts)})
    for m, n in enumerate(counts, start=1):
        if not _weil_bound_ok(q, g, m, n):
            raise WeilViolationError(
                f"N_{m} = {n} is outside the Weil interval for genus {g} over GF({q})",
                {"m": m, "N": n, "q": q, "g": g})

    s = [q ** m + 1 - n for m, n in enumerate(counts[:g], start=1)]
    a: List[int] = [1]
    for m in range(1, g + 1):
        total = s[m - 1] + sum(a[i] * s[m - i - 1] for i in range(1, m))
        value = Fraction(-total, m)
        if value.denominator != 1:
            raise NonIntegralError(
                f"coefficient a_{m} = {value} is not an integer",
                {"m": m, "value": str(value)})
        a.append(int(value))
    for i in range(g - 1, -1, -1):
        a.append(q ** (g - i) * a[i])

    L = LPolynomial(q, g, tuple(a))
    regenerated = L.point_counts(len(counts))
    if list(counts) != regenerated:
        raise WeilViolationError(
            "point counts are not those of a genus-g curve",
            {"given": list(counts), "predicted": regenerated})
    if not L.satisfies_weil_bound():
        raise WeilViolationError(
            "reciprocal roots do not have absolute value sqrt(q)",
            {"deviation": L.weil_deviation(), "L": L.as_list()})
    logger.info(f"L-polynomial of genus {g} over GF({q}) from {len(counts)} counts")
    return L


def prym_l_polynomial(curve: LPolynomial, cover: LPolynomial) -> PrymLPolynomial:
    """
    Exact quotient L_Ctilde / L_C.

    The division runs in ascending powers of t (both constant terms are 1), so
    all quotient coefficients are integers; a nonzero remainder means the cover
    data is inconsistent.
    """
    if curve.q != cover.q:
        raise DimensionMismatchError(
            "L-polynomials are over different fields", {"q": [curve.q, cover.q]})
    if cover.g < curve.g:
        raise NonExactDivisionError(
            f"genus {cover.g} cover cannot contain a genus {curve.g} Jacobian factor")
    if cover.g != 2 * curve.g - 1:
        logger.warning(
            f"cover genus {cover.g} differs from 2*{curve.g} - 1; "
            f"the cover is not an etale double cover of a connected curve")

    a, b = curve.coefficients, cover.coefficients
    length = len(b) - len(a) + 1
    quotient: List[int] = []
    for k in range(length):
        value = b[k] - sum(a[i] * quotient[k - i] for i in range(1, min(k, len(a) - 1) + 1))
        quotient.append(value)
    product = [0] * len(b)
    for i, x in enumerate(a):
        for j, y in enumerate(quotient):
            product[i + j] += x * y
    if product != list(b):
        raise NonExactDivisionError(
            "L_C does not divide L_Ctilde",
            {"L_C": list(a), "L_Ctilde": list(b)})

    prym = LPolynomial(curve.q, cover.g - curve.g, tuple(quotient))
    if not prym.satisfies_functional_equation():
        raise InvariantBreach("Prym factor fails the functional equation", {"L": quotient})
    logger.info(f"Prym factor of dimension {prym.g} over GF({curve.q})")
    return PrymLPolynomial(prym, curve, cover)


def p_rank_from_l(L: LPolynomial, p: int) -> int:
    """Degree of L(t) mod p: the number of unit reciprocal roots."""
    reduced = L.reduce_mod(p)
    for i in range(len(reduced) - 1, -1, -1):
        if reduced[i]:
            return i
    return 0


