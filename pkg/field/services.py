"""
Field construction and the arithmetic operations exposed to other apps.
Fields are cached per (p, k, modulus), so repeated construction is cheap and
two constructions with the same parameters return the same object.
"""
import logging
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

from conicbundle.exceptions import (
    CharacteristicError,
    FieldConstructionError,
    InvariantBreach,
    MixedFieldError,
    UsageError,
)
from conicbundle.limits import get_limit

from .galois import Field, FieldElement, decode_digits, is_irreducible, is_prime

logger = logging.getLogger(__name__)


def smallest_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """
    The lexicographically smallest monic irreducible of degree k over GF(p).

    Candidates are compared by coefficients from the top degree down, which is
    the order of their integer encodings.
    """
    if not is_prime(p):
        raise FieldConstructionError(f"{p} is not prime", {"p": p})
    if k < 1:
        raise FieldConstructionError("extension degree must be at least 1", {"k": k})
    if p ** k > get_limit("FIELD_MAX_CARDINALITY"):
        raise FieldConstructionError(
            f"GF({p}^{k}) exceeds the field size budget", {"q": p ** k})
    return _smallest_irreducible(p, k)


@lru_cache(maxsize=None)
def _smallest_irreducible(p: int, k: int) -> Tuple[int, ...]:
    base = p ** k
    for low in range(base):
        candidate = decode_digits(low, p, k) + [1]
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise InvariantBreach(f"no irreducible polynomial of degree {k} over GF({p})")


def make_field(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> Field:
    """
    Build GF(p^k).

    Args:
        p: the characteristic (prime).
        k: the extension degree.
        modulus: optional monic modulus, coefficients low-to-high.

    Returns:
        The (cached) Field.
    """
    if modulus is None:
        modulus = smallest_irreducible(p, k)
    return _make_field(p, k, tuple(int(c) for c in modulus))


@lru_cache(maxsize=None)
def _make_field(p: int, k: int, modulus: Tuple[int, ...]) -> Field:
    field = Field(p, k, modulus)
    logger.info(f"Built field {field.literal(explicit_modulus=True)}")
    return field


def extension(field: Field, m: int) -> Field:
    """GF(q^m) with its default modulus."""
    if m < 1:
        raise FieldConstructionError("extension degree must be at least 1", {"m": m})
    if m == 1:
        return field
    return make_field(field.p, field.k * m)


def field_arith(op: str, a: FieldElement, b: Union[FieldElement, int, None] = None) -> FieldElement:
    """Dispatch ``add``, ``sub``, ``mul``, ``div``, ``inv`` and ``pow``."""
    if op == "inv":
        return a.inverse()
    if b is None:
        raise UsageError(f"operation {op!r} needs a second operand")
    if op == "pow":
        if isinstance(b, FieldElement):
            raise UsageError("exponent must be an integer")
        return a ** b
    if isinstance(b, FieldElement) and b.field != a.field:
        raise MixedFieldError(f"operands from {a.field} and {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise UsageError(f"unknown field operation {op!r}")


def frobenius_trace(a: FieldElement) -> Tuple[FieldElement, int]:
    """Return (a^p, Tr(a)) with the trace as an integer of GF(p)."""
    return a.frobenius(), a.trace()


def sqrt_char2(a: FieldElement) -> FieldElement:
    """The unique square root a^(2^(k-1)) in characteristic 2."""
    return a.sqrt()


@lru_cache(maxsize=None)
def _trace_one_element(field: Field) -> int:
    for v in range(1, field.q):
        if field.trace(v) == 1:
            return v
    raise InvariantBreach(f"trace map of {field} is zero")


def artin_schreier_raw(field: Field, a: int) -> Optional[int]:
    """Raw solver for z^2 + z = a; None when Tr(a) = 1."""
    if field.p != 2:
        raise CharacteristicError("Artin-Schreier solving is implemented for characteristic 2")
    if field.trace(a) == 1:
        return None
    delta = _trace_one_element(field)
    z = 0
    partial = 0
    a_power = a
    delta_power = delta
    for _ in range(1, field.k):
        partial ^= delta_power
        delta_power = field.mul(delta_power, delta_power)
        a_power = field.mul(a_power, a_power)
        z ^= field.mul(partial, a_power)
    if field.mul(z, z) ^ z != a:
        raise InvariantBreach(f"Artin-Schreier solution failed in {field}", {"a": a})
    return z


def artin_schreier_solve(a: FieldElement) -> Optional[FieldElement]:
    """
    Solve z^2 + z = a. Returns one root (the other is z + 1) or None if the
    equation has no solution in the field of a.
    """
    z = artin_schreier_raw(a.field, a.value)
    return None if z is None else FieldElement(a.field, z)


class Embedding:
    """A field embedding GF(p^k) -> GF(p^{km}) fixed by the image of t."""

    def __init__(self, source: Field, target: Field, root: int):
        self.source = source
        self.target = target
        self.root = root
        self._powers = [1]
        for _ in range(1, source.k):
            self._powers.append(target.mul(self._powers[-1], root))
        self._table = None
        if source.q <= get_limit("FIELD_TABLE_MAX"):
            self._table = [self._map(v) for v in range(source.q)]

    def _map(self, value: int) -> int:
        if self.source.k == 1:
            return self.target.scalar(value)
        out = 0
        for c, power in zip(self.source.digits(value), self._powers):
            if c:
                out = self.target.add(out, self.target.mul(self.target.scalar(c), power))
        return out

    def __call__(self, value: int) -> int:
        if self._table is not None:
            return self._table[value]
        return self._map(value)

    def element(self, x: FieldElement) -> FieldElement:
        return FieldElement(self.target, self(self.source.raw(x)))


def embedding(source: Field, target: Field) -> Embedding:
    """The embedding of ``source`` into ``target`` sending t to the least root of its modulus."""
    if source.p != target.p or target.k % source.k != 0:
        raise MixedFieldError(f"{source} is not a subfield of {target}")
    return _embedding(source, target)


@lru_cache(maxsize=None)
def _embedding(source: Field, target: Field) -> Embedding:
    if source == target:
        return Embedding(source, target, source.gen.value)
    if source.k == 1:
        return Embedding(source, target, 0)
    for r in _subfield_candidates(source, target):
        acc = 0
        for c in reversed(source.modulus):
            acc = target.add(target.mul(acc, r), target.scalar(c))
        if acc == 0:
            logger.debug(f"Embedding {source} -> {target} via t -> {target.format(r)}")
            return Embedding(source, target, r)
    raise InvariantBreach(f"no root of the modulus of {source} in {target}")


def _subfield_candidates(source: Field, target: Field):
    if target.has_tables:
        return target.subfield_elements(source.q)
    return range(1, target.q)
