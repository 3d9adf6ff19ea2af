"""
numpy kernels for GF(2^k) arithmetic on whole arrays of element encodings,
plus chunked enumeration of projective spaces. Used by the point-counting
services; only fields that carry exp/log tables are supported.
"""
from functools import lru_cache
from typing import Iterator, Tuple

import numpy as np

from conicbundle.exceptions import CharacteristicError, EnumerationBudgetError

from .galois import Field

DEFAULT_CHUNK = 1 << 18


class VectorField:
    """Array arithmetic in a characteristic-2 field with tables."""

    def __init__(self, field: Field):
        if field.p != 2:
            raise CharacteristicError("vectorized arithmetic is implemented for characteristic 2")
        if not field.has_tables and field.q > 2:
            raise EnumerationBudgetError(
                f"{field} is too large for table-driven enumeration", {"q": field.q})
        self.field = field
        self.q = field.q
        self.order = max(field.q - 1, 1)
        if field.q == 2:
            exp = [1, 1]
            log = [0, 0]
        else:
            exp = [field.pow(field.primitive, i) for i in range(self.order)] * 2
            log = [0] * field.q
            for i in range(self.order):
                log[exp[i]] = i
        self.exp = np.asarray(exp, dtype=np.int64)
        self.log = np.asarray(log, dtype=np.int64)
        elements = np.arange(field.q, dtype=np.int64)
        trace = np.zeros(field.q, dtype=np.int64)
        for bit in range(field.k):
            if field.trace(1 << bit):
                trace ^= (elements >> bit) & 1
        self.trace_table = trace

    def const(self, c: int, shape) -> np.ndarray:
        return np.full(shape, c, dtype=np.int64)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def scale(self, c: int, a: np.ndarray) -> np.ndarray:
        if c == 0:
            return np.zeros_like(a)
        if c == 1:
            return a
        out = self.exp[self.log[a] + int(self.log[c])]
        return np.where(a == 0, 0, out)

    def power(self, a: np.ndarray, e: int) -> np.ndarray:
        if e == 0:
            return np.ones_like(a)
        if e == 1:
            return a
        out = self.exp[(self.log[a] * e) % self.order]
        return np.where(a == 0, 0, out)

    def square(self, a: np.ndarray) -> np.ndarray:
        return self.power(a, 2)

    def inv(self, a: np.ndarray) -> np.ndarray:
        """Inverse of nonzero entries; zero maps to zero."""
        out = self.exp[(self.order - self.log[a]) % self.order]
        return np.where(a == 0, 0, out)

    def trace(self, a: np.ndarray) -> np.ndarray:
        return self.trace_table[a]


@lru_cache(maxsize=16)
def vector_field(field: Field) -> VectorField:
    return VectorField(field)


def projective_chunks(q: int, n: int, chunk: int = DEFAULT_CHUNK
                      ) -> Iterator[Tuple[np.ndarray, ...]]:
    """
    Yield normalized points of P^n(GF(q)) as tuples of n+1 int64 arrays.

    Points are produced in the same order as ``linalg.projective_points``:
    grouped by the position of the leading 1, then the free tail read as
    base-q digits with the last coordinate varying fastest.
    """
    for lead in range(n + 1):
        free = n - lead
        total = q ** free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            size = idx.shape[0]
            coords = [np.zeros(size, dtype=np.int64) for _ in range(lead)]
            coords.append(np.ones(size, dtype=np.int64))
            tail = []
            rest = idx
            for _ in range(free):
                rest, digit = np.divmod(rest, q)
                tail.append(digit)
            coords.extend(reversed(tail))
            yield tuple(coords)
