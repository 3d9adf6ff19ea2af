"""
Dense linear algebra over a Field on raw element encodings.
Matrices are lists of rows; nothing here mutates its inputs.
"""
from itertools import product
from typing import Iterator, List, Sequence, Tuple

from conicbundle.exceptions import DimensionMismatchError, SingularMatrixError

from .galois import Field

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(field: Field, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatchError(
            f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new_row = []
        for j in range(cols):
            acc = 0
            for i, x in enumerate(row):
                if x and b[i][j]:
                    acc = field.add(acc, field.mul(x, b[i][j]))
            new_row.append(acc)
        out.append(new_row)
    return out


def matvec(field: Field, a: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    if a and len(a[0]) != len(v):
        raise DimensionMismatchError(f"matrix has {len(a[0])} columns, vector has {len(v)} entries")
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out


def rref(field: Field, rows: Sequence[Sequence[int]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; zero rows are dropped. Returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(field: Field, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(field, rows)[1])


def determinant(field: Field, a: Sequence[Sequence[int]]) -> int:
    n = len(a)
    m = [list(r) for r in a]
    det = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = field.neg(det)
        det = field.mul(det, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                factor = field.mul(m[i][c], inv)
                m[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(m[i], m[c])]
    return det


def inverse(field: Field, a: Sequence[Sequence[int]]) -> Matrix:
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionMismatchError("only square matrices can be inverted")
    augmented = [list(row) + ident for row, ident in zip(a, identity(n))]
    reduced, pivots = rref(field, augmented)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in reduced]


def kernel(field: Field, a: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of the right kernel {v : a v = 0}, one vector per free column."""
    reduced, pivots = rref(field, a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(reduced, pivots):
            v[pc] = field.neg(row[f])
        basis.append(v)
    return basis


def span_vectors(field: Field, rows: Sequence[Sequence[int]]) -> Iterator[Tuple[int, ...]]:
    """Every vector in the span of ``rows`` (field must be small)."""
    n = len(rows[0]) if rows else 0
    for coeffs in product(range(field.q), repeat=len(rows)):
        v = [0] * n
        for c, row in zip(coeffs, rows):
            if c:
                v = [field.add(x, field.mul(c, y)) for x, y in zip(v, row)]
        yield tuple(v)


def projective_points(field: Field, n: int) -> Iterator[Tuple[int, ...]]:
    """Normalized representatives of P^n(field): the first nonzero coordinate is 1."""
    q = field.q
    for lead in range(n + 1):
        head = (0,) * lead + (1,)
        for tail in product(range(q), repeat=n - lead):
            yield head + tail


def projective_size(q: int, n: int) -> int:
    return sum(q ** i for i in range(n + 1))
