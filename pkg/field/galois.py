"""
Finite fields GF(p^k) in a polynomial basis.

An element is stored as the integer sum(c_i * p^i) of its coefficient vector
(c_0, ..., c_{k-1}) over GF(p); in characteristic 2 this is the bit vector of
the coefficients and addition is XOR. Fields small enough for the configured
table budget carry exp/log tables; larger fields fall back to carry-less
(p = 2) or digit-wise (odd p) multiplication.
"""
import logging
from numbers import Integral
from typing import Iterator, List, Optional, Sequence, Tuple

from conicbundle.exceptions import (
    CharacteristicError,
    FieldConstructionError,
    FieldZeroDivisionError,
    MixedFieldError,
)
from conicbundle.limits import get_limit

logger = logging.getLogger(__name__)


# ---------- integers ----------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> List[int]:
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


# ---------- polynomials over GF(p), coefficient lists low-to-high ----------

def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def gfp_poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def gfp_poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def gfp_poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def gfp_poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, gfp_poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def gfp_poly_powmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> List[int]:
    result = [1]
    base = gfp_poly_mod(base, m, p)
    while e:
        if e & 1:
            result = gfp_poly_mod(gfp_poly_mul(result, base, p), m, p)
        base = gfp_poly_mod(gfp_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Ben-Or test: f of degree k is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= k/2."""
    f = _trim([c % p for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    power = [0, 1]
    for _ in range(k // 2):
        power = gfp_poly_powmod(power, p, f, p)
        g = gfp_poly_gcd(f, gfp_poly_sub(power, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def encode_digits(digits: Sequence[int], p: int) -> int:
    value = 0
    for c in reversed(digits):
        value = value * p + (c % p)
    return value


def decode_digits(value: int, p: int, k: int) -> List[int]:
    digits = []
    for _ in range(k):
        value, c = divmod(value, p)
        digits.append(c)
    return digits


# ---------- fields ----------

class Field:
    """
    GF(p^k) with a fixed monic irreducible modulus.

    Raw methods (``add``, ``mul``, ...) act on integer encodings; FieldElement
    wraps them for public use. Instances are immutable after construction.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise FieldConstructionError(f"{p} is not prime", {"p": p})
        if k < 1:
            raise FieldConstructionError("extension degree must be at least 1", {"k": k})
        q = p ** k
        cap = get_limit("FIELD_MAX_CARDINALITY")
        if q > cap:
            raise FieldConstructionError(
                f"GF({p}^{k}) exceeds the field size budget", {"q": q, "cap": cap})
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldConstructionError(
                f"modulus must be monic of degree {k}", {"modulus": list(modulus)})
        if not is_irreducible(modulus, p):
            raise FieldConstructionError(
                "modulus is reducible", {"modulus": list(modulus)})

        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self.modulus_int = encode_digits(modulus, p)
        self._exp: Optional[List[int]] = None
        self._log: Optional[List[int]] = None
        if q <= get_limit("FIELD_TABLE_MAX"):
            self._build_tables()
        self._trace_basis = self._compute_trace_basis()
        self._trace_mask = 0
        if p == 2:
            for i, tr in enumerate(self._trace_basis):
                if tr:
                    self._trace_mask |= 1 << i
        logger.debug(f"Constructed {self.literal()} (tables={self.has_tables})")

    # ----- identity -----

    def __eq__(self, other) -> bool:
        return (isinstance(other, Field) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"Field({self.literal(explicit_modulus=True)})"

    def __str__(self) -> str:
        return self.literal()

    def literal(self, explicit_modulus: bool = False) -> str:
        body = f"{self.p}" if self.k == 1 else f"{self.p}^{self.k}"
        if explicit_modulus and self.k > 1:
            body += "; mod=" + ",".join(str(c) for c in self.modulus)
        return f"GF({body})"

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    # ----- construction helpers -----

    def _slow_mul(self, a: int, b: int) -> int:
        if self.p == 2:
            k, mod = self.k, self.modulus_int
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if (a >> k) & 1:
                    a ^= mod
            return r
        prod = gfp_poly_mul(decode_digits(a, self.p, self.k),
                            decode_digits(b, self.p, self.k), self.p)
        return encode_digits(gfp_poly_mod(prod, self.modulus, self.p), self.p)

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        order = self.q - 1
        if order == 1:
            self._exp, self._log = [1, 1], [0, 0]
            return
        factors = prime_factors(order)
        generator = None
        for g in range(2 if self.q > 2 else 1, self.q):
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                generator = g
                break
        if generator is None:
            raise FieldConstructionError("no primitive element found", {"q": self.q})
        exp = [0] * (2 * order)
        log = [0] * self.q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, generator)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp, self._log = exp, log
        self.primitive = generator

    def _compute_trace_basis(self) -> List[int]:
        traces = []
        for i in range(self.k):
            basis = self.p ** i
            total, x = 0, basis
            for _ in range(self.k):
                total = self.add(total, x)
                x = self.pow(x, self.p)
            if total >= self.p:
                raise FieldConstructionError("trace left the prime field", {"i": i})
            traces.append(total)
        return traces

    # ----- raw arithmetic on encodings -----

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        p, out, scale = self.p, 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return (a * b) % self.p
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldZeroDivisionError(f"inversion of 0 in {self}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._slow_pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._slow_pow(a, e % (self.q - 1) or (self.q - 1))

    def scalar(self, n: int) -> int:
        """The image of the integer n under Z -> GF(p)."""
        return n % self.p

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def trace(self, a: int) -> int:
        """Absolute trace to GF(p), returned as an integer in [0, p)."""
        if self.p == 2:
            return bin(a & self._trace_mask).count("1") & 1
        total = 0
        for i, c in enumerate(decode_digits(a, self.p, self.k)):
            total += c * self._trace_basis[i]
        return total % self.p

    def sqrt(self, a: int) -> int:
        if self.p != 2:
            raise CharacteristicError(
                f"square roots by Frobenius inversion need characteristic 2, got {self.p}")
        if self.k == 1 or a == 0:
            return a
        if self._exp is not None:
            return self._exp[(self._log[a] << (self.k - 1)) % (self.q - 1)]
        for _ in range(self.k - 1):
            a = self._slow_mul(a, a)
        return a

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt_odd(self, a: int) -> Optional[int]:
        """Some square root in odd characteristic, or None; found by search (small fields)."""
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        if self._exp is not None:
            return self._exp[self._log[a] // 2]
        for x in range(1, self.q):
            if self.mul(x, x) == a:
                return x
        return None

    # ----- elements -----

    def digits(self, a: int) -> List[int]:
        return decode_digits(a, self.p, self.k)

    def from_digits(self, digits: Sequence[int]) -> "FieldElement":
        digits = gfp_poly_mod(list(digits), self.modulus, self.p)
        return FieldElement(self, encode_digits(digits, self.p))

    def wrap(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def coerce(self, x) -> int:
        """Raw encoding of a FieldElement of this field or an integer of GF(p)."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise MixedFieldError(f"element of {x.field} used in {self}")
            return x.value
        if isinstance(x, bool) or not isinstance(x, int):
            raise MixedFieldError(f"cannot interpret {x!r} as an element of {self}")
        return x % self.p

    def raw(self, x) -> int:
        """
        Raw encoding of a FieldElement of this field or of an int that already
        is an encoding in range(q). Over a prime field any int is reduced mod p.
        """
        if isinstance(x, FieldElement):
            if x.field != self:
                raise MixedFieldError(f"element of {x.field} used in {self}")
            return x.value
        if isinstance(x, bool) or not isinstance(x, Integral):
            raise MixedFieldError(f"cannot interpret {x!r} as an element of {self}")
        x = int(x)
        if self.k == 1:
            return x % self.p
        if not 0 <= x < self.q:
            raise MixedFieldError(f"{x} is not an element encoding of {self}", {"q": self.q})
        return x

    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of t modulo the defining polynomial."""
        if self.k == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def subfield_elements(self, size: int) -> List[int]:
        """Nonzero elements of the subfield of order ``size``, via the exp table."""
        step = (self.q - 1) // (size - 1)
        return sorted(self._exp[j * step] for j in range(size - 1))

    def raw_elements(self) -> range:
        return range(self.q)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.q):
            yield FieldElement(self, v)

    def format(self, a: int) -> str:
        """Polynomial-basis notation ``c0+c1*t+c2*t^2``; zero prints as ``0``."""
        parts = []
        for i, c in enumerate(self.digits(a)):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                power = "t" if i == 1 else f"t^{i}"
                parts.append(power if c == 1 else f"{c}*{power}")
        return "+".join(parts) if parts else "0"


class FieldElement:
    """An immutable element of a Field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", int(value))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other) -> int:
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, int(e)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.value))

    def trace(self) -> int:
        return self.field.trace(self.value)

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.field, self.field.sqrt(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({self.field}, {self.field.format(self.value)})"

    def __str__(self) -> str:
        return self.field.format(self.value)
