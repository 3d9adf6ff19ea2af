"""
Text forms of fields and elements: ``GF(p^k)``, ``GF(p^k; mod=c0,c1,...)``,
``GF(q)`` for a prime power q, and elements such as ``1+t^2`` or ``2*t+1``.
"""
import re

from conicbundle.exceptions import FieldConstructionError, FormParseError

from .galois import Field, FieldElement, is_prime
from .services import make_field

FIELD_LITERAL = re.compile(
    r"^\s*GF\(\s*(?P<base>\d+)\s*(?:\^\s*(?P<exp>\d+)\s*)?"
    r"(?:;\s*mod\s*=\s*(?P<mod>[\d\s,]+))?\)\s*$",
    re.IGNORECASE,
)
ELEMENT_TERM = re.compile(
    r"\s*(?P<sign>[+-]?)\s*(?:(?P<coef>\d+)\s*\*?\s*)?(?P<t>t(?:\s*\^\s*(?P<e>\d+))?)?\s*")


def _prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest == 1:
                return p, k
            break
    raise FieldConstructionError(f"{q} is not a prime power", {"q": q})


def parse_field_literal(text: str) -> Field:
    """Parse a CLI field literal into a Field."""
    match = FIELD_LITERAL.match(text or "")
    if not match:
        raise FieldConstructionError(f"malformed field literal {text!r}", {"text": text})
    base = int(match.group("base"))
    if match.group("exp") is not None:
        p, k = base, int(match.group("exp"))
    elif is_prime(base):
        p, k = base, 1
    else:
        p, k = _prime_power(base)
    modulus = None
    if match.group("mod"):
        modulus = [int(c) for c in match.group("mod").replace(" ", "").split(",") if c]
    return make_field(p, k, modulus)


def parse_element(text: str, field: Field) -> FieldElement:
    """Parse a polynomial-basis element like ``1+t+t^3`` (integers reduce mod p)."""
    source = text.strip()
    if not source:
        raise FormParseError("empty element", 0, text)
    pos = 0
    value = field.zero
    gen = field.gen
    while pos < len(source):
        match = ELEMENT_TERM.match(source, pos)
        if not match or match.end() == pos or not (match.group("coef") or match.group("t")):
            raise FormParseError("invalid element literal", pos, text)
        if pos > 0 and not match.group("sign"):
            raise FormParseError("expected '+' or '-'", pos, text)
        term = field(int(match.group("coef") or 1))
        if match.group("t"):
            term = term * gen ** int(match.group("e") or 1)
        value = value - term if match.group("sign") == "-" else value + term
        pos = match.end()
    return value


def format_element(x: FieldElement) -> str:
    return x.field.format(x.value)
