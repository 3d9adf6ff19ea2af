"""
Sparse multivariate polynomials over a Field.

A Form maps exponent tuples to raw coefficient encodings of its field (see
field.galois); zero coefficients are never stored. Forms are immutable and
hashable, so they can key caches and live in sets.
"""
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from conicbundle.exceptions import DimensionMismatchError, MixedFieldError
from field.galois import Field, FieldElement

Exponent = Tuple[int, ...]
Terms = Dict[Exponent, int]


def grevlex_key(exp: Exponent) -> Tuple:
    """Sort key: larger key means larger monomial in degree reverse lexicographic order."""
    return (sum(exp),) + tuple(-e for e in reversed(exp))


def lex_key(exp: Exponent) -> Tuple:
    return exp


ORDER_KEYS: Dict[str, Callable[[Exponent], Tuple]] = {
    "grevlex": grevlex_key,
    "lex": lex_key,
}


def default_names(n: int) -> List[str]:
    return [f"x{i}" for i in range(n)]


def add_terms(field: Field, target: Terms, source: Terms, scale: int = 1,
              shift: Optional[Exponent] = None) -> None:
    """target += scale * x^shift * source, in place, dropping cancelled terms."""
    for exp, c in source.items():
        if shift is not None:
            exp = tuple(a + b for a, b in zip(exp, shift))
        value = field.add(target.get(exp, 0), field.mul(scale, c) if scale != 1 else c)
        if value:
            target[exp] = value
        else:
            target.pop(exp, None)


def mul_terms(field: Field, a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = tuple(x + y for x, y in zip(ea, eb))
            value = field.add(out.get(exp, 0), field.mul(ca, cb))
            if value:
                out[exp] = value
            else:
                out.pop(exp, None)
    return out


class Form:
    """A polynomial in ``nvars`` variables with coefficients in ``field``."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: Field, nvars: int, terms: Optional[Terms] = None):
        self.field = field
        self.nvars = nvars
        clean: Terms = {}
        for exp, c in (terms or {}).items():
            if len(exp) != nvars:
                raise DimensionMismatchError(
                    f"exponent {exp} does not have {nvars} entries")
            if c:
                clean[tuple(exp)] = c
        self.terms = clean
        self._hash = None

    # ----- constructors -----

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "Form":
        return cls(field, nvars)

    @classmethod
    def constant(cls, field: Field, nvars: int, c) -> "Form":
        return cls(field, nvars, {(0,) * nvars: field.coerce(c)})

    @classmethod
    def variable(cls, field: Field, nvars: int, i: int) -> "Form":
        exp = [0] * nvars
        exp[i] = 1
        return cls(field, nvars, {tuple(exp): 1})

    @classmethod
    def linear(cls, field: Field, coefficients: Sequence[int]) -> "Form":
        n = len(coefficients)
        terms = {}
        for i, c in enumerate(coefficients):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(field, n, terms)

    # ----- basic properties -----

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero form."""
        return max((sum(e) for e in self.terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp: Exponent) -> FieldElement:
        return FieldElement(self.field, self.terms.get(tuple(exp), 0))

    def monomials(self, order: str = "grevlex") -> List[Exponent]:
        return sorted(self.terms, key=ORDER_KEYS[order], reverse=True)

    def variables_used(self) -> List[int]:
        return sorted({i for e in self.terms for i, a in enumerate(e) if a})

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    # ----- arithmetic -----

    def _check(self, other: "Form") -> None:
        if other.field != self.field:
            raise MixedFieldError(f"forms over {self.field} and {other.field}")
        if other.nvars != self.nvars:
            raise DimensionMismatchError(
                f"forms in {self.nvars} and {other.nvars} variables")

    def _lift(self, other) -> "Form":
        if isinstance(other, Form):
            self._check(other)
            return other
        return Form.constant(self.field, self.nvars, other)

    def __add__(self, other) -> "Form":
        other = self._lift(other)
        terms = dict(self.terms)
        add_terms(self.field, terms, other.terms)
        return Form(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Form":
        f = self.field
        return Form(f, self.nvars, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "Form":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Form":
        return self._lift(other) - self

    def __mul__(self, other) -> "Form":
        if isinstance(other, Form):
            self._check(other)
            return Form(self.field, self.nvars, mul_terms(self.field, self.terms, other.terms))
        return self.scale(self.field.coerce(other))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Form":
        result = Form.constant(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> "Form":
        f = self.field
        return Form(f, self.nvars, {e: f.mul(c, v) for e, v in self.terms.items()})

    def monic(self, order: str = "grevlex") -> "Form":
        if self.is_zero():
            return self
        lead = self.terms[self.monomials(order)[0]]
        return self.scale(self.field.inv(lead))

    # ----- calculus and substitution -----

    def partial(self, i: int) -> "Form":
        """Formal derivative; the exponent factor is reduced mod p."""
        f = self.field
        terms: Terms = {}
        for exp, c in self.terms.items():
            if exp[i] == 0:
                continue
            factor = f.scalar(exp[i])
            if not factor:
                continue
            new = list(exp)
            new[i] -= 1
            terms[tuple(new)] = f.mul(factor, c)
        return Form(f, self.nvars, terms)

    def compose(self, images: Sequence["Form"]) -> "Form":
        """f(g_0, ..., g_{n-1}) for forms g_i sharing a field and variable count."""
        if len(images) != self.nvars:
            raise DimensionMismatchError(
                f"{len(images)} substitutions for {self.nvars} variables")
        if not images:
            return self
        target = images[0]
        for g in images:
            target._check(g)
        powers: Dict[Tuple[int, int], Form] = {}

        def power(i: int, e: int) -> Form:
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return powers[key]

        out: Terms = {}
        for exp, c in self.terms.items():
            term: Terms = {(0,) * target.nvars: c}
            for i, e in enumerate(exp):
                if e:
                    term = mul_terms(self.field, term, power(i, e).terms)
            add_terms(self.field, out, term)
        return Form(self.field, target.nvars, out)

    def substitute_linear(self, matrix: Sequence[Sequence[int]]) -> "Form":
        """f(Mx): x_i is replaced by sum_j M[i][j] x_j (raw entries)."""
        images = [Form.linear(self.field, list(row)) for row in matrix]
        return self.compose(images)

    def dehomogenize(self, i: int) -> "Form":
        """Set x_i = 1, keeping the variable count."""
        f = self.field
        terms: Terms = {}
        for exp, c in self.terms.items():
            new = list(exp)
            new[i] = 0
            new = tuple(new)
            value = f.add(terms.get(new, 0), c)
            if value:
                terms[new] = value
            else:
                terms.pop(new, None)
        return Form(f, self.nvars, terms)

    def split_by(self, indices: Sequence[int]) -> Dict[Exponent, "Form"]:
        """
        Group terms by their exponents in ``indices``; values are Forms in the
        remaining variables (in their original order).
        """
        rest = [i for i in range(self.nvars) if i not in indices]
        groups: Dict[Exponent, Terms] = {}
        for exp, c in self.terms.items():
            key = tuple(exp[i] for i in indices)
            groups.setdefault(key, {})[tuple(exp[i] for i in rest)] = c
        return {k: Form(self.field, len(rest), v) for k, v in groups.items()}

    def embed_variables(self, nvars: int, positions: Sequence[int]) -> "Form":
        """Re-index into ``nvars`` variables, variable i going to ``positions[i]``."""
        terms: Terms = {}
        for exp, c in self.terms.items():
            new = [0] * nvars
            for i, e in enumerate(exp):
                new[positions[i]] += e
            terms[tuple(new)] = c
        return Form(self.field, nvars, terms)

    def base_change(self, target: Field, embed: Callable[[int], int]) -> "Form":
        return Form(target, self.nvars, {e: embed(c) for e, c in self.terms.items()})

    # ----- evaluation -----

    def evaluate_raw(self, values: Sequence[int], target: Optional[Field] = None,
                     embed: Optional[Callable[[int], int]] = None) -> int:
        """Evaluate at raw encodings in ``target`` (default: own field)."""
        if len(values) != self.nvars:
            raise DimensionMismatchError(
                f"point has {len(values)} coordinates, form has {self.nvars} variables")
        F = target or self.field
        acc = 0
        for exp, c in self.terms.items():
            v = embed(c) if embed is not None else c
            for x, e in zip(values, exp):
                if e:
                    v = F.mul(v, F.pow(x, e))
                    if not v:
                        break
            acc = F.add(acc, v)
        return acc

    # ----- identity and printing -----

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def iter_terms(self, order: str = "grevlex") -> Iterator[Tuple[Exponent, int]]:
        for exp in self.monomials(order):
            yield exp, self.terms[exp]

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        names = list(names or default_names(self.nvars))
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.iter_terms():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            coef = self.field.format(c)
            if "+" in coef:
                coef = f"({coef})"
            if not factors:
                parts.append(coef)
            elif coef == "1":
                parts.append("*".join(factors))
            else:
                parts.append("*".join([coef] + factors))
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Form({self.field}, {self.format()})"


def forms_field(forms: Iterable[Form]) -> Field:
    forms = list(forms)
    field = forms[0].field
    for f in forms[1:]:
        if f.field != field:
            raise MixedFieldError(f"forms over {field} and {f.field}")
    return field
