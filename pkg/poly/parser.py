"""
Recursive-descent parser for polynomial text.

Grammar (whitespace ignored):
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' integer)?
    atom   := integer | variable | 't' | '(' expr ')'
Integers are reduced into the prime field; ``t`` is the class of the field's
polynomial-basis generator unless it is declared as a variable.
"""
import re
from typing import List, Optional, Sequence, Tuple

from conicbundle.exceptions import FormParseError, HomogeneityError
from field.galois import Field

from .forms import Form, default_names

TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = TOKEN.match(text, pos)
        if not match:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormParseError(f"unexpected character {text[start]!r}", start, text)
        kind = match.lastgroup
        value = match.group(kind)
        tokens.append((kind, value, match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: Field, names: Sequence[str]):
        self.text = text
        self.field = field
        self.names = list(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.n = len(self.names)
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> Tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str, token: Optional[Tuple[str, str, int]] = None) -> FormParseError:
        token = token or self.peek()
        return FormParseError(message, token[2], self.text)

    def parse(self) -> Form:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        form = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return form

    def expr(self) -> Form:
        negate = False
        if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            negate = self.take()[1] == "-"
        result = self.term()
        if negate:
            result = -result
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Form:
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Form:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, value, _ = self.peek()
            if kind != "num":
                raise self.error("expected an integer exponent")
            self.take()
            base = base ** int(value)
        return base

    def atom(self) -> Form:
        kind, value, start = self.take()
        if kind == "num":
            return Form.constant(self.field, self.n, int(value))
        if kind == "name":
            if value in self.index:
                return Form.variable(self.field, self.n, self.index[value])
            if value == "t":
                if self.field.k == 1:
                    raise FormParseError(
                        f"coefficient t is not an element of {self.field}", start, self.text)
                return Form.constant(self.field, self.n, self.field.gen)
            raise FormParseError(f"unknown variable {value!r}", start, self.text)
        if kind == "op" and value == "(":
            inner = self.expr()
            if self.peek()[1] != ")":
                raise self.error("expected ')'")
            self.take()
            return inner
        raise FormParseError(f"unexpected {value or 'end of input'!r}", start, self.text)


def parse_form(text: str, field: Field, variables: Optional[Sequence[str]] = None,
               homogeneous: bool = True) -> Form:
    """
    Parse ``text`` into a Form over ``field``.

    Args:
        text: polynomial text, e.g. ``"x0^3 + (1+t)*x1*x2^2"``.
        field: coefficient field.
        variables: ordered variable names; defaults to x0..x4.
        homogeneous: when True a non-homogeneous result raises HomogeneityError.
    """
    names = list(variables) if variables is not None else default_names(5)
    form = _Parser(text, field, names).parse()
    if homogeneous and not form.is_homogeneous:
        degrees = sorted({sum(e) for e in form.terms})
        raise HomogeneityError(
            f"form is not homogeneous (degrees {degrees})", {"degrees": degrees})
    return form
