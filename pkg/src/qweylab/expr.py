"""Shared expression grammar: parsing and deterministic printing.

Grammar atoms: integers, fractions ``p/r``, the symbols ``q`` and ``zeta``,
generators ``x1..xn`` and ``d1..dn``, and Euler operators ``a1..an`` (parsed
as ``1 + x_i d_i``).  Operators are ``+ - * ^`` with parentheses; ``*`` is
noncommutative and left-associative, ``^`` binds tighter than ``*`` and takes
an integer exponent.  Negative exponents are allowed only on ``a`` symbols
(giving localized fractions) and on scalar atoms.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ExprError
from .qweyl import AlgebraSpec, LocalizedElement, PBWElement
from .scalars import Field, Scalar

# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_OPS = set("+-*^()/")


class _Token:
    __slots__ = ("kind", "value", "col")

    def __init__(self, kind, value, col):
        self.kind = kind
        self.value = value
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        col = i + 1
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Token("int", int(text[i:j]), col))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(_Token("name", text[i:j], col))
            i = j
            continue
        if c in _OPS:
            out.append(_Token("op", c, col))
            i += 1
            continue
        raise ExprError(f"unexpected character {c!r}", col)
    out.append(_Token("end", None, n + 1))
    return out


# ---------------------------------------------------------------------------
# Parser (precedence climbing over + and *, with ^ handled at the atom level)
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, field: Field, spec: AlgebraSpec | None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.field = field
        self.spec = spec

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        tok = self.advance()
        if tok.kind != "op" or tok.value != op:
            raise ExprError(f"expected {op!r}", tok.col)

    def parse(self):
        value = self.parse_sum()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprError("unexpected trailing input", tok.col)
        return value

    def parse_sum(self):
        value = self.parse_product()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.advance()
                rhs = self.parse_product()
                value = _add(value, rhs) if tok.value == "+" else _add(value, _neg(rhs))
            else:
                return value

    def parse_product(self):
        value = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value == "*":
                self.advance()
                value = _mul(value, self.parse_factor(), tok.col)
            elif tok.kind == "op" and tok.value == "/":
                self.advance()
                rhs = self.parse_factor()
                if not isinstance(rhs, Scalar):
                    raise ExprError("can only divide by a scalar", tok.col)
                value = _mul(value, rhs.inv(), tok.col)
            else:
                return value

    def parse_factor(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value == "-":
            self.advance()
            return _neg(self.parse_factor())
        return self.parse_power()

    def parse_power(self):
        base, kind, col = self.parse_atom()
        tok = self.peek()
        if not (tok.kind == "op" and tok.value == "^"):
            return base
        self.advance()
        exp = self.parse_exponent()
        if kind == "alpha":
            index = base  # parse_atom returns the index for bare alpha symbols
            if exp >= 0:
                return self.spec.alpha(index) ** exp
            den = [0] * self.spec.n
            den[index - 1] = -exp
            return LocalizedElement(self.spec.one(), tuple(den))
        if exp >= 0:
            return base**exp
        if kind == "scalar":
            return base**exp
        raise ExprError("negative powers are allowed only on a-symbols", col)

    def parse_exponent(self) -> int:
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.value == "-":
            self.advance()
            sign = -1
        tok = self.advance()
        if tok.kind != "int":
            raise ExprError("exponent must be an integer", tok.col)
        return sign * tok.value

    def parse_atom(self):
        """Returns (value, kind, col); kind in {'scalar','element','alpha'}.

        For a bare a-symbol the returned value is its generator index; the
        caller converts it (this keeps negative powers exact, not inverted).
        """
        tok = self.advance()
        if tok.kind == "int":
            nxt = self.peek()
            after = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if (
                nxt.kind == "op"
                and nxt.value == "/"
                and after is not None
                and after.kind == "int"
            ):
                self.advance()
                dtok = self.advance()
                if dtok.value == 0:
                    raise ExprError("fraction needs a nonzero denominator", dtok.col)
                return self.field.from_fraction(Fraction(tok.value, dtok.value)), "scalar", tok.col
            return self.field.from_int(tok.value), "scalar", tok.col
        if tok.kind == "name":
            return self.parse_name(tok)
        if tok.kind == "op" and tok.value == "(":
            value = self.parse_sum()
            self.expect_op(")")
            return value, "element" if not isinstance(value, Scalar) else "scalar", tok.col
        raise ExprError("expected a value", tok.col)

    def parse_name(self, tok):
        name = tok.value
        if name == "q":
            try:
                return self.field.q, "scalar", tok.col
            except Exception:
                raise ExprError("symbol q is not available in this field", tok.col)
        if name == "zeta":
            if getattr(self.field, "kind", None) != "cyclotomic":
                raise ExprError("symbol zeta needs a cyclotomic field", tok.col)
            return self.field.zeta, "scalar", tok.col
        head, tail = name[0], name[1:]
        if head in "xda" and tail.isdigit():
            if self.spec is None:
                raise ExprError("generators are not allowed in a scalar literal", tok.col)
            i = int(tail)
            if not 1 <= i <= self.spec.n:
                raise ExprError(f"generator index out of range 1..{self.spec.n}", tok.col)
            if head == "x":
                return self.spec.x(i), "element", tok.col
            if head == "d":
                return self.spec.d(i), "element", tok.col
            nxt = self.peek()
            if nxt.kind == "op" and nxt.value == "^":
                return i, "alpha", tok.col
            return self.spec.alpha(i), "element", tok.col
        raise ExprError(f"unknown symbol {name!r}", tok.col)


def _neg(v):
    return -v


def _add(u, v):
    if isinstance(u, Scalar) and not isinstance(v, Scalar):
        u, v = v, u
    if isinstance(v, LocalizedElement) and not isinstance(u, LocalizedElement):
        return v + u
    return u + v


def _mul(u, v, col):
    return u * v


def parse_expression(text: str, spec: AlgebraSpec):
    """Parse an expression over the given algebra; returns a Scalar,
    PBWElement, or LocalizedElement."""
    value = _Parser(text, spec.field, spec).parse()
    if isinstance(value, int):  # bare alpha index cannot reach here
        raise ExprError("incomplete expression")
    return value


def parse_scalar(text: str, field: Field) -> Scalar:
    """Parse a scalar literal (no generators allowed)."""
    value = _Parser(text, field, None).parse()
    if not isinstance(value, Scalar):
        raise ExprError("expected a scalar literal")
    return value


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _split_sign(coeff_str: str):
    """Return (sign, body) for joining terms with ' + ' / ' - '."""
    core = coeff_str[1:] if coeff_str.startswith("-") else coeff_str
    if "+" in core or "-" in core:
        return "+", f"({coeff_str})"
    if coeff_str.startswith("-"):
        return "-", core
    return "+", coeff_str


def _monomial_str(a, b, c=None) -> str:
    parts = []
    for sym, vec in (("x", a), ("d", b)) if c is None else (("x", a), ("d", b), ("a", c)):
        for i, e in enumerate(vec):
            if e == 0:
                continue
            head = f"{sym}{i + 1}"
            parts.append(head if e == 1 else f"{head}^{e}")
    return "*".join(parts)


def _format_terms(items) -> str:
    if not items:
        return "0"
    rendered = []
    for key, coeff in items:
        mono = _monomial_str(*key) if isinstance(key, tuple) else key
        cs = str(coeff)
        if not mono:
            sign, body = _split_sign(cs)
        elif cs == "1":
            sign, body = "+", mono
        elif cs == "-1":
            sign, body = "-", mono
        else:
            sign, body = _split_sign(cs)
            body = f"{body}*{mono}"
        rendered.append((sign, body))
    first_sign, first_body = rendered[0]
    out = first_body if first_sign == "+" else f"-{first_body}"
    for sign, body in rendered[1:]:
        out += f" {sign} {body}"
    return out


def format_pbw(u: PBWElement) -> str:
    return _format_terms(u.sorted_terms())


def format_localized(s: LocalizedElement) -> str:
    num = format_pbw(s.numerator)
    if not any(s.denom):
        return num
    den = "*".join(
        f"a{i + 1}^-{k}" for i, k in enumerate(s.denom) if k
    )
    if num == "1":
        return den
    if len(s.numerator.terms) > 1:
        num = f"({num})"
    return f"{num}*{den}"
