"""Exact arithmetic in the three coefficient fields of the workbench.

Supported fields:

* ``rational`` -- plain rationals, backed by :class:`fractions.Fraction`.
* ``rational_function_q`` -- univariate rational functions in the formal
  deformation parameter ``q``.  Values are stored as reduced fractions of
  integer-coefficient polynomials: numerator and denominator share no
  polynomial factor, the pair of integer contents is coprime, and the
  denominator has a positive leading coefficient.  Equality is therefore
  structural.
* ``cyclotomic`` -- the field generated over the rationals by a primitive
  root of unity ``zeta`` of odd order ``l > 1``.  Values are coefficient
  vectors of length ``phi(l)`` over the basis ``1, zeta, ..., zeta^(phi-1)``,
  reduced modulo the ``l``-th cyclotomic polynomial.  Inverses come from the
  extended Euclidean algorithm against that modulus.

All values are immutable and all operations are pure functions, so scalars
may be shared freely between threads and cached by identity of their field.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DomainError, ParameterError, ZeroDivisorError

# ---------------------------------------------------------------------------
# Integer polynomial helpers.  Polynomials are tuples of int coefficients in
# increasing degree; the zero polynomial is the empty tuple.
# ---------------------------------------------------------------------------

_ZERO_POLY: tuple[int, ...] = ()
_ONE_POLY: tuple[int, ...] = (1,)


def _trim(coeffs) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return _ZERO_POLY
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _trim(out)


def _pscale(a, c: int):
    if c == 0:
        return _ZERO_POLY
    return tuple(x * c for x in a)


def _content(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def _primitive(a):
    """Return (content, primitive part) with positive leading coefficient."""
    if not a:
        return 0, _ZERO_POLY
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return g, tuple(c // g for c in a)


def _pseudo_rem(a, b):
    """Pseudo-remainder of a by b over the integers (b nonzero)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da, la = len(a) - 1, a[-1]
        a = [lb * c for c in a]
        for i, cb in enumerate(b):
            a[da - db + i] -= la * cb
        while a and a[-1] == 0:
            a.pop()
    return _trim(a)


def _pgcd(a, b):
    """Greatest common divisor in Z[q], primitive with positive lead."""
    if not a:
        return _primitive(b)[1]
    if not b:
        return _primitive(a)[1]
    ca, r0 = _primitive(a)
    cb, r1 = _primitive(b)
    while r1:
        r0, r1 = r1, _primitive(_pseudo_rem(r0, r1))[1]
    cont = gcd(abs(ca), abs(cb))
    if r0 == _ONE_POLY and cont == 1:
        return _ONE_POLY
    return _trim([cont * c for c in r0]) if cont != 1 else r0


def _pdiv_exact(a, b):
    """Exact division in Z[q]; raises if b does not divide a."""
    if not a:
        return _ZERO_POLY
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    out = [0] * (len(a) - db)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[k + db]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        out[k] = c // lb
        for i, cb in enumerate(b):
            a[k + i] -= out[k] * cb
    if any(a[:db] if db else []):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def cyclotomic_polynomial(l: int) -> tuple[int, ...]:
    """Coefficients of the l-th cyclotomic polynomial, low degree first."""
    poly = _trim([-1] + [0] * (l - 1) + [1])  # q^l - 1
    for d in range(1, l):
        if l % d == 0:
            poly = _pdiv_exact(poly, cyclotomic_polynomial(d))
    return poly


def _poly_str(coeffs, var: str, fractional=False) -> str:
    """Render a polynomial, highest degree first, e.g. ``q^2-q+1``."""
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        if k == 0:
            mono = str(abs(c) if not fractional else abs(c))
        else:
            head = var if k == 1 else f"{var}^{k}"
            mono = head if abs(c) == 1 else f"{abs(c)}*{head}"
        if not parts:
            parts.append(mono if c > 0 else "-" + mono)
        else:
            parts.append(("+" if c > 0 else "-") + mono)
    return "".join(parts)


# ---------------------------------------------------------------------------
# Scalar wrapper
# ---------------------------------------------------------------------------


class Scalar:
    """An immutable element of one of the coefficient fields."""

    __slots__ = ("field", "v")

    def __init__(self, field: Field, v):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ParameterError("scalars from different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.v, other.v))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.v))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.v, other.v))

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        return Scalar(self.field, self.field._inv(self.v))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other * self.inv()

    def __pow__(self, e: int) -> Scalar:
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = base.inv(), -e
        out = self.field.one
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.v == other.v

    def __hash__(self):
        return hash((id(self.field.__class__), self.field.key, self.v))

    def is_zero(self) -> bool:
        return self.v == self.field.zero.v

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return self.field.format(self.v)

    def __repr__(self):
        return f"Scalar({self})"


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


class Field:
    """Common interface of the three coefficient fields."""

    kind: str
    l: int | None = None
    modulus: tuple[int, ...] | None = None

    @property
    def key(self):
        return (self.kind, self.l)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def scalar(self, v) -> Scalar:
        return Scalar(self, v)

    def from_int(self, n: int) -> Scalar:
        return self.from_fraction(Fraction(n))

    def from_fraction(self, f: Fraction) -> Scalar:  # pragma: no cover
        raise NotImplementedError

    @property
    def q(self) -> Scalar:
        """Image of the deformation parameter q in this field."""
        raise NotImplementedError

    def q_power(self, e: int) -> Scalar:
        return self.q ** e

    def format(self, v) -> str:  # pragma: no cover
        raise NotImplementedError


class RationalField(Field):
    """The rational numbers."""

    kind = "rational"

    def __init__(self):
        self.zero = Scalar(self, Fraction(0))
        self.one = Scalar(self, Fraction(1))

    def from_fraction(self, f: Fraction) -> Scalar:
        return Scalar(self, Fraction(f))

    @property
    def q(self) -> Scalar:
        # q specializes to 1 in the undeformed field.
        return self.one

    def q_power(self, e: int) -> Scalar:
        return self.one

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisorError("division by zero in the rational field")
        return 1 / a

    def format(self, v) -> str:
        return str(v)

    def __repr__(self):
        return "RationalField()"


class RationalFunctionField(Field):
    """Rational functions in q with exact, structurally-normalized storage."""

    kind = "rational_function_q"

    def __init__(self):
        self.zero = Scalar(self, (_ZERO_POLY, _ONE_POLY))
        self.one = Scalar(self, (_ONE_POLY, _ONE_POLY))
        self._q = Scalar(self, ((0, 1), _ONE_POLY))
        self._qpow_cache: dict[int, Scalar] = {}

    @property
    def q(self) -> Scalar:
        return self._q

    def q_power(self, e: int) -> Scalar:
        s = self._qpow_cache.get(e)
        if s is None:
            if e >= 0:
                s = Scalar(self, (_trim([0] * e + [1]), _ONE_POLY))
            else:
                s = Scalar(self, (_ONE_POLY, _trim([0] * (-e) + [1])))
            self._qpow_cache[e] = s
        return s

    def from_fraction(self, f: Fraction) -> Scalar:
        f = Fraction(f)
        num = _trim([f.numerator])
        den = (f.denominator,)
        return Scalar(self, (num, den))

    def from_polys(self, num, den=_ONE_POLY) -> Scalar:
        return Scalar(self, self._normalize(_trim(num), _trim(den)))

    @staticmethod
    def _normalize(num, den):
        if not den:
            raise ZeroDivisorError("zero denominator in q-rational function")
        if not num:
            return (_ZERO_POLY, _ONE_POLY)
        if den == _ONE_POLY:
            return (num, den)
        # strip common powers of q
        vn = next(i for i, c in enumerate(num) if c)
        vd = next(i for i, c in enumerate(den) if c)
        v = min(vn, vd)
        if v:
            num, den = num[v:], den[v:]
        g = _pgcd(num, den)
        if g != _ONE_POLY:
            num, den = _pdiv_exact(num, g), _pdiv_exact(den, g)
        cn, cd = _content(num), abs(_content(den))
        c = gcd(cn, cd)
        if c > 1:
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return (num, den)

    def _add(self, a, b):
        n1, d1 = a
        n2, d2 = b
        if d1 == d2:
            return self._normalize(_padd(n1, n2), d1)
        return self._normalize(_padd(_pmul(n1, d2), _pmul(n2, d1)), _pmul(d1, d2))

    def _neg(self, a):
        return (_pneg(a[0]), a[1])

    def _mul(self, a, b):
        n1, d1 = a
        n2, d2 = b
        if d1 == _ONE_POLY and d2 == _ONE_POLY:
            return (_pmul(n1, n2), _ONE_POLY)
        return self._normalize(_pmul(n1, n2), _pmul(d1, d2))

    def _inv(self, a):
        n, d = a
        if not n:
            raise ZeroDivisorError("division by zero in Q(q)")
        if n[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return (d, n)

    def evaluate(self, s: Scalar, at: Scalar) -> Scalar:
        """Evaluate a value of this field at a point of another field."""
        num, den = s.v
        f = at.field

        def horner(poly):
            acc = f.zero
            for c in reversed(poly):
                acc = acc * at + f.from_int(c)
            return acc

        d = horner(den)
        if d.is_zero():
            raise DomainError("denominator vanishes at the evaluation point")
        return horner(num) / d

    def format(self, v) -> str:
        num, den = v
        ns = _poly_str(num, "q")
        if den == _ONE_POLY:
            return ns
        ds = _poly_str(den, "q")
        if len([c for c in num if c]) > 1:
            ns = f"({ns})"
        if len([c for c in den if c]) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return "RationalFunctionField()"


class CyclotomicField(Field):
    """The field Q(zeta) for zeta a primitive l-th root of unity, l odd."""

    kind = "cyclotomic"

    def __init__(self, l: int):
        if l <= 1 or l % 2 == 0:
            raise ParameterError("cyclotomic order l must be odd and > 1")
        self.l = l
        self.modulus = cyclotomic_polynomial(l)
        self.degree = len(self.modulus) - 1
        phi = self.degree
        self.zero = Scalar(self, (Fraction(0),) * phi)
        one = [Fraction(0)] * phi
        one[0] = Fraction(1)
        self.one = Scalar(self, tuple(one))
        # reduction rows for t^k, k = phi .. 2*phi-2
        self._red: list[tuple[Fraction, ...]] = []
        prev = [Fraction(-c, self.modulus[-1]) for c in self.modulus[:-1]]
        self._red.append(tuple(prev))
        for _ in range(phi - 2):
            nxt = [Fraction(0)] + prev[:-1]
            top = prev[-1]
            if top:
                for i in range(phi):
                    nxt[i] += top * self._red[0][i]
            self._red.append(tuple(nxt))
            prev = nxt
        self._zeta_pows = self._build_zeta_powers()

    def _build_zeta_powers(self):
        pows = [self.one.v]
        t = [Fraction(0)] * self.degree
        if self.degree > 1:
            t[1] = Fraction(1)
            t = tuple(t)
        else:
            t = self._red[0] if self._red else self.one.v
        cur = self.one.v
        for _ in range(self.l - 1):
            cur = self._mul(cur, t)
            pows.append(cur)
        return pows

    def from_fraction(self, f: Fraction) -> Scalar:
        v = [Fraction(0)] * self.degree
        v[0] = Fraction(f)
        return Scalar(self, tuple(v))

    def from_coeffs(self, coeffs) -> Scalar:
        """Build a value from up to phi(l) rational coefficients of zeta powers."""
        v = [Fraction(0)] * self.degree
        acc = self.zero
        for k, c in enumerate(coeffs):
            if c:
                acc = acc + self.from_fraction(Fraction(c)) * self.zeta_power(k)
        return acc if coeffs else Scalar(self, tuple(v))

    @property
    def zeta(self) -> Scalar:
        return self.zeta_power(1)

    def zeta_power(self, k: int) -> Scalar:
        return Scalar(self, self._zeta_pows[k % self.l])

    @property
    def q(self) -> Scalar:
        return self.zeta

    def q_power(self, e: int) -> Scalar:
        return self.zeta_power(e)

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        phi = self.degree
        out = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        for k in range(2 * phi - 2, phi - 1, -1):
            c = out[k]
            if c:
                row = self._red[k - phi]
                for i in range(phi):
                    out[i] += c * row[i]
        return tuple(out[:phi])

    def _inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisorError("division by zero in the cyclotomic field")

        def ftrim(u):
            while u and u[-1] == 0:
                u.pop()
            return u

        def fdivmod(u, w):
            u = list(u)
            quo = [Fraction(0)] * max(0, len(u) - len(w) + 1)
            dw, lw = len(w) - 1, w[-1]
            for k in range(len(u) - len(w), -1, -1):
                c = u[k + dw] / lw
                if c:
                    quo[k] = c
                    for i, cw in enumerate(w):
                        u[k + i] -= c * cw
            return quo, ftrim(u)

        def fmulsub(u, quo, w):
            # u - quo * w
            out = list(u) + [Fraction(0)] * max(0, len(quo) + len(w) - 1 - len(u))
            for i, cq in enumerate(quo):
                if cq:
                    for j, cw in enumerate(w):
                        out[i + j] -= cq * cw
            return ftrim(out)

        # extended Euclid in Q[t] against the cyclotomic modulus
        r0 = [Fraction(c) for c in self.modulus]
        r1 = ftrim(list(a))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            quo, rem = fdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, fmulsub(s0, quo, s1)
        # r1 is a nonzero constant and s1 * a == r1 (mod modulus)
        c = r1[0]
        inv = [x / c for x in s1]
        inv += [Fraction(0)] * (self.degree - len(inv))
        return tuple(inv[: self.degree])

    def format(self, v) -> str:
        parts = []
        for k in range(self.degree - 1, -1, -1):
            c = v[k]
            if not c:
                continue
            if k == 0:
                mono = str(abs(c))
            else:
                head = "zeta" if k == 1 else f"zeta^{k}"
                mono = head if abs(c) == 1 else f"{abs(c)}*{head}"
            if not parts:
                parts.append(mono if c > 0 else "-" + mono)
            else:
                parts.append(("+" if c > 0 else "-") + mono)
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"CyclotomicField({self.l})"


_RATIONAL = RationalField()
_RATFUNC = RationalFunctionField()
_CYC_CACHE: dict[int, CyclotomicField] = {}

_KIND_ALIASES = {
    "rational": "rational",
    "rationalfunctioninq": "rational_function_q",
    "rational_function_q": "rational_function_q",
    "cyclotomic": "cyclotomic",
}


def make_field(kind: str, l: int | None = None) -> Field:
    """Return the field descriptor for the given kind (and order l)."""
    canon = _KIND_ALIASES.get(kind.replace("-", "_").lower())
    if canon is None:
        raise ParameterError(f"unknown field kind {kind!r}")
    if canon == "rational":
        return _RATIONAL
    if canon == "rational_function_q":
        return _RATFUNC
    if l is None:
        raise ParameterError("cyclotomic field needs the order l")
    if l not in _CYC_CACHE:
        _CYC_CACHE[l] = CyclotomicField(l)
    return _CYC_CACHE[l]


def q_integer(n: int, field: Field) -> Scalar:
    """The q-integer 1 + q + ... + q^(n-1); zero for n = 0."""
    if n < 0:
        raise ParameterError("q_integer takes a nonnegative integer")
    out = field.zero
    for k in range(n):
        out = out + field.q_power(k)
    return out


def specialize_at_root(value: Scalar, cyc: CyclotomicField) -> Scalar:
    """Evaluate a Q(q) value at q = zeta; error if the denominator vanishes."""
    if not isinstance(value.field, RationalFunctionField):
        raise ParameterError("specialization takes a rational-function value")
    return value.field.evaluate(value, cyc.zeta)
