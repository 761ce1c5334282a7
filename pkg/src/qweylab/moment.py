"""Torus-valued moment maps, the conjugation identity they encode, and
normal forms in the localized algebra modulo the moment left ideal.

The torus data is an n x d integer matrix A embedding a rank-d subtorus; the
comoment map sends the j-th subtorus coordinate to the product of Euler
operators alpha_i^(a_ij).  Reduction modulo the left ideal generated by these
products minus the target point eta rewrites every element into the canonical
basis x^a d^b alpha^c with min(a_i, b_i) = 0 and the alpha exponent vector a
canonical coset representative modulo the column lattice of A (column Hermite
normal form picks the representative; each subtracted lattice vector A t
contributes the multiplier prod eta_j^(t_j)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, ParameterError
from .exactla import column_hnf, hnf_reduce, require_full_column_rank
from .qweyl import (
    AlgebraSpec,
    CheckOutcome,
    ExpVec,
    LocalizedElement,
    PBWElement,
    _bump,
    _zero_vec,
)
from .scalars import Scalar


@dataclass(frozen=True)
class TorusData:
    """Embedding exponents of a rank-d subtorus of the rank-n torus."""

    n: int
    d: int
    a: tuple[tuple[int, ...], ...]  # n rows, d columns

    def __post_init__(self):
        if self.n < 1 or self.d < 0 or self.d > self.n:
            raise ParameterError("need 0 <= d <= n with n >= 1")
        if len(self.a) != self.n or any(len(row) != self.d for row in self.a):
            raise ParameterError("A must be an n x d integer matrix")
        if self.d:
            require_full_column_rank([list(r) for r in self.a], "embedding matrix A")

    @staticmethod
    def from_rows(rows) -> TorusData:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        d = len(rows[0]) if rows else 0
        return TorusData(len(rows), d, rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.a[i][j] for i in range(self.n))

    def weights_of(self, degree: ExpVec) -> tuple[int, ...]:
        """A^t applied to a lattice degree."""
        return tuple(
            sum(self.a[i][j] * degree[i] for i in range(self.n)) for j in range(self.d)
        )

    def is_invariant_degree(self, degree: ExpVec) -> bool:
        return all(w == 0 for w in self.weights_of(degree))


@dataclass(frozen=True)
class ReductionDatum:
    """Torus embedding, target point eta, and bookkeeping parameters."""

    torus: TorusData
    eta: tuple[Scalar, ...]
    l: int | None = None
    chi: tuple[int, ...] = ()  # carried but driving nothing in scope

    def __post_init__(self):
        if len(self.eta) != self.torus.d:
            raise ParameterError("eta must have one entry per subtorus coordinate")
        if any(e.is_zero() for e in self.eta):
            raise ParameterError("eta entries must be nonzero")


def quantum_comoment(
    exponents, torus: TorusData, spec: AlgebraSpec, basis: str = "z"
) -> LocalizedElement:
    """Image of a Laurent monomial of the torus (basis 'z') or of the
    subtorus (basis 'u', routed through A)."""
    exponents = tuple(int(e) for e in exponents)
    if basis == "u":
        if len(exponents) != torus.d:
            raise ParameterError("u-exponents must have length d")
        exponents = tuple(
            sum(torus.a[i][j] * exponents[j] for j in range(torus.d))
            for i in range(spec.n)
        )
    elif basis != "z":
        raise ParameterError("basis must be 'z' or 'u'")
    if len(exponents) != spec.n:
        raise ParameterError("z-exponents must have length n")
    num = spec.alpha_power(tuple(max(c, 0) for c in exponents))
    den = tuple(max(-c, 0) for c in exponents)
    return LocalizedElement(num, den)


def classical_moment_eval(p, w, torus: TorusData):
    """Point evaluation (p, w) -> ((1 + p_i w_i)_i, (prod_i (1+p_i w_i)^a_ij)_j)."""
    if len(p) != torus.n or len(w) != torus.n:
        raise ParameterError("p and w must have length n")
    t_point = []
    for i, (pi, wi) in enumerate(zip(p, w)):
        v = pi.field.one + pi * wi
        if v.is_zero():
            raise DomainError(f"1 + p_{i+1} w_{i+1} vanishes: outside the open locus")
        t_point.append(v)
    k_point = []
    for j in range(torus.d):
        acc = t_point[0].field.one
        for i in range(torus.n):
            acc = acc * t_point[i] ** torus.a[i][j]
        k_point.append(acc)
    return tuple(t_point), tuple(k_point)


def verify_moment_identity(torus: TorusData, spec: AlgebraSpec) -> CheckOutcome:
    """Conjugation by comoment values scales each generator by the grading
    character: alpha_i g alpha_i^-1 = q_ii^(lambda_i) g, and the analogue for
    every subtorus coordinate through A."""
    out = CheckOutcome()
    gens = [("x", i, spec.x(i)) for i in range(1, spec.n + 1)]
    gens += [("d", i, spec.d(i)) for i in range(1, spec.n + 1)]
    for i in range(1, spec.n + 1):
        al = spec.alpha(i)
        mii = spec.m[i - 1][i - 1]
        for kind, j, g in gens:
            lam = (1 if kind == "x" else -1) if i == j else 0
            ok = al * g == g * al * spec.q_power(mii * lam)
            out.record(ok, f"alpha{i} conjugates {kind}{j}")
        # degree-zero elements commute with alpha_i
        for j in range(1, spec.n + 1):
            out.record(
                al * spec.alpha(j) == spec.alpha(j) * al,
                f"alpha{i} fixes alpha{j}",
            )
    for j in range(torus.d):
        phi = quantum_comoment([1 if k == j else 0 for k in range(torus.d)], torus, spec, "u")
        phi_inv = quantum_comoment(
            [-1 if k == j else 0 for k in range(torus.d)], torus, spec, "u"
        )
        for kind, i, g in gens:
            deg = [0] * spec.n
            deg[i - 1] = 1 if kind == "x" else -1
            e = sum(
                torus.a[k][j] * spec.m[k][k] * deg[k] for k in range(spec.n)
            )
            lhs = phi * g * phi_inv
            ok = lhs.equals(LocalizedElement.from_pbw(g * spec.q_power(e)))
            out.record(ok, f"u{j+1} comoment conjugates {kind}{i}")
    return out


# ---------------------------------------------------------------------------
# Canonical form modulo the moment left ideal
# ---------------------------------------------------------------------------

AlphaKey = tuple[ExpVec, ExpVec, tuple[int, ...]]  # (a, b, alpha exponents)


@lru_cache(maxsize=None)
def _alpha_table(spec: AlgebraSpec, i: int, r: int, s: int):
    """x_i^r d_i^s as a combination of x_i^(r-m) d_i^(s-m) alpha_i^k."""
    f = spec.field
    if r == 0 or s == 0:
        return (((r, s, 0), f.one),)
    qii_inv = spec.q_power(-spec.m[i][i] * (s - 1))
    prev = _alpha_table(spec, i, r - 1, s - 1)
    out: dict[tuple[int, int, int], Scalar] = {}
    for (rr, ss, k), c in prev:
        # x^r d^s = q^-(s-1) x^(r-1) d^(s-1) alpha - x^(r-1) d^(s-1)
        key_up = (rr, ss, k + 1)
        out[key_up] = out.get(key_up, f.zero) + c * qii_inv
        key_dn = (rr, ss, k)
        out[key_dn] = out.get(key_dn, f.zero) - c
    return tuple((k, c) for k, c in out.items() if not c.is_zero())


def _alpha_form_terms(spec: AlgebraSpec, a: ExpVec, b: ExpVec, coord_order=None):
    """Expansion of x^a d^b over the basis x^a' d^b' alpha^c, min(a'_i,b'_i)=0.

    The coordinate processing order is configurable to let tests confirm the
    result is order-independent.
    """
    n = spec.n
    f = spec.field
    order = list(range(n)) if coord_order is None else list(coord_order)
    terms: dict[AlphaKey, Scalar] = {(a, b, _zero_vec(n)): f.one}
    for i in order:
        nxt: dict[AlphaKey, Scalar] = {}
        for (aa, bb, cc), coeff in terms.items():
            m = min(aa[i], bb[i])
            if m == 0:
                key = (aa, bb, cc)
                nxt[key] = nxt.get(key, f.zero) + coeff
                continue
            # twist from commuting the i-block together and back
            e = -sum(spec.m[i][j] * aa[j] * m for j in range(i + 1, n))
            e -= sum(spec.m[j][i] * bb[j] * m for j in range(i))
            e *= spec.sign
            tw = coeff * spec.q_power(e)
            for (rr, ss, k), c in _alpha_table(spec, i, aa[i], bb[i]):
                key = (_bump(aa, i, rr - aa[i]), _bump(bb, i, ss - bb[i]), _bump(cc, i, k))
                val = tw * c
                nxt[key] = nxt.get(key, f.zero) + val
        terms = {k: v for k, v in nxt.items() if not v.is_zero()}
    return terms


class ReducedElement:
    """Canonical representative in the quotient by the moment left ideal."""

    __slots__ = ("datum", "spec", "terms")

    def __init__(self, datum: ReductionDatum, spec: AlgebraSpec, terms):
        self.datum = datum
        self.spec = spec
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    def __eq__(self, other):
        return (
            isinstance(other, ReducedElement)
            and self.datum == other.datum
            and self.spec == other.spec
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
        return ReducedElement(self.datum, self.spec, out)

    def scale(self, c: Scalar) -> ReducedElement:
        return ReducedElement(
            self.datum, self.spec, {k: v * c for k, v in self.terms.items()}
        )

    def is_zero(self) -> bool:
        return not self.terms

    def grading_degree(self):
        degs = {
            tuple(p - r for p, r in zip(a, b)) for (a, b, _) in self.terms
        }
        if not degs:
            return _zero_vec(self.spec.n)
        return next(iter(degs)) if len(degs) == 1 else None

    def is_invariant(self, torus: TorusData) -> bool:
        """True when every term's grading lies in ker(A^t)."""
        return all(
            torus.is_invariant_degree(tuple(p - r for p, r in zip(a, b)))
            for (a, b, _) in self.terms
        )

    def to_localized(self) -> LocalizedElement:
        out = None
        for (a, b, c), coeff in self.terms.items():
            num = self.spec.monomial(a, b, coeff) * self.spec.alpha_power(
                tuple(max(k, 0) for k in c)
            )
            part = LocalizedElement(num, tuple(max(-k, 0) for k in c))
            out = part if out is None else out + part
        if out is None:
            return LocalizedElement.from_pbw(self.spec.zero())
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self):
        from .expr import _format_terms

        return _format_terms(self.sorted_terms())

    __repr__ = __str__


def _hnf_data(torus: TorusData):
    return column_hnf([list(r) for r in torus.a])


def moment_ideal_reduce(
    u, datum: ReductionDatum, spec: AlgebraSpec | None = None, coord_order=None
) -> ReducedElement:
    """Canonical form of u modulo the left ideal generated by the comoment
    values minus eta.

    Accepts a PBWElement, LocalizedElement, or ReducedElement.  Mixed pairs
    x_i d_i are eliminated through alpha_i = 1 + x_i d_i; the resulting alpha
    exponent vectors are reduced modulo the column lattice of A, multiplying
    by the matching eta powers.
    """
    if isinstance(u, ReducedElement):
        spec = u.spec
        u = u.to_localized()
    if isinstance(u, PBWElement):
        u = LocalizedElement.from_pbw(u)
    if not isinstance(u, LocalizedElement):
        raise ParameterError("reduce takes a PBW, localized, or reduced element")
    if coord_order is not None:
        coord_order = list(coord_order)
    spec = u.spec
    if spec.n != datum.torus.n:
        raise ParameterError("algebra rank and torus rank differ")
    h, uu, pivots = _hnf_data(datum.torus)
    field = spec.field
    out: dict[AlphaKey, Scalar] = {}
    denom = u.denom
    for (a, b), coeff in u.numerator.terms.items():
        for (aa, bb, cc), c2 in _alpha_form_terms(spec, a, b, coord_order).items():
            c_shift = tuple(k - e for k, e in zip(cc, denom))
            red, t = hnf_reduce(list(c_shift), h, uu, pivots)
            mult = coeff * c2
            for j, tj in enumerate(t):
                if tj:
                    mult = mult * datum.eta[j] ** tj
            key = (aa, bb, red)
            prev = out.get(key)
            out[key] = mult if prev is None else prev + mult
    return ReducedElement(datum, spec, out)


def invariant_monomials(torus: TorusData, degree_bound: int):
    """PBW monomials x^a d^b with |a|+|b| <= bound and grading in ker(A^t)."""
    if degree_bound < 0:
        raise ParameterError("degree bound must be nonnegative")
    n = torus.n

    def vecs(k, budget):
        if k == 0:
            yield ()
            return
        for h in range(budget + 1):
            for rest in vecs(k - 1, budget - h):
                yield (h,) + rest

    out = []
    for a in vecs(n, degree_bound):
        for b in vecs(n, degree_bound - sum(a)):
            if torus.is_invariant_degree(tuple(p - r for p, r in zip(a, b))):
                out.append((a, b))
    out.sort()
    return out


def reduced_product(
    u: ReducedElement, v: ReducedElement, datum: ReductionDatum
) -> ReducedElement:
    """Multiply two invariant canonical representatives and re-reduce."""
    for w in (u, v):
        if not w.is_invariant(datum.torus):
            raise ParameterError("reduced_product needs invariant inputs")
    prod = u.to_localized() * v.to_localized()
    return moment_ideal_reduce(prod, datum)
