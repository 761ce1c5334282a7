"""Fiberwise quantum Hamiltonian reduction of a finite-dimensional
representation: moment operators, weight spaces, the kernel identity of the
restriction map, the reduced endomorphism algebra, and point counting for
the degree-l^(n-d) cover.

Everything here is exact linear algebra over the cyclotomic field; the
computations mirror the algebra-level reduction of the moment module at a
single central character.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParameterError
from .exactla import (
    Mat,
    SparseEliminator,
    identity,
    mat_inv,
    mat_mul,
    mat_pow,
    mat_vec,
    matrix_kernel,
    scalar_of_identity,
    sparse_kernel,
)
from .moment import TorusData
from .qweyl import CheckOutcome
from .rootofunity import MatrixRep
from .scalars import CyclotomicField, Scalar


def moment_operators(rep: MatrixRep, torus: TorusData):
    """The d moment operator matrices prod_i (I + X_i Y_i)^(a_ij), their
    central l-th power scalars prod_i (1 + a_i omega_i)^(a_ij), and an exact
    check that each operator's l-th power is that scalar."""
    if torus.n != rep.spec.n:
        raise ParameterError("torus rank and representation rank differ")
    f = rep.field
    alphas = rep.alpha_matrices()
    alpha_invs: list[Mat | None] = [None] * rep.spec.n
    ops = []
    scalars = []
    for j in range(torus.d):
        op = identity(rep.dim, f)
        scal = f.one
        for i in range(rep.spec.n):
            e = torus.a[i][j]
            if e == 0:
                continue
            if e > 0:
                op = mat_mul(op, mat_pow(alphas[i], e, f))
            else:
                if alpha_invs[i] is None:
                    try:
                        alpha_invs[i] = mat_inv(alphas[i], f)
                    except DomainError:
                        raise DomainError(
                            f"Euler operator {i+1} is singular but column {j+1} "
                            "of A needs its inverse (off the invertible locus)"
                        )
                op = mat_mul(op, mat_pow(alpha_invs[i], -e, f))
            factor = f.one + rep.character.a[i] * rep.character.omega[i]
            scal = scal * (factor**e if e > 0 else factor.inv() ** (-e))
        ops.append(op)
        scalars.append(scal)
        if scalar_of_identity(mat_pow(op, rep.l, f)) != scal:
            raise DomainError(
                f"moment operator {j+1} does not have the predicted central power"
            )
    return ops, scalars


@dataclass
class WeightSpaceResult:
    basis: list  # exact column vectors spanning the joint eigenspace
    eta: tuple[Scalar, ...]
    moment_ops: list

    @property
    def dimension(self) -> int:
        return len(self.basis)


def weight_space(rep: MatrixRep, torus: TorusData, eta) -> WeightSpaceResult:
    """Joint eigenspace of the moment operators with eigenvalues eta."""
    eta = tuple(eta)
    if len(eta) != torus.d:
        raise ParameterError("eta must have one entry per subtorus coordinate")
    ops, _ = moment_operators(rep, torus)
    f = rep.field
    stacked = []
    for op, ej in zip(ops, eta):
        for r in range(rep.dim):
            row = list(op[r])
            row[r] = row[r] - ej
            stacked.append(row)
    if not stacked:
        basis = [
            [f.one if i == k else f.zero for i in range(rep.dim)]
            for k in range(rep.dim)
        ]
    else:
        basis = matrix_kernel(stacked, f)
    out = WeightSpaceResult(basis, eta, ops)
    for v in out.basis:
        for op, ej in zip(ops, eta):
            got = mat_vec(op, v)
            want = [ej * c for c in v]
            assert got == want
    return out


def compatible_eta_grid(rep: MatrixRep, torus: TorusData):
    """All l^d candidate eta vectors with eta_j^l = prod (1+a_i w_i)^(a_ij).

    Base roots are extracted rationally; builder-reachable characters with
    rational seeds always land in this case.  Returns [] when some value has
    no l-th root in the field.
    """
    f: CyclotomicField = rep.field
    _, scalars = moment_operators(rep, torus)
    base = []
    for s in scalars:
        root = lth_root_in_field(s, f)
        if root is None:
            return []
        base.append(root)
    grids: list[tuple[Scalar, ...]] = [()]
    for j in range(torus.d):
        grids = [g + (base[j] * f.zeta_power(k),) for g in grids for k in range(f.l)]
    return grids


def lth_root_in_field(value: Scalar, f: CyclotomicField) -> Scalar | None:
    """Some t with t^l = value, or None when no witness is found.

    Rational values are handled exactly: if value = r^l for rational r, every
    field root is r times a root of unity.  A rational value that is not a
    perfect rational l-th power has no root in the field at all (adjoining
    one would enlarge the degree), and the primitive root itself is not an
    l-th power, so nothing is missed by restricting to this case.
    """
    if value.is_zero():
        return f.zero
    frac = _as_rational(value, f)
    if frac is None:
        return None
    root = _rational_lth_root(frac, f.l)
    return None if root is None else f.from_fraction(root)


def _as_rational(value: Scalar, f: CyclotomicField) -> Fraction | None:
    v = value.v
    if any(v[1:]):
        return None
    return v[0]


def _int_lth_root(m: int, l: int) -> int | None:
    """Exact integer l-th root (l odd), by bisection on nonnegative inputs."""
    if m < 0:
        r = _int_lth_root(-m, l)
        return None if r is None else -r
    if m in (0, 1):
        return m
    lo, hi = 1, 1 << ((m.bit_length() // l) + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**l <= m:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**l == m else None


def _rational_lth_root(x: Fraction, l: int) -> Fraction | None:
    p = _int_lth_root(x.numerator, l)
    q = _int_lth_root(x.denominator, l)
    if p is None or q is None:
        return None
    return Fraction(p, q)


@dataclass
class RestrictionKernelReport:
    dim_ideal: int
    dim_expected: int
    contained: bool
    passed: bool
    weight_dim: int


def restriction_kernel_check(
    rep: MatrixRep, torus: TorusData, eta
) -> RestrictionKernelReport:
    """The left ideal generated by the shifted moment operators equals the
    kernel of restriction to the weight space.

    The ideal is spanned by P (Phi(u_j) - eta_j Id) over matrix units P; its
    span is compared against {f : f|_(V_eta) = 0} by exact dimension count
    plus containment (each generator annihilates the weight space).
    """
    ws = weight_space(rep, torus, eta)
    f = rep.field
    dim = rep.dim
    m = ws.dimension
    elim = SparseEliminator(f)
    contained = True
    for op, ej in zip(ws.moment_ops, ws.eta):
        shifted = [list(row) for row in op]
        for r in range(dim):
            shifted[r][r] = shifted[r][r] - ej
        # right multiplication by a matrix unit E_rc maps "shifted" into row
        # space elements; P E = (P applied after E).  Span over P = matrix
        # units of P * shifted: entries P_rc picks row c of shifted into row r.
        for c in range(dim):
            row_vec = shifted[c]
            if all(v.is_zero() for v in row_vec):
                continue
            for r in range(dim):
                vec = {
                    r * dim + k: v for k, v in enumerate(row_vec) if not v.is_zero()
                }
                elim.add(vec)
        for v in ws.basis:
            if any(not c.is_zero() for c in mat_vec(shifted, v)):
                contained = False
    dim_ideal = elim.rank
    dim_expected = dim * (dim - m)
    return RestrictionKernelReport(
        dim_ideal=dim_ideal,
        dim_expected=dim_expected,
        contained=contained,
        passed=(dim_ideal == dim_expected and contained),
        weight_dim=m,
    )


@dataclass
class ReducedAlgebraResult:
    dimension: int
    weight_dim: int
    commutant_dim: int
    iso_verified: bool
    witness: list | None = None


def reduced_endomorphism_algebra(
    rep: MatrixRep, torus: TorusData, eta, keep_witness: bool = False
) -> ReducedAlgebraResult:
    """Endomorphisms of Hom(V_eta, V) commuting with postcomposition by the
    representation, compared with the image of End(V_eta).

    The commutant is computed as the exact kernel of the full commutation
    system on Hom(V_eta, V); the map f -> (g -> g o f) from End(V_eta) is
    then checked to be injective with image exactly that commutant.
    """
    ws = weight_space(rep, torus, eta)
    m = ws.dimension
    if m == 0:
        raise ParameterError("empty weight space: nothing to reduce")
    f = rep.field
    dim = rep.dim
    nW = dim * m  # Hom(V_eta, V) via column stacking
    rows = []
    gens = list(rep.xs) + list(rep.ys)
    # Theta commutes with blockdiag(g, ..., g) for each generator g; the
    # constraints decouple into m x m blocks of size dim x dim each.
    for g in gens:
        for br in range(m):
            for bc in range(m):
                for r in range(dim):
                    for c in range(dim):
                        # (G Theta - Theta G)[br*dim+r][bc*dim+c] = 0
                        row: dict[int, Scalar] = {}
                        for k in range(dim):
                            if not g[r][k].is_zero():
                                key = (br * dim + k) * nW + (bc * dim + c)
                                row[key] = row.get(key, f.zero) + g[r][k]
                            if not g[k][c].is_zero():
                                key = (br * dim + r) * nW + (bc * dim + k)
                                row[key] = row.get(key, f.zero) - g[k][c]
                        row = {kk: v for kk, v in row.items() if not v.is_zero()}
                        if row:
                            rows.append(row)
    commutant = sparse_kernel(rows, nW * nW, f)
    cdim = len(commutant)
    # the comparison map from End(V_eta): f |-> (g -> g o f); on stacked
    # columns this is block (k, j) = f[j][k] * Id
    elim = SparseEliminator(f)
    for vec in commutant:
        elim.add(dict(vec))
    image_rank = SparseEliminator(f)
    iso = True
    witness = [] if keep_witness else None
    for p in range(m):
        for qq in range(m):
            vec: dict[int, Scalar] = {}
            for t in range(dim):
                row_i = qq * dim + t
                col_i = p * dim + t
                vec[row_i * nW + col_i] = f.one
            if not elim.contains(dict(vec)):
                iso = False
            image_rank.add(dict(vec))
            if keep_witness:
                witness.append(sorted(vec))
    if image_rank.rank != m * m:
        iso = False
    if cdim != m * m:
        iso = False
    return ReducedAlgebraResult(
        dimension=cdim,
        weight_dim=m,
        commutant_dim=cdim,
        iso_verified=iso,
        witness=witness,
    )


def verify_moment_operators_commute(rep: MatrixRep, torus: TorusData) -> CheckOutcome:
    out = CheckOutcome()
    ops, _ = moment_operators(rep, torus)
    for j in range(len(ops)):
        for k in range(j + 1, len(ops)):
            out.record(
                mat_mul(ops[j], ops[k]) == mat_mul(ops[k], ops[j]),
                f"moment operators {j+1},{k+1} commute",
            )
    return out


def cover_fiber_points(
    alpha_l_values,
    torus: TorusData,
    eta,
    l: int,
    roots=None,
    enumeration_cap: int = 20000,
):
    """All torus points T with T_i^l = alpha_l_values[i] and
    prod_i T_i^(a_ij) = eta_j, by brute force over the l^n root choices.

    Explicit root witnesses may be supplied; otherwise rational l-th roots
    are extracted.  When at least one solution exists, the solution count is
    asserted to be l^(n-d).
    """
    alpha_l_values = list(alpha_l_values)
    eta = list(eta)
    if len(alpha_l_values) != torus.n or len(eta) != torus.d:
        raise ParameterError("value vector lengths must match the torus data")
    if any(e.is_zero() for e in eta):
        raise ParameterError("eta entries must be nonzero")
    f = alpha_l_values[0].field
    if not isinstance(f, CyclotomicField) or f.l != l:
        raise ParameterError("values must live in the cyclotomic field of order l")
    if any(v.is_zero() for v in alpha_l_values):
        return []
    if l**torus.n > enumeration_cap:
        raise ParameterError(
            f"l^n = {l**torus.n} exceeds the enumeration cap {enumeration_cap}"
        )
    if roots is None:
        roots = []
        for i, v in enumerate(alpha_l_values):
            r = lth_root_in_field(v, f)
            if r is None:
                raise DomainError(
                    f"no l-th root found for coordinate {i+1}; pass explicit roots"
                )
            roots.append(r)
    else:
        roots = list(roots)
        for i, (r, v) in enumerate(zip(roots, alpha_l_values)):
            if r**l != v:
                raise ParameterError(f"root witness {i+1} does not match its value")
    sols = []
    ks = [0] * torus.n
    total = l**torus.n
    for idx in range(total):
        rem = idx
        for i in range(torus.n):
            ks[i] = rem % l
            rem //= l
        t = [roots[i] * f.zeta_power(ks[i]) for i in range(torus.n)]
        ok = True
        for j in range(torus.d):
            acc = f.one
            for i in range(torus.n):
                e = torus.a[i][j]
                if e:
                    acc = acc * (t[i] ** e)
            if acc != eta[j]:
                ok = False
                break
        if ok:
            sols.append(tuple(t))
    if sols:
        expected = l ** (torus.n - torus.d)
        if len(sols) != expected:
            raise DomainError(
                f"found {len(sols)} cover points, expected l^(n-d) = {expected}"
            )
    return sols
