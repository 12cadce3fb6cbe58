"""Inducibility of derivation pairs along abelian extensions: the
compatible-pair algebra, its action on degree-2 cochains, the derivation
Wells map, the lifting criterion, and exactness of the induced sequence.
"""

from __future__ import annotations

import itertools

from . import linalg
from .cohomology import (
    Cochain,
    CochainBasis,
    coboundary_matrix,
    coboundary_space,
    cocycle_space,
    eval_fb,
    eval_fm,
    eval_th,
)
from .core import (
    DerivationPair,
    ValidationReport,
    Violation,
    combine,
    validate_derivation,
)
from .errors import (
    DegreeError,
    NotACocycle,
    NotAbelianExtension,
    NotInKernel,
    NotMembers,
    NotPreservingKernel,
)
from .extensions import (
    EquivalenceWitness,
    Outcome,
    abelian_reduction,
    find_section,
    induced_cocycle,
)
from .linalg import Matrix, Subspace, vec_sub, vec_zero


class CoeffDerivationPair:
    """Derivation pair on the base together with endomorphisms of the
    coefficient complex: (d_a, d_v) plus d_b on B and d_m on M."""

    __slots__ = ("d_aa", "d_b", "d_m")

    def __init__(self, d_aa, d_b, d_m):
        self.d_aa = d_aa
        self.d_b = d_b
        self.d_m = d_m

    @classmethod
    def zero(cls, a, ctx):
        field = a.field
        return cls(
            DerivationPair(
                Matrix.zeros(field, a.dim_a, a.dim_a),
                Matrix.zeros(field, a.dim_v, a.dim_v),
            ),
            Matrix.zeros(field, ctx.b_dim, ctx.b_dim),
            Matrix.zeros(field, ctx.m_dim, ctx.m_dim),
        )

    def __eq__(self, other):
        return (
            isinstance(other, CoeffDerivationPair)
            and self.d_aa == other.d_aa
            and self.d_b == other.d_b
            and self.d_m == other.d_m
        )

    def __hash__(self):
        return hash((self.d_aa, self.d_b, self.d_m))

    def __repr__(self):
        return (
            f"CoeffDerivationPair(d_a={self.d_aa.d_a.entries}, "
            f"d_v={self.d_aa.d_v.entries}, d_b={self.d_b.entries}, "
            f"d_m={self.d_m.entries})"
        )


class TotalDerivation:
    """Derivation pair on the total algebra stabilizing the embedded
    coefficient subspaces."""

    __slots__ = ("d_e",)

    def __init__(self, d_e):
        self.d_e = d_e

    def __eq__(self, other):
        return isinstance(other, TotalDerivation) and self.d_e == other.d_e

    def __hash__(self):
        return hash(self.d_e)

    def __repr__(self):
        return f"TotalDerivation({self.d_e!r})"


def validate_total_derivation(e, t):
    out = []
    rep = validate_derivation(e.total, t.d_e)
    out.extend(rep.violations)
    if not (e.proj.phi @ (t.d_e.d_a @ e.inj.phi)).is_zero():
        out.append(Violation("B-not-stable", ()))
    if not (e.proj.psi @ (t.d_e.d_v @ e.inj.psi)).is_zero():
        out.append(Violation("M-not-stable", ()))
    return ValidationReport(out)


def _coeff_pair_residuals(a, ctx, d):
    """Residual matrices of the compatibility of (d_b, d_m) with the
    coefficient maps; all zero iff the pair respects the structure."""
    field = a.field
    b_dim, m_dim = ctx.b_dim, ctx.m_dim
    d_a, d_v, d_b, d_m = d.d_aa.d_a, d.d_aa.d_v, d.d_b, d.d_m
    out = []
    for i in range(a.dim_a):
        da_col = d_a.col(i)
        out.append(
            (
                "coeff-module",
                (i,),
                d_m @ ctx.rho_m[i]
                - ctx.rho_m[i] @ d_m
                - combine(ctx.rho_m, da_col, m_dim, m_dim, field),
            )
        )
        out.append(
            (
                "coeff-algebra",
                (i,),
                d_b @ ctx.rho_b[i]
                - ctx.rho_b[i] @ d_b
                - combine(ctx.rho_b, da_col, b_dim, b_dim, field),
            )
        )
    for j in range(a.dim_v):
        out.append(
            (
                "coeff-pairing",
                (j,),
                d_m @ ctx.mu[j]
                - ctx.mu[j] @ d_b
                - combine(ctx.mu, d_v.col(j), m_dim, b_dim, field),
            )
        )
    out.append(("coeff-operator", (), d_b @ ctx.s - ctx.s @ d_m))
    return out


def g_member(a, ctx, d):
    """Membership in the compatible-pair algebra: a derivation pair on the
    base whose companion endomorphisms respect every coefficient map."""
    if not validate_derivation(a, d.d_aa).ok:
        return False
    return all(mat.is_zero() for _, _, mat in _coeff_pair_residuals(a, ctx, d))


def _flat_dims(a, ctx):
    return (
        a.dim_a * a.dim_a,
        a.dim_v * a.dim_v,
        ctx.b_dim * ctx.b_dim,
        ctx.m_dim * ctx.m_dim,
    )


def pair_from_flat(a, ctx, flat):
    """Unpack flat (d_a, d_v, d_b, d_m) row-major coordinates."""
    field = a.field
    na, nv = a.dim_a, a.dim_v
    b_dim, m_dim = ctx.b_dim, ctx.m_dim
    sizes = _flat_dims(a, ctx)
    o1 = sizes[0]
    o2 = o1 + sizes[1]
    o3 = o2 + sizes[2]
    cut = lambda off, n: Matrix(
        field,
        [list(flat[off + i * n : off + (i + 1) * n]) for i in range(n)],
        shape=(n, n),
    )
    return CoeffDerivationPair(
        DerivationPair(cut(0, na), cut(o1, nv)), cut(o2, b_dim), cut(o3, m_dim)
    )


def pair_to_flat(d):
    flat = []
    for m in (d.d_aa.d_a, d.d_aa.d_v, d.d_b, d.d_m):
        for row in m.entries:
            flat.extend(row)
    return tuple(flat)


def _pair_residual_flat(a, ctx, flat):
    """Residual entries of all defining conditions at a flat candidate;
    linear in the candidate, so the member set is a kernel."""
    field = a.field
    d = pair_from_flat(a, ctx, flat)
    na = a.dim_a
    d_a, d_v = d.d_aa.d_a, d.d_aa.d_v
    out = []
    for i in range(na):
        for j in range(i + 1, na):
            ei = linalg.basis_vector(field, na, i)
            ej = linalg.basis_vector(field, na, j)
            lhs = d_a @ a.lie.bracket[i][j]
            rhs = linalg.vec_add(
                a.bracket_vec(d_a @ ei, ej), a.bracket_vec(ei, d_a @ ej)
            )
            out.extend(vec_sub(lhs, rhs))
    for i in range(na):
        m = d_v @ a.rep.action[i] - a.rep.action[i] @ d_v - a.act(d_a.col(i))
        for row in m.entries:
            out.extend(row)
    m = a.t @ d_v - d_a @ a.t
    for row in m.entries:
        out.extend(row)
    for _, _, mat in _coeff_pair_residuals(a, ctx, d):
        for row in mat.entries:
            out.extend(row)
    return tuple(out)


def g_basis(a, ctx):
    """The compatible-pair algebra as a Subspace of flat coordinates."""
    field = a.field
    nvars = sum(_flat_dims(a, ctx))
    rows = len(_pair_residual_flat(a, ctx, vec_zero(field, nvars)))
    cols = [
        _pair_residual_flat(a, ctx, linalg.basis_vector(field, nvars, q))
        for q in range(nvars)
    ]
    return linalg.kernel(Matrix.from_cols(field, cols, rows=rows))


def g_bracket(a, ctx, d1, d2):
    """Componentwise commutator of two members; closure is asserted."""
    if not (g_member(a, ctx, d1) and g_member(a, ctx, d2)):
        raise NotMembers("both arguments must lie in the compatible-pair algebra")
    comm = lambda x, y: x @ y - y @ x
    out = CoeffDerivationPair(
        DerivationPair(comm(d1.d_aa.d_a, d2.d_aa.d_a), comm(d1.d_aa.d_v, d2.d_aa.d_v)),
        comm(d1.d_b, d2.d_b),
        comm(d1.d_m, d2.d_m),
    )
    assert g_member(a, ctx, out)
    return out


def delta_action(a, ctx, d, c):
    """Action of a pair on a degree-2 cochain: postcompose each component
    with the coefficient endomorphism and subtract the precompositions
    with the base derivations, one slot at a time."""
    if c.degree != 2:
        raise DegreeError("the action is defined on degree-2 cochains")
    field = a.field
    na, nv = a.dim_a, a.dim_v
    basis = c.basis
    d_a, d_v, d_b, d_m = d.d_aa.d_a, d.d_aa.d_v, d.d_b, d.d_m
    ea = lambda i: linalg.basis_vector(field, na, i)
    ev = lambda j: linalg.basis_vector(field, nv, j)
    fb = {}
    for I in basis.fb_tuples:
        i, j = I
        val = d_b @ c.fb_value(I)
        val = vec_sub(val, eval_fb(c, [d_a.col(i), ea(j)]))
        val = vec_sub(val, eval_fb(c, [ea(i), d_a.col(j)]))
        fb[I] = val
    fm = {}
    for J, j in basis.fm_tuples:
        (i,) = J
        val = d_m @ c.fm_value(J, j)
        val = vec_sub(val, eval_fm(c, [d_a.col(i)], ev(j)))
        val = vec_sub(val, eval_fm(c, [ea(i)], d_v.col(j)))
        fm[(J, j)] = val
    th = {}
    for K in basis.th_tuples:
        (j,) = K
        val = d_b @ c.th_value(K)
        val = vec_sub(val, eval_th(c, [d_v.col(j)]))
        th[K] = val
    return Cochain.from_components(basis, fb=fb, fm=fm, th=th)


def _reduction(e, s):
    if not e.coeff.is_abelian():
        raise NotAbelianExtension("coefficient algebra is not abelian")
    return abelian_reduction(e.base, e.coeff, induced_cocycle(e, s))


def wells_der(e, s, d):
    """Class of the cochain obtained by acting with the pair on the
    induced 2-cocycle; trivial exactly when it is a coboundary."""
    ctx, cochain = _reduction(e, s)
    delta = delta_action(e.base, ctx, d, cochain)
    if linalg.coset_member(delta.coords, coboundary_space(ctx, 2)):
        return Outcome("trivial", cochain=delta)
    return Outcome("non-trivial", cochain=delta)


def _degree1_split(ctx, coords):
    field = ctx.field
    c = Cochain(CochainBasis(ctx, 1), coords)
    zeta = Matrix.from_cols(
        field, [c.fb_value((i,)) for i in range(ctx.base.dim_a)], rows=ctx.b_dim
    )
    eta = Matrix.from_cols(
        field, [c.fm_value((), j) for j in range(ctx.base.dim_v)], rows=ctx.m_dim
    )
    return zeta, eta


def assemble_total_derivation(e, s, d, zeta, eta):
    """Lift along the section, shear by (zeta, eta), and act by the
    coefficient endomorphisms on the fiber complement."""
    field = e.field
    ia = Matrix.identity(field, e.total.dim_a)
    iv = Matrix.identity(field, e.total.dim_v)
    pa, pv = e.proj.phi, e.proj.psi
    d_hat_a = (
        s.s_alg @ (d.d_aa.d_a @ pa)
        + e.inj.phi @ (zeta @ pa)
        + e.inj.phi @ (d.d_b @ e.linv_b() @ (ia - s.s_alg @ pa))
    )
    d_hat_v = (
        s.s_mod @ (d.d_aa.d_v @ pv)
        + e.inj.psi @ (eta @ pv)
        + e.inj.psi @ (d.d_m @ e.linv_m() @ (iv - s.s_mod @ pv))
    )
    return TotalDerivation(DerivationPair(d_hat_a, d_hat_v))


def inducible_der(e, s, d):
    """Decide whether the pair lifts to a derivation of the total algebra.

    Compatible-pair membership is necessary; given it, the pair lifts iff
    the acted cochain is a degree-1 coboundary, and any preimage (zeta,
    eta) shears the section lift into an honest derivation.
    """
    ctx, cochain = _reduction(e, s)
    if not g_member(e.base, ctx, d):
        return Outcome("not-inducible")
    delta = delta_action(e.base, ctx, d, cochain)
    sol = linalg.solve(coboundary_matrix(ctx, 1), delta.coords)
    if sol is None:
        return Outcome("not-inducible")
    zeta, eta = _degree1_split(ctx, sol[0])
    t = assemble_total_derivation(e, s, d, zeta, eta)
    rep = validate_total_derivation(e, t)
    assert rep.ok, f"assembled derivation fails: {rep.first!r}"
    assert digamma(e, s, t) == d
    return Outcome("inducible", witness=EquivalenceWitness(zeta, eta), derivation=t)


def digamma(e, s, t):
    """Project a fiber-stable total derivation to a pair on the base and
    the coefficient complex."""
    if not (e.proj.phi @ (t.d_e.d_a @ e.inj.phi)).is_zero():
        raise NotPreservingKernel("image of B leaves the kernel of proj")
    if not (e.proj.psi @ (t.d_e.d_v @ e.inj.psi)).is_zero():
        raise NotPreservingKernel("image of M leaves the kernel of proj")
    d_a = e.proj.phi @ (t.d_e.d_a @ s.s_alg)
    d_v = e.proj.psi @ (t.d_e.d_v @ s.s_mod)
    d_b = e.linv_b() @ (t.d_e.d_a @ e.inj.phi)
    d_m = e.linv_m() @ (t.d_e.d_v @ e.inj.psi)
    out = CoeffDerivationPair(DerivationPair(d_a, d_v), d_b, d_m)
    rep = validate_derivation(e.base, out.d_aa)
    assert rep.ok, f"projected pair is not a derivation: {rep.first!r}"
    return out


def _is_zero_pair(d):
    return (
        d.d_aa.d_a.is_zero()
        and d.d_aa.d_v.is_zero()
        and d.d_b.is_zero()
        and d.d_m.is_zero()
    )


def gamma_iso(e, s, t):
    """Kernel elements of the projection give degree-1 cocycles."""
    ctx, _ = _reduction(e, s)
    if not _is_zero_pair(digamma(e, s, t)):
        raise NotInKernel("derivation does not project to zero")
    zeta = e.linv_b() @ (t.d_e.d_a @ s.s_alg)
    eta = e.linv_m() @ (t.d_e.d_v @ s.s_mod)
    basis = CochainBasis(ctx, 1)
    fb = {(i,): zeta.col(i) for i in range(e.base.dim_a)}
    fm = {((), j): eta.col(j) for j in range(e.base.dim_v)}
    c = Cochain.from_components(basis, fb=fb, fm=fm)
    assert cocycle_space(ctx, 1).contains(c.coords)
    return c


def gamma_inverse(e, s, c):
    """Total derivation supported on the fiber from a degree-1 cocycle."""
    if c.degree != 1:
        raise DegreeError("need a degree-1 cochain")
    if not cocycle_space(c.ctx, 1).contains(c.coords):
        raise NotACocycle("the cochain is not closed")
    zeta, eta = _degree1_split(c.ctx, c.coords)
    t = TotalDerivation(
        DerivationPair(
            e.inj.phi @ (zeta @ e.proj.phi), e.inj.psi @ (eta @ e.proj.psi)
        )
    )
    rep = validate_total_derivation(e, t)
    assert rep.ok, f"assembled kernel derivation fails: {rep.first!r}"
    return t


def total_derivation_space(e):
    """Fiber-stable derivations of the total algebra as a Subspace of
    flat (d_a, d_v) coordinates, row-major; returns (space, unpack)."""
    field = e.field
    total = e.total
    da, dv = total.dim_a, total.dim_v
    nvars = da * da + dv * dv

    def unpack(flat):
        d_a = Matrix(
            field,
            [list(flat[i * da : (i + 1) * da]) for i in range(da)],
            shape=(da, da),
        )
        off = da * da
        d_v = Matrix(
            field,
            [list(flat[off + i * dv : off + (i + 1) * dv]) for i in range(dv)],
            shape=(dv, dv),
        )
        return TotalDerivation(DerivationPair(d_a, d_v))

    def residual(flat):
        d = unpack(flat).d_e
        out = []
        for i in range(da):
            for j in range(i + 1, da):
                ei = linalg.basis_vector(field, da, i)
                ej = linalg.basis_vector(field, da, j)
                lhs = d.d_a @ total.lie.bracket[i][j]
                rhs = linalg.vec_add(
                    total.bracket_vec(d.d_a @ ei, ej),
                    total.bracket_vec(ei, d.d_a @ ej),
                )
                out.extend(vec_sub(lhs, rhs))
        for i in range(da):
            m = (
                d.d_v @ total.rep.action[i]
                - total.rep.action[i] @ d.d_v
                - total.act(d.d_a.col(i))
            )
            for row in m.entries:
                out.extend(row)
        m = total.t @ d.d_v - d.d_a @ total.t
        for row in m.entries:
            out.extend(row)
        for m in (e.proj.phi @ (d.d_a @ e.inj.phi), e.proj.psi @ (d.d_v @ e.inj.psi)):
            for row in m.entries:
                out.extend(row)
        return tuple(out)

    rows = len(residual(vec_zero(field, nvars)))
    cols = [residual(linalg.basis_vector(field, nvars, q)) for q in range(nvars)]
    return linalg.kernel(Matrix.from_cols(field, cols, rows=rows)), unpack


def _combine_flat(field, coeffs, basis, n):
    out = vec_zero(field, n)
    for c, v in zip(coeffs, basis):
        out = linalg.vec_add(out, linalg.vec_scale(c, v))
    return out


def verify_der_exactness(e, bound=2**12):
    """Exactness checks for the derivation sequence of an abelian
    extension, by linear algebra over any field:

    - the projection kernel maps isomorphically onto the degree-1
      cocycles (image spans, elementwise roundtrips when finite and the
      census fits the bound, else basis roundtrips);
    - the projection image inside the compatible-pair algebra equals the
      kernel of the derivation Wells map;
    - the projection respects commutators on basis pairs.
    """
    from .auto_inducibility import ExactnessReport

    field = e.field
    a = e.base
    s = find_section(e)
    ctx, cochain = _reduction(e, s)
    violations = []

    der_space, unpack = total_derivation_space(e)
    g_space = g_basis(a, ctx)
    z1 = cocycle_space(ctx, 1)
    b2 = coboundary_space(ctx, 2)
    ambient = sum(_flat_dims(a, ctx))
    c1_dim = CochainBasis(ctx, 1).dim
    c2_dim = CochainBasis(ctx, 2).dim

    totals = [unpack(v) for v in der_space.basis]
    image_vecs = [pair_to_flat(digamma(e, s, t)) for t in totals]
    image_f = Subspace(field, ambient, image_vecs)
    if not all(g_space.contains(v) for v in image_vecs):
        violations.append(("image-not-in-g", None))

    # kernel of the Wells map: members whose acted cochain is a coboundary
    if g_space.dim:
        delta_cols = [
            delta_action(a, ctx, pair_from_flat(a, ctx, v), cochain).coords
            for v in g_space.basis
        ]
        l_mat = Matrix.from_cols(field, delta_cols, rows=c2_dim)
        if b2.dim:
            l_mat = l_mat.hstack(
                Matrix.from_cols(field, [list(v) for v in b2.basis], rows=c2_dim)
            )
        ker = linalg.kernel(l_mat)
        kernel_w = Subspace(
            field,
            ambient,
            [
                _combine_flat(field, v[: g_space.dim], g_space.basis, ambient)
                for v in ker.basis
            ],
        )
    else:
        kernel_w = Subspace(field, ambient, [])
    if image_f != kernel_w:
        violations.append(("image-vs-kernel-wells", (image_f.dim, kernel_w.dim)))

    # kernel of the projection, in coefficients over the derivation basis
    if der_space.dim:
        proj_ker = linalg.kernel(Matrix.from_cols(field, image_vecs, rows=ambient))
    else:
        proj_ker = Subspace(field, 0, [])
    kernel_flats = [
        _combine_flat(field, kv, der_space.basis, der_space.ambient_dim)
        for kv in proj_ker.basis
    ]
    if field.finite and field.char ** proj_ker.dim <= bound:
        kernel_flats = [
            _combine_flat(field, coeffs, kernel_flats, der_space.ambient_dim)
            for coeffs in itertools.product(
                list(field.elements()), repeat=len(kernel_flats)
            )
        ]

    image_coords = []
    checked = 0
    for flat in kernel_flats:
        t = unpack(flat)
        c1 = gamma_iso(e, s, t)
        if gamma_inverse(e, s, c1) != t:
            violations.append(("gamma-roundtrip", flat))
        image_coords.append(c1.coords)
        checked += 1
    if Subspace(field, c1_dim, image_coords) != z1:
        violations.append(("kernel-not-z1", None))
    for v in z1.basis:
        c1 = Cochain(CochainBasis(ctx, 1), v)
        if gamma_iso(e, s, gamma_inverse(e, s, c1)) != c1:
            violations.append(("gamma-inverse-roundtrip", v))

    # the projection respects commutators on basis pairs
    comm = lambda x, y: x @ y - y @ x
    for v1 in der_space.basis:
        for v2 in der_space.basis:
            t1, t2 = unpack(v1), unpack(v2)
            p1, p2 = t1.d_e, t2.d_e
            tb = TotalDerivation(
                DerivationPair(comm(p1.d_a, p2.d_a), comm(p1.d_v, p2.d_v))
            )
            d1 = digamma(e, s, t1)
            d2 = digamma(e, s, t2)
            expected = CoeffDerivationPair(
                DerivationPair(
                    comm(d1.d_aa.d_a, d2.d_aa.d_a),
                    comm(d1.d_aa.d_v, d2.d_aa.d_v),
                ),
                comm(d1.d_b, d2.d_b),
                comm(d1.d_m, d2.d_m),
            )
            if digamma(e, s, tb) != expected:
                violations.append(("projection-not-lie", None))

    counts = {
        "total_derivations_dim": der_space.dim,
        "kernel_dim": proj_ker.dim,
        "z1_dim": z1.dim,
        "g_dim": g_space.dim,
        "image_dim": image_f.dim,
        "kernel_wells_dim": kernel_w.dim,
        "roundtrips_checked": checked,
    }
    return ExactnessReport(counts, violations)
