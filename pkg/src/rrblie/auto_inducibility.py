"""Inducibility of automorphism pairs along extensions: the restriction
map, transformed cocycles, the inducibility criterion and its abelian
linearization, the Wells map, non-abelian 1-cocycles, and the exactness
checks for the associated sequences.
"""

from __future__ import annotations

import itertools

from . import linalg
from .cohomology import Cochain, CochainBasis, coboundary_matrix, coboundary_space
from .core import RRBHom, ValidationReport, Violation, validate_hom
from .errors import (
    BoundExceeded,
    InvalidCocycle,
    InvalidInput,
    ModeUnsupported,
    NotInKernel,
    NotPreservingKernel,
    SingularAutomorphism,
    ShapeError,
)
from .extensions import (
    DEFAULT_SEARCH_BOUND,
    EquivalenceWitness,
    NonAbelianCocycle,
    Outcome,
    _linear_residual,
    _nu_pair,
    _witness_from_flat,
    abelian_reduction,
    cocycles_equivalent,
    equivalence_violations,
    induced_cocycle,
    validate_nab_cocycle,
)
from .linalg import Matrix, vec_add, vec_is_zero, vec_neg, vec_sub


class AutPair:
    """Automorphism pair (alpha on the base, beta on the coefficient)."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        self.alpha = alpha
        self.beta = beta

    def __eq__(self, other):
        return (
            isinstance(other, AutPair)
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"AutPair(alpha={self.alpha.phi.entries}, beta={self.beta.phi.entries})"

    @classmethod
    def identity(cls, a, b):
        field = a.field
        return cls(
            RRBHom(
                Matrix.identity(field, a.dim_a), Matrix.identity(field, a.dim_v)
            ),
            RRBHom(
                Matrix.identity(field, b.dim_a), Matrix.identity(field, b.dim_v)
            ),
        )


class TotalAutomorphism:
    """Automorphism of the total algebra that keeps the embedded
    coefficient subalgebra and submodule stable."""

    __slots__ = ("gamma",)

    def __init__(self, gamma):
        self.gamma = gamma

    def __eq__(self, other):
        return isinstance(other, TotalAutomorphism) and self.gamma == other.gamma

    def __hash__(self):
        return hash(self.gamma)

    @classmethod
    def identity(cls, e):
        field = e.field
        return cls(
            RRBHom(
                Matrix.identity(field, e.total.dim_a),
                Matrix.identity(field, e.total.dim_v),
            )
        )


class Z1Nab:
    """Pair (zeta: A -> B, eta: V -> M) subject to the degree-1 cocycle
    conditions for the non-abelian setting."""

    __slots__ = ("zeta", "eta")

    def __init__(self, zeta, eta):
        self.zeta = zeta
        self.eta = eta

    def __eq__(self, other):
        return (
            isinstance(other, Z1Nab)
            and self.zeta == other.zeta
            and self.eta == other.eta
        )

    def __hash__(self):
        return hash((self.zeta, self.eta))


def validate_aut_pair(a, b, p):
    out = []
    rep_a = validate_hom(p.alpha, a, a)
    rep_b = validate_hom(p.beta, b, b)
    for tag, rep in (("alpha", rep_a), ("beta", rep_b)):
        for v in rep.violations:
            out.append(Violation(f"{tag}-{v.tag}", v.indices))
        if rep.is_automorphism is False:
            out.append(Violation(f"{tag}-not-bijective", ()))
    return ValidationReport(out)


def validate_total_automorphism(e, g):
    out = []
    rep = validate_hom(g.gamma, e.total, e.total)
    for v in rep.violations:
        out.append(Violation(v.tag, v.indices))
    if rep.is_automorphism is False:
        out.append(Violation("not-bijective", ()))
    if not (e.proj.phi @ (g.gamma.phi @ e.inj.phi)).is_zero():
        out.append(Violation("B-not-stable", ()))
    if not (e.proj.psi @ (g.gamma.psi @ e.inj.psi)).is_zero():
        out.append(Violation("M-not-stable", ()))
    return ValidationReport(out)


def restrict(e, s, g):
    """Push a total automorphism down to a pair on (base, coeff)."""
    if not (e.proj.phi @ (g.gamma.phi @ e.inj.phi)).is_zero():
        raise NotPreservingKernel("image of B leaves the kernel of proj")
    if not (e.proj.psi @ (g.gamma.psi @ e.inj.psi)).is_zero():
        raise NotPreservingKernel("image of M leaves the kernel of proj")
    alpha = RRBHom(
        e.proj.phi @ g.gamma.phi @ s.s_alg,
        e.proj.psi @ g.gamma.psi @ s.s_mod,
    )
    beta = RRBHom(
        e.linv_b() @ (g.gamma.phi @ e.inj.phi),
        e.linv_m() @ (g.gamma.psi @ e.inj.psi),
    )
    return AutPair(alpha, beta)


def compose_pairs(p, q):
    """Pair whose action is p after q."""
    return AutPair(
        RRBHom(p.alpha.phi @ q.alpha.phi, p.alpha.psi @ q.alpha.psi),
        RRBHom(p.beta.phi @ q.beta.phi, p.beta.psi @ q.beta.psi),
    )


def compose_totals(g, h):
    return TotalAutomorphism(
        RRBHom(g.gamma.phi @ h.gamma.phi, g.gamma.psi @ h.gamma.psi)
    )


def transformed_cocycle(c, p, validate=True):
    """Cocycle moved by an automorphism pair: the structural maps are
    conjugated, the three cochain components composed with inverses."""
    a, b = c.base, c.coeff
    field = a.field
    for mat in (p.alpha.phi, p.alpha.psi, p.beta.phi, p.beta.psi):
        if not linalg.is_invertible(mat):
            raise SingularAutomorphism("pair component is not invertible")
    a1i = linalg.inverse(p.alpha.phi)
    a2i = linalg.inverse(p.alpha.psi)
    b1, b2 = p.beta.phi, p.beta.psi
    b1i = linalg.inverse(b1)
    b2i = linalg.inverse(b2)
    na, nv = a.dim_a, a.dim_v
    ea = lambda i: linalg.basis_vector(field, na, i)
    ev = lambda j: linalg.basis_vector(field, nv, j)
    omega = [
        [b1 @ c.omega_vec(a1i @ ea(i), a1i @ ea(j)) for j in range(na)]
        for i in range(na)
    ]
    varpi = [
        [b2 @ c.varpi_vec(a1i @ ea(i), a2i @ ev(j)) for j in range(nv)]
        for i in range(na)
    ]
    chi = [b1 @ c.chi_vec(a2i @ ev(j)) for j in range(nv)]
    mu = [b2 @ c.mu_of(a2i @ ev(j)) @ b1i for j in range(nv)]
    rho_b = [b1 @ c.rho_b_of(a1i @ ea(i)) @ b1i for i in range(na)]
    rho_m = [b2 @ c.rho_m_of(a1i @ ea(i)) @ b2i for i in range(na)]
    out = NonAbelianCocycle(a, b, omega, varpi, chi, mu, rho_b, rho_m)
    if validate:
        rep = validate_nab_cocycle(a, b, out)
        assert rep.ok, f"transformed cocycle fails: {rep.first!r}"
    return out


def compatible(p, c):
    """Structural maps of the cocycle commute with the pair."""
    a, b = c.base, c.coeff
    field = a.field
    na, nv = a.dim_a, a.dim_v
    a1, a2, b1, b2 = p.alpha.phi, p.alpha.psi, p.beta.phi, p.beta.psi
    ea = lambda i: linalg.basis_vector(field, na, i)
    ev = lambda j: linalg.basis_vector(field, nv, j)
    for i in range(na):
        if b1 @ c.rho_b[i] != c.rho_b_of(a1 @ ea(i)) @ b1:
            return False
        if b2 @ c.rho_m[i] != c.rho_m_of(a1 @ ea(i)) @ b2:
            return False
    for j in range(nv):
        if b2 @ c.mu[j] != c.mu_of(a2 @ ev(j)) @ b1:
            return False
    return True


def inducibility_violations(c, p, zeta, eta):
    """Residuals of the six pair-criterion equation families."""
    a, b = c.base, c.coeff
    field = a.field
    na, nv = a.dim_a, a.dim_v
    if (zeta.rows, zeta.cols) != (b.dim_a, na):
        raise ShapeError("zeta must map A to B")
    if (eta.rows, eta.cols) != (b.dim_v, nv):
        raise ShapeError("eta must map V to M")
    a1, a2, b1, b2 = p.alpha.phi, p.alpha.psi, p.beta.phi, p.beta.psi
    s = b.t
    out = []
    ea = lambda i: linalg.basis_vector(field, na, i)
    ev = lambda j: linalg.basis_vector(field, nv, j)

    for i in range(na):
        for j in range(i + 1, na):
            lhs = vec_sub(b1 @ c.omega[i][j], c.omega_vec(a1 @ ea(i), a1 @ ea(j)))
            rhs = vec_add(
                vec_sub(
                    vec_sub(
                        c.rho_b_of(a1 @ ea(i)) @ (zeta @ ea(j)),
                        c.rho_b_of(a1 @ ea(j)) @ (zeta @ ea(i)),
                    ),
                    zeta @ a.lie.bracket[i][j],
                ),
                b.bracket_vec(zeta @ ea(i), zeta @ ea(j)),
            )
            if lhs != rhs:
                out.append(Violation("I1", (i, j)))

    for i in range(na):
        lhs = b1 @ c.rho_b[i] - c.rho_b_of(a1 @ ea(i)) @ b1
        if lhs != b.lie.ad(zeta @ ea(i)) @ b1:
            out.append(Violation("I2", (i,)))

    for i in range(na):
        lhs = b2 @ c.rho_m[i] - c.rho_m_of(a1 @ ea(i)) @ b2
        if lhs != b.act(zeta @ ea(i)) @ b2:
            out.append(Violation("I3", (i,)))

    for j in range(nv):
        lhs = b2 @ c.mu[j] - c.mu_of(a2 @ ev(j)) @ b1
        if lhs != -(_nu_pair(b, eta @ ev(j)) @ b1):
            out.append(Violation("I4", (j,)))

    for i in range(na):
        for j in range(nv):
            lhs = vec_sub(b2 @ c.varpi[i][j], c.varpi_vec(a1 @ ea(i), a2 @ ev(j)))
            rhs = vec_add(
                vec_sub(
                    b.act(zeta @ ea(i)) @ (eta @ ev(j)),
                    c.mu_of(a2 @ ev(j)) @ (zeta @ ea(i)),
                ),
                vec_sub(
                    c.rho_m_of(a1 @ ea(i)) @ (eta @ ev(j)),
                    eta @ (a.rep.action[i] @ ev(j)),
                ),
            )
            if lhs != rhs:
                out.append(Violation("I5", (i, j)))

    for j in range(nv):
        lhs = vec_sub(b1 @ c.chi[j], c.chi_vec(a2 @ ev(j)))
        rhs = vec_sub(s @ (eta @ ev(j)), zeta @ (a.t @ ev(j)))
        if lhs != rhs:
            out.append(Violation("I6", (j,)))

    return out


def assemble_total_automorphism(e, s, p, witness):
    """Total automorphism beta on the fiber, alpha upstairs, witness shear."""
    field = e.field
    ia = Matrix.identity(field, e.total.dim_a)
    iv = Matrix.identity(field, e.total.dim_v)
    pa, pv = e.proj.phi, e.proj.psi
    phi = (
        e.inj.phi @ (p.beta.phi @ e.linv_b() @ (ia - s.s_alg @ pa))
        + e.inj.phi @ (witness.zeta @ pa)
        + s.s_alg @ (p.alpha.phi @ pa)
    )
    psi = (
        e.inj.psi @ (p.beta.psi @ e.linv_m() @ (iv - s.s_mod @ pv))
        + e.inj.psi @ (witness.eta @ pv)
        + s.s_mod @ (p.alpha.psi @ pv)
    )
    return TotalAutomorphism(RRBHom(phi, psi))


def inducible(e, s, c, p, mode="auto", witness=None, bound=DEFAULT_SEARCH_BOUND):
    """Decide whether the pair lifts to the total algebra.

    Solves the six-family criterion for (zeta, eta); on success assembles
    the total automorphism and asserts it restricts back to the pair.
    Modes as in cocycles_equivalent; linear-abelian short-circuits to
    not-inducible when the pair is incompatible with the structural maps.
    """
    a, b = c.base, c.coeff
    field = a.field
    na, nv = a.dim_a, a.dim_v
    db, dm = b.dim_a, b.dim_v

    if mode == "auto":
        if witness is not None:
            mode = "verify"
        elif b.is_abelian():
            mode = "linear-abelian"
        elif field.finite:
            mode = "search-finite"
        else:
            raise ModeUnsupported(
                "no decidable mode: nonabelian coefficient over an infinite field"
            )

    def success(w):
        g = assemble_total_automorphism(e, s, p, w)
        rep = validate_total_automorphism(e, g)
        assert rep.ok, f"assembled automorphism fails: {rep.first!r}"
        assert restrict(e, s, g) == p
        return Outcome("inducible", witness=w, hom=g.gamma)

    if mode == "verify":
        if witness is None:
            raise ModeUnsupported("verify mode needs a witness")
        if not inducibility_violations(c, p, witness.zeta, witness.eta):
            return success(witness)
        return Outcome("unknown")

    if mode == "search-finite":
        if not field.finite:
            raise ModeUnsupported("search-finite needs a finite field")
        count = field.char ** (na * db + nv * dm)
        if count > bound:
            raise BoundExceeded(f"{count} witnesses exceed bound {bound}")
        values = [x.v for x in field.elements()]
        for flat in itertools.product(values, repeat=na * db + nv * dm):
            w = _witness_from_flat(field, db, na, dm, nv, flat)
            if not inducibility_violations(c, p, w.zeta, w.eta):
                return success(w)
        return Outcome("not-inducible")

    if mode == "linear-abelian":
        if not b.is_abelian():
            raise ModeUnsupported("linear-abelian needs an abelian coefficient")
        if not compatible(p, c):
            # the three witness-free families fail for every witness
            return Outcome("not-inducible")
        nvars = na * db + nv * dm
        a1, a2, b1, b2 = p.alpha.phi, p.alpha.psi, p.beta.phi, p.beta.psi
        ea = lambda i: linalg.basis_vector(field, na, i)
        ev = lambda j: linalg.basis_vector(field, nv, j)

        def residual(flat):
            w = _witness_from_flat(field, db, na, dm, nv, flat)
            zeta, eta = w.zeta, w.eta
            out = []
            for i in range(na):
                for j in range(i + 1, na):
                    lhs = vec_sub(
                        b1 @ c.omega[i][j], c.omega_vec(a1 @ ea(i), a1 @ ea(j))
                    )
                    rhs = vec_sub(
                        vec_sub(
                            c.rho_b_of(a1 @ ea(i)) @ (zeta @ ea(j)),
                            c.rho_b_of(a1 @ ea(j)) @ (zeta @ ea(i)),
                        ),
                        zeta @ a.lie.bracket[i][j],
                    )
                    out.extend(vec_sub(lhs, rhs))
            for i in range(na):
                for j in range(nv):
                    lhs = vec_sub(
                        b2 @ c.varpi[i][j], c.varpi_vec(a1 @ ea(i), a2 @ ev(j))
                    )
                    rhs = vec_sub(
                        c.rho_m_of(a1 @ ea(i)) @ (eta @ ev(j)),
                        vec_add(
                            c.mu_of(a2 @ ev(j)) @ (zeta @ ea(i)),
                            eta @ (a.rep.action[i] @ ev(j)),
                        ),
                    )
                    out.extend(vec_sub(lhs, rhs))
            for j in range(nv):
                lhs = vec_sub(b1 @ c.chi[j], c.chi_vec(a2 @ ev(j)))
                rhs = vec_sub(b.t @ (eta @ ev(j)), zeta @ (a.t @ ev(j)))
                out.extend(vec_sub(lhs, rhs))
            return tuple(out)

        mat, const = _linear_residual(field, nvars, residual)
        sol = linalg.solve(mat, vec_neg(const))
        if sol is None:
            return Outcome("not-inducible")
        w = _witness_from_flat(field, db, na, dm, nv, sol[0])
        assert not inducibility_violations(c, p, w.zeta, w.eta)
        return success(w)

    raise ModeUnsupported(f"unknown mode {mode!r}")


def wells_map(e, s, p, mode="auto", bound=DEFAULT_SEARCH_BOUND):
    """Triviality of the class of (transformed cocycle - cocycle).

    Returns trivial with an equivalence witness, non-trivial, or unknown.
    For an abelian coefficient with a compatible pair the class difference
    is also reported as a degree-2 cochain.
    """
    a, b = e.base, e.coeff
    c = induced_cocycle(e, s)
    ct = transformed_cocycle(c, p)
    if b.is_abelian():
        if not compatible(p, c):
            # structural maps differ and no witness can absorb them
            return Outcome("non-trivial")
        ctx, cochain = abelian_reduction(a, b, c)
        ctx_t, cochain_t = abelian_reduction(a, b, ct)
        diff = cochain_t - cochain
        if not linalg.coset_member(diff.coords, coboundary_space(ctx, 2)):
            return Outcome("non-trivial", cochain=diff)
        sol = linalg.solve(coboundary_matrix(ctx, 1), diff.coords)
        w = _degree1_witness(ctx, sol[0])
        assert not equivalence_violations(a, b, ct, c, w)
        return Outcome("trivial", witness=w, cochain=diff)
    res = cocycles_equivalent(a, b, ct, c, mode=mode, bound=bound)
    if res.verdict == "equivalent":
        return Outcome("trivial", witness=res.witness)
    if res.verdict == "not-equivalent":
        return Outcome("non-trivial")
    return Outcome("unknown")


def _degree1_witness(ctx, coords):
    """Split flat degree-1 coordinates into (zeta, eta) matrices."""
    field = ctx.field
    basis = CochainBasis(ctx, 1)
    c = Cochain(basis, coords)
    zeta = Matrix.from_cols(
        field,
        [c.fb_value((i,)) for i in range(ctx.base.dim_a)],
        rows=ctx.b_dim,
    )
    eta = Matrix.from_cols(
        field,
        [c.fm_value((), j) for j in range(ctx.base.dim_v)],
        rows=ctx.m_dim,
    )
    return EquivalenceWitness(zeta, eta)


def z1nab_member(a, b, c, w):
    """Degree-1 condition families: twisted additivity of zeta, the three
    annihilation identities, compatibility with the module maps, and the
    intertwining of the operators."""
    field = a.field
    na, nv = a.dim_a, a.dim_v
    zeta, eta = w.zeta, w.eta
    if (zeta.rows, zeta.cols) != (b.dim_a, na):
        raise ShapeError("zeta must map A to B")
    if (eta.rows, eta.cols) != (b.dim_v, nv):
        raise ShapeError("eta must map V to M")
    ea = lambda i: linalg.basis_vector(field, na, i)
    ev = lambda j: linalg.basis_vector(field, nv, j)
    for i in range(na):
        for j in range(i + 1, na):
            lhs = vec_add(c.rho_b[j] @ (zeta @ ea(i)), zeta @ a.lie.bracket[i][j])
            rhs = vec_add(
                c.rho_b[i] @ (zeta @ ea(j)),
                b.bracket_vec(zeta @ ea(i), zeta @ ea(j)),
            )
            if lhs != rhs:
                return False
    for i in range(na):
        if not b.lie.ad(zeta @ ea(i)).is_zero():
            return False
        if not b.act(zeta @ ea(i)).is_zero():
            return False
    for j in range(nv):
        if not _nu_pair(b, eta @ ev(j)).is_zero():
            return False
    for i in range(na):
        for j in range(nv):
            lhs = vec_add(
                b.act(zeta @ ea(i)) @ (eta @ ev(j)),
                c.rho_m[i] @ (eta @ ev(j)),
            )
            rhs = vec_add(
                eta @ (a.rep.action[i] @ ev(j)),
                c.mu[j] @ (zeta @ ea(i)),
            )
            if lhs != rhs:
                return False
    if b.t @ eta != zeta @ a.t:
        return False
    return True


def _is_identity_pair(e, p):
    field = e.field
    return (
        p.alpha.phi == Matrix.identity(field, e.base.dim_a)
        and p.alpha.psi == Matrix.identity(field, e.base.dim_v)
        and p.beta.phi == Matrix.identity(field, e.coeff.dim_a)
        and p.beta.psi == Matrix.identity(field, e.coeff.dim_v)
    )


def lambda_iso(e, s, g):
    """Shear data of a total automorphism restricting to the identity."""
    if not _is_identity_pair(e, restrict(e, s, g)):
        raise NotInKernel("automorphism does not restrict to the identity")
    zeta = e.linv_b() @ (g.gamma.phi @ s.s_alg - s.s_alg)
    eta = e.linv_m() @ (g.gamma.psi @ s.s_mod - s.s_mod)
    w = Z1Nab(zeta, eta)
    c = induced_cocycle(e, s)
    assert z1nab_member(e.base, e.coeff, c, w)
    return w


def lambda_inverse(e, s, w):
    """Total automorphism with shear (zeta, eta) over the identity pair."""
    field = e.field
    ia = Matrix.identity(field, e.total.dim_a)
    iv = Matrix.identity(field, e.total.dim_v)
    pa, pv = e.proj.phi, e.proj.psi
    phi = s.s_alg @ pa + e.inj.phi @ (w.zeta @ pa) + e.inj.phi @ (
        e.linv_b() @ (ia - s.s_alg @ pa)
    )
    psi = s.s_mod @ pv + e.inj.psi @ (w.eta @ pv) + e.inj.psi @ (
        e.linv_m() @ (iv - s.s_mod @ pv)
    )
    g = TotalAutomorphism(RRBHom(phi, psi))
    rep = validate_total_automorphism(e, g)
    assert rep.ok, f"assembled kernel automorphism fails: {rep.first!r}"
    return g


def enumerate_matrices(field, rows, cols):
    values = [x for x in field.elements()]
    for flat in itertools.product(values, repeat=rows * cols):
        yield Matrix(
            field,
            [flat[r * cols : (r + 1) * cols] for r in range(rows)],
            shape=(rows, cols),
        )


def enumerate_automorphisms(alg, bound=DEFAULT_SEARCH_BOUND):
    """All RRB automorphisms of a finite-field algebra, lexicographic."""
    field = alg.field
    if not field.finite:
        raise ModeUnsupported("enumeration needs a finite field")
    count = field.char ** (alg.dim_a**2 + alg.dim_v**2)
    if count > bound:
        raise BoundExceeded(f"{count} candidate pairs exceed bound {bound}")
    for phi in enumerate_matrices(field, alg.dim_a, alg.dim_a):
        if not linalg.is_invertible(phi):
            continue
        for psi in enumerate_matrices(field, alg.dim_v, alg.dim_v):
            if not linalg.is_invertible(psi):
                continue
            h = RRBHom(phi, psi)
            if validate_hom(h, alg, alg).ok:
                yield h


def enumerate_total_automorphisms(e, bound=DEFAULT_SEARCH_BOUND):
    """All automorphisms of the total algebra stabilizing the fiber."""
    for h in enumerate_automorphisms(e.total, bound=bound):
        g = TotalAutomorphism(h)
        if (e.proj.phi @ (h.phi @ e.inj.phi)).is_zero() and (
            e.proj.psi @ (h.psi @ e.inj.psi)
        ).is_zero():
            yield g


class ExactnessReport:
    """Cardinalities and violations from an exhaustive sequence check."""

    __slots__ = ("counts", "violations")

    def __init__(self, counts, violations):
        self.counts = counts
        self.violations = violations

    @property
    def ok(self):
        return not self.violations

    def __repr__(self):
        status = "exact" if self.ok else f"violations: {self.violations}"
        inner = ", ".join(f"{k}={v}" for k, v in self.counts.items())
        return f"ExactnessReport({inner}; {status})"


def verify_wells_exactness(e, bound=DEFAULT_SEARCH_BOUND):
    """Exhaustively check the automorphism sequences over a finite field:
    the image of restriction equals the kernel of the Wells map, and the
    shear map is an isomorphism from the restriction kernel onto the
    degree-1 non-abelian cocycles (and a homomorphism)."""
    field = e.field
    if not field.finite:
        raise ModeUnsupported("exactness check needs a finite field")
    a, b = e.base, e.coeff
    s = None
    from .extensions import find_section

    s = find_section(e)
    c = induced_cocycle(e, s)
    violations = []

    totals = list(enumerate_total_automorphisms(e, bound=bound))
    image_k = set()
    kernel_k = []
    for g in totals:
        p = restrict(e, s, g)
        image_k.add(p)
        if _is_identity_pair(e, p):
            kernel_k.append(g)

    alphas = list(enumerate_automorphisms(a, bound=bound))
    betas = list(enumerate_automorphisms(b, bound=bound))
    pairs = [AutPair(al, be) for al in alphas for be in betas]
    kernel_w = set()
    for p in pairs:
        res = wells_map(e, s, p, mode="auto", bound=bound)
        if res.verdict == "trivial":
            kernel_w.add(p)
        elif res.verdict == "unknown":
            violations.append(("wells-undecided", p))

    if image_k != kernel_w:
        for p in image_k - kernel_w:
            violations.append(("restricted-pair-not-in-ker-wells", p))
        for p in kernel_w - image_k:
            violations.append(("trivial-wells-pair-not-restricted", p))

    lam_values = set()
    for g in kernel_k:
        w = lambda_iso(e, s, g)
        lam_values.add(w)
        back = lambda_inverse(e, s, w)
        if back != g:
            violations.append(("lambda-roundtrip", g))
    z1_members = set()
    for zeta in enumerate_matrices(field, b.dim_a, a.dim_a):
        for eta in enumerate_matrices(field, b.dim_v, a.dim_v):
            w = Z1Nab(zeta, eta)
            if z1nab_member(a, b, c, w):
                z1_members.add(w)
    if lam_values != z1_members:
        violations.append(("lambda-image-mismatch", None))
    if len(lam_values) != len(kernel_k):
        violations.append(("lambda-not-injective", None))

    for g1 in kernel_k[:6]:
        for g2 in kernel_k[:6]:
            w1 = lambda_iso(e, s, g1)
            w2 = lambda_iso(e, s, g2)
            w12 = lambda_iso(e, s, compose_totals(g1, g2))
            if w12 != Z1Nab(w1.zeta + w2.zeta, w1.eta + w2.eta):
                violations.append(("lambda-not-additive", (g1, g2)))

    counts = {
        "total_automorphisms": len(totals),
        "kernel_of_restriction": len(kernel_k),
        "z1_nab": len(z1_members),
        "image_of_restriction": len(image_k),
        "kernel_of_wells": len(kernel_w),
        "pairs": len(pairs),
    }
    return ExactnessReport(counts, violations)
