"""Non-abelian 2-cocycles, twisted algebras, extensions, sections,
induced cocycles, and equivalence of cocycles and extensions.

Conventions: a cocycle is the sextuple (omega, varpi, chi, mu, rho_b, rho_m)
over a pair of RRB algebras (base, coeff); coeff supplies the bracket on B,
the action nu_M and the operator S.  Equivalence witnesses are pairs
(zeta: A -> B, eta: V -> M); in all equation checks the first cocycle is the
unprimed one.
"""

from __future__ import annotations

import itertools

from . import linalg
from .cohomology import Cochain, CochainBasis, cocycle_space
from .core import (
    LieAlgebra,
    Representation,
    RRBAlgebra,
    RRBHom,
    RRBRepresentation,
    ValidationReport,
    Violation,
    validate_hom,
    validate_rrb_representation,
)
from .errors import (
    BoundExceeded,
    InvalidCocycle,
    InvalidInput,
    ModeUnsupported,
    NotAbelian,
    ShapeError,
)
from .linalg import Matrix, vec_add, vec_is_zero, vec_neg, vec_scale, vec_sub, vec_zero

DEFAULT_SEARCH_BOUND = 2**20


class Outcome:
    """Tagged decision result: verdict plus optional witness payloads."""

    __slots__ = ("verdict", "witness", "hom", "derivation", "cochain")

    def __init__(self, verdict, witness=None, hom=None, derivation=None, cochain=None):
        self.verdict = verdict
        self.witness = witness
        self.hom = hom
        self.derivation = derivation
        self.cochain = cochain

    @property
    def affirmative(self):
        return self.verdict in ("equivalent", "inducible", "trivial", "valid")

    def __repr__(self):
        return f"Outcome({self.verdict})"


class EquivalenceWitness:
    """Pair (zeta: A -> B, eta: V -> M)."""

    __slots__ = ("zeta", "eta")

    def __init__(self, zeta, eta):
        self.zeta = zeta
        self.eta = eta

    def __eq__(self, other):
        return (
            isinstance(other, EquivalenceWitness)
            and self.zeta == other.zeta
            and self.eta == other.eta
        )

    def __hash__(self):
        return hash((self.zeta, self.eta))


class NonAbelianCocycle:
    """Sextuple gluing base and coeff: omega[i][j] in B, varpi[i][j] in M,
    chi[j] in B, mu[j]: B -> M, rho_b[i] on B, rho_m[i] on M."""

    __slots__ = ("base", "coeff", "omega", "varpi", "chi", "mu", "rho_b", "rho_m")

    def __init__(self, base, coeff, omega, varpi, chi, mu, rho_b, rho_m):
        field = base.field
        linalg.same_field(field, coeff.field)
        a, v = base.dim_a, base.dim_v
        b, m = coeff.dim_a, coeff.dim_v
        wrap = lambda mat: mat if isinstance(mat, Matrix) else Matrix(field, mat)
        self.omega = tuple(
            tuple(tuple(field.of(x) for x in cell) for cell in row) for row in omega
        )
        self.varpi = tuple(
            tuple(tuple(field.of(x) for x in cell) for cell in row) for row in varpi
        )
        self.chi = tuple(tuple(field.of(x) for x in cell) for cell in chi)
        self.mu = tuple(wrap(mat) for mat in mu)
        self.rho_b = tuple(wrap(mat) for mat in rho_b)
        self.rho_m = tuple(wrap(mat) for mat in rho_m)
        if len(self.omega) != a or any(
            len(row) != a or any(len(cell) != b for cell in row) for row in self.omega
        ):
            raise ShapeError("omega must be a x a with values in B")
        if len(self.varpi) != a or any(
            len(row) != v or any(len(cell) != m for cell in row) for row in self.varpi
        ):
            raise ShapeError("varpi must be a x v with values in M")
        if len(self.chi) != v or any(len(cell) != b for cell in self.chi):
            raise ShapeError("chi must be v with values in B")
        if len(self.mu) != v or any((m_.rows, m_.cols) != (m, b) for m_ in self.mu):
            raise ShapeError("mu must be v matrices M x B")
        if len(self.rho_b) != a or any(
            (m_.rows, m_.cols) != (b, b) for m_ in self.rho_b
        ):
            raise ShapeError("rho_b must be a matrices on B")
        if len(self.rho_m) != a or any(
            (m_.rows, m_.cols) != (m, m) for m_ in self.rho_m
        ):
            raise ShapeError("rho_m must be a matrices on M")
        self.base = base
        self.coeff = coeff

    @property
    def field(self):
        return self.base.field

    @classmethod
    def zero(cls, base, coeff, mu=None, rho_b=None, rho_m=None):
        """Cocycle with omega = varpi = chi = 0 and the given coefficient
        maps (all zero when omitted); with maps from a validated
        RRBRepresentation this is the semidirect/split cocycle."""
        field = base.field
        a, v = base.dim_a, base.dim_v
        b, m = coeff.dim_a, coeff.dim_v
        zb = vec_zero(field, b)
        zm = vec_zero(field, m)
        return cls(
            base,
            coeff,
            [[zb] * a for _ in range(a)],
            [[zm] * v for _ in range(a)],
            [zb] * v,
            mu if mu is not None else [Matrix.zeros(field, m, b)] * v,
            rho_b if rho_b is not None else [Matrix.zeros(field, b, b)] * a,
            rho_m if rho_m is not None else [Matrix.zeros(field, m, m)] * a,
        )

    @classmethod
    def from_representation(cls, rep, coeff):
        """Split cocycle carrying the maps of a coefficient representation."""
        return cls.zero(
            rep.base, coeff, mu=rep.mu, rho_b=rep.rho_b, rho_m=rep.rho_m
        )

    def omega_vec(self, x, y):
        out = vec_zero(self.field, self.coeff.dim_a)
        z = self.field.zero
        for i, xi in enumerate(x):
            if xi == z:
                continue
            for j, yj in enumerate(y):
                if yj == z:
                    continue
                out = vec_add(out, vec_scale(xi * yj, self.omega[i][j]))
        return out

    def varpi_vec(self, x, w):
        out = vec_zero(self.field, self.coeff.dim_v)
        z = self.field.zero
        for i, xi in enumerate(x):
            if xi == z:
                continue
            for j, wj in enumerate(w):
                if wj == z:
                    continue
                out = vec_add(out, vec_scale(xi * wj, self.varpi[i][j]))
        return out

    def chi_vec(self, w):
        out = vec_zero(self.field, self.coeff.dim_a)
        z = self.field.zero
        for j, wj in enumerate(w):
            if wj != z:
                out = vec_add(out, vec_scale(wj, self.chi[j]))
        return out

    def mu_of(self, w):
        from .core import combine

        return combine(self.mu, w, self.coeff.dim_v, self.coeff.dim_a, self.field)

    def rho_b_of(self, x):
        from .core import combine

        return combine(self.rho_b, x, self.coeff.dim_a, self.coeff.dim_a, self.field)

    def rho_m_of(self, x):
        from .core import combine

        return combine(self.rho_m, x, self.coeff.dim_v, self.coeff.dim_v, self.field)

    def components(self):
        return (
            self.omega,
            self.varpi,
            self.chi,
            self.mu,
            self.rho_b,
            self.rho_m,
        )

    def __eq__(self, other):
        return (
            isinstance(other, NonAbelianCocycle)
            and self.components() == other.components()
        )

    def __hash__(self):
        return hash((self.omega, self.varpi, self.chi, self.mu, self.rho_b, self.rho_m))


def _nu_pair(coeff, w):
    """Matrix of a |-> nu_M(a) w for fixed w in M."""
    field = coeff.field
    cols = [
        coeff.rep.action[l] @ w for l in range(coeff.dim_a)
    ]
    return Matrix.from_cols(field, cols, rows=coeff.dim_v)


def validate_nab_cocycle(a, b, c):
    """Check the nine cocycle equation families on basis tuples."""
    if c.base is not a and c.base != a:
        raise ShapeError("cocycle base mismatch")
    if c.coeff is not b and c.coeff != b:
        raise ShapeError("cocycle coefficient mismatch")
    field = a.field
    na, nv = a.dim_a, a.dim_v
    out = []
    ea = lambda i: linalg.basis_vector(field, na, i)
    ev = lambda j: linalg.basis_vector(field, nv, j)

    for i in range(na):
        # alternating, not just antisymmetric: needed in characteristic 2
        if not vec_is_zero(field, c.omega[i][i]):
            out.append(Violation("L1", (i, i)))
        for j in range(i + 1, na):
            if not vec_is_zero(field, vec_add(c.omega[i][j], c.omega[j][i])):
                out.append(Violation("L1", (i, j)))

    for i in range(na):
        for j in range(i + 1, na):
            lhs = (
                c.rho_b[i] @ c.rho_b[j]
                - c.rho_b[j] @ c.rho_b[i]
                - c.rho_b_of(a.lie.bracket[i][j])
            )
            if lhs != b.lie.ad(c.omega[i][j]):
                out.append(Violation("L2", (i, j)))

    for i, j, k in itertools.combinations(range(na), 3):
        lhs = vec_add(
            vec_add(
                c.rho_b[i] @ c.omega[j][k],
                c.rho_b[j] @ c.omega[k][i],
            ),
            c.rho_b[k] @ c.omega[i][j],
        )
        rhs = vec_add(
            vec_add(
                c.omega_vec(a.lie.bracket[i][j], ea(k)),
                c.omega_vec(a.lie.bracket[j][k], ea(i)),
            ),
            c.omega_vec(a.lie.bracket[k][i], ea(j)),
        )
        if lhs != rhs:
            out.append(Violation("L3", (i, j, k)))

    for i in range(na):
        for j in range(i + 1, na):
            for jv in range(nv):
                lhs = vec_sub(
                    vec_sub(
                        c.varpi_vec(ea(i), a.rep.action[j] @ ev(jv)),
                        c.varpi_vec(ea(j), a.rep.action[i] @ ev(jv)),
                    ),
                    c.varpi_vec(a.lie.bracket[i][j], ev(jv)),
                )
                rhs = vec_sub(
                    vec_sub(
                        c.rho_m[j] @ c.varpi[i][jv],
                        c.rho_m[i] @ c.varpi[j][jv],
                    ),
                    c.mu[jv] @ c.omega[i][j],
                )
                if lhs != rhs:
                    out.append(Violation("L4", (i, j, jv)))

    for i in range(na):
        for j in range(i + 1, na):
            lhs = c.rho_m[i] @ c.rho_m[j] - c.rho_m[j] @ c.rho_m[i]
            rhs = c.rho_m_of(a.lie.bracket[i][j]) + b.act(c.omega[i][j])
            if lhs != rhs:
                out.append(Violation("L5", (i, j)))

    for i in range(na):
        for jv in range(nv):
            lhs = (
                c.rho_m[i] @ c.mu[jv]
                - c.mu_of(a.rep.action[i] @ ev(jv))
                + _nu_pair(b, c.varpi[i][jv])
            )
            rhs = c.mu[jv] @ c.rho_b[i]
            if lhs != rhs:
                out.append(Violation("L6", (i, jv)))

    for i in range(na):
        for l in range(b.dim_a):
            el = linalg.basis_vector(field, b.dim_a, l)
            lhs = c.rho_m[i] @ b.rep.action[l] - b.rep.action[l] @ c.rho_m[i]
            rhs = b.act(c.rho_b[i] @ el)
            if lhs != rhs:
                out.append(Violation("L7", (i, l)))

    s = b.t
    for jv in range(nv):
        tv = a.t @ ev(jv)
        lhs = c.rho_b_of(tv) @ s + b.lie.ad(c.chi[jv]) @ s
        rhs = s @ (c.rho_m_of(tv) + b.act(c.chi[jv]) + c.mu[jv] @ s)
        if lhs != rhs:
            out.append(Violation("L8", (jv,)))

    for j1 in range(nv):
        for j2 in range(j1 + 1, nv):
            tv1 = a.t @ ev(j1)
            tv2 = a.t @ ev(j2)
            lhs = vec_add(
                vec_add(
                    vec_sub(
                        c.rho_b_of(tv1) @ c.chi[j2],
                        c.rho_b_of(tv2) @ c.chi[j1],
                    ),
                    b.bracket_vec(c.chi[j1], c.chi[j2]),
                ),
                c.omega_vec(tv1, tv2),
            )
            rhs = vec_add(
                vec_add(
                    s @ vec_sub(c.varpi_vec(tv1, ev(j2)), c.varpi_vec(tv2, ev(j1))),
                    c.chi_vec(
                        vec_sub(a.act(tv1) @ ev(j2), a.act(tv2) @ ev(j1))
                    ),
                ),
                s @ vec_sub(c.mu[j1] @ c.chi[j2], c.mu[j2] @ c.chi[j1]),
            )
            if lhs != rhs:
                out.append(Violation("L9", (j1, j2)))

    return ValidationReport(out)


def equivalence_violations(a, b, c1, c2, witness):
    """Check (E1)-(E6) with c1 unprimed, c2 primed; returns Violations."""
    field = a.field
    na, nv = a.dim_a, a.dim_v
    zeta, eta = witness.zeta, witness.eta
    if (zeta.rows, zeta.cols) != (b.dim_a, na):
        raise ShapeError("zeta must map A to B")
    if (eta.rows, eta.cols) != (b.dim_v, nv):
        raise ShapeError("eta must map V to M")
    out = []
    ea = lambda i: linalg.basis_vector(field, na, i)
    ev = lambda j: linalg.basis_vector(field, nv, j)

    for i in range(na):
        for j in range(i + 1, na):
            lhs = vec_sub(c1.omega[i][j], c2.omega[i][j])
            rhs = vec_add(
                vec_sub(
                    vec_sub(c2.rho_b[i] @ (zeta @ ea(j)), c2.rho_b[j] @ (zeta @ ea(i))),
                    zeta @ a.lie.bracket[i][j],
                ),
                b.bracket_vec(zeta @ ea(i), zeta @ ea(j)),
            )
            if lhs != rhs:
                out.append(Violation("E1", (i, j)))

    for i in range(na):
        if c1.rho_b[i] - c2.rho_b[i] != b.lie.ad(zeta @ ea(i)):
            out.append(Violation("E2", (i,)))

    for i in range(na):
        if c1.rho_m[i] - c2.rho_m[i] != b.act(zeta @ ea(i)):
            out.append(Violation("E3", (i,)))

    for j in range(nv):
        if c1.mu[j] - c2.mu[j] != -_nu_pair(b, eta @ ev(j)):
            out.append(Violation("E4", (j,)))

    for j in range(nv):
        lhs = vec_sub(c1.chi[j], c2.chi[j])
        rhs = vec_sub(b.t @ (eta @ ev(j)), zeta @ (a.t @ ev(j)))
        if lhs != rhs:
            out.append(Violation("E5", (j,)))

    for i in range(na):
        for j in range(nv):
            lhs = vec_sub(c1.varpi[i][j], c2.varpi[i][j])
            rhs = vec_sub(
                vec_add(
                    c2.rho_m[i] @ (eta @ ev(j)),
                    b.act(zeta @ ea(i)) @ (eta @ ev(j)),
                ),
                vec_add(
                    c2.mu[j] @ (zeta @ ea(i)),
                    eta @ (a.rep.action[i] @ ev(j)),
                ),
            )
            if lhs != rhs:
                out.append(Violation("E6", (i, j)))

    return out


def twisted_algebra(a, b, c, validate=True):
    """Total RRB algebra on (A+B, V+M) twisted by the cocycle."""
    if validate and not validate_nab_cocycle(a, b, c).ok:
        raise InvalidCocycle(repr(validate_nab_cocycle(a, b, c).first))
    field = a.field
    da, dv = a.dim_a, a.dim_v
    db, dm = b.dim_a, b.dim_v
    n = da + db
    w = dv + dm
    z = field.zero
    cells = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i < da and j < da:
                cells[i][j] = tuple(a.lie.bracket[i][j]) + tuple(c.omega[i][j])
            elif i < da:
                cells[i][j] = (z,) * da + tuple(c.rho_b[i].col(j - da))
            elif j < da:
                cells[i][j] = (z,) * da + tuple(
                    vec_neg(c.rho_b[j].col(i - da))
                )
            else:
                cells[i][j] = (z,) * da + tuple(
                    b.lie.bracket[i - da][j - da]
                )
    lie = LieAlgebra(field, cells)

    action = []
    for i in range(da):
        varpi_block = Matrix.from_cols(
            field, [c.varpi[i][j] for j in range(dv)], rows=dm
        )
        action.append(
            linalg.block_matrix(
                [
                    [a.rep.action[i], Matrix.zeros(field, dv, dm)],
                    [varpi_block, c.rho_m[i]],
                ]
            )
        )
    for l in range(db):
        lower = Matrix.from_cols(
            field,
            [vec_neg(c.mu[j].col(l)) for j in range(dv)],
            rows=dm,
        )
        action.append(
            linalg.block_matrix(
                [
                    [Matrix.zeros(field, dv, dv), Matrix.zeros(field, dv, dm)],
                    [lower, b.rep.action[l]],
                ]
            )
        )
    rep = Representation(lie, w, action)

    chi_block = Matrix.from_cols(field, [c.chi[j] for j in range(dv)], rows=db)
    t = linalg.block_matrix(
        [
            [a.t, Matrix.zeros(field, da, dm)],
            [chi_block, b.t],
        ]
    )
    return RRBAlgebra(lie, rep, t)


class Extension:
    """Short exact sequence of RRB algebras with explicit inj/proj maps."""

    __slots__ = ("base", "coeff", "total", "inj", "proj", "_linv_b", "_linv_m")

    def __init__(self, base, coeff, total, inj, proj):
        if inj.phi.rows != total.dim_a or inj.phi.cols != coeff.dim_a:
            raise ShapeError("inj.phi must map B into the total algebra")
        if inj.psi.rows != total.dim_v or inj.psi.cols != coeff.dim_v:
            raise ShapeError("inj.psi must map M into the total module")
        if proj.phi.rows != base.dim_a or proj.phi.cols != total.dim_a:
            raise ShapeError("proj.phi must map the total algebra onto A")
        if proj.psi.rows != base.dim_v or proj.psi.cols != total.dim_v:
            raise ShapeError("proj.psi must map the total module onto V")
        self.base = base
        self.coeff = coeff
        self.total = total
        self.inj = inj
        self.proj = proj
        self._linv_b = None
        self._linv_m = None

    @property
    def field(self):
        return self.base.field

    def linv_b(self):
        """Echelon-canonical left inverse of inj.phi (identifies ker proj
        with B)."""
        if self._linv_b is None:
            self._linv_b = linalg.left_inverse(self.inj.phi)
        return self._linv_b

    def linv_m(self):
        if self._linv_m is None:
            self._linv_m = linalg.left_inverse(self.inj.psi)
        return self._linv_m

    def pull_back_b(self, vec):
        """Coordinates in B of a total-space vector lying in im(inj.phi)."""
        if not vec_is_zero(self.field, self.proj.phi @ vec):
            raise InvalidInput("value does not lie in the kernel of proj")
        return self.linv_b() @ vec

    def pull_back_m(self, vec):
        if not vec_is_zero(self.field, self.proj.psi @ vec):
            raise InvalidInput("value does not lie in the kernel of proj")
        return self.linv_m() @ vec


class Section:
    """Linear right inverse of proj on both levels."""

    __slots__ = ("s_alg", "s_mod")

    def __init__(self, s_alg, s_mod):
        self.s_alg = s_alg
        self.s_mod = s_mod

    def __eq__(self, other):
        return (
            isinstance(other, Section)
            and self.s_alg == other.s_alg
            and self.s_mod == other.s_mod
        )

    def __hash__(self):
        return hash((self.s_alg, self.s_mod))


def validate_extension(e):
    """Injectivity, surjectivity, exactness, and hom conditions."""
    out = []
    if linalg.rank(e.inj.phi) < e.coeff.dim_a:
        out.append(Violation("inj-injective-A", ()))
    if linalg.rank(e.inj.psi) < e.coeff.dim_v:
        out.append(Violation("inj-injective-V", ()))
    if linalg.rank(e.proj.phi) < e.base.dim_a:
        out.append(Violation("proj-surjective-A", ()))
    if linalg.rank(e.proj.psi) < e.base.dim_v:
        out.append(Violation("proj-surjective-V", ()))
    if linalg.column_space(e.inj.phi) != linalg.kernel(e.proj.phi):
        out.append(Violation("exactness-A", ()))
    if linalg.column_space(e.inj.psi) != linalg.kernel(e.proj.psi):
        out.append(Violation("exactness-V", ()))
    for tag, rep in (
        ("inj-hom", validate_hom(e.inj, e.coeff, e.total)),
        ("proj-hom", validate_hom(e.proj, e.total, e.base)),
    ):
        for v in rep.violations:
            out.append(Violation(f"{tag}-{v.tag}", v.indices))
    return ValidationReport(out)


def validate_section(e, s):
    out = []
    if e.proj.phi @ s.s_alg != Matrix.identity(e.field, e.base.dim_a):
        out.append(Violation("section-A", ()))
    if e.proj.psi @ s.s_mod != Matrix.identity(e.field, e.base.dim_v):
        out.append(Violation("section-V", ()))
    return ValidationReport(out)


def canonical_extension(a, b, c):
    """The twisted algebra as an extension with block inclusion/projection
    and the canonical section (x -> x + 0, v -> v + 0)."""
    total = twisted_algebra(a, b, c)
    field = a.field
    da, dv = a.dim_a, a.dim_v
    db, dm = b.dim_a, b.dim_v
    inj = RRBHom(
        Matrix.zeros(field, da, db).vstack(Matrix.identity(field, db)),
        Matrix.zeros(field, dv, dm).vstack(Matrix.identity(field, dm)),
    )
    proj = RRBHom(
        Matrix.identity(field, da).hstack(Matrix.zeros(field, da, db)),
        Matrix.identity(field, dv).hstack(Matrix.zeros(field, dv, dm)),
    )
    ext = Extension(a, b, total, inj, proj)
    sec = Section(
        Matrix.identity(field, da).vstack(Matrix.zeros(field, db, da)),
        Matrix.identity(field, dv).vstack(Matrix.zeros(field, dm, dv)),
    )
    return ext, sec


def find_section(e):
    """Deterministic section: echelon-canonical preimage of each basis
    vector (free variables zero)."""
    field = e.field
    cols_a = []
    for i in range(e.base.dim_a):
        sol = linalg.solve(e.proj.phi, linalg.basis_vector(field, e.base.dim_a, i))
        cols_a.append(sol[0])
    cols_v = []
    for j in range(e.base.dim_v):
        sol = linalg.solve(e.proj.psi, linalg.basis_vector(field, e.base.dim_v, j))
        cols_v.append(sol[0])
    s = Section(
        Matrix.from_cols(field, cols_a, rows=e.total.dim_a),
        Matrix.from_cols(field, cols_v, rows=e.total.dim_v),
    )
    assert validate_section(e, s).ok
    return s


def induced_cocycle(e, s):
    """The sextuple measured by a section: brackets and actions of section
    values, pulled back to B and M through inj."""
    field = e.field
    a, b = e.base, e.coeff
    na, nv = a.dim_a, a.dim_v
    total = e.total
    ea = lambda i: linalg.basis_vector(field, na, i)
    ev = lambda j: linalg.basis_vector(field, nv, j)
    sa = lambda x: s.s_alg @ x
    sv = lambda w: s.s_mod @ w

    omega = [
        [
            e.pull_back_b(
                vec_sub(
                    total.bracket_vec(sa(ea(i)), sa(ea(j))),
                    sa(a.lie.bracket[i][j]),
                )
            )
            for j in range(na)
        ]
        for i in range(na)
    ]
    varpi = [
        [
            e.pull_back_m(
                vec_sub(
                    total.act(sa(ea(i))) @ sv(ev(j)),
                    sv(a.rep.action[i] @ ev(j)),
                )
            )
            for j in range(nv)
        ]
        for i in range(na)
    ]
    chi = [
        e.pull_back_b(vec_sub(total.t @ sv(ev(j)), sa(a.t @ ev(j))))
        for j in range(nv)
    ]
    mu = []
    for j in range(nv):
        cols = [
            e.pull_back_m(vec_neg(total.act(e.inj.phi.col(l)) @ sv(ev(j))))
            for l in range(b.dim_a)
        ]
        mu.append(Matrix.from_cols(field, cols, rows=b.dim_v))
    rho_b = []
    for i in range(na):
        cols = [
            e.pull_back_b(total.bracket_vec(sa(ea(i)), e.inj.phi.col(l)))
            for l in range(b.dim_a)
        ]
        rho_b.append(Matrix.from_cols(field, cols, rows=b.dim_a))
    rho_m = []
    for i in range(na):
        cols = [
            e.pull_back_m(total.act(sa(ea(i))) @ e.inj.psi.col(l))
            for l in range(b.dim_v)
        ]
        rho_m.append(Matrix.from_cols(field, cols, rows=b.dim_v))
    return NonAbelianCocycle(a, b, omega, varpi, chi, mu, rho_b, rho_m)


def _linear_residual(field, nvars, fun):
    """Affine map x -> fun(x) as (matrix, constant); fun must be affine."""
    const = fun(vec_zero(field, nvars))
    cols = []
    for q in range(nvars):
        col = fun(linalg.basis_vector(field, nvars, q))
        cols.append(vec_sub(col, const))
    return Matrix.from_cols(field, cols, rows=len(const)), const


def _witness_from_flat(field, b_dim, na, m_dim, nv, flat):
    zcount = b_dim * na
    zeta = Matrix(
        field,
        [flat[i * na : (i + 1) * na] for i in range(b_dim)],
        shape=(b_dim, na),
    )
    eta = Matrix(
        field,
        [flat[zcount + i * nv : zcount + (i + 1) * nv] for i in range(m_dim)],
        shape=(m_dim, nv),
    )
    return EquivalenceWitness(zeta, eta)


def cocycles_equivalent(
    a,
    b,
    c1,
    c2,
    mode="auto",
    witness=None,
    bound=DEFAULT_SEARCH_BOUND,
):
    """Decide equivalence of two validated cocycles.

    verify: check the supplied witness; a failing witness yields unknown.
    search-finite: exhaust all (zeta, eta) over a finite field; exhaustion
    proves not-equivalent; the returned witness is lexicographically least.
    linear-abelian: abelian coeff makes (E1)-(E6) linear; decided by solve.
    auto: verify when a witness is supplied, else linear-abelian when the
    coefficient is abelian, else search-finite over a finite field.
    """
    for c in (c1, c2):
        rep = validate_nab_cocycle(a, b, c)
        if not rep.ok:
            raise InvalidCocycle(repr(rep.first))
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

    if mode == "verify":
        if witness is None:
            raise ModeUnsupported("verify mode needs a witness")
        if not equivalence_violations(a, b, c1, c2, witness):
            return Outcome("equivalent", witness=witness)
        return Outcome("unknown")

    if mode == "search-finite":
        if not field.finite:
            raise ModeUnsupported("search-finite needs a finite field")
        count = field.char ** (na * db + nv * dm)
        if count > bound:
            raise BoundExceeded(f"{count} witnesses exceed bound {bound}")
        values = [e.v for e in field.elements()]
        nvars = na * db + nv * dm
        for flat in itertools.product(values, repeat=nvars):
            w = _witness_from_flat(field, db, na, dm, nv, flat)
            if not equivalence_violations(a, b, c1, c2, w):
                return Outcome("equivalent", witness=w)
        return Outcome("not-equivalent")

    if mode == "linear-abelian":
        if not b.is_abelian():
            raise ModeUnsupported("linear-abelian needs an abelian coefficient")
        # without unknowns: E2, E3, E4 must already agree
        if c1.rho_b != c2.rho_b or c1.rho_m != c2.rho_m or c1.mu != c2.mu:
            return Outcome("not-equivalent")
        nvars = na * db + nv * dm

        def residual(flat):
            w = _witness_from_flat(field, db, na, dm, nv, flat)
            viol = []
            out = []
            zeta, eta = w.zeta, w.eta
            ea = lambda i: linalg.basis_vector(field, na, i)
            ev = lambda j: linalg.basis_vector(field, nv, j)
            for i in range(na):
                for j in range(i + 1, na):
                    lhs = vec_sub(c1.omega[i][j], c2.omega[i][j])
                    rhs = vec_sub(
                        vec_sub(
                            c2.rho_b[i] @ (zeta @ ea(j)),
                            c2.rho_b[j] @ (zeta @ ea(i)),
                        ),
                        zeta @ a.lie.bracket[i][j],
                    )
                    out.extend(vec_sub(lhs, rhs))
            for j in range(nv):
                lhs = vec_sub(c1.chi[j], c2.chi[j])
                rhs = vec_sub(b.t @ (eta @ ev(j)), zeta @ (a.t @ ev(j)))
                out.extend(vec_sub(lhs, rhs))
            for i in range(na):
                for j in range(nv):
                    lhs = vec_sub(c1.varpi[i][j], c2.varpi[i][j])
                    rhs = vec_sub(
                        c2.rho_m[i] @ (eta @ ev(j)),
                        vec_add(
                            c2.mu[j] @ (zeta @ ea(i)),
                            eta @ (a.rep.action[i] @ ev(j)),
                        ),
                    )
                    out.extend(vec_sub(lhs, rhs))
            return tuple(out)

        mat, const = _linear_residual(field, nvars, residual)
        sol = linalg.solve(mat, vec_neg(const))
        if sol is None:
            return Outcome("not-equivalent")
        w = _witness_from_flat(field, db, na, dm, nv, sol[0])
        assert not equivalence_violations(a, b, c1, c2, w)
        return Outcome("equivalent", witness=w)

    raise ModeUnsupported(f"unknown mode {mode!r}")


def _assemble_iso(e1, e2, s1, s2, witness):
    """Total-space isomorphism from an equivalence witness between the
    induced cocycles of e1 (via s1) and e2 (via s2)."""
    field = e1.field
    ia = Matrix.identity(field, e1.total.dim_a)
    iv = Matrix.identity(field, e1.total.dim_v)
    phi = (
        s2.s_alg @ e1.proj.phi
        + e2.inj.phi @ (witness.zeta @ e1.proj.phi)
        + e2.inj.phi @ e1.linv_b() @ (ia - s1.s_alg @ e1.proj.phi)
    )
    psi = (
        s2.s_mod @ e1.proj.psi
        + e2.inj.psi @ (witness.eta @ e1.proj.psi)
        + e2.inj.psi @ e1.linv_m() @ (iv - s1.s_mod @ e1.proj.psi)
    )
    return RRBHom(phi, psi)


def _iso_commutes(e1, e2, hom):
    return (
        hom.phi @ e1.inj.phi == e2.inj.phi
        and hom.psi @ e1.inj.psi == e2.inj.psi
        and e2.proj.phi @ hom.phi == e1.proj.phi
        and e2.proj.psi @ hom.psi == e1.proj.psi
    )


def extensions_equivalent(
    e1,
    e2,
    witness=None,
    mode="auto",
    bound=DEFAULT_SEARCH_BOUND,
    eq_witness=None,
):
    """Equivalence of two extensions of the same base by the same coeff.

    With a witness hom: verify it is an RRB isomorphism commuting with
    inj/proj.  Without: reduce to cocycles_equivalent on induced cocycles
    and assemble the isomorphism from the equivalence witness (a known
    cocycle witness can be supplied as eq_witness).
    """
    if e1.base != e2.base or e1.coeff != e2.coeff:
        raise InvalidInput("extensions have different base or coefficient")
    if witness is not None:
        rep = validate_hom(witness, e1.total, e2.total)
        ok = (
            rep.ok
            and linalg.is_invertible(witness.phi)
            and linalg.is_invertible(witness.psi)
            and _iso_commutes(e1, e2, witness)
        )
        return Outcome("equivalent", hom=witness) if ok else Outcome("unknown")
    s1 = find_section(e1)
    s2 = find_section(e2)
    c1 = induced_cocycle(e1, s1)
    c2 = induced_cocycle(e2, s2)
    if eq_witness is not None:
        mode = "verify"
    res = cocycles_equivalent(
        e1.base, e1.coeff, c1, c2, mode=mode, witness=eq_witness, bound=bound
    )
    if res.verdict != "equivalent":
        return res
    hom = _assemble_iso(e1, e2, s1, s2, res.witness)
    rep = validate_hom(hom, e1.total, e2.total)
    if not (
        rep.ok
        and linalg.is_invertible(hom.phi)
        and linalg.is_invertible(hom.psi)
        and _iso_commutes(e1, e2, hom)
    ):
        raise InvalidInput("assembled isomorphism failed re-validation")
    return Outcome("equivalent", witness=res.witness, hom=hom)


def abelian_reduction(a, b, c):
    """Split a cocycle over abelian coeff into the coefficient
    representation (rho_b, rho_m, mu, S) and the degree-2 cochain
    (omega, varpi, chi)."""
    if not b.is_abelian():
        raise NotAbelian("coefficient algebra is not abelian")
    rep = validate_nab_cocycle(a, b, c)
    if not rep.ok:
        raise InvalidCocycle(repr(rep.first))
    ctx = RRBRepresentation(
        a, b.dim_a, b.dim_v, b.t, list(c.rho_b), list(c.rho_m), list(c.mu)
    )
    rep2 = validate_rrb_representation(ctx)
    assert rep2.ok, repr(rep2.first)
    basis = CochainBasis(ctx, 2)
    fb = {
        (i, j): c.omega[i][j]
        for i in range(a.dim_a)
        for j in range(i + 1, a.dim_a)
    }
    fm = {((i,), j): c.varpi[i][j] for i in range(a.dim_a) for j in range(a.dim_v)}
    th = {(j,): c.chi[j] for j in range(a.dim_v)}
    cochain = Cochain.from_components(basis, fb=fb, fm=fm, th=th)
    assert cocycle_space(ctx, 2).contains(cochain.coords)
    return ctx, cochain


def cocycle_from_cochain(a, b, ctx, cochain):
    """Inverse of abelian_reduction: sextuple from a degree-2 cochain plus
    coefficient maps."""
    if cochain.degree != 2:
        raise ShapeError("need a degree-2 cochain")
    field = a.field
    na, nv = a.dim_a, a.dim_v
    zb = vec_zero(field, b.dim_a)
    omega = [[list(zb) for _ in range(na)] for _ in range(na)]
    for i in range(na):
        for j in range(na):
            if i < j:
                val = cochain.fb_value((i, j))
            elif i > j:
                val = vec_neg(cochain.fb_value((j, i)))
            else:
                val = zb
            omega[i][j] = val
    varpi = [
        [cochain.fm_value((i,), j) for j in range(nv)] for i in range(na)
    ]
    chi = [cochain.th_value((j,)) for j in range(nv)]
    return NonAbelianCocycle(
        a, b, omega, varpi, chi, list(ctx.mu), list(ctx.rho_b), list(ctx.rho_m)
    )
