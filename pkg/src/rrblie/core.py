"""Structure-constant Lie algebras, relative Rota-Baxter operators,
coefficient representations, homomorphisms, derivations, and the
semidirect product.

All objects are immutable coordinate-level values over `linalg`; identities
are validated on basis tuples, which suffices by multilinearity.
"""

from __future__ import annotations

import itertools

from . import linalg
from .errors import BoundExceeded, FieldMismatch, InvalidInput, ShapeError
from .linalg import Matrix, vec_add, vec_is_zero, vec_scale, vec_sub, vec_zero


class Violation:
    """One failed identity instance: equation tag plus basis indices."""

    __slots__ = ("tag", "indices")

    def __init__(self, tag, indices=()):
        self.tag = tag
        self.indices = tuple(indices)

    def __repr__(self):
        if self.indices:
            return f"{self.tag} at {self.indices}"
        return self.tag

    def __eq__(self, other):
        return (
            isinstance(other, Violation)
            and self.tag == other.tag
            and self.indices == other.indices
        )


class ValidationReport:
    __slots__ = ("violations", "is_automorphism")

    def __init__(self, violations=(), is_automorphism=None):
        self.violations = tuple(violations)
        self.is_automorphism = is_automorphism

    @property
    def ok(self):
        return not self.violations

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "valid"
        return "invalid: " + "; ".join(repr(v) for v in self.violations)


class LieAlgebra:
    """Lie algebra by structure constants: [e_i, e_j] = sum_k c[i][j][k] e_k."""

    __slots__ = ("field", "dim", "bracket")

    def __init__(self, field, bracket):
        bracket = tuple(
            tuple(tuple(field.of(x) for x in cell) for cell in row) for row in bracket
        )
        n = len(bracket)
        for row in bracket:
            if len(row) != n or any(len(cell) != n for cell in row):
                raise ShapeError("bracket tensor must be dim x dim x dim")
        self.field = field
        self.dim = n
        self.bracket = bracket

    @classmethod
    def abelian(cls, field, dim):
        z = field.zero
        cell = (z,) * dim
        return cls(field, [[cell] * dim for _ in range(dim)])

    def bracket_vec(self, x, y):
        out = vec_zero(self.field, self.dim)
        z = self.field.zero
        for i, xi in enumerate(x):
            if xi == z:
                continue
            for j, yj in enumerate(y):
                if yj == z:
                    continue
                out = vec_add(out, vec_scale(xi * yj, self.bracket[i][j]))
        return out

    def ad(self, x):
        """Matrix of a |-> [x, a]."""
        cols = [
            self.bracket_vec(x, linalg.basis_vector(self.field, self.dim, j))
            for j in range(self.dim)
        ]
        return Matrix.from_cols(self.field, cols, rows=self.dim)

    def is_abelian(self):
        return all(
            vec_is_zero(self.field, cell) for row in self.bracket for cell in row
        )

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.field == other.field
            and self.bracket == other.bracket
        )

    def __hash__(self):
        return hash(self.bracket)


class Representation:
    """Lie algebra acting on a space: action[i] is the matrix of rho(e_i)."""

    __slots__ = ("lie", "space_dim", "action")

    def __init__(self, lie, space_dim, action):
        action = tuple(
            m if isinstance(m, Matrix) else Matrix(lie.field, m) for m in action
        )
        if len(action) != lie.dim:
            raise ShapeError(f"need {lie.dim} action matrices, got {len(action)}")
        for m in action:
            if m.rows != space_dim or m.cols != space_dim:
                raise ShapeError("action matrices must be space_dim square")
            linalg.same_field(m.field, lie.field)
        self.lie = lie
        self.space_dim = space_dim
        self.action = action

    @classmethod
    def trivial(cls, lie, space_dim):
        z = Matrix.zeros(lie.field, space_dim, space_dim)
        return cls(lie, space_dim, [z] * lie.dim)

    @classmethod
    def adjoint(cls, lie):
        return cls(
            lie,
            lie.dim,
            [
                lie.ad(linalg.basis_vector(lie.field, lie.dim, i))
                for i in range(lie.dim)
            ],
        )

    def act(self, x):
        """Matrix of rho(x) for a coordinate vector x."""
        out = Matrix.zeros(self.lie.field, self.space_dim, self.space_dim)
        z = self.lie.field.zero
        for xi, m in zip(x, self.action):
            if xi != z:
                out = out + m.scale(xi)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.lie == other.lie
            and self.action == other.action
        )

    def __hash__(self):
        return hash((self.lie, self.action))


def combine(matrices, x, rows, cols, field):
    """sum_i x_i matrices[i], the action of the coordinate vector x."""
    out = Matrix.zeros(field, rows, cols)
    z = field.zero
    for xi, m in zip(x, matrices):
        if xi != z:
            out = out + m.scale(xi)
    return out


class RRBAlgebra:
    """Lie algebra A, representation (V, rho), and operator T: V -> A."""

    __slots__ = ("lie", "rep", "t")

    def __init__(self, lie, rep, t):
        if rep.lie is not lie and rep.lie != lie:
            raise ShapeError("representation is not over the given algebra")
        if not isinstance(t, Matrix):
            t = Matrix(lie.field, t)
        if t.rows != lie.dim or t.cols != rep.space_dim:
            raise ShapeError(f"operator must be {lie.dim}x{rep.space_dim}")
        linalg.same_field(t.field, lie.field)
        self.lie = lie
        self.rep = rep
        self.t = t

    @property
    def field(self):
        return self.lie.field

    @property
    def dim_a(self):
        return self.lie.dim

    @property
    def dim_v(self):
        return self.rep.space_dim

    def bracket_vec(self, x, y):
        return self.lie.bracket_vec(x, y)

    def act(self, x):
        return self.rep.act(x)

    def t_apply(self, v):
        return self.t @ v

    def is_abelian(self):
        """Abelian means the bracket and the action both vanish."""
        return self.lie.is_abelian() and all(m.is_zero() for m in self.rep.action)

    def __eq__(self, other):
        return (
            isinstance(other, RRBAlgebra)
            and self.field == other.field
            and self.lie.bracket == other.lie.bracket
            and self.rep.action == other.rep.action
            and self.t == other.t
        )

    def __hash__(self):
        return hash((self.lie.bracket, self.rep.action, self.t))


class RRBRepresentation:
    """Coefficients for an RRB algebra: complex M -S-> B with actions
    rho_b, rho_m of A and the pairing mu: V -> Hom(B, M)."""

    __slots__ = ("base", "b_dim", "m_dim", "s", "rho_b", "rho_m", "mu")

    def __init__(self, base, b_dim, m_dim, s, rho_b, rho_m, mu):
        field = base.field
        wrap = lambda m: m if isinstance(m, Matrix) else Matrix(field, m)
        if s is None:
            s = Matrix.zeros(field, b_dim, m_dim)
        else:
            s = wrap(s)
        rho_b = tuple(wrap(m) for m in rho_b)
        rho_m = tuple(wrap(m) for m in rho_m)
        mu = tuple(wrap(m) for m in mu)
        if s.rows != b_dim or s.cols != m_dim:
            raise ShapeError(f"s must be {b_dim}x{m_dim}")
        if len(rho_b) != base.dim_a or len(rho_m) != base.dim_a:
            raise ShapeError("rho_b/rho_m need one matrix per A basis vector")
        if len(mu) != base.dim_v:
            raise ShapeError("mu needs one matrix per V basis vector")
        for m in rho_b:
            if (m.rows, m.cols) != (b_dim, b_dim):
                raise ShapeError("rho_b matrices must act on B")
        for m in rho_m:
            if (m.rows, m.cols) != (m_dim, m_dim):
                raise ShapeError("rho_m matrices must act on M")
        for m in mu:
            if (m.rows, m.cols) != (m_dim, b_dim):
                raise ShapeError("mu matrices must map B to M")
        self.base = base
        self.b_dim = b_dim
        self.m_dim = m_dim
        self.s = s
        self.rho_b = rho_b
        self.rho_m = rho_m
        self.mu = mu

    @property
    def field(self):
        return self.base.field

    def rho_b_of(self, x):
        return combine(self.rho_b, x, self.b_dim, self.b_dim, self.field)

    def rho_m_of(self, x):
        return combine(self.rho_m, x, self.m_dim, self.m_dim, self.field)

    def mu_of(self, v):
        return combine(self.mu, v, self.m_dim, self.b_dim, self.field)


def adjoint_coefficients(a):
    """The coefficient tuple of an RRB algebra acting on itself:
    B = A with the adjoint action, M = V with rho, S = T, and
    mu(v)x = -rho(x)v."""
    field = a.field
    rho_b = [a.lie.ad(linalg.basis_vector(field, a.dim_a, i)) for i in range(a.dim_a)]
    mu = []
    for j in range(a.dim_v):
        ej = linalg.basis_vector(field, a.dim_v, j)
        cols = [tuple(-x for x in a.rep.action[l] @ ej) for l in range(a.dim_a)]
        mu.append(Matrix.from_cols(field, cols, rows=a.dim_v))
    return RRBRepresentation(
        a, a.dim_a, a.dim_v, a.t, rho_b, list(a.rep.action), mu
    )


def trivial_coefficients(a, b_dim, m_dim):
    """All-zero coefficient maps of the given sizes over a."""
    field = a.field
    zb = Matrix.zeros(field, b_dim, b_dim)
    zm = Matrix.zeros(field, m_dim, m_dim)
    zmb = Matrix.zeros(field, m_dim, b_dim)
    return RRBRepresentation(
        a,
        b_dim,
        m_dim,
        Matrix.zeros(field, b_dim, m_dim),
        [zb] * a.dim_a,
        [zm] * a.dim_a,
        [zmb] * a.dim_v,
    )


class RRBHom:
    """Pair (phi: A -> A', psi: V -> V')."""

    __slots__ = ("phi", "psi")

    def __init__(self, phi, psi):
        self.phi = phi
        self.psi = psi

    def __eq__(self, other):
        return (
            isinstance(other, RRBHom)
            and self.phi == other.phi
            and self.psi == other.psi
        )

    def __hash__(self):
        return hash((self.phi, self.psi))


class DerivationPair:
    """Pair (d_a: A -> A, d_v: V -> V)."""

    __slots__ = ("d_a", "d_v")

    def __init__(self, d_a, d_v):
        self.d_a = d_a
        self.d_v = d_v

    def __eq__(self, other):
        return (
            isinstance(other, DerivationPair)
            and self.d_a == other.d_a
            and self.d_v == other.d_v
        )

    def __hash__(self):
        return hash((self.d_a, self.d_v))


def validate_lie(l):
    """Antisymmetry (including alternating diagonal) and Jacobi on bases."""
    out = []
    field = l.field
    for i in range(l.dim):
        # [e_i, e_i] = 0 is not implied by c_ij = -c_ji in characteristic 2
        if not vec_is_zero(field, l.bracket[i][i]):
            out.append(Violation("antisymmetry", (i, i)))
        for j in range(i + 1, l.dim):
            if not vec_is_zero(field, vec_add(l.bracket[i][j], l.bracket[j][i])):
                out.append(Violation("antisymmetry", (i, j)))
    for i, j, k in itertools.combinations(range(l.dim), 3):
        ei = linalg.basis_vector(field, l.dim, i)
        ej = linalg.basis_vector(field, l.dim, j)
        ek = linalg.basis_vector(field, l.dim, k)
        total = vec_add(
            vec_add(
                l.bracket_vec(l.bracket_vec(ei, ej), ek),
                l.bracket_vec(l.bracket_vec(ej, ek), ei),
            ),
            l.bracket_vec(l.bracket_vec(ek, ei), ej),
        )
        if not vec_is_zero(field, total):
            out.append(Violation("jacobi", (i, j, k)))
    return ValidationReport(out)


def _rep_violations(lie, space_dim, action, tag="representation"):
    out = []
    field = lie.field
    for i in range(lie.dim):
        for j in range(i + 1, lie.dim):
            lhs = combine(action, lie.bracket[i][j], space_dim, space_dim, field)
            rhs = action[i] @ action[j] - action[j] @ action[i]
            if lhs != rhs:
                out.append(Violation(tag, (i, j)))
    return out


def validate_representation(rep):
    return ValidationReport(_rep_violations(rep.lie, rep.space_dim, rep.action))


def _rrb_display_violations(lie, rep, t):
    out = []
    field = lie.field
    for u in range(rep.space_dim):
        for v in range(u + 1, rep.space_dim):
            eu = linalg.basis_vector(field, rep.space_dim, u)
            ev = linalg.basis_vector(field, rep.space_dim, v)
            tu, tv = t @ eu, t @ ev
            lhs = lie.bracket_vec(tu, tv)
            rhs = t @ vec_sub(rep.act(tu) @ ev, rep.act(tv) @ eu)
            if lhs != rhs:
                out.append(Violation("rrb-operator", (u, v)))
    return out


def validate_rrb(r):
    out = list(validate_lie(r.lie).violations)
    out += _rep_violations(r.lie, r.rep.space_dim, r.rep.action)
    out += _rrb_display_violations(r.lie, r.rep, r.t)
    return ValidationReport(out)


def validate_rrb_representation(rep):
    base = rep.base
    field = base.field
    out = _rep_violations(base.lie, rep.b_dim, rep.rho_b, "representation-B")
    out += _rep_violations(base.lie, rep.m_dim, rep.rho_m, "representation-M")
    for i in range(base.dim_a):
        for j in range(base.dim_v):
            ev = linalg.basis_vector(field, base.dim_v, j)
            lhs = rep.mu_of(base.act(linalg.basis_vector(field, base.dim_a, i)) @ ev)
            rhs = rep.rho_m[i] @ rep.mu[j] - rep.mu[j] @ rep.rho_b[i]
            if lhs != rhs:
                out.append(Violation("Re1", (i, j)))
    for j in range(base.dim_v):
        tv = base.t @ linalg.basis_vector(field, base.dim_v, j)
        lhs = rep.rho_b_of(tv) @ rep.s
        rhs = rep.s @ rep.rho_m_of(tv) + rep.s @ rep.mu[j] @ rep.s
        if lhs != rhs:
            out.append(Violation("Re2", (j,)))
    return ValidationReport(out)


def validate_hom(h, src, dst):
    out = []
    field = src.field
    linalg.same_field(field, dst.field)
    phi, psi = h.phi, h.psi
    if phi.rows != dst.dim_a or phi.cols != src.dim_a:
        raise ShapeError("phi must map A to A'")
    if psi.rows != dst.dim_v or psi.cols != src.dim_v:
        raise ShapeError("psi must map V to V'")
    for i in range(src.dim_a):
        for j in range(i + 1, src.dim_a):
            lhs = phi @ src.lie.bracket[i][j]
            rhs = dst.bracket_vec(phi.col(i), phi.col(j))
            if lhs != rhs:
                out.append(Violation("lie-hom", (i, j)))
    if dst.t @ psi != phi @ src.t:
        out.append(Violation("Irp1", ()))
    for i in range(src.dim_a):
        lhs = psi @ src.rep.action[i]
        rhs = dst.act(phi.col(i)) @ psi
        if lhs != rhs:
            out.append(Violation("Irp2", (i,)))
    is_auto = None
    if src.dim_a == dst.dim_a and src.dim_v == dst.dim_v and src == dst:
        is_auto = linalg.is_invertible(phi) and linalg.is_invertible(psi)
    return ValidationReport(out, is_automorphism=is_auto)


def validate_derivation(a, d):
    out = []
    field = a.field
    d_a, d_v = d.d_a, d.d_v
    if (d_a.rows, d_a.cols) != (a.dim_a, a.dim_a):
        raise ShapeError("d_a must be square on A")
    if (d_v.rows, d_v.cols) != (a.dim_v, a.dim_v):
        raise ShapeError("d_v must be square on V")
    for i in range(a.dim_a):
        for j in range(i + 1, a.dim_a):
            ei = linalg.basis_vector(field, a.dim_a, i)
            ej = linalg.basis_vector(field, a.dim_a, j)
            lhs = d_a @ a.lie.bracket[i][j]
            rhs = vec_add(
                a.bracket_vec(d_a @ ei, ej), a.bracket_vec(ei, d_a @ ej)
            )
            if lhs != rhs:
                out.append(Violation("derivation", (i, j)))
    if a.t @ d_v != d_a @ a.t:
        out.append(Violation("D1", ()))
    for i in range(a.dim_a):
        ei = linalg.basis_vector(field, a.dim_a, i)
        lhs = d_v @ a.rep.action[i]
        rhs = a.rep.action[i] @ d_v + a.act(d_a @ ei)
        if lhs != rhs:
            out.append(Violation("D2", (i,)))
    return ValidationReport(out)


def semidirect_product(a, rep):
    """RRB algebra on (A+B, V+M) with the semidirect bracket, action and
    operator; requires both inputs to validate."""
    if rep.base is not a and rep.base != a:
        raise InvalidInput("coefficients are not over the given algebra")
    if not validate_rrb(a).ok:
        raise InvalidInput("base algebra does not validate")
    if not validate_rrb_representation(rep).ok:
        raise InvalidInput("coefficients do not validate")
    field = a.field
    da, dv, db, dm = a.dim_a, a.dim_v, rep.b_dim, rep.m_dim
    n = da + db
    w = dv + dm
    z = field.zero
    embed_a = lambda x: tuple(x) + (z,) * db
    embed_b = lambda b: (z,) * da + tuple(b)

    cells = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i < da and j < da:
                cells[i][j] = embed_a(a.lie.bracket[i][j])
            elif i < da:
                cells[i][j] = embed_b(rep.rho_b[i].col(j - da))
            elif j < da:
                cells[i][j] = embed_b(tuple(-x for x in rep.rho_b[j].col(i - da)))
            else:
                cells[i][j] = (z,) * n
    lie = LieAlgebra(field, cells)

    action = []
    for i in range(da):
        action.append(
            linalg.block_matrix(
                [
                    [a.rep.action[i], Matrix.zeros(field, dv, dm)],
                    [Matrix.zeros(field, dm, dv), rep.rho_m[i]],
                ]
            )
        )
    for l in range(db):
        # rho(b)(v + m) = -mu(v) b: lower-left column j is -mu(e_j) e_l
        lower = Matrix.from_cols(
            field,
            [tuple(-x for x in rep.mu[j].col(l)) for j in range(dv)],
            rows=dm,
        )
        action.append(
            linalg.block_matrix(
                [
                    [Matrix.zeros(field, dv, dv), Matrix.zeros(field, dv, dm)],
                    [lower, Matrix.zeros(field, dm, dm)],
                ]
            )
        )
    product_rep = Representation(lie, w, action)

    t = linalg.block_matrix(
        [
            [a.t, Matrix.zeros(field, da, dm)],
            [Matrix.zeros(field, db, dv), rep.s],
        ]
    )
    return RRBAlgebra(lie, product_rep, t)


def derivation_bracket(d1, d2):
    """Componentwise commutator ([d_a, d_a'], [d_v, d_v'])."""
    if (d1.d_a.rows, d1.d_v.rows) != (d2.d_a.rows, d2.d_v.rows):
        raise InvalidInput("derivation pairs live on different spaces")
    return DerivationPair(
        d1.d_a @ d2.d_a - d2.d_a @ d1.d_a,
        d1.d_v @ d2.d_v - d2.d_v @ d1.d_v,
    )


def enumerate_rrb_operators(lie, rep, field, bound=9):
    """All T: V -> A over a finite field satisfying the operator identity,
    in lexicographic order of the row-major entry tuple."""
    if not field.finite:
        raise FieldMismatch("enumeration needs a finite field")
    linalg.same_field(lie.field, field)
    da, dv = lie.dim, rep.space_dim
    if da * dv > bound:
        raise BoundExceeded(f"dim(A)*dim(V) = {da * dv} exceeds bound {bound}")
    found = []
    for entries in itertools.product(
        [e.v for e in field.elements()], repeat=da * dv
    ):
        t = Matrix(field, [entries[i * dv : (i + 1) * dv] for i in range(da)])
        if not _rrb_display_violations(lie, rep, t):
            found.append(t)
    return found
