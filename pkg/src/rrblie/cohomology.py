"""Cochain complex of an RRB algebra with coefficients in a representation.

Degree n cochains are triples (f_B, f_M, theta) of alternating multilinear
maps, stored as one flat coordinate vector: the f_B block (n-fold A-tuples
to B), then the f_M block ((n-1)-fold A-tuples times V to M), then the theta
block ((n-1)-fold V-tuples to B, absent at degree 1).  Multi-indices run in
lexicographic order, coordinate-major within each tuple.
"""

from __future__ import annotations

import itertools

from . import linalg
from .errors import DegreeOutOfRange, NotACocycle, ShapeError
from .linalg import Matrix, vec_add, vec_scale, vec_sub, vec_zero

DEFAULT_MAX_DEGREE = 4


class CochainBasis:
    """Flat coordinate layout for C^n over a fixed coefficient context."""

    __slots__ = (
        "ctx",
        "degree",
        "fb_tuples",
        "fm_tuples",
        "th_tuples",
        "fb_offset",
        "fm_offset",
        "th_offset",
        "dim",
        "_fb_pos",
        "_fm_pos",
        "_th_pos",
    )

    def __init__(self, ctx, degree):
        if degree < 1:
            raise DegreeOutOfRange(f"degree {degree} < 1")
        a = ctx.base.dim_a
        v = ctx.base.dim_v
        b, m = ctx.b_dim, ctx.m_dim
        n = degree
        self.ctx = ctx
        self.degree = n
        self.fb_tuples = tuple(itertools.combinations(range(a), n))
        self.fm_tuples = tuple(
            (J, j)
            for J in itertools.combinations(range(a), n - 1)
            for j in range(v)
        )
        if n >= 2:
            self.th_tuples = tuple(itertools.combinations(range(v), n - 1))
        else:
            self.th_tuples = ()
        self.fb_offset = 0
        self.fm_offset = len(self.fb_tuples) * b
        self.th_offset = self.fm_offset + len(self.fm_tuples) * m
        self.dim = self.th_offset + len(self.th_tuples) * b
        self._fb_pos = {I: q for q, I in enumerate(self.fb_tuples)}
        self._fm_pos = {Jj: q for q, Jj in enumerate(self.fm_tuples)}
        self._th_pos = {K: q for q, K in enumerate(self.th_tuples)}

    def fb_slice(self, I):
        q = self._fb_pos[I]
        b = self.ctx.b_dim
        return self.fb_offset + q * b, self.fb_offset + (q + 1) * b

    def fm_slice(self, J, j):
        q = self._fm_pos[(J, j)]
        m = self.ctx.m_dim
        return self.fm_offset + q * m, self.fm_offset + (q + 1) * m

    def th_slice(self, K):
        q = self._th_pos[K]
        b = self.ctx.b_dim
        return self.th_offset + q * b, self.th_offset + (q + 1) * b


class Cochain:
    """Degree n cochain as flat coordinates in a CochainBasis layout."""

    __slots__ = ("basis", "coords")

    def __init__(self, basis, coords):
        coords = tuple(basis.ctx.field.of(x) for x in coords)
        if len(coords) != basis.dim:
            raise ShapeError(f"expected {basis.dim} coordinates, got {len(coords)}")
        self.basis = basis
        self.coords = coords

    @property
    def degree(self):
        return self.basis.degree

    @property
    def ctx(self):
        return self.basis.ctx

    @classmethod
    def zero(cls, basis):
        return cls(basis, vec_zero(basis.ctx.field, basis.dim))

    @classmethod
    def from_components(cls, basis, fb=None, fm=None, th=None):
        """Build from maps: fb[I] -> B-vector, fm[(J, j)] -> M-vector,
        th[K] -> B-vector; missing entries are zero."""
        field = basis.ctx.field
        coords = list(vec_zero(field, basis.dim))
        for I, val in (fb or {}).items():
            lo, hi = basis.fb_slice(tuple(I))
            coords[lo:hi] = [field.of(x) for x in val]
        for (J, j), val in (fm or {}).items():
            lo, hi = basis.fm_slice(tuple(J), j)
            coords[lo:hi] = [field.of(x) for x in val]
        for K, val in (th or {}).items():
            lo, hi = basis.th_slice(tuple(K))
            coords[lo:hi] = [field.of(x) for x in val]
        return cls(basis, coords)

    def fb_value(self, I):
        lo, hi = self.basis.fb_slice(I)
        return self.coords[lo:hi]

    def fm_value(self, J, j):
        lo, hi = self.basis.fm_slice(J, j)
        return self.coords[lo:hi]

    def th_value(self, K):
        lo, hi = self.basis.th_slice(K)
        return self.coords[lo:hi]

    def __add__(self, other):
        self._check(other)
        return Cochain(self.basis, vec_add(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return Cochain(self.basis, vec_sub(self.coords, other.coords))

    def scale(self, c):
        c = self.ctx.field.of(c)
        return Cochain(self.basis, vec_scale(c, self.coords))

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.degree, self.coords))

    def _check(self, other):
        if self.basis.degree != other.basis.degree:
            raise ShapeError("cochain degrees differ")
        if self.basis.dim != other.basis.dim:
            raise ShapeError("cochain layouts differ")


def _sort_sign(idx):
    """(sign, sorted tuple) of a duplicate-free index sequence."""
    idx = list(idx)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def _support(field, vec):
    z = field.zero
    return [(i, x) for i, x in enumerate(vec) if x != z]


def _alt_eval(field, lookup, vecs, out_dim):
    """Evaluate an alternating multilinear map given by `lookup` on sorted
    index tuples, at a list of coordinate vectors."""
    out = vec_zero(field, out_dim)
    if not vecs:
        return vec_add(out, lookup(()))
    for combo in itertools.product(*[_support(field, v) for v in vecs]):
        idx = tuple(i for i, _ in combo)
        if len(set(idx)) < len(idx):
            continue
        coeff = combo[0][1]
        for _, x in combo[1:]:
            coeff = coeff * x
        sign, sidx = _sort_sign(idx)
        val = lookup(sidx)
        out = vec_add(out, vec_scale(coeff if sign > 0 else -coeff, val))
    return out


def eval_fb(c, avecs):
    """f_B component on a list of degree-many A coordinate vectors."""
    basis = c.basis
    return _alt_eval(
        c.ctx.field, lambda I: c.fb_value(I), avecs, c.ctx.b_dim
    )


def eval_fm(c, avecs, vvec):
    """f_M component on (degree-1) A-vectors and one V-vector."""
    field = c.ctx.field
    out = vec_zero(field, c.ctx.m_dim)
    for j, xj in _support(field, vvec):
        part = _alt_eval(
            field, lambda J: c.fm_value(J, j), avecs, c.ctx.m_dim
        )
        out = vec_add(out, vec_scale(xj, part))
    return out


def eval_th(c, vvecs):
    """theta component on (degree-1) V coordinate vectors."""
    return _alt_eval(
        c.ctx.field, lambda K: c.th_value(K), vvecs, c.ctx.b_dim
    )


def _check_degree(n, max_degree):
    if n < 1 or n > max_degree:
        raise DegreeOutOfRange(f"degree {n} outside [1, {max_degree}]")


def coboundary(ctx, c, max_degree=DEFAULT_MAX_DEGREE):
    """Coboundary of a degree n cochain: ((delta f)_B, (delta f)_M,
    del theta + h_T f) in degree n+1."""
    n = c.degree
    _check_degree(n, max_degree)
    field = ctx.field
    base = ctx.base
    a, v = base.dim_a, base.dim_v
    out_basis = CochainBasis(ctx, n + 1)
    ea = lambda i: linalg.basis_vector(field, a, i)
    ev = lambda j: linalg.basis_vector(field, v, j)
    fb, fm, th = {}, {}, {}

    for X in out_basis.fb_tuples:
        acc = vec_zero(field, ctx.b_dim)
        for q in range(n + 1):
            rest = [ea(x) for x in X[:q] + X[q + 1 :]]
            term = ctx.rho_b[X[q]] @ eval_fb(c, rest)
            acc = vec_add(acc, term if q % 2 == 0 else linalg.vec_neg(term))
        for q, r in itertools.combinations(range(n + 1), 2):
            rest = [ea(x) for x in X[:q] + X[q + 1 : r] + X[r + 1 :]]
            br = base.lie.bracket[X[q]][X[r]]
            term = eval_fb(c, [br] + rest)
            acc = vec_add(acc, term if (q + r) % 2 == 0 else linalg.vec_neg(term))
        fb[X] = acc

    for X, j in out_basis.fm_tuples:
        acc = vec_zero(field, ctx.m_dim)
        for q, r in itertools.combinations(range(n), 2):
            rest = [ea(x) for x in X[:q] + X[q + 1 : r] + X[r + 1 :]]
            br = base.lie.bracket[X[q]][X[r]]
            term = eval_fm(c, [br] + rest, ev(j))
            acc = vec_add(acc, term if (q + r) % 2 == 0 else linalg.vec_neg(term))
        # coupling term: -(-1)^{n-1} mu(v) f_B(x_1, ..., x_n)
        term = ctx.mu[j] @ eval_fb(c, [ea(x) for x in X])
        acc = vec_add(acc, linalg.vec_neg(term) if (n - 1) % 2 == 0 else term)
        for q in range(n):
            rest = [ea(x) for x in X[:q] + X[q + 1 :]]
            t1 = ctx.rho_m[X[q]] @ eval_fm(c, rest, ev(j))
            t2 = eval_fm(c, rest, base.rep.action[X[q]] @ ev(j))
            term = vec_sub(t1, t2)
            acc = vec_add(acc, term if q % 2 == 0 else linalg.vec_neg(term))
        fm[(X, j)] = acc

    for W in out_basis.th_tuples:
        acc = vec_zero(field, ctx.b_dim)
        if n >= 2:
            for q in range(n):
                rest = [ev(w) for w in W[:q] + W[q + 1 :]]
                tw = base.t @ ev(W[q])
                val = eval_th(c, rest)
                term = vec_sub(
                    ctx.rho_b_of(tw) @ val, ctx.s @ (ctx.mu[W[q]] @ val)
                )
                acc = vec_add(acc, term if q % 2 == 0 else linalg.vec_neg(term))
            for q, r in itertools.combinations(range(n), 2):
                rest = [ev(w) for w in W[:q] + W[q + 1 : r] + W[r + 1 :]]
                wq, wr = ev(W[q]), ev(W[r])
                br = vec_sub(
                    base.act(base.t @ wq) @ wr, base.act(base.t @ wr) @ wq
                )
                term = eval_th(c, [br] + rest)
                acc = vec_add(acc, term if (q + r) % 2 == 0 else linalg.vec_neg(term))
        tws = [base.t @ ev(w) for w in W]
        term = eval_fb(c, tws)
        acc = vec_add(acc, term if n % 2 == 0 else linalg.vec_neg(term))
        for q in range(n):
            rest = tws[:q] + tws[q + 1 :]
            term = ctx.s @ eval_fm(c, rest, ev(W[q]))
            acc = vec_add(acc, term if q % 2 == 0 else linalg.vec_neg(term))
        th[W] = acc

    return Cochain.from_components(out_basis, fb=fb, fm=fm, th=th)


def coboundary_matrix(ctx, n, max_degree=DEFAULT_MAX_DEGREE):
    """Matrix of the degree n coboundary in the flat coordinate layouts."""
    _check_degree(n, max_degree)
    basis = CochainBasis(ctx, n)
    out_basis = CochainBasis(ctx, n + 1)
    field = ctx.field
    cols = []
    for q in range(basis.dim):
        unit = Cochain(basis, linalg.basis_vector(field, basis.dim, q))
        cols.append(coboundary(ctx, unit, max_degree).coords)
    return Matrix.from_cols(field, cols, rows=out_basis.dim)


def cocycle_space(ctx, n, max_degree=DEFAULT_MAX_DEGREE):
    """Z^n as a subspace of the flat degree n coordinates."""
    return linalg.kernel(coboundary_matrix(ctx, n, max_degree))


def coboundary_space(ctx, n, max_degree=DEFAULT_MAX_DEGREE):
    """B^n (image of the degree n-1 coboundary), n >= 2."""
    if n < 2:
        raise DegreeOutOfRange("coboundaries start at degree 2")
    _check_degree(n, max_degree)
    return linalg.column_space(coboundary_matrix(ctx, n - 1, max_degree))


def cohomology_dim(ctx, n, max_degree=DEFAULT_MAX_DEGREE):
    """dim H^n: dim Z^1 at degree 1, dim Z^n - dim B^n above."""
    _check_degree(n, max_degree)
    z = cocycle_space(ctx, n, max_degree)
    if n == 1:
        return z.dim
    b = coboundary_space(ctx, n, max_degree)
    return linalg.quotient_dim(z, b)


def class_equal(ctx, c1, c2, max_degree=DEFAULT_MAX_DEGREE):
    """True iff the cocycles c1, c2 differ by a coboundary."""
    if c1.degree != c2.degree:
        raise ShapeError("cochain degrees differ")
    n = c1.degree
    if n < 2:
        raise DegreeOutOfRange("classes live in degree >= 2")
    _check_degree(n, max_degree)
    z = cocycle_space(ctx, n, max_degree)
    for c in (c1, c2):
        if not z.contains(c.coords):
            raise NotACocycle("input is not a cocycle")
    return linalg.coset_member(
        vec_sub(c1.coords, c2.coords), coboundary_space(ctx, n, max_degree)
    )
