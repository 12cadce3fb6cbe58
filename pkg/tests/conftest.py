"""Shared builders: catalog algebras, finite censuses over F_2, random
conjugated contexts, and an independent degree-1 coboundary oracle."""

from __future__ import annotations

import itertools
from functools import lru_cache

from rrblie.linalg import GF, QQ, Matrix, basis_vector, vec_add, vec_sub, vec_zero
from rrblie import linalg
from rrblie.core import (
    LieAlgebra,
    Representation,
    RRBAlgebra,
    RRBRepresentation,
    validate_rrb,
    validate_rrb_representation,
)
from rrblie.extensions import NonAbelianCocycle, validate_nab_cocycle

F2 = GF(2)
F3 = GF(3)
F5 = GF(5)


def abelian_lie(field, n):
    z = [0] * n
    return LieAlgebra(field, [[list(z) for _ in range(n)] for _ in range(n)])


def aff1(field):
    return LieAlgebra(field, [[[0, 0], [0, 1]], [[0, -1], [0, 0]]])


def heisenberg(field):
    return LieAlgebra(
        field,
        [
            [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
            [[0, 0, -1], [0, 0, 0], [0, 0, 0]],
            [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
        ],
    )


def adjoint_rep(lie):
    return Representation(
        lie,
        lie.dim,
        [lie.ad(basis_vector(lie.field, lie.dim, i)) for i in range(lie.dim)],
    )


def trivial_rep(lie, n):
    return Representation(lie, n, [Matrix.zeros(lie.field, n, n)] * lie.dim)


def zero_pair(field, na=1, nv=1):
    lie = abelian_lie(field, na)
    return RRBAlgebra(lie, trivial_rep(lie, nv), Matrix.zeros(field, na, nv))


def afft(field):
    lie = aff1(field)
    a = RRBAlgebra(lie, adjoint_rep(lie), Matrix(field, [[0, 0], [1, 0]]))
    assert validate_rrb(a).ok
    return a


def heis_pair(field):
    lie = heisenberg(field)
    a = RRBAlgebra(lie, adjoint_rep(lie), Matrix.zeros(field, 3, 3))
    assert validate_rrb(a).ok
    return a


def rand_matrix(rng, field, rows, cols):
    if field.finite:
        return Matrix(
            field, [[rng.randrange(field.char) for _ in range(cols)] for _ in range(rows)]
        )
    return Matrix(
        field, [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
    )


def rand_invertible(rng, field, n):
    while True:
        m = rand_matrix(rng, field, n, n)
        if linalg.is_invertible(m):
            return m


def conjugate_pair(rng, a):
    """Transport of structure along random invertible (P_A, P_V)."""
    field = a.field
    pa = rand_invertible(rng, field, a.dim_a)
    pv = rand_invertible(rng, field, a.dim_v)
    pa_inv = linalg.inverse(pa)
    pv_inv = linalg.inverse(pv)
    bracket = [
        [
            tuple(pa @ a.bracket_vec(pa_inv.col(i), pa_inv.col(j)))
            for j in range(a.dim_a)
        ]
        for i in range(a.dim_a)
    ]
    lie = LieAlgebra(field, bracket)
    action = [
        pv @ a.rep.act(pa_inv.col(i)) @ pv_inv for i in range(a.dim_a)
    ]
    rep = Representation(lie, a.dim_v, action)
    out = RRBAlgebra(lie, rep, pa @ a.t @ pv_inv)
    assert validate_rrb(out).ok
    return out


def conjugate_context(rng, ctx):
    """Conjugate the coefficient side by random invertible (P_B, P_M)."""
    field = ctx.base.field
    pb = rand_invertible(rng, field, ctx.b_dim)
    pm = rand_invertible(rng, field, ctx.m_dim)
    pb_inv = linalg.inverse(pb)
    pm_inv = linalg.inverse(pm)
    out = RRBRepresentation(
        ctx.base,
        ctx.b_dim,
        ctx.m_dim,
        pb @ ctx.s @ pm_inv,
        [pb @ m @ pb_inv for m in ctx.rho_b],
        [pm @ m @ pm_inv for m in ctx.rho_m],
        [pm @ m @ pb_inv for m in ctx.mu],
    )
    assert validate_rrb_representation(out).ok
    return out


def catalog_pairs(rng, field):
    """Validated base pairs with dims <= 3, some conjugated."""
    out = [
        zero_pair(field, 1, 1),
        zero_pair(field, 2, 1),
        zero_pair(field, 1, 2),
        zero_pair(field, 3, 2),
        afft(field),
        heis_pair(field),
    ]
    lie = abelian_lie(field, 2)
    rnd = RRBAlgebra(lie, trivial_rep(lie, 2), rand_matrix(rng, field, 2, 2))
    assert validate_rrb(rnd).ok
    out.append(rnd)
    out.append(conjugate_pair(rng, afft(field)))
    out.append(conjugate_pair(rng, heis_pair(field)))
    return out


# -- exhaustive one-dimensional census over F_2 -------------------------------


@lru_cache(maxsize=None)
def f2_dim1_bases():
    """All validated (rho, T) pairs on one-dimensional spaces over F_2."""
    lie = abelian_lie(F2, 1)
    out = []
    for r in range(2):
        rep = Representation(lie, 1, [Matrix(F2, [[r]])])
        for t in range(2):
            a = RRBAlgebra(lie, rep, Matrix(F2, [[t]]))
            if validate_rrb(a).ok:
                out.append(a)
    return tuple(out)


@lru_cache(maxsize=None)
def f2_dim1_coeffs():
    """All validated one-dimensional coefficient algebras over F_2."""
    lie = abelian_lie(F2, 1)
    out = []
    for nu in range(2):
        rep = Representation(lie, 1, [Matrix(F2, [[nu]])])
        for t in range(2):
            b = RRBAlgebra(lie, rep, Matrix(F2, [[t]]))
            if validate_rrb(b).ok:
                out.append(b)
    return tuple(out)


def f2_dim1_sextuples(a, b):
    """Every candidate sextuple over the pair, valid or not."""
    out = []
    for w, vp, ch, mu, rb, rm in itertools.product(range(2), repeat=6):
        out.append(
            NonAbelianCocycle(
                a,
                b,
                [[(w,)]],
                [[(vp,)]],
                [(ch,)],
                [Matrix(F2, [[mu]])],
                [Matrix(F2, [[rb]])],
                [Matrix(F2, [[rm]])],
            )
        )
    return out


@lru_cache(maxsize=None)
def f2_dim1_census():
    """(a, b, cocycle, valid) for the full one-dimensional F_2 space."""
    rows = []
    for a in f2_dim1_bases():
        for b in f2_dim1_coeffs():
            for c in f2_dim1_sextuples(a, b):
                rows.append((a, b, c, validate_nab_cocycle(a, b, c).ok))
    return tuple(rows)


def f2_dim1_valid():
    return tuple((a, b, c) for a, b, c, ok in f2_dim1_census() if ok)


@lru_cache(maxsize=None)
def f3_dim1_valid():
    """Valid one-dimensional sextuples over F_3 for a few (rho, t) bases;
    F_3 admits a nonidentity scalar automorphism, unlike F_2."""
    lie = abelian_lie(F3, 1)
    picked = []
    for r, t in ((0, 0), (1, 1), (2, 0)):
        rep = Representation(lie, 1, [Matrix(F3, [[r]])])
        alg = RRBAlgebra(lie, rep, Matrix(F3, [[t]]))
        if validate_rrb(alg).ok:
            picked.append(alg)
    rows = []
    for a in picked:
        for b in picked:
            for vals in itertools.product(range(3), repeat=6):
                w, vp, ch, mu, rb, rm = vals
                c = NonAbelianCocycle(
                    a,
                    b,
                    [[(w,)]],
                    [[(vp,)]],
                    [(ch,)],
                    [Matrix(F3, [[mu]])],
                    [Matrix(F3, [[rb]])],
                    [Matrix(F3, [[rm]])],
                )
                if validate_nab_cocycle(a, b, c).ok:
                    rows.append((a, b, c))
    return tuple(rows)


# -- independent degree-1 coboundary -------------------------------------------


def direct_degree1_coboundary(ctx, phi_b, phi_m):
    """Degree-1 coboundary from first principles: the three component
    formulas evaluated on basis tuples, with no shared code path."""
    a = ctx.base
    field = a.field
    na, nv = a.dim_a, a.dim_v
    ea = lambda i: basis_vector(field, na, i)
    ev = lambda j: basis_vector(field, nv, j)
    fb = {}
    for i in range(na):
        for j in range(i + 1, na):
            val = ctx.rho_b[i] @ (phi_b @ ea(j))
            val = vec_sub(val, ctx.rho_b[j] @ (phi_b @ ea(i)))
            val = vec_sub(val, phi_b @ a.lie.bracket[i][j])
            fb[(i, j)] = val
    fm = {}
    for i in range(na):
        for j in range(nv):
            val = vec_zero(field, ctx.m_dim)
            val = vec_sub(val, ctx.mu[j] @ (phi_b @ ea(i)))
            val = vec_add(val, ctx.rho_m[i] @ (phi_m @ ev(j)))
            val = vec_sub(val, phi_m @ (a.rep.action[i] @ ev(j)))
            fm[((i,), j)] = val
    th = {}
    for j in range(nv):
        val = vec_sub(ctx.s @ (phi_m @ ev(j)), phi_b @ (a.t @ ev(j)))
        th[(j,)] = val
    return fb, fm, th
