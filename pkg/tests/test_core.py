from __future__ import annotations

import itertools
import random

import pytest

from conftest import (
    F2,
    F5,
    abelian_lie,
    aff1,
    afft,
    catalog_pairs,
    heis_pair,
    heisenberg,
    trivial_rep,
    zero_pair,
)
from rrblie.core import (
    DerivationPair,
    LieAlgebra,
    Representation,
    RRBAlgebra,
    RRBHom,
    adjoint_coefficients,
    combine,
    derivation_bracket,
    enumerate_rrb_operators,
    semidirect_product,
    trivial_coefficients,
    validate_derivation,
    validate_hom,
    validate_lie,
    validate_representation,
    validate_rrb,
    validate_rrb_representation,
)
from rrblie.errors import BoundExceeded, FieldMismatch, InvalidInput, ShapeError
from rrblie.linalg import QQ, Matrix, basis_vector


def test_validate_lie_flags_broken_axioms():
    assert validate_lie(aff1(QQ)).ok
    assert validate_lie(heisenberg(QQ)).ok
    # non-antisymmetric table
    bad = LieAlgebra(QQ, [[[1, 0], [0, 0]], [[0, 0], [0, 0]]])
    tags = {v.tag for v in validate_lie(bad).violations}
    assert "antisymmetry" in tags
    # antisymmetric but Jacobi fails: [e1,e2]=e3, [e1,e3]=e1, [e2,e3]=0
    z3 = [0, 0, 0]
    bad2 = LieAlgebra(
        QQ,
        [
            [z3, [0, 0, 1], [1, 0, 0]],
            [[0, 0, -1], z3, z3],
            [[-1, 0, 0], z3, z3],
        ],
    )
    tags2 = {v.tag for v in validate_lie(bad2).violations}
    assert tags2 == {"jacobi"}


def test_alternating_diagonal_checked_in_char_two():
    # c[0][0] = e_0 satisfies c_ij = -c_ji over F_2 but not [x, x] = 0
    bad = LieAlgebra(F2, [[[1]]])
    assert not validate_lie(bad).ok


def test_validate_representation_flags_non_action():
    lie = aff1(QQ)
    good = Representation.adjoint(lie)
    assert validate_representation(good).ok
    bad = Representation(lie, 2, [Matrix.identity(QQ, 2), Matrix.identity(QQ, 2)])
    rep = validate_representation(bad)
    assert not rep.ok
    assert rep.first.tag == "representation"


def test_validate_rrb_operator_identity():
    a = afft(QQ)
    assert validate_rrb(a).ok
    broken = RRBAlgebra(a.lie, a.rep, Matrix(QQ, [[1, 0], [0, 1]]))
    rep = validate_rrb(broken)
    assert not rep.ok
    assert any(v.tag == "rrb-operator" for v in rep.violations)


def test_adjoint_and_trivial_coefficients_validate():
    rng = random.Random(0)
    for a in catalog_pairs(rng, QQ):
        assert validate_rrb_representation(adjoint_coefficients(a)).ok
        assert validate_rrb_representation(trivial_coefficients(a, 2, 1)).ok


def test_validate_rrb_representation_flags_perturbation():
    ctx = adjoint_coefficients(afft(QQ))
    from rrblie.core import RRBRepresentation

    bad = RRBRepresentation(
        ctx.base,
        ctx.b_dim,
        ctx.m_dim,
        ctx.s + Matrix.identity(QQ, 2),
        ctx.rho_b,
        ctx.rho_m,
        ctx.mu,
    )
    assert not validate_rrb_representation(bad).ok


def test_validate_hom_identity_and_automorphism_flag():
    a = afft(QQ)
    ident = RRBHom(Matrix.identity(QQ, 2), Matrix.identity(QQ, 2))
    rep = validate_hom(ident, a, a)
    assert rep.ok and rep.is_automorphism
    skew = RRBHom(Matrix(QQ, [[1, 1], [0, 1]]), Matrix.identity(QQ, 2))
    rep2 = validate_hom(skew, a, a)
    assert not rep2.ok
    degen = RRBHom(Matrix.zeros(QQ, 2, 2), Matrix.zeros(QQ, 2, 2))
    assert validate_hom(degen, a, a).is_automorphism is False
    with pytest.raises(ShapeError):
        validate_hom(RRBHom(Matrix.identity(QQ, 3), Matrix.identity(QQ, 2)), a, a)


def _derivation_holds(a, d):
    # independent restatement of the three conditions on basis vectors
    field = a.field
    for i in range(a.dim_a):
        ei = basis_vector(field, a.dim_a, i)
        for j in range(a.dim_a):
            ej = basis_vector(field, a.dim_a, j)
            lhs = d.d_a @ a.bracket_vec(ei, ej)
            rhs = tuple(
                x + y
                for x, y in zip(
                    a.bracket_vec(d.d_a @ ei, ej), a.bracket_vec(ei, d.d_a @ ej)
                )
            )
            if lhs != rhs:
                return False
    if a.t @ d.d_v != d.d_a @ a.t:
        return False
    for i in range(a.dim_a):
        ei = basis_vector(field, a.dim_a, i)
        if d.d_v @ a.rep.action[i] - a.rep.action[i] @ d.d_v != a.act(d.d_a @ ei):
            return False
    return True


def test_validate_derivation_matches_direct_conditions():
    pairs = [zero_pair(F2, 1, 1), afft(F2), heis_pair(F2)]
    for a in pairs:
        na, nv = a.dim_a, a.dim_v
        cells = na * na + nv * nv
        if cells > 8:
            continue
        for bits in itertools.product(range(2), repeat=cells):
            d_a = Matrix(F2, [list(bits[i * na : (i + 1) * na]) for i in range(na)])
            off = na * na
            d_v = Matrix(
                F2, [list(bits[off + i * nv : off + (i + 1) * nv]) for i in range(nv)]
            )
            d = DerivationPair(d_a, d_v)
            assert validate_derivation(a, d).ok == _derivation_holds(a, d)


def test_derivation_bracket_closure():
    from conftest import F3

    a = afft(F3)
    ders = []
    na, nv = a.dim_a, a.dim_v
    for bits in itertools.product(range(3), repeat=na * na + nv * nv):
        d_a = Matrix(F3, [list(bits[i * na : (i + 1) * na]) for i in range(na)])
        off = na * na
        d_v = Matrix(
            F3, [list(bits[off + i * nv : off + (i + 1) * nv]) for i in range(nv)]
        )
        d = DerivationPair(d_a, d_v)
        if validate_derivation(a, d).ok:
            ders.append(d)
    assert len(ders) > 1
    rng = random.Random(1)
    for _ in range(20):
        d1, d2 = rng.choice(ders), rng.choice(ders)
        assert validate_derivation(a, derivation_bracket(d1, d2)).ok


def test_semidirect_product_structure():
    a = afft(QQ)
    ctx = adjoint_coefficients(a)
    e = semidirect_product(a, ctx)
    assert validate_rrb(e).ok
    assert e.dim_a == a.dim_a + ctx.b_dim
    assert e.dim_v == a.dim_v + ctx.m_dim
    da = a.dim_a
    # [x + 0, 0 + b] lands in the fiber via rho_b
    for i in range(da):
        for l in range(ctx.b_dim):
            got = e.lie.bracket[i][da + l]
            want = (QQ.zero,) * da + tuple(ctx.rho_b[i].col(l))
            assert tuple(got) == want
    # fiber brackets vanish
    for l in range(ctx.b_dim):
        for k in range(ctx.b_dim):
            assert all(x == QQ.zero for x in e.lie.bracket[da + l][da + k])


def test_semidirect_product_rejects_invalid_inputs():
    a = afft(QQ)
    ctx = adjoint_coefficients(a)
    from rrblie.core import RRBRepresentation

    bad = RRBRepresentation(
        a,
        ctx.b_dim,
        ctx.m_dim,
        ctx.s + Matrix.identity(QQ, 2),
        ctx.rho_b,
        ctx.rho_m,
        ctx.mu,
    )
    with pytest.raises(InvalidInput):
        semidirect_product(a, bad)
    other = zero_pair(QQ, 2, 2)
    with pytest.raises(InvalidInput):
        semidirect_product(other, ctx)


def test_enumerate_rrb_operators_matches_validation():
    lie = aff1(F2)
    rep = Representation.adjoint(lie)
    ops = enumerate_rrb_operators(lie, rep, F2)
    brute = []
    for bits in itertools.product(range(2), repeat=4):
        t = Matrix(F2, [[bits[0], bits[1]], [bits[2], bits[3]]])
        if validate_rrb(RRBAlgebra(lie, rep, t)).ok:
            brute.append(t)
    assert ops == brute
    assert Matrix(F2, [[0, 0], [1, 0]]) in ops
    # lexicographic order of row-major entries
    keys = [tuple(x.v for row in t.entries for x in row) for t in ops]
    assert keys == sorted(keys)


def test_enumerate_rrb_operators_guards():
    lie = abelian_lie(F2, 4)
    rep = trivial_rep(lie, 3)
    with pytest.raises(BoundExceeded):
        enumerate_rrb_operators(lie, rep, F2)
    lq = abelian_lie(QQ, 1)
    with pytest.raises(FieldMismatch):
        enumerate_rrb_operators(lq, trivial_rep(lq, 1), QQ)


def test_combine_is_linear_assembly():
    mats = [Matrix(QQ, [[1, 0], [0, 0]]), Matrix(QQ, [[0, 0], [0, 1]])]
    out = combine(mats, (2, 3), 2, 2, QQ)
    assert out == Matrix(QQ, [[2, 0], [0, 3]])
    assert combine(mats, (0, 0), 2, 2, QQ) == Matrix.zeros(QQ, 2, 2)
