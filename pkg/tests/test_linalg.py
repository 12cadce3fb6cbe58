from __future__ import annotations

from fractions import Fraction

import pytest

from rrblie import linalg
from rrblie.errors import FieldMismatch, InvalidInput, ShapeError, SingularMatrix
from rrblie.linalg import (
    GF,
    QQ,
    Matrix,
    Subspace,
    basis_vector,
    coset_member,
    parse_field,
    quotient_dim,
    rank,
    rref,
    solve,
)

F2 = GF(2)
F5 = GF(5)


def test_parse_field_names():
    assert parse_field("Q") is QQ
    assert parse_field("F_2") is GF(2)
    assert parse_field("F_101").char == 101
    for bad in ("F_4", "F_1", "R", "", "F_x"):
        with pytest.raises(ValueError):
            parse_field(bad)


def test_prime_field_arithmetic():
    a = F5.of(3)
    b = F5.of(4)
    assert (a + b).v == 2
    assert (a * b).v == 2
    assert (a - b).v == 4
    assert (a / b).v == (3 * 4) % 5  # 4^{-1} = 4 mod 5
    assert -a == F5.of(2)
    assert F5.of(7) == F5.of(2)
    assert sorted(x.v for x in F5.elements()) == [0, 1, 2, 3, 4]


def test_rational_field_of_and_str():
    assert QQ.of(2) == Fraction(2)
    assert QQ.of(Fraction(1, 3)) * QQ.of(3) == QQ.one
    assert QQ.to_str(Fraction(-1, 2)) == "-1/2"
    assert F5.to_str(F5.of(3)) == "3"


def test_field_mix_rejected():
    m2 = Matrix(F2, [[1]])
    m5 = Matrix(F5, [[1]])
    with pytest.raises(FieldMismatch):
        m2 @ m5


def test_matrix_shapes_and_ops():
    m = Matrix(QQ, [[1, 2], [3, 4]])
    assert m.col(1) == (QQ.of(2), QQ.of(4))
    assert (m @ m.transpose()).entries[0][0] == QQ.of(5)
    assert m + (-m) == Matrix.zeros(QQ, 2, 2)
    assert m.scale(2) == Matrix(QQ, [[2, 4], [6, 8]])
    with pytest.raises(ShapeError):
        m @ Matrix(QQ, [[1, 2, 3]])
    assert m @ (1, 1) == (QQ.of(3), QQ.of(7))


def test_rref_and_rank():
    m = Matrix(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, pivots, rk = rref(m)
    assert rank(m) == 2 == rk
    assert pivots == (0, 1)
    # pivot columns reduced to identity pattern
    for k, j in enumerate(pivots):
        assert r.col(j) == basis_vector(QQ, 3, k)


def test_solve_particular_plus_kernel():
    a = Matrix(QQ, [[1, 1, 0], [0, 0, 1]])
    sol = solve(a, (3, 4))
    assert sol is not None
    x, ker = sol
    assert a @ x == (QQ.of(3), QQ.of(4))
    assert ker.dim == 1
    for v in ker.basis:
        assert a @ v == (QQ.zero, QQ.zero)
    assert solve(Matrix(QQ, [[0, 0]]), (1,)) is None


def test_inverse_and_left_inverse():
    m = Matrix(F5, [[1, 2], [3, 4]])
    assert linalg.inverse(m) @ m == Matrix.identity(F5, 2)
    with pytest.raises(SingularMatrix):
        linalg.inverse(Matrix(F5, [[1, 2], [2, 4]]))
    tall = Matrix(QQ, [[1, 0], [0, 1], [1, 1]])
    li = linalg.left_inverse(tall)
    assert li @ tall == Matrix.identity(QQ, 2)


def test_subspace_semantics():
    u = Subspace(F2, 3, [(1, 0, 0), (0, 1, 0)])
    w = Subspace(F2, 3, [(1, 1, 0)])
    assert u.dim == 2 and w.dim == 1
    assert u.contains((1, 1, 0))
    assert not u.contains((0, 0, 1))
    assert (u + w).dim == 2
    assert Subspace(F2, 3, [(1, 0, 0), (1, 1, 0)]) == u
    assert quotient_dim(u, w) == 1
    # coset_member tests membership of a difference vector
    assert coset_member(linalg.vec_sub((1, 0, 0), (0, 1, 0)), w)
    assert not coset_member((0, 0, 1), w)


def test_subspace_rejects_bad_vectors():
    with pytest.raises(ShapeError):
        Subspace(QQ, 2, [(1, 2, 3)])


def test_block_matrix_assembly():
    i2 = Matrix.identity(QQ, 2)
    z = Matrix.zeros(QQ, 2, 2)
    bm = linalg.block_matrix([[i2, z], [z, i2]])
    assert bm == Matrix.identity(QQ, 4)
