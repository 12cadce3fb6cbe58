"""Exact dense linear algebra over Q and prime fields F_p.

Scalars are `fractions.Fraction` (over Q) or `FpElement` (over F_p); there is
no floating point anywhere.  Pivoting is deterministic (first nonzero in
column order) so echelon forms, kernel bases and solution representatives are
canonical and reproducible.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatch, NotASubspace, ShapeError, SingularMatrix

_MAX_PRIME = 2**31


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FpElement:
    """Residue in F_p with operator arithmetic; ints coerce on the fly."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, int):
            return FpElement(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.p, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.p, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.p, o.v - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(self.p, self.v * pow(o.v, self.p - 2, self.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return FpElement(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"


class RationalField:
    name = "Q"
    char = 0
    finite = False

    def of(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise FieldMismatch(f"cannot coerce {x!r} into Q")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def contains(self, x):
        return isinstance(x, Fraction)

    def to_str(self, x):
        return str(x)

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField:
    finite = True

    def __init__(self, p):
        if not _is_prime(p) or p > _MAX_PRIME:
            raise ValueError(f"F_p needs a prime p <= 2^31, got {p}")
        self.p = p
        self.name = f"F_{p}"
        self.char = p

    def of(self, x):
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise FieldMismatch(f"{self.name} vs F_{x.p}")
            return x
        if isinstance(x, int):
            return FpElement(self.p, x)
        if isinstance(x, str):
            return FpElement(self.p, int(x))
        if isinstance(x, Fraction) and x.denominator == 1:
            return FpElement(self.p, int(x))
        raise FieldMismatch(f"cannot coerce {x!r} into {self.name}")

    @property
    def zero(self):
        return FpElement(self.p, 0)

    @property
    def one(self):
        return FpElement(self.p, 1)

    def contains(self, x):
        return isinstance(x, FpElement) and x.p == self.p

    def elements(self):
        for v in range(self.p):
            yield FpElement(self.p, v)

    def to_str(self, x):
        return str(x.v)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F_p", self.p))


QQ = RationalField()

_gf_cache = {}


def GF(p):
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def parse_field(name):
    """Field tag from its serialized name, "Q" or "F_p"."""
    if name == "Q":
        return QQ
    if isinstance(name, str) and name.startswith("F_"):
        return GF(int(name[2:]))
    raise ValueError(f"unknown field tag {name!r}")


def same_field(f1, f2):
    if not (f1 == f2 or (f1 is QQ and f2 is QQ)):
        raise FieldMismatch(f"{f1} vs {f2}")


class Matrix:
    """Immutable dense matrix; entries share one field tag."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries, shape=None):
        entries = tuple(tuple(field.of(x) for x in row) for row in entries)
        self.field = field
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else (shape[1] if shape else 0)
        if any(len(row) != self.cols for row in entries):
            raise ShapeError("ragged rows")
        if shape is not None and (self.rows, self.cols) != tuple(shape):
            raise ShapeError(f"entries are {self.rows}x{self.cols}, expected {shape}")
        self.entries = entries

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], shape=(rows, cols))

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_cols(cls, field, cols, rows=None):
        cols = [tuple(c) for c in cols]
        if rows is None:
            if not cols:
                raise ShapeError("from_cols with no columns needs explicit rows")
            rows = len(cols[0])
        return cls(
            field,
            [[cols[j][i] for j in range(len(cols))] for i in range(rows)],
            shape=(rows, len(cols)),
        )

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(row[j] for row in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.entries == other.entries
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        self._check_same_shape(other)
        return Matrix(
            self.field,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            shape=(self.rows, self.cols),
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return Matrix(
            self.field,
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            shape=(self.rows, self.cols),
        )

    def __neg__(self):
        return Matrix(
            self.field,
            [[-a for a in row] for row in self.entries],
            shape=(self.rows, self.cols),
        )

    def scale(self, c):
        c = self.field.of(c)
        return Matrix(
            self.field,
            [[c * a for a in row] for row in self.entries],
            shape=(self.rows, self.cols),
        )

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            same_field(self.field, other.field)
            if self.cols != other.rows:
                raise ShapeError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            ot = other.transpose().entries
            return Matrix(
                self.field,
                [
                    [
                        sum((a * b for a, b in zip(row, col)), self.field.zero)
                        for col in ot
                    ]
                    for row in self.entries
                ],
                shape=(self.rows, other.cols),
            )
        if isinstance(other, (tuple, list)):
            if self.cols != len(other):
                raise ShapeError(f"{self.rows}x{self.cols} @ vector of {len(other)}")
            other = [self.field.of(x) for x in other]
            return tuple(
                sum((a * b for a, b in zip(row, other)), self.field.zero)
                for row in self.entries
            )
        return NotImplemented

    def transpose(self):
        return Matrix(
            self.field,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            shape=(self.cols, self.rows),
        )

    def hstack(self, other):
        if self.rows != other.rows:
            raise ShapeError("hstack with different row counts")
        same_field(self.field, other.field)
        return Matrix(
            self.field,
            [r1 + r2 for r1, r2 in zip(self.entries, other.entries)],
            shape=(self.rows, self.cols + other.cols),
        )

    def vstack(self, other):
        if self.cols != other.cols:
            raise ShapeError("vstack with different column counts")
        same_field(self.field, other.field)
        return Matrix(
            self.field,
            self.entries + other.entries,
            shape=(self.rows + other.rows, self.cols),
        )

    def is_zero(self):
        z = self.field.zero
        return all(a == z for row in self.entries for a in row)

    def _check_same_shape(self, other):
        same_field(self.field, other.field)
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __repr__(self):
        return f"Matrix({self.field}, {[list(r) for r in self.entries]})"


def block_matrix(blocks):
    """Assemble [[A, B], [C, D], ...] from a grid of conformable matrices."""
    rows = None
    for brow in blocks:
        stacked = brow[0]
        for b in brow[1:]:
            stacked = stacked.hstack(b)
        rows = stacked if rows is None else rows.vstack(stacked)
    return rows


def rref(m):
    """Reduced row-echelon form, (R, pivot columns, rank)."""
    z = m.field.zero
    work = [list(row) for row in m.entries]
    pivots = []
    r = 0
    for c in range(m.cols):
        pr = None
        for i in range(r, m.rows):
            if work[i][c] != z:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = m.field.one / work[r][c]
        work[r] = [inv * x for x in work[r]]
        for i in range(m.rows):
            if i != r and work[i][c] != z:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Matrix(m.field, work, shape=(m.rows, m.cols)), tuple(pivots), r


def rank(m):
    return rref(m)[2]


def kernel(m):
    """Null space of m as a Subspace of the column-coordinate space."""
    R, pivots, _ = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    z, o = m.field.zero, m.field.one
    basis = []
    for fc in free:
        v = [z] * m.cols
        v[fc] = o
        for r, pc in enumerate(pivots):
            v[pc] = -R.entries[r][fc]
        basis.append(tuple(v))
    return Subspace(m.field, m.cols, basis)


def column_space(m):
    return Subspace(m.field, m.rows, [m.col(j) for j in range(m.cols)])


def solve(a, b):
    """Solve a @ x = b; (particular, kernel Subspace) or None if inconsistent."""
    if a.rows != len(b):
        raise ShapeError(f"matrix has {a.rows} rows, rhs has {len(b)}")
    b = [a.field.of(x) for x in b]
    aug = a.hstack(Matrix(a.field, [[x] for x in b], shape=(a.rows, 1)))
    R, pivots, _ = rref(aug)
    if any(p == a.cols for p in pivots):
        return None
    z = a.field.zero
    particular = [z] * a.cols
    for r, pc in enumerate(pivots):
        particular[pc] = R.entries[r][a.cols]
    return tuple(particular), kernel(a)


def inverse(m):
    if m.rows != m.cols:
        raise ShapeError("inverse of a non-square matrix")
    R, pivots, _ = rref(m.hstack(Matrix.identity(m.field, m.rows)))
    # the identity block keeps the augmented rank full; test the pivots
    if any(p >= m.cols for p in pivots):
        raise SingularMatrix(f"rank {sum(p < m.cols for p in pivots)} < {m.rows}")
    return Matrix(m.field, [row[m.cols :] for row in R.entries])


def is_invertible(m):
    return m.rows == m.cols and rank(m) == m.rows


def left_inverse(m):
    """L with L @ m = I for a full-column-rank m; echelon-canonical."""
    R, pivots, _ = rref(m.hstack(Matrix.identity(m.field, m.rows)))
    if pivots[: m.cols] != tuple(range(m.cols)):
        raise SingularMatrix(f"column rank below {m.cols}")
    return Matrix(m.field, [row[m.cols :] for row in R.entries[: m.cols]])


class Subspace:
    """Span of vectors, stored as a reduced-echelon basis (canonical)."""

    __slots__ = ("field", "ambient_dim", "basis", "_pivots")

    def __init__(self, field, ambient_dim, vectors):
        vectors = [tuple(field.of(x) for x in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeError(f"vector of length {len(v)} in ambient {ambient_dim}")
        if vectors:
            R, pivots, rk = rref(Matrix(field, vectors))
            self.basis = tuple(R.entries[:rk])
            self._pivots = pivots
        else:
            self.basis = ()
            self._pivots = ()
        self.field = field
        self.ambient_dim = ambient_dim

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise ShapeError(
                f"vector of length {len(v)} vs ambient {self.ambient_dim}"
            )
        v = [self.field.of(x) for x in v]
        z = self.field.zero
        for bv, p in zip(self.basis, self._pivots):
            c = v[p]
            if c != z:
                v = [x - c * y for x, y in zip(v, bv)]
        return all(x == z for x in v)

    def __add__(self, other):
        same_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("sum of subspaces of different ambient spaces")
        return Subspace(
            self.field, self.ambient_dim, list(self.basis) + list(other.basis)
        )

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __le__(self, other):
        return all(other.contains(v) for v in self.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.field}^{self.ambient_dim})"


def coset_member(v, s):
    """True iff v lies in span(s), i.e. v + s is the trivial coset."""
    return s.contains(v)


def quotient_dim(big, small):
    """dim(big/small); raises NotASubspace unless small is contained in big."""
    same_field(big.field, small.field)
    if big.ambient_dim != small.ambient_dim:
        raise ShapeError("quotient of subspaces of different ambient spaces")
    for v in small.basis:
        if not big.contains(v):
            raise NotASubspace("small is not contained in big")
    return big.dim - small.dim


def vec_zero(field, n):
    return (field.zero,) * n


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u):
    return tuple(-a for a in u)


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_is_zero(field, u):
    z = field.zero
    return all(a == z for a in u)


def basis_vector(field, n, i):
    z, o = field.zero, field.one
    return tuple(o if j == i else z for j in range(n))
