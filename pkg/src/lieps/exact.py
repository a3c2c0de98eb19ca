"""Exact rational linear algebra over Q.

Dense matrices of fractions.Fraction, reduced row echelon form as the
canonical normal form, subspaces stored by their RREF bases so equality is a
syntactic check.  Everything is immutable and deterministic; there is no
floating point anywhere.

The elimination kernel runs fraction-free over integers.  A compiled twin is
used when available; set LIEPS_PURE=1 to force the pure-python kernel.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd

from .errors import NoSolution

QQ = Fraction

if os.environ.get("LIEPS_PURE"):
    from ._rref_py import rref_int_rows as _rref_int_rows

    BACKEND = "python"
else:
    try:
        from ._rref_c import rref_int_rows as _rref_int_rows

        BACKEND = "c"
    except ImportError:
        from ._rref_py import rref_int_rows as _rref_int_rows

        BACKEND = "python"


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def vec(xs) -> tuple:
    """Coerce a sequence into a tuple of Fractions."""
    return tuple(_fr(x) for x in xs)


def dot(a, b) -> Fraction:
    assert len(a) == len(b)
    acc = Fraction(0)
    for x, y in zip(a, b):
        acc += x * y
    return acc


def vadd(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a) -> tuple:
    c = _fr(c)
    return tuple(c * x for x in a)


def zero_vec(n) -> tuple:
    return (Fraction(0),) * n


def is_zero_vec(a) -> bool:
    return all(x == 0 for x in a)


class Mat:
    """Immutable dense rational matrix.

    Parameters
    ----------
    entries : iterable of rows
        Row-major grid; every entry is coerced to Fraction.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(vec(r) for r in entries)
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n) -> "Mat":
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, r, c) -> "Mat":
        return cls([[Fraction(0)] * c for _ in range(r)])

    @classmethod
    def from_cols(cls, cols) -> "Mat":
        cols = [vec(c) for c in cols]
        if not cols:
            return cls([])
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)])

    def __getitem__(self, i):
        return self.entries[i]

    def row(self, i) -> tuple:
        return self.entries[i]

    def col(self, j) -> tuple:
        return tuple(r[j] for r in self.entries)

    @property
    def T(self) -> "Mat":
        return Mat([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __eq__(self, other):
        return isinstance(other, Mat) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return Mat([vadd(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return Mat([vsub(a, b) for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Mat([vscale(-1, r) for r in self.entries])

    def scale(self, c) -> "Mat":
        return Mat([vscale(c, r) for r in self.entries])

    def __matmul__(self, other):
        if isinstance(other, Mat):
            assert self.cols == other.rows, "shape mismatch"
            cols = [other.col(j) for j in range(other.cols)]
            return Mat([[dot(r, c) for c in cols] for r in self.entries])
        # vector on the right
        v = vec(other)
        assert self.cols == len(v), "shape mismatch"
        return tuple(dot(r, v) for r in self.entries)

    def apply_T(self, v) -> tuple:
        """Multiply the transpose by a vector without materializing it."""
        v = vec(v)
        assert self.rows == len(v)
        return tuple(dot(self.col(j), v) for j in range(self.cols))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def is_skew(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == -self.entries[j][i]
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"Mat[{self.rows}x{self.cols}: {body}]"


def _int_rows(m: Mat):
    # scale each row by the lcm of denominators; row scaling preserves RREF
    out = []
    for r in m.entries:
        lcm = 1
        for x in r:
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
        out.append([int(x * lcm) for x in r])
    return out


def rref(m: Mat):
    """Reduced row echelon form.

    Returns (Mat, pivot_columns).  Deterministic: leftmost pivot column,
    first nonzero row, exact arithmetic throughout.
    """
    if m.rows == 0 or m.cols == 0:
        return Mat([[] for _ in range(m.rows)]) if m.cols == 0 else m, []
    work, pivots = _rref_int_rows(_int_rows(m), m.cols)
    out = []
    for t, c in enumerate(pivots):
        piv = work[t][c]
        out.append([Fraction(x, piv) for x in work[t]])
    for _ in range(m.rows - len(pivots)):
        out.append([Fraction(0)] * m.cols)
    return Mat(out), list(pivots)


def inverse(m: Mat) -> Mat:
    """Exact inverse; raises ValueError on a singular input."""
    n = m.rows
    assert n == m.cols
    aug = Mat([list(m.entries[i]) + [Fraction(i == j) for j in range(n)] for i in range(n)])
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat([r[n:] for r in red.entries])


class Subspace:
    """Subspace of Q^n stored by its canonical RREF basis.

    Two subspaces are equal iff their bases agree entry-wise; the basis rows
    have strictly increasing pivot columns with unit pivots and zeros
    elsewhere in the pivot columns.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient, basis, pivots):
        # trusted constructor; use from_vectors for raw input
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, ambient, vectors) -> "Subspace":
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("ambient mismatch")
        if not vectors:
            return cls(ambient, (), ())
        red, pivots = rref(Mat(vectors))
        basis = tuple(red.entries[t] for t in range(len(pivots)))
        return cls(ambient, basis, tuple(pivots))

    @classmethod
    def full(cls, ambient) -> "Subspace":
        return cls.from_vectors(ambient, Mat.identity(ambient).entries)

    @classmethod
    def zero(cls, ambient) -> "Subspace":
        return cls(ambient, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def reduce(self, v) -> tuple:
        """Residual of v after subtracting its projection onto the basis."""
        v = vec(v)
        if len(v) != self.ambient:
            raise ValueError("ambient mismatch")
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c != 0:
                v = vsub(v, vscale(c, row))
        return v

    def contains(self, v) -> bool:
        return is_zero_vec(self.reduce(v))

    def coords_of(self, v) -> tuple:
        """Coefficients of v in the RREF basis; NoSolution if v is outside."""
        v = vec(v)
        coeffs = tuple(v[p] for p in self.pivots)
        if not is_zero_vec(self.reduce(v)):
            raise NoSolution("vector outside subspace")
        return coeffs

    def sum(self, other) -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace.from_vectors(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other) -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        # x in both spans iff x = a.B1 = b.B2; solve the concatenated kernel
        stacked = Mat.from_cols(
            [list(b) for b in self.basis] + [list(vscale(-1, b)) for b in other.basis]
        )
        combos = kernel(stacked)
        vecs = []
        for k in combos.basis:
            a = k[: self.dim]
            x = zero_vec(self.ambient)
            for c, b in zip(a, self.basis):
                x = vadd(x, vscale(c, b))
            vecs.append(x)
        return Subspace.from_vectors(self.ambient, vecs)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient})"


def kernel(m: Mat) -> Subspace:
    """RREF basis of the nullspace {x : m @ x = 0}."""
    red, pivots = rref(m)
    n = m.cols
    free = [j for j in range(n) if j not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for t, p in enumerate(pivots):
            v[p] = -red.entries[t][f]
        vecs.append(v)
    return Subspace.from_vectors(n, vecs)


def solve(m: Mat, b):
    """One particular solution of m @ x = b, free variables zeroed.

    Raises NoSolution when b is outside the column space.
    """
    b = vec(b)
    assert len(b) == m.rows
    aug = Mat([list(r) + [bb] for r, bb in zip(m.entries, b)])
    red, pivots = rref(aug)
    if m.cols in pivots:
        raise NoSolution("right-hand side outside column space")
    x = [Fraction(0)] * m.cols
    for t, p in enumerate(pivots):
        x[p] = red.entries[t][m.cols]
    return tuple(x)


def column_space(m: Mat) -> Subspace:
    return Subspace.from_vectors(m.rows, [m.col(j) for j in range(m.cols)])


def stack(mats) -> Mat:
    """Vertical concatenation."""
    mats = [m for m in mats if m.rows > 0]
    if not mats:
        raise ValueError("nothing to stack")
    cols = mats[0].cols
    rows = []
    for m in mats:
        assert m.cols == cols, "shape mismatch"
        rows.extend(m.entries)
    return Mat(rows)


# free-function aliases for the Subspace operations; defined last so nothing
# inside this module accidentally picks up the shadowed builtin


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def contains(a: Subspace, v) -> bool:
    return a.contains(v)


def sum(a: Subspace, b: Subspace) -> Subspace:  # noqa: A001
    return a.sum(b)
