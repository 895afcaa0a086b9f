"""Exact Gaussian-integer scalars, vectors and matrices.

Every dynamical quantity in this package is a complex integer a + ib
with arbitrary-precision integer parts.  Gaussian integers form a
commutative ring, not a field, so the operations provided here are ring
operations: add, subtract, multiply, negate, conjugate.  Nothing is
ever rounded and nothing can overflow.

The literal encoding shared with the CLI writes a scalar as the
two-element pair [re, im], a vector as a list of pairs, and a matrix as
a row-major list of rows of pairs.  Encoding and decoding round-trip
bit-exactly for integers of any size.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = [
    "GaussianInt",
    "GIVector",
    "GIMatrix",
    "HermitianIntMatrix",
    "ZERO",
    "ONE",
    "IMAG_UNIT",
    "int_matrix_apply",
    "int_matrix_is_symmetric",
    "int_matrix_is_antisymmetric",
]


def _as_exact_int(value, where: str) -> int:
    # bool is an int subclass; it is never a legitimate literal here.
    if type(value) is not int:
        raise ValueError(f"{where}: expected a plain integer, got {value!r}")
    return value


class GaussianInt:
    """Complex integer re + i*im.  Immutable by convention."""

    __slots__ = ("re", "im")

    def __init__(self, re: int, im: int = 0):
        self.re = re
        self.im = im

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianInt):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return GaussianInt(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def mul_i(self) -> "GaussianInt":
        """Multiplication by the imaginary unit."""
        return GaussianInt(-self.im, self.re)

    def norm2(self) -> int:
        """Ring norm re**2 + im**2."""
        return self.re * self.re + self.im * self.im

    def divide_exact(self, k: int) -> "GaussianInt":
        """Divide both parts by the nonzero integer k; k must divide exactly."""
        if k == 0:
            raise ZeroDivisionError("exact division by zero")
        qr, rr = divmod(self.re, k)
        qi, ri = divmod(self.im, k)
        if rr or ri:
            raise ValueError(f"{self!r} is not divisible by {k}")
        return GaussianInt(qr, qi)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(self.re, self.im)

    def __repr__(self):
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self):
        return f"{self.re}{self.im:+d}i"

    def to_pair(self) -> list:
        return [self.re, self.im]

    @classmethod
    def from_pair(cls, obj, where: str = "pair") -> "GaussianInt":
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise ValueError(f"{where}: expected [re, im], got {obj!r}")
        return cls(_as_exact_int(obj[0], where + "[0]"),
                   _as_exact_int(obj[1], where + "[1]"))


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
IMAG_UNIT = GaussianInt(0, 1)


def _to_gi(value, where: str) -> GaussianInt:
    g = GaussianInt._coerce(value)
    if g is None:
        raise ValueError(f"{where}: expected GaussianInt or int, got {value!r}")
    return g


class GIVector:
    """Fixed-dimension vector of Gaussian integers, indexed by dof label."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        ents = tuple(_to_gi(e, "vector entry") for e in entries)
        if not ents:
            raise ValueError("vector needs dimension >= 1")
        self.entries = ents

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def zero(cls, dim: int) -> "GIVector":
        return cls([ZERO] * dim)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other):
        if not isinstance(other, GIVector):
            return NotImplemented
        self._check_dim(other)
        return GIVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other):
        if not isinstance(other, GIVector):
            return NotImplemented
        self._check_dim(other)
        return GIVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self):
        return GIVector(-a for a in self.entries)

    def scale(self, a) -> "GIVector":
        ga = _to_gi(a, "scalar")
        return GIVector(ga * e for e in self.entries)

    def __rmul__(self, a):
        try:
            return self.scale(a)
        except ValueError:
            return NotImplemented

    def conjugate(self) -> "GIVector":
        return GIVector(e.conjugate() for e in self.entries)

    def inner(self, other: "GIVector") -> GaussianInt:
        """Sesquilinear product sum_a conj(self_a) * other_a."""
        self._check_dim(other)
        re = 0
        im = 0
        for a, b in zip(self.entries, other.entries):
            # conj(a) * b expanded on integer parts
            re += a.re * b.re + a.im * b.im
            im += a.re * b.im - a.im * b.re
        return GaussianInt(re, im)

    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __eq__(self, other):
        if not isinstance(other, GIVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"GIVector([{', '.join(str(e) for e in self.entries)}])"

    def to_pairs(self) -> list:
        return [e.to_pair() for e in self.entries]

    @classmethod
    def from_pairs(cls, obj, where: str = "vector") -> "GIVector":
        if not isinstance(obj, (list, tuple)) or not obj:
            raise ValueError(f"{where}: expected a nonempty list of [re, im] pairs")
        return cls(GaussianInt.from_pair(p, f"{where}[{i}]") for i, p in enumerate(obj))


class GIMatrix:
    """Square matrix of Gaussian integers."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rws = tuple(tuple(_to_gi(e, "matrix entry") for e in row) for row in rows)
        if not rws:
            raise ValueError("matrix needs dimension >= 1")
        d = len(rws)
        if any(len(r) != d for r in rws):
            raise ValueError("matrix must be square")
        self.rows = rws

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, dim: int) -> "GIMatrix":
        return cls([[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)])

    @classmethod
    def zeros(cls, dim: int) -> "GIMatrix":
        return cls([[ZERO] * dim for _ in range(dim)])

    def entry(self, i: int, j: int) -> GaussianInt:
        return self.rows[i][j]

    def apply(self, v: GIVector) -> GIVector:
        """Matrix-vector product, exact."""
        if self.dim != v.dim:
            raise ValueError(f"dimension mismatch: matrix {self.dim} vs vector {v.dim}")
        out = []
        for row in self.rows:
            re = 0
            im = 0
            for h, x in zip(row, v.entries):
                re += h.re * x.re - h.im * x.im
                im += h.re * x.im + h.im * x.re
            out.append(GaussianInt(re, im))
        return GIVector(out)

    def __matmul__(self, other):
        if not isinstance(other, GIMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        d = self.dim
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                re = 0
                im = 0
                for a, b in zip(row, col):
                    re += a.re * b.re - a.im * b.im
                    im += a.re * b.im + a.im * b.re
                out_row.append(GaussianInt(re, im))
            out.append(out_row)
        return GIMatrix(out)

    def __add__(self, other):
        if not isinstance(other, GIMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return GIMatrix((a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))

    def __sub__(self, other):
        if not isinstance(other, GIMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return GIMatrix((a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))

    def __neg__(self):
        return GIMatrix((-e for e in row) for row in self.rows)

    def scale(self, a) -> "GIMatrix":
        ga = _to_gi(a, "scalar")
        return GIMatrix((ga * e for e in row) for row in self.rows)

    def dagger(self) -> "GIMatrix":
        """Conjugate transpose."""
        return GIMatrix((self.rows[j][i].conjugate() for j in range(self.dim))
                        for i in range(self.dim))

    def transpose(self) -> "GIMatrix":
        return GIMatrix(zip(*self.rows))

    def is_hermitian(self) -> bool:
        for i in range(self.dim):
            for j in range(i, self.dim):
                if self.rows[i][j] != self.rows[j][i].conjugate():
                    return False
        return True

    def is_zero(self) -> bool:
        return all(not e for row in self.rows for e in row)

    def commutator(self, other: "GIMatrix") -> "GIMatrix":
        """self @ other - other @ self, exact."""
        return (self @ other) - (other @ self)

    def power(self, k: int) -> "GIMatrix":
        if k < 0:
            raise ValueError("negative matrix powers are not defined over the ring")
        out = GIMatrix.identity(self.dim)
        for _ in range(k):
            out = out @ self
        return out

    def kron(self, other: "GIMatrix") -> "GIMatrix":
        """Kronecker product; index (a, b) flattens row-major to a*dim(other)+b."""
        db = other.dim
        d = self.dim * db
        out = [[None] * d for _ in range(d)]
        for i, row_a in enumerate(self.rows):
            for k, row_b in enumerate(other.rows):
                for j, a in enumerate(row_a):
                    for l, b in enumerate(row_b):
                        out[i * db + k][j * db + l] = a * b
        return GIMatrix(out)

    def __eq__(self, other):
        if not isinstance(other, GIMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"GIMatrix[{body}]"

    def to_pairs(self) -> list:
        return [[e.to_pair() for e in row] for row in self.rows]

    @classmethod
    def from_pairs(cls, obj, where: str = "matrix") -> "GIMatrix":
        if not isinstance(obj, (list, tuple)) or not obj:
            raise ValueError(f"{where}: expected a nonempty list of rows")
        rows = []
        for i, row in enumerate(obj):
            if not isinstance(row, (list, tuple)):
                raise ValueError(f"{where}[{i}]: expected a row of [re, im] pairs")
            rows.append([GaussianInt.from_pair(p, f"{where}[{i}][{j}]")
                         for j, p in enumerate(row)])
        return cls(rows)


class HermitianIntMatrix:
    """Self-adjoint Gaussian-integer matrix; validated entrywise on construction."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: GIMatrix):
        if not isinstance(matrix, GIMatrix):
            matrix = GIMatrix(matrix)
        if not matrix.is_hermitian():
            raise ValueError("matrix is not self-adjoint")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @classmethod
    def identity(cls, dim: int) -> "HermitianIntMatrix":
        return cls(GIMatrix.identity(dim))

    @classmethod
    def zeros(cls, dim: int) -> "HermitianIntMatrix":
        return cls(GIMatrix.zeros(dim))

    def apply(self, v: GIVector) -> GIVector:
        return self.matrix.apply(v)

    def power(self, k: int) -> "HermitianIntMatrix":
        # integer powers of a self-adjoint matrix stay self-adjoint
        return HermitianIntMatrix(self.matrix.power(k))

    def split(self):
        """Real symmetric and imaginary antisymmetric integer parts (hS, hA).

        The original matrix reconstructs exactly as hS + i*hA.
        """
        hs = tuple(tuple(e.re for e in row) for row in self.matrix.rows)
        ha = tuple(tuple(e.im for e in row) for row in self.matrix.rows)
        return hs, ha

    @classmethod
    def from_split(cls, hs, ha) -> "HermitianIntMatrix":
        if not int_matrix_is_symmetric(hs):
            raise ValueError("real part must be symmetric")
        if not int_matrix_is_antisymmetric(ha):
            raise ValueError("imaginary part must be antisymmetric")
        if len(hs) != len(ha):
            raise ValueError("split parts disagree in dimension")
        return cls(GIMatrix((GaussianInt(s, a) for s, a in zip(rs, ra))
                            for rs, ra in zip(hs, ha)))

    def __eq__(self, other):
        if not isinstance(other, HermitianIntMatrix):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"HermitianIntMatrix({self.matrix!r})"

    def to_pairs(self) -> list:
        return self.matrix.to_pairs()

    @classmethod
    def from_pairs(cls, obj, where: str = "matrix") -> "HermitianIntMatrix":
        return cls(GIMatrix.from_pairs(obj, where))


def int_matrix_apply(m: Sequence[Sequence[int]], v: Sequence[int]) -> tuple:
    """Apply a plain integer matrix to a plain integer vector."""
    if len(m) != len(v) or any(len(row) != len(v) for row in m):
        raise ValueError("dimension mismatch in integer matrix application")
    return tuple(sum(a * x for a, x in zip(row, v)) for row in m)


def int_matrix_is_symmetric(m: Sequence[Sequence[int]]) -> bool:
    d = len(m)
    return all(len(row) == d for row in m) and \
        all(m[i][j] == m[j][i] for i in range(d) for j in range(i + 1, d))


def int_matrix_is_antisymmetric(m: Sequence[Sequence[int]]) -> bool:
    d = len(m)
    return all(len(row) == d for row in m) and \
        all(m[i][j] == -m[j][i] for i in range(d) for j in range(i, d))
