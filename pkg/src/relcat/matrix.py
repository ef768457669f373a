"""Exact dense matrices over F_q.

Row reduction, rank, kernel, row-space canonicalization, the orthogonal
complement under the standard dot product, and deterministic subspace
enumeration.  A subspace is always represented by its unique reduced
row-echelon basis with zero rows dropped; two equal row spaces therefore
have structurally equal representations.

Matrices are immutable: entries are stored row-major in a tuple of
element codes.  Vectors are rows throughout.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import FieldMismatch, ShapeMismatch, Singular, TooLarge
from .field import Fq

ENUMERATION_GUARD = 2**20


class MatFq:
    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Fq, rows: int, cols: int, entries):
        entries = tuple(field.check(x) for x in entries)
        if len(entries) != rows * cols:
            raise ShapeMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, field: Fq, row_list, cols: int | None = None) -> "MatFq":
        row_list = [list(r) for r in row_list]
        if cols is None:
            if not row_list:
                raise ShapeMismatch("cols required for a matrix with no rows")
            cols = len(row_list[0])
        for r in row_list:
            if len(r) != cols:
                raise ShapeMismatch("ragged rows")
        flat = [x for r in row_list for x in r]
        return cls(field, len(row_list), cols, flat)

    @classmethod
    def identity(cls, field: Fq, n: int) -> "MatFq":
        return cls(field, n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, field: Fq, rows: int, cols: int) -> "MatFq":
        return cls(field, rows, cols, [0] * (rows * cols))

    def __getitem__(self, rc) -> int:
        i, j = rc
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, MatFq)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"MatFq({self.field}, {self.rows}x{self.cols}, {self.tolist()})"

    def to_json(self) -> dict:
        return {
            "q": str(self.field),
            "rows": self.rows,
            "cols": self.cols,
            "entries": list(self.entries),
        }

    # -- block surgery --------------------------------------------------

    def transpose(self) -> "MatFq":
        ent = [self[j, i] for i in range(self.cols) for j in range(self.rows)]
        return MatFq(self.field, self.cols, self.rows, ent)

    def vstack(self, other: "MatFq") -> "MatFq":
        if self.field != other.field:
            raise FieldMismatch("vstack over different fields")
        if self.cols != other.cols:
            raise ShapeMismatch("vstack with different column counts")
        return MatFq(
            self.field, self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def hstack(self, other: "MatFq") -> "MatFq":
        if self.rows != other.rows:
            raise ShapeMismatch("hstack with different row counts")
        ent = []
        for i in range(self.rows):
            ent.extend(self.row(i))
            ent.extend(other.row(i))
        return MatFq(self.field, self.rows, self.cols + other.cols, ent)

    def take_cols(self, idx) -> "MatFq":
        idx = list(idx)
        ent = [self[i, j] for i in range(self.rows) for j in idx]
        return MatFq(self.field, self.rows, len(idx), ent)

    def scale(self, a: int) -> "MatFq":
        F = self.field
        return MatFq(F, self.rows, self.cols, [F.mul(a, x) for x in self.entries])

    def neg(self) -> "MatFq":
        F = self.field
        return MatFq(F, self.rows, self.cols, [F.neg(x) for x in self.entries])

    # -- linear algebra --------------------------------------------------

    def matmul(self, other: "MatFq") -> "MatFq":
        if self.field != other.field:
            raise FieldMismatch("matmul over different fields")
        if self.cols != other.rows:
            raise ShapeMismatch(f"matmul {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        F = self.field
        ent = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    if ri[k]:
                        acc = F.add(acc, F.mul(ri[k], other[k, j]))
                ent.append(acc)
        return MatFq(F, self.rows, other.cols, ent)

    def __matmul__(self, other):
        return self.matmul(other)

    def rref(self) -> tuple["MatFq", int]:
        """Reduced row echelon form with zero rows dropped, plus the rank."""
        F = self.field
        mat = [list(self.row(i)) for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
            if pivot is None:
                continue
            mat[r], mat[pivot] = mat[pivot], mat[r]
            inv = F.inv(mat[r][c])
            mat[r] = [F.mul(inv, x) for x in mat[r]]
            for i in range(len(mat)):
                if i != r and mat[i][c]:
                    f = mat[i][c]
                    mat[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(mat[i], mat[r])]
            pivots.append(c)
            r += 1
            if r == len(mat):
                break
        return MatFq.from_rows(F, mat[:r], self.cols), r

    def rank(self) -> int:
        return self.rref()[1]

    def pivot_cols(self) -> tuple[int, ...]:
        """Pivot columns, assuming self is already in RREF."""
        out = []
        for i in range(self.rows):
            row = self.row(i)
            out.append(next(j for j in range(self.cols) if row[j]))
        return tuple(out)

    def kernel(self) -> "MatFq":
        """RREF basis (as rows) of {x : self @ x^T = 0}."""
        F = self.field
        red, rank = self.rref()
        piv = list(red.pivot_cols())
        free = [c for c in range(self.cols) if c not in piv]
        rows = []
        for fc in free:
            vec = [0] * self.cols
            vec[fc] = 1
            for i, pc in enumerate(piv):
                vec[pc] = F.neg(red[i, fc])
            rows.append(vec)
        basis = MatFq.from_rows(F, rows, self.cols)
        return basis.rref()[0]

    def perp(self) -> "MatFq":
        """RREF basis of the orthogonal complement of the row space.

        The bilinear form is the standard dot product sum_i u_i v_i, so
        this is exactly the kernel read as a row space.
        """
        return self.kernel()

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "MatFq":
        if self.rows != self.cols:
            raise ShapeMismatch("inverse of a non-square matrix")
        n = self.rows
        if self.rank() < n:
            raise Singular("matrix is not invertible")
        aug, _ = self.hstack(MatFq.identity(self.field, n)).rref()
        return aug.take_cols(range(n, 2 * n))


def intersect_rowspaces(a: MatFq, b: MatFq) -> MatFq:
    """RREF basis of Row(a) ∩ Row(b), via (U ∩ W) = (U^perp + W^perp)^perp."""
    if a.cols != b.cols:
        raise ShapeMismatch("intersection needs a common ambient space")
    return a.perp().vstack(b.perp()).perp()


def gaussian_binomial(field: Fq, r: int, d: int) -> int:
    """Number of d-dimensional subspaces of F_q^r, as an exact integer."""
    if d < 0 or d > r:
        return 0
    q = field.q
    out = Fraction(1)
    for i in range(d):
        out *= Fraction(q ** (r - i) - 1, q ** (d - i) - 1)
    assert out.denominator == 1
    return out.numerator


def subspace_count(field: Fq, r: int) -> int:
    return sum(gaussian_binomial(field, r, d) for d in range(r + 1))


def enumerate_subspaces(field: Fq, r: int, d: int | None = None):
    """Yield every subspace of F_q^r exactly once, as its RREF basis.

    Order: by dimension, then lexicographic pivot-column sets, then the
    free entries counted in row-major order with the first free position
    least significant.  The order is a pure function of (q, r, d), so
    serialized output is byte-stable.
    """
    if field.q**r > ENUMERATION_GUARD:
        raise TooLarge(f"q^r = {field.q ** r} exceeds {ENUMERATION_GUARD}")
    dims = range(r + 1) if d is None else [d]
    for dim in dims:
        if dim < 0 or dim > r:
            continue
        for piv in combinations(range(r), dim):
            free_pos = [
                (i, c)
                for i in range(dim)
                for c in range(piv[i] + 1, r)
                if c not in piv
            ]
            for code in range(field.q ** len(free_pos)):
                ent = [[0] * r for _ in range(dim)]
                for i, pc in enumerate(piv):
                    ent[i][pc] = 1
                rest = code
                for (i, c) in free_pos:
                    ent[i][c] = rest % field.q
                    rest //= field.q
                yield MatFq.from_rows(field, ent, r)
