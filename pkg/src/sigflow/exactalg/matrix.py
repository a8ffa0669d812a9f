"""Immutable dense matrices over an exact field."""
from __future__ import annotations

from typing import Any, Iterable, Sequence

import numpy as np

from ..errors import DimensionMismatch, FieldMismatch, SingularMatrix
from . import kernels
from .fields import Field, FieldValue, PrimeField, RationalFunctionField, field_from_descriptor


class Matrix:
    """Row-major matrix of raw field values.

    Entries are stored already coerced into ``field``; use ``Matrix.from_rows``
    to build from arbitrary scalars.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data: Sequence[Any], _raw: bool = False):
        if rows < 0 or cols < 0:
            raise DimensionMismatch("negative dimension")
        if len(data) != rows * cols:
            raise DimensionMismatch(f"{len(data)} entries for a {rows}x{cols} matrix")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = tuple(data) if _raw else tuple(field.coerce(x) for x in data)

    # construction

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence[Any]], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(field, len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, [o if i == j else z for i in range(n) for j in range(n)], True)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [field.zero] * (rows * cols), True)

    @classmethod
    def scalar_embed(cls, field: Field, c: Any) -> "Matrix":
        return cls(field, 1, 1, [field.coerce(c)], True)

    # access

    def entry(self, i: int, j: int) -> Any:
        return self.data[i * self.cols + j]

    def __getitem__(self, ij: tuple[int, int]) -> FieldValue:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return FieldValue(self.field, self.entry(i, j))

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, o) -> bool:
        if not isinstance(o, Matrix):
            return NotImplemented
        return (
            self.field is o.field and self.rows == o.rows and self.cols == o.cols and self.data == o.data
        )

    def __hash__(self) -> int:
        return hash((self.field.descriptor, self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(self.field.fmt(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix[{self.field.descriptor} {self.rows}x{self.cols}]({body})"

    def is_zero(self) -> bool:
        z = self.field.is_zero
        return all(z(x) for x in self.data)

    # arithmetic

    def _check_field(self, o: "Matrix") -> None:
        if o.field is not self.field:
            raise FieldMismatch(f"{self.field.descriptor} vs {o.field.descriptor}")

    def __matmul__(self, o: "Matrix") -> "Matrix":
        self._check_field(o)
        if self.cols != o.rows:
            raise DimensionMismatch(f"{self.shape} @ {o.shape}")
        F = self.field
        n, k, m = self.rows, self.cols, o.cols
        ocols = [o.data[j::m] for j in range(m)] if m else []
        out = []
        if isinstance(F, PrimeField):
            p = F.p
            for i in range(n):
                r = self.data[i * k : (i + 1) * k]
                for j in range(m):
                    out.append(sum(a * b for a, b in zip(r, ocols[j])) % p)
        else:
            zero = F.zero
            for i in range(n):
                r = self.data[i * k : (i + 1) * k]
                for j in range(m):
                    acc = zero
                    for a, b in zip(r, ocols[j]):
                        if a and b:
                            acc = acc + a * b
                    out.append(acc)
        return Matrix(F, n, m, out, True)

    def __add__(self, o: "Matrix") -> "Matrix":
        self._check_field(o)
        if self.shape != o.shape:
            raise DimensionMismatch(f"{self.shape} + {o.shape}")
        add = self.field.add
        return Matrix(self.field, self.rows, self.cols, [add(a, b) for a, b in zip(self.data, o.data)], True)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols, [neg(a) for a in self.data], True)

    def __sub__(self, o: "Matrix") -> "Matrix":
        return self + (-o)

    def scale(self, c: Any) -> "Matrix":
        c = self.field.coerce(c)
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols, [mul(c, a) for a in self.data], True)

    def transpose(self) -> "Matrix":
        r, c = self.rows, self.cols
        return Matrix(self.field, c, r, [self.data[i * c + j] for j in range(c) for i in range(r)], True)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def select_cols(self, idx: Sequence[int]) -> "Matrix":
        c = self.cols
        return Matrix(self.field, self.rows, len(idx), [self.data[i * c + j] for i in range(self.rows) for j in idx], True)

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(idx), self.cols, [x for i in idx for x in self.row(i)], True)

    def direct_sum(self, o: "Matrix") -> "Matrix":
        return block([[self, Matrix.zeros(self.field, self.rows, o.cols)], [Matrix.zeros(self.field, o.rows, self.cols), o]])

    def embed(self, field: Field) -> "Matrix":
        """Map entries into another field (e.g. Q into Q(s) or GF(p))."""
        if field is self.field:
            return self
        return Matrix(field, self.rows, self.cols, [field.coerce(x) for x in self.data], True)

    def evaluate(self, x) -> "Matrix":
        """Substitute ``s = x`` in a Q(s) matrix, giving a Q matrix."""
        from .fields import Q

        if not isinstance(self.field, RationalFunctionField):
            raise FieldMismatch("evaluate needs a qs matrix")
        return Matrix(Q, self.rows, self.cols, [f(x) for f in self.data], True)

    # elimination

    def rref(self) -> tuple["Matrix", int, tuple[int, ...]]:
        F = self.field
        if self.rows == 0 or self.cols == 0:
            return Matrix.zeros(F, self.rows, self.cols), 0, ()
        if isinstance(F, PrimeField):
            a = np.array(self.data, dtype=np.int64).reshape(self.rows, self.cols)
            piv = kernels.rref_mod_p(a, F.p)
            R = Matrix(F, self.rows, self.cols, a.ravel().tolist(), True)
            pivots = tuple(int(x) for x in piv)
            return R, len(pivots), pivots
        rows, pivots = _rref_rows(F, self.to_rows(), self.cols)
        data = [x for r in rows for x in r]
        return Matrix(F, self.rows, self.cols, data, True), len(pivots), tuple(pivots)

    def rank(self) -> int:
        return self.rref()[1]

    def row_basis(self) -> "Matrix":
        """Nonzero rows of the RREF."""
        R, rk, _ = self.rref()
        return Matrix(self.field, rk, self.cols, R.data[: rk * self.cols], True)

    def nullspace(self) -> "Matrix":
        """Rows form a basis of {x : M x = 0}."""
        F = self.field
        R, rk, piv = self.rref()
        c = self.cols
        free = [j for j in range(c) if j not in set(piv)]
        out = []
        for f in free:
            v = [F.zero] * c
            v[f] = F.one
            for i, pc in enumerate(piv):
                v[pc] = F.neg(R.data[i * c + f])
            out.extend(v)
        return Matrix(F, len(free), c, out, True)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = hstack([self, Matrix.identity(self.field, n)])
        R, _, piv = aug.rref()
        if piv[:n] != tuple(range(n)):
            raise SingularMatrix("matrix is not invertible")
        return R.select_cols(list(range(n, 2 * n)))

    # serialization

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.descriptor,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [F.to_json(x) for x in self.data],
        }

    @classmethod
    def from_json(cls, j: dict, field: Field | None = None) -> "Matrix":
        F = field or field_from_descriptor(j["field"])
        entries = j["entries"]
        if entries and isinstance(entries[0], list) and entries[0] and isinstance(entries[0][0], list):
            entries = [x for r in entries for x in r]
        return cls(F, int(j["rows"]), int(j["cols"]), [F.from_json(x) for x in entries], True)


def _rref_rows(F: Field, rows: list[list], cols: int) -> tuple[list[list], list[int]]:
    """Gauss-Jordan on a list of rows using the field's operators (Q, Q(s))."""
    n = len(rows)
    pivots: list[int] = []
    r = 0
    one = F.one
    for c in range(cols):
        if r >= n:
            break
        sel = -1
        for i in range(r, n):
            if rows[i][c]:
                sel = i
                break
        if sel < 0:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pr = rows[r]
        lead = pr[c]
        if lead != one:
            inv = one / lead
            pr = pr[:c] + [x * inv if x else x for x in pr[c:]]
            rows[r] = pr
        tail = [(j, pr[j]) for j in range(c + 1, cols) if pr[j]]
        for i in range(n):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                row = list(row)
                row[c] = F.zero
                for j, x in tail:
                    row[j] = row[j] - f * x
                rows[i] = row
        pivots.append(c)
        r += 1
    return rows, pivots


def hstack(ms: Sequence[Matrix]) -> Matrix:
    ms = list(ms)
    if not ms:
        raise DimensionMismatch("hstack of nothing")
    F, r = ms[0].field, ms[0].rows
    for m in ms:
        if m.field is not F:
            raise FieldMismatch("hstack across fields")
        if m.rows != r:
            raise DimensionMismatch("hstack row mismatch")
    data = []
    for i in range(r):
        for m in ms:
            data.extend(m.row(i))
    return Matrix(F, r, sum(m.cols for m in ms), data, True)


def vstack(ms: Sequence[Matrix]) -> Matrix:
    ms = list(ms)
    if not ms:
        raise DimensionMismatch("vstack of nothing")
    F, c = ms[0].field, ms[0].cols
    for m in ms:
        if m.field is not F:
            raise FieldMismatch("vstack across fields")
        if m.cols != c:
            raise DimensionMismatch("vstack column mismatch")
    return Matrix(F, sum(m.rows for m in ms), c, [x for m in ms for x in m.data], True)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(row) for row in grid])


def direct_sum(*ms: Matrix) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = out.direct_sum(m)
    return out
