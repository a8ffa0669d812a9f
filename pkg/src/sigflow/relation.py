"""Linear relations k^m -/-> k^n as canonical subspaces of k^(m+n)."""
from __future__ import annotations

from typing import Any, Optional, Sequence

from .errors import DimensionMismatch, FieldMismatch, NotAMap, UnknownGenerator
from .exactalg import Field, Matrix, field_from_descriptor, hstack, vstack


class LinRel:
    """Subspace of k^(dom+cod), domain coordinates first.

    ``basis`` is the RREF of a spanning set with zero rows dropped, so two
    relations are equal exactly when their bases are identical.
    """

    __slots__ = ("dom", "cod", "basis", "_pivots")

    def __init__(self, dom: int, cod: int, basis: Matrix, _canonical: bool = False):
        if basis.cols != dom + cod:
            raise DimensionMismatch(f"basis has {basis.cols} columns, expected {dom + cod}")
        if _canonical:
            self._pivots = None
        else:
            R, rk, piv = basis.rref()
            basis = Matrix(basis.field, rk, basis.cols, R.data[: rk * basis.cols], True)
            self._pivots = piv
        self.dom = dom
        self.cod = cod
        self.basis = basis

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def pivots(self) -> tuple[int, ...]:
        if self._pivots is None:
            c = self.basis.cols
            piv = []
            for i in range(self.basis.rows):
                row = self.basis.data[i * c : (i + 1) * c]
                piv.append(next(j for j, x in enumerate(row) if not self.field.is_zero(x)))
            self._pivots = tuple(piv)
        return self._pivots

    def __eq__(self, o) -> bool:
        if not isinstance(o, LinRel):
            return NotImplemented
        return self.dom == o.dom and self.cod == o.cod and self.basis == o.basis

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.basis))

    def __repr__(self) -> str:
        return f"LinRel({self.dom}->{self.cod}, {self.basis!r})"

    def contains(self, vec: Sequence[Any]) -> bool:
        """Membership of a vector of k^(dom+cod)."""
        F = self.field
        v = Matrix(F, 1, self.dom + self.cod, [F.coerce(x) for x in vec], True)
        return vstack([self.basis, v]).rank() == self.dim

    def constraints(self) -> Matrix:
        """Rows c with L = {x : c.x = 0 for all rows}."""
        return self.basis.nullspace()

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.descriptor,
            "dom": self.dom,
            "cod": self.cod,
            "basis": [[F.to_json(x) for x in self.basis.row(i)] for i in range(self.dim)],
        }

    @classmethod
    def from_json(cls, j: dict, field: Optional[Field] = None) -> "LinRel":
        F = field or field_from_descriptor(j["field"])
        m, n = int(j["dom"]), int(j["cod"])
        rows = [[F.from_json(x) for x in r] for r in j["basis"]]
        return rel_from_span(m, n, Matrix(F, len(rows), m + n, [x for r in rows for x in r], True))


def rel_from_span(m: int, n: int, rows: Matrix) -> LinRel:
    if rows.cols != m + n:
        raise DimensionMismatch(f"span rows have {rows.cols} columns, expected {m + n}")
    return LinRel(m, n, rows)


def rel_from_constraints(m: int, n: int, C: Matrix) -> LinRel:
    if C.cols != m + n:
        raise DimensionMismatch(f"constraints have {C.cols} columns, expected {m + n}")
    return LinRel(m, n, C.nullspace())


def rel_full(field: Field, m: int, n: int) -> LinRel:
    return LinRel(m, n, Matrix.identity(field, m + n), True)


def rel_identity(field: Field, n: int) -> LinRel:
    return rel_graph(Matrix.identity(field, n))


def rel_graph(M: Matrix) -> LinRel:
    """Graph {(x, Mx)} of an n x m matrix, as a relation m -/-> n."""
    m = M.cols
    return LinRel(m, M.rows, hstack([Matrix.identity(M.field, m), M.transpose()]), True)


def rel_permutation(field: Field, perm: Sequence[int]) -> LinRel:
    """Relation sending input i to output perm[i]."""
    n = len(perm)
    data = [field.zero] * (n * n)
    for i, j in enumerate(perm):
        data[j * n + i] = field.one
    return rel_graph(Matrix(field, n, n, data, True))


def _check_same_field(f: LinRel, g: LinRel) -> None:
    if f.field is not g.field:
        raise FieldMismatch(f"{f.field.descriptor} vs {g.field.descriptor}")


def _embed_cols(M: Matrix, total: int, offset: int) -> Matrix:
    F = M.field
    z = F.zero
    data = []
    for i in range(M.rows):
        r = M.row(i)
        data.extend([z] * offset)
        data.extend(r)
        data.extend([z] * (total - offset - M.cols))
    return Matrix(F, M.rows, total, data, True)


def rel_compose(f: LinRel, g: LinRel) -> LinRel:
    """Diagrammatic composite: first ``f`` then ``g``."""
    _check_same_field(f, g)
    if f.cod != g.dom:
        raise DimensionMismatch(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
    m, n, p = f.dom, f.cod, g.cod
    total = m + n + p
    C = vstack([_embed_cols(f.constraints(), total, 0), _embed_cols(g.constraints(), total, m)])
    joint = C.nullspace()
    keep = list(range(m)) + list(range(m + n, total))
    return LinRel(m, p, joint.select_cols(keep))


def rel_direct_sum(f: LinRel, g: LinRel) -> LinRel:
    _check_same_field(f, g)
    F = f.field
    m, n, m2, n2 = f.dom, f.cod, g.dom, g.cod
    z = F.zero
    data = []
    for i in range(f.dim):
        r = f.basis.row(i)
        data.extend(r[:m] + (z,) * m2 + r[m:] + (z,) * n2)
    for i in range(g.dim):
        r = g.basis.row(i)
        data.extend((z,) * m + r[:m2] + (z,) * n + r[m2:])
    return LinRel(m + m2, n + n2, Matrix(F, f.dim + g.dim, m + m2 + n + n2, data, True))


def rel_dagger(f: LinRel) -> LinRel:
    m, n = f.dom, f.cod
    return LinRel(n, m, f.basis.select_cols(list(range(m, m + n)) + list(range(m))))


GENERATOR_NAMES = ("add", "zero", "dup", "del", "scale", "cup", "cap", "id", "swap")


def rel_generator(name: str, field: Field, c: Any = None) -> LinRel:
    """Relation of a named generator over ``field``."""
    F = field
    o, z = F.one, F.zero
    if name == "add":
        return rel_graph(Matrix(F, 1, 2, [o, o], True))
    if name == "zero":
        return rel_graph(Matrix(F, 1, 0, [], True))
    if name == "dup":
        return rel_graph(Matrix(F, 2, 1, [o, o], True))
    if name == "del":
        return rel_graph(Matrix(F, 0, 1, [], True))
    if name == "scale":
        if c is None:
            raise UnknownGenerator("scale needs a constant")
        return rel_graph(Matrix(F, 1, 1, [F.coerce(c)], True))
    if name == "cup":
        return LinRel(2, 0, Matrix(F, 1, 2, [o, o], True), True)
    if name == "cap":
        return LinRel(0, 2, Matrix(F, 1, 2, [o, o], True), True)
    if name == "id":
        return rel_identity(F, 1)
    if name == "swap":
        return rel_graph(Matrix(F, 2, 2, [z, o, o, z], True))
    raise UnknownGenerator(name)


def _indeterminacy(f: LinRel) -> int:
    """dim of f ∩ (0 ⊕ k^n)."""
    return f.dim - f.basis.select_cols(range(f.dom)).rank()


def _kernel(f: LinRel) -> int:
    """dim of f ∩ (k^m ⊕ 0)."""
    return f.dim - f.basis.select_cols(range(f.dom, f.dom + f.cod)).rank()


def rel_is_total(f: LinRel) -> bool:
    return f.basis.select_cols(range(f.dom)).rank() == f.dom


def rel_is_functional(f: LinRel) -> bool:
    return _indeterminacy(f) == 0


def rel_is_map(f: LinRel) -> bool:
    # RREF with domain columns first: a graph is exactly pivots 0..m-1
    return f.dim == f.dom and f.pivots == tuple(range(f.dom))


def rel_matrix(f: LinRel) -> Matrix:
    if not rel_is_map(f):
        raise NotAMap(f"relation {f.dom}->{f.cod} is not a linear map")
    return f.basis.select_cols(range(f.dom, f.dom + f.cod)).transpose()


def rel_is_epi_rank(f: LinRel) -> bool:
    surjective = f.basis.select_cols(range(f.dom, f.dom + f.cod)).rank() == f.cod
    return surjective and _indeterminacy(f) == 0


def rel_is_mono_rank(f: LinRel) -> bool:
    return rel_is_total(f) and _kernel(f) == 0


def rel_is_epi_diagrammatic(f: LinRel) -> bool:
    # F F† = 1_W, read applicatively: first F†, then F
    return rel_compose(rel_dagger(f), f) == rel_identity(f.field, f.cod)


def rel_is_mono_diagrammatic(f: LinRel) -> bool:
    return rel_compose(f, rel_dagger(f)) == rel_identity(f.field, f.dom)


def rel_is_epi(f: LinRel) -> bool:
    a, b = rel_is_epi_rank(f), rel_is_epi_diagrammatic(f)
    if a != b:
        raise RuntimeError("rank and diagrammatic epi tests disagree")
    return a


def rel_is_mono(f: LinRel) -> bool:
    a, b = rel_is_mono_rank(f), rel_is_mono_diagrammatic(f)
    if a != b:
        raise RuntimeError("rank and diagrammatic mono tests disagree")
    return a


def rel_add(x: LinRel, y: LinRel) -> LinRel:
    """x + y = codomain addition after (x ⊕ y) after domain duplication."""
    _check_same_field(x, y)
    if (x.dom, x.cod) != (y.dom, y.cod):
        raise DimensionMismatch("rel_add needs matching dimensions")
    F = x.field
    a, b = x.dom, x.cod
    I_a, I_b = Matrix.identity(F, a), Matrix.identity(F, b)
    dup_a = rel_graph(vstack([I_a, I_a]))
    add_b = rel_graph(hstack([I_b, I_b]))
    return rel_compose(rel_compose(dup_a, rel_direct_sum(x, y)), add_b)


def rel_zero_map(field: Field, m: int, n: int) -> LinRel:
    return rel_graph(Matrix.zeros(field, n, m))
