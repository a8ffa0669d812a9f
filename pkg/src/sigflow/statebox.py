"""Box morphisms, stateful morphisms and controllability/observability."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import DimensionMismatch, FieldMismatch, HomViolation
from .exactalg import QS, Field, Matrix, block, hstack, vstack
from .exactalg.fields import RationalField
from .relation import (
    LinRel, rel_add, rel_compose, rel_direct_sum, rel_graph, rel_identity, rel_is_epi, rel_is_mono,
)

Entry = Union[Matrix, LinRel]


# homomorphism side conditions


def _add_rel(F: Field, a: int) -> LinRel:
    I = Matrix.identity(F, a)
    return rel_graph(hstack([I, I]))


def _dup_rel(F: Field, a: int) -> LinRel:
    I = Matrix.identity(F, a)
    return rel_graph(vstack([I, I]))


def is_monoid_hom(R: LinRel) -> bool:
    """R after addition equals addition after R (+) R."""
    F = R.field
    return rel_compose(_add_rel(F, R.dom), R) == rel_compose(rel_direct_sum(R, R), _add_rel(F, R.cod))


def is_comonoid_hom(R: LinRel) -> bool:
    """Duplication after R equals (R (+) R) after duplication."""
    F = R.field
    return rel_compose(R, _dup_rel(F, R.cod)) == rel_compose(_dup_rel(F, R.dom), rel_direct_sum(R, R))


def hom_predicates(R: LinRel) -> dict:
    mon, com = is_monoid_hom(R), is_comonoid_hom(R)
    return {"monoid": mon, "comonoid": com, "bimonoid": mon and com}


# Box


class BoxMorphism:
    """Non-commuting square (d, c, a, b): d is direct, c.a.b goes through state.

    Shapes (matrix variant): d p x m, c p x T, a T x S, b S x m, where S is
    the prestate and T the state dimension.  The relation variant holds
    relations d: m -/-> p, c: T -/-> p, a: S -/-> T, b: m -/-> S.
    """

    __slots__ = ("variant", "d", "c", "a", "b", "dom", "cod", "prestate", "state")

    def __init__(self, d: Entry, c: Entry, a: Entry, b: Entry, check: bool = True):
        if isinstance(d, Matrix):
            self.variant = "matrix"
            if not all(isinstance(x, Matrix) for x in (c, a, b)):
                raise TypeError("mixed Box variants")
            m, p, T, S = d.cols, d.rows, a.rows, a.cols
            ok = c.shape == (p, T) and b.shape == (S, m)
        else:
            self.variant = "relation"
            if not all(isinstance(x, LinRel) for x in (c, a, b)):
                raise TypeError("mixed Box variants")
            m, p, S, T = d.dom, d.cod, a.dom, a.cod
            ok = (c.dom, c.cod) == (T, p) and (b.dom, b.cod) == (m, S)
        if not ok:
            raise DimensionMismatch("Box square does not fit together")
        self.d, self.c, self.a, self.b = d, c, a, b
        self.dom, self.cod, self.prestate, self.state = m, p, S, T
        if check and self.variant == "relation":
            if not is_monoid_hom(b):
                raise HomViolation("b is not a monoid homomorphism")
            if not is_comonoid_hom(c):
                raise HomViolation("c is not a comonoid homomorphism")
            h = hom_predicates(d)
            if not h["bimonoid"]:
                raise HomViolation("d is not a bimonoid homomorphism")

    def __eq__(self, o) -> bool:
        return isinstance(o, BoxMorphism) and (self.d, self.c, self.a, self.b) == (o.d, o.c, o.a, o.b)

    def __hash__(self):
        return hash((self.d, self.c, self.a, self.b))

    def __repr__(self) -> str:
        return f"BoxMorphism[{self.variant}]({self.dom}->{self.cod}, S={self.prestate}, T={self.state})"


def _proj(F: Field, sizes: list, k: int) -> LinRel:
    start = sum(sizes[:k])
    total = sum(sizes)
    M = Matrix.zeros(F, sizes[k], total)
    data = list(M.data)
    for i in range(sizes[k]):
        data[i * total + start + i] = F.one
    return rel_graph(Matrix(F, sizes[k], total, data, True))


def _inj(F: Field, sizes: list, k: int) -> LinRel:
    return rel_graph(_proj(F, sizes, k).basis.select_cols(range(sum(sizes), sum(sizes) + sizes[k])))


def _chain(*rs: LinRel) -> LinRel:
    out = rs[0]
    for r in rs[1:]:
        out = rel_compose(out, r)
    return out


def _rel_sum(terms: list, F: Field, dom: int, cod: int) -> LinRel:
    if not terms:
        return rel_graph(Matrix.zeros(F, cod, dom))
    out = terms[0]
    for t in terms[1:]:
        out = rel_add(out, t)
    return out


def box_compose(g: BoxMorphism, f: BoxMorphism) -> BoxMorphism:
    """g after f."""
    if g.variant != f.variant:
        raise TypeError("mixed Box variants")
    if f.cod != g.dom:
        raise DimensionMismatch(f"cannot compose Box {f.dom}->{f.cod} then {g.dom}->{g.cod}")
    if f.variant == "matrix":
        F = f.d.field
        d = g.d @ f.d
        c = hstack([g.d @ f.c, g.c])
        a = block([[f.a, Matrix.zeros(F, f.state, g.prestate)], [g.a @ g.b @ f.c @ f.a, g.a]])
        b = vstack([f.b, g.b @ f.d])
        return BoxMorphism(d, c, a, b)
    F = f.d.field
    T, T2, S, S2 = f.state, g.state, f.prestate, g.prestate
    d = rel_compose(f.d, g.d)
    c = rel_add(_chain(_proj(F, [T, T2], 0), f.c, g.d), _chain(_proj(F, [T, T2], 1), g.c))
    b = rel_add(_chain(f.b, _inj(F, [S, S2], 0)), _chain(f.d, g.b, _inj(F, [S, S2], 1)))
    a = _rel_sum(
        [
            _chain(_proj(F, [S, S2], 0), f.a, _inj(F, [T, T2], 0)),
            _chain(_proj(F, [S, S2], 0), f.a, f.c, g.b, g.a, _inj(F, [T, T2], 1)),
            _chain(_proj(F, [S, S2], 1), g.a, _inj(F, [T, T2], 1)),
        ],
        F, S + S2, T + T2,
    )
    return BoxMorphism(d, c, a, b)


def box_eval(f: BoxMorphism) -> Entry:
    if f.variant == "matrix":
        return f.d + f.c @ f.a @ f.b
    return rel_add(f.d, _chain(f.b, f.a, f.c))


def box_feed(f: BoxMorphism) -> Entry:
    return f.d


def box_of(d: Entry) -> BoxMorphism:
    """(d, !, 0, 0) with zero-dimensional prestate and state."""
    if isinstance(d, Matrix):
        F = d.field
        return BoxMorphism(d, Matrix.zeros(F, d.rows, 0), Matrix.zeros(F, 0, 0), Matrix.zeros(F, 0, d.cols))
    F = d.field
    return BoxMorphism(
        d,
        rel_graph(Matrix.zeros(F, d.cod, 0)),
        rel_identity(F, 0),
        rel_graph(Matrix.zeros(F, 0, d.dom)),
    )


def box_identity(F: Field, n: int, variant: str = "matrix") -> BoxMorphism:
    I = Matrix.identity(F, n)
    return box_of(I if variant == "matrix" else rel_graph(I))


# Stateful


@dataclass(frozen=True)
class StatefulMorphism:
    """x' = Ax + Bu, y = Cx + Du over Q or GF(p)."""

    A: Matrix
    B: Matrix
    C: Matrix
    D: Matrix

    def __post_init__(self):
        A, B, C, D = self.A, self.B, self.C, self.D
        F = A.field
        if any(X.field is not F for X in (B, C, D)):
            raise FieldMismatch("stateful matrices over different fields")
        if F.has_s:
            raise FieldMismatch("stateful morphisms live over a base field, not qs")
        n = A.rows
        if A.cols != n or B.rows != n or C.cols != n or D.shape != (C.rows, B.cols):
            raise DimensionMismatch(f"inconsistent shapes A{A.shape} B{B.shape} C{C.shape} D{D.shape}")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def m(self) -> int:
        return self.B.cols

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def p(self) -> int:
        return self.C.rows

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "p": self.p, **{k: getattr(self, k).to_json() for k in "ABCD"}}

    @classmethod
    def from_json(cls, j: dict) -> "StatefulMorphism":
        mats = {k: Matrix.from_json(j[k]) for k in "ABCD"}
        f = cls(**mats)
        for k in ("m", "n", "p"):
            if k in j and int(j[k]) != getattr(f, k):
                raise DimensionMismatch(f"declared {k}={j[k]} does not match the matrices")
        return f


def st_new(A: Matrix, B: Matrix, C: Matrix, D: Matrix) -> StatefulMorphism:
    return StatefulMorphism(A, B, C, D)


def st_of_matrix(D: Matrix) -> StatefulMorphism:
    """Stateless system with transfer D."""
    F = D.field
    return StatefulMorphism(Matrix.zeros(F, 0, 0), Matrix.zeros(F, 0, D.cols), Matrix.zeros(F, D.rows, 0), D)


def st_compose(g: StatefulMorphism, f: StatefulMorphism) -> StatefulMorphism:
    """g after f: f's output feeds g's input."""
    if f.p != g.m:
        raise DimensionMismatch(f"cannot feed {f.p} outputs into {g.m} inputs")
    if f.field is not g.field:
        raise FieldMismatch("stateful morphisms over different fields")
    F = f.field
    A = block([[f.A, Matrix.zeros(F, f.n, g.n)], [g.B @ f.C, g.A]])
    B = vstack([f.B, g.B @ f.D])
    C = hstack([g.D @ f.C, g.C])
    D = g.D @ f.D
    return StatefulMorphism(A, B, C, D)


def st_tensor(f: StatefulMorphism, g: StatefulMorphism) -> StatefulMorphism:
    return StatefulMorphism(f.A.direct_sum(g.A), f.B.direct_sum(g.B), f.C.direct_sum(g.C), f.D.direct_sum(g.D))


def resolvent(A: Matrix) -> Matrix:
    """(sI - A)^{-1} over Q(s)."""
    n = A.rows
    return (Matrix.identity(QS, n).scale("s") - A.embed(QS)).inverse()


def _require_q(f: StatefulMorphism) -> None:
    if not isinstance(f.field, RationalField):
        raise FieldMismatch("transfer matrices need a Q base field")


def st_transfer(f: StatefulMorphism) -> Matrix:
    """D + C (sI - A)^{-1} B over Q(s)."""
    _require_q(f)
    D = f.D.embed(QS)
    if f.n == 0:
        return D
    return D + f.C.embed(QS) @ resolvent(f.A) @ f.B.embed(QS)


def ctrb_matrix(f: StatefulMorphism) -> Matrix:
    """[B, AB, ..., A^{n-1} B]."""
    if f.n == 0:
        return Matrix.zeros(f.field, 0, 0)
    blocks = [f.B]
    for _ in range(f.n - 1):
        blocks.append(f.A @ blocks[-1])
    return hstack(blocks)


def obsv_matrix(f: StatefulMorphism) -> Matrix:
    """[C; CA; ...; C A^{n-1}]."""
    if f.n == 0:
        return Matrix.zeros(f.field, 0, 0)
    blocks = [f.C]
    for _ in range(f.n - 1):
        blocks.append(blocks[-1] @ f.A)
    return vstack(blocks)


def is_controllable(f: StatefulMorphism) -> bool:
    Mc = ctrb_matrix(f)
    by_rank = Mc.rank() == f.n
    by_epi = rel_is_epi(rel_graph(Mc))
    if by_rank != by_epi:
        raise RuntimeError("rank and epi controllability tests disagree")
    return by_rank


def is_observable(f: StatefulMorphism) -> bool:
    Mo = obsv_matrix(f)
    by_rank = Mo.rank() == f.n
    by_mono = rel_is_mono(rel_graph(Mo))
    if by_rank != by_mono:
        raise RuntimeError("rank and mono observability tests disagree")
    return by_rank


def kalman_dual(f: StatefulMorphism) -> StatefulMorphism:
    return StatefulMorphism(f.A.T, f.C.T, f.B.T, f.D.T)


def st_to_box(f: StatefulMorphism) -> BoxMorphism:
    """(D, C, (sI - A)^{-1}, B) as a matrix Box over Q(s)."""
    _require_q(f)
    return BoxMorphism(f.D.embed(QS), f.C.embed(QS), resolvent(f.A), f.B.embed(QS))
