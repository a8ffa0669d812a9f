"""Black-boxing: the linear relation a diagram imposes on its boundary.

Two independent evaluators live here.  ``blackbox`` compiles the term to a
port graph, writes one linear constraint per node over wire variables and
projects the solution space onto the boundary.  ``blackbox_recursive`` walks
the term and combines generator relations with relation algebra.  Each is
the other's oracle.
"""
from __future__ import annotations

import enum
from typing import Any, Union

from .diagram.graph import PortGraph, to_graph
from .diagram.terms import Compose, Gen, GenLabel, Id, Swap, Tensor, Term
from .errors import FieldMismatch, FieldModeMismatch
from .exactalg import QS, Field, Matrix, RatFunc
from .relation import (
    LinRel, rel_compose, rel_dagger, rel_direct_sum, rel_from_constraints, rel_generator, rel_graph,
    rel_identity, rel_permutation,
)


class IntegratorMode(enum.Enum):
    SYMBOLIC = "symbolic"
    ZEROED = "zero"
    CUT = "cut"

    @classmethod
    def parse(cls, s: Union[str, "IntegratorMode"]) -> "IntegratorMode":
        if isinstance(s, IntegratorMode):
            return s
        s = s.lower()
        for m in cls:
            if s in (m.value, m.name.lower()):
                return m
        raise ValueError(f"unknown integrator mode {s!r}")


def const_in(field: Field, c: Any) -> Any:
    """A scale constant as a raw value of ``field``."""
    if isinstance(c, RatFunc) and not field.has_s:
        raise FieldMismatch(f"constant {c} needs the qs field")
    return field.coerce(c)


def _one_over_s():
    return RatFunc.s().inv()


def _node_rows(F: Field, lab: GenLabel, ins: list[int], outs: list[int], mode: IntegratorMode) -> list[dict]:
    """Constraint rows {wire: coefficient} for one node."""
    one = F.one
    neg = F.neg(one)
    kind = lab.kind
    # daggered nodes reuse the undaggered constraints with roles exchanged
    if lab.daggered:
        ins, outs = outs, ins
    if kind == "add":
        return [_row(F, (outs[0], one), (ins[0], neg), (ins[1], neg))]
    if kind == "zero":
        return [{outs[0]: one}]
    if kind == "dup":
        return [_row(F, (outs[0], one), (ins[0], neg)), _row(F, (outs[1], one), (ins[0], neg))]
    if kind == "del":
        return []
    if kind == "scale":
        c = const_in(F, lab.const)
        return [_row(F, (outs[0], one), (ins[0], F.neg(c)))]
    if kind == "cup":
        return [_row(F, (ins[0], one), (ins[1], neg))]
    if kind == "cap":
        return [_row(F, (outs[0], one), (outs[1], neg))]
    if kind == "int":
        if mode is IntegratorMode.SYMBOLIC:
            return [_row(F, (outs[0], F.coerce(RatFunc.s())), (ins[0], neg))]
        if mode is IntegratorMode.ZEROED:
            return [{outs[0]: one}]
        raise AssertionError("cut integrators are removed before solving")
    raise AssertionError(kind)


def _row(F: Field, *pairs) -> dict:
    row: dict = {}
    for w, c in pairs:
        row[w] = F.add(row[w], c) if w in row else c
    return {w: c for w, c in row.items() if not F.is_zero(c)}


def _check_mode(F: Field, mode: IntegratorMode, has_int: bool) -> None:
    if has_int and mode is IntegratorMode.SYMBOLIC and not F.has_s:
        raise FieldModeMismatch("symbolic integrators need the qs field")


def cut_graph(g: PortGraph) -> PortGraph:
    """Remove integrators, exposing their wires on the boundary.

    Former integrator-output wires are appended to the inputs and former
    integrator-input wires to the outputs, both in integrator order.
    """
    h = g.copy()
    drop = set(g.int_order)
    extra_in, extra_out = [], []
    for k in g.int_order:
        a, b = g.node_ins[k][0], g.node_outs[k][0]
        if g.nodes[k].daggered:
            # turned around: the signal leaves on the top port
            a, b = b, a
        extra_in.append(b)
        extra_out.append(a)
    keep = [k for k in range(len(g.nodes)) if k not in drop]
    h.nodes = [g.nodes[k] for k in keep]
    h.node_ins = [list(g.node_ins[k]) for k in keep]
    h.node_outs = [list(g.node_outs[k]) for k in keep]
    h.inputs = g.inputs + extra_in
    h.outputs = g.outputs + extra_out
    h.int_order = []
    return h


def solve_graph(g: PortGraph, F: Field, mode: IntegratorMode) -> LinRel:
    """Wire-variable method: eliminate interior wires, keep boundary ones."""
    rows: list[dict] = []
    for k, lab in enumerate(g.nodes):
        rows.extend(_node_rows(F, lab, g.node_ins[k], g.node_outs[k], mode))
    boundary = g.inputs + g.outputs
    bset = set(boundary)

    live: dict[int, dict] = {i: r for i, r in enumerate(rows) if r}
    occ: dict[int, set] = {}
    for i, r in live.items():
        for w in r:
            occ.setdefault(w, set()).add(i)
    interior = {w for w in occ if w not in bset}
    is_zero, mul, sub, div = F.is_zero, F.mul, F.sub, F.div
    while interior:
        v = min(interior, key=lambda w: (len(occ[w]), w))
        interior.discard(v)
        users = occ.pop(v)
        if not users:
            continue
        piv_i = min(users, key=lambda i: (len(live[i]), i))
        piv = live.pop(piv_i)
        users.discard(piv_i)
        for w in piv:
            if w != v:
                occ[w].discard(piv_i)
        pv = piv[v]
        for i in users:
            r = live[i]
            f = div(r.pop(v), pv)
            for w, c in piv.items():
                if w == v:
                    continue
                if w in r:
                    nc = sub(r[w], mul(f, c))
                    if is_zero(nc):
                        del r[w]
                        occ[w].discard(i)
                    else:
                        r[w] = nc
                else:
                    r[w] = F.neg(mul(f, c))
                    occ[w].add(i)
            if not r:
                del live[i]
    m, p = g.dom, g.cod
    first: dict[int, int] = {}
    data: list[list] = []
    width = m + p
    for pos, w in enumerate(boundary):
        if w in first:
            row = [F.zero] * width
            row[first[w]] = F.one
            row[pos] = F.neg(F.one)
            data.append(row)
        else:
            first[w] = pos
    for r in live.values():
        row = [F.zero] * width
        for w, c in r.items():
            row[first[w]] = c
        data.append(row)
    C = Matrix(F, len(data), width, [x for r in data for x in r], True)
    return rel_from_constraints(m, p, C)


def blackbox(t: Union[Term, PortGraph], field: Field = QS, mode: Union[str, IntegratorMode] = IntegratorMode.SYMBOLIC) -> LinRel:
    """Relation of a term or port graph over ``field``.

    In cut mode the result has dom m+n and cod p+n for n integrators.
    """
    mode = IntegratorMode.parse(mode)
    g = t if isinstance(t, PortGraph) else to_graph(t)
    _check_mode(field, mode, bool(g.int_order))
    if mode is IntegratorMode.CUT:
        g = cut_graph(g)
    return solve_graph(g, field, mode)


def open_blackbox(t: Union[Term, PortGraph], field: Field) -> tuple[LinRel, int]:
    g = t if isinstance(t, PortGraph) else to_graph(t)
    return blackbox(g, field, IntegratorMode.CUT), len(g.int_order)


# second semantics: structural recursion with relation algebra


def _gen_rel(lab: GenLabel, F: Field, mode: IntegratorMode) -> LinRel:
    if lab.kind == "int":
        if mode is IntegratorMode.SYMBOLIC:
            base = rel_graph(Matrix(F, 1, 1, [F.coerce(_one_over_s())], True))
        else:
            base = rel_graph(Matrix.zeros(F, 1, 1))
    elif lab.kind == "scale":
        base = rel_generator("scale", F, const_in(F, lab.const))
    else:
        base = rel_generator(lab.kind, F)
    return rel_dagger(base) if lab.daggered else base


def _block_perm(F: Field, sizes: list[int], order: list[int]) -> LinRel:
    """Permutation relation reordering blocks: output block j is input block order[j]."""
    starts = [sum(sizes[:i]) for i in range(len(sizes))]
    perm = [0] * sum(sizes)
    pos = 0
    for b in order:
        for k in range(sizes[b]):
            perm[starts[b] + k] = pos
            pos += 1
    return rel_permutation(F, perm)


def _rec(t: Term, F: Field, mode: IntegratorMode) -> tuple[LinRel, int]:
    if isinstance(t, Gen):
        lab = t.label
        if lab.kind == "int" and mode is IntegratorMode.CUT:
            if lab.daggered:
                # the turned-around integrator writes its top wire: u = x and y = x'
                tie = Matrix(F, 2, 4, [F.one, F.neg(F.one), F.zero, F.zero,
                                       F.zero, F.zero, F.one, F.neg(F.one)], True)
                return rel_from_constraints(2, 2, tie), 1
            return rel_permutation(F, [1, 0]), 1
        return _gen_rel(lab, F, mode), 0
    if isinstance(t, Id):
        return rel_identity(F, t.n), 0
    if isinstance(t, Swap):
        return rel_permutation(F, [1, 0]), 0
    if isinstance(t, Compose):
        rf, nf = _rec(t.first, F, mode)
        rg, ng = _rec(t.then, F, mode)
        if mode is not IntegratorMode.CUT or (nf == 0 and ng == 0):
            return rel_compose(rf, rg), 0
        q, p = t.first.cod, t.cod
        step = rel_compose(rel_direct_sum(rf, rel_identity(F, ng)), _block_perm(F, [q, nf, ng], [0, 2, 1]))
        step = rel_compose(step, rel_direct_sum(rg, rel_identity(F, nf)))
        return rel_compose(step, _block_perm(F, [p, ng, nf], [0, 2, 1])), nf + ng
    if isinstance(t, Tensor):
        rf, nf = _rec(t.left, F, mode)
        rg, ng = _rec(t.right, F, mode)
        if mode is not IntegratorMode.CUT or (nf == 0 and ng == 0):
            return rel_direct_sum(rf, rg), 0
        m1, m2, p1, p2 = t.left.dom, t.right.dom, t.left.cod, t.right.cod
        pre = _block_perm(F, [m1, m2, nf, ng], [0, 2, 1, 3])
        post = _block_perm(F, [p1, nf, p2, ng], [0, 2, 1, 3])
        return rel_compose(rel_compose(pre, rel_direct_sum(rf, rg)), post), nf + ng
    raise TypeError(t)


def blackbox_recursive(t: Term, field: Field = QS, mode: Union[str, IntegratorMode] = IntegratorMode.SYMBOLIC) -> LinRel:
    mode = IntegratorMode.parse(mode)
    from .diagram.terms import count_integrators

    _check_mode(field, mode, count_integrators(t) > 0)
    return _rec(t, field, mode)[0]
