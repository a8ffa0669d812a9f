"""State extraction from diagrams with integrators.

``extract`` cuts every integrator open once and reads A, B, C, D off the
resulting relation by zeroing or deleting boundary blocks.  The surgical
route edits the port graph four times instead and solves each copy, giving
an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .blackbox import IntegratorMode, blackbox, open_blackbox, solve_graph
from .diagram.dualities import star_term
from .diagram.graph import PortGraph, to_graph
from .diagram.terms import Compose, Gen, GenLabel, Tensor, Term
from .errors import NotContFlow
from .exactalg import QS, Field, Matrix, Q
from .relation import (
    LinRel, rel_compose, rel_direct_sum, rel_graph, rel_identity, rel_is_functional, rel_is_map,
    rel_is_total, rel_matrix,
)
from .statebox import (
    StatefulMorphism, is_controllable, is_observable, st_transfer,
)

PARTS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class Extraction:
    n: int
    m: int
    p: int
    relA: LinRel
    relB: LinRel
    relC: LinRel
    relD: LinRel

    def rel(self, which: str) -> LinRel:
        return getattr(self, "rel" + which)

    @property
    def maps(self) -> dict:
        return {k: rel_is_map(self.rel(k)) for k in PARTS}

    def failures(self) -> list[tuple[str, str]]:
        """Every relation that is not a map, with the reason.

        D is checked first: it is the direct feed-through, and the one that
        fails for bare cups and caps.
        """
        out = []
        for k in ("D", "A", "B", "C"):
            r = self.rel(k)
            if not rel_is_total(r):
                out.append((k, "not total"))
            elif not rel_is_functional(r):
                out.append((k, "not functional"))
        return out

    def diagnosis(self) -> Optional[tuple[str, str]]:
        """First failing relation and why, or None when all are maps."""
        f = self.failures()
        return f[0] if f else None

    def matrices(self) -> dict:
        return {k: rel_matrix(self.rel(k)) if rel_is_map(self.rel(k)) else None for k in PARTS}

    def to_json(self) -> dict:
        mats = self.matrices()
        return {
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "field": self.relA.field.descriptor,
            **{k: self.rel(k).to_json() for k in PARTS},
            "maps": self.maps,
            "matrices": {k: (v.to_json() if v is not None else None) for k, v in mats.items()},
        }

    @classmethod
    def from_json(cls, j: dict) -> "Extraction":
        return cls(int(j["n"]), int(j["m"]), int(j["p"]), *(LinRel.from_json(j[k]) for k in PARTS))


def _zeros_in(F: Field, k: int) -> LinRel:
    return rel_graph(Matrix.zeros(F, k, 0))


def _deletes(F: Field, k: int) -> LinRel:
    return rel_graph(Matrix.zeros(F, 0, k))


def extract(t: Union[Term, PortGraph], field: Field = Q) -> Extraction:
    """A(f), B(f), C(f), D(f) from a single cut-open black box."""
    g = t if isinstance(t, PortGraph) else to_graph(t)
    R, n = open_blackbox(g, field)
    F = field
    m, p = g.dom, g.cod
    In, Im, Ip = rel_identity(F, n), rel_identity(F, m), rel_identity(F, p)
    x_in = rel_direct_sum(_zeros_in(F, m), In)      # n -> m+n, inputs zeroed
    u_in = rel_direct_sum(Im, _zeros_in(F, n))      # m -> m+n, states zeroed
    dx_out = rel_direct_sum(_deletes(F, p), In)     # p+n -> n, outputs deleted
    y_out = rel_direct_sum(Ip, _deletes(F, n))      # p+n -> p, derivatives deleted
    relA = rel_compose(rel_compose(x_in, R), dx_out)
    relB = rel_compose(rel_compose(u_in, R), dx_out)
    relC = rel_compose(rel_compose(x_in, R), y_out)
    relD = rel_compose(rel_compose(u_in, R), y_out)
    return Extraction(n, m, p, relA, relB, relC, relD)


def _int_wires(g: PortGraph, k: int) -> tuple[int, int]:
    """(wire entering the integrator, wire leaving it) as signals."""
    a, b = g.node_ins[k][0], g.node_outs[k][0]
    return (b, a) if g.nodes[k].daggered else (a, b)


def _surgery(g: PortGraph, which: str) -> PortGraph:
    h = PortGraph()
    h.n_wires = g.n_wires
    ints = set(g.int_order)
    for k, lab in enumerate(g.nodes):
        if k in ints:
            if which == "D":
                h.add_node(GenLabel("scale", lab.daggered, 0), g.node_ins[k], g.node_outs[k])
            continue
        h.add_node(lab, g.node_ins[k], g.node_outs[k])
    enter = [_int_wires(g, k)[0] for k in g.int_order]
    leave = [_int_wires(g, k)[1] for k in g.int_order]
    zero, dele = GenLabel("zero"), GenLabel("del")
    if which == "D":
        h.inputs, h.outputs = list(g.inputs), list(g.outputs)
        return h
    # inputs
    if which in ("A", "C"):
        for w in g.inputs:
            h.add_node(zero, [], [w])
        h.inputs = list(leave)
    else:
        h.inputs = list(g.inputs)
        for w in leave:
            h.add_node(zero, [], [w])
    # outputs
    if which in ("A", "B"):
        for w in g.outputs:
            h.add_node(dele, [w], [])
        h.outputs = list(enter)
    else:
        h.outputs = list(g.outputs)
        for w in enter:
            h.add_node(dele, [w], [])
    return h


def surgical_graph(t: Union[Term, PortGraph], which: str) -> PortGraph:
    g = t if isinstance(t, PortGraph) else to_graph(t)
    return _surgery(g, which)


def extract_surgical(t: Union[Term, PortGraph], field: Field = Q) -> Extraction:
    """Independent route: four edited graphs, each solved on its own."""
    g = t if isinstance(t, PortGraph) else to_graph(t)
    rels = [solve_graph(_surgery(g, k), field, IntegratorMode.ZEROED) for k in PARTS]
    return Extraction(len(g.int_order), g.dom, g.cod, *rels)


def is_contflow(t: Union[Term, PortGraph], field: Field = Q) -> bool:
    return extract(t, field).diagnosis() is None


def lozenge_of(ex: Extraction) -> StatefulMorphism:
    diag = ex.diagnosis()
    if diag is not None:
        raise NotContFlow(*diag)
    return StatefulMorphism(*(rel_matrix(ex.rel(k)) for k in PARTS))


def lozenge(t: Union[Term, PortGraph], field: Field = Q) -> StatefulMorphism:
    """The stateful morphism (A(f), B(f), C(f), D(f))."""
    return lozenge_of(extract(t, field))


def verify_square(t: Term) -> bool:
    """Black box over Q(s) equals the transfer matrix of the extracted system."""
    f = lozenge(t, Q)
    return blackbox(t, QS, IntegratorMode.SYMBOLIC) == rel_graph(st_transfer(f))


def star_integrator_order(t: Term) -> list[int]:
    """For each integrator of star_term(t), the index of its source in t."""

    def go(t: Term, off: int) -> tuple[list[int], int]:
        if isinstance(t, Gen):
            return ([off], 1) if t.label.kind == "int" else ([], 0)
        if isinstance(t, Compose):
            a, na = go(t.first, off)
            b, nb = go(t.then, off + na)
            return b + a, na + nb
        if isinstance(t, Tensor):
            a, na = go(t.left, off)
            b, nb = go(t.right, off + na)
            return a + b, na + nb
        return [], 0

    return go(t, 0)[0]


def permutation_matrix(F: Field, order: list[int]) -> Matrix:
    """P with P x = x reordered: row i picks coordinate order[i]."""
    n = len(order)
    data = [F.zero] * (n * n)
    for i, j in enumerate(order):
        data[i * n + j] = F.one
    return Matrix(F, n, n, data, True)


def star_duality_check(t: Term, field: Field = Q) -> bool:
    """Extraction of star_term(t) is the transposed system, up to integrator order."""
    f = lozenge(t, field)
    ts = star_term(t)
    ex = extract(ts, field)
    P = permutation_matrix(field, star_integrator_order(t))
    expected = {
        "A": P @ f.A.T @ P.T,
        "B": P @ f.C.T,
        "C": f.B.T @ P.T,
        "D": f.D.T,
    }
    for k in PARTS:
        if ex.rel(k) != rel_graph(expected[k]):
            return False
    g = lozenge_of(ex)
    return is_controllable(f) == is_observable(g) and is_observable(f) == is_controllable(g)
