"""Compilation of terms into port graphs (one variable per wire)."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ArityError
from .terms import Compose, Gen, GenLabel, Id, Swap, Tensor, Term


@dataclass
class PortGraph:
    """Generator instances joined by wires.

    ``node_ins[k]`` / ``node_outs[k]`` list the wire ids on node ``k``'s
    ports; ``inputs`` / ``outputs`` list the wire ids on the boundary.  A
    wire may touch the boundary twice (a bare identity strand).
    """

    nodes: list[GenLabel] = field(default_factory=list)
    node_ins: list[list[int]] = field(default_factory=list)
    node_outs: list[list[int]] = field(default_factory=list)
    inputs: list[int] = field(default_factory=list)
    outputs: list[int] = field(default_factory=list)
    n_wires: int = 0
    int_order: list[int] = field(default_factory=list)

    @property
    def dom(self) -> int:
        return len(self.inputs)

    @property
    def cod(self) -> int:
        return len(self.outputs)

    def add_node(self, label: GenLabel, ins: list[int], outs: list[int]) -> int:
        a, b = label.arity
        if (len(ins), len(outs)) != (a, b):
            raise ArityError(f"node {label} needs {a} inputs and {b} outputs")
        self.nodes.append(label)
        self.node_ins.append(list(ins))
        self.node_outs.append(list(outs))
        return len(self.nodes) - 1

    def new_wire(self) -> int:
        self.n_wires += 1
        return self.n_wires - 1

    def copy(self) -> "PortGraph":
        return PortGraph(
            list(self.nodes),
            [list(x) for x in self.node_ins],
            [list(x) for x in self.node_outs],
            list(self.inputs),
            list(self.outputs),
            self.n_wires,
            list(self.int_order),
        )

    def endpoints(self) -> list[list[tuple]]:
        """For every wire, its endpoints as tuples."""
        ends: list[list[tuple]] = [[] for _ in range(self.n_wires)]
        for i, w in enumerate(self.inputs):
            ends[w].append(("boundary", "in", i))
        for k in range(len(self.nodes)):
            for j, w in enumerate(self.node_ins[k]):
                ends[w].append(("node", k, "in", j))
            for j, w in enumerate(self.node_outs[k]):
                ends[w].append(("node", k, "out", j))
        for i, w in enumerate(self.outputs):
            ends[w].append(("boundary", "out", i))
        return ends

    def check(self) -> None:
        for w, e in enumerate(self.endpoints()):
            if len(e) != 2:
                raise ArityError(f"wire {w} has {len(e)} endpoints")

    def to_json(self) -> dict:
        def port(e):
            if e[0] == "boundary":
                return {"boundary": e[1], "index": e[2]}
            return {"node": e[1], "dir": e[2], "port": e[3]}

        nodes = []
        for lab in self.nodes:
            d = {"kind": lab.kind, "dagger": lab.daggered}
            if lab.kind == "scale":
                d["c"] = str(lab.const)
            nodes.append(d)
        return {
            "nodes": nodes,
            "wires": [[port(a), port(b)] for a, b in self.endpoints()],
            "boundary": {"inputs": list(range(self.dom)), "outputs": list(range(self.cod))},
            "intOrder": list(self.int_order),
        }

    @classmethod
    def from_json(cls, j: dict) -> "PortGraph":
        g = cls()
        for d in j["nodes"]:
            lab = GenLabel(d["kind"], bool(d.get("dagger", False)), d.get("c"))
            a, b = lab.arity
            g.nodes.append(lab)
            g.node_ins.append([-1] * a)
            g.node_outs.append([-1] * b)
        nin = len(j["boundary"]["inputs"])
        nout = len(j["boundary"]["outputs"])
        g.inputs = [-1] * nin
        g.outputs = [-1] * nout
        for w, pair in enumerate(j["wires"]):
            for p in pair:
                if "boundary" in p:
                    (g.inputs if p["boundary"] == "in" else g.outputs)[p["index"]] = w
                else:
                    (g.node_ins if p["dir"] == "in" else g.node_outs)[p["node"]][p["port"]] = w
        g.n_wires = len(j["wires"])
        g.int_order = list(j.get("intOrder", [k for k, lab in enumerate(g.nodes) if lab.kind == "int"]))
        g.check()
        return g


class _UF:
    def __init__(self):
        self.parent: list[int] = []

    def new(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[b] = a


def to_graph(t: Term) -> PortGraph:
    """Compile a term; swaps and identities become plain wiring."""
    uf = _UF()
    raw_nodes: list[tuple[GenLabel, list[int], list[int]]] = []

    def go(t: Term) -> tuple[list[int], list[int]]:
        if isinstance(t, Gen):
            a, b = t.label.arity
            ins = [uf.new() for _ in range(a)]
            outs = [uf.new() for _ in range(b)]
            raw_nodes.append((t.label, ins, outs))
            return ins, outs
        if isinstance(t, Id):
            segs = [uf.new() for _ in range(t.n)]
            return segs, list(segs)
        if isinstance(t, Swap):
            a, b = uf.new(), uf.new()
            return [a, b], [b, a]
        if isinstance(t, Compose):
            i1, o1 = go(t.first)
            i2, o2 = go(t.then)
            if len(o1) != len(i2):
                raise ArityError(f"cannot compose {t.first} with {t.then}")
            for x, y in zip(o1, i2):
                uf.union(x, y)
            return i1, o2
        if isinstance(t, Tensor):
            i1, o1 = go(t.left)
            i2, o2 = go(t.right)
            return i1 + i2, o1 + o2
        raise TypeError(t)

    ins, outs = go(t)
    ids: dict[int, int] = {}

    def wire(seg: int) -> int:
        r = uf.find(seg)
        if r not in ids:
            ids[r] = len(ids)
        return ids[r]

    g = PortGraph()
    g.inputs = [wire(s) for s in ins]
    for lab, i, o in raw_nodes:
        k = g.add_node(lab, [wire(s) for s in i], [wire(s) for s in o])
        if lab.kind == "int":
            g.int_order.append(k)
    g.outputs = [wire(s) for s in outs]
    g.n_wires = len(ids)
    return g
