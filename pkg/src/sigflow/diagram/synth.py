"""Synthesis of diagrams from matrices, relations and state equations."""
from __future__ import annotations

from typing import Sequence

from ..errors import DimensionMismatch, FieldMismatch
from ..exactalg import Matrix
from .terms import Id, Swap, Term, compose, gen, scale, tensor, tensor_power


def perm_term(perm: Sequence[int]) -> Term:
    """Wiring that sends input i to output perm[i], built from adjacent swaps."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation: {perm}")
    cur = list(perm)  # destination of the wire now at each position
    layers = []
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if cur[k] > cur[k + 1]:
                cur[k], cur[k + 1] = cur[k + 1], cur[k]
                layers.append(tensor(Id(k), Swap(), Id(n - k - 2)))
                changed = True
    return compose(Id(n), *layers)


def _interleave(n: int) -> list[int]:
    """[x1..xn, y1..yn] -> [x1, y1, x2, y2, ...]."""
    perm = [0] * (2 * n)
    for i in range(n):
        perm[i] = 2 * i
        perm[n + i] = 2 * i + 1
    return perm


def _deinterleave(n: int) -> list[int]:
    inv = _interleave(n)
    out = [0] * (2 * n)
    for i, j in enumerate(inv):
        out[j] = i
    return out


def copies(n: int) -> Term:
    """1 -> n fan-out; each dup's right output is a final copy."""
    if n == 0:
        return gen("del")
    out: Term = Id(1)
    for k in range(1, n):
        out = compose(out, tensor(gen("dup"), Id(k - 1)))
    return out


def sums(m: int) -> Term:
    """m -> 1 running sum ((x1 + x2) + x3) + ..."""
    if m == 0:
        return gen("zero")
    out: Term = Id(m)
    for k in range(m, 1, -1):
        out = compose(out, tensor(gen("add"), Id(k - 2)))
    return out


def dup_n(n: int) -> Term:
    """n -> 2n, x |-> [x, x]."""
    return compose(tensor_power(gen("dup"), n), perm_term(_deinterleave(n)))


def add_n(n: int) -> Term:
    """2n -> n, [x, y] |-> x + y."""
    return compose(perm_term(_interleave(n)), tensor_power(gen("add"), n))


def cap_n(n: int) -> Term:
    """0 -> 2n, relating [v, w] with v = w."""
    return compose(tensor_power(gen("cap"), n), perm_term(_deinterleave(n)))


def cup_n(n: int) -> Term:
    """2n -> 0, joining [v, w] with v = w."""
    return compose(perm_term(_interleave(n)), tensor_power(gen("cup"), n))


def block_swap(a: int, b: int) -> Term:
    return perm_term([b + i for i in range(a)] + list(range(b)))


def synth_map_diagram(M: Matrix) -> Term:
    """Standard form of an n x m matrix: copy, scale, permute, sum."""
    n, m = M.rows, M.cols
    if m == 0:
        return tensor_power(gen("zero"), n)
    if n == 0:
        return tensor_power(gen("del"), m)
    F = M.field
    fan = tensor(*[copies(n) for _ in range(m)])
    # copy i of input j carries the (i, j) entry
    scalings = tensor(*[scale(_const(F, M.entry(i, j))) for j in range(m) for i in range(n)])
    perm = perm_term([i * m + j for j in range(m) for i in range(n)])
    add = tensor(*[sums(m) for _ in range(n)])
    return compose(fan, scalings, perm, add)


def _const(F, x):
    from fractions import Fraction

    if isinstance(x, int):
        return Fraction(x)
    return x


def synth_rel_diagram(R) -> Term:
    """Prestandard form: caps feed a linear map whose outputs are cozeroed."""
    m, n = R.dom, R.cod
    C = R.constraints().row_basis()
    r = C.rows
    T = synth_map_diagram(C)
    return compose(
        tensor(Id(m), cap_n(n)),
        tensor(T, Id(n)),
        tensor(tensor_power(gen("zero", daggered=True), r), Id(n)),
    )


def state_form_diagram(A: Matrix, B: Matrix, C: Matrix, D: Matrix) -> Term:
    """Diagram of x' = Ax + Bu, y = Cx + Du with one integrator per state."""
    n, m, p = A.rows, B.cols, C.rows
    F = A.field
    if any(X.field is not F for X in (B, C, D)):
        raise FieldMismatch("state matrices over different fields")
    if A.cols != n or B.rows != n or C.cols != n or D.shape != (p, m):
        raise DimensionMismatch(
            f"inconsistent shapes A{A.shape} B{B.shape} C{C.shape} D{D.shape}"
        )
    if n == 0:
        return synth_map_diagram(D)
    return compose(
        tensor(cap_n(n), Id(m)),                                   # [v | w | u], v = w
        tensor(synth_map_diagram(A), Id(n), dup_n(m)),             # [Av | w | u | u]
        tensor(Id(2 * n), synth_map_diagram(B), synth_map_diagram(D)),  # [Av | w | Bu | Du]
        tensor(Id(n), block_swap(n, n), Id(p)),                    # [Av | Bu | w | Du]
        tensor(add_n(n), Id(n + p)),                               # [x' | w | Du]
        tensor(tensor_power(gen("int"), n), Id(n + p)),            # [x | w | Du]
        tensor(dup_n(n), Id(n + p)),                               # [x | x | w | Du]
        tensor(Id(n), cup_n(n), Id(p)),                            # [x | Du]
        tensor(synth_map_diagram(C), Id(p)),                       # [Cx | Du]
        add_n(p),
    )
