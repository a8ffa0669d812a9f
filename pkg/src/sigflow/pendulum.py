"""Inverted pendulum on a cart, linearized about the upright position.

Input is the applied force F; outputs are the cart position x and the
angle theta.  Two diagrams describe the same system: one assembled from the
physical parts (cart, pendulum, and the coupling force m g theta), and the
textbook form with both accelerations solved for F and theta.
"""
from __future__ import annotations

from fractions import Fraction

from .blackbox import IntegratorMode, blackbox
from .diagram.terms import Id, Swap, Term, compose, gen, scale, tensor
from .exactalg import QS


def _up(c) -> Term:
    return gen("scale", c, daggered=True)


def _int2() -> Term:
    return compose(gen("int"), gen("int"))


def composite_diagram(M, m, g, l) -> Term:
    M, m, g, l = (Fraction(v) for v in (M, m, g, l))
    I = Id(1)
    cap, cup, dup, add = gen("cap"), gen("cup"), gen("dup"), gen("add")
    return compose(
        tensor(I, cap),                           # [F, u, v]
        tensor(Id(2), _up(-m * g)),               # v = -m g r
        tensor(add, I),                           # [F + u, r]
        tensor(scale(1 / M), I),                  # [x'', r]
        tensor(dup, I),
        tensor(_int2(), scale(-1 / l), I),        # [x, -x''/l, r]
        tensor(I, cap, Id(2)),                    # [x, c1, c2, w, r]
        tensor(Id(2), _up(g / l), Id(2)),         # c2 = (g/l) t
        tensor(Id(2), Swap(), I),                 # [x, c1, w, t, r]
        tensor(I, add, Id(2)),                    # [x, theta'', t, r]
        tensor(I, _int2(), Id(2)),                # [x, theta, t, r]
        tensor(I, dup, Id(2)),
        tensor(Id(2), Swap(), I),                 # [x, theta, t, theta, r]
        tensor(I, cup, Id(2)),                    # t = theta
        tensor(I, dup, I),
        tensor(Id(2), cup),                       # r = theta
    )


def friedland_diagram(M, m, g, l) -> Term:
    M, m, g, l = (Fraction(v) for v in (M, m, g, l))
    a1, a2 = 1 / M, -1 / (M * l)
    b1, b2 = -m * g / M, (M + m) * g / (M * l)
    I = Id(1)
    cap, cup, dup, add = gen("cap"), gen("cup"), gen("dup"), gen("add")
    return compose(
        dup,
        tensor(scale(a1), scale(a2)),             # [p, q]
        tensor(I, cap, I),                        # [p, c1, c2, q]
        tensor(Id(2), _up(b1), I),                # c2 = b1 t1
        tensor(add, Id(2)),                       # [x'', t1, q]
        tensor(Id(3), cap),                       # [x'', t1, q, d1, d2]
        tensor(Id(4), _up(b2)),                   # d2 = b2 t2
        tensor(Id(2), add, I),                    # [x'', t1, theta'', t2]
        tensor(_int2(), I, _int2(), I),           # [x, t1, theta, t2]
        tensor(Id(2), dup, I),
        tensor(I, cup, Id(2)),                    # t1 = theta
        tensor(I, dup, I),
        tensor(Id(2), cup),                       # t2 = theta
    )


def pendulum_check(M, m, g, l) -> tuple[Term, Term, bool]:
    a, b = composite_diagram(M, m, g, l), friedland_diagram(M, m, g, l)
    eq = blackbox(a, QS, IntegratorMode.SYMBOLIC) == blackbox(b, QS, IntegratorMode.SYMBOLIC)
    return a, b, eq
