from fractions import Fraction

import pytest

from sigflow.blackbox import blackbox
from sigflow.contflow import extract, verify_square
from sigflow.exactalg import Q, QS, Matrix
from sigflow.pendulum import composite_diagram, friedland_diagram, pendulum_check
from sigflow.relation import rel_graph
from sigflow.statebox import st_new, st_transfer


def newton_transfer(M, m, g, l):
    """Transfer F -> (x, theta) from state (x, x', theta, theta')."""
    M, m, g, l = (Fraction(v) for v in (M, m, g, l))
    A = Matrix.from_rows(Q, [[0, 1, 0, 0], [0, 0, -m * g / M, 0], [0, 0, 0, 1], [0, 0, (M + m) * g / (M * l), 0]])
    B = Matrix.from_rows(Q, [[0], [1 / M], [0], [-1 / (M * l)]])
    C = Matrix.from_rows(Q, [[1, 0, 0, 0], [0, 0, 1, 0]])
    return st_transfer(st_new(A, B, C, Matrix.zeros(Q, 2, 1)))


def test_reference_parameters():
    a, b, eq = pendulum_check(2, 1, 10, 1)
    assert eq
    assert (a.dom, a.cod) == (b.dom, b.cod) == (1, 2)


@pytest.mark.parametrize("params", [(2, 1, 10, 1), (2, 1, 10, 2), (Fraction(3, 2), 5, Fraction(49, 5), Fraction(1, 3))])
def test_both_diagrams_match_newton(params):
    want = rel_graph(newton_transfer(*params))
    assert blackbox(composite_diagram(*params), QS) == want
    assert blackbox(friedland_diagram(*params), QS) == want


def test_perturbed_parameters_differ():
    a = composite_diagram(2, 1, 10, 1)
    for other in [(3, 1, 10, 1), (2, 2, 10, 1), (2, 1, 9, 1), (2, 1, 10, 2)]:
        assert blackbox(a, QS) != blackbox(friedland_diagram(*other), QS)


def test_diagrams_are_contflow():
    for t in (composite_diagram(2, 1, 10, 1), friedland_diagram(2, 1, 10, 1)):
        assert extract(t).n == 4
        assert verify_square(t)
