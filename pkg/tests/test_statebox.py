import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sigflow.diagram.sampling import random_matrix, random_relation, random_system
from sigflow.errors import DimensionMismatch, FieldMismatch, HomViolation
from sigflow.exactalg import GF, Q, QS, Matrix, RatFunc, block
from sigflow.relation import (
    rel_compose, rel_dagger, rel_full, rel_generator, rel_graph, rel_is_epi, rel_is_mono, rel_identity,
)
from sigflow.statebox import (
    BoxMorphism, StatefulMorphism, box_compose, box_eval, box_feed, box_identity, box_of, ctrb_matrix,
    hom_predicates, is_controllable, is_observable, kalman_dual, obsv_matrix, st_compose, st_new, st_of_matrix,
    st_tensor, st_to_box, st_transfer,
)


def M(rows, F=Q, cols=None):
    return Matrix.from_rows(F, rows, cols)


def seeds():
    return st.integers(0, 2**32 - 1)


INTEGRATOR = st_new(M([[0]]), M([[1]]), M([[1]]), M([[0]]))
OBS_ONLY = st_new(M([[1]]), M([[0]]), M([[1]]), M([[1]]))
CTRB_ONLY = st_new(M([[1]]), M([[1]]), M([[0]]), M([[1]]))
DOUBLE = st_new(M([[0, 1], [0, 0]]), M([[0], [1]]), M([[1, 0]]), M([[0]]))


def random_box(rng, F, m, p, S, T):
    return BoxMorphism(random_matrix(rng, F, p, m), random_matrix(rng, F, p, T),
                       random_matrix(rng, F, T, S), random_matrix(rng, F, S, m))


# homomorphism predicates


def test_hom_predicates_examples():
    assert hom_predicates(rel_graph(M([[3, 7, 2], [9, 1, 0]]))) == {"monoid": True, "comonoid": True, "bimonoid": True}
    assert hom_predicates(rel_generator("cup", Q)) == {"monoid": False, "comonoid": True, "bimonoid": False}
    assert hom_predicates(rel_generator("cap", Q)) == {"monoid": True, "comonoid": False, "bimonoid": False}
    # {(0, x)} is neither: addition fails totality, duplication fails functionality
    assert hom_predicates(rel_dagger(rel_graph(M([[0]])))) == {"monoid": False, "comonoid": False, "bimonoid": False}
    assert hom_predicates(rel_full(Q, 1, 1))["monoid"] and not hom_predicates(rel_full(Q, 1, 1))["comonoid"]


@given(st.integers(0, 3), st.integers(0, 3), seeds())
def test_maps_are_bimonoid_homs(m, n, seed):
    A = random_matrix(random.Random(seed), GF(5), n, m)
    assert hom_predicates(rel_graph(A))["bimonoid"]


@given(seeds())
def test_hom_predicates_closed_under_composition(seed):
    rng = random.Random(seed)
    a, b, c = (rng.randint(0, 2) for _ in range(3))
    R, S = random_relation(rng, GF(3), a, b), random_relation(rng, GF(3), b, c)
    h, k, hk = hom_predicates(R), hom_predicates(S), hom_predicates(rel_compose(R, S))
    for key in ("monoid", "comonoid"):
        if h[key] and k[key]:
            assert hk[key]


# Box, matrix variant


def test_box_of_composes():
    d1, d2 = M([[1, 2], [0, 3]]), M([[4, -1]])
    assert box_compose(box_of(d2), box_of(d1)) == box_of(d2 @ d1)
    assert box_eval(box_of(d1)) == d1 and box_feed(box_of(d1)) == d1


def test_box_identity_unit():
    rng = random.Random(7)
    f = random_box(rng, Q, 2, 3, 1, 2)
    assert box_compose(box_identity(Q, 3), f) == f
    assert box_compose(f, box_identity(Q, 2)) == f


def test_box_shape_checks():
    with pytest.raises(DimensionMismatch):
        BoxMorphism(M([[1]]), M([[1, 2]]), M([[1]]), M([[1]]))
    with pytest.raises(TypeError):
        BoxMorphism(M([[1]]), rel_identity(Q, 1), M([[1]]), M([[1]]))


def test_box_compose_blocks():
    f = BoxMorphism(M([[2]]), M([[3]]), M([[5]]), M([[7]]))
    g = BoxMorphism(M([[11]]), M([[13]]), M([[17]]), M([[19]]))
    h = box_compose(g, f)
    assert h.d == M([[22]])
    assert h.c == M([[33, 13]])
    assert h.a == M([[5, 0], [17 * 19 * 3 * 5, 17]])
    assert h.b == M([[7], [38]])


@given(seeds())
def test_box_associative_and_eval_functorial(seed):
    rng = random.Random(seed)
    dims = [rng.randint(0, 2) for _ in range(4)]
    fs = [random_box(rng, Q, dims[i], dims[i + 1], rng.randint(0, 2), rng.randint(0, 2)) for i in range(3)]
    f, g, h = fs
    assert box_compose(h, box_compose(g, f)) == box_compose(box_compose(h, g), f)
    assert box_eval(box_compose(g, f)) == box_eval(g) @ box_eval(f)
    assert box_feed(box_compose(g, f)) == box_feed(g) @ box_feed(f)


@given(seeds())
def test_box_eval_formula(seed):
    rng = random.Random(seed)
    f = random_box(rng, Q, 2, 2, 3, 1)
    assert box_eval(f) == f.d + f.c @ (f.a @ f.b)


# Box, relation variant


def test_relation_box_rejects_non_homs():
    I, cup = rel_identity(Q, 1), rel_generator("cup", Q)
    z = rel_graph(Matrix.zeros(Q, 1, 0))
    with pytest.raises(HomViolation):
        BoxMorphism(rel_dagger(rel_graph(M([[0]]))), z, rel_identity(Q, 0), rel_graph(Matrix.zeros(Q, 0, 1)))
    with pytest.raises(HomViolation):
        BoxMorphism(rel_graph(Matrix.zeros(Q, 0, 2)), rel_graph(Matrix.zeros(Q, 0, 1)), I,
                    rel_compose_cup_b(cup))


def rel_compose_cup_b(cup):
    # b = cup followed by codelete: 2 -/-> 1, not a monoid homomorphism
    return rel_compose(cup, rel_dagger(rel_generator("del", Q)))


@given(seeds())
def test_relation_box_matches_matrix_box(seed):
    rng = random.Random(seed)
    F = GF(5)
    f, g = random_box(rng, F, 1, 2, 1, 1), random_box(rng, F, 2, 1, 1, 2)
    rel = lambda b: BoxMorphism(rel_graph(b.d), rel_graph(b.c), rel_graph(b.a), rel_graph(b.b))
    h = box_compose(rel(g), rel(f))
    assert h == rel(box_compose(g, f))
    assert box_eval(h) == rel_graph(box_eval(box_compose(g, f)))
    assert box_eval(box_of(rel_graph(f.d))) == rel_graph(f.d)


def test_relation_box_with_relational_a():
    # a may be any relation; only b, c, d carry side conditions
    I = rel_graph(M([[1]]))
    f = BoxMorphism(I, I, rel_full(Q, 1, 1), I)
    assert box_eval(f) == rel_full(Q, 1, 1)
    assert box_feed(f) == I


# stateful morphisms


def test_stateful_validation():
    with pytest.raises(DimensionMismatch):
        st_new(M([[1]]), M([[1], [2]]), M([[1]]), M([[0]]))
    with pytest.raises(FieldMismatch):
        st_new(M([[1]], GF(5)), M([[1]]), M([[1]]), M([[0]]))
    with pytest.raises(FieldMismatch):
        st_new(*(M([[1]], QS) for _ in range(4)))


def test_integrator_squared():
    h = st_compose(INTEGRATOR, INTEGRATOR)
    assert h.A == M([[0, 0], [1, 0]]) and h.B == M([[1], [0]])
    assert h.C == M([[0, 1]]) and h.D == M([[0]])
    s = RatFunc.s()
    assert st_transfer(h) == Matrix.from_rows(QS, [[(s * s).inv()]])
    assert st_transfer(INTEGRATOR) == Matrix.from_rows(QS, [["1/s"]])


def test_stateless_and_tensor():
    D1, D2 = M([[1, 2]]), M([[3], [4]])
    assert st_compose(st_of_matrix(D1), st_of_matrix(D2)).D == D1 @ D2
    t = st_tensor(INTEGRATOR, CTRB_ONLY)
    assert t.n == 2 and t.A == M([[0, 0], [0, 1]])


def test_observable_and_controllable_pair_transfer_identity():
    assert st_transfer(OBS_ONLY) == Matrix.identity(QS, 1)
    assert st_transfer(CTRB_ONLY) == Matrix.identity(QS, 1)


def test_transfer_needs_q():
    f = st_new(*(M([[1]], GF(5)) for _ in range(4)))
    with pytest.raises(FieldMismatch):
        st_transfer(f)


def test_json_round_trip():
    for f in (INTEGRATOR, DOUBLE, st_of_matrix(M([[Fraction(1, 3)]])), st_new(*(M([[2]], GF(7)) for _ in range(4)))):
        assert StatefulMorphism.from_json(f.to_json()) == f
    j = INTEGRATOR.to_json()
    j["n"] = 2
    with pytest.raises(DimensionMismatch):
        StatefulMorphism.from_json(j)


@given(seeds())
def test_transfer_functorial(seed):
    rng = random.Random(seed)
    m, p, q = (rng.randint(0, 2) for _ in range(3))
    f = random_system(rng, Q, rng.randint(0, 3), m, p)
    g = random_system(rng, Q, rng.randint(0, 3), p, q)
    h = st_compose(g, f)
    assert h.A == block([[f.A, Matrix.zeros(Q, f.n, g.n)], [g.B @ f.C, g.A]])
    assert st_transfer(h) == st_transfer(g) @ st_transfer(f)
    assert st_transfer(st_tensor(f, g)) == st_transfer(f).direct_sum(st_transfer(g))


@given(seeds())
def test_transfer_invariant_under_state_permutation(seed):
    rng = random.Random(seed)
    f = random_system(rng, Q, rng.randint(1, 3), 2, 2)
    perm = list(range(f.n))
    rng.shuffle(perm)
    P = Matrix.from_rows(Q, [[int(perm[i] == j) for j in range(f.n)] for i in range(f.n)])
    g = st_new(P @ f.A @ P.T, P @ f.B, f.C @ P.T, f.D)
    assert st_transfer(g) == st_transfer(f)


@given(seeds())
def test_box_embedding(seed):
    rng = random.Random(seed)
    f = random_system(rng, Q, rng.randint(0, 2), 1, 2)
    g = random_system(rng, Q, rng.randint(0, 2), 2, 1)
    assert box_eval(st_to_box(f)) == st_transfer(f)
    assert box_feed(st_to_box(f)) == f.D.embed(QS)
    comp = box_compose(st_to_box(g), st_to_box(f))
    direct = st_to_box(st_compose(g, f))
    assert box_eval(comp) == box_eval(direct)
    assert (comp.prestate, comp.state) == (direct.prestate, direct.state)


def test_integrator_box():
    b = st_to_box(INTEGRATOR)
    assert (b.d, b.c, b.b) == (M([[0]], QS), M([[1]], QS), M([[1]], QS))
    assert b.a == Matrix.from_rows(QS, [["1/s"]])


# controllability and observability


def test_double_integrator():
    assert ctrb_matrix(DOUBLE) == M([[0, 1], [1, 0]])
    assert obsv_matrix(DOUBLE) == M([[1, 0], [0, 1]])
    assert is_controllable(DOUBLE) and is_observable(DOUBLE)


def test_one_sided_pair():
    assert is_observable(OBS_ONLY) and not is_controllable(OBS_ONLY)
    assert is_controllable(CTRB_ONLY) and not is_observable(CTRB_ONLY)
    d = kalman_dual(OBS_ONLY)
    assert is_controllable(d) and not is_observable(d)


def test_trivial_state():
    f = st_of_matrix(M([[1, 2]]))
    assert is_controllable(f) and is_observable(f)


def test_self_dual_integrator():
    assert kalman_dual(INTEGRATOR) == INTEGRATOR


@given(seeds())
def test_rank_and_diagrammatic_agree(seed):
    rng = random.Random(seed)
    F = rng.choice([Q, GF(2), GF(3)])
    f = random_system(rng, F, rng.randint(0, 3), rng.randint(0, 2), rng.randint(0, 2), lo=-1, hi=1)
    Mc, Mo = ctrb_matrix(f), obsv_matrix(f)
    assert (Mc.rank() == f.n) == rel_is_epi(rel_graph(Mc))
    assert (Mo.rank() == f.n) == rel_is_mono(rel_graph(Mo))
    d = kalman_dual(f)
    assert is_controllable(f) == is_observable(d)
    assert is_observable(f) == is_controllable(d)
    assert kalman_dual(d) == f
