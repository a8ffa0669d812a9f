import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import (
    kernel_elements, rel_elements, set_add, set_compose, set_dagger, set_direct_sum,
)
from sigflow.diagram.sampling import random_matrix, random_relation
from sigflow.errors import DimensionMismatch, NotAMap, UnknownGenerator
from sigflow.exactalg import GF, Q, Matrix
from sigflow.relation import (
    LinRel, rel_add, rel_compose, rel_dagger, rel_direct_sum, rel_from_constraints, rel_from_span,
    rel_full, rel_generator, rel_graph, rel_identity, rel_is_epi, rel_is_epi_diagrammatic, rel_is_epi_rank,
    rel_is_map, rel_is_mono, rel_is_mono_diagrammatic, rel_is_mono_rank, rel_matrix,
)


def M(rows, F=Q, cols=None):
    return Matrix.from_rows(F, rows, cols)


def g(c, F=Q):
    return rel_graph(M([[c]], F))


def test_from_span_examples():
    assert rel_from_span(1, 1, M([[2, 6]])).basis == M([[1, 3]])
    assert rel_from_span(2, 0, M([[1, 1]])) == rel_generator("cup", Q)
    empty = rel_from_span(0, 0, Matrix.zeros(Q, 0, 0))
    assert empty == rel_identity(Q, 0) and empty.dim == 0
    with pytest.raises(DimensionMismatch):
        rel_from_span(1, 1, M([[1, 2, 3]]))


def test_from_constraints_examples():
    assert rel_from_constraints(1, 1, M([[1, -1]])) == rel_identity(Q, 1)
    assert rel_from_constraints(1, 2, Matrix.zeros(Q, 0, 3)) == rel_full(Q, 1, 2)


@pytest.mark.parametrize("seed", range(15))
def test_from_constraints_gf3_enumeration(seed):
    rng = random.Random(seed)
    m, n = rng.randint(0, 3), rng.randint(0, 3)
    rows = [[rng.randrange(3) for _ in range(m + n)] for _ in range(rng.randint(0, 3))]
    R = rel_from_constraints(m, n, Matrix.from_rows(GF(3), rows, m + n))
    want = {(v[:m], v[m:]) for v in kernel_elements(rows, m + n, 3)}
    assert rel_elements(R, 3) == want


def test_compose_examples():
    assert rel_compose(g(2), g(3)) == g(6)
    cup, cap, I = rel_generator("cup", Q), rel_generator("cap", Q), rel_identity(Q, 1)
    zigzag = rel_compose(rel_direct_sum(cap, I), rel_direct_sum(I, cup))
    assert zigzag == I
    with pytest.raises(DimensionMismatch):
        rel_compose(cup, I)


def test_direct_sum_examples():
    I = rel_identity(Q, 1)
    assert rel_direct_sum(I, I) == rel_identity(Q, 2)
    s = rel_direct_sum(rel_generator("cup", Q), rel_generator("cap", Q))
    assert (s.dom, s.cod, s.dim) == (2, 2, 2)


def test_dagger_examples():
    assert rel_dagger(rel_generator("cup", Q)) == rel_generator("cap", Q)
    for c in (2, -3, Fraction(1, 5)):
        assert rel_dagger(g(c)) == g(1 / Fraction(c))
    z = rel_dagger(g(0))
    assert z.basis == M([[0, 1]])


def test_generators():
    assert rel_generator("dup", Q).basis == M([[1, 1, 1]])
    assert rel_generator("swap", Q) == rel_graph(M([[0, 1], [1, 0]]))
    zero = rel_generator("zero", Q)
    assert (zero.dom, zero.cod, zero.dim) == (0, 1, 0)
    assert rel_generator("del", Q).basis == M([[1]])
    assert rel_generator("add", Q) == rel_graph(M([[1, 1]]))
    assert rel_generator("scale", Q, 5) == g(5)
    with pytest.raises(UnknownGenerator):
        rel_generator("mul", Q)
    with pytest.raises(UnknownGenerator):
        rel_generator("scale", Q)


def test_map_predicates():
    assert not rel_is_map(rel_generator("cup", Q))
    assert not rel_is_map(rel_dagger(g(0)))
    A = M([[3, 7, 2], [9, 1, 0]])
    assert rel_matrix(rel_graph(A)) == A
    with pytest.raises(NotAMap):
        rel_matrix(rel_generator("cap", Q))


def test_epi_mono_examples():
    proj, inc = rel_graph(M([[1, 0]])), rel_graph(M([[1], [0]]))
    assert rel_is_epi(proj) and not rel_is_mono(proj)
    assert rel_is_mono(inc) and not rel_is_epi(inc)


def test_add_examples():
    assert rel_add(g(2), g(3)) == g(5)
    f = rel_graph(M([[1, 2], [3, 4]]))
    assert rel_add(f, rel_graph(Matrix.zeros(Q, 2, 2))) == f
    rng = random.Random(3)
    for _ in range(5):
        A, B = random_matrix(rng, Q, 3, 3), random_matrix(rng, Q, 3, 3)
        assert rel_add(rel_graph(A), rel_graph(B)) == rel_graph(A + B)
    with pytest.raises(DimensionMismatch):
        rel_add(g(1), rel_identity(Q, 2))


def test_json_round_trip():
    for r in (rel_generator("cup", Q), g(Fraction(-2, 3)), rel_identity(GF(5), 2), rel_full(Q, 0, 0)):
        assert LinRel.from_json(r.to_json()) == r


def test_contains():
    cup = rel_generator("cup", Q)
    assert cup.contains([4, 4]) and not cup.contains([1, 2])


# exhaustive oracle over tiny prime fields


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("seed", range(25))
def test_algebra_matches_set_oracle(p, seed):
    rng = random.Random(1000 * p + seed)
    F = GF(p)
    m, n, q = (rng.randint(0, 3) for _ in range(3))
    f, h = random_relation(rng, F, m, n), random_relation(rng, F, n, q)
    fe, he = rel_elements(f, p), rel_elements(h, p)
    assert rel_elements(rel_compose(f, h), p) == set_compose(fe, he)
    assert rel_elements(rel_dagger(f), p) == set_dagger(fe)
    assert rel_elements(rel_direct_sum(f, h), p) == set_direct_sum(fe, he)
    f2 = random_relation(rng, F, m, n)
    assert rel_elements(rel_add(f, f2), p) == set_add(fe, rel_elements(f2, p), p)


# algebraic laws


def rels(F=GF(5)):
    return st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2**32 - 1)).map(
        lambda t: random_relation(random.Random(t[2]), F, t[0], t[1]))


def chain(draw_seed, F=GF(5)):
    rng = random.Random(draw_seed)
    dims = [rng.randint(0, 3) for _ in range(4)]
    return [random_relation(rng, F, dims[i], dims[i + 1]) for i in range(3)]


@given(st.integers(0, 2**32 - 1))
def test_associativity_and_identity(seed):
    f, g_, h = chain(seed)
    assert rel_compose(rel_compose(f, g_), h) == rel_compose(f, rel_compose(g_, h))
    assert rel_compose(rel_identity(f.field, f.dom), f) == f == rel_compose(f, rel_identity(f.field, f.cod))


@given(st.integers(0, 2**32 - 1))
def test_dagger_laws(seed):
    f, g_, h = chain(seed)
    assert rel_dagger(rel_dagger(f)) == f
    assert rel_dagger(rel_compose(f, g_)) == rel_compose(rel_dagger(g_), rel_dagger(f))
    assert rel_dagger(rel_direct_sum(f, h)) == rel_direct_sum(rel_dagger(f), rel_dagger(h))


@given(st.integers(0, 2**32 - 1))
def test_graph_functorial(seed):
    rng = random.Random(seed)
    a, b, c = (rng.randint(0, 3) for _ in range(3))
    N, Mx = random_matrix(rng, Q, b, a), random_matrix(rng, Q, c, b)
    assert rel_graph(Mx @ N) == rel_compose(rel_graph(N), rel_graph(Mx))
    assert rel_graph(N.direct_sum(Mx)) == rel_direct_sum(rel_graph(N), rel_graph(Mx))


@given(rels())
def test_composites_contain_zero(f):
    assert f.contains([0] * (f.dom + f.cod))
    assert rel_compose(f, rel_dagger(f)).contains([0] * (2 * f.dom))


@given(rels())
def test_epi_mono_variants_agree(f):
    assert rel_is_epi_rank(f) == rel_is_epi_diagrammatic(f)
    assert rel_is_mono_rank(f) == rel_is_mono_diagrammatic(f)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_matrix_round_trip(m, n, seed):
    A = random_matrix(random.Random(seed), GF(7), n, m)
    r = rel_graph(A)
    assert rel_is_map(r) and rel_matrix(r) == A
