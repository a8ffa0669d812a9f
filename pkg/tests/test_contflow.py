import random

import pytest
from hypothesis import given, settings, strategies as st

from sigflow.contflow import (
    Extraction, extract, extract_surgical, is_contflow, lozenge, permutation_matrix, star_duality_check,
    star_integrator_order, surgical_graph, verify_square,
)
from sigflow.diagram import compose, dagger_term, gen, parse, star_term, tensor
from sigflow.diagram.equations import equation_library, random_rewrite
from sigflow.diagram.graph import to_graph
from sigflow.diagram.sampling import MAP_KINDS, TermSampler, random_system
from sigflow.diagram.synth import state_form_diagram, synth_map_diagram
from sigflow.errors import NoMatch, NotContFlow
from sigflow.exactalg import GF, Q, Matrix
from sigflow.relation import rel_generator, rel_graph, rel_is_map
from sigflow.statebox import is_controllable, is_observable, st_compose, st_new, st_of_matrix, st_tensor, st_transfer

LIB = equation_library()


def M(rows, F=Q, cols=None):
    return Matrix.from_rows(F, rows, cols)


def seeds():
    return st.integers(0, 2**32 - 1)


def random_state_form(rng, n_max=3):
    f = random_system(rng, Q, rng.randint(0, n_max), rng.randint(0, 2), rng.randint(0, 2))
    return f, state_form_diagram(f.A, f.B, f.C, f.D)


def random_flow_term(rng, depth=4):
    """Built from map generators and integrators only, hence always ContFlow."""
    sampler = TermSampler(rng, kinds=MAP_KINDS + ("int",), daggers=False)
    return sampler.term(rng.randint(0, 3), depth)


# examples


def test_state_form_extraction():
    f = st_new(M([[1, 2], [0, -1]]), M([[1], [3]]), M([[0, 1]]), M([[5]]))
    t = state_form_diagram(f.A, f.B, f.C, f.D)
    ex = extract(t)
    assert (ex.relA, ex.relB, ex.relC, ex.relD) == tuple(rel_graph(X) for X in (f.A, f.B, f.C, f.D))
    assert is_contflow(t) and lozenge(t) == f and verify_square(t)


def test_integrator_alone():
    ex = extract(gen("int"))
    assert ex.n == 1
    assert ex.relA == rel_graph(M([[0]])) and ex.relD == rel_graph(M([[0]]))
    assert ex.relB == rel_graph(M([[1]])) and ex.relC == rel_graph(M([[1]]))
    assert lozenge(gen("int")) == st_new(M([[0]]), M([[1]]), M([[1]]), M([[0]]))


def test_stateless_lozenge():
    A = M([[3, 7, 2], [9, 1, 0]])
    assert lozenge(synth_map_diagram(A)) == st_of_matrix(A)


def test_cup_and_cap_are_not_contflow():
    cup, cap = parse("cup"), parse("cap")
    assert extract(cup).relD == rel_generator("cup", Q)
    assert not is_contflow(cup) and not is_contflow(cap)
    assert extract(cup).diagnosis() == ("D", "not total")
    assert extract(cap).diagnosis() == ("D", "not functional")
    with pytest.raises(NotContFlow, match="D\\(f\\) not total"):
        lozenge(cup)
    with pytest.raises(NotContFlow) as e:
        verify_square(cap)
    assert e.value.which == "D"


def test_failures_lists_every_part():
    # a differentiator bent from an integrator is not ContFlow either
    t = parse("(id[1] * cap) ; (id[1] * int * id[1]) ; (cup * id[1])")
    ex = extract(t)
    assert ex.failures() and not is_contflow(t)
    assert ex == extract_surgical(t)


def test_dagger_counterexample():
    t = parse("del ; zero")
    assert is_contflow(t) and lozenge(t).D == M([[0]])
    td = dagger_term(t)
    assert not rel_is_map(extract(td).relD)
    assert not is_contflow(td)


def test_self_dual_integrator():
    assert star_term(gen("int")) == gen("int")
    assert star_duality_check(gen("int"))


def test_star_integrator_order():
    t = parse("int ; (dup ; (int * int))")
    assert star_integrator_order(t) == [1, 2, 0]
    assert permutation_matrix(Q, [1, 0]) == M([[0, 1], [1, 0]])


def test_extraction_json():
    for t in (state_form_diagram(M([[1]]), M([[2]]), M([[3]]), M([[4]])), parse("cup")):
        ex = extract(t)
        j = ex.to_json()
        assert Extraction.from_json(j) == ex
        assert j["maps"]["D"] == rel_is_map(ex.relD)


def test_surgical_graph_shape():
    g = surgical_graph(state_form_diagram(M([[1]]), M([[2]]), M([[3]]), M([[4]])), "A")
    assert (g.dom, g.cod) == (1, 1) and not g.int_order


# properties


@settings(max_examples=40)
@given(seeds())
def test_state_form_round_trip(seed):
    f, t = random_state_form(random.Random(seed))
    assert lozenge(t) == f
    assert verify_square(t)
    assert star_duality_check(t)


@given(seeds())
def test_extract_matches_surgical(seed):
    rng = random.Random(seed)
    t = TermSampler(rng).term(rng.randint(0, 3), 4)
    for F in (Q, GF(3)):
        try:
            want = extract_surgical(t, F)
        except ZeroDivisionError:
            continue
        assert extract(t, F) == want


@settings(max_examples=40)
@given(seeds())
def test_random_flow_terms(seed):
    t = random_flow_term(random.Random(seed))
    assert is_contflow(t)
    assert verify_square(t)
    assert star_duality_check(t)
    assert is_controllable(lozenge(t)) == is_observable(lozenge(star_term(t)))


@settings(max_examples=30)
@given(seeds())
def test_rewrites_keep_extraction(seed):
    rng = random.Random(seed)
    _, t = random_state_form(rng, 2)
    ex = extract(t)
    for _ in range(3):
        try:
            t, _ = random_rewrite(t, rng, LIB, Q)
        except NoMatch:
            break
    assert extract(t) == ex
    assert verify_square(t)


@settings(max_examples=30)
@given(seeds())
def test_closure(seed):
    rng = random.Random(seed)
    f, tf = random_state_form(rng, 2)
    g = random_system(rng, Q, rng.randint(0, 2), f.p, rng.randint(0, 2))
    tg = state_form_diagram(g.A, g.B, g.C, g.D)
    comp = compose(tf, tg)
    assert is_contflow(comp) and verify_square(comp)
    assert st_transfer(lozenge(comp)) == st_transfer(st_compose(g, f))
    ten = tensor(tf, tg)
    assert is_contflow(ten) and lozenge(ten) == st_tensor(f, g)


@given(seeds())
def test_integrator_reordering(seed):
    rng = random.Random(seed)
    _, t = random_state_form(rng)
    g = to_graph(t)
    n = len(g.int_order)
    order = list(range(n))
    rng.shuffle(order)
    h = g.copy()
    h.int_order = [g.int_order[i] for i in order]
    f, f2 = lozenge(g), lozenge(h)
    P = permutation_matrix(Q, order)
    assert (f2.A, f2.B, f2.C, f2.D) == (P @ f.A @ P.T, P @ f.B, f.C @ P.T, f.D)
    assert st_transfer(f2) == st_transfer(f)
    assert extract(h) == extract_surgical(h)
