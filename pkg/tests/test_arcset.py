import numpy as np
import pytest
from hypothesis import given, settings

from chipfire import (
    NotBidirected,
    NotEulerian,
    SizeLimitExceeded,
    acyclic_orientations,
    build_digraph,
    from_undirected,
    is_feedback_arc_set,
    is_terminating,
    is_turnback_arc_set,
    min_turnback,
    minfas,
    minimal_feedback_arc_sets,
    nonterm_witness_acyclic_orientation,
    nonterm_witness_turnback,
)
from chipfire.arcset import backward_arcs, min_turnback_bruteforce, minfas_ordering, sub_multisets
from chipfire.fixtures import directed_cycle
from chipfire.generators import box
from chipfire.lattice import equivalent, lattice_of

from conftest import strongly_connected_graphs
from oracles import table_is_acyclic


def test_c3_minimal_fas_are_singletons(fx):
    sets = minimal_feedback_arc_sets(fx["C3"])
    assert len(sets) == 3
    assert all(int(t.sum()) == 1 for t in sets)


def test_k3_has_six_acyclic_orientations(fx):
    orients = acyclic_orientations(fx["K3"])
    assert len(orients) == 6
    assert all(table_is_acyclic(o) for o in orients)


def test_k2_turnback():
    k2 = build_digraph(2, [(0, 1), (1, 0)])
    assert is_turnback_arc_set(k2, [(0, 1)])
    assert not is_turnback_arc_set(k2, [])
    assert is_feedback_arc_set(k2, [(1, 0)])


def test_acyclic_orientation_counts():
    # path: 2, 4-cycle: 2^4 - 2, doubled edge: 2
    assert len(acyclic_orientations(from_undirected(3, [(0, 1), (1, 2)]))) == 4
    assert len(acyclic_orientations(from_undirected(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))) == 14
    assert len(acyclic_orientations(from_undirected(2, [(0, 1), (0, 1)]))) == 2


def test_acyclic_orientations_rejects_directed(fx):
    with pytest.raises(NotBidirected):
        acyclic_orientations(fx["C3"])


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_minfas_cycles(n):
    assert minfas(directed_cycle(n)) == 1


def test_minfas_fixtures(fx):
    assert minfas(fx["G2"]) == 2
    assert minfas(fx["K3"]) == 3
    assert minfas(fx["cycle4_undirected"]) == 4


def test_minfas_dag_is_zero():
    assert minfas(build_digraph(4, [(0, 1), (1, 2), (0, 3), (2, 3)])) == 0


@settings(max_examples=40, deadline=None)
@given(strongly_connected_graphs(max_n=4, max_extra=2))
def test_bidirected_minfas_is_edge_count(g):
    h = from_undirected(g.n, [(u, v) for u, v, k in g.arcs() for _ in range(k)])
    assert minfas(h) == h.undirected_edge_count


@settings(max_examples=60, deadline=None)
@given(strongly_connected_graphs(max_n=4, max_extra=4))
def test_minfas_witnesses(g):
    order = minfas_ordering(g)
    back = backward_arcs(g, order)
    size, t = min_turnback(g)
    assert int(back.sum()) == minfas(g) == size == int(t.sum())
    assert is_feedback_arc_set(g, back) and is_turnback_arc_set(g, back)
    assert is_turnback_arc_set(g, t)
    assert table_is_acyclic(g.mult - t + t.T)


@settings(max_examples=30, deadline=None)
@given(strongly_connected_graphs(max_n=4, max_extra=4))
def test_minfas_matches_bruteforce(g):
    fas = min(int(t.sum()) for t in sub_multisets(g) if is_feedback_arc_set(g, t))
    assert minfas(g) == fas == min_turnback_bruteforce(g)


def test_predicates_match_networkx(fx):
    for name in ("G1", "G2", "G3"):
        g = fx[name]
        for t in sub_multisets(g):
            assert is_feedback_arc_set(g, t) == table_is_acyclic(g.mult - t)
            assert is_turnback_arc_set(g, t) == table_is_acyclic(g.mult - t + t.T)


def test_sub_multisets_limit(fx):
    big = build_digraph(2, [(0, 1, 7), (1, 0, 7)])
    with pytest.raises(SizeLimitExceeded):
        list(sub_multisets(big))


def test_turnback_witness_g2(fx):
    g = fx["G2"]
    w = nonterm_witness_turnback(g, [2, 0, 0, 0])
    assert w is not None
    assert is_turnback_arc_set(g, w.arcs)
    assert (w.surplus >= 0).all()
    assert equivalent(lattice_of(g), [2, 0, 0, 0], w.indegree + w.surplus)
    assert nonterm_witness_turnback(g, [1, 1, 0, 0]) is None


def test_turnback_witness_needs_eulerian(fx):
    with pytest.raises(NotEulerian):
        nonterm_witness_turnback(fx["G3"], [1, 0, 0, 3])


@pytest.mark.parametrize("name", ["C3", "G2", "K3"])
def test_turnback_witness_on_box(fx, name):
    g = fx[name]
    lat = lattice_of(g)
    for x in box(g.n, -1, 2):
        w = nonterm_witness_turnback(g, x)
        assert (w is None) == is_terminating(g, x)
        if w is not None:
            assert is_turnback_arc_set(g, w.arcs)
            assert equivalent(lat, x, w.indegree + w.surplus)


@pytest.mark.parametrize("name", ["K2", "K3", "cycle4_undirected"])
def test_acyclic_witness_on_box(fx, name):
    g = fx[name]
    lat = lattice_of(g)
    for x in box(g.n, -1, 2):
        w = nonterm_witness_acyclic_orientation(g, x)
        assert (w is None) == is_terminating(g, x)
        if w is not None:
            assert np.array_equal(w.arcs + w.arcs.T, g.mult)
            assert table_is_acyclic(w.arcs)
            assert int(w.indegree.sum()) == g.undirected_edge_count
            assert equivalent(lat, x, w.indegree + w.surplus)


def test_acyclic_orientation_indegree_nonterminating(fx):
    for name in ("K2", "K3", "cycle4_undirected"):
        g = fx[name]
        for o in acyclic_orientations(g):
            assert not is_terminating(g, o.sum(axis=0))
            rho = o.sum(axis=0)
            for v in range(g.n):
                y = rho.copy()
                y[v] -= 1
                assert is_terminating(g, y)
