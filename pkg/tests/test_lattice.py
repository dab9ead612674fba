import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chipfire import RankDeficient, build_digraph, build_lattice, canonical_rep, enumerate_classes, equivalent, lattice_of
from chipfire.errors import DimensionMismatch
from chipfire.lattice import canonical_key, hermite_basis

from conftest import graph_and_vector, strongly_connected_graphs
from oracles import count_in_arborescences, index_by_minors, rational_equivalent


# values frozen from tests/oracles.py: exhaustive rational-solve class count
# for C3, gcd of maximal minors for the others
PIC0 = {"C3": 1, "G2": 2, "G3": 2, "K2": 1, "K3": 3, "G1": 16, "cycle4_undirected": 4}


@pytest.mark.parametrize("name", sorted(PIC0))
def test_pic0_order(fx, name):
    assert lattice_of(fx[name]).pic0_order == PIC0[name]


def test_pic0_matches_arborescences_on_eulerian_fixtures(fx):
    for name in ("C3", "C4", "G2", "K3", "cycle4_undirected"):
        g = fx[name]
        assert lattice_of(g).pic0_order == count_in_arborescences(g, 0)


@settings(max_examples=60, deadline=None)
@given(strongly_connected_graphs(max_n=5, max_extra=5))
def test_pic0_matches_minor_gcd(g):
    if g.n == 1:
        assert lattice_of(g).pic0_order == 1
        return
    assert lattice_of(g).pic0_order == index_by_minors(g.laplacian())


def test_hermite_basis_shape():
    basis = hermite_basis([[4, 6], [0, 3]])
    for i, col in enumerate(basis):
        assert all(c == 0 for c in col[:i])
        assert col[i] > 0
        for j in range(i):
            assert 0 <= basis[j][i] < col[i]


def test_rank_deficient():
    L = np.array([[-1, 0, 0], [1, 0, 0], [0, 0, 0]])
    with pytest.raises(RankDeficient):
        build_lattice(L)


def test_g3_equivalences(fx):
    lat = lattice_of(fx["G3"])
    assert equivalent(lat, [1, 0, 0, 3], [0, 1, 0, 3])
    assert equivalent(lat, [0, 1, 0, 3], [0, 0, 0, 4])
    assert equivalent(lat, [2, 0, 0, 6], [2, 1, 2, 3])
    assert not equivalent(lat, [0, 0, 1, 3], [1, 0, 0, 3])
    assert (canonical_rep(lat, [2, 0, 0, 6]) == canonical_rep(lat, [2, 1, 2, 3])).all()


def test_g2_classes_distinct(fx):
    lat = lattice_of(fx["G2"])
    assert not (canonical_rep(lat, [2, 0, 0, 0]) == canonical_rep(lat, [1, 1, 0, 0])).all()
    assert len(enumerate_classes(lat, 2)) == 2


def test_dimension_mismatch(fx):
    with pytest.raises(DimensionMismatch):
        equivalent(lattice_of(fx["C3"]), [1, 0], [1, 0, 0])


@settings(max_examples=80, deadline=None)
@given(graph_and_vector(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_shift_by_laplacian_is_equivalent(gx, z):
    g, x = gx
    lat = lattice_of(g)
    z = np.array(z[: g.n])
    y = x + g.laplacian() @ z
    assert equivalent(lat, x, y)
    assert y.sum() == x.sum()
    c = canonical_rep(lat, x)
    assert equivalent(lat, c, x) and c.sum() == x.sum()
    assert (canonical_rep(lat, c) == c).all()
    assert (canonical_rep(lat, y) == c).all()


@settings(max_examples=40, deadline=None)
@given(strongly_connected_graphs(max_n=4), st.data())
def test_equivalence_relation(g, data):
    lat = lattice_of(g)
    vec = st.lists(st.integers(-3, 3), min_size=g.n, max_size=g.n)
    x, y, w = (np.array(data.draw(vec)) for _ in range(3))
    assert equivalent(lat, x, x)
    assert equivalent(lat, x, y) == equivalent(lat, y, x)
    if equivalent(lat, x, y) and equivalent(lat, y, w):
        assert equivalent(lat, x, w)
    if equivalent(lat, x, y):
        assert x.sum() == y.sum()


@pytest.mark.parametrize("name", ["C3", "G2", "G3", "K3"])
def test_canonical_rep_matches_rational_oracle_on_box(fx, name):
    g = fx[name]
    lat = lattice_of(g)
    L = g.laplacian()
    vecs = [np.array(v) for v in itertools.product(range(0, 3), repeat=g.n) if sum(v) == 2]
    for x, y in itertools.combinations(vecs, 2):
        same = bool((canonical_rep(lat, x) == canonical_rep(lat, y)).all())
        assert same == rational_equivalent(L, x, y)


@pytest.mark.parametrize("name", ["C3", "C4", "G2", "G3", "K3", "G1", "cycle4_undirected"])
def test_enumerate_classes_complete(fx, name):
    lat = lattice_of(fx[name])
    n = lat.n
    for d in (0, 1, 5):
        reps = enumerate_classes(lat, d)
        keys = {canonical_key(lat, r) for r in reps}
        assert len(reps) == len(keys) == lat.pic0_order
        assert all(r.sum() == d for r in reps)
        assert all((canonical_rep(lat, r) == r).all() for r in reps)
        # every non-negative degree-d vector lands on a listed class
        box_keys = {canonical_key(lat, y) for y in itertools.product(range(d + 1), repeat=n) if sum(y) == d}
        assert box_keys <= keys


def test_box_class_count_equals_pic0(fx):
    # the non-negative box at degree 6 surjects onto the classes of every fixture here
    for name in ("C3", "G2", "G3", "K3", "cycle4_undirected"):
        lat = lattice_of(fx[name])
        keys = {canonical_key(lat, y) for y in itertools.product(range(7), repeat=lat.n) if sum(y) == 6}
        assert len(keys) == lat.pic0_order


def test_single_vertex_lattice():
    g = build_digraph(1, [])
    lat = lattice_of(g)
    assert lat.pic0_order == 1
    assert list(canonical_rep(lat, [5])) == [5]
    assert [list(r) for r in enumerate_classes(lat, 3)] == [[3]]
