import numpy as np
import pytest

from algebra import altspace, matrix
from algebra.altspace import elementary_alternating
from algebra.field import FieldCtx
from combinatorics import hypergraph, randgen
from util.RamseyErrors import BudgetExceeded, IndexOutOfRange, NotGraph, ShapeMismatch, TooLarge

P3 = hypergraph.path_graph(3)
K3 = hypergraph.complete_graph(3)
TRIANGLE3 = hypergraph.make_hypergraph(3, 3, [(0, 1, 2)])


def test_make_hypergraph_normalizes_edges():
    h = hypergraph.make_hypergraph(4, 2, [(2, 1), (0, 3), (1, 2)])
    assert h.edges == ((0, 3), (1, 2))
    with pytest.raises(ShapeMismatch):
        hypergraph.make_hypergraph(4, 2, [(1, 1)])
    with pytest.raises(IndexOutOfRange):
        hypergraph.make_hypergraph(3, 2, [(0, 3)])
    assert sum(1 for _ in hypergraph.all_graphs(4)) == 64


def test_lovasz_map_examples(gf3):
    edge = hypergraph.lovasz_map(hypergraph.from_graph_edges(2, [(0, 1)]))
    assert edge.evaluate(gf3, [[1, 0], [0, 1]]).tolist() == [1]
    det = hypergraph.lovasz_map(TRIANGLE3)
    vs = [[1, 2, 0], [0, 1, 1], [2, 0, 1]]
    assert det.evaluate(gf3, vs).tolist() == [matrix.determinant(gf3, np.array(vs).T)]
    assert det.evaluate(gf3, [vs[1], vs[0], vs[2]]).tolist() == [(-matrix.determinant(gf3, np.array(vs).T)) % 3]
    with pytest.raises(ShapeMismatch):
        det.evaluate(gf3, vs[:2])


def test_to_altspace_examples(gf2):
    a = hypergraph.to_altspace(P3, gf2)
    assert [g.tolist() for g in a.gens] == [elementary_alternating(3, 0, 1, gf2).tolist(),
                                            elementary_alternating(3, 1, 2, gf2).tolist()]
    single = hypergraph.to_altspace(hypergraph.from_graph_edges(2, [(0, 1)]), gf2)
    assert altspace.space_dim(single) == 1
    with pytest.raises(NotGraph):
        hypergraph.to_altspace(TRIANGLE3, gf2)


def test_ell_two_map_agrees_with_altspace(gf5):
    h = randgen.gen_hypergraph(5, 2, seed=3)
    phi = hypergraph.lovasz_map(h)
    a = hypergraph.to_altspace(h, gf5)
    u = np.array([1, 2, 3, 4, 0])
    v = np.array([0, 4, 1, 1, 2])
    assert np.array_equal(phi.evaluate(gf5, [u, v]), altspace.evaluate(a, u, v))


@pytest.mark.parametrize("h, expected", [(P3, 2), (K3, 1), (hypergraph.edgeless(4), 4), (TRIANGLE3, 2)])
def test_independence_number(h, expected):
    assert hypergraph.independence_number(h) == expected
    best = hypergraph.maximum_independent_set(h)
    assert len(best) == expected
    assert altspace_isotropic_if_graph(h, best)


def altspace_isotropic_if_graph(h, independent_set):
    if h.ell != 2:
        return True
    ctx = FieldCtx(3)
    return altspace.is_isotropic(hypergraph.to_altspace(h, ctx),
                                 hypergraph.coordinate_witness(h, independent_set, ctx))


def test_independence_cap():
    with pytest.raises(TooLarge):
        hypergraph.independence_number(hypergraph.edgeless(21))
    assert hypergraph.independence_number(hypergraph.edgeless(21), cap=25) == 21


def test_isotropic_number_multilinear_examples(gf2):
    assert hypergraph.isotropic_number_multilinear(hypergraph.lovasz_map(TRIANGLE3), gf2) == 2
    assert hypergraph.isotropic_number_multilinear(hypergraph.lovasz_map(K3), gf2) == 1
    assert hypergraph.isotropic_number_multilinear(hypergraph.lovasz_map(hypergraph.edgeless(3)), gf2) == 3
    with pytest.raises(BudgetExceeded):
        hypergraph.isotropic_number_multilinear(hypergraph.lovasz_map(K3), gf2, cap=5)


@pytest.mark.parametrize("h, q, expected", [(P3, 2, 2), (K3, 3, 1), (TRIANGLE3, 2, 2)])
def test_check_prop_alpha_examples(h, q, expected):
    rep = hypergraph.check_prop_alpha(h, FieldCtx(q))
    assert (rep.alpha_h, rep.alpha_phi, rep.equal) == (expected, expected, True)


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 3])
def test_prop_alpha_all_small_graphs(q):
    ctx = FieldCtx(q)
    for n in range(1, 5):
        for h in hypergraph.all_graphs(n):
            assert hypergraph.check_prop_alpha(h, ctx).equal, h


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 3])
def test_prop_alpha_random_three_uniform(q):
    ctx = FieldCtx(q)
    for trial in range(50):
        h = randgen.gen_hypergraph(5, 3, seed=11, trial=trial)
        assert hypergraph.check_prop_alpha(h, ctx).equal, h
