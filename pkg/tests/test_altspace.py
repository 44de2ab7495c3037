from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from algebra import altspace, matrix
from algebra.altspace import AltSpace, Witness, elementary_alternating
from algebra.field import FieldCtx
from util.RamseyErrors import NotAlternating, ShapeMismatch
from util.util import WitnessKind

from conftest import alternating_matrices, matrices, primes


@st.composite
def alt_spaces(draw, max_n=5, max_m=4):
    p = draw(primes)
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    ctx = FieldCtx(p)
    gens = [draw(alternating_matrices(p, n)) for _ in range(m)]
    return altspace.from_bilinear_map(ctx, n, m, gens)


def a12(ctx, n=3):
    return altspace.from_bilinear_map(ctx, n, 1, [elementary_alternating(n, 0, 1, ctx)])


def coords(ctx, n, *idx):
    return matrix.coordinate_subspace(ctx, n, idx)


def test_from_bilinear_map(gf3):
    assert altspace.space_dim(a12(gf3)) == 1
    empty = altspace.from_bilinear_map(gf3, 3, 0, [])
    assert empty.m == 0 and altspace.space_dim(empty) == 0
    bad = matrix.identity(3)
    with pytest.raises(NotAlternating) as err:
        altspace.from_bilinear_map(gf3, 3, 2, [elementary_alternating(3, 0, 1, gf3), bad])
    assert err.value.index == 1
    with pytest.raises(ShapeMismatch):
        altspace.from_bilinear_map(gf3, 3, 2, [bad])


def test_characteristic_two_needs_zero_diagonal(gf2, gf3):
    sym = [[0, 1], [1, 0]]
    assert altspace.from_bilinear_map(gf2, 2, 1, [sym]).m == 1
    with pytest.raises(NotAlternating):
        altspace.from_bilinear_map(gf3, 2, 1, [sym])
    with pytest.raises(NotAlternating):
        altspace.from_bilinear_map(gf2, 2, 1, [[1, 1], [1, 0]])


def test_restrict_examples(gf3):
    a = altspace.from_bilinear_map(gf3, 3, 2, [elementary_alternating(3, 0, 1, gf3),
                                               elementary_alternating(3, 0, 2, gf3)])
    r = altspace.restrict(a, coords(gf3, 3, 0, 1))
    assert r.n == 2 and altspace.space_dim(r) == 1
    assert altspace.space_dim(altspace.restrict(a, matrix.whole_space(gf3, 3))) == 2
    z = altspace.restrict(a, matrix.zero_subspace(gf3, 3))
    assert z.n == 0 and altspace.space_dim(z) == 0


def test_space_dim_examples(gf3):
    g = elementary_alternating(3, 0, 1, gf3)
    assert altspace.space_dim(AltSpace(gf3, 3, (g, g))) == 1
    assert altspace.space_dim(altspace.full_space(gf3, 3)) == 3
    assert altspace.space_dim(altspace.zero_space(gf3, 3)) == 0


def test_degree_and_radical_examples(gf3):
    a = a12(gf3)
    eye = matrix.identity(3)
    assert altspace.degree(a, eye[0]) == 1
    assert altspace.degree(a, eye[2]) == 0
    assert altspace.degree(a, np.zeros(3, dtype=np.int64)) == 0
    assert altspace.radical_of_set(a, coords(gf3, 3, 0)) == coords(gf3, 3, 0, 2)
    assert altspace.radical_of_set(a, matrix.zero_subspace(gf3, 3)) == matrix.whole_space(gf3, 3)
    assert altspace.radical(a) == coords(gf3, 3, 2)


def test_evaluate(gf5):
    a = a12(gf5)
    assert altspace.evaluate(a, [1, 0, 0], [0, 1, 0]).tolist() == [1]
    assert altspace.evaluate(a, [0, 1, 0], [1, 0, 0]).tolist() == [4]
    assert a.evaluate([2, 0, 0], [0, 3, 0]).tolist() == [1]


def test_isotropic_and_complete_examples(gf3):
    a = a12(gf3)
    assert altspace.is_isotropic(a, coords(gf3, 3, 1, 2))
    assert not altspace.is_isotropic(a, coords(gf3, 3, 0, 1))
    assert altspace.is_isotropic(altspace.full_space(gf3, 3), coords(gf3, 3, 1))
    assert altspace.is_complete(a12(gf3, 2), matrix.whole_space(gf3, 2))
    assert not altspace.is_complete(altspace.zero_space(gf3, 2), matrix.whole_space(gf3, 2))
    assert altspace.is_complete(altspace.full_space(gf3, 3), matrix.whole_space(gf3, 3))


def test_verify_witness(gf3):
    zero = altspace.zero_space(gf3, 4)
    iso = Witness(WitnessKind.ISOTROPIC, coords(gf3, 4, 0, 1))
    assert altspace.verify_witness(zero, iso, 2, 2).ok
    rep = altspace.verify_witness(zero, Witness(WitnessKind.ISOTROPIC, coords(gf3, 4, 0)), 2, 2)
    assert not rep.ok and "dimension" in rep.reason
    full = altspace.full_space(gf3, 4)
    comp = Witness(WitnessKind.COMPLETE, coords(gf3, 4, 0, 1, 2))
    rep = altspace.verify_witness(full, comp, 2, 3)
    assert rep.ok and rep.measured_dim == 3 and rep.required_dim == 3
    assert not altspace.verify_witness(full, iso, 2, 2).ok
    wrong_space = Witness(WitnessKind.ISOTROPIC, coords(gf3, 3, 0, 1))
    assert altspace.verify_witness(zero, wrong_space, 2, 2).measured_dim == -1


@settings(max_examples=60)
@given(alt_spaces(), st.data())
def test_degree_properties(a, data):
    ctx = a.ctx
    v = data.draw(matrices(ctx.p, a.n, 1)).reshape(-1)
    rad = altspace.radical(a)
    assert (altspace.degree(a, v) == 0) == rad.contains(v)
    lam = data.draw(st.integers(1, ctx.p - 1))
    assert altspace.degree(a, ctx.scale(v, lam)) == altspace.degree(a, v)
    if v.any():
        assert altspace.radical_of_set(a, v.reshape(-1, 1)).contains(v)


@settings(max_examples=60)
@given(alt_spaces(), st.data())
def test_restriction_properties(a, data):
    ctx = a.ctx
    k = data.draw(st.integers(1, a.n))
    raw = data.draw(matrices(ctx.p, a.n, k))
    w = matrix.column_span(ctx, raw)
    r = altspace.restrict(a, w)
    assert altspace.space_dim(r) <= min(altspace.space_dim(a), comb(w.dim, 2))
    other = altspace.restrict(a, w.canonical)
    assert altspace.space_dim(other) == altspace.space_dim(r)
    for g in r.gens:
        assert altspace.alternating_violation(ctx, g) == ""
