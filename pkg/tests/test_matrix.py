import numpy as np
import pytest
from hypothesis import given, strategies as st

from algebra import matrix
from algebra.altspace import elementary_alternating
from algebra.field import FieldCtx
from util.RamseyErrors import NotContained, ShapeMismatch

from conftest import matrices, primes


def test_rref_examples(gf2, gf5):
    r, piv = matrix.rref(gf5, matrix.identity(3))
    assert np.array_equal(r, matrix.identity(3)) and piv == [0, 1, 2]
    r, piv = matrix.rref(gf5, matrix.zeros(2, 2))
    assert not r.any() and piv == []
    r, piv = matrix.rref(gf2, [[1, 1], [1, 1]])
    assert r.tolist() == [[1, 1], [0, 0]] and piv == [0]


def test_rank_examples(gf2, gf3):
    assert matrix.rank(gf3, elementary_alternating(3, 0, 1, gf3)) == 2
    assert matrix.rank(gf3, matrix.zeros(3, 3)) == 0
    assert matrix.rank(gf2, [[1, 1], [1, 1]]) == 1


def test_kernel_examples(gf2, gf3):
    assert matrix.kernel(gf2, [[1, 1]]) == matrix.span(gf2, 2, [[1, 1]])
    assert matrix.kernel(gf3, matrix.identity(4)).dim == 0
    assert matrix.kernel(gf3, elementary_alternating(3, 0, 1, gf3)) == matrix.coordinate_subspace(gf3, 3, [2])


def test_orthogonal_complement_examples(gf2, gf3):
    e1 = matrix.coordinate_subspace(gf3, 3, [0])
    assert matrix.orthogonal_complement(e1) == matrix.coordinate_subspace(gf3, 3, [1, 2])
    assert matrix.orthogonal_complement(matrix.zero_subspace(gf3, 3)) == matrix.whole_space(gf3, 3)
    diag = matrix.span(gf2, 2, [[1, 1]])
    assert matrix.orthogonal_complement(diag) == diag


def test_complement_basis_examples(gf3):
    e1 = matrix.coordinate_subspace(gf3, 3, [0])
    whole = matrix.whole_space(gf3, 3)
    assert matrix.complement_basis(e1, whole) == matrix.coordinate_subspace(gf3, 3, [1, 2])
    assert matrix.complement_basis(whole, whole).dim == 0
    e2 = matrix.coordinate_subspace(gf3, 3, [1])
    assert matrix.complement_basis(matrix.zero_subspace(gf3, 3), e2) == e2
    with pytest.raises(NotContained):
        matrix.complement_basis(e1, e2)


def test_congruence_examples(gf3):
    a = elementary_alternating(3, 0, 1, gf3)
    assert np.array_equal(matrix.congruence(gf3, a, matrix.identity(3)), a)
    block = matrix.congruence(gf3, a, matrix.identity(3)[:, :2])
    assert block.tolist() == [[0, 1], [2, 0]]
    with pytest.raises(ShapeMismatch):
        matrix.congruence(gf3, a, matrix.identity(2))


@given(primes, st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_nullity(p, rows, cols, data):
    ctx = FieldCtx(p)
    m = data.draw(matrices(p, rows, cols))
    r = matrix.rank(ctx, m)
    assert r == matrix.rank(ctx, m.T)
    ker = matrix.kernel(ctx, m)
    assert ker.dim + r == cols
    assert not ctx.matmul(m, ker.basis).any()


@given(primes, st.integers(1, 5), st.data())
def test_complement_is_direct(p, n, data):
    ctx = FieldCtx(p)
    inner = matrix.column_span(ctx, data.draw(matrices(p, n, 2)))
    whole = matrix.whole_space(ctx, n)
    r = matrix.complement_basis(inner, whole)
    assert inner.dim + r.dim == n
    assert matrix.meet_is_trivial(ctx, inner, r)


@given(primes, st.integers(1, 4), st.data())
def test_solve_and_inverse(p, n, data):
    ctx = FieldCtx(p)
    m = data.draw(matrices(p, n, n))
    x = data.draw(matrices(p, n, 1)).reshape(-1)
    b = ctx.matmul(m, x)
    sol = matrix.solve(ctx, m, b)
    assert sol is not None
    assert np.array_equal(ctx.matmul(m, sol), b)
    if matrix.determinant(ctx, m) != 0:
        assert np.array_equal(ctx.matmul(m, matrix.inverse(ctx, m)), matrix.identity(n))
    else:
        assert matrix.rank(ctx, m) < n


def test_solve_inconsistent(gf3):
    assert matrix.solve(gf3, [[1, 0], [1, 0]], [1, 2]) is None


def test_canonical_form_ignores_basis_choice(gf5):
    a = matrix.from_basis(gf5, [[1, 0], [0, 1], [2, 3]])
    b = matrix.from_basis(gf5, [[1, 1], [1, 4], [0, 0]])
    assert a != b
    c = matrix.from_basis(gf5, [[1, 1], [1, 2], [0, 3]])
    assert c == a
    assert len({a, c}) == 1
    with pytest.raises(ShapeMismatch):
        matrix.from_basis(gf5, [[1, 2], [2, 4]])
