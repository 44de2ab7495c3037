import numpy as np
import pytest

import ramsey.StepHelpers as StepHelpers
from algebra import altspace, matrix
from algebra.altspace import elementary_alternating
from algebra.field import FieldCtx
from combinatorics import oracle, randgen
from util.RamseyErrors import DegreeTooHigh, NotContained, ShapeViolation


def a12(ctx, n=3):
    return altspace.from_bilinear_map(ctx, n, 1, [elementary_alternating(n, 0, 1, ctx)])


def span_of(ctx, m):
    return matrix.column_span(ctx, m)


def test_step1_advance_on_a_degree_one_vector(gf3):
    st = StepHelpers.initial_state(a12(gf3))
    nxt = StepHelpers.step1_advance(st, [1, 0, 0], d=2)
    assert nxt.round == 1
    assert span_of(gf3, nxt.t_embed) == matrix.coordinate_subspace(gf3, 3, [0, 2])
    assert span_of(gf3, nxt.iso_matrix()) == matrix.coordinate_subspace(gf3, 3, [0])
    assert span_of(gf3, nxt.r_embed) == matrix.coordinate_subspace(gf3, 3, [2])


def test_step1_advance_on_a_radical_vector(gf3):
    st = StepHelpers.initial_state(a12(gf3))
    nxt = StepHelpers.step1_advance(st, [0, 0, 1], d=2)
    assert span_of(gf3, nxt.t_embed) == matrix.whole_space(gf3, 3)
    assert nxt.r_embed.shape[1] == 2


def test_step1_advance_errors(gf3):
    st = StepHelpers.initial_state(a12(gf3))
    with pytest.raises(DegreeTooHigh):
        StepHelpers.step1_advance(st, [0, 0, 0], d=2)
    with pytest.raises(DegreeTooHigh):
        StepHelpers.step1_advance(st, [1, 0, 0], d=1)
    nxt = StepHelpers.step1_advance(st, [1, 0, 0], d=2)
    with pytest.raises(NotContained):
        StepHelpers.step1_advance(nxt, [1, 0, 0], d=2)


def test_step2_blocks_on_the_zero_space(gf2):
    res = StepHelpers.step2_build(altspace.zero_space(gf2, 8), 4, 16)
    assert isinstance(res, StepHelpers.LowDegreeVector)
    assert res.round == 1 and res.degree == 0 and res.bound == 0
    assert res.w.tolist() == [1] + [0] * 7


def test_step2_builds_a_staircase_on_the_full_space(gf2):
    res = StepHelpers.step2_build(altspace.full_space(gf2, 32), 4, 16)
    assert isinstance(res, StepHelpers.StaircaseData)
    assert res.t_prime == 4 and res.q.shape == (32, 5)
    assert matrix.rank(gf2, res.q) == 5
    assert StepHelpers.staircase_violation(gf2, res.c_mats) == ""
    assert len(set(res.selected)) == 4


@pytest.mark.parametrize("p", [2, 3, 5])
def test_blocked_certificates_respect_the_bounds(p):
    for seed in range(10):
        b = randgen.gen_uniform(randgen.GenSpec(p, 4, 2, seed=seed))
        res = StepHelpers.step2_build(b, 4, 16)
        assert isinstance(res, StepHelpers.LowDegreeVector)
        assert res.degree == altspace.degree(b, res.w)
        assert res.degree <= res.bound
        assert res.degree >= oracle.min_degree_exact(b)[0]


def pair_staircase(ctx, extra=None):
    mats = [elementary_alternating(5, i, i + 1, ctx) for i in range(4)]
    if extra is not None:
        mats[3] = np.mod(mats[3] + extra, ctx.p)
    return mats


def test_step3_leaves_a_normalized_staircase_alone(gf3):
    c_mats = pair_staircase(gf3)
    out = StepHelpers.step3_normalize(c_mats, 2, gf3)
    assert np.array_equal(out.transform, matrix.identity(5))
    assert out.operations == 0
    assert [d.tolist() for d in out.d_mats] == [c_mats[0].tolist(), c_mats[1].tolist(), c_mats[3].tolist()]


def test_step3_clears_the_pair_rows(gf5):
    c_mats = pair_staircase(gf5, extra=2 * elementary_alternating(5, 0, 3, gf5) + elementary_alternating(5, 2, 4, gf5))
    out = StepHelpers.step3_normalize(c_mats, 2, gf5)
    assert len(out.d_mats) == 3
    assert StepHelpers.eq3_violation(gf5, out.d_mats[2], 3, 4) == ""
    for d, k in zip(out.d_mats, (0, 1, 3)):
        assert np.array_equal(d, matrix.congruence(gf5, c_mats[k], out.transform))


def test_step3_rejects_bad_input(gf3):
    with pytest.raises(ShapeViolation):
        StepHelpers.step3_normalize(pair_staircase(gf3)[:3], 2, gf3)
    broken = pair_staircase(gf3)
    broken[0] = elementary_alternating(5, 0, 4, gf3)
    with pytest.raises(ShapeViolation):
        StepHelpers.step3_normalize(broken, 2, gf3)


def test_fibre_relabeling_order():
    assert StepHelpers.fibre_relabeling(2) == [(1, 3)]
    assert StepHelpers.fibre_relabeling(3) == [(1, 3), (1, 4), (2, 4)]
    assert len(StepHelpers.fibre_relabeling(5)) == 10


def test_step4_without_injections(gf3):
    d_mats = [elementary_alternating(5, 0, 1, gf3), elementary_alternating(5, 1, 2, gf3),
              np.mod(elementary_alternating(5, 3, 4, gf3) + elementary_alternating(5, 0, 2, gf3), 3)]
    res = StepHelpers.step4_fixup(d_mats, 2, gf3)
    assert res.injections == 0
    assert np.array_equal(res.transform, matrix.identity(5))
    assert res.array.leading_block_complete(3)


def test_step4_injects_the_pair_fibre(gf3):
    d_mats = [elementary_alternating(5, 0, 1, gf3), elementary_alternating(5, 1, 2, gf3),
              elementary_alternating(5, 3, 4, gf3)]
    res = StepHelpers.step4_fixup(d_mats, 2, gf3)
    assert res.injections == 1
    assert res.array.tube_fibre(0, 2).tolist() == [0, 0, 1]
    assert res.array.leading_block_complete(3)
    for k, d in enumerate(d_mats):
        assert np.array_equal(res.array.frontal_slice(k), matrix.congruence(gf3, d, res.transform))


def run_rounds(a, s, t):
    """Alternates the staircase and the radical restriction the way the solver does, checking the
    bookkeeping after every round. Returns the final state and the number of restarts."""
    ctx = a.ctx
    d = t ** 4
    state = StepHelpers.initial_state(a)
    restarts = 0
    while len(state.iso_vectors) <= s - 2:
        result = StepHelpers.step2_build(state.complement_space, t * t, d)
        if not isinstance(result, StepHelpers.LowDegreeVector):
            break
        state = StepHelpers.step1_advance(state, ctx.matmul(state.r_embed, result.w), d)
        restarts += 1
        i = state.round
        assert i == restarts <= s - 1
        assert len(state.iso_vectors) == i
        assert matrix.rank(ctx, state.iso_matrix()) == i
        assert matrix.rank(ctx, state.t_embed) == state.t_embed.shape[1]
        assert state.t_embed.shape[1] >= (s - i) * d + i
        s_span = span_of(ctx, state.iso_matrix())
        assert s_span.is_subspace_of(span_of(ctx, state.t_embed))
        assert altspace.is_isotropic(a, s_span)
        assert state.r_embed.shape[1] == state.t_embed.shape[1] - i
    return state, restarts


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("m", [1, 2, 5])
@pytest.mark.parametrize("s", [2, 3])
@pytest.mark.parametrize("seed", [0, 1])
def test_round_bookkeeping_on_random_instances(p, m, s, seed):
    a = randgen.gen_uniform(randgen.GenSpec(p, s * 16, m, seed))
    _, restarts = run_rounds(a, s, 2)
    assert restarts <= s - 1


@pytest.mark.parametrize("s", [2, 3, 4])
def test_zero_space_restarts_every_round(gf3, s):
    state, restarts = run_rounds(altspace.zero_space(gf3, s * 16), s, 2)
    assert restarts == s - 1
    assert state.t_embed.shape[1] == s * 16
