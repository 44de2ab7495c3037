"""The four stages of the construction. SolverTools.py orchestrates; everything that touches matrices happens
here. Every stage re-checks its own postconditions with exact rank computations and raises an
InternalInvariantViolation subclass when one fails.

Index conventions: arrays are 0-based. Where a docstring talks about C_i, f_{j,k} or rows t+2i it means the
1-based numbering, and the code subtracts one at the array access.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import List, Optional, Tuple, Union

import numpy as np

from algebra import altspace, matrix, tensor3
from algebra.altspace import AltSpace
from algebra.field import FieldCtx
from algebra.matrix import Mat
from util.InstrumentationStatistics import InstrumentationStatistics as stats
from util.InstrumentationStatistics import Statistic_Event_Types
from util.RamseyErrors import DegreeTooHigh, InvariantViolation, NotContained, ShapeViolation
from util.RamseyLogging import getLogger

LOGGER = getLogger(__name__)


@dataclass(frozen=True)
class Step1State:
    """Everything is kept in the coordinates of `original`.

    iso_vectors span S_i, t_embed is a basis of T_i and r_embed a basis of a complement R_i of S_i in T_i.
    """
    original: AltSpace
    iso_vectors: Tuple[np.ndarray, ...]
    t_embed: Mat
    r_embed: Mat
    round: int = 0

    @property
    def current(self) -> AltSpace:
        return altspace.restrict(self.original, self.t_embed)

    @property
    def complement_space(self) -> AltSpace:
        return altspace.restrict(self.original, self.r_embed)

    def iso_matrix(self) -> Mat:
        if not self.iso_vectors:
            return matrix.zeros(self.original.n, 0)
        return np.column_stack(self.iso_vectors)


def initial_state(a: AltSpace) -> Step1State:
    eye = matrix.identity(a.n)
    return Step1State(a, (), eye, eye.copy(), 0)


def _pairings_vanish(ctx: FieldCtx, a: AltSpace, left: Mat, right: Mat) -> bool:
    """True iff left^T A right = 0 for every generator A."""
    if a.m == 0 or left.shape[1] == 0 or right.shape[1] == 0:
        return True
    return not np.any(ctx.matmul(ctx.matmul(left.T, a.stack), right))


def step1_advance(st: Step1State, v, d: int) -> Step1State:
    """Adds v to the isotropic set and restricts to rad(v) inside the current space.

    Parameters:
    -----------
    st: the state after round i-1.
    v: a nonzero vector of the current complement R, in original coordinates.
    d: the degree threshold; deg(v) in the current restricted space must be below it.

    returns the state after round i.
    """
    ctx = st.original.ctx
    v = ctx.reduce(v).reshape(-1)
    if not np.any(v):
        raise DegreeTooHigh("the zero vector cannot be added to an isotropic set")
    coords = matrix.solve(ctx, st.t_embed, v)
    if coords is None or not matrix.column_span(ctx, st.r_embed).contains(v):
        raise NotContained("restart vector is not in the current complement R")
    current = st.current
    deg = altspace.degree(current, coords)
    if deg >= d:
        raise DegreeTooHigh(f"vector of degree {deg} offered with threshold {d}")
    evt = stats.getStatistics().timeEventStart(Statistic_Event_Types.EVENT_STEP1_ADVANCE)
    try:
        rad = altspace.radical_of_set(current, coords.reshape(-1, 1))
        t_new = ctx.matmul(st.t_embed, rad.basis)
        iso = st.iso_vectors + (v,)
        s_mat = np.column_stack(iso)
        if t_new.shape[1] < st.t_embed.shape[1] - deg:
            raise InvariantViolation(f"radical lost {st.t_embed.shape[1] - t_new.shape[1]} dimensions for degree {deg}")
        if not _pairings_vanish(ctx, st.original, t_new, s_mat):
            raise InvariantViolation(f"isotropic set left the radical in round {st.round + 1}")
        inner = matrix.column_span(ctx, s_mat)
        outer = matrix.from_basis(ctx, t_new)
        r_new = matrix.complement_basis(inner, outer).basis.copy()
        if inner.dim != len(iso):
            raise InvariantViolation("isotropic vectors became dependent")
    finally:
        stats.getStatistics().timeEventEnd(evt)
    LOGGER.debug("Round %d: degree %d, dim T %d -> %d, dim R %d", st.round + 1, deg, st.t_embed.shape[1],
                 t_new.shape[1], r_new.shape[1])
    return Step1State(st.original, iso, t_new, r_new, st.round + 1)


@dataclass(frozen=True)
class LowDegreeVector:
    """Certificate produced when the staircase blocks: deg(w) <= (round-1)*round in the space it came from."""
    w: np.ndarray
    round: int
    degree: int

    @property
    def bound(self) -> int:
        return (self.round - 1) * self.round


@dataclass(frozen=True)
class StaircaseData:
    q: Mat
    c_mats: Tuple[Mat, ...]
    w_vectors: Tuple[np.ndarray, ...]
    alphas: Tuple[int, ...]
    selected: Tuple[int, ...]

    @property
    def t_prime(self) -> int:
        return len(self.c_mats)


def staircase_violation(ctx: FieldCtx, c_mats) -> str:
    """Empty when C_i(i,i+1) = 1 and C_i vanishes outside its leading (i+1) x (i+1) block, for every i."""
    for i, c in enumerate(c_mats, start=1):
        c = ctx.reduce(c)
        if c[i - 1, i] != 1:
            return f"C_{i}({i},{i + 1}) = {int(c[i - 1, i])}"
        if np.any(c[:, i + 1:]) or np.any(c[i + 1:, :]):
            return f"C_{i} has entries outside its leading {i + 1}x{i + 1} block"
    return ""


def step2_build(b: AltSpace, t_prime: int, d: int) -> Union[StaircaseData, LowDegreeVector]:
    """Grows w_1, w_2, ... and picks B_1, B_2, ... so that w_k^T B_j w_l = 0 whenever l > j+1.

    Round i restricts to T_i, the common kernel of w_k^T B_j over j < i and k <= i, and takes the first
    canonical basis vector of T_i that pairs nontrivially with w_i. When there is none, T_i lies inside
    rad(w_i), so deg(w_i) is at most codim T_i <= (i-1)i and w_i is handed back to Step 1.
    """
    ctx = b.ctx
    n = b.n
    evt = stats.getStatistics().timeEventStart(Statistic_Event_Types.EVENT_STEP2_BUILD)
    try:
        ws = [matrix.identity(n)[:, 0]]
        chosen: List[int] = []
        alphas: List[int] = []
        for i in range(1, t_prime + 1):
            w_i = ws[-1]
            if chosen:
                prod = ctx.matmul(b.stack[chosen], np.column_stack(ws))
                constraints = np.transpose(prod, (0, 2, 1)).reshape(-1, n)
                t_i = matrix.kernel(ctx, constraints)
            else:
                t_i = matrix.whole_space(ctx, n)
            if i >= 2 and not matrix.meet_is_trivial(ctx, t_i, matrix.column_span(ctx, np.column_stack(ws))):
                raise InvariantViolation(f"T_{i} meets W_{i} in round {i}")
            # pairing[g, k] = w_i^T B_g u_k for the canonical basis u_k of T_i
            basis = t_i.canonical
            pairing = ctx.matmul(ctx.matmul(w_i, b.stack), basis) if b.m and basis.shape[1] else matrix.zeros(b.m, 0)
            hits = np.flatnonzero(np.any(pairing, axis=0)) if pairing.size else np.array([], dtype=np.int64)
            if hits.size == 0:
                deg = altspace.degree(b, w_i)
                bound = (i - 1) * i
                if deg > bound or deg >= d:
                    raise InvariantViolation(f"blocked in round {i} with degree {deg}, bound {bound}, threshold {d}")
                LOGGER.debug("Staircase blocked in round %d: degree %d <= %d", i, deg, bound)
                return LowDegreeVector(w_i.copy(), i, deg)
            k = int(hits[0])
            w_next = basis[:, k].copy()
            g = int(np.flatnonzero(pairing[:, k])[0])
            chosen.append(g)
            alphas.append(int(pairing[g, k]))
            ws.append(w_next)
        q = np.column_stack(ws)
        if matrix.rank(ctx, q) != t_prime + 1:
            raise InvariantViolation(f"Q has rank {matrix.rank(ctx, q)}, expected {t_prime + 1}")
        sel = b.flattened[chosen]
        if not matrix.independent_rows(ctx, sel):
            raise InvariantViolation("selected generators are linearly dependent")
        c_mats = tuple(matrix.congruence(ctx, ctx.scale(b.gens[g], ctx.inv_scalar(al)), q)
                       for g, al in zip(chosen, alphas))
        problem = staircase_violation(ctx, c_mats)
        if problem:
            raise InvariantViolation(f"staircase form broken: {problem}")
    finally:
        stats.getStatistics().timeEventEnd(evt)
    return StaircaseData(q, c_mats, tuple(ws), tuple(alphas), tuple(chosen))


def eq3_violation(ctx: FieldCtx, dm: Mat, a: int, b: int) -> str:
    """Empty when rows and columns a, b (0-based, b = a+1) are zero apart from dm[a,b] = 1, dm[b,a] = -1,
    and everything past b is zero."""
    dm = ctx.reduce(dm)
    if dm[a, b] != 1 or dm[b, a] != ctx.p - 1:
        return f"pair entries are {int(dm[a, b])}, {int(dm[b, a])}"
    rest = dm.copy()
    rest[a, b] = 0
    rest[b, a] = 0
    if np.any(rest[[a, b], :]) or np.any(rest[:, [a, b]]):
        return f"rows {a + 1},{b + 1} have entries besides the pair"
    if np.any(rest[b + 1:, :]) or np.any(rest[:, b + 1:]):
        return f"entries beyond index {b + 1}"
    return ""


@dataclass
class NormalizedData:
    d_mats: List[Mat]
    transform: Mat
    operations: int = 0


def step3_normalize(c_mats, t: int, ctx: FieldCtx) -> NormalizedData:
    """Clears rows and columns t+2i, t+2i+1 of C_{t+2i} down to their +-1 pair, for i = C(t,2), ..., 1.

    Each clearing subtracts multiples of the pair rows from lower rows, applied as congruences to every
    matrix at once. D_i = C'_i for i <= t and D_{t+i} = C'_{t+2i}.
    """
    t_prime = len(c_mats)
    if t_prime != t * t:
        raise ShapeViolation(f"expected {t * t} staircase matrices, got {t_prime}")
    problem = staircase_violation(ctx, c_mats)
    if problem:
        raise ShapeViolation(f"Step 3 input is not a staircase: {problem}")
    evt = stats.getStatistics().timeEventStart(Statistic_Event_Types.EVENT_STEP3_NORMALIZE)
    try:
        arr = tensor3.from_slices(ctx, c_mats)
        pairs = comb(t, 2)
        for i in range(pairs, 0, -1):
            a = t + 2 * i - 1
            b = a + 1
            slice_idx = t + 2 * i - 1
            for k in range(a):
                x = int(arr.data[k, a, slice_idx])
                y = int(arr.data[k, b, slice_idx])
                arr.apply_paired_rowcol(b, k, x)
                arr.apply_paired_rowcol(a, k, -y)
            problem = eq3_violation(ctx, arr.frontal_slice(slice_idx), a, b)
            if problem:
                raise ShapeViolation(f"C_{t + 2 * i} not normalized: {problem}")
        keep = list(range(t)) + [t + 2 * i - 1 for i in range(1, pairs + 1)]
        d_mats = [arr.frontal_slice(k) for k in keep]
        for i in range(1, t + 1):
            if d_mats[i - 1][i - 1, i] != 1:
                raise ShapeViolation(f"pivot D_{i}({i},{i + 1}) was disturbed")
        for i in range(1, pairs + 1):
            a = t + 2 * i - 1
            problem = eq3_violation(ctx, d_mats[t + i - 1], a, a + 1)
            if problem:
                raise ShapeViolation(f"D_{t + i} lost its normal form: {problem}")
    finally:
        stats.getStatistics().timeEventEnd(evt)
    return NormalizedData(d_mats, arr.transform, arr.operations)


def fibre_relabeling(t: int) -> List[Tuple[int, int]]:
    """The pairs (j, k), j+2 <= k <= t+1, 1-based, ordered by k then j: (1,3), (1,4), (2,4), (1,5), ..."""
    return [(j, k) for k in range(3, t + 2) for j in range(1, k - 1)]


def _round_fibres(t: int, done: int) -> List[Tuple[int, int]]:
    """0-based fibre positions that must be independent once `done` relabeled fibres are in place."""
    pairs = comb(t, 2)
    tilde = fibre_relabeling(t)
    out = [(l - 1, l) for l in range(1, t + 1)]
    out += [(j - 1, k - 1) for j, k in tilde[:done]]
    out += [(t + 2 * l - 1, t + 2 * l) for l in range(done + 1, pairs + 1)]
    return out


@dataclass
class FixupResult:
    transform: Mat
    injections: int
    array: tensor3.ThreeWay


def step4_fixup(d_mats, t: int, ctx: FieldCtx) -> FixupResult:
    """Swaps the pair fibres f_{t+2i,t+2i+1} for the missing leading fibres one at a time.

    When the relabeled fibre (j, k) would make the set dependent, rows t+2i and t+2i+1 are added to rows
    j and k (with matching columns); that adds the pair fibre to f_{j,k} and leaves the other fibres
    unchanged on the slices that matter.
    """
    evt = stats.getStatistics().timeEventStart(Statistic_Event_Types.EVENT_STEP4_FIXUP)
    try:
        arr = tensor3.from_slices(ctx, d_mats)
        if not arr.fibres_independent(_round_fibres(t, 0)):
            raise InvariantViolation("Step 4 input fibres are already dependent")
        tilde = fibre_relabeling(t)
        injections = 0
        for done, (j, k) in enumerate(tilde, start=1):
            if arr.fibres_independent(_round_fibres(t, done)):
                continue
            a = t + 2 * done - 1
            arr.apply_paired_rowcol(a, j - 1, 1)
            arr.apply_paired_rowcol(a + 1, k - 1, 1)
            injections += 1
            LOGGER.debug("Injected pair %d into f_{%d,%d}", done, j, k)
            if not arr.fibres_independent(_round_fibres(t, done)):
                raise InvariantViolation(f"fibre f_{j},{k} still dependent after injection in round {done}")
        if not arr.leading_block_complete(t + 1):
            raise InvariantViolation(f"leading {t + 1} block is not complete after Step 4")
    finally:
        stats.getStatistics().timeEventEnd(evt)
    return FixupResult(arr.transform, injections, arr)
