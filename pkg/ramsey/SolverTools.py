"""Orchestrates the construction: restrict to n = s*t^4, alternate the staircase and the radical restriction
until one of the two witnesses appears, then map it back to the caller's coordinates and verify it.
The matrix work lives in StepHelpers.py.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import List, Optional, Tuple

import numpy as np

import ramsey.StepHelpers as StepHelpers
from algebra import altspace, matrix
from algebra.altspace import AltSpace, Witness
from algebra.matrix import Mat, Subspace
from combinatorics import randgen
from util.Configurator import Configurator
from util.InstrumentationStatistics import InstrumentationStatistics, Statistic_Event_Types
from util.RamseyErrors import InvariantViolation, PreconditionFailed, RankLoss
from util.RamseyLogging import getLogger
from util.util import WitnessKind


def get_logger():
    return getLogger(__name__)


@dataclass(frozen=True)
class RestartRecord:
    """One low-degree vector fed back from the staircase: its round, degree and the (i-1)i bound."""
    round: int
    degree: int
    bound: int
    vector: np.ndarray


@dataclass
class SolveTrace:
    step1_rounds: int = 0
    step2_restarts: int = 0
    step4_injections: int = 0
    transform_trail: List[Mat] = field(default_factory=list)
    restarts: List[RestartRecord] = field(default_factory=list)
    staircase: Optional[StepHelpers.StaircaseData] = None
    normalized: Optional[StepHelpers.NormalizedData] = None
    final_array: Optional[object] = None

    def composed(self, ctx) -> Mat:
        if not self.transform_trail:
            raise RankLoss("empty transform trail")
        acc = self.transform_trail[0]
        for m in self.transform_trail[1:]:
            acc = ctx.matmul(acc, m)
        return acc


def complete_ramsey_upper_bound(s: int, t: int) -> int:
    """Every alternating bilinear map on F^n with n >= s*t^4 has a witness."""
    return s * t ** 4


def _check_parameters(a: AltSpace, s: int, t: int) -> int:
    if s < 2 or t < 2:
        raise PreconditionFailed(f"s and t must both be at least 2, got s={s}, t={t}")
    n0 = complete_ramsey_upper_bound(s, t)
    if a.n < n0:
        raise PreconditionFailed(f"n={a.n} is below s*t^4={n0}")
    return n0


def extract_witness(a: AltSpace, trace: SolveTrace, kind, dim: int) -> Witness:
    """Composes the recorded basis changes and keeps the leading dim columns, in canonical form."""
    ctx = a.ctx
    full = trace.composed(ctx)
    if full.shape[0] != a.n or full.shape[1] < dim:
        raise RankLoss(f"trail maps {full.shape[1]} coordinates into F^{full.shape[0]}, need {dim} in F^{a.n}")
    lead = full[:, :dim]
    if matrix.rank(ctx, lead) != dim:
        raise RankLoss(f"witness basis lost rank: {matrix.rank(ctx, lead)} < {dim}")
    canon = Subspace(ctx, a.n, lead).canonical
    return Witness(WitnessKind(kind), Subspace(ctx, a.n, canon))


def solve(a: AltSpace, s: int, t: int, truncate_to_t: bool = None) -> Tuple[Witness, SolveTrace]:
    """Finds an s-dimensional totally-isotropic or a (t+1)-dimensional complete subspace.

    Parameters:
    -----------
    a: the alternating matrix space; needs n >= s*t^4.
    s, t: the Ramsey parameters, both at least 2.
    truncate_to_t: cut a complete witness down to exactly t dimensions. Defaults to solver.truncate_to_t.

    returns the verified witness in the coordinates of a, and the trace of the run.
    """
    config = Configurator.getConfig()
    truncate_to_t = bool(config.getPropertyOr("solver", "truncate_to_t", truncate_to_t))
    log_rounds = config.getProperty("solver", "log_rounds")
    n0 = _check_parameters(a, s, t)
    ctx = a.ctx
    d = t ** 4
    t_prime = t * t
    emb = matrix.identity(a.n)[:, :n0]
    working = altspace.restrict(a, emb) if a.n > n0 else a
    trace = SolveTrace()
    state = StepHelpers.initial_state(working)
    get_logger().info("Solving s=%d, t=%d on %s (working dimension %d, threshold d=%d)", s, t, a, n0, d)

    while len(state.iso_vectors) <= s - 2:
        b = state.complement_space
        result = StepHelpers.step2_build(b, t_prime, d)
        if isinstance(result, StepHelpers.LowDegreeVector):
            v = ctx.matmul(state.r_embed, result.w)
            trace.step2_restarts += 1
            trace.restarts.append(RestartRecord(result.round, result.degree, result.bound, v.copy()))
            state = StepHelpers.step1_advance(state, v, d)
            trace.step1_rounds += 1
            if log_rounds:
                get_logger().info("Restart %d: degree %d vector from staircase round %d; dim T=%d, dim R=%d",
                                  trace.step2_restarts, result.degree, result.round, state.t_embed.shape[1],
                                  state.r_embed.shape[1])
            continue
        trace.staircase = result
        normalized = StepHelpers.step3_normalize(result.c_mats, t, ctx)
        trace.normalized = normalized
        fixed = StepHelpers.step4_fixup(normalized.d_mats, t, ctx)
        trace.step4_injections = fixed.injections
        trace.final_array = fixed.array
        if log_rounds:
            get_logger().info("Staircase built after %d restarts; %d fibre injections", trace.step2_restarts,
                              fixed.injections)
        trace.transform_trail = [emb, state.r_embed, result.q, normalized.transform, fixed.transform]
        witness = extract_witness(a, trace, WitnessKind.COMPLETE, t + 1)
        break
    else:
        if state.r_embed.shape[1] == 0:
            raise InvariantViolation("complement R is empty in the final isotropic round")
        last = state.r_embed[:, 0]
        iso = np.column_stack(state.iso_vectors + (last,))
        trace.transform_trail = [emb, iso]
        witness = extract_witness(a, trace, WitnessKind.ISOTROPIC, s)

    if witness.kind is WitnessKind.COMPLETE and truncate_to_t:
        witness = Witness(WitnessKind.COMPLETE, witness.basis.truncate(t))
    sid = InstrumentationStatistics.getStatistics().timeEventStart(Statistic_Event_Types.EVENT_VERIFY)
    report = altspace.verify_witness(a, witness, s, t)
    InstrumentationStatistics.getStatistics().timeEventEnd(sid)
    if not report.ok:
        raise InvariantViolation(f"constructed {witness.kind.value} witness failed verification: {report.reason}")
    get_logger().info("Found %s witness of dimension %d", witness.kind.value, witness.dim)
    return witness, trace


@dataclass(frozen=True)
class BoundsReport:
    s: int
    t: int
    upper: int
    lower_n: int
    lower_m: int
    generic_isotropic_bound: int

    @property
    def lower(self) -> int:
        """Smallest n not ruled out by the generic lower-bound instance."""
        return self.lower_n + 1


def bounds(s: int, t: int) -> BoundsReport:
    """The s*t^4 upper bound next to the explicit lower-bound parameters, which grow like s*t^2."""
    n, m = randgen.bgh_parameters(s, t)
    return BoundsReport(s, t, complete_ramsey_upper_bound(s, t), n, m, randgen.bgh_bound(n, m))
