"""Random instances and the lower-bound experiment harness.

All randomness comes from Philox streams keyed by (seed, trial) with the matrix index in the high counter
word, so a given (seed, trial, matrix) always sees the same numbers no matter which thread draws them.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from algebra import altspace
from algebra.altspace import AltSpace
from algebra.field import FieldCtx
from combinatorics import hypergraph, oracle
from util.Configurator import Configurator
from util.RamseyErrors import PreconditionFailed
from util.RamseyLogging import getLogger
from util.util import GenMode

LOGGER = getLogger(__name__)

_MASK64 = (1 << 64) - 1


def stream(seed: int, trial: int = 0, index: int = 0) -> np.random.Generator:
    key = np.array([int(seed) & _MASK64, int(trial) & _MASK64], dtype=np.uint64)
    counter = np.array([0, 0, int(index) & _MASK64, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def bgh_parameters(s: int, t: int) -> Tuple[int, int]:
    """(n, m) with m = C(t-1, 2) and n = floor((m+2)(s-2)/2) + 1."""
    if s < 2 or t < 2:
        raise PreconditionFailed(f"s and t must both be at least 2, got s={s}, t={t}")
    m = comb(t - 1, 2)
    n = (m + 2) * (s - 2) // 2 + 1
    return n, m


def bgh_bound(n: int, m: int) -> int:
    """floor((m + 2n) / (m + 2)), the upper bound on the isotropic number of a generic instance."""
    return (m + 2 * n) // (m + 2)


@dataclass(frozen=True)
class GenSpec:
    p: int
    n: int
    m: int
    seed: int = 0
    mode: GenMode = GenMode.UNIFORM
    s: Optional[int] = None
    t: Optional[int] = None
    trial: int = 0

    def __post_init__(self):
        mode = GenMode(self.mode)
        object.__setattr__(self, "mode", mode)
        if mode is GenMode.BGH_LOWER:
            if self.s is None or self.t is None:
                raise PreconditionFailed("bgh_lower mode needs s and t")
            n, m = bgh_parameters(self.s, self.t)
            if (self.n, self.m) != (n, m):
                raise PreconditionFailed(f"bgh_lower with s={self.s}, t={self.t} needs n={n}, m={m}")
        if self.n < 0 or self.m < 0:
            raise PreconditionFailed(f"negative size n={self.n}, m={self.m}")


def random_alternating(ctx: FieldCtx, n: int, rng: np.random.Generator) -> np.ndarray:
    iu = np.triu_indices(n, 1)
    a = np.zeros((n, n), dtype=np.int64)
    a[iu] = rng.integers(0, ctx.p, size=len(iu[0]), dtype=np.int64)
    a[(iu[1], iu[0])] = np.mod(-a[iu], ctx.p)
    return a


def gen_uniform(spec: GenSpec) -> AltSpace:
    """m independent uniform alternating matrices; slice k draws from its own stream."""
    ctx = FieldCtx(spec.p)
    gens = [random_alternating(ctx, spec.n, stream(spec.seed, spec.trial, k)) for k in range(spec.m)]
    return altspace.from_bilinear_map(ctx, spec.n, spec.m, gens)


def gen_bgh_lower(s: int, t: int, p: int, seed: int, trial: int = 0) -> Tuple[AltSpace, Tuple[int, int]]:
    n, m = bgh_parameters(s, t)
    spec = GenSpec(p, n, m, seed, GenMode.BGH_LOWER, s, t, trial)
    return gen_uniform(spec), (n, m)


def gen_hypergraph(n: int, ell: int, seed: int, trial: int = 0) -> hypergraph.Hypergraph:
    """Each l-subset of the n vertices becomes an edge with probability 1/2."""
    rng = stream(seed, trial, 0)
    candidates = list(combinations(range(n), ell))
    keep = rng.integers(0, 2, size=len(candidates))
    return hypergraph.make_hypergraph(n, ell, (e for e, k in zip(candidates, keep) if k))


@dataclass(frozen=True)
class TrialRow:
    trial: int
    alpha_isotropic: int
    alpha_complete: int


@dataclass
class BghReport:
    s: int
    t: int
    p: int
    n: int
    m: int
    rows: List[TrialRow] = field(default_factory=list)

    @property
    def isotropic_below_s(self) -> float:
        """Fraction of trials with alpha(phi) <= s-1; 0.0 when there were none."""
        if not self.rows:
            return 0.0
        return sum(r.alpha_isotropic <= self.s - 1 for r in self.rows) / len(self.rows)

    @property
    def complete_below_t(self) -> bool:
        return all(r.alpha_complete < self.t for r in self.rows)


def _run_trial(s: int, t: int, p: int, seed: int, trial: int, budget: Optional[int]) -> TrialRow:
    a, _ = gen_bgh_lower(s, t, p, seed, trial)
    iso = oracle.isotropic_number_exact(a, budget)
    com = oracle.complete_number_exact(a, budget)
    LOGGER.debug("Trial %d: isotropic %d, complete %d", trial, iso, com)
    return TrialRow(trial, iso, com)


def bgh_experiment(s: int, t: int, p: int, trials: int, seed: int, workers: int = None,
                   budget: int = None) -> BghReport:
    """Samples instances at the lower-bound parameters and records both exact numbers per trial.

    Nothing is asserted about the isotropic side: the generic bound is only guaranteed over algebraically
    closed fields, so over GF(p) the fraction is an observation.
    """
    n, m = bgh_parameters(s, t)
    workers = int(Configurator.getConfig().getPropertyOr("randgen", "workers", workers) or 1)
    report = BghReport(s, t, p, n, m)
    if trials <= 0:
        return report
    LOGGER.info("Running %d trials at s=%d, t=%d over GF(%d): n=%d, m=%d, bound %d", trials, s, t, p, n, m,
                bgh_bound(n, m))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda i: _run_trial(s, t, p, seed, i, budget), range(trials)))
    else:
        rows = [_run_trial(s, t, p, seed, i, budget) for i in range(trials)]
    report.rows.extend(rows)
    LOGGER.info("%.2f of trials have isotropic number at most %d", report.isotropic_below_s, s - 1)
    return report
