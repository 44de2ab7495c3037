"""Brute-force ground truth for tiny instances.

Every d-dimensional subspace of GF(q)^n has exactly one basis in reduced row echelon form, so enumerating
pivot profiles (in itertools.combinations order) and, inside each profile, the free entries (in
itertools.product order) visits each subspace once without any deduplication memory.
"""
from __future__ import annotations

from itertools import combinations, product
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from algebra import altspace, matrix
from algebra.altspace import AltSpace, Witness
from algebra.field import FieldCtx
from algebra.matrix import Subspace
from util.Configurator import Configurator
from util.InstrumentationStatistics import InstrumentationStatistics as stats
from util.InstrumentationStatistics import Statistic_Event_Types
from util.RamseyErrors import BudgetExceeded, PreconditionFailed
from util.RamseyLogging import getLogger
from util.util import WitnessKind


def get_logger():
    return getLogger(__name__)


def count_subspaces(q: int, n: int, d: int) -> int:
    """Gaussian binomial [n choose d]_q."""
    if d < 0 or d > n:
        return 0
    num = 1
    den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _budget(budget: Optional[int]) -> int:
    return int(Configurator.getConfig().getPropertyOr("oracle", "enumeration_budget", budget))


def _check_budget(needed: int, budget: Optional[int], what: str):
    limit = _budget(budget)
    if needed > limit:
        raise BudgetExceeded(needed, limit, what)


class SubspaceEnumerator():
    """Yields every d-dimensional subspace of GF(q)^n once, as an n x d basis (the transposed RREF)."""

    def __init__(self, ctx: FieldCtx, n: int, d: int):
        if not 0 <= d <= n:
            raise PreconditionFailed(f"no {d}-dimensional subspaces in F^{n}")
        self.ctx = ctx
        self.q = ctx.p
        self.n = n
        self.d = d

    def __len__(self):
        return count_subspaces(self.q, self.n, self.d)

    def profiles(self) -> Iterator[Tuple[int, ...]]:
        return combinations(range(self.n), self.d)

    @staticmethod
    def free_positions(pivots: Sequence[int], n: int) -> List[Tuple[int, int]]:
        """(row, column) entries of an RREF matrix with the given pivots that may take any value."""
        pivotset = set(pivots)
        return [(i, j) for i, piv in enumerate(pivots) for j in range(piv + 1, n) if j not in pivotset]

    def iter_profile(self, pivots: Sequence[int]) -> Iterator[np.ndarray]:
        """Bases (n x d) of every subspace whose RREF has the given pivot columns."""
        base = matrix.zeros(self.d, self.n)
        for i, piv in enumerate(pivots):
            base[i, piv] = 1
        free = self.free_positions(pivots, self.n)
        if not free:
            yield base.T.copy()
            return
        rows = [f[0] for f in free]
        cols = [f[1] for f in free]
        for values in product(range(self.q), repeat=len(free)):
            m = base.copy()
            m[rows, cols] = values
            yield m.T.copy()

    def bases(self) -> Iterator[np.ndarray]:
        for pivots in self.profiles():
            yield from self.iter_profile(pivots)

    def __iter__(self) -> Iterator[Subspace]:
        for b in self.bases():
            yield Subspace(self.ctx, self.n, b)


def projective_points(ctx: FieldCtx, n: int) -> Iterator[np.ndarray]:
    """One representative (first nonzero entry 1) of every line through the origin."""
    for b in SubspaceEnumerator(ctx, n, 1).bases():
        yield b[:, 0]


def _search(a: AltSpace, d: int, accept) -> Optional[np.ndarray]:
    evt = stats.getStatistics().timeEventStart(Statistic_Event_Types.EVENT_ENUMERATE)
    try:
        for b in SubspaceEnumerator(a.ctx, a.n, d).bases():
            if accept(b):
                return b
        return None
    finally:
        stats.getStatistics().timeEventEnd(evt)


def _isotropic(a: AltSpace):
    return lambda b: altspace.is_isotropic(a, b)


def _complete(a: AltSpace):
    return lambda b: altspace.is_complete(a, b)


def find_isotropic_subspace(a: AltSpace, d: int, budget: int = None) -> Optional[Witness]:
    """First d-dimensional totally-isotropic subspace in enumeration order, or None."""
    _check_budget(count_subspaces(a.ctx.p, a.n, d), budget, f"isotropic search in dimension {d}")
    b = _search(a, d, _isotropic(a))
    return None if b is None else Witness(WitnessKind.ISOTROPIC, Subspace(a.ctx, a.n, b))


def find_complete_subspace(a: AltSpace, d: int, budget: int = None) -> Optional[Witness]:
    """First d-dimensional complete subspace in enumeration order, or None."""
    if comb(d, 2) > altspace.space_dim(a) or d > a.n:
        return None
    _check_budget(count_subspaces(a.ctx.p, a.n, d), budget, f"complete search in dimension {d}")
    b = _search(a, d, _complete(a))
    return None if b is None else Witness(WitnessKind.COMPLETE, Subspace(a.ctx, a.n, b))


def isotropic_number_exact(a: AltSpace, budget: int = None) -> int:
    """alpha(A): the largest dimension of a totally-isotropic subspace."""
    q = a.ctx.p
    _check_budget(sum(count_subspaces(q, a.n, d) for d in range(2, a.n + 1)), budget, "isotropic number")
    for d in range(a.n, 1, -1):
        if _search(a, d, _isotropic(a)) is not None:
            get_logger().debug("Isotropic number of %s is %d", a, d)
            return d
    # every line is isotropic
    return min(a.n, 1)


def complete_number_exact(a: AltSpace, budget: int = None) -> int:
    """Largest dimension of a complete subspace, 0 when there is none of dimension 2 or more."""
    q = a.ctx.p
    sdim = altspace.space_dim(a)
    dims = [d for d in range(2, a.n + 1) if comb(d, 2) <= sdim]
    _check_budget(sum(count_subspaces(q, a.n, d) for d in dims), budget, "complete number")
    for d in reversed(dims):
        if _search(a, d, _complete(a)) is not None:
            get_logger().debug("Complete number of %s is %d", a, d)
            return d
    return 0


def min_degree_exact(a: AltSpace, budget: int = None) -> Tuple[int, np.ndarray]:
    """The minimum degree over nonzero vectors and the first vector attaining it."""
    if a.n == 0:
        raise PreconditionFailed("F^0 has no nonzero vectors")
    _check_budget(a.ctx.p ** a.n, budget, "minimum degree sweep")
    evt = stats.getStatistics().timeEventStart(Statistic_Event_Types.EVENT_ENUMERATE)
    best = None
    arg = None
    try:
        for v in projective_points(a.ctx, a.n):
            deg = altspace.degree(a, v)
            if best is None or deg < best:
                best, arg = deg, v
                if best == 0:
                    break
    finally:
        stats.getStatistics().timeEventEnd(evt)
    return best, arg


def is_anisotropic(a: AltSpace, w, budget: int = None) -> bool:
    """True iff dim w >= 2 and phi(x, y) != 0 for every independent pair x, y in w.

    Checking one basis pair per 2-dimensional subspace is enough: any other basis of the same plane
    changes phi(x, y) by a nonzero determinant.
    """
    sub = w if isinstance(w, Subspace) else matrix.from_basis(a.ctx, w)
    k = sub.dim
    if k < 2:
        return False
    _check_budget(count_subspaces(a.ctx.p, k, 2), budget, "anisotropy check")
    restricted = altspace.restrict(a, sub)
    if restricted.m == 0:
        return False
    for b in SubspaceEnumerator(a.ctx, k, 2).bases():
        if not np.any(restricted.evaluate(b[:, 0], b[:, 1])):
            return False
    return True


def anisotropic_number_exact(a: AltSpace, budget: int = None) -> int:
    """Largest dimension of an anisotropic subspace, 0 when there is none of dimension 2 or more."""
    q = a.ctx.p
    needed = sum(count_subspaces(q, a.n, d) * count_subspaces(q, d, 2) for d in range(2, a.n + 1))
    _check_budget(needed, budget, "anisotropic number")
    for d in range(a.n, 1, -1):
        found = _search(a, d, lambda b: is_anisotropic(a, Subspace(a.ctx, a.n, b), budget=needed))
        if found is not None:
            return d
    return 0
