"""Alternating matrix spaces A <= Lambda(n, F) and the alternating bilinear maps they package.

An AltSpace keeps its generators exactly as given (the construction picks individual generators, so they
are never replaced by a reduced basis); the independent subset is computed once, on demand, for space_dim.
Witnesses and their verification live here too, because verification only needs restrict and space_dim.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Sequence, Tuple, Union

import numpy as np

from algebra import matrix
from algebra.field import FieldCtx
from algebra.matrix import Mat, Subspace
from util.RamseyErrors import NotAlternating, ShapeMismatch
from util.util import WitnessKind
from util.RamseyLogging import getLogger

LOGGER = getLogger(__name__)


def elementary_alternating(n: int, i: int, j: int, ctx: FieldCtx) -> Mat:
    """A_{i,j} with 0-based i != j: +1 at (i, j), -1 at (j, i)."""
    a = matrix.zeros(n, n)
    a[i, j] = 1
    a[j, i] = (-1) % ctx.p
    return a


def alternating_violation(ctx: FieldCtx, a: Mat) -> str:
    """Empty string when a is alternating, otherwise a description of the first problem found.
    Over GF(2) the test below is symmetric-with-zero-diagonal, which is the v^T A v = 0 condition."""
    a = ctx.reduce(a)
    diag = np.flatnonzero(np.diagonal(a))
    if diag.size:
        k = int(diag[0])
        return f"nonzero diagonal entry {int(a[k, k])} at ({k + 1},{k + 1})"
    bad = np.argwhere(np.mod(a + a.T, ctx.p))
    if bad.size:
        i, j = (int(x) for x in bad[0])
        return f"entries ({i + 1},{j + 1})={int(a[i, j])} and ({j + 1},{i + 1})={int(a[j, i])} are not negatives"
    return ""


@dataclass(frozen=True, eq=False)
class AltSpace:
    ctx: FieldCtx
    n: int
    gens: Tuple[Mat, ...] = field(default_factory=tuple)

    def __post_init__(self):
        frozen = []
        for g in self.gens:
            g = self.ctx.reduce(g)
            if g.shape != (self.n, self.n):
                raise ShapeMismatch(f"generator of shape {g.shape} in Lambda({self.n})")
            g.setflags(write=False)
            frozen.append(g)
        object.__setattr__(self, "gens", tuple(frozen))

    @property
    def m(self) -> int:
        return len(self.gens)

    def __repr__(self):
        return f"AltSpace(n={self.n}, m={self.m}, over {self.ctx})"

    @cached_property
    def stack(self) -> np.ndarray:
        """Generators as one (m, n, n) array."""
        if not self.gens:
            return np.zeros((0, self.n, self.n), dtype=np.int64)
        return np.stack(self.gens)

    @cached_property
    def flattened(self) -> Mat:
        """One row per generator: its strict upper triangle."""
        iu = np.triu_indices(self.n, 1)
        return self.stack[:, iu[0], iu[1]].reshape(self.m, -1)

    @cached_property
    def cached_basis(self) -> Tuple[int, ...]:
        """Indices of an independent spanning subset of the generators, first-come."""
        if self.m == 0 or self.flattened.shape[1] == 0:
            return ()
        _, pivots = matrix.rref(self.ctx, self.flattened.T)
        return tuple(pivots)

    def evaluate(self, u, v) -> np.ndarray:
        return evaluate(self, u, v)


def from_bilinear_map(ctx: FieldCtx, n: int, m: int, frontal_slices: Sequence) -> AltSpace:
    """phi(u, v) = (u^T A_k v)_k given as its m frontal slices; each slice must be alternating."""
    if len(frontal_slices) != m:
        raise ShapeMismatch(f"expected {m} slices, got {len(frontal_slices)}")
    for k, a in enumerate(frontal_slices):
        a = np.asarray(a)
        if a.shape != (n, n):
            raise ShapeMismatch(f"slice {k} has shape {a.shape}, expected ({n}, {n})")
        problem = alternating_violation(ctx, a)
        if problem:
            raise NotAlternating(k, problem)
    return AltSpace(ctx, n, tuple(frontal_slices))


def zero_space(ctx: FieldCtx, n: int) -> AltSpace:
    return AltSpace(ctx, n, ())


def full_space(ctx: FieldCtx, n: int) -> AltSpace:
    """Every elementary A_{i,j}, i < j, i.e. phi of the complete graph; it spans Lambda(n)."""
    gens = tuple(elementary_alternating(n, i, j, ctx) for i in range(n) for j in range(i + 1, n))
    return AltSpace(ctx, n, gens)


def _basis_matrix(a: AltSpace, w: Union[Subspace, Mat]) -> Mat:
    basis = w.basis if isinstance(w, Subspace) else a.ctx.reduce(w)
    if basis.ndim != 2 or basis.shape[0] != a.n:
        raise ShapeMismatch(f"basis of shape {basis.shape} does not live in F^{a.n}")
    return basis


def restrict(a: AltSpace, w: Union[Subspace, Mat]) -> AltSpace:
    """A|_W = {T^T A T} for a basis matrix T of W, on F^{dim W}."""
    t = _basis_matrix(a, w)
    d = t.shape[1]
    if a.m == 0:
        return AltSpace(a.ctx, d, ())
    restricted = a.ctx.matmul(a.ctx.matmul(t.T, a.stack), t)
    return AltSpace(a.ctx, d, tuple(restricted[k] for k in range(a.m)))


def space_dim(a: AltSpace) -> int:
    return len(a.cached_basis)


def evaluate(a: AltSpace, u, v) -> np.ndarray:
    u = a.ctx.reduce(u).reshape(-1)
    v = a.ctx.reduce(v).reshape(-1)
    if a.m == 0:
        return np.zeros(0, dtype=np.int64)
    av = a.ctx.matmul(a.stack, v)
    return a.ctx.matmul(av, u)


def images(a: AltSpace, v) -> Mat:
    """Rows A_1 v, ..., A_m v."""
    v = a.ctx.reduce(v).reshape(-1)
    if v.shape[0] != a.n:
        raise ShapeMismatch(f"vector of length {v.shape[0]} in F^{a.n}")
    if a.m == 0:
        return matrix.zeros(0, a.n)
    return a.ctx.matmul(a.stack, v)


def degree(a: AltSpace, v) -> int:
    """dim <A v : A in A>."""
    return matrix.rank(a.ctx, images(a, v))


def radical_of_set(a: AltSpace, s: Union[Subspace, Mat]) -> Subspace:
    """rad_A(S) = {u : u^T A v = 0 for every generator A and every v in S}."""
    basis = _basis_matrix(a, s)
    d = basis.shape[1]
    if a.m == 0 or d == 0:
        return matrix.whole_space(a.ctx, a.n)
    prod = a.ctx.matmul(a.stack, basis)
    rows = np.transpose(prod, (0, 2, 1)).reshape(a.m * d, a.n)
    return matrix.kernel(a.ctx, rows)


def radical(a: AltSpace) -> Subspace:
    return radical_of_set(a, matrix.whole_space(a.ctx, a.n))


def is_isotropic(a: AltSpace, w: Union[Subspace, Mat]) -> bool:
    return space_dim(restrict(a, w)) == 0


def is_complete(a: AltSpace, w: Union[Subspace, Mat]) -> bool:
    d = _basis_matrix(a, w).shape[1]
    return space_dim(restrict(a, w)) == comb(d, 2)


@dataclass(frozen=True)
class Witness:
    kind: WitnessKind
    basis: Subspace

    @property
    def dim(self) -> int:
        return self.basis.dim


@dataclass(frozen=True)
class WitnessReport:
    ok: bool
    kind: WitnessKind
    dim: int
    measured_dim: int
    required_dim: int
    reason: str = ""


def verify_witness(a: AltSpace, w: Witness, s: int, t: int) -> WitnessReport:
    """Independent check of a claimed witness; uses only restrict and space_dim, never the solver."""
    kind = WitnessKind(w.kind)
    required = s if kind is WitnessKind.ISOTROPIC else t
    basis = w.basis.basis
    dim = basis.shape[1]
    if basis.shape[0] != a.n:
        return WitnessReport(False, kind, dim, -1, required, f"basis lives in F^{basis.shape[0]}, space is on F^{a.n}")
    if matrix.rank(a.ctx, basis) != dim:
        return WitnessReport(False, kind, dim, -1, required, "basis columns are linearly dependent")
    measured = space_dim(restrict(a, basis))
    if kind is WitnessKind.ISOTROPIC:
        ok = dim >= s and measured == 0
        reason = "" if ok else (f"dimension {dim} < {s}" if dim < s else f"restriction has dimension {measured}")
    else:
        ok = dim >= t and measured == comb(dim, 2)
        reason = "" if ok else (f"dimension {dim} < {t}" if dim < t
                                else f"restriction has dimension {measured}, expected {comb(dim, 2)}")
    LOGGER.debug("Verified %s witness of dimension %d: measured %d, ok=%s", kind.value, dim, measured, ok)
    return WitnessReport(ok, kind, dim, measured, required, reason)
