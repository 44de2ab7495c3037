"""Dense exact linear algebra over GF(p).

Matrices are plain int64 numpy arrays whose entries are already reduced mod p; every function takes the
FieldCtx first and returns fresh arrays. Subspaces are column-spanning bases with a canonical form (the RREF
of the transposed basis), which is what lets the oracle and the tests compare subspaces directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from algebra.field import FieldCtx
from util.RamseyErrors import NotContained, ShapeMismatch

Mat = np.ndarray


def identity(n: int) -> Mat:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> Mat:
    return np.zeros((rows, cols), dtype=np.int64)


def _as_matrix(ctx: FieldCtx, m) -> Mat:
    arr = ctx.reduce(m)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got an array of shape {arr.shape}")
    return arr


def rref(ctx: FieldCtx, m) -> Tuple[Mat, List[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns. First nonzero entry pivots."""
    a = _as_matrix(ctx, m)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = ctx.scale(a[r], ctx.inv_scalar(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = np.mod(a[hit] - np.outer(col[hit], a[r]), ctx.p)
        pivots.append(c)
        r += 1
    return a, pivots


def rank(ctx: FieldCtx, m) -> int:
    arr = np.asarray(m)
    if arr.size == 0:
        return 0
    return len(rref(ctx, arr)[1])


def determinant(ctx: FieldCtx, m) -> int:
    a = _as_matrix(ctx, m)
    n, cols = a.shape
    if n != cols:
        raise ShapeMismatch(f"determinant of a non-square {n}x{cols} matrix")
    det = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = -det
        det = (det * int(a[c, c])) % ctx.p
        factor = ctx.scale(a[c + 1:, c], ctx.inv_scalar(a[c, c]))
        if factor.size:
            a[c + 1:] = np.mod(a[c + 1:] - np.outer(factor, a[c]), ctx.p)
    return det % ctx.p


def solve(ctx: FieldCtx, a, b) -> Optional[np.ndarray]:
    """One solution x of a x = b (free variables zero), or None when the system is inconsistent."""
    a = _as_matrix(ctx, a)
    b = ctx.reduce(b).reshape(-1, 1)
    if b.shape[0] != a.shape[0]:
        raise ShapeMismatch(f"right-hand side has {b.shape[0]} rows, matrix has {a.shape[0]}")
    r, pivots = rref(ctx, np.hstack([a, b]))
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = r[row, n]
    return x


def congruence(ctx: FieldCtx, a, t) -> Mat:
    """t^T a t. Preserves the alternating property of a."""
    a = np.asarray(a)
    t = np.asarray(t)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"congruence needs a square matrix, got {a.shape}")
    if t.ndim != 2 or t.shape[0] != a.shape[0]:
        raise ShapeMismatch(f"transform of shape {t.shape} does not fit a {a.shape[0]}x{a.shape[0]} matrix")
    return ctx.matmul(ctx.matmul(t.T, a), t)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F^n given by an n x d basis of full column rank."""
    ctx: FieldCtx
    ambient_dim: int
    basis: Mat

    def __post_init__(self):
        basis = self.ctx.reduce(self.basis)
        if basis.ndim != 2 or basis.shape[0] != self.ambient_dim:
            raise ShapeMismatch(f"basis of shape {basis.shape} does not live in F^{self.ambient_dim}")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @cached_property
    def canonical(self) -> Mat:
        """Columns of the RREF of basis^T; equal subspaces have identical canonical forms."""
        if self.dim == 0:
            return zeros(self.ambient_dim, 0)
        r, pivots = rref(self.ctx, self.basis.T)
        canon = r[:len(pivots)].T.copy()
        canon.setflags(write=False)
        return canon

    def key(self) -> Tuple[int, int, bytes]:
        return (self.ambient_dim, self.dim, np.ascontiguousarray(self.canonical).tobytes())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self.key() == other.key()

    def __hash__(self):
        return hash((self.ctx.p,) + self.key())

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ctx}^{self.ambient_dim})"

    def vectors(self) -> List[np.ndarray]:
        return [self.basis[:, j].copy() for j in range(self.dim)]

    def contains(self, vectors) -> bool:
        vecs = np.asarray(vectors, dtype=np.int64)
        if vecs.ndim == 1:
            vecs = vecs.reshape(-1, 1)
        if vecs.size == 0:
            return True
        return rank(self.ctx, np.hstack([self.basis, vecs])) == self.dim

    def is_subspace_of(self, other: "Subspace") -> bool:
        return other.contains(self.basis)

    def truncate(self, d: int) -> "Subspace":
        """The span of the first d canonical basis vectors."""
        return Subspace(self.ctx, self.ambient_dim, self.canonical[:, :d])


def from_basis(ctx: FieldCtx, basis) -> Subspace:
    """Wraps a full column rank matrix; raises ShapeMismatch when the columns are dependent."""
    b = _as_matrix(ctx, basis) if np.asarray(basis).size else np.asarray(basis, dtype=np.int64)
    if b.ndim != 2:
        raise ShapeMismatch(f"basis must be a matrix, got shape {b.shape}")
    if rank(ctx, b) != b.shape[1]:
        raise ShapeMismatch("basis columns are linearly dependent")
    return Subspace(ctx, b.shape[0], b)


def span(ctx: FieldCtx, n: int, vectors: Iterable) -> Subspace:
    """Subspace spanned by arbitrary (possibly dependent) vectors of F^n."""
    rows = [ctx.reduce(v).reshape(-1) for v in vectors]
    if not rows:
        return zero_subspace(ctx, n)
    for v in rows:
        if v.shape[0] != n:
            raise ShapeMismatch(f"vector of length {v.shape[0]} in F^{n}")
    r, pivots = rref(ctx, np.vstack(rows))
    return Subspace(ctx, n, r[:len(pivots)].T.copy())


def column_span(ctx: FieldCtx, m) -> Subspace:
    m = np.asarray(m)
    return span(ctx, m.shape[0], [m[:, j] for j in range(m.shape[1])])


def whole_space(ctx: FieldCtx, n: int) -> Subspace:
    return Subspace(ctx, n, identity(n))


def zero_subspace(ctx: FieldCtx, n: int) -> Subspace:
    return Subspace(ctx, n, zeros(n, 0))


def coordinate_subspace(ctx: FieldCtx, n: int, indices: Sequence[int]) -> Subspace:
    """<e_i : i in indices> with 0-based indices."""
    return Subspace(ctx, n, identity(n)[:, sorted(indices)])


def kernel(ctx: FieldCtx, m) -> Subspace:
    """{v : m v = 0}; the dimension is cols - rank."""
    m = np.asarray(m)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return whole_space(ctx, cols)
    r, pivots = rref(ctx, m)
    pivotset = set(pivots)
    free = [c for c in range(cols) if c not in pivotset]
    basis = zeros(cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, c in enumerate(pivots):
            basis[c, k] = (-r[row, f]) % ctx.p
    return Subspace(ctx, cols, basis)


def orthogonal_complement(s: Subspace) -> Subspace:
    """S^perp under the standard dot product. Over GF(p) S and S^perp can intersect, so this is not a
    complement in the direct-sum sense."""
    return kernel(s.ctx, s.basis.T.reshape(s.dim, s.ambient_dim))


def complement_basis(inner: Subspace, outer: Subspace) -> Subspace:
    """R with inner + R = outer directly: the canonical basis vectors of outer that extend inner, chosen
    greedily left to right."""
    ctx = outer.ctx
    if inner.ambient_dim != outer.ambient_dim:
        raise ShapeMismatch(f"F^{inner.ambient_dim} and F^{outer.ambient_dim} do not match")
    if not inner.is_subspace_of(outer):
        raise NotContained(f"{inner} is not contained in {outer}")
    stacked = np.hstack([inner.basis, outer.canonical])
    _, pivots = rref(ctx, stacked)
    chosen = [c - inner.dim for c in pivots if c >= inner.dim]
    return Subspace(ctx, outer.ambient_dim, outer.canonical[:, chosen])


def independent_rows(ctx: FieldCtx, rows) -> bool:
    rows = np.asarray(rows)
    if rows.size == 0:
        return True
    return rank(ctx, rows) == rows.shape[0]


def meet_is_trivial(ctx: FieldCtx, *subspaces: Subspace) -> bool:
    """True when the sum of the subspaces is direct."""
    parts = [s.basis for s in subspaces if s.dim]
    if not parts:
        return True
    return rank(ctx, np.hstack(parts)) == sum(s.dim for s in subspaces)


def inverse(ctx: FieldCtx, m) -> Mat:
    m = _as_matrix(ctx, m)
    n = m.shape[0]
    if m.shape[1] != n:
        raise ShapeMismatch(f"inverse of a non-square {m.shape} matrix")
    r, pivots = rref(ctx, np.hstack([m, identity(n)]))
    if pivots[:n] != list(range(n)):
        raise ShapeMismatch("matrix is singular")
    return r[:, n:].copy()
