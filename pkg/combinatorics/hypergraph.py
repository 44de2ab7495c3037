"""l-uniform hypergraphs and the alternating multilinear maps built from them.

Vertices are 0-based here; the text format is 1-based and transfer.instancefiles converts. For a hypergraph
H with edges E_1 < ... < E_m (lexicographic), coordinate k of phi_H(v_1, ..., v_l) is the determinant of the
l x l submatrix of [v_1 ... v_l] on the rows E_k. For l = 2 that is u^T A_{i,j} v with A_{i,j} elementary.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

from algebra import altspace, matrix
from algebra.altspace import AltSpace
from algebra.field import FieldCtx
from algebra.matrix import Subspace
from combinatorics import oracle
from util.Configurator import Configurator
from util.RamseyErrors import BudgetExceeded, IndexOutOfRange, NotGraph, ShapeMismatch, TooLarge
from util.RamseyLogging import getLogger

LOGGER = getLogger(__name__)

Edge = Tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    n: int
    ell: int
    edges: Tuple[Edge, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << v for v in e) for e in self.edges)


def make_hypergraph(n: int, ell: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Validates, sorts each edge, deduplicates and orders the edge list lexicographically."""
    if ell < 2:
        raise ShapeMismatch(f"uniformity must be at least 2, got {ell}")
    if n < 0:
        raise ShapeMismatch(f"negative vertex count {n}")
    clean = set()
    for e in edges:
        e = tuple(sorted(int(v) for v in e))
        if len(e) != ell or len(set(e)) != ell:
            raise ShapeMismatch(f"edge {e} is not a set of {ell} distinct vertices")
        if e[0] < 0 or e[-1] >= n:
            raise IndexOutOfRange(f"edge {e} has a vertex outside 0..{n - 1}")
        clean.add(e)
    return Hypergraph(n, ell, tuple(sorted(clean)))


def from_graph_edges(n: int, edges: Iterable[Tuple[int, int]]) -> Hypergraph:
    return make_hypergraph(n, 2, edges)


def complete_graph(n: int) -> Hypergraph:
    return make_hypergraph(n, 2, combinations(range(n), 2))


def path_graph(n: int) -> Hypergraph:
    return make_hypergraph(n, 2, ((i, i + 1) for i in range(n - 1)))


def edgeless(n: int, ell: int = 2) -> Hypergraph:
    return make_hypergraph(n, ell, ())


def all_graphs(n: int) -> Iterator[Hypergraph]:
    """Every labelled simple graph on n vertices, by bitmask over the C(n,2) possible edges."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield make_hypergraph(n, 2, (pairs[k] for k in range(len(pairs)) if mask >> k & 1))


@dataclass(frozen=True)
class MultilinearMap:
    """phi_H, kept as its hypergraph. Nothing of size n^l is ever built."""
    source: Hypergraph

    @property
    def ell(self) -> int:
        return self.source.ell

    @property
    def n(self) -> int:
        return self.source.n

    @property
    def m(self) -> int:
        return self.source.m

    def evaluate(self, ctx: FieldCtx, vectors: Sequence) -> np.ndarray:
        """(det V[E_k, :])_k for V = [v_1 ... v_l]."""
        if len(vectors) != self.ell:
            raise ShapeMismatch(f"phi takes {self.ell} arguments, got {len(vectors)}")
        v = np.column_stack([ctx.reduce(x).reshape(-1) for x in vectors])
        if v.shape[0] != self.n:
            raise ShapeMismatch(f"arguments live in F^{v.shape[0]}, map is on F^{self.n}")
        if self.m == 0:
            return np.zeros(0, dtype=np.int64)
        if self.ell == 2:
            e = np.array(self.source.edges)
            x, y = v[:, 0], v[:, 1]
            return np.mod(x[e[:, 0]] * y[e[:, 1]] - x[e[:, 1]] * y[e[:, 0]], ctx.p)
        return np.array([matrix.determinant(ctx, v[list(e), :]) for e in self.source.edges], dtype=np.int64)

    def kills(self, ctx: FieldCtx, basis: np.ndarray) -> bool:
        """True iff phi vanishes on every l-subset of the columns of basis."""
        cols = [basis[:, j] for j in range(basis.shape[1])]
        for subset in combinations(range(len(cols)), self.ell):
            if np.any(self.evaluate(ctx, [cols[j] for j in subset])):
                return False
        return True


def lovasz_map(h: Hypergraph) -> MultilinearMap:
    return MultilinearMap(h)


def to_altspace(h: Hypergraph, ctx: FieldCtx) -> AltSpace:
    """One elementary alternating generator A_{i,j} per edge, in edge order."""
    if h.ell != 2:
        raise NotGraph(f"only 2-uniform hypergraphs give alternating matrix spaces, this one is {h.ell}-uniform")
    return AltSpace(ctx, h.n, tuple(altspace.elementary_alternating(h.n, i, j, ctx) for i, j in h.edges))


def _independent(mask: int, edge_masks: Sequence[int]) -> bool:
    return all(e & mask != e for e in edge_masks)


def maximum_independent_set(h: Hypergraph, cap: int = None) -> Tuple[int, ...]:
    """The first independent set of maximum size in combinations order."""
    cap = Configurator.getConfig().getPropertyOr("hypergraph", "independence_cap", cap)
    if h.n > cap:
        raise TooLarge(f"{h.n} vertices is above the exhaustive cap {cap}")
    edge_masks = h.masks()
    if not edge_masks:
        return tuple(range(h.n))
    #an independent set of size k+1 contains one of size k, so stop at the first size that fails
    best = ()
    for k in range(1, h.n + 1):
        found = None
        for cand in combinations(range(h.n), k):
            if _independent(sum(1 << v for v in cand), edge_masks):
                found = cand
                break
        if found is None:
            break
        best = found
    return best


def independence_number(h: Hypergraph, cap: int = None) -> int:
    return len(maximum_independent_set(h, cap))


def coordinate_witness(h: Hypergraph, independent_set: Iterable[int], ctx: FieldCtx) -> Subspace:
    """<e_i : i in S>; totally isotropic for phi_H whenever S is independent in H."""
    s = sorted(set(independent_set))
    for v in s:
        if not 0 <= v < h.n:
            raise IndexOutOfRange(f"vertex {v} outside 0..{h.n - 1}")
    return matrix.coordinate_subspace(ctx, h.n, s)


def isotropic_number_multilinear(phi: MultilinearMap, q_ctx: FieldCtx, cap: int = None) -> int:
    """Largest d such that some d-dimensional subspace kills phi on every l-subset of its basis."""
    cap = int(Configurator.getConfig().getPropertyOr("hypergraph", "isotropic_budget", cap))
    n, ell = phi.n, phi.ell
    dims = range(n, ell - 1, -1)
    needed = sum(oracle.count_subspaces(q_ctx.p, n, d) for d in dims)
    if needed > cap:
        raise BudgetExceeded(needed, cap, "multilinear isotropic number")
    for d in dims:
        for b in oracle.SubspaceEnumerator(q_ctx, n, d).bases():
            if phi.kills(q_ctx, b):
                return d
    # fewer than l basis vectors: nothing to evaluate
    return min(n, ell - 1)


@dataclass(frozen=True)
class PropAlphaReport:
    alpha_h: int
    alpha_phi: int
    equal: bool


def check_prop_alpha(h: Hypergraph, q_ctx: FieldCtx, cap: int = None) -> PropAlphaReport:
    """alpha(H) against alpha(phi_H) over GF(q), both by exhaustion."""
    alpha_h = independence_number(h)
    alpha_phi = isotropic_number_multilinear(lovasz_map(h), q_ctx, cap)
    if alpha_h != alpha_phi:
        LOGGER.error("alpha(H)=%d but alpha(phi_H)=%d for %s over %s", alpha_h, alpha_phi, h, q_ctx)
    return PropAlphaReport(alpha_h, alpha_phi, alpha_h == alpha_phi)
