"""3-way arrays over GF(p).

data[i, j, k] is entry (i, j) of the k-th frontal slice; the tube fibre at (i, j) is data[i, j, :].
Indices in this module are 0-based. A ThreeWay is the one mutable type in the package: the normalization
and fibre-injection stages change it in place, and it keeps the product of every elementary transvection it
has seen so the caller can map coordinates back.
"""
from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, Sequence, Tuple

import numpy as np

from algebra import matrix
from algebra.altspace import AltSpace
from algebra.field import FieldCtx
from algebra.matrix import Mat
from util.RamseyErrors import IndexOutOfRange, ShapeMismatch
from util.RamseyLogging import getLogger

LOGGER = getLogger(__name__)


class ThreeWay():

    def __init__(self, ctx: FieldCtx, data: np.ndarray):
        data = ctx.reduce(data)
        if data.ndim != 3:
            raise ShapeMismatch(f"a 3-way array needs three axes, got shape {data.shape}")
        self.ctx = ctx
        self.data = data
        self.n1, self.n2, self.n3 = data.shape
        self._transform = matrix.identity(self.n1)
        self.operations = 0

    def __repr__(self):
        return f"ThreeWay({self.n1}x{self.n2}x{self.n3} over {self.ctx})"

    @property
    def transform(self) -> Mat:
        """Accumulated T: the current slices equal T^T A T for the slices the array was built from."""
        return self._transform.copy()

    def copy(self) -> "ThreeWay":
        dup = ThreeWay(self.ctx, self.data.copy())
        dup._transform = self._transform.copy()
        dup.operations = self.operations
        return dup

    def frontal_slice(self, k: int) -> Mat:
        if not 0 <= k < self.n3:
            raise IndexOutOfRange(f"slice {k} of {self.n3}")
        return self.data[:, :, k].copy()

    def frontal_slices(self) -> list:
        return [self.data[:, :, k].copy() for k in range(self.n3)]

    def tube_fibre(self, i: int, j: int) -> np.ndarray:
        if not (0 <= i < self.n1 and 0 <= j < self.n2):
            raise IndexOutOfRange(f"fibre ({i},{j}) outside {self.n1}x{self.n2}")
        return self.data[i, j, :].copy()

    def fibres(self, pairs: Iterable[Tuple[int, int]]) -> Mat:
        """Fibres at the given positions stacked as rows."""
        pairs = list(pairs)
        if not pairs:
            return matrix.zeros(0, self.n3)
        rows, cols = zip(*pairs)
        return self.data[list(rows), list(cols), :].copy()

    def fibres_independent(self, pairs: Sequence[Tuple[int, int]]) -> bool:
        pairs = list(pairs)
        if self.n3 < len(pairs):
            return False
        return matrix.independent_rows(self.ctx, self.fibres(pairs))

    def leading_block_complete(self, t: int) -> bool:
        """True iff the C(t,2) fibres f_{i,j}, i < j < t, are linearly independent."""
        if not 0 <= t <= self.n1:
            raise IndexOutOfRange(f"leading block of size {t} in a {self.n1}x{self.n2} array")
        if comb(t, 2) > self.n3:
            return False
        return self.fibres_independent(combinations(range(t), 2))

    def apply_paired_rowcol(self, src: int, dst: int, scalar) -> None:
        """Row dst += scalar * row src, then column dst += scalar * column src, in every frontal slice.

        This is the congruence by T = I + scalar * E_{src,dst}, so alternating slices stay alternating and
        the accumulated transform picks up T on the right.
        """
        for idx in (src, dst):
            if not 0 <= idx < self.n1:
                raise IndexOutOfRange(f"index {idx} outside 0..{self.n1 - 1}")
        if src == dst:
            raise IndexOutOfRange(f"row/column operation needs distinct indices, got {src} twice")
        if self.n1 != self.n2:
            raise ShapeMismatch(f"paired row/column operations need square slices, have {self.n1}x{self.n2}")
        c = int(scalar) % self.ctx.p
        if c == 0:
            return
        p = self.ctx.p
        self.data[dst, :, :] = np.mod(self.data[dst, :, :] + c * self.data[src, :, :], p)
        self.data[:, dst, :] = np.mod(self.data[:, dst, :] + c * self.data[:, src, :], p)
        self._transform[:, dst] = np.mod(self._transform[:, dst] + c * self._transform[:, src], p)
        self.operations += 1

    def to_altspace(self) -> AltSpace:
        return AltSpace(self.ctx, self.n1, tuple(self.frontal_slices()))


def from_altspace(a: AltSpace) -> ThreeWay:
    return ThreeWay(a.ctx, np.transpose(a.stack, (1, 2, 0)) if a.m else np.zeros((a.n, a.n, 0), dtype=np.int64))


def from_slices(ctx: FieldCtx, slices: Sequence) -> ThreeWay:
    if not slices:
        raise ShapeMismatch("cannot infer the slice shape from an empty list")
    return ThreeWay(ctx, np.stack([ctx.reduce(s) for s in slices], axis=2))
