"""Exact arithmetic in GF(p) for a prime 2 <= p < 2^31.

FieldCtx is the scalar layer and also owns the reduction helpers for the int64 numpy arrays that the
rest of the algebra package passes around. Felt is the immutable scalar type used at the API surface.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from util.Configurator import Configurator
from util.RamseyErrors import NotPrime, ZeroInverse

_INT64_LIMIT = 2**63 - 1
#witnesses that make Miller-Rabin deterministic for every n < 3,215,031,751
_MILLER_RABIN_BASES = (2, 3, 5, 7)


def is_prime(n: int) -> bool:
    """Deterministic primality test for the supported range."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MILLER_RABIN_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


class ArithOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    NEG = "neg"


@dataclass(frozen=True)
class FieldCtx:
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, (int, np.integer)):
            raise NotPrime(f"modulus must be an integer, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))
        maxprime = Configurator.getConfig().getProperty("field", "max_prime") or 2**31 - 1
        if self.p > maxprime:
            raise NotPrime(f"modulus {self.p} is above the supported bound {maxprime}")
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def __repr__(self):
        return f"GF({self.p})"

    def elt(self, value) -> Felt:
        return Felt(int(value) % self.p, self)

    def zero(self) -> Felt:
        return Felt(0, self)

    def one(self) -> Felt:
        return Felt(1, self)

    def inv_scalar(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def half(self) -> int:
        return self.inv_scalar(2)

    def reduce(self, array) -> np.ndarray:
        """Returns a fresh int64 array with every entry in [0, p)."""
        arr = np.asarray(array)
        if arr.dtype == object:
            arr = np.vectorize(lambda x: int(x) % self.p, otypes=[object])(arr)
        return np.mod(arr.astype(np.int64, copy=True), self.p) if arr.size else arr.astype(np.int64)

    def _int64_safe(self, inner: int) -> bool:
        if not Configurator.getConfig().getProperty("matrix", "int64_safe_products"):
            return False
        return max(inner, 1) * (self.p - 1) ** 2 <= _INT64_LIMIT

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of two reduced matrices, reduced mod p. Falls back to Python integers whenever the
        int64 accumulator could overflow."""
        a = np.asarray(a)
        b = np.asarray(b)
        inner = a.shape[-1] if a.ndim else 1
        if self._int64_safe(inner):
            return np.mod(a.astype(np.int64) @ b.astype(np.int64), self.p)
        prod = a.astype(object) @ b.astype(object)
        return np.mod(prod, self.p).astype(np.int64)

    def scale(self, a: np.ndarray, c: int) -> np.ndarray:
        # entries and c are both below 2^31 so the product fits
        return np.mod(np.asarray(a, dtype=np.int64) * (int(c) % self.p), self.p)


@dataclass(frozen=True)
class Felt:
    value: int
    ctx: FieldCtx

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.p:
            raise ValueError(f"{self.value} is not reduced mod {self.ctx.p}")

    def _coerce(self, other) -> int:
        if isinstance(other, Felt):
            if other.ctx.p != self.ctx.p:
                raise ValueError(f"cannot mix GF({self.ctx.p}) and GF({other.ctx.p})")
            return other.value
        return int(other) % self.ctx.p

    def __add__(self, other):
        return Felt((self.value + self._coerce(other)) % self.ctx.p, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        return Felt((self.value - self._coerce(other)) % self.ctx.p, self.ctx)

    def __rsub__(self, other):
        return Felt((self._coerce(other) - self.value) % self.ctx.p, self.ctx)

    def __mul__(self, other):
        return Felt((self.value * self._coerce(other)) % self.ctx.p, self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return Felt((-self.value) % self.ctx.p, self.ctx)

    def __truediv__(self, other):
        return self * self.ctx.inv_scalar(self._coerce(other))

    def __eq__(self, other):
        if isinstance(other, Felt):
            return self.ctx.p == other.ctx.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.ctx.p})"

    def inverse(self) -> Felt:
        return Felt(self.ctx.inv_scalar(self.value), self.ctx)


def arith(ctx: FieldCtx, op, a, b=None) -> Felt:
    """add, sub, mul or neg on two field elements (b is ignored for neg)."""
    op = ArithOp(op)
    x = ctx.elt(a)
    if op is ArithOp.NEG:
        return -x
    y = ctx.elt(b)
    if op is ArithOp.ADD:
        return x + y
    if op is ArithOp.SUB:
        return x - y
    return x * y


def inv(ctx: FieldCtx, a) -> Felt:
    return Felt(ctx.inv_scalar(int(a)), ctx)
