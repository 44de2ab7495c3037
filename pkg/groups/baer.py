"""Class-2 exponent-p groups from alternating bilinear maps over GF(p), p odd.

The group on F^n x F^m has product (v, u)(v', u') = (v + v', u + u' + phi(v, v')/2). Its commutator
[x, y] = x^-1 y^-1 x y is (0, phi(v, v')), so abelian subgroups generated by lifts (b, 0) correspond to
totally-isotropic spaces and lifts of a complete k-space generate a copy of the relatively free group of
order p^(k + C(k,2)).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, List, Optional, Set, Tuple

import numpy as np

from algebra import altspace, matrix
from algebra.altspace import AltSpace, Witness
from algebra.field import FieldCtx
from combinatorics import randgen
from util.Configurator import Configurator
from util.RamseyErrors import BudgetExceeded, EvenCharacteristic, InvariantViolation
from util.RamseyLogging import getLogger
from util.util import WitnessKind

LOGGER = getLogger(__name__)


@dataclass(frozen=True)
class Element:
    v: Tuple[int, ...]
    u: Tuple[int, ...]


def _config(key, override):
    return Configurator.getConfig().getPropertyOr("baer", key, override)


class BaerGroup():

    def __init__(self, phi: AltSpace):
        self.phi = phi
        self.ctx = phi.ctx
        self.p = phi.ctx.p
        self.n = phi.n
        self.m = phi.m
        self._half = self.ctx.half()

    def __repr__(self):
        return f"BaerGroup(order {self.p}^{self.n + self.m} from {self.phi})"

    @property
    def order(self) -> int:
        return self.p ** (self.n + self.m)

    def form(self, v, w) -> np.ndarray:
        if self.m == 0:
            return np.zeros(0, dtype=np.int64)
        return self.phi.evaluate(np.asarray(v, dtype=np.int64), np.asarray(w, dtype=np.int64))

    def element(self, v, u=None) -> Element:
        v = tuple(int(x) % self.p for x in v)
        u = tuple(int(x) % self.p for x in (u if u is not None else [0] * self.m))
        return Element(v, u)

    def identity(self) -> Element:
        return Element((0,) * self.n, (0,) * self.m)

    def mul(self, x: Element, y: Element) -> Element:
        p = self.p
        v = tuple((a + b) % p for a, b in zip(x.v, y.v))
        f = self.form(x.v, y.v)
        u = tuple((a + b + self._half * int(c)) % p for a, b, c in zip(x.u, y.u, f)) if self.m else ()
        return Element(v, u)

    def inverse(self, x: Element) -> Element:
        p = self.p
        return Element(tuple((-a) % p for a in x.v), tuple((-a) % p for a in x.u))

    def power(self, x: Element, k: int) -> Element:
        acc = self.identity()
        for _ in range(k):
            acc = self.mul(acc, x)
        return acc

    def commutator(self, x: Element, y: Element) -> Element:
        return self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y))

    def lift(self, v) -> Element:
        return self.element(v)

    def generators(self) -> List[Element]:
        """Lifts of the standard basis of F^n followed by the central basis elements."""
        eye_n = matrix.identity(self.n)
        eye_m = matrix.identity(self.m)
        gens = [self.element(eye_n[i], None) for i in range(self.n)]
        gens += [self.element([0] * self.n, eye_m[k]) for k in range(self.m)]
        return gens

    def elements(self) -> Iterator[Element]:
        for v in product(range(self.p), repeat=self.n):
            for u in product(range(self.p), repeat=self.m):
                yield Element(v, u)

    @cached_property
    def commutator_span(self) -> int:
        """dim of the span of phi(F^n, F^n) in F^m."""
        return altspace.space_dim(self.phi)

    def sample(self, count: int, seed: int) -> List[Element]:
        rng = randgen.stream(seed, 0, 0)
        draws = rng.integers(0, self.p, size=(count, self.n + self.m))
        return [Element(tuple(int(x) for x in row[:self.n]), tuple(int(x) for x in row[self.n:])) for row in draws]


def build_group(phi: AltSpace, ctx: FieldCtx = None, budget: int = None) -> BaerGroup:
    ctx = ctx or phi.ctx
    if ctx.p == 2:
        raise EvenCharacteristic("the Baer product needs 1/2, which does not exist in GF(2)")
    if ctx.p != phi.ctx.p:
        raise EvenCharacteristic(f"phi lives over {phi.ctx}, group requested over {ctx}")
    budget = int(_config("group_budget", budget))
    order = ctx.p ** (phi.n + phi.m)
    if order > budget:
        raise BudgetExceeded(order, budget, "group construction")
    g = BaerGroup(phi)
    e = g.identity()
    for x in g.generators():
        if g.mul(e, x) != x or g.mul(x, e) != x or g.mul(x, g.inverse(x)) != e:
            raise InvariantViolation(f"identity or inverse law fails at generator {x}")
    LOGGER.debug("Built %s", g)
    return g


@dataclass(frozen=True)
class LawsReport:
    associative: bool
    class_two: bool
    exponent_p: bool
    commutator_matches: bool
    quotient_depends_only_on_v: bool
    checked_elements: int

    @property
    def ok(self) -> bool:
        return self.associative and self.class_two and self.exponent_p and self.commutator_matches


def _test_elements(g: BaerGroup, exhaustive_limit: int, samples: int, seed: int) -> List[Element]:
    if g.order <= exhaustive_limit:
        return list(g.elements())
    return g.generators() + g.sample(samples, seed)


def check_laws(g: BaerGroup, exhaustive_limit: int = None, samples: int = None, seed: int = None) -> LawsReport:
    """Associativity and class 2 on generator triples plus the test elements, exponent p on every test
    element, and [(e_i,0),(e_j,0)] = (0, phi(e_i,e_j)) on every basis pair."""
    exhaustive_limit = int(_config("exhaustive_limit", exhaustive_limit))
    samples = int(_config("exponent_samples", samples))
    seed = int(_config("sample_seed", seed))
    pool = _test_elements(g, exhaustive_limit, samples, seed)
    gens = g.generators()
    e = g.identity()

    triples = list(product(gens, repeat=3))
    if len(pool) <= 27:
        triples += list(product(pool, repeat=3))
    else:
        triples += [(pool[i], pool[(i + 1) % len(pool)], pool[(i + 2) % len(pool)]) for i in range(len(pool))]
    associative = all(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)) for x, y, z in triples)
    class_two = all(g.commutator(g.commutator(x, y), z) == e for x, y, z in triples)
    exponent_p = all(g.power(x, g.p) == e for x in pool)

    eye = matrix.identity(g.n)
    commutator_matches = True
    for i, j in combinations(range(g.n), 2):
        got = g.commutator(g.lift(eye[i]), g.lift(eye[j]))
        want = g.element([0] * g.n, g.form(eye[i], eye[j]))
        if got != want:
            LOGGER.error("[e_%d, e_%d] = %s, expected %s", i + 1, j + 1, got, want)
            commutator_matches = False
    quotient = _quotient_depends_only_on_v(g, pool[:samples])
    return LawsReport(associative, class_two, exponent_p, commutator_matches, quotient, len(pool))


def _quotient_depends_only_on_v(g: BaerGroup, pool: List[Element], budget: int = None) -> bool:
    """x and x(0, u) share a coset of [G,G] for every test element x and central basis element (0, u)."""
    lifts = g.generators()[:g.n]
    derived = subgroup_closure(g, [g.commutator(x, y) for x, y in combinations(lifts, 2)], budget)
    central = g.generators()[g.n:]
    return all(g.mul(g.inverse(x), g.mul(x, z)) in derived for x in pool for z in central)


def subgroup_closure(g: BaerGroup, generators: Iterable[Element], budget: int = None) -> Set[Element]:
    """The subgroup generated by the given elements, by breadth-first closure under right multiplication."""
    budget = int(_config("group_budget", budget))
    gens = list(generators)
    seen = {g.identity()}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for h in gens:
            y = g.mul(x, h)
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise BudgetExceeded(len(seen), budget, "subgroup closure")
                queue.append(y)
    return seen


@dataclass(frozen=True)
class FreeGroupTarget:
    """F_{p,2,t}: the relatively free class-2 exponent-p group on t generators."""
    p: int
    t: int

    @property
    def order(self) -> int:
        return self.p ** (self.t + comb(self.t, 2))

    def normal_forms(self) -> Iterator[Tuple[int, ...]]:
        """Exponent tuples (a_1..a_t, c_12, c_13, ..., c_{t-1,t}) of x_1^a_1 ... x_t^a_t prod [x_i,x_j]^c_ij."""
        return product(range(self.p), repeat=self.t + comb(self.t, 2))

    def realize(self, budget: int = None) -> Set[Element]:
        """Evaluates every normal form in the Baer group of the universal map on F^t; the set of results
        has size order exactly when distinct normal forms give distinct elements."""
        budget = int(_config("group_budget", budget))
        if self.order > budget:
            raise BudgetExceeded(self.order, budget, "normal form enumeration")
        ctx = FieldCtx(self.p)
        g = build_group(altspace.full_space(ctx, self.t), budget=budget)
        eye = matrix.identity(self.t)
        xs = [g.lift(eye[i]) for i in range(self.t)]
        comms = [g.commutator(xs[i], xs[j]) for i, j in combinations(range(self.t), 2)]
        seen = set()
        for exps in self.normal_forms():
            acc = g.identity()
            for base, k in zip(xs + comms, exps):
                acc = g.mul(acc, g.power(base, k))
            seen.add(acc)
        return seen


def free_group_target(p: int, t: int) -> FreeGroupTarget:
    if p == 2:
        raise EvenCharacteristic("F_{2,2,t} is not covered by the Baer correspondence")
    return FreeGroupTarget(p, t)


@dataclass(frozen=True)
class CorollaryReport:
    kind: WitnessKind
    dim: int
    lifts_commute: bool
    subgroup_order: int
    expected_order: int
    ok: bool


def corollary1_check(g: BaerGroup, witness: Witness, s: int, t: int, budget: int = None) -> CorollaryReport:
    """Isotropic witness: the lifts (b_i, 0) pairwise commute. Complete witness: the lifts generate a subgroup
    of order p^(k + C(k,2)), which with class 2 and exponent p identifies it as F_{p,2,k}."""
    kind = WitnessKind(witness.kind)
    basis = witness.basis.basis
    k = basis.shape[1]
    lifts = [g.lift(basis[:, i]) for i in range(k)]
    e = g.identity()
    commute = all(g.commutator(x, y) == e for x, y in combinations(lifts, 2))
    if kind is WitnessKind.ISOTROPIC:
        order = g.p ** k
        expected = g.p ** k
        ok = commute and k >= s
        # an elementary abelian subgroup of rank k when the lifts commute
        if ok:
            order = len(subgroup_closure(g, lifts, budget))
            ok = order == expected
    else:
        expected = free_group_target(g.p, k).order
        order = len(subgroup_closure(g, lifts, budget))
        ok = order == expected and k >= t
    LOGGER.info("Corollary check on %s witness of dimension %d: order %d, expected %d", kind.value, k, order,
                expected)
    return CorollaryReport(kind, k, commute, order, expected, ok)
