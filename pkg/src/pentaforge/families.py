"""Generators for pentagons, baskets, villas, mansions, rings, crowns and thickenings.

Vertex ids are laid out in contiguous blocks, parts in definition order:
A, B_1..B_t, C_1..C_t, then F, X, Y where present.  Indices i*, j* are 0-based.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .certificates import Basket, Certificate, Crown, Mansion, Villa, ring_problems
from .graph import Graph
from .named import base_library, pentagon  # noqa: F401  (re-exported)


class ParamError(ValueError):
    """Invalid generator parameters."""


def check_chain(lengths: Sequence[int], full: int, floor: int, what: str) -> None:
    """A staircase: nonincreasing prefix lengths, first one full, all >= floor."""
    if not lengths:
        raise ParamError(f"{what}: empty staircase")
    if lengths[0] != full:
        raise ParamError(f"{what}: first entry {lengths[0]} must equal {full}")
    for x, y in zip(lengths, lengths[1:]):
        if y > x:
            raise ParamError(f"{what}: staircase increases ({x} -> {y})")
    if min(lengths) < floor or max(lengths) > full:
        raise ParamError(f"{what}: entries must lie in [{floor}, {full}]")


@dataclass(frozen=True)
class VillaParams:
    a: int
    b: tuple[int, ...]
    c: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]  # chains[i][k] = |N(b_k) & C_i|

    @property
    def t(self) -> int:
        return len(self.b)

    def validate(self) -> None:
        if self.t < 3:
            raise ParamError("villa needs t >= 3")
        if len(self.c) != self.t or len(self.chains) != self.t:
            raise ParamError("b, c and chains must all have length t")
        if self.a < 1 or min(self.b) < 1 or min(self.c) < 1:
            raise ParamError("villa parts must be nonempty")
        for i in range(self.t):
            if len(self.chains[i]) != self.b[i]:
                raise ParamError(f"chain {i} needs one entry per vertex of B{i}")
            check_chain(self.chains[i], self.c[i], 1, f"chain {i}")

    @classmethod
    def uniform(cls, t: int, a: int = 1, b: int = 1, c: int = 1) -> VillaParams:
        return cls(a, (b,) * t, (c,) * t, tuple((c,) * b for _ in range(t)))


@dataclass(frozen=True)
class MansionParams:
    villa: VillaParams
    f: int = 1
    x: int = 0
    y: int = 0
    j_star: int = 0

    def validate(self) -> None:
        self.villa.validate()
        if self.f < 1 or self.x < 0 or self.y < 0:
            raise ParamError("need |F| >= 1 and |X|, |Y| >= 0")
        if not 0 <= self.j_star < self.villa.t:
            raise ParamError("j* out of range")
        j = self.j_star
        if any(v != self.villa.c[j] for v in self.villa.chains[j]):
            raise ParamError("chain at j* must be full")


@dataclass(frozen=True)
class BasketParams:
    a: int
    b: tuple[int, int, int]
    c: tuple[int, int, int]
    f: int = 0
    i_star: int = 0
    j_star: int = 0
    chain: tuple[int, ...] | None = None  # |N(a_k) & B_{i*}|, defaults to full

    def validate(self) -> None:
        if len(self.b) != 3 or len(self.c) != 3:
            raise ParamError("basket has exactly three B and C parts")
        if self.a < 1 or min(self.b) < 1 or min(self.c) < 1 or self.f < 0:
            raise ParamError("basket parts must be nonempty (F may be empty)")
        if not (0 <= self.i_star < 3 and 0 <= self.j_star < 3):
            raise ParamError("i*, j* must be in 0..2")
        chain = self.resolved_chain()
        if len(chain) != self.a:
            raise ParamError("chain needs one entry per vertex of A")
        check_chain(chain, self.b[self.i_star], 0, "A->B chain")

    def resolved_chain(self) -> tuple[int, ...]:
        return self.chain if self.chain is not None else (self.b[self.i_star],) * self.a


@dataclass(frozen=True)
class RingParams:
    """Part sizes plus, for each part, how far each vertex reaches into the next part.

    The reach back into the previous part is forced by the previous part's
    forward staircase, so it is derived rather than stored."""

    sizes: tuple[int, ...]
    forward: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.sizes)

    def backward(self, i: int) -> tuple[int, ...]:
        prev = self.forward[i - 1]
        return tuple(sum(1 for r in prev if r > pos) for pos in range(self.sizes[i]))

    def validate(self) -> None:
        if self.k < 4:
            raise ParamError("ring needs k >= 4")
        if len(self.forward) != self.k:
            raise ParamError("one forward staircase per part")
        if min(self.sizes) < 1:
            raise ParamError("ring parts must be nonempty")
        for i in range(self.k):
            if len(self.forward[i]) != self.sizes[i]:
                raise ParamError(f"staircase {i} needs one entry per vertex of X{i}")
            check_chain(self.forward[i], self.sizes[(i + 1) % self.k], 1, f"staircase {i}")

    @classmethod
    def full(cls, sizes: Sequence[int]) -> RingParams:
        k = len(sizes)
        return cls(tuple(sizes), tuple((sizes[(i + 1) % k],) * sizes[i] for i in range(k)))


@dataclass(frozen=True)
class CrownParams:
    ring: RingParams
    i_star: int = 0

    def validate(self) -> None:
        self.ring.validate()
        if self.ring.k != 5:
            raise ParamError("a crown is a 5-ring")
        if not 0 <= self.i_star < 5:
            raise ParamError("i* must be in 0..4")
        s = self.ring.sizes
        # boundaries (i*+1, i*+2) and (i*-2, i*-1) are driven by these staircases
        for i in ((self.i_star + 1) % 5, (self.i_star - 2) % 5):
            if any(r != s[(i + 1) % 5] for r in self.ring.forward[i]):
                raise ParamError(f"boundary {i}-{(i + 1) % 5} must be complete")


@dataclass(frozen=True)
class ThickeningSpec:
    base: Graph
    mult: tuple[int, ...] = field(default=())


# builders


class _Blocks:
    def __init__(self) -> None:
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def block(self, size: int) -> tuple[int, ...]:
        ids = tuple(range(self.n, self.n + size))
        self.n += size
        return ids

    def clique(self, ids: Sequence[int]) -> None:
        self.edges += combinations(ids, 2)

    def complete(self, xs: Sequence[int], ys: Sequence[int]) -> None:
        self.edges += [(x, y) for x in xs for y in ys]

    def staircase(self, src: Sequence[int], dst: Sequence[int], lengths: Sequence[int]) -> None:
        for v, r in zip(src, lengths):
            self.edges += [(v, w) for w in dst[:r]]

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)


def _villa_blocks(p: VillaParams, bl: _Blocks):
    a = bl.block(p.a)
    bs = [bl.block(x) for x in p.b]
    cs = [bl.block(x) for x in p.c]
    bl.clique(a)
    for part in bs + cs:
        bl.clique(part)
    for b in bs:
        bl.complete(a, b)
    for c1, c2 in combinations(cs, 2):
        bl.complete(c1, c2)
    for b, c, ch in zip(bs, cs, p.chains):
        bl.staircase(b, c, ch)
    return a, bs, cs


def villa(p: VillaParams) -> tuple[Graph, Certificate]:
    p.validate()
    bl = _Blocks()
    a, bs, cs = _villa_blocks(p, bl)
    return bl.graph(), Certificate(Villa(a, tuple(bs), tuple(cs)))


def mansion(p: MansionParams) -> tuple[Graph, Certificate]:
    p.validate()
    bl = _Blocks()
    a, bs, cs = _villa_blocks(p.villa, bl)
    f, x, y = bl.block(p.f), bl.block(p.x), bl.block(p.y)
    for part in (f, x, y):
        bl.clique(part)
    j = p.j_star
    others_b = [v for i, b in enumerate(bs) if i != j for v in b]
    others_c = [v for i, c in enumerate(cs) if i != j for v in c]
    all_c = [v for c in cs for v in c]
    bl.complete(f, list(a) + others_b + others_c)
    bl.complete(x, list(a) + list(bs[j]))
    bl.complete(f, list(x) + list(y))
    bl.complete(y, all_c)
    cert = Mansion(a, tuple(bs), tuple(cs), f, x, y, j)
    return bl.graph(), Certificate(cert)


def basket(p: BasketParams) -> tuple[Graph, Certificate]:
    p.validate()
    bl = _Blocks()
    a = bl.block(p.a)
    bs = [bl.block(x) for x in p.b]
    cs = [bl.block(x) for x in p.c]
    f = bl.block(p.f)
    for part in [a, f] + bs + cs:
        bl.clique(part)
    for c1, c2 in combinations(cs, 2):
        bl.complete(c1, c2)
    for i in range(3):
        bl.complete(bs[i], cs[i])
        if i != p.i_star:
            bl.complete(a, bs[i])
    bl.staircase(a, bs[p.i_star], p.resolved_chain())
    j = p.j_star
    rest = list(a) + [v for i in range(3) if i != j for v in bs[i] + cs[i]]
    bl.complete(f, rest)
    return bl.graph(), Certificate(Basket(a, tuple(bs), tuple(cs), f, p.i_star, j))


def ring(p: RingParams) -> Graph:
    g, _ = _ring_with_parts(p)
    return g


def _ring_with_parts(p: RingParams) -> tuple[Graph, list[tuple[int, ...]]]:
    p.validate()
    bl = _Blocks()
    parts = [bl.block(s) for s in p.sizes]
    for i, part in enumerate(parts):
        bl.clique(part)
        bl.staircase(part, parts[(i + 1) % p.k], p.forward[i])
    g = bl.graph()
    problems = ring_problems(g, parts)
    if problems:
        raise ParamError("staircases do not produce a ring: " + "; ".join(problems))
    return g, parts


def crown(p: CrownParams) -> tuple[Graph, Certificate]:
    p.validate()
    g, parts = _ring_with_parts(p.ring)
    return g, Certificate(Crown(tuple(parts), p.i_star))


def hyperhole(k: int, sizes: Sequence[int]) -> Graph:
    if len(sizes) != k:
        raise ParamError("need one size per part")
    return ring(RingParams.full(sizes))


def thicken(spec: ThickeningSpec | Graph, mult: Sequence[int] | None = None):
    """Blow each base vertex v up into a clique of size mult[v]."""
    if isinstance(spec, Graph):
        spec = ThickeningSpec(spec, tuple(mult) if mult is not None else ())
    base = spec.base
    m = spec.mult or (1,) * base.n
    if len(m) != base.n or min(m, default=1) < 1:
        raise ParamError("need one multiplicity >= 1 per base vertex")
    bl = _Blocks()
    blocks = [bl.block(x) for x in m]
    for b in blocks:
        bl.clique(b)
    for u, v in base.edges():
        bl.complete(blocks[u], blocks[v])
    return bl.graph(), tuple(frozenset(b) for b in blocks)


def add_universal(g: Graph, m: int) -> Graph:
    if m < 0:
        raise ParamError("m must be nonnegative")
    n = g.n + m
    edges = g.edges() + [(v, u) for u in range(g.n, n) for v in range(u)]
    return Graph.from_edges(n, edges)


# random members

FAMILIES = ("basket", "villa", "mansion", "crown")
MIN_SIZE = {"basket": 7, "villa": 7, "mansion": 8, "crown": 5}


def random_staircase(rng: random.Random, length: int, full: int, floor: int) -> tuple[int, ...]:
    """Uniform over nonincreasing sequences with first entry ``full`` and all
    entries in [floor, full] (stars and bars on the remaining entries)."""
    rest = length - 1
    span = full - floor + 1
    picks = sorted(rng.sample(range(rest + span - 1), rest))
    vals = sorted((floor + x - i for i, x in enumerate(picks)), reverse=True)
    return (full,) + tuple(vals)


def _spread(rng: random.Random, parts: int, total: int) -> list[int]:
    """Sizes >= 1 summing to ``total``; extra vertices land on parts at random."""
    sizes = [1] * parts
    for _ in range(total - parts):
        sizes[rng.randrange(parts)] += 1
    return sizes


def _pick_t(rng: random.Random, budget: int, reserve: int) -> int:
    t = 3
    while rng.random() < 0.4 and 2 * (t + 1) + 1 + reserve <= budget:
        t += 1
    return t


def random_member(family: str, budget: int, seed: int,
                  t: int | None = None) -> tuple[Graph, Certificate]:
    """Deterministic-in-seed random member of a family with at most ``budget`` vertices.
    ``t`` fixes the number of B/C pairs of a villa or mansion."""
    if family not in MIN_SIZE:
        raise ParamError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if budget < MIN_SIZE[family]:
        raise ParamError(f"{family} needs budget >= {MIN_SIZE[family]}")
    if t is not None and (family == "crown" or (family == "basket" and t != 3)):
        raise ParamError(f"t cannot be chosen for {family}")
    rng = random.Random(f"{family}:{budget}:{seed}")
    if family == "crown":
        n = rng.randint(5, budget)
        sizes = _spread(rng, 5, n)
        i_star = rng.randrange(5)
        forced = {(i_star + 1) % 5, (i_star - 2) % 5}
        fwd = []
        for i in range(5):
            nxt = sizes[(i + 1) % 5]
            if i in forced:
                fwd.append((nxt,) * sizes[i])
            else:
                fwd.append(random_staircase(rng, sizes[i], nxt, 1))
        return crown(CrownParams(RingParams(tuple(sizes), tuple(fwd)), i_star))
    if family == "basket":
        n = rng.randint(7, budget)
        f = rng.randint(0, min(3, n - 7))
        sizes = _spread(rng, 7, n - f)
        a, b, c = sizes[0], tuple(sizes[1:4]), tuple(sizes[4:7])
        i_star, j_star = rng.randrange(3), rng.randrange(3)
        chain = random_staircase(rng, a, b[i_star], 0)
        return basket(BasketParams(a, b, c, f, i_star, j_star, chain))
    reserve = 1 if family == "mansion" else 0
    if t is None:
        t = _pick_t(rng, budget, reserve)
    elif t < 3 or 2 * t + 1 + reserve > budget:
        raise ParamError(f"{family} with t = {t} needs t >= 3 and budget >= {2 * t + 1 + reserve}")
    n = rng.randint(2 * t + 1 + reserve, budget)
    extras = []
    if family == "mansion":
        room = n - (2 * t + 1)
        f = 1 + rng.randint(0, min(2, room - 1))
        x = rng.randint(0, min(2, room - f))
        y = rng.randint(0, min(2, room - f - x))
        extras = [f, x, y]
    sizes = _spread(rng, 2 * t + 1, n - sum(extras))
    a, b, c = sizes[0], tuple(sizes[1:t + 1]), tuple(sizes[t + 1:])
    j_star = rng.randrange(t)
    chains = []
    for i in range(t):
        if family == "mansion" and i == j_star:
            chains.append((c[i],) * b[i])
        else:
            chains.append(random_staircase(rng, b[i], c[i], 1))
    vp = VillaParams(a, b, c, tuple(chains))
    if family == "villa":
        return villa(vp)
    f, x, y = extras
    return mansion(MansionParams(vp, f, x, y, j_star))


def random_ring(k: int, budget: int, seed: int) -> tuple[Graph, list[tuple[int, ...]]]:
    rng = random.Random(f"ring:{k}:{budget}:{seed}")
    if budget < k:
        raise ParamError(f"a {k}-ring needs budget >= {k}")
    sizes = _spread(rng, k, rng.randint(k, budget))
    fwd = tuple(random_staircase(rng, sizes[i], sizes[(i + 1) % k], 1) for i in range(k))
    return _ring_with_parts(RingParams(tuple(sizes), fwd))
