"""Structural certificates and their clause-by-clause verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, bits, is_anticonnected, to_mask
from .named import base_library

Ids = tuple  # tuple[int, ...], ordered where an ordering matters


@dataclass(frozen=True)
class Villa:
    A: Ids
    B: tuple[Ids, ...]  # each B_i listed in chain order (b_1 sees all of C_i)
    C: tuple[Ids, ...]
    kind = "villa"

    @property
    def t(self) -> int:
        return len(self.B)

    def parts(self) -> list[Ids]:
        return [self.A, *self.B, *self.C]


@dataclass(frozen=True)
class Mansion:
    A: Ids
    B: tuple[Ids, ...]
    C: tuple[Ids, ...]
    F: Ids
    X: Ids
    Y: Ids
    j_star: int
    kind = "mansion"

    @property
    def t(self) -> int:
        return len(self.B)

    def villa(self) -> Villa:
        return Villa(self.A, self.B, self.C)

    def parts(self) -> list[Ids]:
        return [self.A, *self.B, *self.C, self.F, self.X, self.Y]


@dataclass(frozen=True)
class Basket:
    A: Ids  # in chain order: a_1 is complete to B_{i*}
    B: tuple[Ids, Ids, Ids]
    C: tuple[Ids, Ids, Ids]
    F: Ids
    i_star: int
    j_star: int
    kind = "basket"

    def parts(self) -> list[Ids]:
        return [self.A, *self.B, *self.C, self.F]


@dataclass(frozen=True)
class Crown:
    X: tuple[Ids, Ids, Ids, Ids, Ids]
    i_star: int
    kind = "crown"

    def parts(self) -> list[Ids]:
        return list(self.X)


@dataclass(frozen=True)
class Thickened:
    base_name: str
    classes: tuple[Ids, ...]  # classes[k] thickens base vertex k
    kind = "thickened"

    def parts(self) -> list[Ids]:
        return list(self.classes)


@dataclass(frozen=True)
class CompleteCore:
    kind = "complete"

    def parts(self) -> list[Ids]:
        return []


Core = Villa | Mansion | Basket | Crown | Thickened | CompleteCore


@dataclass(frozen=True)
class Certificate:
    core: Core
    universals: Ids = field(default=())

    @property
    def kind(self) -> str:
        return self.core.kind

    def to_json(self) -> dict:
        return {"universals": list(self.universals), "core": core_to_json(self.core)}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _ids(xs) -> list[int]:
    return [int(x) for x in xs]


def core_to_json(core: Core) -> dict:
    if isinstance(core, Villa):
        return {"kind": "villa", "t": core.t, "A": _ids(core.A),
                "B": [_ids(b) for b in core.B], "C": [_ids(c) for c in core.C]}
    if isinstance(core, Mansion):
        return {"kind": "mansion", "t": core.t, "A": _ids(core.A),
                "B": [_ids(b) for b in core.B], "C": [_ids(c) for c in core.C],
                "F": _ids(core.F), "X": _ids(core.X), "Y": _ids(core.Y), "j_star": core.j_star}
    if isinstance(core, Basket):
        return {"kind": "basket", "A": _ids(core.A), "B": [_ids(b) for b in core.B],
                "C": [_ids(c) for c in core.C], "F": _ids(core.F),
                "i_star": core.i_star, "j_star": core.j_star}
    if isinstance(core, Crown):
        return {"kind": "crown", "X": [_ids(x) for x in core.X], "i_star": core.i_star}
    if isinstance(core, Thickened):
        return {"kind": "thickened", "base": core.base_name,
                "classes": [_ids(c) for c in core.classes]}
    return {"kind": "complete"}


class CertificateFormatError(ValueError):
    pass


def certificate_from_json(data: dict | str) -> Certificate:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"invalid JSON: {exc}") from None
    try:
        core = data["core"]
        kind = core["kind"]
        tup = lambda xs: tuple(int(x) for x in xs)  # noqa: E731
        nest = lambda xss: tuple(tup(x) for x in xss)  # noqa: E731
        if kind == "villa":
            c: Core = Villa(tup(core["A"]), nest(core["B"]), nest(core["C"]))
        elif kind == "mansion":
            c = Mansion(tup(core["A"]), nest(core["B"]), nest(core["C"]), tup(core["F"]),
                        tup(core["X"]), tup(core["Y"]), int(core["j_star"]))
        elif kind == "basket":
            c = Basket(tup(core["A"]), nest(core["B"]), nest(core["C"]), tup(core["F"]),
                       int(core["i_star"]), int(core["j_star"]))
        elif kind == "crown":
            c = Crown(nest(core["X"]), int(core["i_star"]))
        elif kind == "thickened":
            c = Thickened(str(core["base"]), nest(core["classes"]))
        elif kind == "complete":
            c = CompleteCore()
        else:
            raise CertificateFormatError(f"unknown core kind {kind!r}")
        return Certificate(c, tup(data.get("universals", [])))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CertificateFormatError):
            raise
        raise CertificateFormatError(f"malformed certificate: {exc!r}") from None


# clause checking


class _Checker:
    def __init__(self, g: Graph) -> None:
        self.g = g
        self.problems: list[str] = []

    def need(self, ok: bool, msg: str) -> None:
        if not ok:
            self.problems.append(msg)

    def clique(self, s: int, name: str, nonempty: bool = True) -> None:
        if nonempty:
            self.need(s != 0, f"{name} is empty")
        self.need(self.g.is_clique(s), f"{name} is not a clique")

    def complete(self, x: int, y: int, what: str) -> None:
        self.need(self.g.is_complete_to(x, y), f"{what} not complete")

    def anticomplete(self, x: int, y: int, what: str) -> None:
        self.need(self.g.is_anticomplete_to(x, y), f"{what} not anticomplete")

    def chain(self, order: Ids, target: int, what: str, floor: int, full: bool = True) -> None:
        """N(order[0]) & target is all of target (when full), and the traces shrink."""
        prev = target
        for k, v in enumerate(order):
            trace = self.g.adj[v] & target
            self.need(trace & ~prev == 0, f"{what}: trace of position {k} not nested")
            prev = trace
        if order:
            if full:
                self.need(self.g.adj[order[0]] & target == target, f"{what}: first not full")
            self.need((self.g.adj[order[-1]] & target).bit_count() >= floor,
                      f"{what}: last trace below floor {floor}")


def _villa_clauses(ck: _Checker, v: Villa | Mansion) -> None:
    t = len(v.B)
    ck.need(t >= 3, "villa needs t >= 3")
    ck.need(len(v.C) == t, "B and C counts differ")
    if len(v.C) != t:
        return
    a = to_mask(v.A)
    bm = [to_mask(b) for b in v.B]
    cm = [to_mask(c) for c in v.C]
    ball, call = to_mask(x for b in v.B for x in b), to_mask(x for c in v.C for x in c)
    ck.clique(a, "A")
    for i in range(t):
        ck.clique(bm[i], f"B{i}")
        ck.clique(cm[i], f"C{i}")
    ck.complete(a, ball, "A-B")
    ck.anticomplete(a, call, "A-C")
    for i, j in combinations(range(t), 2):
        ck.anticomplete(bm[i], bm[j], f"B{i}-B{j}")
        ck.complete(cm[i], cm[j], f"C{i}-C{j}")
    for i in range(t):
        ck.anticomplete(bm[i], call & ~cm[i], f"B{i}-other C")
        ck.chain(v.B[i], cm[i], f"B{i}->C{i} chain", floor=1)


def _check_villa(ck: _Checker, v: Villa) -> None:
    _villa_clauses(ck, v)


def _check_mansion(ck: _Checker, m: Mansion) -> None:
    _villa_clauses(ck, m)
    t = len(m.B)
    if len(m.C) != t:
        return
    j = m.j_star
    ck.need(0 <= j < t, "j* out of range")
    if not 0 <= j < t:
        return
    f, x, y = to_mask(m.F), to_mask(m.X), to_mask(m.Y)
    a = to_mask(m.A)
    ball = to_mask(v for b in m.B for v in b)
    call = to_mask(v for c in m.C for v in c)
    bj, cj = to_mask(m.B[j]), to_mask(m.C[j])
    ck.clique(f, "F")
    ck.clique(x, "X", nonempty=False)
    ck.clique(y, "Y", nonempty=False)
    ck.complete(f, a | (ball & ~bj) | (call & ~cj), "F-(A, B-Bj, C-Cj)")
    ck.anticomplete(f, bj | cj, "F-(Bj, Cj)")
    ck.complete(bj, cj, "Bj-Cj")
    ck.complete(x, a | bj, "X-(A, Bj)")
    ck.anticomplete(x, (ball & ~bj) | call, "X-(B-Bj, C)")
    ck.complete(f, x | y, "F-(X, Y)")
    ck.anticomplete(x, y, "X-Y")
    ck.complete(y, call, "Y-C")
    ck.anticomplete(y, a | ball, "Y-(A, B)")


def _check_basket(ck: _Checker, b: Basket, core: int) -> None:
    ck.need(len(b.B) == 3 and len(b.C) == 3, "basket needs three B and three C parts")
    ck.need(0 <= b.i_star < 3 and 0 <= b.j_star < 3, "i*/j* out of range")
    if len(b.B) != 3 or len(b.C) != 3 or not (0 <= b.i_star < 3 and 0 <= b.j_star < 3):
        return
    a, f = to_mask(b.A), to_mask(b.F)
    bm = [to_mask(x) for x in b.B]
    cm = [to_mask(x) for x in b.C]
    call = cm[0] | cm[1] | cm[2]
    ck.clique(a, "A")
    for i in range(3):
        ck.clique(bm[i], f"B{i}")
        ck.clique(cm[i], f"C{i}")
    ck.clique(f, "F", nonempty=False)
    for i, j in combinations(range(3), 2):
        ck.anticomplete(bm[i], bm[j], f"B{i}-B{j}")
        ck.complete(cm[i], cm[j], f"C{i}-C{j}")
    i_s = b.i_star
    ck.complete(a, (bm[0] | bm[1] | bm[2]) & ~bm[i_s], "A-(B - Bi*)")
    ck.chain(b.A, bm[i_s], "A->Bi* chain", floor=0)
    ck.anticomplete(a, call, "A-C")
    for i in range(3):
        ck.complete(bm[i], cm[i], f"B{i}-C{i}")
        ck.anticomplete(bm[i], call & ~cm[i], f"B{i}-other C")
    j = b.j_star
    ck.complete(f, core & ~(bm[j] | cm[j] | f), "F-rest")
    ck.anticomplete(f, bm[j] | cm[j], "F-(Bj*, Cj*)")


def ring_problems(g: Graph, parts: list[Ids], within: int | None = None) -> list[str]:
    """Clauses of a k-ring partition, checked inside ``within`` (default: all)."""
    ck = _Checker(g)
    k = len(parts)
    ck.need(k >= 4, "ring needs at least 4 parts")
    masks = [to_mask(p) for p in parts]
    ground = within if within is not None else g.full
    for i in range(k):
        xi = masks[i]
        ck.need(xi != 0, f"X{i} is empty")
        if not xi:
            continue
        window = masks[i - 1] | xi | masks[(i + 1) % k]
        order = sorted(parts[i], key=lambda u: -((g.adj[u] | 1 << u) & ground).bit_count())
        prev = None
        for u in order:
            nb = (g.adj[u] | 1 << u) & ground
            ck.need(nb & xi == xi, f"X{i} not inside N[{u}]")
            if prev is not None:
                ck.need(nb & ~prev == 0, f"X{i}: closed neighborhoods not nested at {u}")
            prev = nb
        first = (g.adj[order[0]] | 1 << order[0]) & ground
        ck.need(first == window, f"X{i}: top neighborhood is not X{i-1} u X{i} u X{i+1}")
    return ck.problems


def _check_crown(ck: _Checker, c: Crown, core: int) -> None:
    ck.need(len(c.X) == 5, "crown needs five parts")
    ck.need(0 <= c.i_star < 5, "i* out of range")
    if len(c.X) != 5 or not 0 <= c.i_star < 5:
        return
    ck.problems += ring_problems(ck.g, list(c.X), core)
    m = [to_mask(x) for x in c.X]
    i = c.i_star
    ck.complete(m[(i - 1) % 5], m[(i - 2) % 5], "X(i*-1)-X(i*-2)")
    ck.complete(m[(i + 1) % 5], m[(i + 2) % 5], "X(i*+1)-X(i*+2)")


def _check_thickened(ck: _Checker, th: Thickened) -> None:
    lib = base_library()
    base = lib.get(th.base_name)
    ck.need(base is not None, f"unknown base {th.base_name!r}")
    if base is None:
        return
    ck.need(len(th.classes) == base.n, "class count differs from base size")
    if len(th.classes) != base.n:
        return
    m = [to_mask(x) for x in th.classes]
    for u in range(base.n):
        ck.clique(m[u], f"class {u}")
    for u, v in combinations(range(base.n), 2):
        if base.has_edge(u, v):
            ck.complete(m[u], m[v], f"classes {u}-{v}")
        else:
            ck.anticomplete(m[u], m[v], f"classes {u}-{v}")


def certificate_problems(g: Graph, cert: Certificate) -> list[str]:
    """Every failed clause, as text; empty means the certificate verifies."""
    ck = _Checker(g)
    parts = [tuple(p) for p in cert.core.parts()]
    flat = [v for p in parts for v in p] + list(cert.universals)
    if any(not (isinstance(v, int) and 0 <= v < g.n) for v in flat):
        return ["vertex id out of range"]
    ck.need(len(flat) == len(set(flat)), "parts overlap")
    ck.need(set(flat) == set(range(g.n)), "parts do not cover V")
    if ck.problems:
        return ck.problems
    uni = to_mask(cert.universals)
    for u in cert.universals:
        ck.need(g.closed(u) == g.full, f"{u} is not universal")
    core = g.full & ~uni
    if isinstance(cert.core, CompleteCore):
        ck.need(core == 0, "complete core must be empty")
        return ck.problems
    inner, _ = g.induced(bits(core))
    ck.need(inner.n >= 2 and is_anticonnected(inner),
            "core is not a single nontrivial anticomponent")
    c = cert.core
    if isinstance(c, Mansion):
        _check_mansion(ck, c)
    elif isinstance(c, Villa):
        _check_villa(ck, c)
    elif isinstance(c, Basket):
        _check_basket(ck, c, core)
    elif isinstance(c, Crown):
        _check_crown(ck, c, core)
    elif isinstance(c, Thickened):
        _check_thickened(ck, c)
    return ck.problems


def verify_certificate(g: Graph, cert: Certificate) -> bool:
    return not certificate_problems(g, cert)
