"""Class membership with structural certificates.

classify() strips universal vertices and then routes the remaining graph to
one of three recognizers: thickening of a library base (contains C7 or T0),
the frame pipeline (contains a 3-pentagon), or crown recovery (otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache

from .certificates import (
    Basket,
    Certificate,
    Crown,
    Mansion,
    Thickened,
    Villa,
    certificate_problems,
    ring_problems,
    verify_certificate,
)
from .graph import (
    Graph,
    bits,
    contract_twins,
    is_anticonnected,
    is_isomorphic,
    simplicial_vertices,
    to_mask,
    true_twin_classes,
    universal_vertices,
)
from .named import base_library, patterns
from .patterns import Embedding, forbidden_profile, iter_holes, largest_pentagon_t

__all__ = [
    "Certificate", "verify_certificate", "certificate_problems",
    "InClassNoSimplicial", "HasSimplicial", "NotInClass", "InternalContradiction",
    "FrameDecomposition", "FrameError", "classify", "grow_maximal_frame",
    "recognize_crown", "recognize_thickening", "frame_problems",
]


class InternalContradiction(RuntimeError):
    """The graph is in the class without simplicial vertices, yet no structure
    was found.  This signals a bug, never a property of the input."""


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class InClassNoSimplicial:
    certificate: Certificate
    kind = "in_class"


@dataclass(frozen=True)
class HasSimplicial:
    vertex: int
    kind = "has_simplicial"


@dataclass(frozen=True)
class NotInClass:
    pattern: str
    witness: Embedding
    kind = "not_in_class"


ClassifyOutcome = InClassNoSimplicial | HasSimplicial | NotInClass


# frames


def frame_problems(g: Graph, a: int, bs: list[int], cs: list[int]) -> list[str]:
    """Failed t-frame clauses for masks A, B_i, C_i."""
    out = []
    t = len(bs)
    ball = 0
    for b in bs:
        ball |= b
    call = 0
    for c in cs:
        call |= c
    if not a or not all(bs) or not all(cs):
        out.append("empty part")
    for v in bits(a):
        if sum(1 for b in bs if g.adj[v] & b) < 2:
            out.append(f"A vertex {v} sees fewer than two B parts")
    if not g.is_anticomplete_to(a, call):
        out.append("A not anticomplete to C")
    for i in range(t):
        for j in range(i + 1, t):
            if not g.is_anticomplete_to(bs[i], bs[j]):
                out.append(f"B{i}-B{j} not anticomplete")
            if not g.is_complete_to(cs[i], cs[j]):
                out.append(f"C{i}-C{j} not complete")
        if not g.is_anticomplete_to(bs[i], call & ~cs[i]):
            out.append(f"B{i} sees another C")
        for v in bits(bs[i]):
            if not g.adj[v] & a or not g.adj[v] & cs[i]:
                out.append(f"B{i} vertex {v} misses A or C{i}")
        for v in bits(cs[i]):
            if not g.adj[v] & bs[i]:
                out.append(f"C{i} vertex {v} misses B{i}")
    return out


def _by_degree(g: Graph, mask: int, within: int) -> tuple[int, ...]:
    return tuple(sorted(bits(mask), key=lambda v: (-(g.adj[v] & within).bit_count(), v)))


@dataclass(frozen=True)
class FrameDecomposition:
    t: int
    A: tuple[int, ...]
    B: tuple[tuple[int, ...], ...]
    C: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    F: tuple[tuple[int, ...], ...]
    X: tuple[tuple[int, ...], ...]
    Y: tuple[int, ...]
    Z: tuple[int, ...]
    W: tuple[int, ...]
    unassigned: tuple[int, ...] = field(default=())

    @property
    def frame(self) -> frozenset[int]:
        return frozenset(self.A).union(*self.B, *self.C)

    def residue_problems(self, g: Graph) -> list[str]:
        """The exclusions every decomposition of a class member must satisfy."""
        out = []
        if self.unassigned:
            out.append(f"vertices fit no residue set: {list(self.unassigned)}")
        if sum(1 for f in self.F if f) > 1:
            out.append("more than one F_i nonempty")
        if any(self.D) and any(self.X):
            out.append("D and X both nonempty")
        if not g.is_anticomplete_to(to_mask(self.Y), to_mask(self.Z)):
            out.append("Y not anticomplete to Z")
        return out


def grow_maximal_frame(g: Graph, seed: Embedding) -> FrameDecomposition:
    """Grow a t-pentagon (apex, b_1..b_t, c_1..c_t) into a frame that no single
    outside vertex can join, then sort the rest into residue sets."""
    t = (len(seed) - 1) // 2
    if t < 3 or len(seed) != 2 * t + 1:
        raise FrameError("seed must embed a t-pentagon with t >= 3")
    a = 1 << seed[0]
    bs = [1 << seed[1 + i] for i in range(t)]
    cs = [1 << seed[1 + t + i] for i in range(t)]
    if frame_problems(g, a, bs, cs):
        raise FrameError("seed is not an induced t-pentagon")
    changed = True
    while changed:
        changed = False
        inside = a | to_mask(v for m in bs + cs for v in bits(m))
        for v in bits(g.full & ~inside):
            bit = 1 << v
            if not frame_problems(g, a | bit, bs, cs):
                a |= bit
                changed = True
                continue
            for i in range(t):
                trial = bs[:i] + [bs[i] | bit] + bs[i + 1:]
                if not frame_problems(g, a, trial, cs):
                    bs = trial
                    changed = True
                    break
            else:
                for i in range(t):
                    trial = cs[:i] + [cs[i] | bit] + cs[i + 1:]
                    if not frame_problems(g, a, bs, trial):
                        cs = trial
                        changed = True
                        break
    ball = to_mask(v for m in bs for v in bits(m))
    call = to_mask(v for m in cs for v in bits(m))
    vq = a | ball | call
    d = [[] for _ in range(t)]
    f = [[] for _ in range(t)]
    x = [[] for _ in range(t)]
    y, z, w, loose = [], [], [], []
    for v in bits(g.full & ~vq):
        nb = g.adj[v] & vq
        if nb == vq:
            w.append(v)
            continue
        if nb & ~a == 0:
            z.append(v)
            continue
        if nb & ~call == 0:
            y.append(v)
            continue
        for i in range(t):
            if nb == bs[i] | cs[i]:
                d[i].append(v)
                break
            if nb == a | (ball & ~bs[i]) | (call & ~cs[i]):
                f[i].append(v)
                break
            if nb & bs[i] == bs[i] and nb & ~(a | bs[i]) == 0:
                x[i].append(v)
                break
        else:
            loose.append(v)
    return FrameDecomposition(
        t=t,
        A=_by_degree(g, a, vq),
        B=tuple(_by_degree(g, b, vq) for b in bs),
        C=tuple(_by_degree(g, c, vq) for c in cs),
        D=tuple(map(tuple, d)),
        F=tuple(map(tuple, f)),
        X=tuple(map(tuple, x)),
        Y=tuple(y), Z=tuple(z), W=tuple(w),
        unassigned=tuple(loose),
    )


def _chain_sorted(g: Graph, part: tuple[int, ...], target: tuple[int, ...]) -> tuple[int, ...]:
    tm = to_mask(target)
    return tuple(sorted(part, key=lambda v: (-(g.adj[v] & tm).bit_count(), v)))


def _assemble_frame_core(g: Graph, fd: FrameDecomposition):
    """Turn a decomposition of a graph with no simplicial or universal vertex
    into a basket, villa or mansion core."""
    if any(fd.D) or fd.Z or fd.W or fd.unassigned:
        raise InternalContradiction("residues D, Z, W must be empty here")
    t = fd.t
    a = to_mask(fd.A)
    full_ab = [g.is_complete_to(a, to_mask(b)) for b in fd.B]
    live = [i for i in range(t) if fd.F[i]]
    if len(live) > 1:
        raise InternalContradiction("more than one F_i nonempty")
    B = tuple(_chain_sorted(g, fd.B[i], fd.C[i]) for i in range(t))
    C = tuple(_chain_sorted(g, fd.C[i], fd.B[i]) for i in range(t))
    if all(full_ab):
        if not live:
            return Villa(fd.A, B, C)
        i = live[0]
        return Mansion(fd.A, B, C, tuple(sorted(fd.F[i])), tuple(sorted(fd.X[i])),
                       tuple(sorted(fd.Y)), i)
    if t != 3:
        raise InternalContradiction("A not complete to B with t > 3")
    i_star = full_ab.index(False)
    A = _chain_sorted(g, fd.A, fd.B[i_star])
    if not live:
        return Basket(A, B, C, (), i_star, i_star)
    j = live[0]
    return Basket(A, B, C, tuple(sorted(fd.F[j])), i_star, j)


# crowns


def recognize_crown(g: Graph) -> Certificate | None:
    """Try each 5-hole as the spine of a 5-crown partition."""
    for hole in iter_holes(g, 5, 5):
        hm = [g.adj[h] for h in hole]
        parts: list[list[int]] = [[] for _ in range(5)]
        ok = True
        for v in range(g.n):
            for i in range(5):
                if (hm[(i - 1) % 5] >> v & 1 and hm[(i + 1) % 5] >> v & 1
                        and not hm[(i + 2) % 5] >> v & 1 and not hm[(i - 2) % 5] >> v & 1):
                    parts[i].append(v)
                    break
            else:
                ok = False
                break
        if not ok:
            continue
        X = tuple(tuple(p) for p in parts)
        if ring_problems(g, list(X)):
            continue
        masks = [to_mask(p) for p in X]
        for i_star in range(5):
            if (g.is_complete_to(masks[(i_star - 1) % 5], masks[(i_star - 2) % 5])
                    and g.is_complete_to(masks[(i_star + 1) % 5], masks[(i_star + 2) % 5])):
                cert = Certificate(Crown(X, i_star))
                if verify_certificate(g, cert):
                    return cert
    return None


# thickenings


@cache
def _library_index() -> list[tuple[str, Graph, tuple]]:
    out = []
    for name, base in base_library().items():
        if len(true_twin_classes(base)) != base.n:
            raise InternalContradiction(f"library base {name} has true twins")
        out.append((name, base, _invariant(base)))
    return out


def _invariant(g: Graph) -> tuple:
    return g.n, g.m, tuple(sorted(g.degree(v) for v in range(g.n)))


def check_bases_twin_free() -> bool:
    """Self-check that twin contraction can recover every base exactly."""
    return len(_library_index()) == len(base_library())


def recognize_thickening(g: Graph) -> Certificate | None:
    """Match the twin quotient of g against the base library (first match wins)."""
    quotient, classes = contract_twins(g)
    key = _invariant(quotient)
    for name, base, inv in _library_index():
        if inv != key:
            continue
        iso = is_isomorphic(base, quotient)
        if iso is not None:
            ordered = tuple(tuple(sorted(classes[iso[k]])) for k in range(base.n))
            return Certificate(Thickened(name, ordered))
    return None


# top level


def _lift(core, old: list[int]):
    """Rename a core's vertex ids through ``old`` (induced-subgraph id list)."""
    m = lambda xs: tuple(old[v] for v in xs)  # noqa: E731
    mm = lambda xss: tuple(m(xs) for xs in xss)  # noqa: E731
    if isinstance(core, Mansion):
        return Mansion(m(core.A), mm(core.B), mm(core.C), m(core.F), m(core.X), m(core.Y),
                       core.j_star)
    if isinstance(core, Villa):
        return Villa(m(core.A), mm(core.B), mm(core.C))
    if isinstance(core, Basket):
        return Basket(m(core.A), mm(core.B), mm(core.C), m(core.F), core.i_star, core.j_star)
    if isinstance(core, Crown):
        return Crown(mm(core.X), core.i_star)
    if isinstance(core, Thickened):
        return Thickened(core.base_name, mm(core.classes))
    raise TypeError(core)


def classify(g: Graph) -> ClassifyOutcome:
    if g.n < 1:
        raise ValueError("classify needs at least one vertex")
    profile = forbidden_profile(g)
    bad = profile.first_violation()
    if bad is not None:
        return NotInClass(*bad)
    simp = simplicial_vertices(g)
    if simp:
        return HasSimplicial(min(simp))
    uni = universal_vertices(g)
    inner, old = g.induced(v for v in range(g.n) if v not in uni)
    if inner.n < 2 or not is_anticonnected(inner):
        raise InternalContradiction("non-universal part is not one nontrivial anticomponent")
    if profile.present("C7") or profile.present("T0"):
        found = recognize_thickening(inner)
        if found is None:
            raise InternalContradiction("contains C7 or T0 but matches no library base")
        core = found.core
    elif profile.present("3-pentagon"):
        best = largest_pentagon_t(inner)
        if best is None:
            raise InternalContradiction("3-pentagon reported but not found again")
        fd = grow_maximal_frame(inner, best[1])
        problems = fd.residue_problems(inner)
        if problems:
            raise InternalContradiction("; ".join(problems))
        core = _assemble_frame_core(inner, fd)
    else:
        found = recognize_crown(inner)
        if found is None:
            raise InternalContradiction("3-pentagon-free member with no crown partition")
        core = found.core
    cert = Certificate(_lift(core, old), tuple(sorted(uni)))
    problems = certificate_problems(g, cert)
    if problems:
        raise InternalContradiction("certificate failed: " + "; ".join(problems))
    return InClassNoSimplicial(cert)


def outcome_to_json(outcome: ClassifyOutcome) -> dict:
    if isinstance(outcome, InClassNoSimplicial):
        return {"outcome": "in_class", "certificate": outcome.certificate.to_json()}
    if isinstance(outcome, HasSimplicial):
        return {"outcome": "has_simplicial", "vertex": outcome.vertex}
    return {"outcome": "not_in_class", "pattern": outcome.pattern,
            "witness": list(outcome.witness)}


def witness_verifies(g: Graph, outcome: NotInClass) -> bool:
    from .patterns import verify_embedding
    return verify_embedding(g, patterns()[outcome.pattern], outcome.witness)
