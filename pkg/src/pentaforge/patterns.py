"""Induced-subgraph search, hole enumeration and the forbidden-pattern profile."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import lru_cache

from .graph import Graph, _search_order, automorphisms, bits, clique_in_rows, to_mask
from .named import patterns, pentagon

Embedding = tuple  # pattern vertex i -> host vertex emb[i]

IN_CLASS = ("2P3", "C4", "C6")
IN_CLASS_57 = ("2P3", "C4", "C6", "C7", "T0")


def verify_embedding(host: Graph, pattern: Graph, emb: Embedding) -> bool:
    if len(emb) != pattern.n or len(set(emb)) != pattern.n:
        return False
    return all(
        pattern.has_edge(i, j) == host.has_edge(emb[i], emb[j])
        for i in range(pattern.n)
        for j in range(i + 1, pattern.n)
    )


@lru_cache(maxsize=64)
def _plan(pattern: Graph) -> tuple[list[int], list[list[tuple[int, bool]]], list[list[int]]]:
    """Search order, adjacency links to earlier positions, and symmetry-breaking
    constraints: lower[j] lists earlier positions whose image must be smaller."""
    order = _search_order(pattern)
    pos = {p: i for i, p in enumerate(order)}
    links = [[(pos[q], pattern.has_edge(p, q)) for q in order[:i]] for i, p in enumerate(order)]
    lower: list[list[int]] = [[] for _ in order]
    stab = automorphisms(pattern)
    for i, p in enumerate(order):
        for q in {s[p] for s in stab} - {p}:
            lower[pos[q]].append(i)
        stab = [s for s in stab if s[p] == p]
    return order, links, lower


def find_induced(host: Graph, pattern: Graph, within: int | None = None) -> Embedding | None:
    """Some induced copy of ``pattern`` in ``host``, or None.

    Candidates are narrowed by degree and by adjacency to already-placed
    vertices; orbit constraints from the pattern's automorphisms make each
    copy be found in one labelling only."""
    k = pattern.n
    if k == 0:
        return ()
    ground = host.full if within is None else within
    if k > ground.bit_count():
        return None
    order, links, lower = _plan(pattern)
    # host degree and co-degree (inside ground) must cover the pattern's
    size = ground.bit_count()
    hdeg = {v: (host.adj[v] & ground).bit_count() for v in bits(ground)}
    allowed = []
    for p in order:
        d = pattern.degree(p)
        co = k - 1 - d
        allowed.append(sum(1 << v for v, hd in hdeg.items() if hd >= d and size - 1 - hd >= co))
    image = [0] * k
    used = 0
    cands = [0] * k
    i = 0
    cands[0] = allowed[0]
    while i >= 0:
        c = cands[i]
        if not c:
            i -= 1
            if i >= 0:
                used &= ~(1 << image[i])
            continue
        low = c & -c
        cands[i] = c ^ low
        image[i] = low.bit_length() - 1
        if i == k - 1:
            emb = [0] * k
            for j, p in enumerate(order):
                emb[p] = image[j]
            return tuple(emb)
        used |= low
        i += 1
        c = allowed[i] & ~used
        for j, adjacent in links[i]:
            c &= host.adj[image[j]] if adjacent else ~host.adj[image[j]]
        for j in lower[i]:
            c &= ~((2 << image[j]) - 1)
        cands[i] = c
    return None


def iter_holes(g: Graph, max_len: int, min_len: int = 4) -> Iterator[tuple[int, ...]]:
    """Holes with length in [min_len, max_len], each once: least vertex first,
    then the smaller of its two cycle neighbors."""
    if max_len < 4:
        raise ValueError("max_len must be at least 4")
    for s in range(g.n):
        above = g.full & ~((1 << (s + 1)) - 1)
        for p1 in bits(g.adj[s] & above):
            # (path, vertices adjacent to some interior path vertex)
            stack = [([s, p1], 0)]
            while stack:
                path, forbidden = stack.pop()
                last = path[-1]
                inside = sum(1 << v for v in path)
                for v in bits(g.adj[last] & above & ~inside & ~forbidden):
                    if g.has_edge(v, s):
                        if len(path) + 1 >= max(min_len, 4) and p1 < v:
                            yield tuple(path) + (v,)
                        continue
                    if len(path) + 1 < max_len:
                        stack.append((path + [v], forbidden | g.adj[last]))


def holes(g: Graph, max_len: int) -> list[tuple[int, ...]]:
    return sorted(iter_holes(g, max_len))


def is_chordal(g: Graph) -> bool:
    """Repeatedly delete a simplicial vertex; chordal iff this empties the graph."""
    alive = g.full
    while alive:
        for v in bits(alive):
            nb = g.adj[v] & alive
            if all((nb & ~g.adj[u]) == 1 << u for u in bits(nb)):
                alive &= ~(1 << v)
                break
        else:
            return False
    return True


def _stable_triple(g: Graph, mask: int) -> bool:
    for u in bits(mask):
        rest = mask & ~g.adj[u] & ~((1 << (u + 1)) - 1)
        for w in bits(rest):
            if rest & ~g.adj[w] & ~((1 << (w + 1)) - 1):
                return True
    return False


def t0_precheck(g: Graph) -> bool:
    """True when the vertices having three pairwise nonadjacent neighbors form a
    clique, which rules out an induced T0.  False is inconclusive."""
    s = sum(1 << v for v in range(g.n) if _stable_triple(g, g.adj[v]))
    return g.is_clique(s)


def largest_pentagon_t(g: Graph) -> tuple[int, Embedding] | None:
    """Largest t >= 3 with an induced t-pentagon, with an embedding of pentagon(t)."""
    best: tuple[int, Embedding] | None = None
    for a in range(g.n):
        na = g.adj[a]
        far = g.full & ~na & ~(1 << a)
        pairs = [(b, c) for b in bits(na) for c in bits(g.adj[b] & far)]
        heads = len({b for b, _ in pairs})
        if heads < 3 or (best and heads <= best[0]):
            continue
        # compatibility graph on (b, c) pairs; a clique of size t is a t-pentagon
        by_b: dict[int, int] = {}
        by_c: dict[int, int] = {}
        for j, (b, c) in enumerate(pairs):
            by_b[b] = by_b.get(b, 0) | 1 << j
            by_c[c] = by_c.get(c, 0) | 1 << j
        b_heads = to_mask(by_b)
        c_heads = to_mask(by_c)

        def near(u: int, heads: int, table: dict[int, int]) -> int:
            m = 0
            for w in bits(g.adj[u] & heads):
                m |= table[w]
            return m

        b_adj = {u: near(u, b_heads, by_b) for u in by_b.keys() | by_c.keys()}
        c_adj = {u: near(u, c_heads, by_c) for u in by_b.keys() | by_c.keys()}
        rows = [c_adj[c] & ~(b_adj[b] | by_b[b] | c_adj[b] | b_adj[c]) for b, c in pairs]
        clique = sorted(clique_in_rows(rows, (1 << len(pairs)) - 1, best[0] if best else 2))
        t = len(clique)
        if t >= 3 and (best is None or t > best[0]):
            chosen = [pairs[i] for i in clique]
            best = (t, (a,) + tuple(b for b, _ in chosen) + tuple(c for _, c in chosen))
    return best


@dataclass(frozen=True)
class ForbiddenProfile:
    witnesses: dict[str, Embedding | None] = field(default_factory=dict)

    def present(self, name: str) -> bool:
        return self.witnesses[name] is not None

    @property
    def in_class(self) -> bool:
        return not any(self.present(p) for p in IN_CLASS)

    @property
    def in_class_57(self) -> bool:
        return not any(self.present(p) for p in IN_CLASS_57)

    def first_violation(self, names=IN_CLASS) -> tuple[str, Embedding] | None:
        for name in names:
            if self.witnesses[name] is not None:
                return name, self.witnesses[name]
        return None

    def to_json(self) -> dict:
        out: dict = {k: (list(v) if v is not None else None) for k, v in self.witnesses.items()}
        out["in_class"] = self.in_class
        out["in_class_57"] = self.in_class_57
        return out


def forbidden_profile(g: Graph) -> ForbiddenProfile:
    """Search every pattern; the T0 and T1 searches are skipped when the clique
    test already rules T0 out (T1 contains T0)."""
    found: dict[str, Embedding | None] = {}
    t0_free = t0_precheck(g)
    for name, pat in patterns().items():
        if name in ("T0", "T1") and t0_free:
            found[name] = None
        elif name == "T1" and found["T0"] is None:
            found[name] = None
        else:
            found[name] = find_induced(g, pat)
    return ForbiddenProfile(found)


def has_pentagon(g: Graph, t: int = 3) -> Embedding | None:
    return find_induced(g, pentagon(t))
