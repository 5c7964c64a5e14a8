"""Immutable simple graphs on vertices 0..n-1 with bitset adjacency rows."""

from __future__ import annotations

import heapq
import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

VertexSet = frozenset
Partition = tuple  # tuple[frozenset[int], ...]


class GraphFormatError(ValueError):
    """Raised on malformed graph text/JSON or invalid edge lists."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphFormatError("adjacency row count differs from n")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise GraphFormatError(f"self-loop at {v}")
            if row >> self.n:
                raise GraphFormatError(f"row {v} references vertex >= n")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphFormatError(f"asymmetric adjacency {v}-{u}")

    # construction

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        if n < 0:
            raise GraphFormatError("negative vertex count")
        rows = [0] * n
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, k: int) -> Graph:
        return cls.from_edges(k, [(i, (i + 1) % k) for i in range(k)])

    @classmethod
    def path(cls, k: int) -> Graph:
        return cls.from_edges(k, [(i, i + 1) for i in range(k - 1)])

    # queries

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def closed(self, v: int) -> int:
        return self.adj[v] | 1 << v

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def vertices(self) -> range:
        return range(self.n)

    def is_clique(self, mask: int) -> bool:
        for v in bits(mask):
            if (mask & ~self.adj[v]) != 1 << v:
                return False
        return True

    def is_stable(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def is_complete_to(self, x: int, y: int) -> bool:
        return all(self.adj[v] & y == y for v in bits(x))

    def is_anticomplete_to(self, x: int, y: int) -> bool:
        return all(not (self.adj[v] & y) for v in bits(x))

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``vertices`` (sorted), with the new->old id list."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        rows = []
        for v in old:
            rows.append(to_mask(index[u] for u in bits(self.adj[v]) if u in index))
        return Graph(len(old), tuple(rows)), old

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex v renamed to perm[v]."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    # serialization

    def to_text(self) -> str:
        lines = [f"p {self.n}"] + [f"e {u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges()]}

    def to_dot(self, name: str = "G") -> str:
        body = [f"  {v};" for v in range(self.n)]
        body += [f"  {u} -- {v};" for u, v in self.edges()]
        return "graph " + name + " {\n" + "\n".join(body) + "\n}\n"


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    return Graph.from_edges(n, edges)


def parse_graph_text(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 2:
                if n is not None:
                    raise GraphFormatError(f"line {lineno}: duplicate 'p' line")
                n = int(parts[1])
                if n < 0:
                    raise GraphFormatError(f"line {lineno}: negative vertex count")
            elif parts[0] == "e" and len(parts) == 3:
                if n is None:
                    raise GraphFormatError(f"line {lineno}: edge before 'p' line")
                u, v = int(parts[1]), int(parts[2])
                if not (0 <= u < n and 0 <= v < n) or u == v:
                    raise GraphFormatError(f"line {lineno}: bad edge ({u},{v}) for n={n}")
                edges.append((u, v))
            else:
                raise GraphFormatError(f"line {lineno}: unrecognized record {raw!r}")
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: bad integer in {raw!r}") from None
    if n is None:
        raise GraphFormatError("missing 'p <n>' line")
    return Graph.from_edges(n, edges)


def parse_graph_json(data: str | dict) -> Graph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphFormatError("graph JSON needs 'n' and 'edges'")
    try:
        return Graph.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])
    except (TypeError, IndexError):
        raise GraphFormatError("edges must be pairs of integers") from None


def load_graph(text: str) -> Graph:
    """Parse either the line format or the JSON form, sniffing the first character."""
    if text.lstrip().startswith("{"):
        return parse_graph_json(text)
    return parse_graph_text(text)


# structural primitives


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def _components_of(adj: Sequence[int], ground: int) -> list[frozenset[int]]:
    out = []
    left = ground
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= adj[v]
            grow &= left & ~comp
            comp |= grow
            frontier = grow
        left &= ~comp
        out.append(frozenset(bits(comp)))
    return out


def components(g: Graph, within: int | None = None) -> list[frozenset[int]]:
    ground = g.full if within is None else within
    return _components_of(g.adj, ground)


def anticomponents(g: Graph) -> list[frozenset[int]]:
    return components(complement(g))


def is_connected(g: Graph, within: int | None = None) -> bool:
    return len(components(g, within)) <= 1


def is_anticonnected(g: Graph) -> bool:
    return len(anticomponents(g)) <= 1


def simplicial_vertices(g: Graph) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if g.is_clique(g.adj[v]))


def universal_vertices(g: Graph) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if g.closed(v) == g.full)


def true_twin_classes(g: Graph) -> Partition:
    """Classes of the relation N[x] = N[y], ordered by least member."""
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.closed(v), []).append(v)
    return tuple(sorted((frozenset(c) for c in groups.values()), key=min))


def contract_twins(g: Graph) -> tuple[Graph, Partition]:
    classes = true_twin_classes(g)
    rep = {}
    for i, block in enumerate(classes):
        for v in block:
            rep[v] = i
    edges = {(rep[u], rep[v]) for u, v in g.edges() if rep[u] != rep[v]}
    return Graph.from_edges(len(classes), edges), classes


def max_clique(g: Graph, within: int | None = None, floor: int = 0) -> frozenset[int]:
    """Maximum clique by branch and bound with greedy-coloring bounds.

    Only cliques larger than ``floor`` are searched for; if none exists the
    result is empty."""
    return clique_in_rows(g.adj, g.full if within is None else within, floor)


def clique_in_rows(adj: Sequence[int], ground: int, floor: int = 0) -> frozenset[int]:
    """max_clique on raw adjacency bitsets (no Graph validation)."""
    best = [0, floor]  # mask, size

    def colour_order(p: int) -> tuple[list[int], list[int]]:
        order, colours = [], []
        k = 0
        while p:
            k += 1
            q = p
            while q:
                low = q & -q
                v = low.bit_length() - 1
                order.append(v)
                colours.append(k)
                p ^= low
                q &= ~adj[v] & ~low
        return order, colours

    def expand(r: int, size: int, p: int) -> None:
        order, colours = colour_order(p)
        for idx in range(len(order) - 1, -1, -1):
            if size + colours[idx] <= best[1]:
                return
            v = order[idx]
            sub = p & adj[v]
            if sub:
                expand(r | 1 << v, size + 1, sub)
            elif size + 1 > best[1]:
                best[0], best[1] = r | 1 << v, size + 1
            p &= ~(1 << v)

    if ground:
        expand(0, 0, ground)
    return frozenset(bits(best[0]))


def clique_number(g: Graph, within: int | None = None) -> int:
    return len(max_clique(g, within))


def _mcs_m(g: Graph) -> tuple[list[int], list[int]]:
    """Minimal elimination ordering; returns (order, madj masks).

    ``order`` lists vertices from first-eliminated to last; ``madj[v]`` holds the
    neighbors of v in the minimal triangulation that are eliminated after v.
    """
    n = g.n
    weight = [0] * n
    numbered = 0
    fill = list(g.adj)
    order_rev = []
    for _ in range(n):
        free = [v for v in range(n) if not numbered >> v & 1]
        v = max(free, key=lambda u: (weight[u], -u))
        numbered |= 1 << v
        # minimax of interior weights over unnumbered paths from v
        best = {}
        heap = []
        for u in bits(g.adj[v] & ~numbered):
            best[u] = -1
            heap.append((-1, u))
        heapq.heapify(heap)
        while heap:
            d, x = heapq.heappop(heap)
            if best.get(x, n + 1) < d:
                continue
            step = max(d, weight[x])
            for y in bits(g.adj[x] & ~numbered):
                if step < best.get(y, n + 1):
                    best[y] = step
                    heapq.heappush(heap, (step, y))
        for u, d in best.items():
            if d < weight[u]:
                weight[u] += 1
                fill[u] |= 1 << v
                fill[v] |= 1 << u
        order_rev.append(v)
    order = order_rev[::-1]
    later = 0
    madj = [0] * n
    for v in reversed(order):
        madj[v] = fill[v] & later
        later |= 1 << v
    return order, madj


def clique_cutset(g: Graph) -> frozenset[int] | None:
    """A clique whose removal disconnects g, or None if there is none.

    Disconnected graphs return the empty set.  Candidates are the clique
    minimal separators read off an MCS-M minimal triangulation.
    """
    if g.n == 0:
        return None
    if not is_connected(g):
        return frozenset()
    order, madj = _mcs_m(g)
    for v in order:
        sep = madj[v]
        if sep and g.is_clique(sep) and not is_connected(g, g.full & ~sep):
            return frozenset(bits(sep))
    return None


def clique_cutset_exhaustive(g: Graph) -> frozenset[int] | None:
    """Reference check: try every clique of g as a cutset (small graphs only)."""
    if g.n == 0:
        return None
    if not is_connected(g):
        return frozenset()
    best = None

    def extend(clique: int, cand: int) -> bool:
        nonlocal best
        rest = g.full & ~clique
        if clique and rest and not is_connected(g, rest):
            best = clique
            return True
        for v in bits(cand):
            cand &= ~(1 << v)
            if extend(clique | 1 << v, cand & g.adj[v]):
                return True
        return False

    extend(0, g.full)
    return None if best is None else frozenset(bits(best))


def is_isomorphic(g: Graph, h: Graph) -> dict[int, int] | None:
    """An isomorphism g -> h as a dict, or None."""
    if g.n != h.n or g.m != h.m:
        return None

    def signature(x: Graph) -> list[tuple]:
        deg = [x.degree(v) for v in range(x.n)]
        return [(deg[v], tuple(sorted(deg[u] for u in bits(x.adj[v])))) for v in range(x.n)]

    sg, sh = signature(g), signature(h)
    if sorted(sg) != sorted(sh):
        return None
    classes: dict[tuple, int] = {}
    for v in range(h.n):
        classes[sh[v]] = classes.get(sh[v], 0) | 1 << v
    order = _search_order(g)
    mapping: dict[int, int] = {}
    used = 0

    def solve(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        v = order[i]
        cand = classes[sg[v]] & ~used
        for u, w in mapping.items():
            cand &= h.adj[w] if g.has_edge(u, v) else ~h.adj[w]
        for w in bits(cand):
            mapping[v] = w
            used |= 1 << w
            if solve(i + 1):
                return True
            used &= ~(1 << w)
            del mapping[v]
        return False

    return dict(sorted(mapping.items())) if solve(0) else None


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All automorphisms of a small graph, as image tuples."""
    deg = [g.degree(v) for v in range(g.n)]
    order = _search_order(g)
    image = [0] * g.n
    out = []

    def solve(i: int, used: int) -> None:
        if i == g.n:
            out.append(tuple(image))
            return
        v = order[i]
        cand = g.full & ~used
        for u in order[:i]:
            cand &= g.adj[image[u]] if g.has_edge(u, v) else ~g.adj[image[u]]
        for w in bits(cand):
            if deg[w] == deg[v]:
                image[v] = w
                solve(i + 1, used | 1 << w)

    solve(0, 0)
    return out


def _search_order(g: Graph) -> list[int]:
    """Order vertices so each one is adjacent to as many earlier ones as possible."""
    order: list[int] = []
    placed = 0
    while len(order) < g.n:
        rest = [v for v in range(g.n) if not placed >> v & 1]
        v = max(rest, key=lambda u: ((g.adj[u] & placed).bit_count(), g.degree(u), -u))
        order.append(v)
        placed |= 1 << v
    return order
