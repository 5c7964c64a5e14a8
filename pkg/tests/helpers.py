import random
from itertools import combinations, permutations, product

from hypothesis import strategies as st

from pentaforge.cliquewidth import SpikePartition
from pentaforge.graph import Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, max_n: int = 10, min_n: int = 0) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


def _degrees(g: Graph, vs) -> list[int]:
    return sorted(sum(g.has_edge(u, w) for w in vs if w != u) for u in vs)


def brute_induced(host: Graph, pattern: Graph):
    """Oracle: try every vertex subset of the right size and every bijection."""
    k = pattern.n
    pdeg = _degrees(pattern, range(k))
    for sub in combinations(range(host.n), k):
        if _degrees(host, sub) != pdeg:
            continue
        for perm in permutations(sub):
            if all(pattern.has_edge(i, j) == host.has_edge(perm[i], perm[j])
                   for i, j in combinations(range(k), 2)):
                return perm
    return None


def brute_chi(g: Graph) -> int:
    """Oracle of last resort: smallest k admitting a proper k-coloring."""
    for k in range(g.n + 1):
        for cols in product(range(k), repeat=g.n):
            if all(cols[u] != cols[v] for u, v in g.edges()):
                return k
    return g.n


def class_member(rng: random.Random, max_n: int = 20) -> Graph | None:
    """A random family member, plus a few universal and simplicial vertices,
    kept only if it stays in the class and within max_n vertices."""
    from pentaforge.families import ParamError, add_universal, random_member
    from pentaforge.patterns import forbidden_profile

    family = rng.choice(["basket", "villa", "mansion", "crown"])
    try:
        g, _ = random_member(family, rng.randint(5, max_n - 4), rng.randrange(10**9))
    except ParamError:
        return None
    g = add_universal(g, rng.randint(0, 2))
    for _ in range(rng.randint(0, 3)):
        if g.n >= max_n:
            break
        v = rng.randrange(g.n)
        pick = [v] + [u for u in range(g.n) if g.has_edge(u, v) and rng.random() < 0.5]
        pick = [u for i, u in enumerate(pick) if all(g.has_edge(u, w) for w in pick[:i])]
        h = Graph.from_edges(g.n + 1, g.edges() + [(u, g.n) for u in pick])
        if forbidden_profile(h).in_class:
            g = h
    return g if g.n <= max_n else None


# (text, (line, column)) of the first error
MALFORMED = [
    ("(j 1 1 (v 1 a))", (1, 1)),
    ("(u (v 1 a) (v 1 a))", (1, 17)),
    ("", (1, 1)),
    ("(", (1, 2)),
    ("(v 1 a", (1, 7)),
    ("(v 0 a)", (1, 4)),
    ("(v 01 a)", (1, 4)),
    ("(v -1 a)", (1, 4)),
    ("(v 1)", (1, 5)),
    ("(x 1 a)", (1, 2)),
    ("(v 1 a) (v 2 b)", (1, 9)),
    ("(v 1 a))", (1, 8)),
    ("(u (v 1 a))", (1, 11)),
    ("(u (v 1 a) (v 2 b) (v 3 c))", (1, 20)),
    ("(j 1 2)", (1, 7)),
    ("(j 1 (v 1 a))", (1, 6)),
    ("(r 1 2 3 (v 1 a))", (1, 8)),
    ("(v 1 a-b)", (1, 7)),
    ("(u\n  (v 1 a)\n  v 2 b)", (3, 3)),
    ("v 1 a", (1, 1)),
]


def spike_graph(rng, t, max_part=3):
    """A random spike: cliques B_i, C_i; Cs pairwise complete; nested B_i -> C_i traces."""
    n = 0
    B, C, edges = [], [], []
    for _ in range(t):
        b = list(range(n, n + rng.randint(1, max_part)))
        n += len(b)
        c = list(range(n, n + rng.randint(1, max_part)))
        n += len(c)
        B.append(tuple(b))
        C.append(tuple(c))
        edges += combinations(b, 2)
        edges += combinations(c, 2)
        reach = sorted((rng.randint(0, len(c)) for _ in b), reverse=True)
        edges += [(v, c[k]) for v, r in zip(b, reach) for k in range(r)]
    for c1, c2 in combinations(C, 2):
        edges += [(u, v) for u in c1 for v in c2]
    return Graph.from_edges(n, edges), SpikePartition(tuple(B), tuple(C))
