"""Fixed small graphs: forbidden patterns, t-pentagons, and the thickening bases."""

from __future__ import annotations

from functools import cache
from itertools import combinations

from .graph import Graph

T0_LABELS = ("a1", "a", "v", "b1", "b2", "b3", "c1", "c2", "c3")
_T0_EDGES = [
    ("a1", "a"), ("a1", "b1"), ("a1", "b2"), ("a1", "b3"),
    ("a", "b2"), ("a", "b3"), ("a", "v"),
    ("v", "c1"),
    ("b1", "c1"), ("b2", "c2"), ("b3", "c3"),
    ("c1", "c2"), ("c1", "c3"), ("c2", "c3"),
]

# T1 = T0 plus a vertex w.  Among all one-vertex extensions of T0, this is the
# only one (up to swapping indices 2 and 3) that stays (2P3,C4,C6)-free with no
# simplicial, universal or twin vertices; tests/test_named.py re-derives it.
T1_LABELS = T0_LABELS + ("w",)
_T1_EXTRA = [("w", x) for x in ("a1", "a", "v", "b1", "b2", "c1", "c2")]


def _labelled(labels: tuple[str, ...], edges: list[tuple[str, str]]) -> Graph:
    index = {name: i for i, name in enumerate(labels)}
    return Graph.from_edges(len(labels), [(index[u], index[v]) for u, v in edges])


def pentagon(t: int) -> Graph:
    """The t-pentagon: apex 0, b_i = i, c_i = t + i for i in 1..t."""
    if t < 3:
        raise ValueError("t-pentagon needs t >= 3")
    edges = [(0, i) for i in range(1, t + 1)]
    edges += [(i, t + i) for i in range(1, t + 1)]
    edges += [(t + i, t + j) for i, j in combinations(range(1, t + 1), 2)]
    return Graph.from_edges(2 * t + 1, edges)


@cache
def t0() -> Graph:
    return _labelled(T0_LABELS, _T0_EDGES)


@cache
def t1() -> Graph:
    return _labelled(T1_LABELS, _T0_EDGES + _T1_EXTRA)


@cache
def patterns() -> dict[str, Graph]:
    """The eight profile patterns, in ascending vertex count."""
    return {
        "4K1": Graph.empty(4),
        "C4": Graph.cycle(4),
        "2P3": Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]),
        "C6": Graph.cycle(6),
        "C7": Graph.cycle(7),
        "3-pentagon": pentagon(3),
        "T0": t0(),
        "T1": t1(),
    }


# the M family

X_NAMES = tuple(f"x{i}" for i in range(7))
M0_EXTRAS = ("y0", "y3", "z0", "z3", "z4")
_HOLE = [(f"x{i}", f"x{(i + 1) % 7}") for i in range(7)]
_ATTACH = {
    "y0": (0, 1, 4),
    "y3": (3, 4, 0),
    "z0": (0, 1, 2, 3, 4),
    "z1": (1, 2, 3, 4, 5),
    "z2": (2, 3, 4, 5, 6),
    "z3": (3, 4, 5, 6, 0),
    "z4": (4, 5, 6, 0, 1),
}


def _m_graph(extras: tuple[str, ...], extra_edges: list[tuple[str, str]]) -> Graph:
    edges = list(_HOLE)
    for e in extras:
        edges += [(e, f"x{i}") for i in _ATTACH[e]]
    return _labelled(X_NAMES + extras, edges + extra_edges)


def m0_minus(removed: frozenset[str]) -> Graph:
    keep = tuple(e for e in M0_EXTRAS if e not in removed)
    return _m_graph(keep, list(combinations(keep, 2)))


def m0_name(removed: frozenset[str]) -> str:
    return "M0" + "".join("-" + e for e in M0_EXTRAS if e in removed)


@cache
def base_library() -> dict[str, Graph]:
    """The 37 thickening bases, keyed by name, in a fixed order."""
    lib = {}
    for k in range(len(M0_EXTRAS) + 1):
        for removed in combinations(M0_EXTRAS, k):
            s = frozenset(removed)
            lib[m0_name(s)] = m0_minus(s)
    lib["M1"] = _m_graph(("y0", "z2"), [])
    lib["M2"] = _m_graph(("y0", "z1", "z2"), [("z1", "y0"), ("z1", "z2")])
    lib["M3"] = _m_graph(("y0", "z2", "z3"), [("z3", "y0"), ("z3", "z2")])
    lib["T0"] = t0()
    lib["T1"] = t1()
    return lib


def base_labels(name: str) -> tuple[str, ...]:
    """Human-readable vertex names of a library base, by vertex id."""
    if name == "T0":
        return T0_LABELS
    if name == "T1":
        return T1_LABELS
    if name == "M1":
        return X_NAMES + ("y0", "z2")
    if name == "M2":
        return X_NAMES + ("y0", "z1", "z2")
    if name == "M3":
        return X_NAMES + ("y0", "z2", "z3")
    removed = set(name.split("-")[1:])
    return X_NAMES + tuple(e for e in M0_EXTRAS if e not in removed)
