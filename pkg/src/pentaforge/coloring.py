"""Chromatic number: an exact branch-and-bound oracle and the structural pipeline
(peel simplicial vertices, strip universals, k-expression DP on the rest)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .cliquewidth import Intro, Join, KExpression, Rename, core_expression, postorder
from .graph import Graph, bits, clique_number, max_clique

ORACLE_LIMIT = 30


@dataclass(frozen=True)
class ColoringResult:
    chi: int
    assignment: dict[int, int]  # vertex -> color in 1..chi

    def to_json(self) -> dict:
        return {"chi": self.chi, "assignment": {str(v): c for v, c in sorted(self.assignment.items())}}


class TooLarge(ValueError):
    pass


class StateExplosion(RuntimeError):
    pass


class NotInClassError(ValueError):
    def __init__(self, pattern: str, witness: tuple) -> None:
        super().__init__(f"graph contains an induced {pattern} at {list(witness)}")
        self.pattern = pattern
        self.witness = witness


def is_proper(g: Graph, assignment: dict[int, int]) -> bool:
    if set(assignment) != set(range(g.n)):
        return False
    return all(assignment[u] != assignment[v] for u, v in g.edges())


def dsatur(g: Graph) -> dict[int, int]:
    """Greedy coloring by saturation degree (ties: degree, then lowest id)."""
    colour: dict[int, int] = {}
    masks: list[int] = []
    while len(colour) < g.n:
        v = max((u for u in range(g.n) if u not in colour),
                key=lambda u: (sum(1 for m in masks if g.adj[u] & m), g.degree(u), -u))
        c = next((i for i, m in enumerate(masks) if not g.adj[v] & m), len(masks))
        if c == len(masks):
            masks.append(0)
        masks[c] |= 1 << v
        colour[v] = c + 1
    return colour


def chromatic_exact(g: Graph, limit: int = ORACLE_LIMIT) -> ColoringResult:
    """Exact chromatic number by DSATUR branch and bound."""
    if g.n > limit:
        raise TooLarge(f"oracle refuses n = {g.n} > {limit}")
    if g.n == 0:
        return ColoringResult(0, {})
    best = dsatur(g)
    ub = max(best.values())
    clique = sorted(max_clique(g))
    lb = len(clique)
    if ub == lb:
        return ColoringResult(ub, best)
    colour = [0] * g.n
    masks = [0] * (ub + 1)
    for i, v in enumerate(clique, 1):
        colour[v] = i
        masks[i] |= 1 << v
    state = {"ub": ub, "best": best}

    def search(coloured: int, used: int) -> None:
        if coloured == g.n:
            state["ub"] = used
            state["best"] = {v: colour[v] for v in range(g.n)}
            return
        v = max((u for u in range(g.n) if not colour[u]),
                key=lambda u: (sum(1 for c in range(1, used + 1) if g.adj[u] & masks[c]),
                               g.degree(u)))
        for c in range(1, min(used + 1, state["ub"] - 1) + 1):
            if g.adj[v] & masks[c]:
                continue
            colour[v] = c
            masks[c] |= 1 << v
            search(coloured + 1, max(used, c))
            masks[c] &= ~(1 << v)
            colour[v] = 0
            if state["ub"] == lb:
                return

    search(lb, lb)
    return ColoringResult(state["ub"], state["best"])


def k_colorable_exact(g: Graph, k: int) -> bool:
    return chromatic_exact(g).chi <= k


@dataclass(frozen=True)
class PeelTrace:
    removed: tuple[tuple[int, int], ...]  # (vertex, degree at removal), in order
    core: Graph
    core_ids: tuple[int, ...]  # core vertex i is original vertex core_ids[i]


def peel_simplicial(g: Graph) -> PeelTrace:
    """Delete the lowest-id simplicial vertex until none is left."""
    alive = g.full
    removed = []
    while True:
        for v in bits(alive):
            nb = g.adj[v] & alive
            if g.is_clique(nb):
                removed.append((v, nb.bit_count()))
                alive &= ~(1 << v)
                break
        else:
            break
    core, ids = g.induced(bits(alive))
    return PeelTrace(tuple(removed), core, tuple(ids))


# k-colorability over a k-expression.  A state lists, for each of the k colors,
# the set of labels carried by vertices of that color; colors are
# interchangeable, so states are kept sorted.

State = tuple[frozenset[int], ...]


def _canon(sets) -> State:
    return tuple(sorted(sets, key=lambda s: (len(s), sorted(s))))


def _positions(raw: State, canon: State) -> list[int]:
    """For each raw position, a distinct canonical position holding the same set."""
    free: dict[frozenset[int], list[int]] = {}
    for q, s in enumerate(canon):
        free.setdefault(s, []).append(q)
    return [free[s].pop() for s in raw]


def _shape(s: State) -> tuple[int, ...]:
    first: dict[frozenset[int], int] = {}
    return tuple(first.setdefault(c, i) for i, c in enumerate(s))


@cache
def _pairings(s1: tuple, s2: tuple) -> list[tuple[int, ...]]:
    """Ways to pair the color classes of two states, given by their shapes, as
    maps from s1 positions to s2 positions.  Pairings that differ only by a swap
    of equal classes (on either side) are listed once."""
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(s1):
        groups.setdefault(c, []).append(i)
    where: dict[int, list[int]] = {}
    for j, c in enumerate(s2):
        where.setdefault(c, []).append(j)
    keys = list(where)
    left = {c: len(js) for c, js in where.items()}
    slots = [i for idxs in groups.values() for i in idxs]
    # picks are nondecreasing within a group of equal s1 classes
    starts = {idxs[0] for idxs in groups.values()}
    chosen: list[int] = [0] * len(s1)
    out: list[tuple[int, ...]] = []

    def pick(slot: int, lo: int) -> None:
        if slot == len(slots):
            used = dict.fromkeys(keys, 0)
            perm = [0] * len(s1)
            for i in range(len(s1)):
                c = keys[chosen[i]]
                perm[i] = where[c][used[c]]
                used[c] += 1
            out.append(tuple(perm))
            return
        i = slots[slot]
        for ki in range(0 if i in starts else lo, len(keys)):
            c = keys[ki]
            if left[c]:
                left[c] -= 1
                chosen[i] = ki
                pick(slot + 1, ki)
                left[c] += 1

    pick(0, 0)
    return out


def _dp(e: KExpression, k: int, max_states: int):
    empty = frozenset()
    tables: dict[int, dict[State, object]] = {}
    order = postorder(e)
    for node in order:
        if isinstance(node, Intro):
            table = {_canon([empty] * (k - 1) + [frozenset((node.label,))]): None}
        elif isinstance(node, Join):
            child = tables[id(node.child)]
            table = {s: s for s in child if not any(node.i in c and node.j in c for c in s)}
        elif isinstance(node, Rename):
            table = {}
            for s in tables[id(node.child)]:
                ns = _canon([(c - {node.i}) | {node.j} if node.i in c else c for c in s])
                table.setdefault(ns, s)
        else:
            left, right = tables[id(node.left)], tables[id(node.right)]
            table = {}
            for s1 in left:
                for s2 in right:
                    for p in _pairings(_shape(s1), _shape(s2)):
                        ns = _canon([s1[i] | s2[p[i]] for i in range(k)])
                        if ns not in table:
                            table[ns] = (s1, s2, p)
            if len(table) > max_states:
                raise StateExplosion(f"{len(table)} states at a union node")
        if not table:
            return False, tables, order
        tables[id(node)] = table
        if len(table) > max_states:
            raise StateExplosion(f"{len(table)} states")
    return True, tables, order


def _witness(e: KExpression, k: int, tables) -> dict[str, int]:
    out: dict[str, int] = {}
    root_state = next(iter(tables[id(e)]))
    stack = [(e, root_state, list(range(1, k + 1)))]
    while stack:
        node, state, colours = stack.pop()
        back = tables[id(node)][state]
        if isinstance(node, Intro):
            pos = next(i for i, c in enumerate(state) if c)
            out[node.name] = colours[pos]
        elif isinstance(node, Join):
            stack.append((node.child, back, colours))
        elif isinstance(node, Rename):
            raw = tuple((c - {node.i}) | {node.j} if node.i in c else c for c in back)
            where = _positions(raw, state)
            stack.append((node.child, back, [colours[where[p]] for p in range(k)]))
        else:
            s1, s2, perm = back
            raw = tuple(s1[i] | s2[perm[i]] for i in range(k))
            where = _positions(raw, state)
            c1 = [colours[where[p]] for p in range(k)]
            c2 = [0] * k
            for p in range(k):
                c2[perm[p]] = c1[p]
            stack.append((node.left, s1, c1))
            stack.append((node.right, s2, c2))
    return out


def k_colorable_cwd(e: KExpression, k: int, max_states: int = 200_000) -> bool:
    if k < 1:
        return False
    ok, _, _ = _dp(e, k, max_states)
    return ok


def k_coloring_cwd(e: KExpression, k: int, max_states: int = 200_000) -> dict[str, int] | None:
    """A proper coloring with colors 1..k keyed by vertex name, or None."""
    if k < 1:
        return None
    ok, tables, _ = _dp(e, k, max_states)
    return _witness(e, k, tables) if ok else None


def chromatic_structured(g: Graph) -> ColoringResult:
    """Chromatic number of a (2P3, C4, C6)-free graph with a witness coloring."""
    from .patterns import forbidden_profile
    from .recognizer import InClassNoSimplicial, InternalContradiction, classify

    bad = forbidden_profile(g).first_violation()
    if bad is not None:
        raise NotInClassError(*bad)
    trace = peel_simplicial(g)
    colour: dict[int, int] = {}
    chi_core = 0
    if trace.core.n:
        core = trace.core
        outcome = classify(core)
        if not isinstance(outcome, InClassNoSimplicial):
            raise InternalContradiction(f"peeled core classified as {outcome.kind}")
        cert = outcome.certificate
        inner_ids = [v for v in range(core.n) if v not in set(cert.universals)]
        inner, _ = core.induced(inner_ids)
        greedy = dsatur(inner)
        ub = max(greedy.values())
        inner_colour = {inner_ids[v]: c for v, c in greedy.items()}
        k = ub
        omega = clique_number(inner)
        if ub > omega:
            expr = core_expression(core, cert)
            for cand in range(omega, ub):
                wit = k_coloring_cwd(expr, cand)
                if wit is not None:
                    inner_colour = {int(name): c for name, c in wit.items()}
                    k = cand
                    break
        for i, u in enumerate(cert.universals, 1):
            inner_colour[u] = k + i
        chi_core = k + len(cert.universals)
        colour = {trace.core_ids[v]: c for v, c in inner_colour.items()}
    chi = max([chi_core] + [d + 1 for _, d in trace.removed])
    for v, _ in reversed(trace.removed):
        taken = {colour[u] for u in bits(g.adj[v]) if u in colour}
        colour[v] = next(c for c in range(1, chi + 1) if c not in taken)
    return ColoringResult(chi, colour)
