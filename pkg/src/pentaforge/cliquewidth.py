"""k-expressions: syntax tree, text format, evaluation, and width-bounded builders.

Vertex names in builder output are the decimal ids of the target graph, so an
evaluated expression can be compared edge-for-edge with the graph it came from.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .certificates import (
    Basket,
    Certificate,
    Crown,
    Mansion,
    Thickened,
    Villa,
    certificate_problems,
)
from .graph import Graph, bits, to_mask
from .named import base_library


@dataclass(frozen=True)
class Intro:
    label: int
    name: str


@dataclass(frozen=True)
class Union:
    left: KExpression
    right: KExpression


@dataclass(frozen=True)
class Join:
    i: int
    j: int
    child: KExpression


@dataclass(frozen=True)
class Rename:
    i: int
    j: int
    child: KExpression


KExpression = Intro | Union | Join | Rename


class KExpressionError(ValueError):
    """Semantically invalid expression (equal labels, duplicate names)."""


class ParseError(KExpressionError):
    def __init__(self, line: int, col: int, msg: str) -> None:
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col
        self.msg = msg


def children(e: KExpression) -> tuple[KExpression, ...]:
    if isinstance(e, Intro):
        return ()
    if isinstance(e, Union):
        return (e.left, e.right)
    return (e.child,)


def postorder(e: KExpression) -> list[KExpression]:
    """Nodes children-first, left to right; iterative so deep trees are fine."""
    out = []
    stack: list[tuple[KExpression, bool]] = [(e, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded or isinstance(node, Intro):
            out.append(node)
            continue
        stack.append((node, True))
        for c in reversed(children(node)):
            stack.append((c, False))
    return out


def to_text(e: KExpression) -> str:
    done: dict[int, str] = {}
    for node in postorder(e):
        if isinstance(node, Intro):
            s = f"(v {node.label} {node.name})"
        elif isinstance(node, Union):
            s = f"(u {done.pop(id(node.left))} {done.pop(id(node.right))})"
        else:
            op = "j" if isinstance(node, Join) else "r"
            s = f"({op} {node.i} {node.j} {done.pop(id(node.child))})"
        done[id(node)] = s
    return done[id(e)]


def width(e: KExpression) -> int:
    labels = set()
    for node in postorder(e):
        if isinstance(node, Intro):
            labels.add(node.label)
        elif not isinstance(node, Union):
            labels.update((node.i, node.j))
    return len(labels)


def names(e: KExpression) -> list[str]:
    return [n.name for n in postorder(e) if isinstance(n, Intro)]


# parsing

_TOKEN = re.compile(r"\s+|[()]|[A-Za-z0-9_]+|.", re.S)
_NAME = re.compile(r"[A-Za-z0-9_]+")
_INT = re.compile(r"[1-9][0-9]*")


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    out = []
    line, col = 1, 1
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if not tok.isspace():
            if tok not in "()" and not _NAME.fullmatch(tok):
                raise ParseError(line, col, f"unexpected character {tok!r}")
            out.append((tok, line, col))
        for ch in tok:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
    out.append(("", line, col))  # end marker
    return out


class _Frame:
    __slots__ = ("op", "line", "col", "ints", "name", "kids")

    def __init__(self, op: str, line: int, col: int) -> None:
        self.op, self.line, self.col = op, line, col
        self.ints: list[int] = []
        self.name: str | None = None
        self.kids: list[KExpression] = []

    def wants(self) -> str:
        if self.op == "v":
            return "int" if not self.ints else "name" if self.name is None else ")"
        if self.op == "u":
            return "expr" if len(self.kids) < 2 else ")"
        return "int" if len(self.ints) < 2 else "expr" if not self.kids else ")"

    def build(self) -> KExpression:
        if self.op == "v":
            return Intro(self.ints[0], self.name)
        if self.op == "u":
            return Union(*self.kids)
        i, j = self.ints
        if i == j:
            raise ParseError(self.line, self.col, f"({self.op} {i} {j}) needs two distinct labels")
        return (Join if self.op == "j" else Rename)(i, j, self.kids[0])


_EXPECT = {"int": "a positive integer label", "name": "a vertex name",
           "expr": "'('", ")": "')'"}


def parse(text: str) -> KExpression:
    """Read one expression; errors carry 1-based line and column."""
    toks = _tokenize(text)
    stack: list[_Frame] = []
    seen: dict[str, tuple[int, int]] = {}
    result = None
    i = 0
    while True:
        tok, line, col = toks[i]
        if result is not None:
            if tok:
                raise ParseError(line, col, "trailing input after expression")
            return result
        if not tok:
            want = _EXPECT[stack[-1].wants()] if stack else "'('"
            raise ParseError(line, col, f"unexpected end of input, expected {want}")
        want = stack[-1].wants() if stack else "expr"
        if tok == "(":
            if want != "expr":
                raise ParseError(line, col, f"expected {_EXPECT[want]}")
            op, oline, ocol = toks[i + 1]
            if op not in ("v", "u", "j", "r"):
                raise ParseError(oline, ocol, f"unknown operator {op!r}, expected v, u, j or r")
            stack.append(_Frame(op, line, col))
            i += 2
            continue
        if not stack:
            raise ParseError(line, col, f"expected '(', got {tok!r}")
        f = stack[-1]
        if want == ")":
            if tok != ")":
                raise ParseError(line, col, "expected ')'")
            node = f.build()
            stack.pop()
            if stack:
                stack[-1].kids.append(node)
            else:
                result = node
        elif want == "int":
            if not _INT.fullmatch(tok):
                raise ParseError(line, col, f"expected a positive integer label, got {tok!r}")
            f.ints.append(int(tok))
        elif want == "name":
            if tok == ")":
                raise ParseError(line, col, "expected a vertex name")
            if tok in seen:
                raise ParseError(line, col, f"duplicate vertex name {tok!r}")
            seen[tok] = (line, col)
            f.name = tok
        else:
            raise ParseError(line, col, f"expected '(', got {tok!r}")
        i += 1


# evaluation


@dataclass(frozen=True)
class LabeledGraph:
    names: tuple[str, ...]
    graph: Graph
    labels: tuple[int, ...]

    def labeling(self) -> dict[str, int]:
        return dict(zip(self.names, self.labels))

    def edge_names(self) -> set[frozenset[str]]:
        return {frozenset((self.names[u], self.names[v])) for u, v in self.graph.edges()}

    def matches(self, g: Graph, vertices: Iterable[int] | None = None) -> bool:
        """Edge-exact equality with g (restricted to ``vertices``) under name = str(id)."""
        ids = list(range(g.n)) if vertices is None else list(vertices)
        if sorted(self.names) != sorted(str(v) for v in ids):
            return False
        index = {name: k for k, name in enumerate(self.names)}
        pos = [index[str(v)] for v in ids]
        return all(
            g.has_edge(ids[a], ids[b]) == self.graph.has_edge(pos[a], pos[b])
            for a in range(len(ids)) for b in range(a + 1, len(ids))
        )


def evaluate(e: KExpression) -> LabeledGraph:
    vnames: list[str] = []
    index: dict[str, int] = {}
    adj: list[int] = []
    state: dict[int, dict[int, int]] = {}  # node -> label -> vertex mask
    for node in postorder(e):
        if isinstance(node, Intro):
            if node.label < 1:
                raise KExpressionError(f"label {node.label} is not positive")
            if node.name in index:
                raise KExpressionError(f"duplicate vertex name {node.name!r}")
            index[node.name] = len(vnames)
            vnames.append(node.name)
            adj.append(0)
            st = {node.label: 1 << index[node.name]}
        elif isinstance(node, Union):
            st = state.pop(id(node.left))
            for lab, m in state.pop(id(node.right)).items():
                st[lab] = st.get(lab, 0) | m
        else:
            if node.i == node.j:
                raise KExpressionError(f"labels in {type(node).__name__} must differ")
            st = state.pop(id(node.child))
            if isinstance(node, Join):
                mi, mj = st.get(node.i, 0), st.get(node.j, 0)
                for v in bits(mi):
                    adj[v] |= mj
                for v in bits(mj):
                    adj[v] |= mi
            elif node.i in st:
                st[node.j] = st.get(node.j, 0) | st.pop(node.i)
        state[id(node)] = st
    labels = [0] * len(vnames)
    for lab, m in state[id(e)].items():
        for v in bits(m):
            labels[v] = lab
    return LabeledGraph(tuple(vnames), Graph(len(vnames), tuple(adj)), tuple(labels))


eval_expr = evaluate


# building blocks that skip operations on absent labels


class _Part:
    __slots__ = ("node", "labels")

    def __init__(self, node: KExpression, labels: frozenset[int]) -> None:
        self.node = node
        self.labels = labels

    @classmethod
    def intro(cls, label: int, v: int | str) -> _Part:
        return cls(Intro(label, str(v)), frozenset((label,)))

    def union(self, other: _Part | None) -> _Part:
        if other is None:
            return self
        return _Part(Union(self.node, other.node), self.labels | other.labels)

    def join(self, i: int, *js: int) -> _Part:
        p = self
        for j in js:
            if i in p.labels and j in p.labels:
                p = _Part(Join(i, j, p.node), p.labels)
        return p

    def rename(self, i: int, j: int) -> _Part:
        if i not in self.labels or i == j:
            return self
        return _Part(Rename(i, j, self.node), (self.labels - {i}) | {j})


def _complete(assign: Sequence[tuple[int, int]], spare: int) -> _Part | None:
    """A clique whose vertex v ends with label lab, for (v, lab) in ``assign``.
    New vertices arrive on ``spare``, are joined to everything, then renamed."""
    part = None
    for v, lab in assign:
        if spare == lab:
            raise ValueError("spare label must differ from target labels")
        if part is None:
            part = _Part.intro(lab, v)
            continue
        part = part.union(_Part.intro(spare, v))
        part = part.join(spare, *sorted(part.labels - {spare})).rename(spare, lab)
    return part


def _trace_sorted(g: Graph, part: Iterable[int], target: int) -> list[int]:
    return sorted(part, key=lambda v: (-(g.adj[v] & target).bit_count(), v))


def _spike1(g: Graph, B: Iterable[int], C: Iterable[int], p: int, q: int, x: int, y: int) -> _Part:
    """One B/C pair: B ends on p, C on q; x and y are scratch labels."""
    order = _trace_sorted(g, B, to_mask(C))
    return _spike1_rec(g, order, to_mask(C), p, q, x, y)


def _spike1_rec(g: Graph, order: list[int], cmask: int, p, q, x, y) -> _Part:
    b1, rest = order[0], order[1:]
    if not rest:
        c1 = cmask & g.adj[b1]
        clique = _complete([(c, q) for c in bits(c1)] + [(c, x) for c in bits(cmask & ~c1)], p)
        return _Part.intro(p, b1).union(clique).join(p, q).rename(x, q)
    c2 = cmask & to_mask(v for b in rest for v in bits(g.adj[b]))
    c1 = cmask & g.adj[b1] & ~c2
    c0 = cmask & ~c1 & ~c2
    if c2:
        left = _spike1_rec(g, rest, c2, p, q, x, y)
    else:
        left = _complete([(b, p) for b in rest], q)
    right = _complete([(b1, x)] + [(c, y) for c in bits(c1)], p)
    e = left.union(right).join(x, p, q).join(y, q).rename(x, p).rename(y, q)
    if c0:
        e = e.union(_complete([(c, x) for c in bits(c0)], p)).join(x, q).rename(x, q)
    return e


def _spike(g: Graph, B: Sequence[Iterable[int]], C: Sequence[Iterable[int]],
           p: int, q: int, x: int, y: int) -> _Part:
    e = _spike1(g, B[0], C[0], p, q, x, y)
    for b, c in zip(B[1:], C[1:]):
        e = e.union(_spike1(g, b, c, p, x, q, y)).join(q, x).rename(x, q)
    return e


# public builders


@dataclass(frozen=True)
class SpikePartition:
    B: tuple[tuple[int, ...], ...]
    C: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.B)

    def problems(self, g: Graph) -> list[str]:
        out = []
        if not self.B or len(self.B) != len(self.C):
            return ["need t >= 1 and as many C parts as B parts"]
        bm = [to_mask(b) for b in self.B]
        cm = [to_mask(c) for c in self.C]
        for i in range(self.t):
            if not bm[i] or not cm[i]:
                out.append(f"part {i} empty")
            if not g.is_clique(bm[i]) or not g.is_clique(cm[i]):
                out.append(f"part {i} not a clique")
            for j in range(self.t):
                if i == j:
                    continue
                if not g.is_anticomplete_to(bm[i], bm[j] | cm[j]):
                    out.append(f"B{i} sees part {j}")
                if not g.is_complete_to(cm[i], cm[j]):
                    out.append(f"C{i}-C{j} not complete")
            traces = sorted((g.adj[b] & cm[i] for b in self.B[i]), key=int.bit_count, reverse=True)
            if any(lo & ~hi for hi, lo in zip(traces, traces[1:])):
                out.append(f"B{i} traces not nested")
        return out


def _need(g: Graph, cert: Certificate, kind: type) -> None:
    if not isinstance(cert.core, kind):
        raise ValueError(f"expected a {kind.__name__.lower()} certificate, got {cert.kind}")
    problems = certificate_problems(g, cert)
    if problems:
        raise ValueError("certificate does not verify: " + "; ".join(problems))


def _capped(part: _Part, bound: int, what: str) -> KExpression:
    e = part.node
    if width(e) > bound:
        raise RuntimeError(f"{what} expression used {width(e)} labels, bound is {bound}")
    return e


def expr_complete(labeling: Sequence[tuple[int, int]] | dict[int, int]) -> KExpression:
    """A clique with the given (vertex, label) pairs; at most |labels| + 1 labels."""
    assign = list(labeling.items()) if isinstance(labeling, dict) else list(labeling)
    if not assign:
        raise ValueError("empty clique")
    used = {lab for _, lab in assign}
    spare = next(k for k in range(1, len(used) + 2) if k not in used)
    return _complete(assign, spare).node


def expr_spike(g: Graph, p: SpikePartition, labels: tuple[int, int] = (1, 2)) -> KExpression:
    problems = p.problems(g)
    if problems:
        raise ValueError("not a spike partition: " + "; ".join(problems))
    b, c = labels
    x, y = [k for k in range(1, 5) if k not in labels][:2]
    return _capped(_spike(g, p.B, p.C, b, c, x, y), 4, "spike")


def _villa_part(g: Graph, v: Villa) -> _Part:
    a = _complete([(u, 1) for u in v.A], 2)
    return a.union(_spike(g, v.B, v.C, 2, 3, 1, 4)).join(1, 2)


def expr_villa(g: Graph, cert: Certificate) -> KExpression:
    _need(g, cert, Villa)
    return _capped(_villa_part(g, cert.core), 4, "villa")


def _mansion_part(g: Graph, m: Mansion) -> _Part:
    j = m.j_star
    others = [i for i in range(m.t) if i != j]
    # L1: spike on the other indices (B 1, C 2), B_j/C_j on 4/5, F on 3
    e = _spike(g, [m.B[i] for i in others], [m.C[i] for i in others], 1, 2, 3, 4)
    e = e.union(_complete([(b, 4) for b in m.B[j]] + [(c, 5) for c in m.C[j]], 1))
    e = e.union(_complete([(f, 3) for f in m.F], 1))
    e = e.join(3, 1, 2).join(5, 2)
    # L2: C_j joins C; Y on 5
    e = e.rename(5, 2).union(_complete([(y, 5) for y in m.Y], 4)).join(5, 2, 3)
    # L3: Y joins C, B_j joins F; A on 4
    e = e.rename(5, 2).rename(4, 3)
    e = e.union(_complete([(a, 4) for a in m.A], 3)).join(4, 1, 3)
    # X on 5
    return e.union(_complete([(x, 5) for x in m.X], 4)).join(5, 3, 4)


def expr_mansion(g: Graph, cert: Certificate) -> KExpression:
    _need(g, cert, Mansion)
    return _capped(_mansion_part(g, cert.core), 5, "mansion")


def _basket_part(g: Graph, bk: Basket) -> _Part:
    i_s = bk.i_star
    j_s = bk.j_star if bk.F else i_s
    if j_s == i_s:
        rest = [k for k in range(3) if k != i_s]
        e = _spike(g, [bk.B[k] for k in rest], [bk.C[k] for k in rest], 1, 2, 3, 4)
        e = e.union(_complete([(f, 3) for f in bk.F], 1)).join(3, 1, 2).rename(3, 1)
        # A against B_i*: nested traces, so a 1-spike with A on the B side
        e = e.union(_spike1(g, bk.A, bk.B[i_s], 3, 4, 1, 2)).join(3, 1)
        e = e.union(_complete([(c, 5) for c in bk.C[i_s]], 1)).join(5, 4, 2)
        return e
    k = 3 - i_s - j_s
    e = _spike1(g, bk.B[k], bk.C[k], 1, 2, 3, 4)
    e = e.union(_complete([(f, 3) for f in bk.F], 1)).join(3, 1, 2)
    e = e.union(_complete([(b, 4) for b in bk.B[j_s]] + [(c, 5) for c in bk.C[j_s]], 1))
    e = e.join(5, 2).rename(4, 1).rename(5, 2)
    e = e.union(_spike1(g, bk.A, bk.B[i_s], 4, 5, 1, 2)).join(4, 1, 3).join(5, 3)
    e = e.rename(3, 5).rename(4, 1)
    return e.union(_complete([(c, 3) for c in bk.C[i_s]], 4)).join(3, 2, 5)


def expr_basket(g: Graph, cert: Certificate) -> KExpression:
    _need(g, cert, Basket)
    return _capped(_basket_part(g, cert.core), 5, "basket")


def _crown_part(g: Graph, cr: Crown) -> _Part:
    s = cr.i_star
    X = [cr.X[(s + d) % 5] for d in range(5)]  # X[0] is X_{i*}
    side = to_mask(X[1]) | to_mask(X[4])
    top = _trace_sorted(g, X[0], side)
    reach: dict[int, list[tuple[int, int]]] = {}
    for d, lab in ((1, 2), (4, 3)):
        for w in X[d]:
            r = (g.adj[w] & to_mask(X[0])).bit_count()
            reach.setdefault(r, []).append((w, lab))
    e = None

    def add(v: int, lab: int, joins: tuple[int, ...]) -> None:
        nonlocal e
        if e is None:
            e = _Part.intro(lab, v)
        else:
            e = e.union(_Part.intro(4, v)).join(4, *joins).rename(4, lab)

    for w, lab in sorted(reach.get(0, [])):
        add(w, lab, (lab,))
    for k, u in enumerate(top, 1):
        add(u, 1, (1,))
        for w, lab in sorted(reach.get(k, [])):
            add(w, lab, (1, lab))
    e = e.union(_spike1(g, X[2], X[3], 4, 5, 1, 2))
    return e.join(2, 4).join(3, 5)


def expr_crown(g: Graph, cert: Certificate) -> KExpression:
    _need(g, cert, Crown)
    return _capped(_crown_part(g, cert.core), 5, "crown")


def _thickened_part(th: Thickened) -> _Part:
    base = base_library()[th.base_name]
    worker = base.n + 1
    e = None
    for k, cls in enumerate(th.classes):
        lab = k + 1
        targets = (lab,) + tuple(u + 1 for u in bits(base.adj[k]) if u < k)
        for v in cls:
            if e is None:
                e = _Part.intro(lab, v)
            else:
                e = e.union(_Part.intro(worker, v)).join(worker, *targets).rename(worker, lab)
    return e


def expr_thickened(g: Graph, cert: Certificate) -> KExpression:
    _need(g, cert, Thickened)
    bound = base_library()[cert.core.base_name].n + 1
    return _capped(_thickened_part(cert.core), bound, "thickened")


def expr_add_universal(e: KExpression, m: int, new_names: Sequence[str] | None = None) -> KExpression:
    """Append m universal vertices; uses at most max(width(e), 2) labels."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return e
    present = names(e)
    if new_names is None:
        new_names = [str(len(present) + k) for k in range(m)]
    if len(new_names) != m or set(new_names) & set(present) or len(set(new_names)) != m:
        raise ValueError("universal vertex names must be m fresh distinct names")
    used = sorted({n.label for n in postorder(e) if isinstance(n, Intro)}
                  | {lab for n in postorder(e) if isinstance(n, (Join, Rename)) for lab in (n.i, n.j)})
    live = set(evaluate(e).labels)
    base = min(live)
    spare = next((lab for lab in used if lab != base), base + 1)
    part = _Part(e, frozenset(live))
    for lab in sorted(live - {base}):
        part = part.rename(lab, base)
    for name in new_names:
        part = part.union(_Part(Intro(spare, name), frozenset((spare,))))
        part = part.join(spare, base).rename(spare, base)
    return part.node


def core_expression(g: Graph, cert: Certificate) -> KExpression:
    """Expression for the certificate's core only (universal vertices left out)."""
    c = cert.core
    if isinstance(c, Mansion):
        return expr_mansion(g, cert)
    if isinstance(c, Villa):
        return expr_villa(g, cert)
    if isinstance(c, Basket):
        return expr_basket(g, cert)
    if isinstance(c, Crown):
        return expr_crown(g, cert)
    if isinstance(c, Thickened):
        return expr_thickened(g, cert)
    raise ValueError(f"no builder for core kind {cert.kind}")


class NotBuildable(ValueError):
    """classify() did not return a certificate; ``outcome`` says why."""

    def __init__(self, outcome) -> None:
        super().__init__(f"graph has no certificate: {outcome.kind}")
        self.outcome = outcome


def expr_for(g: Graph, cert: Certificate | None = None) -> KExpression:
    """Expression for a class member with no simplicial vertex."""
    if cert is None:
        from .recognizer import InClassNoSimplicial, classify

        outcome = classify(g)
        if not isinstance(outcome, InClassNoSimplicial):
            raise NotBuildable(outcome)
        cert = outcome.certificate
    core = core_expression(g, cert)
    return expr_add_universal(core, len(cert.universals), [str(u) for u in cert.universals])


def random_expression(rng, n: int, max_label: int, ops: int = 2) -> KExpression:
    """A random well-formed expression on n vertices named v0.. with labels
    in 1..max_label; each union is followed by up to ``ops`` joins/renames."""
    if n < 1 or max_label < 1:
        raise ValueError("need n >= 1 and max_label >= 1")
    pending: list[KExpression] = [Intro(rng.randint(1, max_label), f"v{i}") for i in range(n)]
    while len(pending) > 1:
        i = rng.randrange(len(pending))
        left = pending.pop(i)
        right = pending.pop(rng.randrange(len(pending)))
        e: KExpression = Union(left, right)
        if max_label >= 2:
            for _ in range(rng.randint(0, ops)):
                a, b = rng.sample(range(1, max_label + 1), 2)
                e = Join(a, b, e) if rng.random() < 0.7 else Rename(a, b, e)
        pending.append(e)
    return pending[0]
