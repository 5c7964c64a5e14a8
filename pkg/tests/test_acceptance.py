"""Acceptance suite: ten criteria, each at zero tolerance."""

import random
import time

from acceptance_log import report
from frames import frame_conclusion_problems
from helpers import MALFORMED, class_member, spike_graph

from pentaforge.certificates import Certificate, Thickened, certificate_problems
from pentaforge.cliquewidth import (
    ParseError,
    core_expression,
    evaluate,
    expr_complete,
    expr_spike,
    parse,
    random_expression,
    to_text,
    width,
)
from pentaforge.coloring import (
    chromatic_exact,
    chromatic_structured,
    is_proper,
    k_colorable_cwd,
)
from pentaforge.families import add_universal, random_member, random_ring, thicken
from pentaforge.graph import (
    Graph,
    is_anticonnected,
    is_isomorphic,
    simplicial_vertices,
    universal_vertices,
)
from pentaforge.named import base_library, patterns
from pentaforge.patterns import find_induced, forbidden_profile, holes
from pentaforge.recognizer import (
    HasSimplicial,
    InClassNoSimplicial,
    InternalContradiction,
    NotInClass,
    check_bases_twin_free,
    classify,
    frame_problems,
    recognize_crown,
    witness_verifies,
)

FAMILIES = ("basket", "villa", "mansion", "crown")


def test_01_generator_soundness():
    failures, start = [], time.time()
    for k in range(500):
        family = FAMILIES[k % 4]
        g, _ = random_member(family, 40, k)
        prof = forbidden_profile(g)
        ok = g.n <= 40 and prof.in_class_57
        if family == "crown":
            ok = ok and not prof.present("3-pentagon")
        ok = ok and not simplicial_vertices(g) and not universal_vertices(g) and is_anticonnected(g)
        if not ok:
            failures.append((family, k))
    report(1, f"generator soundness, 500 members n<=40, {time.time() - start:.0f}s", failures, 500)


def _random_clique_labeling(rng):
    n = rng.randint(1, 8)
    labels = rng.randint(1, 4)
    return {v: rng.randint(1, labels) for v in range(n)}


def _thickened_instance(rng):
    name = rng.choice(list(base_library()))
    base = base_library()[name]
    g, blocks = thicken(base, [rng.randint(1, 3) for _ in range(base.n)])
    return g, Certificate(Thickened(name, tuple(tuple(sorted(b)) for b in blocks))), base.n + 1


def test_02_clique_width_bounds():
    rng = random.Random(2)
    failures = []
    checked = 0
    for k in range(200):
        lab = _random_clique_labeling(rng)
        e = expr_complete(lab)
        lg = evaluate(e)
        if not lg.matches(Graph.complete(len(lab))) or width(e) > len(set(lab.values())) + 1 \
                or {int(n): x for n, x in lg.labeling().items()} != lab:
            failures.append(("complete", k))
        g, p = spike_graph(rng, rng.randint(1, 5))
        e = expr_spike(g, p)
        if not evaluate(e).matches(g) or width(e) > 4:
            failures.append(("spike", k))
        for family, bound in (("villa", 4), ("mansion", 5), ("basket", 5), ("crown", 5)):
            g, cert = random_member(family, 40, 1000 + k)
            e = core_expression(g, cert)
            if not evaluate(e).matches(g) or width(e) > bound:
                failures.append((family, k, width(e)))
        g, cert, bound = _thickened_instance(rng)
        e = core_expression(g, cert)
        if not evaluate(e).matches(g) or width(e) > bound:
            failures.append(("thickened", cert.core.base_name, width(e)))
        checked += 7
    report(2, "clique-width builders exact and within width bounds", failures, checked)


def test_03_recognizer_round_trip():
    rng = random.Random(3)
    failures = []
    for k in range(300):
        family = FAMILIES[k % 4]
        g, _ = random_member(family, 30, 3000 + k)
        m = rng.randint(0, 3)
        h = add_universal(g, m)
        out = classify(h)
        if not isinstance(out, InClassNoSimplicial) or certificate_problems(h, out.certificate) \
                or len(out.certificate.universals) != m:
            failures.append((family, k, m, getattr(out, "kind", out)))
    kinds = {"in_class": 0, "has_simplicial": 0, "not_in_class": 0}
    for k in range(100):
        g, _ = random_member(FAMILIES[k % 4], 24, 5000 + k)
        g = add_universal(g, rng.randint(0, 2))
        u, v = rng.sample(range(g.n), 2)
        edges = set(g.edges())
        edges ^= {(min(u, v), max(u, v))}
        h = Graph.from_edges(g.n, edges)
        try:
            out = classify(h)
        except InternalContradiction as exc:
            failures.append(("perturbed", k, str(exc)))
            continue
        kinds[out.kind] += 1
        if isinstance(out, InClassNoSimplicial):
            ok = not certificate_problems(h, out.certificate)
        elif isinstance(out, HasSimplicial):
            nb = h.adj[out.vertex]
            ok = forbidden_profile(h).in_class and h.is_clique(nb)
        else:
            ok = isinstance(out, NotInClass) and witness_verifies(h, out)
        if not ok:
            failures.append(("perturbed", k, out.kind))
    print(f"perturbed outcomes: {kinds}")
    report(3, "recognizer round trip (300) and perturbations (100)", failures, 400)


def test_04_coloring_matches_oracle():
    rng = random.Random(4)
    failures, done, start = [], 0, time.time()
    while done < 200:
        g = class_member(rng, 20)
        if g is None:
            continue
        res = chromatic_structured(g)
        exact = chromatic_exact(g)
        if res.chi != exact.chi or not is_proper(g, res.assignment) \
                or max(res.assignment.values(), default=0) > res.chi:
            failures.append((g.to_text(), res.chi, exact.chi))
        done += 1
    report(4, f"structured coloring equals the oracle, 200 members n<=20, {time.time() - start:.0f}s",
           failures, 200)


def test_05_ring_rigidity():
    failures = []
    for k in range(4, 9):
        for seed in range(50):
            g, _ = random_ring(k, 3 * k, seed)
            hs = holes(g, max(g.n, 4))
            if not hs or any(len(h) != k for h in hs):
                failures.append((k, seed, sorted({len(h) for h in hs})))
    report(5, "every hole of a k-ring has length k, k=4..8", failures, 250)


def test_06_five_ring_equivalences():
    failures, free = [], 0
    for seed in range(100):
        g, _ = random_ring(5, 16, seed)
        no_4k1 = find_induced(g, patterns()["4K1"]) is None
        no_2p3 = find_induced(g, patterns()["2P3"]) is None
        crown = recognize_crown(g) is not None
        free += no_4k1
        if not (no_4k1 == no_2p3 == crown):
            failures.append((seed, no_4k1, no_2p3, crown))
    print(f"4K1-free five-rings: {free} of 100")
    report(6, "5-rings: 4K1-free iff 2P3-free iff crown", failures, 100)


def test_07_frame_conclusions():
    failures = []
    for k in range(400):
        family = ("villa", "basket")[k % 2]
        g, cert = random_member(family, 30, 7000 + k)
        c = cert.core
        masks = [sum(1 << v for v in p) for p in (c.A, *c.B, *c.C)]
        t = len(c.B)
        problems = frame_problems(g, masks[0], masks[1:t + 1], masks[t + 1:])
        problems += frame_conclusion_problems(g, c.A, c.B, c.C)
        if problems:
            failures.append((family, k, problems[0]))
    report(7, "villa and basket frames satisfy the clause checks", failures, 400)


def test_08_thickening_recovery():
    lib = base_library()
    canonical = {n: next(m for m in lib if is_isomorphic(lib[m], lib[n]) is not None) for n in lib}
    failures = [] if check_bases_twin_free() else ["bases are not twin-free"]
    for rep in range(2):
        for name, base in lib.items():
            rng = random.Random(f"{name}:{rep}")
            g, _ = thicken(base, [rng.randint(1, 3) for _ in range(base.n)])
            out = classify(g)
            got = out.certificate.core.base_name if isinstance(out, InClassNoSimplicial) else out.kind
            if got != canonical[name]:
                failures.append((name, got))
    report(8, "thickenings of all 37 bases recover the base (twice each)", failures, 74)


def test_09_parser():
    rng = random.Random(9)
    failures = []
    for k in range(1000):
        e = random_expression(rng, rng.randint(1, 30), rng.randint(1, 6), 3)
        if parse(to_text(e)) != e:
            failures.append(("round trip", k))
    for text, where in MALFORMED:
        try:
            parse(text)
            failures.append(("accepted", text))
        except ParseError as exc:
            if (exc.line, exc.col) != where:
                failures.append(("position", text, (exc.line, exc.col)))
    report(9, "1000 parser round trips and 20 positioned syntax errors", failures,
           1000 + len(MALFORMED))


def test_10_dp_matches_oracle():
    rng = random.Random(10)
    failures = []
    for k in range(100):
        e = random_expression(rng, rng.randint(1, 14), 4, 3)
        assert width(e) <= 4
        chi = chromatic_exact(evaluate(e).graph).chi
        for colors in range(1, 5):
            if k_colorable_cwd(e, colors) != (chi <= colors):
                failures.append((to_text(e), colors))
    report(10, "k-expression DP agrees with the oracle for k<=4", failures, 400)
