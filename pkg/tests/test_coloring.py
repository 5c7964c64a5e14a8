import random

import pytest
from helpers import brute_chi, class_member, graphs, random_graph
from hypothesis import given, settings

from pentaforge.certificates import Certificate, Crown
from pentaforge.cliquewidth import (
    Intro,
    evaluate,
    expr_crown,
    expr_villa,
    random_expression,
)
from pentaforge.coloring import (
    NotInClassError,
    TooLarge,
    chromatic_exact,
    chromatic_structured,
    dsatur,
    is_proper,
    k_colorable_cwd,
    k_coloring_cwd,
    peel_simplicial,
)
from pentaforge.families import VillaParams, add_universal, random_member, villa
from pentaforge.graph import Graph, clique_number, simplicial_vertices
from pentaforge.named import pentagon

C5 = Graph.cycle(5)


@pytest.mark.parametrize("g, chi", [(C5, 3), (Graph.complete(6), 6), (pentagon(3), 3),
                                    (Graph.empty(0), 0), (Graph.empty(3), 1)])
def test_oracle_examples(g, chi):
    res = chromatic_exact(g)
    assert res.chi == chi and is_proper(g, res.assignment)


@given(graphs(max_n=6))
@settings(max_examples=120, deadline=None)
def test_oracle_matches_brute_force(g):
    res = chromatic_exact(g)
    assert res.chi == brute_chi(g)
    assert is_proper(g, res.assignment)
    assert set(res.assignment.values()) <= set(range(1, res.chi + 1))


def test_oracle_size_guard():
    with pytest.raises(TooLarge):
        chromatic_exact(Graph.empty(31))


def test_dsatur_is_proper():
    rng = random.Random(1)
    for _ in range(50):
        g = random_graph(rng, rng.randint(1, 15), rng.random())
        assert is_proper(g, dsatur(g))


def test_peel_examples():
    tr = peel_simplicial(Graph.complete(4))
    assert tr.core.n == 0 and max(d for _, d in tr.removed) == 3
    tr = peel_simplicial(C5)
    assert not tr.removed and tr.core == C5
    g, _ = villa(VillaParams.uniform(3))
    extra = Graph.from_edges(9, g.edges() + [(0, 7), (4, 8), (5, 8)])
    tr = peel_simplicial(extra)
    assert sorted(v for v, _ in tr.removed) == [7, 8]
    assert tr.core_ids == tuple(range(7))


def test_structured_examples():
    res = chromatic_structured(add_universal(C5, 2))
    assert res.chi == 5 and is_proper(add_universal(C5, 2), res.assignment)
    g, _ = random_member("crown", 5, 0)
    assert chromatic_structured(g).chi == 3
    with pytest.raises(NotInClassError) as info:
        chromatic_structured(Graph.cycle(4))
    assert info.value.pattern == "C4"


def test_structured_matches_oracle():
    rng = random.Random(5)
    done = 0
    while done < 40:
        g = class_member(rng, 18)
        if g is None:
            continue
        res = chromatic_structured(g)
        assert res.chi == chromatic_exact(g).chi
        assert is_proper(g, res.assignment)
        assert max(res.assignment.values(), default=0) <= res.chi
        done += 1


def test_universal_rule():
    rng = random.Random(6)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 10), rng.random())
        m = rng.randint(0, 3)
        assert chromatic_exact(add_universal(g, m)).chi == chromatic_exact(g).chi + m


def test_simplicial_rule():
    rng = random.Random(7)
    checked = 0
    for _ in range(200):
        g = random_graph(rng, rng.randint(2, 11), rng.uniform(0.3, 0.9))
        simp = simplicial_vertices(g)
        if not simp:
            continue
        v = min(simp)
        rest, _ = g.induced(u for u in range(g.n) if u != v)
        assert chromatic_exact(g).chi == max(g.degree(v) + 1, chromatic_exact(rest).chi)
        checked += 1
    assert checked > 50


def test_dp_examples():
    e = expr_crown(C5, Certificate(Crown(tuple((i,) for i in range(5)), 0)))
    assert not k_colorable_cwd(e, 2) and k_colorable_cwd(e, 3)
    assert k_colorable_cwd(Intro(1, "a"), 1)
    assert not k_colorable_cwd(Intro(1, "a"), 0)
    for seed in range(10):
        g, cert = random_member("villa", 16, seed)
        omega = clique_number(g)
        e = expr_villa(g, cert)
        assert not k_colorable_cwd(e, omega - 1)


def test_dp_witnesses_agree_with_oracle():
    rng = random.Random(3)
    for _ in range(40):
        e = random_expression(rng, rng.randint(1, 12), 4, 3)
        lg = evaluate(e)
        chi = chromatic_exact(lg.graph).chi
        for k in range(1, 5):
            assert k_colorable_cwd(e, k) == (chi <= k)
            wit = k_coloring_cwd(e, k)
            assert (wit is not None) == (chi <= k)
            if wit is not None:
                idx = {name: i for i, name in enumerate(lg.names)}
                assert is_proper(lg.graph, {idx[n]: c for n, c in wit.items()})
                assert max(wit.values()) <= k
