from pentaforge.graph import (
    Graph,
    is_anticonnected,
    is_isomorphic,
    simplicial_vertices,
    true_twin_classes,
    universal_vertices,
)
from pentaforge.named import (
    T0_LABELS,
    base_labels,
    base_library,
    patterns,
    pentagon,
    t0,
    t1,
)
from pentaforge.patterns import find_induced, forbidden_profile
from pentaforge.recognizer import check_bases_twin_free


def _clean(g: Graph) -> bool:
    return (forbidden_profile(g).in_class and not simplicial_vertices(g)
            and not universal_vertices(g) and len(true_twin_classes(g)) == g.n)


def test_pentagon_sizes():
    assert (pentagon(3).n, pentagon(3).m) == (7, 9)
    assert (pentagon(4).n, pentagon(4).m) == (9, 14)


def test_t0_is_clean_and_contains_a_3_pentagon():
    assert t0().n == 9
    assert _clean(t0())
    assert find_induced(t0(), pentagon(3)) is not None


def test_t1_is_the_unique_clean_one_vertex_extension_of_t0():
    base = t0()
    survivors = []
    for mask in range(1, 1 << base.n):
        nbrs = [v for v in range(base.n) if mask >> v & 1]
        g = Graph.from_edges(base.n + 1, base.edges() + [(v, base.n) for v in nbrs])
        if _clean(g):
            survivors.append(g)
    assert survivors
    assert all(is_isomorphic(g, t1()) is not None for g in survivors)
    assert _clean(t1())


def test_library_shape():
    lib = base_library()
    assert len(lib) == 37
    assert lib["M0"].n == 12
    assert list(lib)[-2:] == ["T0", "T1"]
    for name, g in lib.items():
        assert len(base_labels(name)) == g.n
    assert base_labels("T0") == T0_LABELS


def test_every_m_member_contains_c7():
    for name, g in base_library().items():
        has_c7 = find_induced(g, Graph.cycle(7)) is not None
        assert has_c7 == (name not in ("T0", "T1")), name


def test_bases_are_twin_free_and_clean():
    assert check_bases_twin_free()
    for name, g in base_library().items():
        assert _clean(g), name
        assert is_anticonnected(g), name


def test_pattern_table_is_ordered_by_size():
    sizes = [g.n for g in patterns().values()]
    assert sizes == sorted(sizes)
    assert len(patterns()) == 8
