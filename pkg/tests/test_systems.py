import itertools
import random
from fractions import Fraction

import pytest

from pathmet.errors import (
    CrossingViolation,
    EvenLength,
    InconsistentInput,
    NonPersistentEdge,
    NotACycle,
    NotInducedSubgraph,
    NotNeighborly,
)
from pathmet.graph import Graph, complete_graph, cycle_graph, path_graph
from pathmet.systems import (
    CrossingFunction,
    PartialPathSystem,
    PathSystem,
    all_crossing_functions,
    canonical_odd_system,
    classify_cycle_system,
    crossing_function_of,
    cycle_order,
    extend_neighborly,
    format_path_system,
    induce_from_weights,
    is_consistent,
    is_consistent_partial,
    parse_path_system,
    persistent_edges,
    quotient,
    restricts_to,
    system_of_crossing,
    to_path_system,
    to_tree_system,
)


def tree_system_of(g: Graph) -> PathSystem:
    """Unique system of a graph whose simple paths are unique (a tree)."""
    paths = {}
    for u, v in g.vertex_pairs():
        from pathmet.enumeration import all_simple_paths

        cands = all_simple_paths(g, u, v)
        assert len(cands) == 1
        paths[(u, v)] = cands[0]
    return PathSystem(g, paths)


def all_small_connected_graphs(n_max: int):
    for n in range(2, n_max + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            edges = [e for i, e in enumerate(pairs) if bits >> i & 1]
            if len(edges) < n - 1:
                continue
            g = Graph.from_edges(n, edges)
            if g.is_connected():
                yield g


def test_is_consistent_tree():
    ps = tree_system_of(path_graph(5))
    assert is_consistent(ps) == (True, None)


def test_is_consistent_petersen_fixture():
    from pathmet.fixtures import petersen_system

    assert is_consistent(petersen_system())[0]


def test_is_consistent_violation_witness():
    g = cycle_graph(4)
    ps = PathSystem.from_paths(g, [
        (0, 3, 2, 1), (0, 1, 2), (0, 3), (1, 2), (1, 0, 3), (2, 3)])
    ok, witness = is_consistent(ps)
    assert not ok
    path, x, y = witness
    # the offending subpath disagrees with the stored path for (x, y)
    from pathmet.systems import orient, pair_key, subpath

    assert orient(subpath(path, x, y)) != ps.paths[pair_key(x, y)]


def test_tree_system_roundtrip_s5():
    s5 = canonical_odd_system(5)
    ts = to_tree_system(s5)
    for v in range(5):
        missing = set(s5.graph.edges) - ts.edges_of(v)
        antipodal = tuple(sorted(((v + 2) % 5, (v + 3) % 5)))
        assert missing == {antipodal}
    assert to_path_system(ts).paths == s5.paths


def test_roundtrip_exhaustive_small_graphs():
    """Tree-system correspondence is the identity on every consistent system
    of every connected graph with at most 4 vertices (5-vertex graphs are
    covered by the cycle and sampled sweeps below)."""
    from pathmet.enumeration import enumerate_consistent_systems

    for g in all_small_connected_graphs(4):
        for ps in enumerate_consistent_systems(g):
            assert to_path_system(to_tree_system(ps)).paths == ps.paths


def test_roundtrip_five_vertex_sample():
    from pathmet.enumeration import enumerate_consistent_systems

    rng = random.Random(5)
    graphs = [g for g in all_small_connected_graphs(5) if g.n == 5]
    for g in rng.sample(graphs, 60):
        for ps in enumerate_consistent_systems(g, limit=25):
            assert to_path_system(to_tree_system(ps)).paths == ps.paths


def test_tree_lemma_equivalences():
    """T_u = T_v iff every tree contains P_{u,v} iff all of P_{u,v} shares
    the tree of u; exhaustive on <= 4 vertices plus all cycle systems."""
    from pathmet.enumeration import enumerate_consistent_systems

    def check(ps):
        ts = to_tree_system(ps)
        n = ps.graph.n
        from pathmet.systems import path_edges

        for u, v in ps.graph.vertex_pairs():
            p = ps.path(u, v)
            pe = set(path_edges(p))
            c1 = ts.edges_of(u) == ts.edges_of(v)
            c2 = all(pe <= ts.edges_of(w) for w in range(n))
            c3 = all(ts.edges_of(z) == ts.edges_of(u) for z in p)
            assert c1 == c2 == c3

    for g in all_small_connected_graphs(4):
        for ps in enumerate_consistent_systems(g):
            check(ps)
    from pathmet.enumeration import enumerate_consistent_systems as _enum
    for ps in _enum(cycle_graph(5)):
        check(ps)


def test_persistent_edges_examples():
    tree = tree_system_of(path_graph(4))
    assert persistent_edges(tree) == set(tree.graph.edges)
    assert persistent_edges(canonical_odd_system(5)) == set()


def test_persistent_edge_entry4():
    from pathmet.catalog import catalog

    entry = catalog()[3]
    assert (0, 1) in persistent_edges(entry.fixture_system)


def test_quotient_trivial_to_point():
    ps = tree_system_of(path_graph(3))
    q, vmap = quotient(ps, persistent_edges(ps))
    assert q.graph.n == 1 and not q.paths
    assert len(set(vmap)) == 1


def test_quotient_requires_persistent():
    s5 = canonical_odd_system(5)
    with pytest.raises(NonPersistentEdge):
        quotient(s5, [s5.graph.edges[0]])


def test_quotient_reduced_property():
    """Contracting all persistent edges leaves a system with none."""
    from pathmet.enumeration import enumerate_consistent_systems

    for g in (cycle_graph(6), cycle_graph(5)):
        for ps in enumerate_consistent_systems(g):
            pers = persistent_edges(ps)
            if not pers or len(pers) == len(ps.graph.edges):
                continue
            q, _ = quotient(ps, pers)
            assert persistent_edges(q) == set()
            ok, _ = is_consistent(q)
            assert ok


def test_c6_one_persistent_edge_quotients_to_s5():
    from pathmet.enumeration import enumerate_consistent_systems

    hit = False
    for ps in enumerate_consistent_systems(cycle_graph(6)):
        pers = persistent_edges(ps)
        if len(pers) != 1:
            continue
        q, _ = quotient(ps, pers)
        cls = classify_cycle_system(q)
        assert cls.kind == "reduced" and cls.m == 5
        hit = True
    assert hit


def test_induce_from_weights_examples():
    c5 = cycle_graph(5)
    unit = {e: Fraction(1) for e in c5.edges}
    assert induce_from_weights(c5, unit).paths == canonical_odd_system(5).paths

    tree = path_graph(4)
    ps = induce_from_weights(tree, {e: Fraction(1) for e in tree.edges})
    assert ps.paths == tree_system_of(tree).paths

    c4 = cycle_graph(4)
    ps = induce_from_weights(c4, {e: Fraction(1) for e in c4.edges})
    ok, _ = is_consistent(ps)
    assert ok
    # ties at antipodal pairs resolved toward the lexicographically earlier
    # edge-index multiset, and every chosen path is a geodesic
    from pathmet.enumeration import all_simple_paths

    for (u, v), p in ps.paths.items():
        best = min(len(q) for q in all_simple_paths(c4, u, v))
        assert len(p) == best


def test_induce_from_weights_random_consistency():
    rng = random.Random(42)
    done = 0
    while done < 200:
        n = rng.randrange(3, 9)
        pairs = list(itertools.combinations(range(n), 2))
        edges = [e for e in pairs if rng.random() < 0.55]
        g = Graph.from_edges(n, edges)
        if not g.is_connected():
            continue
        w = {e: Fraction(rng.randrange(1, 40), rng.randrange(1, 12)) for e in g.edges}
        ps = induce_from_weights(g, w)
        ok, witness = is_consistent(ps)
        assert ok, (g.edges, w, witness)
        done += 1


def test_extend_neighborly_from_vertex():
    k4 = complete_graph(4)
    seed = PathSystem(Graph.from_edges(1, []), {})
    ps = extend_neighborly(k4, [0], seed)
    assert ps.is_neighborly()
    assert is_consistent(ps)[0]


def test_extend_neighborly_c4_in_host():
    # vertex 4 joins two adjacent cycle vertices 0 and 1
    host = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4)])
    c4 = cycle_graph(4)
    sub = induce_from_weights(c4, {e: Fraction(1) for e in c4.edges})
    assert sub.is_neighborly()
    ps = extend_neighborly(host, [0, 1, 2, 3], sub)
    assert ps.is_neighborly()
    assert is_consistent(ps)[0]
    for (u, v), p in sub.paths.items():
        assert ps.paths[(u, v)] == p


def test_extend_neighborly_rejects_non_induced():
    host = complete_graph(4)
    tri = Graph.from_edges(3, [(0, 1), (1, 2)])
    seed = tree_system_of(tri)
    with pytest.raises(NotInducedSubgraph):
        extend_neighborly(host, [0, 1, 2], seed)


def test_extend_neighborly_rejects_non_neighborly():
    host = complete_graph(4)
    c3 = cycle_graph(3)
    bad = PathSystem.from_paths(c3, [(0, 2, 1), (0, 2), (1, 2)])
    assert is_consistent(bad)[0]
    with pytest.raises(NotNeighborly):
        extend_neighborly(host, [0, 1, 2], bad)


def test_partial_consistency_fixture():
    from pathmet.fixtures import non_extendable_partial

    pps = non_extendable_partial()
    assert is_consistent_partial(pps)
    bad = PartialPathSystem.from_paths(
        pps.graph, list(pps.paths.values()) + [(1, 3, 5, 4)])
    assert not is_consistent_partial(bad)


def test_crossing_function_of_s5():
    cf = crossing_function_of(canonical_odd_system(5))
    for v in range(5):
        assert cf.f[v] == tuple(sorted(((v + 2) % 5, (v + 3) % 5)))


def test_crossing_trivial_constant():
    g = cycle_graph(4)
    ps = system_of_crossing(CrossingFunction(4, {v: (0, 1) for v in range(4)},
                                             tuple(cycle_order(g))))
    cf = crossing_function_of(ps)
    assert set(cf.f.values()) == {(0, 1)}
    assert classify_cycle_system(ps).kind == "trivial"


def test_crossing_violation_rejected():
    g = cycle_graph(4)
    with pytest.raises(CrossingViolation):
        CrossingFunction(4, {0: (0, 1), 1: (0, 1), 2: (1, 2), 3: (2, 3)},
                         tuple(cycle_order(g)))


def test_crossing_bijection_c3():
    from pathmet.enumeration import enumerate_consistent_systems

    systems = {s.canonical_text()
               for s in enumerate_consistent_systems(cycle_graph(3))}
    via_f = {system_of_crossing(cf).canonical_text()
             for cf in all_crossing_functions(3)}
    assert systems == via_f


def test_crossing_roundtrip_small_cycles():
    for n in range(3, 9):
        for cf in all_crossing_functions(n):
            back = crossing_function_of(system_of_crossing(cf))
            assert back.f == cf.f


def test_classify_examples():
    assert classify_cycle_system(canonical_odd_system(7)).m == 7
    from pathmet.enumeration import enumerate_consistent_systems

    for n in range(3, 9):
        for ps in enumerate_consistent_systems(cycle_graph(n)):
            cls = classify_cycle_system(ps)
            if cls.kind == "reduced":
                assert cls.m % 2 == 1 and 3 <= cls.m <= n


def test_not_a_cycle():
    with pytest.raises(NotACycle):
        crossing_function_of(tree_system_of(path_graph(3)))


def test_canonical_odd_system():
    s3 = canonical_odd_system(3)
    assert all(len(p) == 2 for p in s3.paths.values())
    s5 = canonical_odd_system(5)
    assert {len(p) - 1 for p in s5.paths.values()} == {1, 2}
    with pytest.raises(EvenLength):
        canonical_odd_system(6)
    c7 = cycle_graph(7)
    assert canonical_odd_system(7).paths == \
        induce_from_weights(c7, {e: Fraction(1) for e in c7.edges}).paths


def test_restricts_to():
    s5 = canonical_odd_system(5)
    full = restricts_to(s5, range(5))
    assert full is not None and full[0].paths == s5.paths
    # a 3-edge subpath of C5: the geodesic between its endpoints leaves it
    sub = restricts_to(s5, [0, 1, 2, 3], [(0, 1), (1, 2), (2, 3)])
    assert sub is None
    # 2-edge subpath restricts fine
    sub = restricts_to(s5, [0, 1, 2], [(0, 1), (1, 2)])
    assert sub is not None


def test_path_system_text_roundtrip():
    s5 = canonical_odd_system(5)
    text = format_path_system(s5)
    assert parse_path_system(text, s5.graph).paths == s5.paths


@pytest.mark.slow
def test_five_vertex_invariants_exhaustive():
    """Tree-system round trip and the three-way tree-equality lemma over every
    consistent system of every connected labeled 5-vertex graph."""
    from pathmet.enumeration import enumerate_consistent_systems
    from pathmet.systems import path_edges

    for g in all_small_connected_graphs(5):
        if g.n != 5:
            continue
        for ps in enumerate_consistent_systems(g):
            ts = to_tree_system(ps)
            assert to_path_system(ts).paths == ps.paths
            for u, v in g.vertex_pairs():
                p = ps.path(u, v)
                pe = set(path_edges(p))
                c1 = ts.edges_of(u) == ts.edges_of(v)
                c2 = all(pe <= ts.edges_of(w) for w in range(g.n))
                c3 = all(ts.edges_of(z) == ts.edges_of(u) for z in p)
                assert c1 == c2 == c3


def test_to_tree_system_rejects_inconsistent():
    g = cycle_graph(4)
    bad = PathSystem.from_paths(g, [
        (0, 3, 2, 1), (0, 1, 2), (0, 3), (1, 2), (1, 0, 3), (2, 3)])
    with pytest.raises(InconsistentInput):
        to_tree_system(bad)
