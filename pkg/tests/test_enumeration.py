import itertools

import pytest

from pathmet.errors import TooLarge
from pathmet.enumeration import (
    all_simple_paths,
    count_consistent_systems,
    enumerate_consistent_systems,
    naive_consistent_systems,
)
from pathmet.graph import Graph, complete_graph, cycle_graph, path_graph
from pathmet.systems import all_crossing_functions, is_consistent, system_of_crossing

# counts frozen after dual-oracle agreement (crossing functions for cycles,
# the naive product-and-filter generator elsewhere)
FROZEN_COUNTS = {
    "tree4": 1,
    "C3": 4,
    "C4": 8,
    "C5": 16,
    "C6": 32,
    "K2": 1,
    "K4": 53,
}


def test_tree_unique_system():
    assert count_consistent_systems(path_graph(4)) == FROZEN_COUNTS["tree4"]
    assert count_consistent_systems(Graph.from_edges(2, [(0, 1)])) == FROZEN_COUNTS["K2"]


def test_cycle_counts_match_crossing_functions():
    for n in range(3, 7):
        enum_count = count_consistent_systems(cycle_graph(n))
        cross_count = sum(1 for _ in all_crossing_functions(n))
        assert enum_count == cross_count == FROZEN_COUNTS[f"C{n}"]


def test_cycle_systems_equal_crossing_family():
    for n in range(3, 8):
        enum_set = {ps.canonical_text()
                    for ps in enumerate_consistent_systems(cycle_graph(n))}
        cross_set = {system_of_crossing(cf).canonical_text()
                     for cf in all_crossing_functions(n)}
        assert enum_set == cross_set


def test_k4_against_naive():
    smart = [ps.canonical_text() for ps in enumerate_consistent_systems(complete_graph(4))]
    naive = [ps.canonical_text() for ps in naive_consistent_systems(complete_graph(4))]
    assert len(smart) == FROZEN_COUNTS["K4"]
    assert sorted(smart) == sorted(naive)


def test_naive_agreement_all_small_graphs():
    for n in (2, 3, 4):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            edges = [e for i, e in enumerate(pairs) if bits >> i & 1]
            if len(edges) < n - 1:
                continue
            g = Graph.from_edges(n, edges)
            if not g.is_connected():
                continue
            smart = sorted(ps.canonical_text()
                           for ps in enumerate_consistent_systems(g))
            naive = sorted(ps.canonical_text() for ps in naive_consistent_systems(g))
            assert smart == naive


def test_all_yields_consistent_and_distinct():
    seen = set()
    for ps in enumerate_consistent_systems(complete_graph(4)):
        ok, _ = is_consistent(ps)
        assert ok
        text = ps.canonical_text()
        assert text not in seen
        seen.add(text)


def test_limit_and_determinism():
    first = [ps.canonical_text()
             for ps in enumerate_consistent_systems(cycle_graph(5), limit=7)]
    again = [ps.canonical_text()
             for ps in enumerate_consistent_systems(cycle_graph(5), limit=7)]
    assert len(first) == 7 and first == again


def test_vertex_bound():
    with pytest.raises(TooLarge):
        list(enumerate_consistent_systems(cycle_graph(10)))
    # explicit override works
    stream = enumerate_consistent_systems(cycle_graph(10), max_vertices=None, limit=1)
    assert sum(1 for _ in stream) == 1


def test_seeded_enumeration_matches_filter():
    from pathmet.systems import PartialPathSystem

    g = cycle_graph(5)
    seed = PartialPathSystem.from_paths(g, [(0, 1, 2)])
    seeded = {ps.canonical_text()
              for ps in enumerate_consistent_systems(g, seed=seed)}
    filtered = {ps.canonical_text()
                for ps in enumerate_consistent_systems(g)
                if ps.paths[(0, 2)] == (0, 1, 2)}
    assert seeded == filtered


def test_parallel_jobs_preserve_order():
    seq = [ps.canonical_text() for ps in enumerate_consistent_systems(complete_graph(4))]
    par = [ps.canonical_text()
           for ps in enumerate_consistent_systems(complete_graph(4), jobs=2)]
    assert seq == par


def test_all_simple_paths_sorted():
    g = complete_graph(4)
    paths = all_simple_paths(g, 0, 3)
    assert paths[0] == (0, 3)
    assert paths == sorted(paths, key=lambda p: (len(p), p))
    assert len(paths) == 5
