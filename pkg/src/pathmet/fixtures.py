"""Bundled example systems used in tests and by `pathmet fixtures run-all`.

Vertex numbering follows the sources shifted to 0-based ids.
"""

from __future__ import annotations

from fractions import Fraction

from .graph import Graph, petersen_graph, complete_bipartite
from .metrize import CertLine, Certificate
from .systems import PartialPathSystem, PathSystem, pair_key


def _two_step(g: Graph, u: int, v: int) -> tuple[int, ...]:
    common = sorted(set(g.adj[u]) & set(g.adj[v]))
    assert len(common) == 1, f"pair ({u},{v}) needs a unique common neighbor"
    return (u, common[0], v)


def petersen_system() -> PathSystem:
    """The non-metrizable system on the Petersen graph: five detour paths of
    length three, all other pairs via their unique 2-step connection."""
    g = petersen_graph()
    special = {
        pair_key(1, 7): (1, 0, 5, 7),
        pair_key(2, 8): (2, 1, 6, 8),
        pair_key(3, 9): (3, 2, 7, 9),
        pair_key(4, 5): (4, 3, 8, 5),
        pair_key(0, 6): (0, 4, 9, 6),
    }
    paths = {}
    for u, v in g.vertex_pairs():
        key = pair_key(u, v)
        if key in special:
            paths[key] = special[key]
        elif g.has_edge(u, v):
            paths[key] = (u, v)
        else:
            paths[key] = _two_step(g, u, v)
    return PathSystem.from_paths(g, paths.values())


def petersen_certificate() -> Certificate:
    """Unit multipliers over the five detour inequalities; the combination is
    +1 on each inner pentagram edge."""
    rows = [
        ((1, 0, 5, 7), (1, 2, 7)),
        ((2, 1, 6, 8), (2, 3, 8)),
        ((3, 2, 7, 9), (3, 4, 9)),
        ((4, 3, 8, 5), (4, 0, 5)),
        ((0, 4, 9, 6), (0, 1, 6)),
    ]
    return Certificate(
        lines=tuple(CertLine(p, q, Fraction(1)) for p, q in rows),
        strict=False)

PETERSEN_FORCED_EDGES = ((5, 7), (5, 8), (6, 8), (6, 9), (7, 9))


def prism_graph_fixture() -> Graph:
    """Two triangles 0-1-2 and 3-4-5 joined by the matching i ~ i+3."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                                (0, 3), (1, 4), (2, 5)])


def prism_system() -> PathSystem:
    """Metrizable but not strictly: neighborly, with both rotation families of
    two-step paths between the triangles."""
    g = prism_graph_fixture()
    paths = [list(e) for e in g.edges]
    for i in range(3):
        x_i, y_i = i, i + 3
        x_n, y_n = (i + 1) % 3, (i + 1) % 3 + 3
        paths.append((x_i, y_i, y_n))
        paths.append((y_i, x_i, x_n))
    return PathSystem.from_paths(g, paths)


def prism_strict_certificate() -> Certificate:
    """All six detour inequalities with unit multipliers cancel to 0 < 0."""
    g = prism_graph_fixture()
    del g
    rows = []
    for i in range(3):
        x_i, y_i = i, i + 3
        x_n, y_n = (i + 1) % 3, (i + 1) % 3 + 3
        rows.append(((x_i, y_i, y_n), (x_i, x_n, y_n)))
        rows.append(((y_i, x_i, x_n), (y_i, y_n, x_n)))
    return Certificate(
        lines=tuple(CertLine(p, q, Fraction(1)) for p, q in rows),
        strict=True)


def non_extendable_partial() -> PartialPathSystem:
    """Four colored paths that admit no consistent completion.

    0 and 5 sit on opposite sides of the 4-cycle 1-3, 3-5.. pattern: vertices
    1, 2 attach to 0; vertices 3, 4 attach to 5; the crossing edges 1-4 and
    2-3 complete the trap.
    """
    g = Graph.from_edges(6, [(0, 1), (0, 2), (3, 5), (4, 5),
                             (1, 3), (2, 4), (1, 4), (2, 3)])
    return PartialPathSystem.from_paths(g, [
        (0, 1, 4),
        (0, 2, 3),
        (5, 3, 1),
        (5, 4, 2),
    ])


def edge_contraction_metrizable_graph() -> Graph:
    """Eight vertices; contracting the edge {0,7} yields the non-metrizable
    seven-vertex graph with two ears (catalog entry 2)."""
    return Graph.from_edges(8, [(0, 1), (0, 5), (0, 7), (1, 2), (2, 3), (3, 4),
                                (4, 7), (2, 5), (6, 7), (3, 6)])


def k24_system() -> PathSystem:
    """Neighborly system on K_{2,4} (hubs 0, 1; leaves 2..5) that is induced
    by unit weights but not strictly inducible."""
    g = complete_bipartite(2, 4)
    paths = [list(e) for e in g.edges]
    paths += [
        (2, 1, 3), (4, 1, 5), (2, 0, 4), (3, 0, 5),
        (3, 1, 4), (2, 0, 5), (0, 2, 1),
    ]
    return PathSystem.from_paths(g, paths)


def k24_strict_certificate() -> Certificate:
    rows = [
        ((2, 1, 3), (2, 0, 3)),
        ((4, 1, 5), (4, 0, 5)),
        ((2, 0, 4), (2, 1, 4)),
        ((3, 0, 5), (3, 1, 5)),
    ]
    return Certificate(
        lines=tuple(CertLine(p, q, Fraction(1)) for p, q in rows),
        strict=True)
