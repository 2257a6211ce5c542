"""Path systems and tree systems: consistency, the tree correspondence,
persistent edges and quotients, neighborly extension, and the crossing-function
description of systems on cycles.

A path system stores one simple path per unordered vertex pair, keyed by
(min, max) and oriented from the smaller endpoint.  Consistency is a property
checked by is_consistent, not an invariant of the type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    CrossingViolation,
    EvenLength,
    FormatError,
    InconsistentInput,
    NonPersistentEdge,
    NotACycle,
    NotInducedSubgraph,
    NotNeighborly,
)
from .graph import Edge, Graph, contract_edge, edge_key, path_in_graph

Path = tuple[int, ...]
Pair = tuple[int, int]


def pair_key(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def orient(path) -> Path:
    p = tuple(path)
    return p if p[0] < p[-1] else p[::-1]


def path_edges(path) -> list[Edge]:
    return [edge_key(a, b) for a, b in zip(path, path[1:])]


def subpath(path: Path, x: int, y: int) -> Path:
    i, j = path.index(x), path.index(y)
    if i <= j:
        return path[i:j + 1]
    return path[j:i + 1][::-1]


@dataclass(frozen=True)
class PathSystem:
    graph: Graph
    paths: dict[Pair, Path]

    def __post_init__(self) -> None:
        want = set(itertools.combinations(range(self.graph.n), 2))
        got = set(self.paths)
        if got != want:
            missing = sorted(want - got)[:3]
            extra = sorted(got - want)[:3]
            raise ValueError(f"needs one path per pair; missing={missing} extra={extra}")
        for (u, v), p in self.paths.items():
            if p[0] != u or p[-1] != v:
                raise ValueError(f"path for {(u, v)} must run from {u} to {v}: {p}")
            if not path_in_graph(self.graph, p):
                raise ValueError(f"path {p} is not a simple path of the graph")

    @staticmethod
    def from_paths(graph: Graph, paths) -> "PathSystem":
        table: dict[Pair, Path] = {}
        for p in paths:
            p = orient(p)
            key = (p[0], p[-1])
            if key in table and table[key] != p:
                raise ValueError(f"two different paths given for pair {key}")
            table[key] = p
        return PathSystem(graph, table)

    def path(self, u: int, v: int) -> Path:
        p = self.paths[pair_key(u, v)]
        return p if p[0] == u else p[::-1]

    def pairs(self):
        return sorted(self.paths)

    def is_neighborly(self) -> bool:
        return all(self.paths[e] == e for e in self.graph.edges)

    def used_edges(self) -> set[Edge]:
        used: set[Edge] = set()
        for p in self.paths.values():
            used.update(path_edges(p))
        return used

    def canonical_text(self) -> str:
        return format_path_system(self)


@dataclass(frozen=True)
class PartialPathSystem:
    graph: Graph
    paths: dict[Pair, Path]

    def __post_init__(self) -> None:
        for (u, v), p in self.paths.items():
            if (u, v) != pair_key(u, v):
                raise ValueError(f"pair {(u, v)} not in canonical order")
            if p[0] != u or p[-1] != v:
                raise ValueError(f"path for {(u, v)} must run from {u} to {v}")
            if not path_in_graph(self.graph, p):
                raise ValueError(f"path {p} is not a simple path of the graph")

    @staticmethod
    def from_paths(graph: Graph, paths) -> "PartialPathSystem":
        table: dict[Pair, Path] = {}
        for p in paths:
            p = orient(p)
            table[(p[0], p[-1])] = p
        return PartialPathSystem(graph, table)


@dataclass(frozen=True)
class TreeSystem:
    """One spanning tree per root, stored as parent arrays oriented to the root."""

    graph: Graph
    trees: dict[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        if set(self.trees) != set(range(self.graph.n)):
            raise ValueError("needs one tree per root vertex")
        for root, parent in self.trees.items():
            if len(parent) != self.graph.n or parent[root] != root:
                raise ValueError(f"bad parent array for root {root}")
            for v in range(self.graph.n):
                if v != root and not self.graph.has_edge(v, parent[v]):
                    raise ValueError(f"tree at {root} uses a non-edge ({v},{parent[v]})")
        # spanning: every vertex reaches the root
        for root, parent in self.trees.items():
            for v in range(self.graph.n):
                seen = set()
                while v != root:
                    if v in seen:
                        raise ValueError(f"parent array for root {root} has a cycle")
                    seen.add(v)
                    v = parent[v]

    def edges_of(self, root: int) -> frozenset[Edge]:
        parent = self.trees[root]
        return frozenset(edge_key(v, parent[v])
                         for v in range(self.graph.n) if v != root)

    def tree_path(self, root: int, v: int) -> Path:
        """Path from v to root inside the tree rooted at root."""
        parent = self.trees[root]
        out = [v]
        while out[-1] != root:
            out.append(parent[out[-1]])
        return tuple(out)


# ---------------------------------------------------------------------------
# consistency


def is_consistent(ps: PathSystem) -> tuple[bool, tuple[Path, int, int] | None]:
    """Check the subpath property; on failure return (path, x, y) witnessing it."""
    for p in ps.paths.values():
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                x, y = p[i], p[j]
                if orient(p[i:j + 1]) != ps.paths[pair_key(x, y)]:
                    return False, (p, x, y)
    return True, None


def is_consistent_partial(pps: PartialPathSystem) -> bool:
    """Pairwise: common vertices of any two stored paths bound equal subpaths."""
    paths = list(pps.paths.values())
    for a in range(len(paths)):
        for b in range(a, len(paths)):
            p, q = paths[a], paths[b]
            common = set(p) & set(q)
            for x, y in itertools.combinations(sorted(common), 2):
                if orient(subpath(p, x, y)) != orient(subpath(q, x, y)):
                    return False
    return True


# ---------------------------------------------------------------------------
# tree correspondence


def to_tree_system(ps: PathSystem) -> TreeSystem:
    """E(T_u) is the union of the edges of all paths leaving u."""
    ok, witness = is_consistent(ps)
    if not ok:
        raise InconsistentInput(f"system is inconsistent at {witness}")
    trees: dict[int, tuple[int, ...]] = {}
    n = ps.graph.n
    for u in range(n):
        parent = [-1] * n
        parent[u] = u
        for v in range(n):
            if v == u:
                continue
            p = ps.path(v, u)  # v .. u; parent of each vertex is the next one
            for a, b in zip(p, p[1:]):
                if parent[a] == -1:
                    parent[a] = b
                elif parent[a] != b:
                    raise InconsistentInput(
                        f"paths from root {u} disagree on the parent of {a}")
        trees[u] = tuple(parent)
    return TreeSystem(ps.graph, trees)


def to_path_system(ts: TreeSystem) -> PathSystem:
    """P_{u,v} is the uv path in T_u; T_v must agree."""
    table: dict[Pair, Path] = {}
    for u, v in ts.graph.vertex_pairs():
        p1 = ts.tree_path(u, v)   # v .. u
        p2 = ts.tree_path(v, u)   # u .. v
        if p1 != p2[::-1]:
            raise InconsistentInput(f"trees at {u} and {v} disagree on their path")
        table[(u, v)] = orient(p1)
    return PathSystem(ts.graph, table)


# ---------------------------------------------------------------------------
# persistent edges and quotients


def persistent_edges(ps: PathSystem) -> set[Edge]:
    """Edges in every tree; cross-checked against per-root path coverage."""
    ts = to_tree_system(ps)
    common = set(ps.graph.edges)
    for root in range(ps.graph.n):
        common &= ts.edges_of(root)
    by_paths = set()
    for e in ps.graph.edges:
        if all(any(e in path_edges(ps.path(u, v)) for v in range(ps.graph.n) if v != u)
               for u in range(ps.graph.n)):
            by_paths.add(e)
    assert common == by_paths, "persistent-edge definitions disagree"
    return common


def _contract_system(ps: PathSystem, e: Edge) -> tuple[PathSystem, list[int]]:
    u, v = edge_key(*e)
    if ps.paths[(u, v)] != (u, v):
        # a persistent edge is always its own chosen path
        raise NonPersistentEdge(f"edge {e} is not persistent")
    g2, mapping = contract_edge(ps.graph, (u, v))
    table: dict[Pair, Path] = {}
    for (a, b), p in ps.paths.items():
        img = []
        for w in p:
            nw = mapping[w]
            if not img or img[-1] != nw:
                img.append(nw)
        if len(set(img)) != len(img):
            raise NonPersistentEdge(
                f"path {p} revisits the contracted vertex; {e} is not persistent")
        if len(img) < 2:
            continue
        q = orient(img)
        key = (q[0], q[-1])
        if key in table and table[key] != q:
            raise NonPersistentEdge(
                f"contraction of {e} produced conflicting paths for {key}")
        table[key] = q
    return PathSystem(g2, table), mapping


def quotient(ps: PathSystem, f_edges) -> tuple[PathSystem, list[int]]:
    """Contract the given persistent edges sequentially in ascending edge order.

    Returns the quotient system together with the composed old->new vertex map.
    A fully persistent (trivial) system quotients to a single vertex and an
    empty system.
    """
    ok, witness = is_consistent(ps)
    if not ok:
        raise InconsistentInput(f"system is inconsistent at {witness}")
    pers = persistent_edges(ps)
    todo = sorted(edge_key(*e) for e in f_edges)
    for e in todo:
        if e not in pers:
            raise NonPersistentEdge(f"edge {e} is not persistent")
    current = ps
    total_map = list(range(ps.graph.n))
    for e in sorted(todo, key=lambda e: ps.graph.edge_index(*e)):
        img = edge_key(total_map[e[0]], total_map[e[1]])
        current, mapping = _contract_system(current, img)
        total_map = [mapping[w] for w in total_map]
    return current, total_map


# ---------------------------------------------------------------------------
# weight-induced systems


def _positive_weight_map(g: Graph, w) -> dict[Edge, "object"]:
    from fractions import Fraction

    mapping = getattr(w, "weights", w)
    wm = {}
    for e in g.edges:
        if e not in mapping:
            raise ValueError(f"no weight for edge {e}")
        val = Fraction(mapping[e])
        if val <= 0:
            raise ValueError(f"weight of {e} must be positive")
        wm[e] = val
    return wm


def induce_from_weights(g: Graph, w) -> "PathSystem":
    """Geodesic system of a positive weighting, ties broken lexicographically.

    Every pair gets the minimum-weight path; among equal-weight paths the one
    whose sorted edge-index sequence is lexicographically least wins (edge
    indices follow the graph's input edge order).
    """
    wm = _positive_weight_map(g, w)
    table: dict[Pair, Path] = {}
    for src in range(g.n):
        best = _lex_dijkstra(g, wm, src)
        for dst in range(src + 1, g.n):
            table[(src, dst)] = orient(best[dst][2])
    return PathSystem(g, table)


def _lex_dijkstra(g: Graph, wm, src: int):
    """Keys are (weight, sorted edge-index tuple, vertex sequence)."""
    import heapq

    start = (0, (), (src,))
    best: list[tuple | None] = [None] * g.n
    heap = [(start, src)]
    while heap:
        key, u = heapq.heappop(heap)
        if best[u] is not None and key >= best[u]:
            continue
        best[u] = key
        dist, eids, path = key
        for v in g.adj[u]:
            if v in path:
                continue
            idx = g.edge_index(u, v)
            cand = (dist + wm[edge_key(u, v)],
                    tuple(sorted(eids + (idx,))),
                    path + (v,))
            if best[v] is None or cand < best[v]:
                heapq.heappush(heap, (cand, v))
    return best


# ---------------------------------------------------------------------------
# neighborly extension


def extend_neighborly(g: Graph, sub_vertices, ps_sub: PathSystem) -> PathSystem:
    """Extend a consistent neighborly system on an induced subgraph to all of g.

    Vertices are attached one at a time; for each new vertex v the paths
    P_{x,v} follow the route to v's lowest-index neighbor u0, hopping to v at
    the first neighbor of v along the way.
    """
    old = sorted(sub_vertices)
    sub_g, _ = g.induced_subgraph(old)
    if ps_sub.graph.n != sub_g.n or ps_sub.graph.edge_set != sub_g.edge_set:
        raise NotInducedSubgraph("ps_sub must live on the induced subgraph of sub_vertices")
    if not ps_sub.is_neighborly():
        raise NotNeighborly("subsystem must choose every edge as its own path")
    ok, witness = is_consistent(ps_sub)
    if not ok:
        raise InconsistentInput(f"subsystem inconsistent at {witness}")
    if not g.is_connected():
        raise InconsistentInput("host graph must be connected")

    # current system in host labels
    paths: dict[Pair, Path] = {}
    for (a, b), p in ps_sub.paths.items():
        q = tuple(old[x] for x in p)
        paths[pair_key(q[0], q[-1])] = orient(q)
    current = set(old)

    remaining = set(range(g.n)) - current
    while remaining:
        candidates = sorted(v for v in remaining
                            if any(w in current for w in g.adj[v]))
        v = candidates[0]
        nbrs = [w for w in g.adj[v] if w in current]
        u0 = nbrs[0]
        for u in nbrs:
            paths[pair_key(v, u)] = orient((v, u))
        for x in sorted(current):
            if x in nbrs:
                continue
            route = paths[pair_key(x, u0)]
            if route[0] != x:
                route = route[::-1]
            ux = next(w for w in route if w in nbrs)
            prefix = route[:route.index(ux) + 1]
            paths[pair_key(x, v)] = orient(prefix + (v,))
        current.add(v)
        remaining.discard(v)

    out = PathSystem(g, paths)
    ok, witness = is_consistent(out)
    assert ok, f"extension produced an inconsistent system at {witness}"
    assert out.is_neighborly()
    return out


# ---------------------------------------------------------------------------
# cycles and crossing functions


def cycle_order(g: Graph) -> list[int]:
    """Cyclic vertex order of a cycle graph, anchored at 0 toward its smaller neighbor."""
    if g.n < 3 or g.m != g.n or any(g.degree(v) != 2 for v in range(g.n)) \
            or not g.is_connected():
        raise NotACycle("graph is not a cycle")
    order = [0, min(g.adj[0])]
    while len(order) < g.n:
        nxt = [w for w in g.adj[order[-1]] if w != order[-2]]
        order.append(nxt[0])
    return order


@dataclass(frozen=True)
class CrossingFunction:
    """Map from each cycle vertex to a cycle edge, subject to the crossing rule.

    `order` fixes the cyclic embedding: order[i] is the vertex at circular
    position i, and (order[i], order[i+1]) the edge at position i + 1/2.
    """

    cycle_length: int
    f: dict[int, Edge]
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.cycle_length
        if len(self.order) != n or len(self.f) != n:
            raise ValueError("order and f must cover every cycle vertex")
        if not self.is_crossing():
            raise CrossingViolation("mapping violates the crossing condition")

    def _positions(self) -> tuple[dict[int, int], dict[Edge, int]]:
        n = self.cycle_length
        vpos = {v: 2 * i for i, v in enumerate(self.order)}
        epos = {}
        for i in range(n):
            e = edge_key(self.order[i], self.order[(i + 1) % n])
            epos[e] = 2 * i + 1
        return vpos, epos

    def is_crossing(self) -> bool:
        n2 = 2 * self.cycle_length
        vpos, epos = self._positions()

        def separated(a: int, b: int, c: int, d: int) -> bool:
            # do {a,b} and {c,d} interleave on the circle of circumference n2
            c_in = (c - a) % n2 < (b - a) % n2
            d_in = (d - a) % n2 < (b - a) % n2
            return c_in != d_in

        items = sorted(self.f)
        for x, y in itertools.combinations(items, 2):
            if self.f[x] == self.f[y]:
                continue
            if not separated(vpos[x], epos[self.f[x]], vpos[y], epos[self.f[y]]):
                return False
        return True

    def graph(self) -> Graph:
        n = self.cycle_length
        return Graph.from_edges(
            n, [edge_key(self.order[i], self.order[(i + 1) % n]) for i in range(n)])


def all_crossing_functions(n: int):
    """Every crossing function on the standard n-cycle, by backtracking with
    pairwise pruning; deterministic order."""
    from .graph import cycle_graph

    g = cycle_graph(n)
    order = tuple(cycle_order(g))
    edges = [edge_key(order[i], order[(i + 1) % n]) for i in range(n)]
    epos = {e: 2 * i + 1 for i, e in enumerate(edges)}
    vpos = {v: 2 * i for i, v in enumerate(order)}
    n2 = 2 * n

    def separated(a: int, b: int, c: int, d: int) -> bool:
        c_in = (c - a) % n2 < (b - a) % n2
        d_in = (d - a) % n2 < (b - a) % n2
        return c_in != d_in

    assign: dict[int, Edge] = {}

    def rec(v: int):
        if v == n:
            yield CrossingFunction(n, dict(assign), order)
            return
        for e in edges:
            ok = True
            for u, eu in assign.items():
                if eu == e:
                    continue
                if not separated(vpos[u], epos[eu], vpos[v], epos[e]):
                    ok = False
                    break
            if ok:
                assign[v] = e
                yield from rec(v + 1)
                del assign[v]

    yield from rec(0)


def crossing_function_of(ps: PathSystem) -> CrossingFunction:
    """f(v) is the unique edge missing from T_v; graph must be a cycle."""
    order = cycle_order(ps.graph)
    ok, witness = is_consistent(ps)
    if not ok:
        raise InconsistentInput(f"system inconsistent at {witness}")
    ts = to_tree_system(ps)
    f: dict[int, Edge] = {}
    all_edges = set(ps.graph.edges)
    for v in range(ps.graph.n):
        missing = all_edges - ts.edges_of(v)
        assert len(missing) == 1
        f[v] = next(iter(missing))
    return CrossingFunction(ps.graph.n, f, tuple(order))


def system_of_crossing(cf: CrossingFunction) -> PathSystem:
    """Rebuild the path system with T_v equal to the cycle minus f(v)."""
    g = cf.graph()
    n = cf.cycle_length
    pos = {v: i for i, v in enumerate(cf.order)}

    def tree_path(root: int, v: int) -> Path:
        # walk around the cycle from v to root without crossing the missing
        # edge f(root), which sits in slot k (between positions k and k+1)
        i, j = pos[v], pos[root]
        e = cf.f[root]
        k = next(k for k in range(n)
                 if edge_key(cf.order[k], cf.order[(k + 1) % n]) == e)
        for step in (1, -1):
            seq = [i]
            while seq[-1] != j:
                a = seq[-1]
                b = (a + step) % n
                slot = a if step == 1 else b
                if slot == k:
                    break
                seq.append(b)
            if seq[-1] == j:
                return tuple(cf.order[a] for a in seq)
        raise AssertionError("cycle walk failed")

    table: dict[Pair, Path] = {}
    for u, v in g.vertex_pairs():
        p = tree_path(u, v)
        q = tree_path(v, u)
        if p != q[::-1]:
            raise CrossingViolation("trees disagree; mapping is not crossing")
        table[(u, v)] = orient(p)
    ps = PathSystem(g, table)
    ok, _ = is_consistent(ps)
    assert ok
    return ps


def canonical_odd_system(n: int) -> PathSystem:
    """Shorter-arc system of the odd cycle 0-1-..-(n-1)-0."""
    if n < 3 or n % 2 == 0:
        raise EvenLength("canonical system exists for odd n >= 3 only")
    from .graph import cycle_graph

    g = cycle_graph(n)
    table: dict[Pair, Path] = {}
    for u, v in g.vertex_pairs():
        fwd = (v - u) % n
        if fwd <= n // 2:
            p = tuple((u + k) % n for k in range(fwd + 1))
        else:
            p = tuple((u - k) % n for k in range(n - fwd + 1))
        table[(u, v)] = orient(p)
    return PathSystem(g, table)


@dataclass(frozen=True)
class CycleClassification:
    kind: str                      # "trivial" or "reduced"
    m: int | None = None           # odd quotient length when reduced
    vertex_map: tuple[int, ...] | None = None   # original vertex -> quotient vertex
    quotient: PathSystem | None = None


def classify_cycle_system(ps: PathSystem) -> CycleClassification:
    """Either the system of one spanning tree, or it contracts onto the
    shorter-arc system of an odd cycle."""
    cf = crossing_function_of(ps)   # also checks cycle + consistency
    if len(set(cf.f.values())) == 1:
        return CycleClassification(kind="trivial")
    pers = sorted(set(ps.graph.edges) - set(cf.f.values()))
    q, vmap = quotient(ps, pers)
    m = q.graph.n
    if m % 2 == 0 or m < 3:
        raise AssertionError("reduced cycle quotient must be an odd cycle")
    # verify the quotient is the shorter-arc system on its cycle
    qorder = cycle_order(q.graph)
    qpos = {v: i for i, v in enumerate(qorder)}
    for (u, v), p in q.paths.items():
        arc = (qpos[v] - qpos[u]) % m
        assert len(p) - 1 == min(arc, m - arc), "quotient path is not a shorter arc"
    return CycleClassification(kind="reduced", m=m, vertex_map=tuple(vmap), quotient=q)


# ---------------------------------------------------------------------------
# restriction


def restricts_to(ps: PathSystem, vertices, edges=None):
    """Restriction of ps to the subgraph (vertices, edges), or None.

    Defined when every path between two kept vertices stays inside the
    subgraph.  Returns (PathSystem on the relabeled subgraph, old ids).
    """
    verts = sorted(set(vertices))
    vset = set(verts)
    if edges is None:
        eset = {e for e in ps.graph.edges if e[0] in vset and e[1] in vset}
    else:
        eset = {edge_key(*e) for e in edges}
        if not eset <= ps.graph.edge_set:
            raise ValueError("edges must belong to the host graph")
    pos = {v: i for i, v in enumerate(verts)}
    h = Graph.from_edges(len(verts), sorted((pos[u], pos[v]) for u, v in eset))
    table: dict[Pair, Path] = {}
    for u, v in itertools.combinations(verts, 2):
        p = ps.paths[pair_key(u, v)]
        if any(w not in vset for w in p):
            return None
        if any(e not in eset for e in path_edges(p)):
            return None
        q = tuple(pos[w] for w in p)
        table[pair_key(q[0], q[-1])] = orient(q)
    return PathSystem(h, table), verts


# ---------------------------------------------------------------------------
# text format: "pathsystem n" then one line per pair "u v : v0 v1 ... vk"


def format_path_system(ps: PathSystem) -> str:
    lines = [f"pathsystem {ps.graph.n}"]
    for (u, v) in ps.pairs():
        p = ps.paths[(u, v)]
        lines.append(f"{u} {v} : " + " ".join(str(x) for x in p))
    return "\n".join(lines) + "\n"


def parse_path_system(text: str, graph: Graph) -> PathSystem:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows or not rows[0].startswith("pathsystem"):
        raise FormatError("missing 'pathsystem n' header")
    try:
        n = int(rows[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError("bad pathsystem header") from exc
    if n != graph.n:
        raise FormatError(f"system is on {n} vertices but graph has {graph.n}")
    table: dict[Pair, Path] = {}
    for ln in rows[1:]:
        if ":" not in ln:
            raise FormatError(f"bad path line: {ln!r}")
        head, tail = ln.split(":", 1)
        try:
            u, v = (int(x) for x in head.split())
            p = tuple(int(x) for x in tail.split())
        except ValueError as exc:
            raise FormatError(f"bad path line: {ln!r}") from exc
        if p[0] != u or p[-1] != v:
            raise FormatError(f"path endpoints disagree with pair on line {ln!r}")
        table[pair_key(u, v)] = orient(p)
    try:
        return PathSystem(graph, table)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
