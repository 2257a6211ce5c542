"""Finite simple undirected graphs and the structural queries the rest of the
package is built on: blocks, connectivity, subdivision containment, and the
three topological-minor moves (subdivide, suppress, contract).

Vertices are dense 0-based integers.  Edges are stored in input order because
other modules use the edge list order as a tie-breaking device; each edge is
normalized to (min, max).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import (
    CycleComponent,
    DisconnectedInput,
    FormatError,
    MissingEdge,
    PatternTooLarge,
    TooSmall,
)

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1."""

    n: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        seen: set[Edge] = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            e = edge_key(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must have one entry per vertex")

    @staticmethod
    def from_edges(n: int, edges, labels=None) -> "Graph":
        return Graph(n, tuple(edge_key(u, v) for u, v in edges),
                     tuple(labels) if labels is not None else None)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._edge_index_map[edge_key(u, v)]
        except KeyError:
            raise MissingEdge(f"edge ({u},{v}) not in graph") from None

    @property
    def _edge_index_map(self) -> dict[Edge, int]:
        cache = self.__dict__.get("_eidx")
        if cache is None:
            cache = {e: i for i, e in enumerate(self.edges)}
            object.__setattr__(self, "_eidx", cache)
        return cache

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edge_index_map

    @property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        cache = self.__dict__.get("_adj")
        if cache is None:
            nbrs: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in self.edges:
                nbrs[u].append(v)
                nbrs[v].append(u)
            cache = tuple(tuple(sorted(ns)) for ns in nbrs)
            object.__setattr__(self, "_adj", cache)
        return cache

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((len(ns) for ns in self.adj), reverse=True))

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_of(0)) == self.n

    def component_of(self, start: int) -> set[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def connected_components(self) -> list[set[int]]:
        comps = []
        left = set(range(self.n))
        while left:
            c = self.component_of(min(left))
            comps.append(c)
            left -= c
        return comps

    def bfs_distances(self, source: int) -> list[int]:
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def vertex_pairs(self):
        return itertools.combinations(range(self.n), 2)

    def induced_subgraph(self, vertices) -> tuple["Graph", list[int]]:
        """Induced subgraph with dense relabeling; returns (graph, old ids)."""
        old = sorted(vertices)
        pos = {v: i for i, v in enumerate(old)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph.from_edges(len(old), edges), old


def path_is_simple(path) -> bool:
    return len(set(path)) == len(path)


def path_in_graph(g: Graph, path) -> bool:
    if len(path) == 0 or not path_is_simple(path):
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


# ---------------------------------------------------------------------------
# named graphs


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def wheel_graph(k: int) -> Graph:
    """W_k: a k-cycle 0..k-1 plus a hub vertex k adjacent to all of it."""
    edges = [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)]
    return Graph.from_edges(k + 1, edges)


def prism_graph() -> Graph:
    """Y_3, the triangular prism: two triangles joined by a perfect matching."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                                (0, 3), (1, 4), (2, 5)])


def theta_graph(a: int, b: int, c: int) -> Graph:
    """Two degree-3 vertices joined by three openly disjoint paths of a, b, c edges."""
    if min(a, b, c) < 1 or sorted((a, b, c)).count(1) > 1:
        raise ValueError("arm lengths must be >= 1 with at most one length-1 arm")
    edges = []
    nxt = 2
    for arm in (a, b, c):
        prev = 0
        for _ in range(arm - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def petersen_graph() -> Graph:
    """Outer 5-cycle 0..4, spokes to 5..9, inner pentagram."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


# ---------------------------------------------------------------------------
# text format: first line "n m", then m lines "u v"; '#' starts a comment line


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise FormatError("empty graph file")
    head = rows[0].split()
    if len(head) != 2:
        raise FormatError("header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError("non-integer header") from exc
    if len(rows) - 1 != m:
        raise FormatError(f"expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line: {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < v < n):
            raise FormatError(f"edge line {ln!r} violates 0 <= u < v < n")
        edges.append((u, v))
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# blocks and connectivity


def biconnected_components(g: Graph) -> list[tuple[Graph, list[int]]]:
    """Blocks of a connected graph, each with its vertex map back to g.

    Every block is 2-connected or a single edge; the block edge sets
    partition E(g).  Blocks are returned sorted by their edge lists in g.
    """
    if not g.is_connected():
        raise DisconnectedInput("biconnected_components requires a connected graph")
    if g.n == 0:
        return []
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    edge_stack: list[Edge] = []
    blocks_edges: list[list[Edge]] = []

    # iterative DFS, children explored in ascending order
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        while stack:
            u, parent, idx = stack.pop()
            if idx == 0:
                disc[u] = low[u] = timer
                timer += 1
            nbrs = g.adj[u]
            advanced = False
            while idx < len(nbrs):
                w = nbrs[idx]
                idx += 1
                if w == parent:
                    # skip one occurrence of the tree edge
                    parent = -2
                    continue
                if disc[w] < 0:
                    edge_stack.append(edge_key(u, w))
                    stack.append((u, parent, idx))
                    stack.append((w, u, 0))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    edge_stack.append(edge_key(u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            if stack:
                pu, pparent, pidx = stack[-1]
                low[pu] = min(low[pu], low[u])
                if low[u] >= disc[pu]:
                    comp = []
                    target = edge_key(pu, u)
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == target:
                            break
                    blocks_edges.append(comp)

    out = []
    for comp in blocks_edges:
        verts = sorted({v for e in comp for v in e})
        pos = {v: i for i, v in enumerate(verts)}
        bg = Graph.from_edges(len(verts), sorted((pos[u], pos[v]) for u, v in comp))
        out.append((bg, verts, sorted(comp)))
    out.sort(key=lambda t: t[2])
    return [(bg, verts) for bg, verts, _ in out]


def articulation_points(g: Graph) -> set[int]:
    """Vertices lying in two or more blocks."""
    count: dict[int, int] = {}
    for _, verts in biconnected_components(g):
        for v in verts:
            count[v] = count.get(v, 0) + 1
    return {v for v, c in count.items() if c >= 2}


def _max_vertex_disjoint_paths(g: Graph, s: int, t: int) -> int:
    """Menger via unit-capacity max flow on the vertex-split digraph."""
    # node 2v = v_in, 2v+1 = v_out; internal arc v_in->v_out except at s, t,
    # which are left unsplit (their in node serves both roles).
    def out_node(v: int) -> int:
        return 2 * v if v in (s, t) else 2 * v + 1

    arcs: dict[tuple[int, int], int] = {}

    def add(a: int, b: int) -> None:
        arcs[(a, b)] = arcs.get((a, b), 0) + 1

    succ: dict[int, list[int]] = {}
    for v in range(g.n):
        if v not in (s, t):
            add(2 * v, 2 * v + 1)
    for u, v in g.edges:
        add(out_node(u), 2 * v)
        add(out_node(v), 2 * u)
    for (a, b) in list(arcs):
        succ.setdefault(a, []).append(b)
        succ.setdefault(b, []).append(a)
        arcs.setdefault((b, a), 0)

    source, sink = 2 * s, 2 * t
    flow = 0
    while True:
        prev = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            a = queue.popleft()
            for b in succ.get(a, ()):
                if arcs.get((a, b), 0) > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            return flow
        b = sink
        while b != source:
            a = prev[b]
            arcs[(a, b)] -= 1
            arcs[(b, a)] += 1
            b = a
        flow += 1


def vertex_connectivity(g: Graph) -> int:
    """kappa(g); complete graphs give n-1."""
    if g.n < 2:
        raise TooSmall("vertex connectivity needs at least 2 vertices")
    if not g.is_connected():
        return 0
    if g.m == g.n * (g.n - 1) // 2:
        return g.n - 1
    best = g.n - 1
    for s, t in g.vertex_pairs():
        if not g.has_edge(s, t):
            best = min(best, _max_vertex_disjoint_paths(g, s, t))
    return best


# ---------------------------------------------------------------------------
# subdivision containment


@dataclass(frozen=True)
class SubdivisionWitness:
    """Branch vertex images plus one internally disjoint host path per pattern edge."""

    branch_map: dict[int, int]
    path_map: dict[Edge, tuple[int, ...]]

    def validate(self, host: Graph, pattern: Graph) -> bool:
        img = self.branch_map
        if len(img) != pattern.n or len(set(img.values())) != pattern.n:
            return False
        if set(self.path_map) != set(pattern.edges):
            return False
        interior_seen: set[int] = set()
        branch_imgs = set(img.values())
        for (a, b), path in self.path_map.items():
            if not path_in_graph(host, path):
                return False
            if {path[0], path[-1]} != {img[a], img[b]}:
                return False
            inner = set(path[1:-1])
            if inner & branch_imgs or inner & interior_seen:
                return False
            interior_seen |= inner
        return True


def _exact_length_paths(g: Graph, a: int, b: int, blocked: set[int], length: int):
    """All simple a-b paths with exactly `length` edges avoiding blocked interiors."""
    path = [a]
    on_path = {a}

    def rec(u: int, remaining: int):
        if remaining == 0:
            if u == b:
                yield tuple(path)
            return
        for w in g.adj[u]:
            if w == b:
                if remaining == 1:
                    path.append(w)
                    yield tuple(path)
                    path.pop()
                continue
            if w in blocked or w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            yield from rec(w, remaining - 1)
            path.pop()
            on_path.discard(w)

    yield from rec(a, length)


def contains_subdivision(host: Graph, pattern: Graph) -> SubdivisionWitness | None:
    """Search for a subgraph of host that is a subdivision of pattern.

    Branch vertices are assigned in descending pattern degree; each pattern
    edge is then realized by an internally disjoint host path, found by
    iterative deepening on the path length.  Exhaustive, intended for hosts
    of around 20 vertices or fewer.
    """
    if pattern.n > 12:
        raise PatternTooLarge("pattern limited to 12 vertices")
    if pattern.n > host.n or pattern.m > host.m:
        return None
    pat_order = sorted(range(pattern.n), key=lambda v: (-pattern.degree(v), v))
    host_degs = sorted((host.degree(v) for v in range(host.n)), reverse=True)
    pat_degs = sorted((pattern.degree(v) for v in range(pattern.n)), reverse=True)
    if any(h < p for h, p in zip(host_degs, pat_degs)):
        return None

    pat_edges = sorted(pattern.edges)

    def assign(i: int, img: dict[int, int], used: set[int]):
        if i == len(pat_order):
            yield dict(img)
            return
        p = pat_order[i]
        for h in range(host.n):
            if h in used or host.degree(h) < pattern.degree(p):
                continue
            img[p] = h
            used.add(h)
            yield from assign(i + 1, img, used)
            del img[p]
            used.discard(h)

    max_len = host.n - 1

    def route(eidx: int, img: dict[int, int], interior: set[int]):
        if eidx == len(pat_edges):
            return {}
        a, b = pat_edges[eidx]
        ha, hb = img[a], img[b]
        blocked = (set(img.values()) - {ha, hb}) | interior
        for length in range(1, max_len + 1):
            for path in _exact_length_paths(host, ha, hb, blocked, length):
                inner = set(path[1:-1])
                rest = route(eidx + 1, img, interior | inner)
                if rest is not None:
                    rest[(a, b)] = path
                    return rest
        return None

    for img in assign(0, {}, set()):
        paths = route(0, img, set())
        if paths is not None:
            witness = SubdivisionWitness(branch_map=img, path_map=dict(paths))
            assert witness.validate(host, pattern)
            return witness
    return None


def is_outerplanar(g: Graph) -> bool:
    """No K_4 subdivision and no K_{2,3} subdivision."""
    if contains_subdivision(g, complete_graph(4)) is not None:
        return False
    return contains_subdivision(g, complete_bipartite(2, 3)) is None


def is_planar(g: Graph) -> bool:
    """Kuratowski check by subdivision search; fine at desk scale."""
    if contains_subdivision(g, complete_graph(5)) is not None:
        return False
    return contains_subdivision(g, complete_bipartite(3, 3)) is None


# ---------------------------------------------------------------------------
# topological-minor moves


def subdivide_edge(g: Graph, e: Edge, k: int) -> Graph:
    """Replace edge e by a path with k new internal vertices n..n+k-1."""
    e = edge_key(*e)
    if e not in g.edge_set:
        raise MissingEdge(f"edge {e} not in graph")
    if k == 0:
        return g
    u, v = e
    edges = [f for f in g.edges if f != e]
    chain = [u] + list(range(g.n, g.n + k)) + [v]
    edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(g.n + k, edges)


def suppress_degree2(g: Graph) -> tuple[Graph, dict[Edge, tuple[int, ...]]]:
    """Suppress degree-2 vertices until none remain (or none can be removed).

    A vertex is skipped when its two neighbors are already adjacent, since a
    simple graph cannot absorb the resulting parallel edge.  Returns the new
    graph and, for each of its edges, the corresponding path in g.
    """
    # current edge -> original path realized by it
    paths: dict[Edge, tuple[int, ...]] = {e: e for e in g.edges}
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    alive = set(range(g.n))

    changed = True
    while changed:
        changed = False
        for z in sorted(alive):
            if len(adj[z]) != 2:
                continue
            u, v = sorted(adj[z])
            if u in adj[v]:
                continue
            p1 = paths.pop(edge_key(u, z))
            p2 = paths.pop(edge_key(z, v))
            if p1[0] != u:
                p1 = p1[::-1]
            if p2[0] != z:
                p2 = p2[::-1]
            assert p1[-1] == z and p2[0] == z
            joined = p1 + p2[1:]
            if joined[0] > joined[-1]:
                joined = joined[::-1]
            paths[edge_key(u, v)] = joined
            adj[u].discard(z)
            adj[v].discard(z)
            adj[u].add(v)
            adj[v].add(u)
            alive.discard(z)
            adj[z] = set()
            changed = True
            break

    old = sorted(alive)
    pos = {v: i for i, v in enumerate(old)}
    new_edges = sorted(edge_key(pos[u], pos[v]) for u, v in paths)
    ng = Graph.from_edges(len(old), new_edges)
    out_paths = {edge_key(pos[u], pos[v]): p for (u, v), p in paths.items()}
    return ng, out_paths


def contract_edge(g: Graph, e: Edge) -> tuple[Graph, list[int]]:
    """Contract e, deleting loops and parallel edges; returns (graph, old->new map)."""
    e = edge_key(*e)
    if e not in g.edge_set:
        raise MissingEdge(f"edge {e} not in graph")
    u, v = e
    mapping = []
    nxt = 0
    for w in range(g.n):
        if w == v:
            mapping.append(-1)
        else:
            mapping.append(nxt)
            nxt += 1
    mapping[v] = mapping[u]
    new_edges = set()
    for a, b in g.edges:
        na, nb = mapping[a], mapping[b]
        if na != nb:
            new_edges.add(edge_key(na, nb))
    return Graph.from_edges(g.n - 1, sorted(new_edges)), mapping


def suspended_paths(g: Graph) -> list[tuple[int, ...]]:
    """All maximal suspended paths of length >= 2.

    Interior vertices have degree 2; endpoints do not.  A connected component
    that is itself a cycle has no endpoints to anchor on and raises.
    """
    for comp in g.connected_components():
        if len(comp) >= 3 and all(g.degree(v) == 2 for v in comp):
            raise CycleComponent(f"component {sorted(comp)} is a bare cycle")
    found: set[tuple[int, ...]] = set()
    for a in range(g.n):
        if g.degree(a) == 2:
            continue
        for w in g.adj[a]:
            if g.degree(w) != 2:
                continue
            path = [a, w]
            while g.degree(path[-1]) == 2:
                nxt = [x for x in g.adj[path[-1]] if x != path[-2]]
                path.append(nxt[0])
            canon = min(tuple(path), tuple(reversed(path)))
            found.add(canon)
    return sorted(found)


# ---------------------------------------------------------------------------
# isomorphism


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking isomorphism with degree pruning; inputs up to ~12 vertices."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if g1.degree_sequence() != g2.degree_sequence():
        return False
    n = g1.n
    order = sorted(range(n), key=lambda v: (-g1.degree(v), v))
    e2 = g2.edge_set
    mapping = [-1] * n
    used = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used[w] or g2.degree(w) != g1.degree(v):
                continue
            ok = True
            for x in g1.adj[v]:
                mx = mapping[x]
                if mx >= 0 and edge_key(w, mx) not in e2:
                    ok = False
                    break
            if not ok:
                continue
            # also forbid extra adjacencies to already-mapped vertices
            mapped_imgs = {mapping[x] for x in range(n) if mapping[x] >= 0}
            need = {mapping[x] for x in g1.adj[v] if mapping[x] >= 0}
            extra = {y for y in g2.adj[w] if y in mapped_imgs} - need
            if extra:
                continue
            mapping[v] = w
            used[w] = True
            if rec(i + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    return rec(0)


def canonical_key(g: Graph) -> tuple:
    """Canonical form by exhaustive ordering search within degree classes.

    Only orderings that sort degrees descending are considered, so the key is
    isomorphism-invariant.  Intended for small graphs (product of degree-class
    factorials must stay manageable).
    """
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.degree(v), []).append(v)
    degs_desc = sorted(groups, reverse=True)
    best: tuple | None = None
    perms_per_class = [itertools.permutations(groups[d]) for d in degs_desc]
    for combo in itertools.product(*perms_per_class):
        order = [v for cls in combo for v in cls]
        pos = {v: i for i, v in enumerate(order)}
        key = tuple(sorted(edge_key(pos[u], pos[v]) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (g.n, best if best is not None else ())
