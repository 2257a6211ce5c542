"""Exhaustive generation of all consistent path systems of a small graph.

The search assigns one pair at a time (pairs ordered by hop distance), and
after each assignment closes the partial system under the forced-subpath rule:
every subpath of a stored path is itself stored.  Conflicts prune the branch,
so every leaf of the search tree is a consistent full system and no system is
produced twice.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator

from .errors import TooLarge
from .graph import Graph
from .systems import Pair, Path, PartialPathSystem, PathSystem, is_consistent, orient

DEFAULT_VERTEX_BOUND = 9


def all_simple_paths(g: Graph, u: int, v: int) -> list[Path]:
    """Every simple u-v path, sorted by (length, vertex sequence)."""
    out: list[Path] = []
    path = [u]
    on_path = {u}

    def rec(x: int) -> None:
        if x == v:
            out.append(tuple(path))
            return
        for w in g.adj[x]:
            if w not in on_path:
                path.append(w)
                on_path.add(w)
                rec(w)
                path.pop()
                on_path.discard(w)

    rec(u)
    out.sort(key=lambda p: (len(p), p))
    return out


class _Searcher:
    def __init__(self, g: Graph, seed: dict[Pair, Path] | None = None):
        self.g = g
        dist0 = [g.bfs_distances(s) for s in range(g.n)]
        self.pair_order: list[Pair] = sorted(
            g.vertex_pairs(), key=lambda p: (dist0[p[0]][p[1]], p))
        self.candidates: dict[Pair, list[Path]] = {
            p: all_simple_paths(g, *p) for p in self.pair_order}
        self.assigned: dict[Pair, Path] = {}
        self.trail: list[Pair] = []
        self.seed_ok = True
        if seed:
            for key, p in sorted(seed.items()):
                if not self._assign(key, p):
                    self.seed_ok = False
                    break
        self.base = len(self.trail)

    def _assign(self, key: Pair, path: Path) -> bool:
        """Store path for key plus everything it forces; False on conflict."""
        mark = len(self.trail)
        queue = [(key, path)]
        while queue:
            k, p = queue.pop()
            cur = self.assigned.get(k)
            if cur is not None:
                if cur != p:
                    self._undo(mark)
                    return False
                continue
            self.assigned[k] = p
            self.trail.append(k)
            for i in range(len(p)):
                for j in range(i + 1, len(p)):
                    sub = orient(p[i:j + 1])
                    queue.append(((sub[0], sub[-1]), sub))
        return True

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            del self.assigned[self.trail.pop()]

    def run(self) -> Iterator[dict[Pair, Path]]:
        if not self.seed_ok:
            return
        yield from self._search(0)

    def _search(self, idx: int) -> Iterator[dict[Pair, Path]]:
        while idx < len(self.pair_order) and self.pair_order[idx] in self.assigned:
            idx += 1
        if idx == len(self.pair_order):
            yield dict(self.assigned)
            return
        key = self.pair_order[idx]
        for cand in self.candidates[key]:
            mark = len(self.trail)
            if self._assign(key, cand):
                yield from self._search(idx + 1)
            self._undo(mark)

    def top_level(self) -> tuple[Pair | None, list[Path]]:
        """First undecided pair and its candidates (the parallel split point)."""
        for key in self.pair_order:
            if key not in self.assigned:
                return key, self.candidates[key]
        return None, []


def enumerate_consistent_systems(
    g: Graph,
    limit: int | None = None,
    max_vertices: int | None = DEFAULT_VERTEX_BOUND,
    seed: dict[Pair, Path] | PartialPathSystem | None = None,
    jobs: int = 1,
) -> Iterator[PathSystem]:
    """Yield every consistent path system of g exactly once, in a fixed order.

    `seed` restricts the search to systems extending the given partial
    assignment.  `max_vertices` guards against accidental blowups; pass None
    to lift it.  With jobs > 1 the top-level branches are explored in worker
    processes and merged in branch order, so the output order is unchanged.
    """
    if not g.is_connected():
        raise ValueError("graph must be connected")
    if max_vertices is not None and g.n > max_vertices:
        raise TooLarge(f"{g.n} vertices exceeds the configured bound {max_vertices}; "
                       "pass max_vertices=None to override")
    if isinstance(seed, PartialPathSystem):
        seed = dict(seed.paths)

    count = 0
    if jobs <= 1:
        searcher = _Searcher(g, seed)
        for table in searcher.run():
            yield PathSystem(g, table)
            count += 1
            if limit is not None and count >= limit:
                return
        return

    searcher = _Searcher(g, seed)
    if not searcher.seed_ok:
        return
    key, cands = searcher.top_level()
    if key is None:
        yield PathSystem(g, dict(searcher.assigned))
        return
    import concurrent.futures

    base_seed = dict(searcher.assigned)
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = []
        for cand in cands:
            branch_seed = dict(base_seed)
            branch_seed[key] = cand
            futures.append(pool.submit(_run_branch, g, branch_seed))
        for fut in futures:
            for table in fut.result():
                yield PathSystem(g, table)
                count += 1
                if limit is not None and count >= limit:
                    return


def _run_branch(g: Graph, seed: dict[Pair, Path]) -> list[dict[Pair, Path]]:
    return list(_Searcher(g, seed).run())


def count_consistent_systems(
    g: Graph,
    max_vertices: int | None = DEFAULT_VERTEX_BOUND,
    jobs: int = 1,
) -> int:
    """Streaming count of enumerate_consistent_systems."""
    return sum(1 for _ in enumerate_consistent_systems(
        g, max_vertices=max_vertices, jobs=jobs))


def naive_consistent_systems(g: Graph) -> list[PathSystem]:
    """Reference generator: every combination of per-pair simple paths,
    filtered by the consistency predicate.  Only viable for tiny graphs."""
    pairs = sorted(g.vertex_pairs())
    choices = [all_simple_paths(g, *p) for p in pairs]
    out = []
    for combo in itertools.product(*choices):
        ps = PathSystem(g, {p: orient(c) for p, c in zip(pairs, combo)})
        ok, _ = is_consistent(ps)
        if ok:
            out.append(ps)
    return out
