"""Deciding metrizability of a consistent path system.

The decision runs a cutting-plane loop over exact rationals: a small LP
maximizes the uniform slack of the working constraint set, and a shortest-path
separation oracle supplies violated geodesic inequalities until either a
feasible weighting emerges or the working set is infeasible, in which case the
LP duals form a human-checkable certificate that some edge weight would have
to be non-positive (or 0 < 0 in the strict case).

Constructive weight builders for cycles, quotient lifting, suspended-path
lifting, and the outerplanar driver live here as well.  Everything in this
module is exact; there are no tolerances.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FormatError,
    InconsistentInput,
    NonPersistentEdge,
    NotOuterplanar,
    NotStrictlyInducing,
    PreconditionViolated,
    QuotientNotStrict,
)
from .graph import Edge, Graph, edge_key, is_outerplanar, path_in_graph
from .lp import solve_max_slack
from .systems import (
    Pair,
    Path,
    PartialPathSystem,
    PathSystem,
    _contract_system,
    classify_cycle_system,
    crossing_function_of,
    is_consistent,
    orient,
    pair_key,
    path_edges,
    persistent_edges,
    restricts_to,
)

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightFunction:
    """Positive rational weight per edge; exact arithmetic throughout."""

    weights: dict[Edge, Fraction]

    def __post_init__(self) -> None:
        clean = {}
        for e, val in self.weights.items():
            val = Fraction(val)
            if val <= 0:
                raise ValueError(f"weight of {e} must be positive, got {val}")
            clean[edge_key(*e)] = val
        object.__setattr__(self, "weights", clean)

    @staticmethod
    def unit(g: Graph) -> "WeightFunction":
        return WeightFunction({e: ONE for e in g.edges})

    def of(self, u: int, v: int) -> Fraction:
        return self.weights[edge_key(u, v)]

    def path_weight(self, path) -> Fraction:
        return sum((self.weights[e] for e in path_edges(path)), ZERO)

    def total(self) -> Fraction:
        return sum(self.weights.values(), ZERO)

    def scaled(self, factor: Fraction) -> "WeightFunction":
        factor = Fraction(factor)
        return WeightFunction({e: v * factor for e, v in self.weights.items()})

    def items(self):
        return self.weights.items()


def as_weight_map(g: Graph, w, allow_zero: bool = False) -> dict[Edge, Fraction]:
    mapping = getattr(w, "weights", w)
    out = {}
    for e in g.edges:
        if e not in mapping:
            raise ValueError(f"no weight for edge {e}")
        val = Fraction(mapping[e])
        if val < 0 or (val == 0 and not allow_zero):
            raise ValueError(f"bad weight {val} for edge {e}")
        out[e] = val
    return out


def weight_of(wm: dict, path):
    return sum(wm[e] for e in path_edges(path))


def _scaled_int_map(wm: dict[Edge, Fraction]) -> tuple[dict[Edge, int], int]:
    """Clear denominators so shortest-path work runs on plain integers."""
    denom = math.lcm(*(v.denominator for v in wm.values())) if wm else 1
    return {e: int(v * denom) for e, v in wm.items()}, denom


def dijkstra(g: Graph, wm: dict, source: int):
    """Exact nonnegative-weight shortest paths; returns (dist, parent).

    Weights may be Fractions or plain integers; mixing is fine since both
    compare exactly.
    """
    dist = [None] * g.n
    parent = [-1] * g.n
    dist[source] = 0
    counter = itertools.count()
    heap = [(0, next(counter), source)]
    done = [False] * g.n
    while heap:
        d, _, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v in g.adj[u]:
            nd = d + wm[edge_key(u, v)]
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, next(counter), v))
    return dist, parent


def _tree_path(parent: list[int], source: int, v: int) -> Path:
    out = [v]
    while out[-1] != source:
        out.append(parent[out[-1]])
    return tuple(reversed(out))


def all_pairs_dijkstra(g: Graph, wm: dict[Edge, Fraction]):
    return [dijkstra(g, wm, s) for s in range(g.n)]


# ---------------------------------------------------------------------------
# verification


def verify_weights(ps: PathSystem, w, strict: bool) -> bool:
    """Is every system path a (unique, when strict) geodesic under w?

    Uniqueness is checked through the tight-edge criterion: the system path is
    the unique geodesic iff exactly its edges lie on shortest paths.
    """
    g = ps.graph
    wm, _ = _scaled_int_map(as_weight_map(g, w, allow_zero=False))
    sp = all_pairs_dijkstra(g, wm)
    for (u, v), p in ps.paths.items():
        d = sp[u][0][v]
        if weight_of(wm, p) != d:
            return False
        if strict:
            pe = set(path_edges(p))
            du, dv = sp[u][0], sp[v][0]
            for a, b in g.edges:
                if (a, b) in pe:
                    continue
                through = min(du[a] + dv[b], du[b] + dv[a]) + wm[(a, b)]
                if through == d:
                    return False
    return True


@dataclass(frozen=True)
class Violation:
    pair: Pair
    chosen: Path
    competitor: Path
    amount: Fraction      # how far the constraint row is above its bound


def separation_oracle(ps: PathSystem, w, strict: bool) -> Violation | None:
    """None when every defining inequality holds at w; otherwise one maximally
    violated (chosen path, competitor) pair.

    Non-strict rows read w(P) - w(Q) <= 0; strict rows w(P) - w(Q) <= -1.
    Weights may contain zeros, in which case shortest-path reasoning can
    produce non-simple walks and the check falls back to explicit search.
    """
    g = ps.graph
    wm, denom = _scaled_int_map(as_weight_map(g, w, allow_zero=True))
    one = denom                     # the strict margin of 1, in scaled units
    sp = all_pairs_dijkstra(g, wm)
    best: Violation | None = None

    def consider(pair: Pair, chosen: Path, comp: Path, amount) -> None:
        nonlocal best
        if amount <= 0:
            return
        amount = Fraction(amount, denom)
        if best is None or amount > best.amount or \
                (amount == best.amount and pair < best.pair):
            best = Violation(pair, chosen, comp, amount)

    for (u, v), p in sorted(ps.paths.items()):
        wp = weight_of(wm, p)
        d = sp[u][0][v]
        margin = 0 if not strict else -one
        if d < wp:
            q = _tree_path(sp[u][1], u, v)
            consider((u, v), p, orient(q), wp - d - margin)
            continue
        if not strict:
            continue
        # second-best competitor through an off-path edge
        pe = set(path_edges(p))
        cand_val = None
        cand = None
        for a, b in g.edges:
            if (a, b) in pe:
                continue
            for s, t in ((a, b), (b, a)):
                val = sp[u][0][s] + wm[(a, b)] + sp[v][0][t]
                if cand_val is None or val < cand_val:
                    walk = _tree_path(sp[u][1], u, s) + tuple(reversed(_tree_path(sp[v][1], v, t)))
                    cand_val, cand = val, walk
        if cand_val is None or cand_val >= wp + one:
            continue
        if len(set(cand)) == len(cand):
            consider((u, v), p, orient(cand), wp - cand_val + one)
        else:
            # zero-weight degeneracy: search for a genuine simple competitor
            q = _cheapest_other_path(g, wm, u, v, p, wp + one)
            if q is not None:
                consider((u, v), p, orient(q), wp - weight_of(wm, q) + one)
    return best


def _cheapest_other_path(g: Graph, wm, u: int, v: int, avoid: Path,
                         bound: Fraction) -> Path | None:
    """Lightest simple u-v path other than `avoid` with weight < bound."""
    best: tuple | None = None
    path = [u]
    on_path = {u}

    def rec(x: int, acc) -> None:
        nonlocal best
        if acc >= bound or (best is not None and acc >= best[0]):
            return
        if x == v:
            p = tuple(path)
            if p != avoid and (best is None or acc < best[0]):
                best = (acc, p)
            return
        for y in g.adj[x]:
            if y in on_path:
                continue
            path.append(y)
            on_path.add(y)
            rec(y, acc + wm[edge_key(x, y)])
            path.pop()
            on_path.discard(y)

    rec(u, 0)
    return best[1] if best else None


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class CertLine:
    chosen: Path
    competitor: Path
    multiplier: Fraction


@dataclass(frozen=True)
class Certificate:
    """Nonnegative multipliers over (chosen, competitor) inequality pairs whose
    combination forces some edge weight <= 0, or 0 < 0 in the strict case."""

    lines: tuple[CertLine, ...]
    strict: bool

    def coefficient_vector(self, g: Graph) -> dict[Edge, Fraction]:
        c = {e: ZERO for e in g.edges}
        for line in self.lines:
            for e in path_edges(line.chosen):
                c[e] += line.multiplier
            for e in path_edges(line.competitor):
                c[e] -= line.multiplier
        return c

    def forced_edges(self, g: Graph) -> list[Edge]:
        return sorted(e for e, v in self.coefficient_vector(g).items() if v > 0)


def verify_certificate(ps: PathSystem, cert: Certificate) -> bool:
    """Structural validity plus the coefficient condition; pure arithmetic."""
    g = ps.graph
    if not cert.lines:
        return False
    for line in cert.lines:
        if line.multiplier <= 0:
            return False
        p, q = line.chosen, line.competitor
        if not (path_in_graph(g, p) and path_in_graph(g, q)):
            return False
        if {p[0], p[-1]} != {q[0], q[-1]} or orient(p) == orient(q):
            return False
        if ps.paths.get(pair_key(p[0], p[-1])) != orient(p):
            return False
    c = cert.coefficient_vector(g)
    if any(v < 0 for v in c.values()):
        return False
    if any(v > 0 for v in c.values()):
        return True
    return cert.strict and sum(line.multiplier for line in cert.lines) > 0


# ---------------------------------------------------------------------------
# the decision


@dataclass(frozen=True)
class Verdict:
    weights: WeightFunction | None
    certificate: Certificate | None

    @property
    def metrizable(self) -> bool:
        return self.weights is not None

    @staticmethod
    def feasible(w: WeightFunction) -> "Verdict":
        return Verdict(weights=w, certificate=None)

    @staticmethod
    def infeasible(cert: Certificate) -> "Verdict":
        return Verdict(weights=None, certificate=cert)


def _row_of(g: Graph, chosen: Path, comp: Path) -> dict[int, int]:
    row: dict[int, int] = {}
    for e in path_edges(chosen):
        i = g.edge_index(*e)
        row[i] = row.get(i, 0) + 1
    for e in path_edges(comp):
        i = g.edge_index(*e)
        row[i] = row.get(i, 0) - 1
    return {i: c for i, c in row.items() if c}


def _certificate_from_duals(rows: list[tuple[Path, Path]], duals: list[Fraction],
                            strict: bool) -> Certificate:
    denom = math.lcm(*(lam.denominator for lam in duals if lam)) if any(duals) else 1
    lines = tuple(CertLine(chosen, comp, lam * denom)
                  for (chosen, comp), lam in zip(rows, duals) if lam > 0)
    return Certificate(lines=lines, strict=strict)


def decide_metrizable(ps: PathSystem, strict: bool,
                      self_check: bool = True) -> Verdict:
    """Weights inducing ps, or a verified infeasibility certificate.

    Cutting-plane loop: maximize the uniform slack over the working rows; a
    negative optimum certifies infeasibility through the LP duals, otherwise
    the separation oracle either accepts the point or contributes a new row.
    Finitely many simple-path rows exist and each iteration adds a fresh one,
    so the loop terminates.
    """
    ok, witness = is_consistent(ps)
    if not ok:
        raise InconsistentInput(f"system inconsistent at {witness}")
    g = ps.graph
    bound = ZERO if not strict else Fraction(-1)
    work: list[tuple[Path, Path]] = []
    row_dicts: list[dict[int, int]] = []
    seen_rows: set[tuple[Pair, Path]] = set()

    while True:
        res = solve_max_slack(g.m, row_dicts, [bound] * len(row_dicts))
        if res.t < 0:
            cert = _certificate_from_duals(work, res.duals, strict)
            if self_check:
                assert verify_certificate(ps, cert), "extracted certificate failed"
            return Verdict.infeasible(cert)
        w = {e: res.x[i] for i, e in enumerate(g.edges)}
        viol = separation_oracle(ps, w, strict)
        if viol is None:
            wf = WeightFunction(w)
            if self_check:
                assert verify_weights(ps, wf, strict), "accepted point fails verification"
            return Verdict.feasible(wf)
        key = (viol.pair, viol.competitor)
        assert key not in seen_rows, "separation oracle repeated a row"
        seen_rows.add(key)
        chosen = ps.paths[viol.pair]
        work.append((chosen, viol.competitor))
        row_dicts.append(_row_of(g, chosen, viol.competitor))


def decide_metrizable_naive(ps: PathSystem, strict: bool) -> Verdict:
    """Reference decision: the full LP with every competitor row up front."""
    from .enumeration import all_simple_paths

    ok, witness = is_consistent(ps)
    if not ok:
        raise InconsistentInput(f"system inconsistent at {witness}")
    g = ps.graph
    bound = ZERO if not strict else Fraction(-1)
    rows: list[tuple[Path, Path]] = []
    for (u, v), p in sorted(ps.paths.items()):
        for q in all_simple_paths(g, u, v):
            if orient(q) != p:
                rows.append((p, orient(q)))
    row_dicts = [_row_of(g, p, q) for p, q in rows]
    res = solve_max_slack(g.m, row_dicts, [bound] * len(rows))
    if res.t < 0:
        cert = _certificate_from_duals(rows, res.duals, strict)
        assert verify_certificate(ps, cert)
        return Verdict.infeasible(cert)
    wf = WeightFunction({e: res.x[i] for i, e in enumerate(g.edges)})
    assert verify_weights(ps, wf, strict)
    return Verdict.feasible(wf)


def decide_partial_strict(pps: PartialPathSystem) -> Verdict:
    """Strict feasibility of a partial constraint set (partial path system)."""
    from .enumeration import all_simple_paths

    g = pps.graph
    rows: list[tuple[Path, Path]] = []
    for (u, v), p in sorted(pps.paths.items()):
        for q in all_simple_paths(g, u, v):
            if orient(q) != p:
                rows.append((p, orient(q)))
    row_dicts = [_row_of(g, p, q) for p, q in rows]
    res = solve_max_slack(g.m, row_dicts, [Fraction(-1)] * len(rows))
    if res.t < 0:
        lines = tuple(CertLine(p, q, lam) for (p, q), lam in zip(rows, res.duals) if lam > 0)
        return Verdict.infeasible(Certificate(lines=lines, strict=True))
    return Verdict.feasible(WeightFunction({e: res.x[i] for i, e in enumerate(g.edges)}))


# ---------------------------------------------------------------------------
# margins and perturbation


def strict_margin(ps: PathSystem, w) -> Fraction | None:
    """Exact minimum of w(Q) - w(P) over all pairs and competitors Q != P.

    None when no pair has a competitor (margin is infinite).  Enumerates the
    competitors explicitly, so intended for desk-scale graphs.
    """
    from .enumeration import all_simple_paths

    g = ps.graph
    wm = as_weight_map(g, w)
    margin: Fraction | None = None
    for (u, v), p in ps.paths.items():
        wp = weight_of(wm, p)
        for q in all_simple_paths(g, u, v):
            if orient(q) == p:
                continue
            gap = weight_of(wm, q) - wp
            if margin is None or gap < margin:
                margin = gap
    return margin


def perturbation_radius(ps: PathSystem, w: WeightFunction) -> Fraction:
    """Largest per-edge bump eps = margin / (2n) below which any delta in
    [0, eps]^E keeps the system strictly induced; 1 when no competitor exists."""
    if not verify_weights(ps, w, strict=True):
        raise NotStrictlyInducing("w does not strictly induce the system")
    margin = strict_margin(ps, w)
    if margin is None:
        return ONE
    assert margin > 0
    return margin / (2 * ps.graph.n)


# ---------------------------------------------------------------------------
# constructive builders: cycles and quotient lifting


def metrize_cycle(ps: PathSystem, strict: bool = True) -> WeightFunction:
    """Strictly inducing weights for any consistent system on a cycle.

    Trivial systems get unit tree edges and a heavy unused edge; reduced ones
    get unit weights on the odd quotient cycle, lifted back one persistent
    edge at a time.
    """
    del strict  # the construction is strict either way
    cls = classify_cycle_system(ps)   # validates cycle + consistency
    g = ps.graph
    if cls.kind == "trivial":
        unused = next(iter(set(g.edges) - ps.used_edges()))
        w = WeightFunction({e: (Fraction(g.n) if e == unused else ONE)
                            for e in g.edges})
        assert verify_weights(ps, w, strict=True)
        return w

    pers = sorted(persistent_edges(ps), key=lambda e: g.edge_index(*e))
    chain: list[tuple[PathSystem, Edge]] = []
    current = ps
    total_map = list(range(g.n))
    for e in pers:
        img = edge_key(total_map[e[0]], total_map[e[1]])
        chain.append((current, img))
        current, mapping = _contract_system(current, img)
        total_map = [mapping[x] for x in total_map]

    w = WeightFunction.unit(current.graph)
    assert verify_weights(current, w, strict=True)
    for sys_before, e in reversed(chain):
        w = lift_quotient_weights(sys_before, e, w)
    assert verify_weights(ps, w, strict=True)
    return w


def lift_quotient_weights(ps: PathSystem, e: Edge,
                          w_quotient: WeightFunction) -> WeightFunction:
    """Pull strictly inducing weights on ps/e back to ps.

    Edges that survive contraction keep their quotient weight; edges outside
    every path get a prohibitive weight N = 1 + sum of quotient weights; the
    contracted edge gets delta = margin / (4 |V|), with margin the quotient's
    exact strict margin.
    """
    e = edge_key(*e)
    if e not in persistent_edges(ps):
        raise NonPersistentEdge(f"edge {e} is not persistent")
    quot, mapping = _contract_system(ps, e)
    if not verify_weights(quot, w_quotient, strict=True):
        raise QuotientNotStrict("quotient weights must strictly induce ps/e")
    margin = strict_margin(quot, w_quotient)
    # delta must stay under the quotient margin, and under 1 so that the
    # prohibitive weight N below beats every path weight
    half = Fraction(1, 2)
    delta = half if margin is None else min(margin / (4 * ps.graph.n), half)
    big = ONE + w_quotient.total()
    used = ps.used_edges()
    table: dict[Edge, Fraction] = {}
    for f in ps.graph.edges:
        if f == e:
            table[f] = delta
        elif f in used:
            img = edge_key(mapping[f[0]], mapping[f[1]])
            table[f] = w_quotient.weights[img]
        else:
            table[f] = big
    w = WeightFunction(table)
    assert verify_weights(ps, w, strict=True), "quotient lift failed verification"
    return w


# ---------------------------------------------------------------------------
# suspended-path lifting


@dataclass(frozen=True)
class _SuspendedContext:
    x: int
    y: int
    walk: tuple[int, ...]            # y .. x along the suspended path
    cycle_vertices: tuple[int, ...]
    cycle_edges: tuple[Edge, ...]
    h_vertices: tuple[int, ...]
    h_edges: tuple[Edge, ...]
    runs: tuple[tuple[int, ...], ...]   # fibers of the crossing function, or () if empty fiber
    mid: int                            # index of the xy fiber among runs
    ps_c: PathSystem
    c_old: list[int]
    ps_h: PathSystem
    h_old: list[int]


def _suspended_context(ps: PathSystem, q) -> _SuspendedContext:
    g = ps.graph
    q = tuple(q)
    if len(q) < 3:
        raise PreconditionViolated("suspended path needs at least one interior vertex")
    x, y = q[0], q[-1]
    xy = edge_key(x, y)
    if xy not in g.edge_set:
        raise PreconditionViolated(f"edge {xy} must be present in the graph")
    if not path_in_graph(g, q):
        raise PreconditionViolated("q is not a simple path of the graph")
    for v in q[1:-1]:
        if g.degree(v) != 2:
            raise PreconditionViolated(f"interior vertex {v} must have degree 2")

    cyc_vertices = tuple(q)
    cyc_edges = tuple(path_edges(q)) + (xy,)
    for a, b in cyc_edges:
        if ps.paths[pair_key(a, b)] != (min(a, b), max(a, b)):
            raise PreconditionViolated(
                f"system must contain every edge of the cycle; ({a},{b}) is not a path")

    interior = set(q[1:-1])
    h_vertices = tuple(v for v in range(g.n) if v not in interior)
    h_edges = tuple(e for e in g.edges if e not in set(path_edges(q)))
    rc = restricts_to(ps, cyc_vertices, cyc_edges)
    rh = restricts_to(ps, h_vertices, h_edges)
    if rc is None or rh is None:
        raise PreconditionViolated("system does not restrict to the cycle and the rest")
    ps_c, c_old = rc
    ps_h, h_old = rh

    cf = crossing_function_of(ps_c)
    to_old = {i: c_old[i] for i in range(len(c_old))}
    f_old: dict[int, Edge] = {}
    for v_new, e_new in cf.f.items():
        f_old[to_old[v_new]] = edge_key(to_old[e_new[0]], to_old[e_new[1]])

    walk = tuple(reversed(q))   # y .. x
    fiber = [v for v in walk if f_old[v] == xy]
    if not fiber:
        return _SuspendedContext(x, y, walk, cyc_vertices, cyc_edges,
                                 h_vertices, h_edges, (), -1,
                                 ps_c, c_old, ps_h, h_old)
    assert f_old[x] != xy and f_old[y] != xy
    runs: list[list[int]] = []
    for v in walk:
        if runs and f_old[runs[-1][-1]] == f_old[v]:
            runs[-1].append(v)
        else:
            runs.append([v])
    k = len(runs)
    assert k % 2 == 1 and k >= 3, "fiber count along a nontrivial cycle system is odd"
    mid = k // 2
    assert f_old[runs[mid][0]] == xy, "the xy fiber must be the middle run"
    return _SuspendedContext(x, y, walk, cyc_vertices, cyc_edges,
                             h_vertices, h_edges,
                             tuple(tuple(r) for r in runs), mid,
                             ps_c, c_old, ps_h, h_old)


def build_derived_system(ps: PathSystem, q) -> tuple[Graph, PathSystem, list[int]]:
    """The auxiliary graph and system used by the suspended-path lift.

    All fibers except the one mapped to xy are suppressed; occurrences of the
    edge xy in system paths are replaced by the surviving arc.  Returns the
    new graph, the system on it, and the kept original vertex ids.
    """
    ctx = _suspended_context(ps, q)
    if not ctx.runs:
        raise PreconditionViolated("empty xy fiber: the glued weights suffice, "
                                   "no derived system is needed")
    g = ps.graph
    x, y = ctx.x, ctx.y
    mid_run = ctx.runs[ctx.mid]
    alpha, beta = mid_run[0], mid_run[-1]

    kept = sorted(set(ctx.h_vertices) | set(mid_run))
    pos = {v: i for i, v in enumerate(kept)}
    xy = edge_key(x, y)
    new_edges = {e for e in ctx.h_edges if e != xy}
    new_edges |= set(path_edges(mid_run)) if len(mid_run) > 1 else set()
    new_edges.add(edge_key(y, alpha))
    new_edges.add(edge_key(beta, x))
    gp = Graph.from_edges(len(kept), sorted(edge_key(pos[a], pos[b])
                                            for a, b in new_edges))

    u_set = set(mid_run)
    # the x -> y replacement of the edge xy inside G'
    splice_xy = (x,) + tuple(reversed(mid_run)) + (y,)

    def relabel(seq) -> Path:
        return tuple(pos[v] for v in seq)

    def pp(a: int, b: int) -> Path:
        return (a,) if a == b else ps.path(a, b)

    def derived(u: int, v: int) -> Path:
        p = ps.path(u, v)
        if u in u_set and v in u_set:
            return relabel(p)
        if u in u_set or v in u_set:
            if v in u_set:
                u, v, p = v, u, p[::-1]
            # u in U, v in H: exactly one of x, y lies on p
            assert (x in p) != (y in p)
            if x in p:
                i = p.index(x)
                return relabel(pp(u, beta) + p[i:])
            i = p.index(y)
            return relabel(pp(u, alpha) + p[i:])
        # both ends in H
        out: list[int] = []
        i = 0
        while i < len(p):
            out.append(p[i])
            if i + 1 < len(p) and edge_key(p[i], p[i + 1]) == xy:
                rep = splice_xy if p[i] == x else splice_xy[::-1]
                out.extend(rep[1:-1])
            i += 1
        return relabel(out)

    table: dict[Pair, Path] = {}
    for a, b in itertools.combinations(kept, 2):
        d = derived(a, b)
        assert len(set(d)) == len(d), f"derived path for ({a},{b}) is not simple"
        table[pair_key(d[0], d[-1])] = orient(d)
    psp = PathSystem(gp, table)
    ok, witness = is_consistent(psp)
    assert ok, f"derived system inconsistent at {witness}"
    return gp, psp, kept


def lift_suspended_path(g_plus: Graph, ps: PathSystem, q,
                        w_h, w_c, w_prime) -> WeightFunction:
    """Weights for a system on G+xy from weights on its three sub-instances.

    w_h induces the restriction to H = G - E(Q) + xy, w_c the restriction to
    the cycle C = Q + xy, and w_prime the derived system on the suppressed
    graph G'.  With an empty xy fiber the rescaled glue of w_h and w_c is
    already inducing; otherwise the three-stage reweighting of the cycle is
    applied.  The output is strict whenever all three inputs are strict.
    """
    if g_plus != ps.graph:
        raise PreconditionViolated("g_plus must be the graph the system lives on")
    ctx = _suspended_context(ps, q)
    g = ps.graph
    x, y = ctx.x, ctx.y
    xy = edge_key(x, y)

    def pull(wf, old_ids, sub_graph: Graph) -> dict[Edge, Fraction]:
        wm = as_weight_map(sub_graph, wf)
        return {edge_key(old_ids[a], old_ids[b]): val
                for (a, b), val in wm.items()}

    if not verify_weights(ctx.ps_h, w_h, strict=False):
        raise PreconditionViolated("w_h does not induce the restriction to H")
    if not verify_weights(ctx.ps_c, w_c, strict=False):
        raise PreconditionViolated("w_c does not induce the cycle restriction")
    strict_all = verify_weights(ctx.ps_h, w_h, True) and \
        verify_weights(ctx.ps_c, w_c, True)

    wh = pull(w_h, ctx.h_old, ctx.ps_h.graph)
    wc = pull(w_c, ctx.c_old, ctx.ps_c.graph)

    if not ctx.runs:
        # glue after rescaling the cycle weights to agree on xy
        factor = wh[xy] / wc[xy]
        glued = dict(wh)
        for e, val in wc.items():
            if e != xy:
                glued[e] = val * factor
        w = WeightFunction(glued)
        assert verify_weights(ps, w, strict=False)
        if strict_all:
            assert verify_weights(ps, w, strict=True)
        return w

    gp, psp, kept = build_derived_system(ps, q)
    if not verify_weights(psp, w_prime, strict=False):
        raise PreconditionViolated("w_prime does not induce the derived system")
    strict_all = strict_all and verify_weights(psp, w_prime, True)
    wp = pull(w_prime, kept, gp)

    mid_run = ctx.runs[ctx.mid]
    alpha, beta = mid_run[0], mid_run[-1]
    e_alpha = edge_key(ctx.runs[ctx.mid - 1][-1], alpha)      # e_{2n+1}
    e_beta = edge_key(beta, ctx.runs[ctx.mid + 1][0])         # e_1
    n1 = sum(len(r) - 1 for r in ctx.runs[:ctx.mid])
    n2 = sum(len(r) - 1 for r in ctx.runs[ctx.mid + 1:])

    u_edges = set(path_edges(mid_run)) if len(mid_run) > 1 else set()
    k_const = wp[edge_key(y, alpha)] + sum((wp[e] for e in u_edges), ZERO) \
        + wp[edge_key(beta, x)]
    r_const = min(wp[edge_key(beta, x)], wp[edge_key(y, alpha)]) / 2

    connectors = [edge_key(run_a[-1], run_b[0])
                  for run_a, run_b in zip(ctx.runs, ctx.runs[1:])]

    w1: dict[Edge, Fraction] = {}
    for e in ctx.h_edges:
        if e != xy:
            w1[e] = wp[e]
    w1[xy] = k_const
    for e in u_edges:
        w1[e] = wp[e]
    w1[e_beta] = wp[edge_key(beta, x)] + r_const
    w1[e_alpha] = wp[edge_key(y, alpha)] + r_const
    for e in ctx.cycle_edges:
        w1.setdefault(e, ZERO)

    w2 = dict(w1)
    for e in connectors:
        if e not in (e_alpha, e_beta):
            w2[e] = k_const / 2 + r_const

    # strict margin of w2 over the cycle inequalities bounds the perturbation
    margin_c = None
    for (a, b), p in ctx.ps_c.paths.items():
        arc = tuple(ctx.c_old[i] for i in p)
        other = _other_cycle_arc(ctx, arc)
        gap = sum((w2[e] for e in path_edges(other)), ZERO) \
            - sum((w2[e] for e in path_edges(arc)), ZERO)
        assert gap > 0, "stage-two weights must strictly induce the cycle system"
        margin_c = gap if margin_c is None else min(margin_c, gap)

    scale = n1 + n2 + 1
    delta = min(Fraction(1, 2 * scale),
                margin_c / (2 * len(ctx.cycle_vertices) * scale))

    for attempt in range(40):
        w_map = dict(w2)
        for run in ctx.runs:
            if run is mid_run:
                continue
            for e in path_edges(run):
                w_map[e] = delta
        w_map[e_beta] = w2[e_beta] + n1 * delta
        w_map[e_alpha] = w2[e_alpha] + n2 * delta
        if all(v > 0 for v in w_map.values()):
            w = WeightFunction(w_map)
            if verify_weights(ps, w, strict=False) and \
                    (not strict_all or verify_weights(ps, w, strict=True)):
                return w
        delta = delta / 2
    raise AssertionError("suspended-path lift failed to verify")


def _other_cycle_arc(ctx: _SuspendedContext, arc: Path) -> Path:
    """The complementary arc between arc's endpoints on the cycle."""
    cyc = list(ctx.walk)
    n = len(cyc)
    pos = {v: i for i, v in enumerate(cyc)}
    a, b = arc[0], arc[-1]
    i, j = pos[a], pos[b]
    fwd = tuple(cyc[(i + k) % n] for k in range(((j - i) % n) + 1))
    bwd = tuple(cyc[(i - k) % n] for k in range(((i - j) % n) + 1))
    if fwd == arc:
        return bwd
    if bwd == arc:
        return fwd
    raise AssertionError("arc does not follow the cycle")


# ---------------------------------------------------------------------------
# outerplanar driver


def metrize_outerplanar(g: Graph, ps: PathSystem, strict: bool) -> WeightFunction:
    """Constructive weights for any consistent system on an outerplanar graph.

    Recursion on the cycle rank: cycles are weighted directly; otherwise an
    internal edge xy whose removal leaves a suspended x-y path is lifted via
    the derived-system construction.  Systems that skip an edge of the working
    cycle reduce to a smaller graph with that edge priced out.
    """
    ok, witness = is_consistent(ps)
    if not ok:
        raise InconsistentInput(f"system inconsistent at {witness}")
    if not g.is_connected():
        raise InconsistentInput("graph must be connected")
    if g != ps.graph:
        raise InconsistentInput("system must live on g")
    if not is_outerplanar(g):
        raise NotOuterplanar("graph contains a K4 or K_{2,3} subdivision")
    w = _metrize_blocks(g, ps, strict)
    assert verify_weights(ps, w, strict), "outerplanar construction failed"
    return w


def _metrize_blocks(g: Graph, ps: PathSystem, strict: bool) -> WeightFunction:
    from .graph import biconnected_components

    blocks = biconnected_components(g)
    if len(blocks) == 1 and blocks[0][0].n == g.n:
        return _metrize_block(g, ps, strict)
    table: dict[Edge, Fraction] = {}
    for bg, old in blocks:
        restriction = restricts_to(ps, old, [
            edge_key(old[a], old[b]) for a, b in bg.edges])
        assert restriction is not None, "block restriction must exist"
        sub_ps, sub_old = restriction
        sub_w = _metrize_block(sub_ps.graph, sub_ps, strict)
        for (a, b), val in as_weight_map(sub_ps.graph, sub_w).items():
            table[edge_key(sub_old[a], sub_old[b])] = val
    return WeightFunction(table)


def _suspended_between(g: Graph, x: int, y: int) -> list[Path]:
    """Simple x-y paths of length >= 2 whose interior vertices have degree 2."""
    out = []
    for w0 in g.adj[x]:
        if g.degree(w0) != 2 or w0 == y:
            continue
        path = [x, w0]
        while g.degree(path[-1]) == 2 and path[-1] != y:
            nxt = [z for z in g.adj[path[-1]] if z != path[-2]]
            if not nxt or nxt[0] in path:
                path = None
                break
            path.append(nxt[0])
        if path and path[-1] == y:
            out.append(tuple(path))
    return sorted(out)


def _metrize_block(g: Graph, ps: PathSystem, strict: bool) -> WeightFunction:
    if g.m <= 1:
        return WeightFunction({e: ONE for e in g.edges})
    if g.m == g.n and all(g.degree(v) == 2 for v in range(g.n)):
        return metrize_cycle(ps)

    choice = None
    for e in sorted(g.edges):
        x, y = e
        g2 = Graph.from_edges(g.n, [f for f in g.edges if f != e])
        cands = _suspended_between(g2, x, y)
        if cands:
            choice = (e, cands[0])
            break
    assert choice is not None, "2-connected outerplanar non-cycle must have an ear"
    e, q = choice
    x, y = e

    # reductions: the system may skip the chord or an ear edge entirely
    for skip in (e, *path_edges(q)):
        a, b = skip
        if ps.paths[pair_key(a, b)] != skip:
            assert all(skip not in path_edges(p) for p in ps.paths.values())
            g_small = Graph.from_edges(g.n, [f for f in g.edges if f != skip])
            ps_small = PathSystem(g_small, dict(ps.paths))
            w_small = _metrize_blocks(g_small, ps_small, strict)
            wm = as_weight_map(g_small, w_small)
            wm[skip] = ONE + sum(wm.values(), ZERO)
            return WeightFunction(wm)

    ctx = _suspended_context(ps, q)
    h_restr = restricts_to(ps, ctx.h_vertices, ctx.h_edges)
    assert h_restr is not None
    ps_h, _ = h_restr
    w_h = _metrize_blocks(ps_h.graph, ps_h, strict)
    w_c = metrize_cycle(ctx.ps_c)
    if not ctx.runs:
        return lift_suspended_path(g, ps, q, w_h, w_c, None)
    _, psp, _ = build_derived_system(ps, q)
    w_prime = _metrize_blocks(psp.graph, psp, strict)
    return lift_suspended_path(g, ps, q, w_h, w_c, w_prime)


# ---------------------------------------------------------------------------
# text formats


def format_weights(g: Graph, w) -> str:
    wm = as_weight_map(g, w, allow_zero=True)
    return "".join(f"{u} {v} {wm[(u, v)]}\n" for u, v in g.edges)


def parse_weights(text: str, g: Graph) -> WeightFunction:
    table: dict[Edge, Fraction] = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"bad weight line: {ln!r}")
        try:
            u, v, val = int(parts[0]), int(parts[1]), Fraction(parts[2])
        except ValueError as exc:
            raise FormatError(f"bad weight line: {ln!r}") from exc
        table[edge_key(u, v)] = val
    if set(table) != g.edge_set:
        raise FormatError("weights must cover exactly the graph's edges")
    try:
        return WeightFunction(table)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_certificate(cert: Certificate) -> str:
    lines = [f"certificate strict={1 if cert.strict else 0}"]
    for line in cert.lines:
        p = " ".join(str(v) for v in line.chosen)
        q = " ".join(str(v) for v in line.competitor)
        lines.append(f"{line.multiplier} | P: {p} | Q: {q}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows or not rows[0].startswith("certificate"):
        raise FormatError("missing certificate header")
    head = rows[0].replace("certificate", "").strip()
    if head not in ("strict=0", "strict=1"):
        raise FormatError(f"bad certificate header: {rows[0]!r}")
    strict = head == "strict=1"
    lines = []
    for ln in rows[1:]:
        try:
            lam_part, p_part, q_part = (seg.strip() for seg in ln.split("|"))
            lam = Fraction(lam_part)
            if not p_part.startswith("P:") or not q_part.startswith("Q:"):
                raise ValueError
            chosen = tuple(int(v) for v in p_part[2:].split())
            comp = tuple(int(v) for v in q_part[2:].split())
        except ValueError as exc:
            raise FormatError(f"bad certificate line: {ln!r}") from exc
        lines.append(CertLine(chosen, comp, lam))
    return Certificate(lines=tuple(lines), strict=strict)
