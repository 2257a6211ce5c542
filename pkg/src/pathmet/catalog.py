"""The known minimal non-metrizable graphs with their certificate systems,
structural non-metrizability screens, and the graph-level decision driver.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from importlib import resources

from .errors import CorruptData, NotBiconnected, TooLarge
from .graph import (
    Edge,
    Graph,
    SubdivisionWitness,
    biconnected_components,
    complete_bipartite,
    contains_subdivision,
    edge_key,
    is_outerplanar,
    is_planar,
    parse_graph,
    prism_graph,
    vertex_connectivity,
    wheel_graph,
)
from .metrize import (
    Certificate,
    Verdict,
    decide_metrizable,
    parse_certificate,
    verify_certificate,
    verify_weights,
    WeightFunction,
)
from .systems import PathSystem, is_consistent, parse_path_system

CATALOG_SIZE = 11


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    graph: Graph
    fixture_system: PathSystem
    fixture_certificate: Certificate
    forced_edge: Edge


_CATALOG: list[CatalogEntry] | None = None


def _data_text(name: str) -> str:
    return resources.files("pathmet.data").joinpath(name).read_text()


def catalog() -> list[CatalogEntry]:
    """All eleven bundled entries, self-validated on first load."""
    global _CATALOG
    if _CATALOG is not None:
        return _CATALOG

    sums = {}
    for ln in _data_text("checksums.sha256").splitlines():
        digest, name = ln.split()
        sums[name] = digest

    def load(name: str) -> str:
        text = _data_text(name)
        actual = hashlib.sha256(text.encode()).hexdigest()
        if sums.get(name) != actual:
            raise CorruptData(f"checksum mismatch for {name}")
        return text

    index = json.loads(load("catalog.json"))
    if len(index) != CATALOG_SIZE:
        raise CorruptData(f"expected {CATALOG_SIZE} entries, found {len(index)}")
    entries = []
    for item in index:
        g = parse_graph(load(item["graph"]))
        ps = parse_path_system(load(item["system"]), g)
        cert = parse_certificate(load(item["certificate"]))
        forced = edge_key(*item["forced_edge"])
        ok, witness = is_consistent(ps)
        if not ok:
            raise CorruptData(f"entry {item['id']}: system inconsistent at {witness}")
        if not verify_certificate(ps, cert):
            raise CorruptData(f"entry {item['id']}: certificate does not verify")
        if cert.forced_edges(g) != [forced]:
            raise CorruptData(f"entry {item['id']}: forced edge mismatch")
        entries.append(CatalogEntry(
            id=item["id"], graph=g, fixture_system=ps,
            fixture_certificate=cert, forced_edge=forced))
    _CATALOG = entries
    return entries


# ---------------------------------------------------------------------------
# screens


STRUCTURAL_RULES = ("a", "b", "c", "d", "e", "f")


def screen_structural(g: Graph) -> str | None:
    """First firing non-metrizability rule for a 2-connected graph.

    (a) 4-connected with >= 7 vertices; (b) non-planar with >= 8;
    (c) 3-connected with >= 8; (d) minimum degree 3 with >= 13;
    (e) W_5 subdivision with >= 8; (f) Y_3 subdivision with >= 7.
    Connectivity rules are evaluated before the planarity rule, so e.g. a
    large 3-connected non-planar graph reports (c).
    """
    if g.n < 3:
        raise NotBiconnected("screen requires a 2-connected graph")
    kappa = vertex_connectivity(g)
    if kappa < 2:
        raise NotBiconnected("screen requires a 2-connected graph")
    if kappa >= 4 and g.n >= 7:
        return "a"
    if kappa >= 3 and g.n >= 8:
        return "c"
    if g.n >= 8 and not is_planar(g):
        return "b"
    if g.n >= 13 and min(g.degree(v) for v in range(g.n)) >= 3:
        return "d"
    if g.n >= 8 and contains_subdivision(g, wheel_graph(5)) is not None:
        return "e"
    if g.n >= 7 and contains_subdivision(g, prism_graph()) is not None:
        return "f"
    return None


def screen_catalog(g: Graph) -> tuple[int, SubdivisionWitness] | None:
    """First catalog entry found as a subdivision inside g."""
    for entry in catalog():
        witness = contains_subdivision(g, entry.graph)
        if witness is not None:
            return entry.id, witness
    return None


# ---------------------------------------------------------------------------
# graph-level verdicts


@dataclass(frozen=True)
class GraphVerdict:
    kind: str            # "non_metrizable" | "metrizable" | "strictly_metrizable" | "unknown"
    reason: str
    rule: str | None = None
    catalog_id: int | None = None
    witness_system: PathSystem | None = None
    witness_certificate: Certificate | None = None
    subdivision: SubdivisionWitness | None = None
    systems_checked: int = 0

    @property
    def decided(self) -> bool:
        return self.kind != "unknown"


@dataclass
class Budget:
    max_systems: int | None = None
    max_seconds: float | None = None
    started: float = field(default_factory=time.monotonic)
    used_systems: int = 0

    def spent(self) -> bool:
        if self.max_systems is not None and self.used_systems >= self.max_systems:
            return True
        if self.max_seconds is not None and \
                time.monotonic() - self.started >= self.max_seconds:
            return True
        return False


def _decide_block(g: Graph, strict: bool, budget: Budget,
                  jobs: int = 1) -> GraphVerdict:
    from .enumeration import enumerate_consistent_systems

    if g.n <= 4:
        return GraphVerdict(kind="strictly_metrizable", reason="small")
    if is_outerplanar(g):
        return GraphVerdict(kind="strictly_metrizable", reason="outerplanar")
    rule = screen_structural(g)
    if rule is not None:
        return GraphVerdict(kind="non_metrizable", reason="structural", rule=rule)
    hit = screen_catalog(g)
    if hit is not None:
        return GraphVerdict(kind="non_metrizable", reason="catalog",
                            catalog_id=hit[0], subdivision=hit[1])
    checked = 0
    for ps in enumerate_consistent_systems(g, max_vertices=None, jobs=jobs):
        if budget.spent():
            return GraphVerdict(
                kind="unknown",
                reason=f"budget exhausted after {budget.used_systems} systems "
                       "with no infeasible system found",
                systems_checked=checked)
        verdict = _decide_system_fast(ps, strict)
        budget.used_systems += 1
        checked += 1
        if not verdict.metrizable:
            return GraphVerdict(kind="non_metrizable", reason="exhaustive",
                                witness_system=ps,
                                witness_certificate=verdict.certificate,
                                systems_checked=checked)
    kind = "strictly_metrizable" if strict else "metrizable"
    return GraphVerdict(kind=kind, reason="exhaustive", systems_checked=checked)


def _decide_system_fast(ps: PathSystem, strict: bool) -> Verdict:
    """Unit-weight shortcut before the full LP decision."""
    unit = WeightFunction.unit(ps.graph)
    if verify_weights(ps, unit, strict):
        return Verdict.feasible(unit)
    return decide_metrizable(ps, strict)


def decide_graph(g: Graph, strict: bool = False,
                 budget: Budget | None = None, jobs: int = 1) -> GraphVerdict:
    """Per-block pipeline: small and outerplanar blocks are strictly
    metrizable, screens certify non-metrizability, and what remains is settled
    by exhaustive enumeration within the budget."""
    if budget is None:
        budget = Budget()
    if g.n <= 1:
        return GraphVerdict(kind="strictly_metrizable", reason="small")
    if not g.is_connected():
        blocks = []
        for comp in g.connected_components():
            sub, _ = g.induced_subgraph(comp)
            if sub.n >= 2:
                blocks.extend(biconnected_components(sub))
    else:
        blocks = biconnected_components(g)
    if len(blocks) == 1:
        return _decide_block(blocks[0][0], strict, budget, jobs)
    worst: GraphVerdict | None = None
    strict_everywhere = True
    total = 0
    for bg, _ in blocks:
        v = _decide_block(bg, strict, budget, jobs)
        total += v.systems_checked
        if v.kind == "non_metrizable":
            return GraphVerdict(kind=v.kind, reason=v.reason, rule=v.rule,
                                catalog_id=v.catalog_id,
                                witness_system=v.witness_system,
                                witness_certificate=v.witness_certificate,
                                subdivision=v.subdivision, systems_checked=total)
        if v.kind == "unknown":
            worst = v
        elif v.kind == "metrizable":
            strict_everywhere = False
    if worst is not None:
        return GraphVerdict(kind="unknown", reason=worst.reason,
                            systems_checked=total)
    kind = "strictly_metrizable" if strict_everywhere else "metrizable"
    return GraphVerdict(kind=kind, reason="blocks", systems_checked=total)


def kn2_family_check(n: int, budget: Budget | None = None) -> tuple[bool, bool]:
    """(metrizable, strictly metrizable) for K_{2,n}.

    Exhaustive for n <= 4; beyond that the enumeration outgrows the desk-scale
    budget and the call is rejected.
    """
    from .enumeration import enumerate_consistent_systems

    if n < 2:
        raise ValueError("n must be at least 2")
    if n > 4:
        raise TooLarge("K_{2,n} enumeration is desk-scale only for n <= 4")
    g = complete_bipartite(2, n)
    if budget is None:
        budget = Budget()
    metrizable = True
    strictly = True
    for ps in enumerate_consistent_systems(g, max_vertices=None):
        if budget.spent():
            raise TooLarge("budget exhausted during K_{2,n} sweep")
        budget.used_systems += 1
        if strictly:
            if _decide_system_fast(ps, True).metrizable:
                continue   # strict feasibility implies plain feasibility
            strictly = False
        if not _decide_system_fast(ps, False).metrizable:
            metrizable = False
            strictly = False
            break
    return metrizable, strictly
