"""Reproduces the bundled example results as named pass/fail checks."""

from __future__ import annotations

import random
from fractions import Fraction

from . import circle as circ
from .catalog import catalog, decide_graph, kn2_family_check, screen_structural
from .fixtures import (
    PETERSEN_FORCED_EDGES,
    k24_strict_certificate,
    k24_system,
    non_extendable_partial,
    petersen_certificate,
    petersen_system,
    prism_strict_certificate,
    prism_system,
)
from .graph import complete_graph, petersen_graph
from .metrize import (
    WeightFunction,
    decide_metrizable,
    decide_partial_strict,
    perturbation_radius,
    verify_certificate,
    verify_weights,
)
from .systems import canonical_odd_system, is_consistent, quotient


def run_all(seed: int = 0) -> list[tuple[str, bool]]:
    rng = random.Random(seed)
    results: list[tuple[str, bool]] = []

    def check(name: str, fn) -> None:
        try:
            results.append((name, bool(fn())))
        except Exception:
            results.append((name, False))

    ps = petersen_system()
    check("petersen system consistent", lambda: is_consistent(ps)[0])
    check("petersen bundled certificate verifies",
          lambda: verify_certificate(ps, petersen_certificate()))

    def petersen_decision():
        v = decide_metrizable(ps, strict=False)
        return (not v.metrizable and
                v.certificate.forced_edges(ps.graph) == list(PETERSEN_FORCED_EDGES))
    check("petersen infeasible, forcing the five inner edges", petersen_decision)

    pr = prism_system()
    check("prism induced by unit weights",
          lambda: verify_weights(pr, WeightFunction.unit(pr.graph), False))

    def prism_strict():
        v = decide_metrizable(pr, strict=True)
        if v.metrizable:
            return False
        c = v.certificate.coefficient_vector(pr.graph)
        return all(x == 0 for x in c.values())
    check("prism strictly infeasible in the 0<0 form", prism_strict)
    check("prism bundled strict certificate verifies",
          lambda: verify_certificate(pr, prism_strict_certificate()))

    def catalog_all():
        for entry in catalog():
            ok, _ = is_consistent(entry.fixture_system)
            if not ok:
                return False
            if not verify_certificate(entry.fixture_system, entry.fixture_certificate):
                return False
            v = decide_metrizable(entry.fixture_system, strict=False)
            if v.metrizable or entry.forced_edge not in \
                    v.certificate.forced_edges(entry.graph):
                return False
        return True
    check("all 11 catalog entries decide infeasible on their stated edge",
          catalog_all)

    def quotient_fixture():
        entry = catalog()[3]
        sysq, _ = quotient(entry.fixture_system, [entry.forced_edge])
        return decide_metrizable(sysq, strict=False).metrizable
    check("catalog entry 4 becomes metrizable after contracting its edge",
          quotient_fixture)

    check("K_{2,4} neighborly system induced by unit weights",
          lambda: verify_weights(k24_system(), WeightFunction.unit(k24_system().graph), False))
    check("K_{2,4} strict certificate verifies (0<0 form)",
          lambda: verify_certificate(k24_system(), k24_strict_certificate()))
    check("K_{2,4} family flags (metrizable, not strictly)",
          lambda: kn2_family_check(4) == (True, False))

    check("K_7 screens by rule (a)",
          lambda: screen_structural(complete_graph(7)) == "a")
    check("petersen screens by rule (c)",
          lambda: screen_structural(petersen_graph()) == "c")
    check("K_4 decides strictly metrizable",
          lambda: decide_graph(complete_graph(4), strict=True).kind
          == "strictly_metrizable")

    def partial_fixture():
        pps = non_extendable_partial()
        from .enumeration import enumerate_consistent_systems
        completions = list(enumerate_consistent_systems(pps.graph, seed=pps))
        return not completions and not decide_partial_strict(pps).metrizable
    check("non-extendable partial system is strictly infeasible", partial_fixture)

    def perturb_fixture():
        s5 = canonical_odd_system(5)
        w = WeightFunction.unit(s5.graph)
        eps = perturbation_radius(s5, w)
        for _ in range(100):
            bump = {e: v + Fraction(rng.randrange(0, 1000), 1000) * eps
                    for e, v in w.weights.items()}
            if not verify_weights(s5, WeightFunction(bump), True):
                return False
        return True
    check("perturbation radius keeps 100 random bumps strict", perturb_fixture)

    def circle_fixture():
        n = 1024
        ant = circ.antipodal_map(n)
        uni = circ.SampledDensity.uniform(n)
        return (circ.is_crossing(ant)[0] and circ.check_involution(ant)
                and circ.verify_compatibility(ant, uni, 1e-6)
                and circ.verify_invariance(ant, uni, 1e-6))
    check("antipodal circle map with uniform density", circle_fixture)

    def circle_agreement():
        n = 512
        for a in (0.0, 0.2, 0.35):
            t = circ.mobius_involution(n, a)
            mu = circ.compatible_density_from_derivative(t, involution_tol=1e-3)
            c = circ.verify_compatibility(t, mu, 1e-2)
            i = circ.verify_invariance(t, mu, 1e-2)
            if c != i or not c:
                return False
        return True
    check("compatibility and invariance agree on smooth circle fixtures",
          circle_agreement)

    return results
