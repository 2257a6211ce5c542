import numpy as np
import pytest

from pathmet.circle import (
    SampledCircleMap,
    SampledDensity,
    antipodal_map,
    check_involution,
    compatible_density_from_derivative,
    format_circle,
    is_crossing,
    mobius_involution,
    parse_circle,
    rotation_map,
    step_map_from_crossing,
    verify_compatibility,
    verify_invariance,
)
from pathmet.errors import (
    NonPositiveDerivative,
    ResolutionMismatch,
    ResolutionTooLow,
)


def test_is_crossing_examples():
    n = 64
    assert is_crossing(antipodal_map(n)) == (True, None)
    identity = SampledCircleMap(np.arange(n) / n)
    assert is_crossing(identity)[0]
    ok, witness = is_crossing(rotation_map(n, 0.25))
    assert not ok and witness is not None


def test_is_crossing_resolution_gate():
    with pytest.raises(ResolutionTooLow):
        is_crossing(SampledCircleMap(np.array([0.0, 0.5])))


def test_involution_examples():
    n = 64
    assert check_involution(antipodal_map(n), tol=1e-9)
    reflection = SampledCircleMap((1 - np.arange(n) / n) % 1.0)
    assert check_involution(reflection, tol=1e-9)
    assert not check_involution(rotation_map(n, 0.3), tol=1e-9)


def test_density_from_derivative_uniform():
    dens = compatible_density_from_derivative(antipodal_map(1024))
    assert np.allclose(dens.values, 1.0)


def test_density_requires_positive_derivative():
    n = 64
    vals = (np.arange(n) / n + 0.5) % 1.0
    vals[10], vals[11] = vals[11], vals[10]   # a local decrease
    t = SampledCircleMap(vals)
    with pytest.raises((NonPositiveDerivative, ValueError)):
        compatible_density_from_derivative(t)


def test_compatibility_examples():
    n = 1024
    ant = antipodal_map(n)
    assert verify_compatibility(ant, SampledDensity.uniform(n), 1e-6)
    lopsided = np.zeros(n)
    lopsided[: n // 2] = 2.0
    assert not verify_compatibility(ant, SampledDensity(lopsided), 1e-6)


def test_invariance_examples():
    n = 512
    ant = antipodal_map(n)
    assert verify_invariance(ant, SampledDensity.uniform(n), 1e-6)
    with pytest.raises(ResolutionMismatch):
        verify_invariance(ant, SampledDensity.uniform(2 * n), 1e-6)


def test_mobius_fixture():
    n = 1024
    t = mobius_involution(n, 0.3)
    assert is_crossing(t)[0]
    assert check_involution(t, tol=1e-5)
    mu = compatible_density_from_derivative(t)
    assert verify_compatibility(t, mu, 1e-3)
    assert verify_invariance(t, mu, 1e-2)


def test_compat_invariance_agree_including_failure():
    """The numerical shadow of the equivalence: on smooth involutions the two
    checks pass together; after a deliberate perturbation both fail."""
    n = 512
    for a in (0.0, 0.2, 0.35):
        t = mobius_involution(n, a)
        mu = compatible_density_from_derivative(t, involution_tol=1e-3)
        assert verify_compatibility(t, mu, 1e-2)
        assert verify_invariance(t, mu, 1e-2)
        bad = mu.values.copy()
        bad[: n // 4] *= 1.5
        bad_mu = SampledDensity.normalized(bad)
        assert not verify_compatibility(t, bad_mu, 1e-2)
        assert not verify_invariance(t, bad_mu, 1e-2)


def test_chain_rule_at_samples():
    n = 1024
    t = mobius_involution(n, 0.3)
    d = t.derivative()

    def interp(vals, x):
        x = np.asarray(x) % 1.0
        k = np.floor(x * n).astype(int) % n
        frac = x * n - np.floor(x * n)
        return vals[k] * (1 - frac) + vals[(k + 1) % n] * frac

    err = np.max(np.abs(d * interp(d, t.values) - 1.0))
    assert err <= 10.0 / n


def test_step_map_bridge():
    from pathmet.systems import all_crossing_functions

    for n in (5, 6, 7):
        for cf in all_crossing_functions(n):
            sm = step_map_from_crossing(cf)
            assert is_crossing(sm)[0], (n, cf.f)


def test_circle_format_roundtrip():
    t = mobius_involution(256, 0.2)
    back = parse_circle(format_circle(t.values))
    assert np.array_equal(back, t.values)
