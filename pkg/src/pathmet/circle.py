"""Sampled treatment of crossing self-maps of the circle and their compatible
and invariant measures.

Unlike the exact metrize module, everything here is binary64 with explicit
tolerances: the continuous statements are analytic, and the sample count N is
the caller's accuracy knob.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    FormatError,
    NonPositiveDerivative,
    ResolutionMismatch,
    ResolutionTooLow,
)


def circ_dist(a, b):
    """Distance on the unit circle [0,1)."""
    d = np.abs(np.asarray(a) - np.asarray(b)) % 1.0
    return np.minimum(d, 1.0 - d)


def _circ_delta(a, b):
    """Signed shortest arc from a to b in (-1/2, 1/2]."""
    return (np.asarray(b) - np.asarray(a) + 0.5) % 1.0 - 0.5


@dataclass(frozen=True)
class SampledCircleMap:
    """Values T(k/N) for k = 0..N-1, all in [0,1)."""

    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or len(vals) < 1:
            raise ValueError("values must be a nonempty 1-d array")
        if not np.all(np.isfinite(vals)):
            raise ValueError("sample values must be finite")
        vals = vals % 1.0
        vals[vals >= 1.0] = 0.0   # -1e-18 % 1.0 rounds to 1.0
        object.__setattr__(self, "values", vals)

    @property
    def resolution(self) -> int:
        return len(self.values)

    def __call__(self, x) -> np.ndarray:
        """Evaluate by circular linear interpolation between samples."""
        x = np.asarray(x, dtype=float) % 1.0
        n = self.resolution
        k = np.floor(x * n).astype(int) % n
        frac = x * n - np.floor(x * n)
        v0 = self.values[k]
        v1 = self.values[(k + 1) % n]
        return (v0 + frac * _circ_delta(v0, v1)) % 1.0

    def derivative(self) -> np.ndarray:
        """Central finite differences with circular wraparound."""
        n = self.resolution
        fwd = np.roll(self.values, -1)
        bwd = np.roll(self.values, 1)
        return _circ_delta(bwd, fwd) * n / 2.0


@dataclass(frozen=True)
class SampledDensity:
    """Nonnegative samples f(k/N) normalized so the periodic trapezoid rule
    integrates to 1 within the declared tolerance."""

    values: np.ndarray
    normalization_tol: float = 1e-9

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or len(vals) < 1:
            raise ValueError("values must be a nonempty 1-d array")
        if np.any(vals < 0):
            raise ValueError("density must be nonnegative")
        total = float(np.mean(vals))   # periodic trapezoid = mean of samples
        if abs(total - 1.0) > self.normalization_tol:
            raise ValueError(f"density integrates to {total}, not 1")
        object.__setattr__(self, "values", vals)

    @property
    def resolution(self) -> int:
        return len(self.values)

    @staticmethod
    def uniform(n: int) -> "SampledDensity":
        return SampledDensity(np.ones(n))

    @staticmethod
    def normalized(values) -> "SampledDensity":
        vals = np.asarray(values, dtype=float)
        return SampledDensity(vals / np.mean(vals))

    def _cumulative(self) -> np.ndarray:
        # F[k] = integral of the piecewise-linear density over [0, k/N]
        n = self.resolution
        cell = (self.values + np.roll(self.values, -1)) / (2.0 * n)
        return np.concatenate([[0.0], np.cumsum(cell)])

    def arc_measure(self, a, b) -> np.ndarray:
        """Measure of the positively oriented arc from a to b."""
        n = self.resolution
        cum = self._cumulative()
        total = cum[-1]

        def f_at(x):
            x = np.asarray(x, dtype=float) % 1.0
            k = np.floor(x * n).astype(int) % n
            frac = x * n - np.floor(x * n)
            v0 = self.values[k]
            v1 = self.values[(k + 1) % n]
            # integral over the partial cell [k/N, x]
            part = (v0 + (v0 + frac * (v1 - v0))) / 2.0 * frac / n
            return cum[k] + part

        raw = (f_at(b) - f_at(a)) % total
        return raw


COINCIDENCE_EPS = 1e-12


def is_crossing(t: SampledCircleMap) -> tuple[bool, tuple[int, int] | None]:
    """Chord-intersection check over all sample pairs; witness on failure.

    Chords are closed segments; degenerate chords (fixed points) count as
    intersecting everything, so the identity map passes.  Endpoints closer
    than float-noise scale are treated as shared, since at that separation
    the sampled data cannot distinguish touching from crossing.
    """
    n = t.resolution
    if n < 4:
        raise ResolutionTooLow("need at least 4 samples")
    xs = np.arange(n) / n
    ys = t.values
    eps = COINCIDENCE_EPS
    for i in range(n):
        ai, bi = xs[i], ys[i]
        if circ_dist(ai, bi) <= eps:
            continue
        for j in range(i + 1, n):
            aj, bj = xs[j], ys[j]
            if circ_dist(aj, bj) <= eps:
                continue
            # positions of chord j's endpoints relative to chord i's arcs
            s = (bi - ai) % 1.0
            pa = (aj - ai) % 1.0
            pb = (bj - ai) % 1.0
            if min(pa, 1.0 - pa, abs(pa - s)) <= eps or \
                    min(pb, 1.0 - pb, abs(pb - s)) <= eps:
                continue   # shared endpoint counts as intersecting
            if (pa < s) == (pb < s):
                return False, (i, j)
    return True, None


def check_involution(t: SampledCircleMap, tol: float = 1e-9) -> bool:
    """max_k circ_dist(T(T(k/N)), k/N) <= tol, with interpolated evaluation."""
    n = t.resolution
    xs = np.arange(n) / n
    return bool(np.max(circ_dist(t(t.values), xs)) <= tol)


def compatible_density_from_derivative(
        t: SampledCircleMap, involution_tol: float = 1e-5) -> SampledDensity:
    """Density proportional to sqrt(T'), normalized to total mass 1.

    The involution gate allows for interpolation error, which shrinks like
    1/N^2 for smooth maps; tighten it along with the resolution.
    """
    ok, witness = is_crossing(t)
    if not ok:
        raise ValueError(f"map is not crossing; witness pair {witness}")
    if not check_involution(t, tol=involution_tol):
        raise ValueError(f"map is not an involution at tolerance {involution_tol}")
    deriv = t.derivative()
    if np.any(deriv <= 0):
        raise NonPositiveDerivative("finite-difference derivative must be positive")
    return SampledDensity.normalized(np.sqrt(deriv))


def verify_compatibility(t: SampledCircleMap, mu: SampledDensity,
                         tol: float) -> bool:
    """Both arcs between every sample x and T(x) carry measure 1/2 +- tol."""
    if t.resolution != mu.resolution:
        raise ResolutionMismatch("map and density resolutions differ")
    n = t.resolution
    xs = np.arange(n) / n
    m1 = mu.arc_measure(xs, t.values)
    return bool(np.max(np.abs(m1 - 0.5)) <= tol)


def verify_invariance(t: SampledCircleMap, mu: SampledDensity,
                      tol: float) -> bool:
    """mu(T^{-1} A) = mu(A) +- tol over all sample-aligned arcs A.

    Crossing maps are involutions, so the preimage of the arc [a, b] is the
    arc [T(a), T(b)] (crossing maps preserve orientation where continuous).
    """
    if t.resolution != mu.resolution:
        raise ResolutionMismatch("map and density resolutions differ")
    n = t.resolution
    xs = np.arange(n) / n
    timg = t.values
    worst = 0.0
    for k in range(1, n):
        b = np.roll(xs, -k)
        tb = np.roll(timg, -k)
        direct = mu.arc_measure(xs, b)
        pulled = mu.arc_measure(timg, tb)
        worst = max(worst, float(np.max(np.abs(direct - pulled))))
        if worst > tol:
            return False
    return True


# ---------------------------------------------------------------------------
# named maps and file format


def antipodal_map(n: int) -> SampledCircleMap:
    return SampledCircleMap((np.arange(n) / n + 0.5) % 1.0)


def rotation_map(n: int, shift: float) -> SampledCircleMap:
    return SampledCircleMap((np.arange(n) / n + shift) % 1.0)


def mobius_involution(n: int, a: float = 0.3) -> SampledCircleMap:
    """Conjugate of the antipodal map by a Moebius disk automorphism.

    z -> (z - a) / (1 - a z) on the unit circle commutes the antipodal map
    into a smooth non-constant-derivative crossing involution.
    """
    if not -1 < a < 1:
        raise ValueError("parameter must satisfy |a| < 1")
    theta = 2 * np.pi * np.arange(n) / n
    z = np.exp(1j * theta)
    w = (z - a) / (1 - a * z)          # to the model circle
    w = -w                              # antipodal there
    back = (w + a) / (1 + a * w)        # and back
    return SampledCircleMap((np.angle(back) / (2 * np.pi)) % 1.0)


def step_map_from_crossing(cf) -> SampledCircleMap:
    """Embed a cycle crossing function as a step map sampled at the vertices.

    Vertex i of C_n sits at i/n and is sent to the midpoint of its image edge.
    """
    n = cf.cycle_length
    pos = {v: i for i, v in enumerate(cf.order)}
    vals = np.zeros(n)
    for v, e in cf.f.items():
        i, j = pos[e[0]], pos[e[1]]
        if (i + 1) % n == j:
            slot = i
        else:
            slot = j
        vals[pos[v]] = ((slot + 0.5) / n) % 1.0
    return SampledCircleMap(vals)


def format_circle(values) -> str:
    vals = np.asarray(values, dtype=float)
    lines = [f"circle {len(vals)}"]
    lines.extend(repr(float(v)) for v in vals)
    return "\n".join(lines) + "\n"


def parse_circle(text: str) -> np.ndarray:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows or not rows[0].startswith("circle"):
        raise FormatError("missing 'circle N' header")
    try:
        n = int(rows[0].split()[1])
        vals = np.array([float(ln) for ln in rows[1:]])
    except (IndexError, ValueError) as exc:
        raise FormatError("bad circle file") from exc
    if len(vals) != n:
        raise FormatError(f"expected {n} samples, found {len(vals)}")
    return vals
