"""Jittered point process and circle-map diagnostics.

Sample locations are ``x_n = n * lam + X_n`` with ``X_n`` uniform on
``[0, lam)``, drawn independently per index from the keyed generator in
:mod:`chirpspace.rng`, so any window ``-L..L`` is a prefix-consistent slice of
every larger window with the same seed.

The circle map sends a sample to the fractional part of its chirp phase in
cycles, ``y_n = (omega * x_n + rate * x_n**2) / (2 pi) mod 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chirp_model import PolynomialPhase
from .rng import TAG_DENSITY, TAG_JITTER, keyed_uniform

TWO_PI = 2.0 * np.pi
DEFAULT_BINS = 50


class InvalidProbeError(ValueError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class SamplingConfig:
    lam: float = 1.0
    seed: int = 0
    half_window: int = 0

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError("lam must be a positive finite number")
        if self.half_window < 0:
            raise ValueError("half_window must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True, eq=False)
class SampleSet:
    config: SamplingConfig
    indices: np.ndarray
    x: np.ndarray

    def __len__(self):
        return len(self.indices)

    @property
    def half_window(self) -> int:
        return (len(self.indices) - 1) // 2

    @property
    def jitter(self) -> np.ndarray:
        return self.x - self.indices * self.config.lam

    @property
    def points(self):
        return list(zip(self.indices.tolist(), self.x.tolist()))

    def window(self, half_window: int) -> "SampleSet":
        """Central sub-window ``-half_window..half_window``."""
        L = self.half_window
        if not 0 <= half_window <= L:
            raise ValueError(f"window {half_window} outside 0..{L}")
        sl = slice(L - half_window, L + half_window + 1)
        cfg = SamplingConfig(self.config.lam, self.config.seed, half_window)
        return SampleSet(cfg, self.indices[sl], self.x[sl])


def generate_samples(config: SamplingConfig, jitter=None) -> SampleSet:
    """Draw ``x_n = n * lam + X_n`` for ``n = -L..L``.

    ``jitter`` overrides the random fractions ``X_n / lam`` with fixed values
    in ``[0, 1)`` (scalar or one per index); it exists for degenerate test
    configurations such as midpoint sampling.
    """
    L = config.half_window
    n = np.arange(-L, L + 1, dtype=np.int64)
    if jitter is None:
        u = keyed_uniform(config.seed, TAG_JITTER, n)
    else:
        u = np.broadcast_to(np.asarray(jitter, dtype=float), n.shape)
        if np.any((u < 0) | (u >= 1)):
            raise ValueError("jitter fractions must lie in [0, 1)")
    lam = config.lam
    x = n * lam + u * lam
    # rounding can land exactly on the next cell's left edge
    hi = (n + 1) * lam
    x = np.where(x >= hi, np.nextafter(hi, -np.inf), x)
    return SampleSet(config, n, x)


def samples_from_points(indices, x, lam: float = 1.0, seed: int = 0) -> SampleSet:
    """Rebuild a SampleSet from stored ``(n, x)`` columns."""
    indices = np.asarray(indices, dtype=np.int64)
    x = np.asarray(x, dtype=float)
    L = (len(indices) - 1) // 2
    if len(indices) != 2 * L + 1 or np.any(indices != np.arange(-L, L + 1)):
        raise ValueError("indices must be exactly -L..L in order")
    low = indices * lam
    if np.any((x < low) | (x >= low + lam)):
        raise ValueError("sample locations outside their jitter cells")
    return SampleSet(SamplingConfig(lam, seed, L), indices, x)


# -- circle map -------------------------------------------------------------


def circle_points(phase_rad) -> np.ndarray:
    """Fractional part of a phase measured in turns, always in ``[0, 1)``."""
    y = np.mod(np.asarray(phase_rad, dtype=float) / TWO_PI, 1.0)
    return np.where(y >= 1.0, 0.0, y)


def wrap_threshold(omega: float, rate: float) -> float:
    """Index beyond which one jitter cell covers more than a full turn.

    ``n* = (2 pi - omega) / (2 rate) - 1/2`` for unit spacing and ``rate > 0``.
    """
    if not rate > 0:
        raise DomainError("wrap threshold is defined for rate > 0")
    return (TWO_PI - omega) / (2.0 * rate) - 0.5


def density_deviation_bound(omega: float, rate: float, n: int) -> float:
    """Largest possible deviation from uniformity at step ``n``.

    ``2 pi / sqrt(omega**2 + 4 rate (omega n + rate n**2))``, unit spacing.
    """
    radicand = omega * omega + 4.0 * rate * (omega * n + rate * n * n)
    if not radicand > 0:
        raise DomainError(f"non-positive radicand {radicand!r} at n={n}")
    return TWO_PI / math.sqrt(radicand)


@dataclass(frozen=True, eq=False)
class CircleDiagnostics:
    omega: float
    rate: float
    indices: np.ndarray
    orbit: np.ndarray
    wrap_threshold: float
    deviation_bounds: np.ndarray

    @property
    def wrapped(self) -> np.ndarray:
        return self.indices > self.wrap_threshold


def _unit_spacing_probe(omega: float, rate: float, lam: float):
    # x = lam * u with u the unit-spacing location; negative rates mirror y -> 1 - y
    w, c = omega * lam, rate * lam * lam
    if c < 0:
        w, c = -w, -c
    return w, c


def circle_orbit(samples: SampleSet, omega: float, rate: float) -> CircleDiagnostics:
    if omega == 0 and rate == 0:
        raise InvalidProbeError("probe (0, 0) has a constant orbit")
    x = samples.x
    orbit = circle_points(omega * x + rate * x * x)
    w, c = _unit_spacing_probe(omega, rate, samples.config.lam)
    n = samples.indices.astype(float)
    if c > 0:
        n_star = wrap_threshold(w, c)
    else:
        n_star = -math.inf if abs(w) >= TWO_PI else math.inf
    radicand = w * w + 4.0 * c * (w * n + c * n * n)
    with np.errstate(divide="ignore"):
        bounds = np.where(radicand > 0, TWO_PI / np.sqrt(np.maximum(radicand, 0.0)), np.inf)
    return CircleDiagnostics(omega, rate, samples.indices, orbit, n_star, bounds)


# -- density of the wrapped phase on one jitter cell ------------------------


@dataclass(frozen=True)
class DensityDeviation:
    """Sup-deviation from 1 of the circle density of one jitter cell."""

    value: float
    trials: int
    bins: int
    bin_error: float
    method: str


def _shifted_coefficients(phase: PolynomialPhase, a: float, width: float) -> np.ndarray:
    """Coefficients of ``u -> p(a + width * u)``."""
    p = np.polynomial.Polynomial(phase.coefficients)
    return p(np.polynomial.Polynomial([a, width])).coef


def _invert_increment(q: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Solve ``q(u) - q(0) = target`` on ``[0, 1]`` for increasing ``q``."""
    rise_poly = np.polynomial.Polynomial(np.concatenate(([0.0], q[1:])))
    dq = rise_poly.deriv()
    lo = np.zeros_like(targets)
    hi = np.ones_like(targets)
    u = np.clip(targets / rise_poly(1.0), 0.0, 1.0)
    for _ in range(60):
        f = rise_poly(u) - targets
        lo = np.where(f < 0, u, lo)
        hi = np.where(f >= 0, u, hi)
        u_new = u - f / dq(u)
        bad = (u_new <= lo) | (u_new >= hi) | ~np.isfinite(u_new)
        u_new = np.where(bad, 0.5 * (lo + hi), u_new)
        done = np.max(np.abs(u_new - u)) <= 4e-16
        u = u_new
        if done:
            break
    return u


def _turns(q: np.ndarray, u: float) -> tuple[float, float]:
    """Fractional start turn and turns advanced from ``u = 0`` to ``u``."""
    t0 = q[0] / TWO_PI
    rise = float(np.polynomial.Polynomial(np.concatenate(([0.0], q[1:])))(u)) / TWO_PI
    return t0 - math.floor(t0), rise


def _oriented_phase(phase: PolynomialPhase, a: float, width: float) -> np.ndarray:
    q = _shifted_coefficients(phase, a, width)
    grid = np.linspace(0.0, 1.0, 1001)
    dq = np.polynomial.Polynomial(q).deriv()(grid)
    if np.all(dq > 0):
        return q
    if np.all(dq < 0):
        return -q
    raise DomainError("phase is not monotone on the cell")


def _expected_direct(q: np.ndarray, bins: int) -> np.ndarray:
    """Exact bin masses by cutting the cell at every bin-edge crossing."""
    frac0, rise = _turns(q, 1.0)
    # crossing levels measured in bin widths from the start of the start turn
    first = math.floor(frac0 * bins) + 1
    last = math.floor((frac0 + rise) * bins)
    levels = np.arange(first, last + 1, dtype=np.int64)
    d = levels / bins - frac0
    keep = (d > 0) & (d < rise)
    levels, d = levels[keep], d[keep]
    cuts = _invert_increment(q, TWO_PI * d)
    lengths = np.diff(np.concatenate(([0.0], cuts, [1.0])))
    labels = np.concatenate(([math.floor(frac0 * bins) % bins], levels % bins))
    return np.bincount(labels, weights=lengths, minlength=bins)


def _bernoulli_periodic(k: int, s):
    s = np.mod(s, 1.0)
    if k == 1:
        return s - 0.5
    if k == 2:
        return (s * s - s + 1.0 / 6.0) / 2.0
    if k == 3:
        return (s**3 - 1.5 * s * s + 0.5 * s) / 6.0
    if k == 4:
        return (s**4 - 2.0 * s**3 + s * s - 1.0 / 30.0) / 24.0
    raise ValueError(k)


def _expected_series(q: np.ndarray, bins: int) -> np.ndarray:
    """Bin masses from repeated integration by parts in the turn variable.

    With ``t = q(u) / 2 pi`` and ``G = du/dt``, the mass excess of bin
    ``[a, b)`` is ``int psi(t) G(t) dt`` where ``psi`` is the zero-mean bin
    indicator. Its periodic antiderivatives are differences of periodic
    Bernoulli functions, so the integral reduces to endpoint terms in
    ``G, G', G''`` with a remainder of order ``G'''``, negligible once the
    cell covers many turns.
    """
    p = np.polynomial.Polynomial(q)
    d1, d2, d3 = p.deriv(1), p.deriv(2), p.deriv(3)
    a = np.arange(bins) / bins
    b = a + 1.0 / bins
    excess = np.zeros(bins)
    frac0, _ = _turns(q, 0.0)
    for u, sign in ((1.0, 1.0), (0.0, -1.0)):
        _, rise = _turns(q, u)
        p1, p2, p3 = d1(u), d2(u), d3(u)
        g = (TWO_PI / p1, -(TWO_PI**2) * p2 / p1**3, -(TWO_PI**3) * (p3 * p1 - 3.0 * p2 * p2) / p1**5)
        frac = frac0 + rise
        for r in (1, 2, 3):
            psi_r = _bernoulli_periodic(r + 1, frac - b) - _bernoulli_periodic(r + 1, frac - a)
            excess += sign * (-1.0) ** (r - 1) * psi_r * g[r - 1]
    return 1.0 / bins + excess


def expected_bin_masses(phase: PolynomialPhase, cell_start: float, cell_width: float = 1.0,
                        bins: int = DEFAULT_BINS, method: str = "auto") -> np.ndarray:
    """Exact probability of each circle bin for ``x`` uniform on one cell.

    ``method="direct"`` locates every bin-edge crossing; ``"series"`` uses
    the endpoint expansion, whose cost does not grow with the number of turns.
    ``"auto"`` picks direct while the crossing count stays below ``2e6``.
    """
    q = _oriented_phase(phase, cell_start, cell_width)
    if method == "auto":
        turns = _turns(q, 1.0)[1]
        method = "direct" if turns * bins <= 2e6 else "series"
    if method == "direct":
        return _expected_direct(q, bins)
    if method == "series":
        return _expected_series(q, bins)
    raise ValueError(f"unknown method {method!r}")


def wrapped_density_deviation(phase: PolynomialPhase, n: int, lam: float = 1.0, trials: int = 100_000,
                              seed: int = 0, bins: int = DEFAULT_BINS,
                              method: str = "monte_carlo") -> DensityDeviation:
    """Sup over bins of ``|density - 1|`` for ``y = p(x) / 2 pi mod 1``.

    ``x`` is uniform on the jitter cell ``[n lam, (n + 1) lam)``. The default
    Monte Carlo estimate draws ``trials`` fresh jitters and histograms them;
    its per-bin standard error is ``sqrt(bins / trials)``. ``method="expected"``
    returns the infinite-trial limit of the same histogram.
    """
    if method == "expected":
        masses = expected_bin_masses(phase, n * lam, lam, bins)
        return DensityDeviation(float(np.max(np.abs(masses * bins - 1.0))), 0, bins, 0.0, "expected")
    if method != "monte_carlo":
        raise ValueError(f"unknown method {method!r}")
    counts = np.zeros(bins, dtype=np.int64)
    chunk = 1 << 20
    for start in range(0, trials, chunk):
        idx = np.arange(start, min(trials, start + chunk), dtype=np.int64)
        u = keyed_uniform(seed, TAG_DENSITY, n, idx)
        x = n * lam + u * lam
        y = circle_points(phase(x))
        counts += np.bincount(np.minimum((y * bins).astype(np.int64), bins - 1), minlength=bins)
    density = counts * bins / trials
    return DensityDeviation(float(np.max(np.abs(density - 1.0))), trials, bins,
                            math.sqrt(bins / trials), "monte_carlo")


def empirical_density_deviation(omega: float, rate: float, n: int, trials: int = 100_000, seed: int = 0,
                                lam: float = 1.0, bins: int = DEFAULT_BINS,
                                method: str = "monte_carlo") -> DensityDeviation:
    if method == "monte_carlo" and trials < 10_000:
        raise ValueError("need at least 1e4 trials")
    if omega == 0 and rate == 0:
        raise InvalidProbeError("probe (0, 0) has a constant orbit")
    phase = PolynomialPhase((0.0, omega, rate)) if rate != 0 else PolynomialPhase((0.0, omega))
    return wrapped_density_deviation(phase, n, lam, trials, seed, bins, method)
