"""Polynomial-phase correlator and circle-density decay for nonlinear chirps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chirp_model import PolynomialPhase, monotonicity_threshold
from .correlator import _aligned, compensated_mean
from .sampling import DEFAULT_BINS, TWO_PI, DomainError, SampleSet, wrapped_density_deviation


@dataclass(frozen=True)
class PolynomialProbe:
    phase: PolynomialPhase
    half_window: int | None = None


@dataclass(frozen=True)
class NonlinearDeviation:
    n: int
    empirical: float
    bound: float
    nlc_bound: float
    printed_bound: float
    bin_error: float
    trials: int
    method: str


def polynomial_correlator(values, samples: SampleSet, probe: PolynomialProbe) -> complex:
    """``1/(2L+1) * sum exp(-i q(x_n)) f(x_n)`` for probe phase ``q``."""
    values = _aligned(values, samples)
    if probe.half_window is not None and probe.half_window < samples.half_window:
        L = samples.half_window
        values = values[L - probe.half_window:L + probe.half_window + 1]
        samples = samples.window(probe.half_window)
    return compensated_mean(np.exp(-1j * probe.phase(samples.x)) * values)


def _min_abs_derivative(phase: PolynomialPhase, n: int) -> float:
    dp = np.polynomial.Polynomial(phase.derivative())
    grid = np.linspace(n, n + 1, 1001)
    vals = dp(grid)
    if not (np.all(vals > 0) or np.all(vals < 0)):
        raise DomainError(f"phase is not monotone on [{n}, {n + 1}]")
    crit = [r.real for r in dp.deriv().roots() if abs(r.imag) < 1e-12 and n <= r.real <= n + 1]
    return float(min(np.abs(dp(np.array([n, n + 1] + crit)))))


def nonlinear_density_deviation(phase: PolynomialPhase, n: int, trials: int = 100_000, seed: int = 0,
                                bins: int = DEFAULT_BINS, method: str = "monte_carlo") -> NonlinearDeviation:
    """Wrapped-density deviation on ``[n, n+1]`` next to its analytic bounds.

    ``bound`` is ``2 pi / min |p'|`` on the cell, the largest density a single
    monotone sweep contributes in turns. ``nlc_bound`` replaces ``min |p'|`` by
    ``(|c| m / 2) min|x|**(m-1)``. ``printed_bound`` is ``2 m |c| / n**(m-1)``,
    kept for comparison only.
    """
    if phase.degree < 2:
        raise DomainError("need degree >= 2")
    if method == "monte_carlo" and trials < 10_000:
        raise ValueError("need at least 1e4 trials")
    threshold = monotonicity_threshold(phase)
    if not min(abs(n), abs(n + 1)) > threshold:
        raise DomainError(f"cell [{n}, {n + 1}] is not beyond the monotonicity threshold {threshold:.6g}")
    m, c = phase.degree, abs(phase.leading)
    bound = TWO_PI / _min_abs_derivative(phase, n)
    x_min = min(abs(n), abs(n + 1))
    nlc = 2.0 * TWO_PI / (c * m * x_min ** (m - 1))
    printed = 2.0 * m * c / abs(n) ** (m - 1)
    dev = wrapped_density_deviation(phase, n, 1.0, trials, seed, bins, method)
    return NonlinearDeviation(n, dev.value, bound, nlc, printed, dev.bin_error, dev.trials, dev.method)


def loglog_slope(n_list: Sequence[float], values: Sequence[float]) -> float:
    slope, _ = np.polyfit(np.log(np.asarray(n_list, float)), np.log(np.asarray(values, float)), 1)
    return float(slope)


def deviation_decay(phase: PolynomialPhase, n_list: Sequence[int], method: str = "expected",
                    trials: int = 100_000, seed: int = 0) -> tuple[list[NonlinearDeviation], float]:
    rows = [nonlinear_density_deviation(phase, n, trials, seed, method=method) for n in n_list]
    return rows, loglog_slope(n_list, [r.empirical for r in rows])


def expected_decay_exponent(phase: PolynomialPhase) -> float:
    return -(phase.degree - 1.0)


def slope_ok(slope: float, phase: PolynomialPhase, tol: float = 0.3) -> bool:
    return math.isfinite(slope) and abs(slope - expected_decay_exponent(phase)) <= tol
