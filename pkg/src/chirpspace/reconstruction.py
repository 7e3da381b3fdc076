"""Chirp-space reconstruction by detection and deflation.

Each pass evaluates the correlator grid on the current residual, takes the
strongest cell, sharpens it, reads the amplitude off the matched correlator
and subtracts that component from the samples. The loop stops once the
residual grid peak is at most ``epsilon``.

``epsilon`` lives on the correlator scale: it bounds the largest residual
average ``|A_L|`` over the probe grid, not the sup-norm distance between
the signal and its approximation.

Full-window grids are out of reach at realistic ``L`` (the cell count grows
like ``L**3``), so detection runs on the central ``detect_window`` samples
where lobes are wide. Refinement then follows the peak while the window
doubles up to the full ``half_window``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .chirp_model import DEFAULT_MERGE_TOL, CanonicalChirp
from .correlator import (Axis, CorrelatorGrid, ProbePoint, _aligned, chirp_correlator, default_axes,
                         evaluate_grid)
from .sampling import SampleSet


class NumericalError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DetectionConfig:
    omega_range: tuple[float, float]
    rate_range: tuple[float, float]
    half_window: int
    epsilon: float
    max_components: int = 10
    refine_tol: float = 1e-3
    detect_window: int | None = None
    grid_method: str = "fast"

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if self.max_components < 1:
            raise ValueError("max_components must be >= 1")
        if not (self.omega_range[1] > self.omega_range[0] and self.rate_range[1] > self.rate_range[0]):
            raise ValueError("detection ranges must be non-degenerate")
        if not 0 < self.refine_tol < 1:
            raise ValueError("refine_tol must lie in (0, 1)")

    @property
    def detection_window(self) -> int:
        return min(self.half_window, self.detect_window or 100)


@dataclass(frozen=True)
class GridSpec:
    omega_axis: Axis
    rate_axis: Axis
    half_window: int | None = None
    method: str = "fast"

    @classmethod
    def from_ranges(cls, omega_range, rate_range, half_window: int, lam: float = 1.0,
                    method: str = "fast") -> "GridSpec":
        w_axis, c_axis = default_axes(omega_range, rate_range, half_window, lam)
        return cls(w_axis, c_axis, half_window, method)

    def evaluate(self, values, samples: SampleSet) -> CorrelatorGrid:
        values = _aligned(values, samples)
        if self.half_window is not None and self.half_window < samples.half_window:
            L = samples.half_window
            values = values[L - self.half_window:L + self.half_window + 1]
            samples = samples.window(self.half_window)
        return evaluate_grid(values, samples, self.omega_axis, self.rate_axis, method=self.method)


@dataclass(frozen=True)
class ReconstructionReport:
    components: tuple[CanonicalChirp, ...]
    residual_peak: float
    epsilon: float
    iterations: int
    converged: bool
    residual_history: tuple[float, ...] = field(default=())


def detect_peak(grid: CorrelatorGrid) -> tuple[ProbePoint, float]:
    mag = grid.magnitude
    # argmax over the C-ordered (omega, rate) array returns the lowest index pair on ties
    flat = int(np.argmax(mag))
    i, j = np.unravel_index(flat, mag.shape)
    return grid.probe(int(i), int(j)), float(mag[i, j])


def _cell(half_window: int, lam: float) -> tuple[float, float]:
    x_max = (half_window + 1) * lam
    return math.pi / (2 * x_max), math.pi / (2 * x_max * x_max)


def _coordinate_ascent(objective, start: ProbePoint, cells, tol_frac: float, max_sweeps: int = 6):
    best = start
    best_val = objective(best.omega, best.rate)
    if not math.isfinite(best_val):
        raise NumericalError("non-finite correlator objective")
    span = 2.0
    for _ in range(max_sweeps):
        moved = False
        for axis in (0, 1):
            h = span * cells[axis]
            centre = best.omega if axis == 0 else best.rate

            def f(v, axis=axis):
                w, c = (v, best.rate) if axis == 0 else (best.omega, v)
                return -objective(w, c)

            res = minimize_scalar(f, bounds=(centre - h, centre + h), method="bounded",
                                  options={"xatol": tol_frac * cells[axis]})
            val = -res.fun
            if not math.isfinite(val):
                raise NumericalError("non-finite correlator objective")
            # strict improvement only; a matched probe is already a global maximum
            if val > best_val * (1.0 + 1e-13) + 1e-300:
                best = ProbePoint(res.x, best.rate) if axis == 0 else ProbePoint(best.omega, res.x)
                best_val = val
                moved = True
        if not moved:
            break
        span = max(span / 2.0, 4.0 * tol_frac)
    return best


def refine_peak(values, samples: SampleSet, initial: ProbePoint, refine_tol: float = 1e-3,
                start_window: int | None = None) -> ProbePoint:
    """Sharpen a grid peak by coordinate ascent on ``|A_L(omega, c)|``.

    The search starts on the central ``start_window`` samples (the whole set
    if omitted) and repeats on windows doubling up to the full set. Each
    coordinate is maximised over a bracket of two cells either side, where a
    cell is the default grid step for the current window. The final stage
    locates the peak to ``refine_tol`` of its cell, which never exceeds the
    cell of the starting window.
    """
    values = _aligned(values, samples)
    L = samples.half_window
    lam = samples.config.lam
    w = L if start_window is None else min(max(start_window, 1), L)
    probe = initial
    while True:
        sub = samples.window(w)
        sub_vals = values[L - w:L + w + 1]

        def objective(omega, rate, sub=sub, sub_vals=sub_vals):
            return abs(chirp_correlator(sub_vals, sub, ProbePoint(omega, rate)))

        tol = refine_tol if w == L else min(0.05, 10 * refine_tol)
        probe = _coordinate_ascent(objective, probe, _cell(w, lam), tol)
        if w == L:
            return probe
        w = min(2 * w, L)


def estimate_amplitude(values, samples: SampleSet, probe: ProbePoint) -> complex:
    return chirp_correlator(values, samples, probe)


def deflate(values, component: CanonicalChirp, samples: SampleSet) -> np.ndarray:
    values = _aligned(values, samples)
    return values - component(samples.x)


def _merge_in_order(components, merge_tol=DEFAULT_MERGE_TOL):
    merged: list[list] = []
    for ch in components:
        for g in merged:
            if abs(g[1] - ch.omega0) < merge_tol and abs(g[2] - ch.rate) < merge_tol:
                g[0] += ch.amplitude
                break
        else:
            merged.append([ch.amplitude, ch.omega0, ch.rate])
    return tuple(CanonicalChirp(a, w, c) for a, w, c in merged if a != 0)


def reconstruct(values, samples: SampleSet, config: DetectionConfig) -> ReconstructionReport:
    values = _aligned(values, samples)
    if config.half_window != samples.half_window:
        raise ValueError(f"config half_window {config.half_window} != samples {samples.half_window}")
    lam = samples.config.lam
    spec = GridSpec.from_ranges(config.omega_range, config.rate_range, config.detection_window, lam,
                                config.grid_method)
    residual = values.copy()
    components: list[CanonicalChirp] = []
    history: list[float] = []
    while True:
        grid = spec.evaluate(residual, samples)
        start, peak = detect_peak(grid)
        history.append(peak)
        if peak <= config.epsilon or len(components) >= config.max_components:
            break
        probe = refine_peak(residual, samples, start, config.refine_tol, start_window=config.detection_window)
        comp = CanonicalChirp(estimate_amplitude(residual, samples, probe), probe.omega, probe.rate)
        residual = deflate(residual, comp, samples)
        components.append(comp)
    return ReconstructionReport(
        components=_merge_in_order(components),
        residual_peak=history[-1],
        epsilon=config.epsilon,
        iterations=len(components),
        converged=history[-1] <= config.epsilon,
        residual_history=tuple(history),
    )


def zero_test(values, samples: SampleSet, grid_spec: GridSpec, epsilon: float) -> bool:
    """Declare ``f == 0`` at level ``epsilon`` when no grid probe exceeds it."""
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")
    return bool(np.max(grid_spec.evaluate(values, samples).magnitude) <= epsilon)
