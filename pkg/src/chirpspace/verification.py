"""Verification harnesses producing JSON-ready pass/fail reports."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .chirp_model import PolynomialPhase
from .correlator import ProbePoint, decay_curve, envelope
from .frft import SampledFunction, frft
from .large_deviation import (DEFAULT_C, MonteCarloTailSpec, RateFunctionModel, chernoff_tail_bound,
                              deviation_threshold, monte_carlo_tail)
from .nonlinear import deviation_decay, expected_decay_exponent, slope_ok


def verify_theorem3(omega: float = 1.0, rate: float = 0.3, lam: float = 1.0,
                    L_list: Sequence[int] = (100, 1000, 10000), seeds: Sequence[int] = range(50),
                    target: float = 0.05, C: float = DEFAULT_C) -> dict:
    """Decay of the ergodic average against the large-deviation envelope.

    Passes when the seed-averaged ``|average|`` strictly decreases in ``L``,
    ends at or below ``target`` and stays under ``2 * envelope(L, C)``.
    Probes with ``omega == 0`` lie outside the proven regime and always fail.
    """
    probe = ProbePoint(omega, rate)
    curve = decay_curve(probe, lam, L_list, list(seeds))
    means = curve.mean_abs
    env = [envelope(L, C) for L in curve.half_windows]
    decreasing = all(b < a for a, b in zip(means, means[1:]))
    final_ok = means[-1] <= target
    envelope_ok = all(m <= 2 * e for m, e in zip(means, env))
    return {
        "omega": omega, "rate": rate, "lambda": lam, "C": C,
        "in_regime": probe.in_proven_regime,
        "L": list(curve.half_windows), "mean_abs": means, "envelope": env,
        "seeds_used": len(list(seeds)), "target": target,
        "decreasing": decreasing, "final_ok": final_ok, "envelope_ok": envelope_ok,
        "pass": bool(probe.in_proven_regime and decreasing and final_ok and envelope_ok),
    }


def verify_ld(N: int = 10, C: float = DEFAULT_C, omega: float = 1.0, rate: float = 0.3,
              trials: int = 100_000, seed: int = 0, threshold_y: float | None = None,
              index_offset: int = 1, variant: str = "circle", sigmas: float = 3.0) -> dict:
    """Monte Carlo tail of ``S_N / N`` against the quadratic Chernoff bound.

    The mean ``m_N`` is estimated by a pilot run on trial indices disjoint
    from the main run. Without an explicit ``threshold_y`` the threshold is
    ``m_N + b_N``, where the bound equals ``N**-2``.
    """
    spec = MonteCarloTailSpec(omega, rate, index_offset, N, 0.0, trials, seed, variant=variant)
    pilot = monte_carlo_tail(MonteCarloTailSpec(omega, rate, index_offset, N, math.inf, trials, seed,
                                                variant=variant, trial_offset=trials))
    m_hat = pilot.m_N_hat
    b_N = deviation_threshold(N, C)
    y = m_hat + b_N if threshold_y is None else threshold_y
    model = RateFunctionModel(N, C, m_hat)
    tail = "upper" if y >= m_hat else "lower"
    bound = chernoff_tail_bound(model, y, tail)
    run = monte_carlo_tail(MonteCarloTailSpec(omega, rate, index_offset, N, y, trials, seed, variant=variant))
    empirical = run.empirical_prob if tail == "upper" else 1.0 - run.empirical_prob
    return {
        "N": N, "C": C, "m_N_hat": m_hat, "b_N": b_N, "threshold_y": y, "tail": tail,
        "bound": bound.value, "vacuous": bound.vacuous,
        "empirical": empirical, "std_error": run.std_error,
        "trials": spec.trials, "variant": variant,
        "pass": bool(empirical <= bound.value + sigmas * run.std_error),
    }


def verify_nonlinear(coefficients: Sequence[float] = (0.0, 0.0, 0.0, 1.0),
                     n_list: Sequence[int] = (10, 30, 100, 300), method: str = "expected",
                     trials: int = 100_000, seed: int = 0, slope_tol: float = 0.3) -> dict:
    """Log-log decay of the circle-density deviation for ``e^{i p(x)}``."""
    phase = PolynomialPhase(tuple(coefficients))
    rows, slope = deviation_decay(phase, list(n_list), method, trials, seed)
    within = all(r.empirical <= r.bound + 3 * r.bin_error for r in rows)
    return {
        "m": phase.degree, "c": phase.leading, "n_list": list(n_list),
        "empirical": [r.empirical for r in rows], "bound": [r.bound for r in rows],
        "nlc_bound": [r.nlc_bound for r in rows], "printed_bound": [r.printed_bound for r in rows],
        "method": method, "slope": slope, "expected_slope": expected_decay_exponent(phase),
        "within_bound": within,
        "pass": bool(slope_ok(slope, phase, slope_tol) and within),
    }


def verify_frft(order: float = 0.5, start: float = -10.0, stop: float = 10.0, step: float = 0.01,
                tol: float = 1e-3) -> dict:
    """Gaussian round trip ``F_{-b} F_b f`` and half-order composition."""
    f = SampledFunction.from_function(lambda t: np.exp(-t * t / 2), start, stop, step)
    fwd = frft(f, order)
    back = frft(fwd, -order)
    twice = frft(fwd, order)
    once = frft(f, 2 * order) if (2 * order) % 2 else None
    roundtrip = float(np.max(np.abs(back.values - f.values)))
    composition = float(np.max(np.abs(twice.values - once.values))) if once is not None else None
    ok = roundtrip <= tol and (composition is None or composition <= tol)
    return {"order": order, "grid": [start, stop, step], "roundtrip_error": roundtrip,
            "composition_error": composition, "tolerance": tol, "pass": bool(ok)}
