"""Quadratic Chernoff bounds for averages of the wrapped circle process.

For independent ``Y_n`` with means ``mu_n`` and ``ln E exp(xi Y_n) <= mu_n xi + C xi**2``,
the normalized cumulant bound ``Phi_N(xi) = m_N xi + (C / N) xi**2`` has
Legendre transform ``I_N(y) = N (m_N - y)**2 / (4 C)`` and

    Pr(S_N / N > y) <= exp(-I_N(y))   for y > m_N.

At ``b_N = sqrt(8 C ln N / N)`` the bound equals ``N**-2``, which is summable.
``C = 1/2`` holds for any variable bounded in ``[-1, 1]`` (Hoeffding's lemma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import TAG_MGF, TAG_TAIL, keyed_uniform

DEFAULT_C = 0.5


@dataclass(frozen=True)
class RateFunctionModel:
    N: int
    C: float = DEFAULT_C
    m_N: float = 0.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if not self.C > 0:
            raise ValueError("C must be > 0")

    def phi(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self.m_N * xi + (self.C / self.N) * xi * xi


@dataclass(frozen=True)
class TailBound:
    value: float
    tail: str
    vacuous: bool


@dataclass(frozen=True)
class MonteCarloTailSpec:
    omega: float = 1.0
    rate: float = 0.3
    index_offset: int = 1
    N: int = 10
    threshold_y: float = 0.0
    trials: int = 100_000
    seed: int = 0
    lam: float = 1.0
    variant: str = "circle"
    trial_offset: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.variant not in ("circle", "indexed"):
            raise ValueError("variant must be 'circle' or 'indexed'")


@dataclass(frozen=True)
class TailEstimate:
    empirical_prob: float
    std_error: float
    m_N_hat: float


def log_mgf_bound(mu_n: float, C: float, xi):
    """``mu_n xi + C xi**2``, the assumed bound on ``ln E exp(xi Y_n)``."""
    if not C > 0:
        raise ValueError("C must be > 0")
    xi = np.asarray(xi, dtype=float)
    out = mu_n * xi + C * xi * xi
    return float(out) if out.ndim == 0 else out


def rate_function(model: RateFunctionModel, y):
    y = np.asarray(y, dtype=float)
    out = model.N / (4.0 * model.C) * (model.m_N - y) ** 2
    return float(out) if out.ndim == 0 else out


def chernoff_tail_bound(model: RateFunctionModel, y: float, tail: str = "upper") -> TailBound:
    """Bound on ``Pr(S_N/N > y)`` (``tail="upper"``) or ``Pr(S_N/N < y)``.

    On the wrong side of the mean the bound is vacuous and 1 is returned
    with ``vacuous=True``.
    """
    if tail not in ("upper", "lower"):
        raise ValueError("tail must be 'upper' or 'lower'")
    informative = y > model.m_N if tail == "upper" else y < model.m_N
    if not informative:
        return TailBound(1.0, tail, True)
    return TailBound(math.exp(-rate_function(model, y)), tail, False)


def deviation_threshold(N: int, C: float = DEFAULT_C) -> float:
    """``b_N = sqrt(8 C ln N / N)``; the tail bound at ``m_N + b_N`` is ``N**-2``."""
    if N < 2:
        raise ValueError("deviation threshold needs N >= 2")
    if not C > 0:
        raise ValueError("C must be > 0")
    return math.sqrt(8.0 * C * math.log(N) / N)


def summable_partial_sums(N_max: int) -> np.ndarray:
    """Running sums of the ``N**-2`` tail bounds for ``N = 2..N_max``."""
    N = np.arange(2, N_max + 1, dtype=float)
    return np.cumsum(1.0 / (N * N))


def circle_variables(spec: MonteCarloTailSpec, trial_index: np.ndarray) -> np.ndarray:
    """``Y_n`` for the given trials, shape ``(len(trial_index), N)``.

    ``variant="circle"`` uses ``sin(2 pi y_n)`` with ``y_n`` the wrapped chirp
    phase at the probe; ``"indexed"`` uses ``sin(2 pi n X_n)`` with ``X_n``
    the unit-cell jitter.
    """
    n = spec.index_offset + np.arange(spec.N, dtype=np.int64)
    u = keyed_uniform(spec.seed, TAG_TAIL, trial_index[:, None], n[None, :])
    if spec.variant == "indexed":
        return np.sin(2.0 * np.pi * n[None, :] * u)
    x = (n[None, :] + u) * spec.lam
    return np.sin(spec.omega * x + spec.rate * x * x)


def monte_carlo_tail(spec: MonteCarloTailSpec, chunk: int = 1 << 16) -> TailEstimate:
    hits = 0
    means_all = []
    for start in range(0, spec.trials, chunk):
        idx = spec.trial_offset + np.arange(start, min(spec.trials, start + chunk), dtype=np.int64)
        means = circle_variables(spec, idx).mean(axis=1)
        hits += int(np.count_nonzero(means > spec.threshold_y))
        means_all.append(means)
    p = hits / spec.trials
    m_hat = math.fsum(np.concatenate(means_all)) / spec.trials
    return TailEstimate(p, math.sqrt(p * (1.0 - p) / spec.trials), m_hat)


def empirical_log_mgf(samples: np.ndarray, xi) -> tuple[np.ndarray, np.ndarray]:
    """Sample ``ln E exp(xi Y)`` and its delta-method standard error."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    e = np.exp(np.outer(xi, samples))
    m = e.mean(axis=1)
    se = e.std(axis=1, ddof=1) / math.sqrt(samples.size) / m
    return np.log(m), se


def jitter_sine_samples(count: int, seed: int = 0, omega: float = 2 * np.pi, rate: float = 0.0,
                        n: int = 0) -> np.ndarray:
    """Draws of ``sin(omega x + rate x**2)`` with ``x`` uniform on ``[n, n + 1)``."""
    u = keyed_uniform(seed, TAG_MGF, n, np.arange(count, dtype=np.int64))
    x = n + u
    return np.sin(omega * x + rate * x * x)
