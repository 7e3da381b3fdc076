"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary lines are
collected by ``conftest.py`` and printed at the end of the session.
"""

import math
import time

import numpy as np
import pytest

from chirpspace.chirp_model import CanonicalChirp, PolynomialPhase, evaluate_canonical
from chirpspace.correlator import ProbePoint, chirp_correlator
from chirpspace.frft import SampledFunction, frft
from chirpspace.large_deviation import RateFunctionModel, chernoff_tail_bound, deviation_threshold, rate_function
from chirpspace.nonlinear import PolynomialProbe, polynomial_correlator
from chirpspace.reconstruction import DetectionConfig, GridSpec, reconstruct, zero_test
from chirpspace.sampling import SamplingConfig, generate_samples
from chirpspace.verification import verify_ld, verify_nonlinear, verify_theorem3

RESULTS: dict[int, str] = {}

TRUTH = [CanonicalChirp(1.0, 4.2, 0.05), CanonicalChirp(0.7, 11.9, -0.12), CanonicalChirp(0.4, 19.5, 0.3)]
RECON = DetectionConfig((0.0, 25.0), (-0.4, 0.4), 5000, 0.05)


def record(n: int, ok: bool, detail: str, elapsed: float, limit: float | None = None):
    timed = limit is None or elapsed < limit
    status = "PASS" if ok and timed else "FAIL"
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    RESULTS[n] = f"criterion {n}: {status}  {detail}  [{elapsed:.2f} s{budget}]"
    print(RESULTS[n])
    assert ok, RESULTS[n]
    assert timed, RESULTS[n]


def test_criterion_1_matched_exactness():
    t0 = time.perf_counter()
    errs = []
    B = 0.9 * np.exp(0.4j)
    for L in (1, 10, 1000):
        s = generate_samples(SamplingConfig(1.0, L, L))
        f = B * np.exp(1j * (3.1 * s.x - 0.27 * s.x ** 2))
        errs.append(abs(chirp_correlator(f, s, ProbePoint(3.1, -0.27)) - B))
    worst = max(errs)
    record(1, worst <= 1e-12, f"max |A_L - B| = {worst:.2e} (tol 1e-12)", time.perf_counter() - t0, 1.0)


def test_criterion_2_ergodic_average_decay():
    t0 = time.perf_counter()
    rep = verify_theorem3(1.0, 0.3, 1.0, (100, 1000, 10000), range(50), 0.05, 0.5)
    means = ", ".join(f"{m:.4f}" for m in rep["mean_abs"])
    envs = ", ".join(f"{2 * e:.4f}" for e in rep["envelope"])
    record(2, rep["pass"], f"mean |avg| = [{means}] vs 2*envelope [{envs}]", time.perf_counter() - t0, 60.0)


def test_criterion_3_large_deviation_identities():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20261014)
    xi = np.linspace(0.0, 1e3, 1_000_001)
    worst_sup = 0.0
    for _ in range(100):
        model = RateFunctionModel(int(rng.integers(1, 100)), float(rng.uniform(0.1, 2.0)), float(rng.uniform(-1, 1)))
        y = model.m_N + float(rng.uniform(0.0, 1.0))
        numeric = float(np.max(y * xi - model.phi(xi)))
        worst_sup = max(worst_sup, abs(numeric - rate_function(model, y)))
    worst_rel = 0.0
    for N in (10, 100, 10_000):
        b = deviation_threshold(N, 0.5)
        bound = chernoff_tail_bound(RateFunctionModel(N, 0.5, 0.0), b).value
        worst_rel = max(worst_rel, abs(bound * N * N - 1.0))
    ok = worst_sup <= 1e-6 and worst_rel <= 1e-12
    record(3, ok, f"Legendre sup err {worst_sup:.1e} (tol 1e-6), N^-2 rel err {worst_rel:.1e} (tol 1e-12)",
           time.perf_counter() - t0, 10.0)


def test_criterion_4_tail_dominance():
    t0 = time.perf_counter()
    rep = verify_ld(N=10, C=0.5, omega=1.0, rate=0.3, trials=100_000, seed=0)
    ok = rep["pass"] and rep["bound"] == pytest.approx(0.01, rel=1e-12)
    record(4, ok, f"empirical {rep['empirical']:.5f} <= {rep['bound']:.4f} + 3*{rep['std_error']:.5f} "
                  f"(m_hat {rep['m_N_hat']:.4f}, b_10 {rep['b_N']:.4f})", time.perf_counter() - t0, 60.0)


@pytest.fixture(scope="module")
def sub_nyquist():
    s = generate_samples(SamplingConfig(1.0, 0, RECON.half_window))
    h = evaluate_canonical(TRUTH, s.x)
    t0 = time.perf_counter()
    rep = reconstruct(h, s, RECON)
    return s, h, rep, time.perf_counter() - t0


def test_criterion_5_sub_nyquist_reconstruction(sub_nyquist):
    _, _, rep, elapsed = sub_nyquist
    worst = [0.0, 0.0, 0.0]
    matched = len(rep.components) == 3
    for t in TRUTH:
        best = min(rep.components, key=lambda c: abs(c.omega0 - t.omega0) + 1e3 * abs(c.rate - t.rate))
        errs = (abs(best.omega0 - t.omega0), abs(best.rate - t.rate), abs(best.amplitude - t.amplitude) / abs(t.amplitude))
        worst = [max(a, b) for a, b in zip(worst, errs)]
    ok = rep.converged and matched and worst[0] <= 1e-3 and worst[1] <= 1e-6 and worst[2] <= 0.02
    record(5, ok, f"{len(rep.components)} components, converged={rep.converged}, max |dw0| {worst[0]:.1e}, "
                  f"|dc| {worst[1]:.1e}, |dB|/|B| {worst[2]:.2%}", elapsed, 300.0)


def test_criterion_6_zero_test(sub_nyquist):
    s, h, rep, _ = sub_nyquist
    t0 = time.perf_counter()
    spec = GridSpec.from_ranges(RECON.omega_range, RECON.rate_range, RECON.detection_window)
    residual_zero = zero_test(h - evaluate_canonical(rep.components, s.x), s, spec, RECON.epsilon)
    s2 = s.window(2000)
    w, c = spec.omega_axis.values()[500], spec.rate_axis.values()[1200]
    unit = np.exp(1j * (w * s2.x + c * s2.x ** 2))
    unit_nonzero = not zero_test(unit, s2, GridSpec.from_ranges(RECON.omega_range, RECON.rate_range, 100), 0.5)
    record(6, residual_zero and unit_nonzero,
           f"zero_test(g - h, eps=0.05) = {residual_zero}, zero_test(unit chirp, eps=0.5) = {not unit_nonzero}",
           time.perf_counter() - t0, 60.0)


def test_criterion_7_frft():
    t0 = time.perf_counter()
    f = SampledFunction.from_function(lambda t: np.exp(-t * t / 2), -10.0, 10.0, 0.01)
    F1 = frft(f, 1.0)
    e1 = float(np.max(np.abs(F1.values - np.exp(-F1.grid ** 2 / 2))))
    half = frft(f, 0.5)
    e_inv = float(np.max(np.abs(frft(half, -0.5).values - f.values)))
    e_comp = float(np.max(np.abs(frft(half, 0.5).values - F1.values)))
    ok = e1 <= 1e-6 and e_inv <= 1e-3 and e_comp <= 1e-3
    record(7, ok, f"b=1 err {e1:.1e} (1e-6), inverse err {e_inv:.1e} (1e-3), composition err {e_comp:.1e} (1e-3)",
           time.perf_counter() - t0, 30.0)


def test_criterion_8_shift_counterexample():
    t0 = time.perf_counter()
    xi = 1.0
    x = (math.pi - 1.0) / 2.0
    d = abs(np.exp(1j * (x + xi) ** 2) - np.exp(1j * x * x))
    record(8, abs(d - 2.0) <= 1e-12, f"|e^(i(x+1)^2) - e^(ix^2)| = {d:.15f} at x = (pi-1)/2",
           time.perf_counter() - t0)


def test_criterion_9_nonlinear_decay():
    t0 = time.perf_counter()
    rep = verify_nonlinear((0.0, 0.0, 0.0, 1.0), (10, 30, 100, 300), method="expected")
    p = PolynomialPhase((0.0, 0.0, 0.0, 1.0))
    worst = 0.0
    for L in (1, 100, 10_000):
        s = generate_samples(SamplingConfig(1.0, L, L))
        worst = max(worst, abs(polynomial_correlator(1.5j * np.exp(1j * p(s.x)), s, PolynomialProbe(p)) - 1.5j))
    ok = rep["pass"] and worst <= 1e-12
    record(9, ok, f"log-log slope {rep['slope']:.3f} (target -2 +/- 0.3), matched err {worst:.1e} (1e-12)",
           time.perf_counter() - t0, 120.0)
