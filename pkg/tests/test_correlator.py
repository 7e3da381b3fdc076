import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chirpspace.chirp_model import CanonicalChirp, evaluate_canonical
from chirpspace.correlator import (AlignmentError, Axis, GridConfigError, ProbePoint, chirp_correlator,
                                   decay_curve, default_axes, envelope, evaluate_grid, theorem3_average)
from chirpspace.sampling import SamplingConfig, generate_samples


def _samples(L, seed=0, lam=1.0):
    return generate_samples(SamplingConfig(lam, seed, L))


@pytest.mark.parametrize("L", [0, 1, 10, 1000])
def test_matched_exact(L):
    s = _samples(L, seed=L)
    f = 3 * np.exp(1j * (2 * s.x + 0.5 * s.x ** 2))
    assert abs(chirp_correlator(f, s, ProbePoint(2, 0.5)) - 3) < 1e-12


def test_zero_signal():
    s = _samples(50)
    assert chirp_correlator(np.zeros(101), s, ProbePoint(1.0, 0.2)) == 0


def test_alignment_error():
    s = _samples(5)
    with pytest.raises(AlignmentError):
        chirp_correlator(np.ones(10), s, ProbePoint(1.0, 0.0))


def test_detuned_decays():
    hits = 0
    for seed in range(50):
        s = _samples(10_000, seed)
        hits += abs(chirp_correlator(np.exp(1j * s.x), s, ProbePoint(2.3, 0.0))) <= 0.05
    assert hits >= 45


def test_ergodic_average_examples():
    s = _samples(100)
    assert theorem3_average(s, ProbePoint(0, 0)) == 1
    lam = 0.7
    zero = generate_samples(SamplingConfig(lam, 0, 200), jitter=0.0)
    assert abs(theorem3_average(zero, ProbePoint(2 * math.pi / lam * 3, 0)) - 1) < 1e-9
    hits = sum(abs(theorem3_average(_samples(10_000, seed), ProbePoint(1, 0.3))) <= 0.05 for seed in range(50))
    assert hits >= 45


def test_ergodic_average_sign_convention():
    s = _samples(30, 2)
    p = ProbePoint(1.7, -0.4)
    assert theorem3_average(s, p) == chirp_correlator(np.ones(61), s, -p)


@settings(max_examples=30, deadline=None)
@given(st.floats(-20, 20), st.floats(-1, 1), st.integers(0, 2**32))
def test_conjugate_symmetry(w, c, seed):
    s = _samples(200, seed)
    a = theorem3_average(s, ProbePoint(w, c))
    b = theorem3_average(s, ProbePoint(-w, -c))
    assert abs(a - b.conjugate()) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.complex_numbers(max_magnitude=5), st.complex_numbers(max_magnitude=5))
def test_linearity_and_bound(seed, a, b):
    rng = np.random.default_rng(seed)
    s = _samples(300, seed)
    f = rng.normal(size=601) + 1j * rng.normal(size=601)
    g = rng.normal(size=601) + 1j * rng.normal(size=601)
    p = ProbePoint(rng.uniform(-5, 5), rng.uniform(-0.5, 0.5))
    lhs = chirp_correlator(a * f + b * g, s, p)
    rhs = a * chirp_correlator(f, s, p) + b * chirp_correlator(g, s, p)
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(a) + abs(b)) * 10
    assert abs(chirp_correlator(f, s, p)) <= np.max(np.abs(f)) * (1 + 1e-12)


def test_grid_one_by_one():
    s = _samples(100, 3)
    f = np.exp(1j * (0.5 * s.x))
    g = evaluate_grid(f, s, Axis(0.7, 1.0, 1), Axis(0.01, 1.0, 1))
    assert g.values.shape == (1, 1)
    assert g.values[0, 0] == chirp_correlator(f, s, ProbePoint(0.7, 0.01))


@pytest.mark.parametrize("method", ["direct", "fast"])
def test_grid_entries_match_correlator(method):
    s = _samples(200, 1)
    rng = np.random.default_rng(0)
    f = rng.normal(size=401) + 1j * rng.normal(size=401)
    wa, ca = Axis(-3.0, 0.25, 13), Axis(-0.2, 0.01, 9)
    g = evaluate_grid(f, s, wa, ca, method=method)
    for i in range(0, 13, 4):
        for j in range(0, 9, 3):
            ref = chirp_correlator(f, s, g.probe(i, j))
            assert abs(g.values[i, j] - ref) < 1e-10
    assert np.all(g.magnitude <= np.max(np.abs(f)) * (1 + 1e-12))


def test_grid_peak_at_true_probe():
    s = _samples(500, 9)
    wa, ca = Axis(1.0, 0.05, 41), Axis(-0.1, 0.001, 201)
    w0, c0 = wa.values()[17], ca.values()[123]
    f = (0.8 - 0.3j) * np.exp(1j * (w0 * s.x + c0 * s.x ** 2))
    g = evaluate_grid(f, s, wa, ca)
    i, j = np.unravel_index(np.argmax(g.magnitude), g.values.shape)
    assert (i, j) == (17, 123)
    assert abs(g.values[i, j] - (0.8 - 0.3j)) < 1e-12


def test_grid_threads_bit_identical():
    s = _samples(400, 4)
    f = np.exp(1j * (3 * s.x + 0.1 * s.x ** 2))
    wa, ca = default_axes((0, 6), (-0.3, 0.3), 100)
    a = evaluate_grid(f, s, wa, ca, method="fast", threads=1)
    b = evaluate_grid(f, s, wa, ca, method="fast", threads=4)
    assert np.array_equal(a.values, b.values)


def test_three_chirp_grid_peaks():
    s = _samples(2000, 0)
    truth = [CanonicalChirp(1.0, 4.2, 0.05), CanonicalChirp(0.7, 11.9, -0.12), CanonicalChirp(0.4, 19.5, 0.3)]
    f = evaluate_canonical(truth, s.x)
    # 201 x 101 lattice through all three true parameter pairs
    wa, ca = Axis(0.0, 0.1, 201), Axis(-0.2, 0.005, 101)
    g = evaluate_grid(f, s, wa, ca, method="fast")
    cells = {(int(round(t.omega0 / 0.1)), int(round((t.rate + 0.2) / 0.005))) for t in truth}
    mag = g.magnitude
    top = np.argsort(mag, axis=None)[::-1][:3]
    assert {tuple(int(v) for v in np.unravel_index(k, mag.shape)) for k in top} == cells
    assert mag.flat[top[-1]] > 0.8 * 0.4
    floor = np.delete(mag.ravel(), top).max()
    assert floor < mag.flat[top[-1]]


def test_axis_validation():
    with pytest.raises(GridConfigError):
        Axis(0.0, 0.0, 3)
    with pytest.raises(GridConfigError):
        Axis(0.0, 1.0, 0)


def test_default_axes_resolution():
    wa, ca = default_axes((0, 10), (-1, 1), 99, lam=1.0)
    x_max = 100.0
    assert wa.step <= math.pi / (2 * x_max) * (1 + 1e-12)
    assert ca.step <= math.pi / (2 * x_max ** 2) * (1 + 1e-12)
    assert wa.values()[-1] >= 10 and ca.values()[-1] >= 1


def test_envelope_examples():
    assert envelope(50, 0.5) == pytest.approx(math.sqrt(4 * math.log(101) / 101), rel=1e-14)
    assert envelope(50, 0.5) == pytest.approx(0.4275, abs=1e-4)
    assert envelope(5000, 0.5) == pytest.approx(0.0607, abs=1e-4)
    vals = [envelope(L) for L in range(1, 500)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_decay_curve_zero_probe():
    curve = decay_curve(ProbePoint(0, 0), 1.0, [10, 100], range(3))
    assert curve.mean_abs == [1.0, 1.0]
    assert [e[2] for e in curve.entries] == [3, 3]


def test_decay_curve_rejects_unsorted():
    with pytest.raises(ValueError):
        decay_curve(ProbePoint(1, 0.3), 1.0, [100, 10], range(2))


def test_proven_regime_flag():
    assert ProbePoint(1.0, 0.0).in_proven_regime
    assert not ProbePoint(0.0, 0.3).in_proven_regime
