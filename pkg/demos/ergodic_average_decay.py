"""
Ergodic averages of a chirp along a random configuration
========================================================

The average of exp(i(omega x_n + c x_n^2)) over 2L+1 jittered points shrinks
roughly like sqrt(log L / L). A zero-jitter lattice at a resonant frequency
shows why the randomness matters.
"""

import math

from chirpspace import ProbePoint, SamplingConfig, decay_curve, envelope, generate_samples, theorem3_average

probe = ProbePoint(1.0, 0.3)
curve = decay_curve(probe, 1.0, [10, 100, 1000, 10000], seeds=range(50))
for L, mean_abs, seeds in curve.entries:
    print(f"L = {L:6d}  mean |average| = {mean_abs:.4f}  envelope = {envelope(L):.4f}  ({seeds} seeds)")

lattice = generate_samples(SamplingConfig(1.0, 0, 1000), jitter=0.0)
print("lattice, omega = 2 pi:", abs(theorem3_average(lattice, ProbePoint(2 * math.pi, 0.0))))
jittered = generate_samples(SamplingConfig(1.0, 0, 1000))
print("jittered, omega = 2 pi:", abs(theorem3_average(jittered, ProbePoint(2 * math.pi, 0.0))))
