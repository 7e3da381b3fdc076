"""
The wrapped chirp orbit
=======================

y_n = (omega x_n + c x_n^2) / 2 pi mod 1 fills the circle once a single cell
spans a full turn, which happens past the wrap index n*.
"""

import numpy as np
from scipy import stats

from chirpspace import SamplingConfig, circle_orbit, generate_samples

samples = generate_samples(SamplingConfig(1.0, 0, 10_000))
diag = circle_orbit(samples, 1.0, 0.3)
print("wrap index n* =", diag.wrap_threshold)
print("KS distance to uniform:", stats.kstest(diag.orbit, "uniform").statistic)
print("deviation bound at n = 10, 100, 1000:", diag.deviation_bounds[np.searchsorted(diag.indices, [10, 100, 1000])])
