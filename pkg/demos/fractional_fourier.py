"""
Fractional Fourier transform by quadrature
==========================================

Order 1 is the ordinary Fourier transform, orders add, and a windowed linear
chirp collapses to a narrow peak at the order whose kernel matches its rate.
"""

import numpy as np

from chirpspace import SampledFunction, concentration, frft

gauss = SampledFunction.from_function(lambda t: np.exp(-t * t / 2), -10, 10, 0.01)
F = frft(gauss, 1.0)
print("b = 1 vs closed form:", np.max(np.abs(F.values - np.exp(-F.grid ** 2 / 2))))
print("round trip b = 0.5:", np.max(np.abs(frft(frft(gauss, 0.5), -0.5).values - gauss.values)))

chirp = SampledFunction.from_function(lambda t: np.exp(-t * t / 18 + 0.5j * t * t), -30, 30, 0.05)
for b in (0.5, 1.0, 1.3, 1.5, 1.7):
    print(f"b = {b:.1f}  peak-to-energy = {concentration(frft(chirp, b)):.3f}")
