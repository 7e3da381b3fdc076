"""
Circle densities for polynomial phases
======================================

Wrapping p(x) = x^m onto the circle over one jitter cell gives a density that
flattens like n^-(m-1). The exact bin masses show the slope without Monte
Carlo noise.
"""

from chirpspace import PolynomialPhase, deviation_decay, monotonicity_threshold
from chirpspace.nonlinear import nonlinear_density_deviation

for coeffs in [(0, 0, 1), (0, 0, 0, 1), (0, 0, 0, 0, 1)]:
    p = PolynomialPhase(coeffs)
    rows, slope = deviation_decay(p, [10, 30, 100, 300])
    print(f"m = {p.degree}  threshold = {monotonicity_threshold(p):.3f}  slope = {slope:.3f}")
    for r in rows:
        print(f"    n = {r.n:3d}  deviation = {r.empirical:.3e}  bound = {r.bound:.3e}")

mc = nonlinear_density_deviation(PolynomialPhase((0, 0, 0, 1)), 10, trials=1_000_000)
print("Monte Carlo at n = 10:", mc.empirical, "+/-", mc.bin_error)
