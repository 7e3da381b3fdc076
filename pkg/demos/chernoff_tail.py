"""
Quadratic Chernoff bounds against simulation
============================================

For bounded Y_n the log moment generating function sits under a parabola.
Its Legendre transform gives a Gaussian-like tail, and at the threshold b_N
the bound is exactly N^-2.
"""

from chirpspace import RateFunctionModel, chernoff_tail_bound, deviation_threshold
from chirpspace.verification import verify_ld

for N in (10, 100, 10000):
    b = deviation_threshold(N)
    print(f"N = {N:5d}  b_N = {b:.4f}  bound at m + b_N = {chernoff_tail_bound(RateFunctionModel(N), b).value:.3e}")

for y in (None, 0.5, 0.3):
    rep = verify_ld(N=10, threshold_y=y, trials=100_000)
    print(f"y = {rep['threshold_y']:.4f}  empirical = {rep['empirical']:.5f}  bound = {rep['bound']:.5f}"
          f"  pass = {rep['pass']}")
