"""Chirp correlators on jittered samples and sub-Nyquist chirp reconstruction."""

from .chirp_model import (CanonicalChirp, ChirpComponent, ChirpPolynomial, NonlinearChirp, PolynomialPhase,
                          UnsupportedDegreeError, canonicalize, evaluate_canonical, evaluate_nonlinear,
                          evaluate_polynomial, merge_canonical, monotonicity_threshold)
from .correlator import (AlignmentError, Axis, CorrelatorGrid, DecayCurve, GridConfigError, ProbePoint,
                         chirp_correlator, decay_curve, default_axes, envelope, evaluate_grid, theorem3_average)
from .frft import FrftOrder, SampledFunction, SingularOrderError, concentration, fourier_quadrature, frft
from .large_deviation import (MonteCarloTailSpec, RateFunctionModel, TailBound, TailEstimate,
                              chernoff_tail_bound, deviation_threshold, log_mgf_bound, monte_carlo_tail,
                              rate_function)
from .nonlinear import PolynomialProbe, deviation_decay, nonlinear_density_deviation, polynomial_correlator
from .reconstruction import (DetectionConfig, GridSpec, NumericalError, ReconstructionReport, deflate,
                             detect_peak, estimate_amplitude, reconstruct, refine_peak, zero_test)
from .sampling import (CircleDiagnostics, DomainError, InvalidProbeError, SampleSet, SamplingConfig,
                       circle_orbit, density_deviation_bound, empirical_density_deviation, generate_samples,
                       wrap_threshold)

__version__ = "0.1.0"
