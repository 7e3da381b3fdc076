"""Linear and polynomial-phase chirp signal models.

A linear chirp component is ``B * exp(i * (omega + rate * (x - offset)) * x)``.
Expanding the exponent gives ``(omega - rate * offset) * x + rate * x**2``,
so every component has a canonical, offset-free form ``(B, omega0, rate)``
which is what the correlator probes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_MERGE_TOL = 1e-9


class UnsupportedDegreeError(ValueError):
    pass


@dataclass(frozen=True)
class ChirpComponent:
    amplitude: complex
    omega: float
    rate: float
    offset: float = 0.0

    def __post_init__(self):
        vals = (self.amplitude.real, self.amplitude.imag, self.omega, self.rate, self.offset)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError(f"non-finite chirp parameter in {self!r}")

    def canonical(self) -> "CanonicalChirp":
        return CanonicalChirp(complex(self.amplitude), self.omega - self.rate * self.offset, self.rate)


@dataclass(frozen=True)
class CanonicalChirp:
    amplitude: complex
    omega0: float
    rate: float

    def phase(self, x):
        x = np.asarray(x, dtype=float)
        return self.omega0 * x + self.rate * x * x

    def __call__(self, x):
        return self.amplitude * np.exp(1j * self.phase(x))


@dataclass(frozen=True)
class ChirpPolynomial:
    components: tuple[ChirpComponent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def k(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __call__(self, x):
        return evaluate_polynomial(self, x)


@dataclass(frozen=True)
class PolynomialPhase:
    """Real polynomial ``p(x) = sum_k coefficients[k] * x**k``.

    Trailing zero coefficients are stripped so that ``degree`` is the index
    of the last nonzero coefficient.
    """

    coefficients: tuple[float, ...] = field(default=(0.0, 1.0))

    def __post_init__(self):
        coeffs = [float(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0.0:
            coeffs.pop()
        if not all(np.isfinite(coeffs)):
            raise ValueError("non-finite phase coefficient")
        if len(coeffs) < 2 or coeffs[-1] == 0.0:
            raise UnsupportedDegreeError("phase polynomial must have degree >= 1")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> float:
        return self.coefficients[-1]

    def __call__(self, x):
        return horner(self.coefficients, x)

    def derivative(self, order: int = 1) -> tuple[float, ...]:
        coeffs = np.asarray(self.coefficients)
        for _ in range(order):
            if len(coeffs) == 1:
                return (0.0,)
            coeffs = coeffs[1:] * np.arange(1, len(coeffs))
        return tuple(float(c) for c in coeffs)

    @classmethod
    def linear_chirp(cls, omega0: float, rate: float) -> "PolynomialPhase":
        return cls((0.0, omega0, rate))


@dataclass(frozen=True)
class NonlinearChirp:
    amplitude: complex
    phase: PolynomialPhase

    def __call__(self, x):
        return evaluate_nonlinear(self, x)


def horner(coefficients: Sequence[float], x):
    """Evaluate ``sum_k coefficients[k] * x**k`` by the Horner recurrence."""
    x = np.asarray(x, dtype=float)
    acc = np.zeros_like(x) + coefficients[-1]
    for c in reversed(coefficients[:-1]):
        acc = acc * x + c
    return acc


def evaluate_component(comp: ChirpComponent, x):
    x = np.asarray(x, dtype=float)
    return comp.amplitude * np.exp(1j * (comp.omega + comp.rate * (x - comp.offset)) * x)


def evaluate_polynomial(poly: ChirpPolynomial, x):
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=complex)
    for comp in poly.components:
        total = total + evaluate_component(comp, x)
    return total


def evaluate_canonical(components: Sequence[CanonicalChirp], x):
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=complex)
    for comp in components:
        total = total + comp(x)
    return total


def evaluate_nonlinear(nc: NonlinearChirp, x):
    return nc.amplitude * np.exp(1j * nc.phase(x))


def merge_canonical(chirps: Sequence[CanonicalChirp], merge_tol: float = DEFAULT_MERGE_TOL):
    """Merge chirps whose ``(omega0, rate)`` agree within ``merge_tol``.

    Parameters of a merged group are those of its first member. Groups whose
    amplitudes cancel exactly are dropped. Output is sorted by ``(rate, omega0)``.
    """
    if merge_tol < 0:
        raise ValueError("merge_tol must be >= 0")
    groups: list[list] = []
    for ch in chirps:
        for g in groups:
            if abs(g[1] - ch.omega0) < merge_tol and abs(g[2] - ch.rate) < merge_tol:
                g[0] += ch.amplitude
                break
        else:
            # exact-equality fallback so merge_tol=0 still merges identical pairs
            for g in groups:
                if g[1] == ch.omega0 and g[2] == ch.rate:
                    g[0] += ch.amplitude
                    break
            else:
                groups.append([complex(ch.amplitude), ch.omega0, ch.rate])
    out = [CanonicalChirp(a, w, c) for a, w, c in groups if a != 0]
    return sorted(out, key=lambda ch: (ch.rate, ch.omega0))


def canonicalize(poly: ChirpPolynomial, merge_tol: float = DEFAULT_MERGE_TOL) -> list[CanonicalChirp]:
    return merge_canonical([c.canonical() for c in poly.components], merge_tol)


def monotonicity_threshold(phase: PolynomialPhase) -> float:
    """Smallest ``T >= 0`` such that for every ``|x| > T``

        |p'(x)| >= (|c| m / 2) |x|**(m-1) > 2 pi

    where ``m`` is the degree and ``c`` the leading coefficient. Beyond ``T``
    the phase is monotone on every unit interval and advances more than one
    full turn across it.
    """
    m = phase.degree
    if m < 2:
        raise UnsupportedDegreeError("monotonicity threshold needs degree >= 2")
    c = abs(phase.leading)
    scale = c * m / 2.0
    t_wrap = (2.0 * np.pi / scale) ** (1.0 / (m - 1))

    # |p'| >= scale |x|^(m-1)  <=>  p'(x)^2 - scale^2 x^(2m-2) >= 0
    dp = np.polynomial.Polynomial(phase.derivative())
    q = dp * dp - np.polynomial.Polynomial([0.0] * (2 * m - 2) + [scale * scale])
    roots = q.roots()
    real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, np.abs(roots))].real
    t_lower = 0.0
    for side in (1.0, -1.0):
        # largest root on this side below which q turns negative
        for r in sorted((side * real)[side * real > 0], reverse=True):
            h = 1e-7 * max(1.0, r)
            if q(side * (r - h)) < 0:
                t_lower = max(t_lower, float(r))
                break
    return max(t_lower, float(t_wrap))
