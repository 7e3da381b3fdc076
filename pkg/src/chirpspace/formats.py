"""CSV and JSON file formats.

Floats are written with 17 significant digits so every double round-trips.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .chirp_model import CanonicalChirp, ChirpComponent, ChirpPolynomial, NonlinearChirp, PolynomialPhase
from .correlator import CorrelatorGrid
from .frft import SampledFunction
from .reconstruction import ReconstructionReport
from .sampling import SampleSet, samples_from_points


class FormatError(ValueError):
    """Malformed input file contents."""


def fmt(v: float) -> str:
    return format(float(v), ".17g")


def _number(obj, key):
    try:
        v = obj[key]
    except (KeyError, TypeError):
        raise FormatError(f"missing field {key!r}") from None
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise FormatError(f"field {key!r} must be a finite number, got {v!r}")
    return float(v)


# -- chirp models -----------------------------------------------------------


def chirp_polynomial_to_json(poly: ChirpPolynomial) -> list:
    return [{"amp_re": c.amplitude.real, "amp_im": c.amplitude.imag, "omega": c.omega,
             "rate": c.rate, "offset": c.offset} for c in poly.components]


def chirp_polynomial_from_json(data) -> ChirpPolynomial:
    if not isinstance(data, list):
        raise FormatError("chirp polynomial must be a JSON array")
    comps = []
    for item in data:
        comps.append(ChirpComponent(complex(_number(item, "amp_re"), _number(item, "amp_im")),
                                    _number(item, "omega"), _number(item, "rate"),
                                    _number(item, "offset") if "offset" in item else 0.0))
    return ChirpPolynomial(tuple(comps))


def nonlinear_to_json(nc: NonlinearChirp) -> dict:
    return {"amp_re": nc.amplitude.real, "amp_im": nc.amplitude.imag,
            "phase_coeffs": list(nc.phase.coefficients)}


def nonlinear_from_json(data) -> NonlinearChirp:
    if not isinstance(data, dict):
        raise FormatError("nonlinear chirp must be a JSON object")
    coeffs = data.get("phase_coeffs")
    if not isinstance(coeffs, list) or not coeffs:
        raise FormatError("phase_coeffs must be a non-empty array")
    for i in range(len(coeffs)):
        _number(coeffs, i)
    try:
        phase = PolynomialPhase(tuple(float(c) for c in coeffs))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return NonlinearChirp(complex(_number(data, "amp_re"), _number(data, "amp_im")), phase)


def load_model(path) -> ChirpPolynomial | NonlinearChirp:
    """Array -> ChirpPolynomial, object -> NonlinearChirp."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    try:
        return chirp_polynomial_from_json(data) if isinstance(data, list) else nonlinear_from_json(data)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from None


# -- CSV tables ---------------------------------------------------------------


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _read_rows(path, header):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or [h.strip() for h in rows[0]] != list(header):
        raise FormatError(f"expected header {','.join(header)}")
    body = [r for r in rows[1:] if r]
    try:
        return np.array([[float(v) for v in r] for r in body], dtype=float).reshape(len(body), len(header))
    except ValueError as exc:
        raise FormatError(f"bad numeric field: {exc}") from None


def write_samples_csv(path, samples: SampleSet):
    _write_rows(path, ("n", "x"), ((int(n), fmt(x)) for n, x in zip(samples.indices, samples.x)))


def read_samples_csv(path, lam: float = 1.0, seed: int = 0) -> SampleSet:
    table = _read_rows(path, ("n", "x"))
    try:
        return samples_from_points(table[:, 0].astype(np.int64), table[:, 1], lam, seed)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_values_csv(path, samples: SampleSet, values):
    values = np.asarray(values, dtype=complex)
    _write_rows(path, ("n", "x", "re", "im"),
                ((int(n), fmt(x), fmt(v.real), fmt(v.imag)) for n, x, v in zip(samples.indices, samples.x, values)))


def read_values_csv(path, lam: float = 1.0, seed: int = 0) -> tuple[SampleSet, np.ndarray]:
    table = _read_rows(path, ("n", "x", "re", "im"))
    try:
        samples = samples_from_points(table[:, 0].astype(np.int64), table[:, 1], lam, seed)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return samples, table[:, 2] + 1j * table[:, 3]


def write_grid_csv(path, grid: CorrelatorGrid):
    omegas, rates = grid.omega_axis.values(), grid.rate_axis.values()

    def rows():
        for i, w in enumerate(omegas):
            for j, c in enumerate(rates):
                v = grid.values[i, j]
                yield fmt(w), fmt(c), fmt(v.real), fmt(v.imag), fmt(abs(v))

    _write_rows(path, ("omega", "c", "re", "im", "abs"), rows())


def read_grid_csv(path) -> np.ndarray:
    return _read_rows(path, ("omega", "c", "re", "im", "abs"))


def write_function_csv(path, f: SampledFunction):
    _write_rows(path, ("t", "re", "im"), ((fmt(t), fmt(v.real), fmt(v.imag)) for t, v in zip(f.grid, f.values)))


def read_function_csv(path) -> SampledFunction:
    table = _read_rows(path, ("t", "re", "im"))
    if len(table) < 2:
        raise FormatError("need at least two grid points")
    t = table[:, 0]
    step = (t[-1] - t[0]) / (len(t) - 1)
    if not step > 0 or np.max(np.abs(np.diff(t) - step)) > 1e-9 * max(1.0, abs(step)):
        raise FormatError("t column must be a uniform increasing grid")
    return SampledFunction(float(t[0]), float(step), table[:, 1] + 1j * table[:, 2])


# -- reports ------------------------------------------------------------------


def report_to_json(report: ReconstructionReport) -> dict:
    return {
        "components": [{"amp_re": c.amplitude.real, "amp_im": c.amplitude.imag,
                        "omega0": float(c.omega0), "rate": float(c.rate)} for c in report.components],
        "residual_peak": report.residual_peak,
        "epsilon": report.epsilon,
        "iterations": report.iterations,
        "converged": report.converged,
    }


def report_from_json(data) -> ReconstructionReport:
    comps = tuple(CanonicalChirp(complex(_number(c, "amp_re"), _number(c, "amp_im")),
                                 _number(c, "omega0"), _number(c, "rate")) for c in data["components"])
    return ReconstructionReport(comps, float(data["residual_peak"]), float(data["epsilon"]),
                                int(data["iterations"]), bool(data["converged"]))


def write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")
