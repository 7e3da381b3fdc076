"""Counter-based keyed uniform generator.

Every random draw in the package is a pure function of ``(seed, tag, index...)``.
The mixing function is SplitMix64 (Steele, Lea & Flood finalizer): each key is
folded into the state as ``h = mix64(h ^ (key + GOLDEN))`` starting from
``h = mix64(seed + GOLDEN)``, and the top 53 bits of the final state give a
double in ``[0, 1)``.
"""

from __future__ import annotations

import zlib

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = (np.uint64(s) for s in (30, 27, 31, 11))
_INV53 = 1.0 / float(1 << 53)


def purpose_tag(name: str) -> int:
    """Stable integer tag for a named random stream."""
    return zlib.crc32(name.encode("utf-8"))


TAG_JITTER = purpose_tag("jitter")
TAG_DENSITY = purpose_tag("density")
TAG_TAIL = purpose_tag("tail")
TAG_MGF = purpose_tag("mgf")


def _as_u64(a) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype == np.uint64:
        return arr
    # negative indices wrap two's-complement style
    return arr.astype(np.int64).view(np.uint64) if arr.dtype.kind == "i" else arr.astype(np.uint64)


def mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def keyed_bits(seed: int, *keys) -> np.ndarray:
    with np.errstate(over="ignore"):
        h = mix64(_as_u64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF)) + GOLDEN)
        for k in keys:
            h = mix64(h ^ (_as_u64(k) + GOLDEN))
    return h


def keyed_uniform(seed: int, *keys) -> np.ndarray:
    """Uniform doubles in ``[0, 1)`` keyed by ``seed`` and broadcast ``keys``."""
    return (keyed_bits(seed, *keys) >> _S11).astype(np.float64) * _INV53
