"""Seeding and random-variate conventions shared by every sampler.

All randomness flows through a single 64-bit generator family
(numpy's PCG64 wrapped in ``numpy.random.Generator``).  Sub-streams for
trials are derived with a SplitMix64-style mixer so that
(master_seed, trial_id, label) maps to a stable 64-bit seed on every
platform and every run.  Gaussian variates are produced by an explicit
Box-Muller transform on the uniform stream, which keeps the draw count
per sample a documented function of the request size.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# FNV-1a 64-bit parameters, used to fold string labels into the mix.
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def splitmix64(x: int) -> int:
    """One SplitMix64 step: advance by the odd constant, then finalize."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _fold_label(label: str) -> int:
    h = _FNV_OFFSET
    for b in label.encode("utf-8"):
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h


def derive_subseed(master_seed: int, trial_id: int, stream_label: str = "") -> int:
    """Stable 64-bit sub-seed for (master_seed, trial_id, stream_label).

    The three inputs are mixed through SplitMix64 so that nearby trial ids
    and similar labels still produce unrelated streams.
    """
    h = splitmix64(master_seed & _MASK64)
    h = splitmix64(h ^ (trial_id & _MASK64))
    h = splitmix64(h ^ _fold_label(stream_label))
    return h


def make_rng(seed: int) -> np.random.Generator:
    """The one generator used everywhere: PCG64 behind numpy's Generator."""
    return np.random.Generator(np.random.PCG64(seed & _MASK64))


def spawn(master_seed: int, trial_id: int, stream_label: str = "") -> np.random.Generator:
    return make_rng(derive_subseed(master_seed, trial_id, stream_label))


def normals(rng: np.random.Generator, size) -> np.ndarray:
    """Standard normal variates via Box-Muller on the uniform stream.

    Draws ceil(n/2) pairs of uniforms; u1 is shifted to (0, 1] so the log
    is always finite.
    """
    n = int(np.prod(size)) if not np.isscalar(size) else int(size)
    half = (n + 1) // 2
    u1 = 1.0 - rng.random(half)
    u2 = rng.random(half)
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    out = np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:n]
    if np.isscalar(size):
        return out
    return out.reshape(size)
