"""Reed-Solomon messages, evaluation, and the codeword-sampling step used
by the planted distributions.

A message is a polynomial of degree < m over GF(2^t), carried with its
degree bound (the bound matters to the decoder even when trailing
coefficients are zero).  Codeword sampling draws evaluation points
uniformly at random; whenever a point value collides with another draw,
every occurrence of that value has its codeword symbol replaced by a
fresh uniform field element, which keeps small marginals of the symbol
vector exactly uniform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import GF2Field


@dataclass(frozen=True)
class Poly:
    """Polynomial over GF(2^t): coeffs[j] multiplies x^j, len(coeffs) = m."""

    field: GF2Field
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        for c in self.coeffs:
            self.field.check(c)

    @property
    def bound(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: int) -> int:
        return poly_eval(self, x)


@dataclass(frozen=True)
class EvalSet:
    """Sampled evaluation points and symbols.

    resampled[i] is True iff alphas[i] collides with another alpha draw;
    all such positions carry fresh uniform betas instead of evaluations.
    """

    field: GF2Field
    alphas: np.ndarray
    betas: np.ndarray
    resampled: np.ndarray


def poly_eval(p: Poly, x: int) -> int:
    """Horner evaluation of p at x."""
    f = p.field
    f.check(x)
    acc = 0
    for c in reversed(p.coeffs):
        acc = f.mul(acc, x) ^ c
    return acc


def poly_eval_many(p: Poly, xs: np.ndarray) -> np.ndarray:
    """Horner evaluation at an array of points (vectorized for t <= 16)."""
    f = p.field
    xs = np.asarray(xs, dtype=np.uint16 if f.exp is not None else np.int64)
    if f.exp is None:
        return np.array([poly_eval(p, int(x)) for x in xs], dtype=np.int64)
    acc = np.zeros(xs.shape, dtype=np.uint16)
    for c in reversed(p.coeffs):
        acc = f.mul_vec(acc, xs) ^ np.uint16(c)
    return acc


def sample_message(field: GF2Field, m: int, rng: np.random.Generator) -> Poly:
    """m i.i.d. uniform coefficients from the generator stream."""
    if m < 1:
        raise ValueError(f"degree bound m must be >= 1, got {m}")
    coeffs = rng.integers(0, field.q, size=m, dtype=np.uint64)
    return Poly(field, tuple(int(c) for c in coeffs))


def sample_evalset(
    field: GF2Field,
    p: Poly,
    N: int,
    rng: np.random.Generator,
    alphas: np.ndarray | None = None,
) -> EvalSet:
    """Draw N evaluation points and their symbols with collision resampling.

    `alphas` overrides the point draw (test hook); betas for every
    position whose alpha value occurs more than once are replaced by
    fresh uniform draws, in index order.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if alphas is None:
        alphas = rng.integers(0, field.q, size=N, dtype=np.uint64).astype(np.int64)
    else:
        alphas = np.asarray(alphas, dtype=np.int64)
        if alphas.shape != (N,):
            raise ValueError("alphas override must have length N")
    _, inverse, counts = np.unique(alphas, return_inverse=True, return_counts=True)
    resampled = counts[inverse] > 1
    betas = poly_eval_many(p, alphas).astype(np.int64)
    k = int(resampled.sum())
    if k:
        fresh = rng.integers(0, field.q, size=k, dtype=np.uint64).astype(np.int64)
        betas[resampled] = fresh
    return EvalSet(field, alphas, betas, resampled)
