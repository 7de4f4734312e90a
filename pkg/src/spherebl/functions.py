"""Built-in integrands for the verification experiments.

Everything here is even in each coordinate by construction (dependence is
through squares and block radii only), so the reflection-symmetry
assumption of the product inequalities holds automatically.
"""

from __future__ import annotations

import numpy as np

from .quadrature import Integrand
from .symmetry import Symmetry


def constant_integrand(n: int, value: float = 1.0,
                       tag: Symmetry | None = None) -> Integrand:
    if value < 0:
        raise ValueError("integrands are nonnegative")
    return Integrand(n=n, eval=lambda pts: np.full(len(pts), float(value)),
                     symmetry_tag=tag)


def coordinate_square_integrand(n: int, index: int, offset: float = 0.0,
                                tag: Symmetry | None = None) -> Integrand:
    """offset + x_index^2 (1-based index)."""
    col = index - 1
    return Integrand(n=n, eval=lambda pts: offset + pts[:, col] ** 2,
                     symmetry_tag=tag)


def random_block_invariant(s: Symmetry, seed: int, amplitude: float = 1.0) -> Integrand:
    """A random bounded positive function with the symmetry ``s``.

    Shape: exp(sum_i a_i u_i) where the u_i are the squared block radii and
    the squared free coordinates, and the a_i are uniform in
    [-amplitude, amplitude].  Values stay within e^(+-amplitude * #terms).
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    blocks = [np.array([i - 1 for i in a.support()], dtype=int) for a in s.alphas]
    singles = np.array([i - 1 for i in s.r_mask.support()], dtype=int)
    coeffs = rng.uniform(-amplitude, amplitude, size=len(blocks) + len(singles))

    def ev(pts: np.ndarray) -> np.ndarray:
        acc = np.zeros(len(pts))
        for c, b in zip(coeffs, blocks):
            acc += c * (pts[:, b] ** 2).sum(axis=1)
        for c, col in zip(coeffs[len(blocks):], singles):
            acc += c * pts[:, col] ** 2
        return np.exp(acc)

    return Integrand(n=s.n, eval=ev, symmetry_tag=s)


def capped_power_profile(exponent: float):
    """r -> min(1, r^(-exponent)); bounded, integrable tails for small
    exponents, the workhorse of the local growth experiment."""
    if exponent <= 0:
        raise ValueError("exponent must be positive")

    def profile(r: np.ndarray) -> np.ndarray:
        r = np.maximum(np.asarray(r, dtype=float), np.finfo(float).tiny)
        return np.minimum(1.0, r ** (-exponent))

    return profile


def bump_profile(radius: float = 1.0):
    """Compactly supported radial bump (1 - (r/radius)^2)_+ ."""
    if radius <= 0:
        raise ValueError("radius must be positive")

    def profile(r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.clip(1.0 - (r / radius) ** 2, 0.0, None)

    return profile
