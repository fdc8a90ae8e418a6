"""Finite-difference Cauchy-Riemann residuals and circle means.

The antiholomorphic derivative per complex variable is
``dbar = (d/dx + i d/dy) / 2``; analytic functions are its kernel.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, DomainError
from .fields import SampledField

#: default quadrature order for circle means (trigonometric accuracy)
CIRCLE_MEAN_POINTS = 64


def _same_grid(a: SampledField, b: SampledField):
    ga, gb = a.grid, b.grid
    if ga.lo != gb.lo or ga.hi != gb.hi or ga.counts != gb.counts:
        raise DimensionMismatch("fields live on different grids")


def dbar_array(psi: SampledField, j: int = 0) -> np.ndarray:
    """Centered-difference dbar_j of a sampled field, on the full grid shape.

    Boundary entries use one-sided differences and should be ignored;
    residual maxima below exclude them.
    """
    k = psi.k
    if not 0 <= j < k:
        raise DomainError(f"axis {j} out of range for k={k}")
    arr = psi.as_array()
    hx = psi.grid.steps[j]
    hy = psi.grid.steps[k + j]
    gx = np.gradient(arr, hx, axis=j)
    gy = np.gradient(arr, hy, axis=k + j)
    return 0.5 * (gx + 1j * gy)


def dbar_residual(psi: SampledField, eta: SampledField, j: int = 0) -> float:
    """max over interior grid points of |dbar_j psi - eta_j|.

    One boundary layer is excluded on every axis; centered differences
    make the residual O(h^2) for smooth fields.
    """
    _same_grid(psi, eta)
    diff = dbar_array(psi, j) - eta.as_array()
    core = diff[tuple(slice(1, -1) for _ in range(diff.ndim))]
    if core.size == 0:
        raise DomainError("grid too small to have interior points")
    return float(np.max(np.abs(core)))


def circle_distribution(z0, w, r: float, n: int) -> np.ndarray:
    """The n circle points z0 + r*exp(2*pi*i*m/n)*w, shape (n, k)."""
    z0 = np.atleast_1d(np.asarray(z0, dtype=complex))
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    if z0.shape != w.shape:
        raise DimensionMismatch("center and direction have different shapes")
    phases = np.exp(2j * np.pi * np.arange(n) / n)
    return z0[None, :] + r * phases[:, None] * w[None, :]


def circle_mean(u, z0, w, r: float, n: int = CIRCLE_MEAN_POINTS) -> float:
    """(1/n) sum of u over n equispaced points of the circle z0 + r*e^{it}*w.

    Exact for affine u at any n >= 2; plurisubharmonicity checks use the
    submean deficiency u(z0) - circle_mean(...) <= tol and should keep
    n >= 8.
    """
    if r <= 0:
        raise DomainError("radius must be positive")
    if n < 2:
        raise DomainError("need at least 2 quadrature points")
    pts = circle_distribution(z0, w, r, n)
    vals = np.asarray(u(pts), dtype=float)
    if vals.shape != (n,):
        raise DimensionMismatch("u must map (n, k) points to n real values")
    return float(np.mean(vals))
