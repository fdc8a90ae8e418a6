"""Cone-weighted growth functions, norms, and the two comparison lemmas.

The weight attached to a cone U and parameters A, B > 0 is

    rho(x + iy) = -alpha(|x|/A) + beta(B*|y|) + beta(B*delta_U(x)),

with |x| = max_j |x_j| and delta_U the uniform-norm distance to U.  The
sup norm weighs |f| by exp(-rho); the Hilbert norm integrates
|f|^2 exp(-2 rho) over C^k.  Norms are computed on certified truncation
boxes and reported as estimates, never as exact values.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .cones import Cone, cone_distance, cone_to_text
from .errors import (DimensionMismatch, DomainError, NormPossiblyInfinite,
                     PreconditionError)
from .fields import GridSpec, midpoint_grid
from .profiles import Profile, eval_profile, profile_to_text, verify_profile

#: boundary/interior ratio below which a truncation box counts as certified
DECAY_RATIO = 1e-12
_LOG_DECAY = math.log(DECAY_RATIO)
_EXTEND_FACTOR = 1.5
_MAX_EXTENDS = 40

_VERIFY_GRID = np.concatenate([[0.0], np.logspace(-3, 6, 37)])


@dataclass(frozen=True)
class WeightSpec:
    """The tuple (U, A, B, alpha, beta) defining rho and both norms."""

    U: Cone
    A: float
    B: float
    alpha: Profile
    beta: Profile

    def __post_init__(self):
        if self.A <= 0 or self.B <= 0:
            raise DomainError("A and B must be positive")
        report = verify_profile(self.alpha, self.beta, _VERIFY_GRID)
        if not report.ok:
            raise DomainError(
                "profiles fail admissibility: " + "; ".join(map(str, report.violations)))

    @property
    def k(self) -> int:
        return self.U.dim

    def enlarged(self, Ap: float, Bp: float) -> "WeightSpec":
        return replace(self, A=Ap, B=Bp)


def spec_hash(w: WeightSpec) -> str:
    text = (cone_to_text(w.U) + profile_to_text(w.alpha) + profile_to_text(w.beta)
            + f"A={w.A!r} B={w.B!r}")
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def _as_zmat(z, k: int) -> tuple[np.ndarray, bool]:
    """Normalize to an (N, k) complex matrix; squeeze marks single points.

    For k = 1 a one-dimensional array is a batch of scalar points; for
    k >= 2 it must be a single length-k point.
    """
    zs = np.asarray(z, dtype=complex)
    if zs.ndim == 0:
        if k != 1:
            raise DimensionMismatch(f"scalar point for dimension k={k}")
        return zs.reshape(1, 1), True
    if zs.ndim == 1:
        if k == 1:
            return zs.reshape(-1, 1), False
        if zs.shape[0] != k:
            raise DimensionMismatch(f"point of length {zs.shape[0]} vs k={k}")
        return zs.reshape(1, k), True
    if zs.ndim == 2 and zs.shape[1] == k:
        return zs, False
    raise DimensionMismatch(f"points of shape {zs.shape} vs k={k}")


def rho_eval(w: WeightSpec, z):
    """Evaluate rho at complex points (scalar, (k,), or (N, k))."""
    zs, squeeze = _as_zmat(z, w.k)
    x = zs.real
    y = zs.imag
    ax = np.max(np.abs(x), axis=1)
    ay = np.max(np.abs(y), axis=1)
    delta = cone_distance(w.U, x)
    out = (-eval_profile(w.alpha, ax / w.A)
           + eval_profile(w.beta, w.B * ay)
           + eval_profile(w.beta, w.B * np.asarray(delta)))
    if squeeze:
        return float(out[0])
    return out


def uniform_abs(z) -> np.ndarray:
    """max(|x|, |y|) per point: the uniform norm on C^k viewed as R^{2k}.

    The growth-gap fits below use this piecewise-linear version, which
    matches the complex uniform norm up to a factor sqrt(2).
    """
    zs = np.asarray(z, dtype=complex)
    if zs.ndim == 1:
        zs = zs[:, None]
    return np.maximum(np.max(np.abs(zs.real), axis=1),
                      np.max(np.abs(zs.imag), axis=1))


# ---------------------------------------------------------------------------
# test functions: polynomial times a gaussian
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TestFunction:
    """f(z) = p(z - center) * exp(-rate * sum_j (z_j - center_j)^2).

    ``coeffs`` maps exponent multi-indices to complex coefficients; the
    family is entire and closed under translation and scaling.
    """

    coeffs: tuple
    rate: float
    center: tuple

    def __post_init__(self):
        if self.rate <= 0:
            raise DomainError("gaussian rate must be positive")
        center = tuple(complex(c) for c in self.center)
        object.__setattr__(self, "center", center)
        k = len(center)
        norm_coeffs = []
        for m, c in self.coeffs:
            m = tuple(int(v) for v in m)
            if len(m) != k or any(v < 0 for v in m):
                raise DomainError(f"bad multi-index {m} for k={k}")
            norm_coeffs.append((m, complex(c)))
        object.__setattr__(self, "coeffs", tuple(norm_coeffs))

    @property
    def k(self) -> int:
        return len(self.center)

    @staticmethod
    def gaussian(rate: float = 1.0, k: int = 1, amplitude: complex = 1.0,
                 center=None) -> "TestFunction":
        center = (0.0,) * k if center is None else tuple(center)
        return TestFunction(coeffs=(((0,) * k, amplitude),), rate=rate,
                            center=center)

    @staticmethod
    def zero(k: int = 1) -> "TestFunction":
        return TestFunction(coeffs=(), rate=1.0, center=(0.0,) * k)

    def __call__(self, z):
        zs, squeeze = _as_zmat(z, self.k)
        w = zs - np.asarray(self.center)
        poly = np.zeros(len(w), dtype=complex)
        for m, c in self.coeffs:
            term = np.full(len(w), c, dtype=complex)
            for j, e in enumerate(m):
                if e:
                    term = term * w[:, j] ** e
            poly += term
        out = poly * np.exp(-self.rate * np.sum(w * w, axis=1))
        if squeeze:
            return complex(out[0])
        return out

    def log_abs(self, z) -> np.ndarray:
        """log|f| evaluated stably (gaussian part in the exponent)."""
        zs, _ = _as_zmat(z, self.k)
        w = zs - np.asarray(self.center)
        poly = np.zeros(len(w), dtype=complex)
        for m, c in self.coeffs:
            term = np.full(len(w), c, dtype=complex)
            for j, e in enumerate(m):
                if e:
                    term = term * w[:, j] ** e
            poly += term
        with np.errstate(divide="ignore"):
            lp = np.log(np.abs(poly))
        return lp - self.rate * np.real(np.sum(w * w, axis=1))

    def translated(self, zeta) -> "TestFunction":
        """f(. + zeta); the family is closed under translation."""
        zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
        if zeta.shape != (self.k,):
            raise DimensionMismatch("translation vector has wrong length")
        return replace(self, center=tuple(np.asarray(self.center) - zeta))

    def scaled(self, s: complex) -> "TestFunction":
        return replace(self, coeffs=tuple((m, c * s) for m, c in self.coeffs))


# ---------------------------------------------------------------------------
# truncation boxes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoxCertificate:
    """Sampled decay witness for a truncation box.

    ``status`` is "decayed" when the boundary value is below DECAY_RATIO
    times the interior maximum, "bounded" when the boundary merely does
    not exceed the interior.  For the gaussian test-function family the
    log integrand is eventually concave along rays, so a decayed status
    certifies that the region outside the box stays below the reported
    maximum.
    """

    status: str
    log_gap: float
    halfwidths: tuple
    resolution: int


def _eval_log_modulus(f: TestFunction, w: WeightSpec, halfwidths, resolution):
    """Log weighted modulus on the box grid plus a cancellation noise scale."""
    axes = [np.linspace(-h, h, resolution) for h in halfwidths]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    k = w.k
    zs = pts[:, :k] + 1j * pts[:, k:]
    lf = f.log_abs(zs)
    rho = rho_eval(w, zs)
    L = lf - rho
    finite = np.isfinite(lf)
    scale = float(np.max(np.abs(lf[finite]), initial=0.0) + np.max(np.abs(rho)))
    noise = 1e-13 * scale
    return L.reshape([resolution] * len(halfwidths)), noise


def _shell_and_inner(L: np.ndarray):
    inner = L[tuple(slice(2, -2) for _ in range(L.ndim))]
    inner_max = float(np.max(inner)) if inner.size else float(np.max(L))
    mask = np.zeros(L.shape, dtype=bool)
    for ax in range(L.ndim):
        sl = [slice(None)] * L.ndim
        sl[ax] = 0
        mask[tuple(sl)] = True
        sl[ax] = -1
        mask[tuple(sl)] = True
    shell_max = float(np.max(L[mask]))
    return shell_max, inner_max


def _certified_box(f, w, halfwidths, resolution, require_decay, what):
    """Grow the box until the boundary is certified; returns (halfwidths, cert).

    Growth of the boundary value beyond cancellation noise on two
    consecutive boxes raises; a flat profile (no progress toward the
    decay ratio) stops with a "bounded" certificate, which the L2 path
    treats as possibly infinite.
    """
    hw = np.asarray(halfwidths, dtype=float)
    grow_count = 0
    prev_gap = None
    for _ in range(_MAX_EXTENDS):
        L, noise = _eval_log_modulus(f, w, hw, resolution)
        shell, inner = _shell_and_inner(L)
        gap = shell - inner
        tol = 1e-8 + noise
        if gap > tol:
            grow_count += 1
            if grow_count >= 2:
                raise NormPossiblyInfinite(
                    f"{what}: boundary exceeds interior on box {tuple(hw)}; "
                    "norm possibly infinite")
        else:
            grow_count = 0
        if gap <= _LOG_DECAY:
            return tuple(hw), BoxCertificate("decayed", gap, tuple(hw),
                                             resolution)
        if prev_gap is not None and gap > prev_gap - 1.0 and gap <= tol:
            # flat weighted modulus: bounded but not decaying
            if require_decay:
                raise NormPossiblyInfinite(
                    f"{what}: integrand does not decay toward the boundary "
                    f"(log gap {gap:.3g} on box {tuple(hw)}); norm possibly infinite")
            return tuple(hw), BoxCertificate("bounded", gap, tuple(hw),
                                             resolution)
        prev_gap = gap
        hw = hw * _EXTEND_FACTOR
    raise NormPossiblyInfinite(
        f"{what}: no decay down to ratio {DECAY_RATIO} within "
        f"{_MAX_EXTENDS} box extensions; norm possibly infinite")


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormReport:
    kind: str
    value: float
    error_estimate: float
    maximizer: tuple | None
    certificate: BoxCertificate | None
    spec_hash: str = ""


def sup_norm(f: TestFunction, w: WeightSpec, box=None, refine: int = 3,
             resolution: int = 41) -> NormReport:
    """Grid lower estimate of sup |f| exp(-rho) with local refinement.

    Raises NormPossiblyInfinite when the weighted modulus grows toward
    the boundary of the (automatically extended) truncation box.
    """
    if f.k != w.k:
        raise DimensionMismatch("test function and weight dimension differ")
    if not f.coeffs:
        return NormReport("sup", 0.0, 0.0, None, None, spec_hash(w))
    if box is None:
        hw = (4.0,) * (2 * w.k)
    else:
        hw = tuple(float(h) for h in box)
    hw, cert = _certified_box(f, w, hw, resolution, require_decay=False,
                              what="sup_norm")

    center = np.zeros(2 * w.k)
    widths = np.asarray(hw, dtype=float)
    best_log = -np.inf
    best_pt = center
    for _ in range(max(refine, 0) + 1):
        axes = [np.linspace(c - h, c + h, resolution)
                for c, h in zip(center, widths)]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        zs = pts[:, :w.k] + 1j * pts[:, w.k:]
        L = f.log_abs(zs) - rho_eval(w, zs)
        i = int(np.argmax(L))
        if L[i] > best_log:
            best_log = float(L[i])
            best_pt = pts[i]
        steps = np.array([(ax[1] - ax[0]) for ax in axes])
        center = best_pt
        widths = 2.0 * steps
    zmax = tuple(complex(a, b) for a, b in zip(best_pt[:w.k], best_pt[w.k:]))
    return NormReport("sup", float(np.exp(best_log)), 0.0, zmax, cert,
                      spec_hash(w))


def l2_norm(f: TestFunction, w: WeightSpec, box=None,
            resolution: int = 65) -> NormReport:
    """Midpoint quadrature of [integral |f|^2 exp(-2 rho)]^(1/2).

    Two resolutions give a Richardson-style error estimate; the integrand
    must decay at the truncation boundary (ratio DECAY_RATIO), otherwise
    NormPossiblyInfinite is raised.
    """
    if f.k != w.k:
        raise DimensionMismatch("test function and weight dimension differ")
    if not f.coeffs:
        return NormReport("l2", 0.0, 0.0, None, None, spec_hash(w))
    if box is None:
        hw = (4.0,) * (2 * w.k)
    else:
        hw = tuple(float(h) for h in box)
    hw, cert = _certified_box(f, w, hw, resolution, require_decay=True,
                              what="l2_norm")

    def integral(n):
        spec = GridSpec(lo=tuple(-h for h in hw), hi=hw,
                        counts=(n,) * (2 * w.k))
        axes, vol = midpoint_grid(spec)
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        zs = pts[:, :w.k] + 1j * pts[:, w.k:]
        L = 2.0 * (f.log_abs(zs) - rho_eval(w, zs))
        with np.errstate(over="ignore"):
            vals = np.exp(L)
        return float(np.sum(vals) * vol)

    coarse = integral(resolution)
    fine = integral(2 * resolution - 1)
    err_int = abs(fine - coarse) / 3.0
    value = math.sqrt(max(fine, 0.0))
    err = err_int / (2.0 * value) if value > 0 else err_int
    return NormReport("l2", value, err, None, cert, spec_hash(w))


# ---------------------------------------------------------------------------
# growth gap (condition I) and shift bound (condition II)
# ---------------------------------------------------------------------------

@dataclass
class GapReport:
    sigma: float
    tau: float
    C: float
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_gap(w: WeightSpec, Ap: float, Bp: float, zs) -> GapReport:
    """Fit sigma, C with rho' - rho + C >= sigma |z|^tau on sample points.

    tau = min(1, kappa); sigma is fitted on the far half of the sample
    (|z| at least half the sample radius), capped at 1, and C is then the
    smallest shift making the bound hold everywhere on the sample.  A
    nonpositive fitted sigma is reported as a violation.
    """
    if not (Ap > w.A and Bp > w.B):
        raise PreconditionError("need A' > A and B' > B")
    zs = np.asarray(zs, dtype=complex)
    wp = w.enlarged(Ap, Bp)
    gap = rho_eval(wp, zs) - rho_eval(w, zs)
    r = uniform_abs(zs)
    tau = min(1.0, w.alpha.kappa)

    far = r >= 0.5 * np.max(r)
    far &= r > 0
    report = GapReport(sigma=0.0, tau=tau, C=0.0)
    if not np.any(far):
        report.violations.append(("no-far-samples", None))
        return report
    ratios = gap[far] / r[far] ** tau
    sigma = float(min(1.0, np.min(ratios)))
    if sigma <= 0:
        i = int(np.argmin(ratios))
        zbad = zs[far][i]
        report.violations.append(("nonpositive-growth", complex(zbad)))
        return report
    slack = sigma * r ** tau - gap
    C = float(max(0.0, np.max(slack)))
    report.sigma = sigma
    report.C = C
    bad = gap + C - sigma * r ** tau < -1e-9
    for i in np.nonzero(bad)[0]:
        report.violations.append(("gap-violation", complex(np.ravel(zs[i])[0])))
    return report


@dataclass
class ShiftReport:
    C: float
    bound: float
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _zeta_samples(R: float, k: int) -> np.ndarray:
    base = np.array([-R, -0.5 * R, 0.0, 0.5 * R, R]) if R > 0 else np.array([0.0])
    grids = np.meshgrid(*([base] * (2 * k)), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    return pts[:, :k] + 1j * pts[:, k:]


def verify_shift(w: WeightSpec, Ap: float, Bp: float, R: float, zs) -> ShiftReport:
    """Smallest empirical C with rho(z + zeta) <= rho'(z) + C, |zeta| <= R.

    Also evaluates the analytic bound alpha(R/(A'-A)) + 2 beta(R B B'/(B'-B))
    and reports any sampled pair exceeding it.
    """
    if not (Ap > w.A and Bp > w.B):
        raise PreconditionError("need A' > A and B' > B")
    if R < 0:
        raise PreconditionError("R must be nonnegative")
    zs = np.asarray(zs, dtype=complex)
    if zs.ndim == 1:
        zs = zs[:, None]
    wp = w.enlarged(Ap, Bp)
    zetas = _zeta_samples(R, w.k)
    bound = (eval_profile(w.alpha, R / (Ap - w.A))
             + 2.0 * eval_profile(w.beta, R * w.B * Bp / (Bp - w.B)))
    base = rho_eval(wp, zs)
    C = 0.0
    report = ShiftReport(C=0.0, bound=float(bound))
    for zeta in zetas:
        shifted = rho_eval(w, zs + zeta[None, :])
        excess = shifted - base
        m = float(np.max(excess))
        C = max(C, m)
        bad = excess > bound + 1e-9
        for i in np.nonzero(bad)[0]:
            report.violations.append((complex(np.ravel(zs[i])[0]),
                                      tuple(zeta)))
    report.C = max(0.0, C)
    return report
