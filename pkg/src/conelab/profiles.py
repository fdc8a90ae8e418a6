"""Index functions for the weighted spaces and their admissibility checks.

A profile is a continuous, nondecreasing, unbounded function on ``s >= 0``.
The pair used throughout carries two side conditions: the imaginary-direction
profile must be convex, and the real-direction profile must have
``value(s)/s**kappa`` nondecreasing beyond a threshold ``s0``.  Both are
verified on sample grids with relative tolerance ``PROFILE_TOL``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConfigError, DomainError

PROFILE_TOL = 1e-10

_UNBOUNDED_PROBE = (1.0, 1.0e6)
_UNBOUNDED_MARGIN = 10.0


@dataclass(frozen=True)
class Profile:
    """A power law ``s**exponent`` or a piecewise-linear table of nodes.

    ``kappa`` and ``s0`` carry the eventual-monotonicity condition on
    ``value(s)/s**kappa``; ``convex`` marks profiles promised convex.
    Table profiles extrapolate linearly with the slope of the nearest
    segment.
    """

    kind: str
    exponent: float = 1.0
    kappa: float = 1.0
    s0: float = 0.0
    convex: bool = False
    table: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.kind not in ("power", "custom-table"):
            raise ConfigError(f"unknown profile kind {self.kind!r}")
        if self.kind == "power" and self.exponent <= 0:
            raise ConfigError("power profile needs a positive exponent")
        if self.kappa <= 0:
            raise ConfigError("kappa must be positive")
        if self.s0 < 0:
            raise ConfigError("s0 must be nonnegative")
        if self.kind == "custom-table":
            if not self.table or len(self.table) < 2:
                raise ConfigError("table profile needs at least two nodes")
            s = [node[0] for node in self.table]
            if any(b <= a for a, b in zip(s, s[1:])):
                raise ConfigError("table nodes must be strictly increasing in s")
            if s[0] < 0:
                raise ConfigError("table nodes must have s >= 0")

    def __call__(self, s):
        return eval_profile(self, s)


def power_profile(exponent: float, kappa: float | None = None, s0: float = 0.0,
                  convex: bool | None = None) -> Profile:
    """Power-law profile with sensible admissibility metadata defaults."""
    if kappa is None:
        kappa = exponent
    if convex is None:
        convex = exponent >= 1.0
    return Profile(kind="power", exponent=float(exponent), kappa=float(kappa),
                   s0=float(s0), convex=bool(convex))


def table_profile(nodes: Sequence[tuple[float, float]], kappa: float = 1.0,
                  s0: float = 0.0, convex: bool = False) -> Profile:
    return Profile(kind="custom-table", kappa=float(kappa), s0=float(s0),
                   convex=bool(convex), table=tuple((float(a), float(b)) for a, b in nodes))


#: canonical instance used across the experiments: alpha(s) = beta(s) = s**2
CANONICAL_PROFILE = power_profile(2.0, kappa=2.0)


def eval_profile(p: Profile, s):
    """Evaluate ``p`` at ``s >= 0`` (scalar or array).

    Power profiles are exact; table profiles interpolate linearly between
    nodes and extrapolate with the boundary segment slopes.
    """
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0):
        raise DomainError("profile argument must be nonnegative")
    if p.kind == "power":
        out = arr ** p.exponent
    else:
        xs = np.array([node[0] for node in p.table])
        ys = np.array([node[1] for node in p.table])
        out = np.interp(arr, xs, ys)
        lo_slope = (ys[1] - ys[0]) / (xs[1] - xs[0])
        hi_slope = (ys[-1] - ys[-2]) / (xs[-1] - xs[-2])
        below = arr < xs[0]
        above = arr > xs[-1]
        out = np.where(below, ys[0] + (arr - xs[0]) * lo_slope, out)
        out = np.where(above, ys[-1] + (arr - xs[-1]) * hi_slope, out)
    if np.ndim(s) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class Violation:
    condition: str
    location: tuple
    magnitude: float

    def __str__(self):
        loc = ", ".join(f"{v:.6g}" for v in self.location)
        return f"{self.condition} at ({loc}): off by {self.magnitude:.3e}"


@dataclass
class ProfileReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, condition, location, magnitude):
        self.violations.append(Violation(condition, tuple(location), float(magnitude)))


def _tol(*values) -> float:
    scale = max([1.0] + [abs(v) for v in values])
    return PROFILE_TOL * scale


def _check_monotone(report, name, p, grid):
    vals = eval_profile(p, grid)
    for i in range(len(grid) - 1):
        if vals[i + 1] < vals[i] - _tol(vals[i], vals[i + 1]):
            report.add(f"{name}-monotone", (grid[i], grid[i + 1]),
                       vals[i] - vals[i + 1])


def _check_unbounded(report, name, p):
    lo, hi = _UNBOUNDED_PROBE
    v_lo, v_hi = eval_profile(p, lo), eval_profile(p, hi)
    if not v_hi > v_lo + _UNBOUNDED_MARGIN:
        report.add(f"{name}-unbounded", (hi,), (v_lo + _UNBOUNDED_MARGIN) - v_hi)


def _check_midpoint_convex(report, name, p, grid):
    # all pairs of a thinned grid; O(n^2) kept small
    pts = np.asarray(grid, dtype=float)
    if len(pts) > 60:
        pts = pts[np.linspace(0, len(pts) - 1, 60).astype(int)]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            s, t = pts[i], pts[j]
            mid = eval_profile(p, 0.5 * (s + t))
            avg = 0.5 * (eval_profile(p, s) + eval_profile(p, t))
            if mid > avg + _tol(mid, avg):
                report.add(f"{name}-convex", (s, t), mid - avg)


def _check_kappa_monotone(report, name, p, grid):
    pts = np.asarray(grid, dtype=float)
    pts = pts[pts >= max(p.s0, 1e-300)]
    pts = pts[pts > 0]
    if len(pts) < 2:
        return
    ratio = eval_profile(p, pts) / pts ** p.kappa
    for i in range(len(pts) - 1):
        if ratio[i + 1] < ratio[i] - _tol(ratio[i], ratio[i + 1]):
            report.add(f"{name}-kappa-monotone", (pts[i], pts[i + 1]),
                       ratio[i] - ratio[i + 1])


def verify_profile(alpha: Profile, beta: Profile, grid) -> ProfileReport:
    """Check the admissibility of a profile pair on a sample grid.

    The report is empty exactly when, within tolerance at the sampled
    points, both profiles are nondecreasing and unbounded, ``beta`` is
    midpoint convex, ``alpha(s)/s**alpha.kappa`` is nondecreasing for
    ``s >= alpha.s0``, and the analogous ratio condition holds for
    ``beta``.  ``alpha.convex`` additionally switches on the midpoint
    test for ``alpha``.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("sample grid must be nonempty")
    if np.any(np.diff(grid) < 0):
        raise DomainError("sample grid must be sorted")
    if np.any(grid < 0):
        raise DomainError("sample grid must be nonnegative")

    report = ProfileReport()
    for name, p in (("alpha", alpha), ("beta", beta)):
        _check_monotone(report, name, p, grid)
        _check_unbounded(report, name, p)
        _check_kappa_monotone(report, name, p, grid)
    _check_midpoint_convex(report, "beta", beta, grid)
    if alpha.convex:
        _check_midpoint_convex(report, "alpha", alpha, grid)
    return report


def profile_to_text(p: Profile) -> str:
    """Structured-text block: kind, exponent, kappa, s0, convex (and table)."""
    lines = [
        f'kind = "{p.kind}"',
        f"exponent = {p.exponent!r}",
        f"kappa = {p.kappa!r}",
        f"s0 = {p.s0!r}",
        f"convex = {'true' if p.convex else 'false'}",
    ]
    if p.table is not None:
        rows = ", ".join(f"[{a!r}, {b!r}]" for a, b in p.table)
        lines.append(f"table = [{rows}]")
    return "\n".join(lines) + "\n"


def profile_from_dict(d: dict) -> Profile:
    try:
        kind = d["kind"]
    except KeyError as exc:
        raise ConfigError("profile block needs a 'kind' key") from exc
    table = d.get("table")
    if table is not None:
        table = tuple((float(a), float(b)) for a, b in table)
    return Profile(
        kind=kind,
        exponent=float(d.get("exponent", 1.0)),
        kappa=float(d.get("kappa", d.get("exponent", 1.0))),
        s0=float(d.get("s0", 0.0)),
        convex=bool(d.get("convex", False)),
        table=table,
    )


def profile_from_text(text: str) -> Profile:
    try:
        import tomllib  # py >= 3.11
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        data = tomllib.loads(text)
    except Exception as exc:
        raise ConfigError(f"bad profile block: {exc}") from exc
    return profile_from_dict(data)


def is_concave_power(p: Profile) -> bool:
    """True for power profiles with exponent <= 1 (used for the A' = A path)."""
    return p.kind == "power" and p.exponent <= 1.0
