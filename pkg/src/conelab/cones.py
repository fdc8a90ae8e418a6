"""Exact cone geometry in R^1 and R^2 under the uniform norm.

Cones are scale-invariant sets containing the origin.  For k = 1 a cone is
a subset of {negative ray, positive ray} plus the origin; for k = 2 it is a
finite union of angular arcs, each endpoint tagged open or closed, which
makes closures, complements, unions and intersections exact interval
arithmetic on the circle; for k > 2 only sampled directions are kept and
distances become upper estimates.

Distances use |x| = max_j |x_j| throughout.  The distance from a point to a
ray {t*u : t >= 0} is min over t >= 0 of max_j |x_j - t*u_j|, a convex
piecewise-linear function of t whose minimum sits at t = 0, at a kink
t = x_j/u_j, or at a crossing t = (x_i -+ x_j)/(u_i -+ u_j); evaluating g
at every such candidate is therefore exact.  A point outside a closed
sector is nearest to one of its two boundary rays, so sector distances
reduce to ray distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (ConesIntersect, ConfigError, DimensionMismatch,
                     DomainError, PreconditionError)

TWO_PI = 2.0 * math.pi
#: endpoint snap used by the interval arithmetic; arcs closer than this merge
ANGLE_SNAP = 1e-12
#: smallest dilation margin split_neighborhoods will try before giving up
MARGIN_FLOOR = 1e-6

_RAY_NAMES = ("positive", "negative")


def _eq(a: float, b: float) -> bool:
    return abs(a - b) <= ANGLE_SNAP


def _norm_angle(t: float) -> float:
    t = math.fmod(t, TWO_PI)
    if t < 0:
        t += TWO_PI
    if _eq(t, TWO_PI):
        t = 0.0
    return t


@dataclass(frozen=True)
class Arc:
    """Angular interval [lo, hi] with per-endpoint closed flags.

    Canonical: 0 <= lo < 2*pi and lo <= hi <= lo + 2*pi.  A width-2*pi arc
    with an open shared endpoint is the circle minus a single ray.
    """

    lo: float
    hi: float
    closed_lo: bool = True
    closed_hi: bool = True

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def is_empty(self) -> bool:
        return _eq(self.width, 0.0) and not (self.closed_lo and self.closed_hi)

    def contains_angle(self, theta: float) -> bool:
        d = _norm_angle(theta - self.lo)
        w = self.width
        if _eq(w, TWO_PI):
            return d > ANGLE_SNAP or self.closed_lo or self.closed_hi
        if _eq(d, 0.0):
            return self.closed_lo
        if _eq(d, w):
            return self.closed_hi
        return 0.0 < d < w


def arc(lo: float, hi: float, closed: bool = True) -> Arc:
    """Arc [lo, hi] with both endpoints closed (or both open)."""
    return Arc(float(lo), float(hi), closed, closed)


def _canonical_arcs(arcs) -> tuple[tuple[Arc, ...], bool]:
    """Merge an arbitrary arc collection; returns (arcs, covers_full_circle)."""
    # lift to the line [0, 2*pi], splitting wrap-around arcs at the seam
    segs = []
    for a in arcs:
        if a.is_empty():
            continue
        lo = _norm_angle(a.lo)
        w = min(a.width, TWO_PI)
        if w < 0:
            raise DomainError("arc with hi < lo")
        if _eq(w, TWO_PI):
            # full circle reached by any single arc of full width with a
            # closed endpoint; otherwise circle minus the ray at lo
            if a.closed_lo or a.closed_hi:
                return (), True
            segs.append((lo, lo + TWO_PI, False, False))
            continue
        hi = lo + w
        if hi <= TWO_PI + ANGLE_SNAP:
            segs.append((lo, min(hi, TWO_PI), a.closed_lo, a.closed_hi))
        else:
            segs.append((lo, TWO_PI, a.closed_lo, True))
            segs.append((0.0, hi - TWO_PI, True, a.closed_hi))
    if not segs:
        return (), False

    segs.sort(key=lambda s: (s[0], not s[2]))
    merged = []
    cur = list(segs[0])
    for nxt in segs[1:]:
        lo2, hi2, clo2, chi2 = nxt
        touching = _eq(lo2, cur[1]) and (cur[3] or clo2)
        if lo2 < cur[1] - ANGLE_SNAP or touching:
            if _eq(lo2, cur[0]):
                cur[2] = cur[2] or clo2
            if hi2 > cur[1] + ANGLE_SNAP:
                cur[1], cur[3] = hi2, chi2
            elif _eq(hi2, cur[1]):
                cur[3] = cur[3] or chi2
        else:
            merged.append(tuple(cur))
            cur = list(nxt)
    merged.append(tuple(cur))

    # re-join across the 0 == 2*pi seam
    if len(merged) >= 2:
        first, last = merged[0], merged[-1]
        if _eq(first[0], 0.0) and _eq(last[1], TWO_PI) and (last[3] or first[2]):
            merged = merged[1:-1] + [
                (last[0], first[1] + TWO_PI, last[2], first[3])]
    elif _eq(merged[0][0], 0.0) and _eq(merged[0][1], TWO_PI):
        lo, hi, clo, chi = merged[0]
        if clo or chi:
            return (), True
        merged = [(0.0, TWO_PI, False, False)]

    out = []
    for lo, hi, clo, chi in merged:
        if hi - lo >= TWO_PI - ANGLE_SNAP and (clo or chi):
            return (), True
        out.append(Arc(_norm_angle(lo), _norm_angle(lo) + min(hi - lo, TWO_PI),
                       clo, chi))
    out.sort(key=lambda a: a.lo)
    return tuple(out), False


@dataclass(frozen=True)
class Cone:
    """A cone in R^k; see the module docstring for the representations."""

    dim: int
    rays: frozenset = frozenset()
    arcs: tuple = ()
    directions: tuple = ()
    directions_closed: bool = True
    full: bool = False

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError("dim must be >= 1")
        if self.dim == 1:
            bad = set(self.rays) - set(_RAY_NAMES)
            if bad:
                raise ConfigError(f"unknown k=1 rays {sorted(bad)}")
            if set(self.rays) == set(_RAY_NAMES):
                object.__setattr__(self, "rays", frozenset())
                object.__setattr__(self, "full", True)
        elif self.dim == 2 and self.arcs and not self.full:
            arcs, is_full = _canonical_arcs(self.arcs)
            object.__setattr__(self, "arcs", arcs)
            object.__setattr__(self, "full", is_full)
        if self.full:
            object.__setattr__(self, "rays", frozenset())
            object.__setattr__(self, "arcs", ())
            object.__setattr__(self, "directions", ())

    @property
    def degenerate(self) -> bool:
        """True for the cone {0} (empty representation)."""
        return not self.full and not self.rays and not self.arcs \
            and not self.directions

    # -- constructors -------------------------------------------------
    @staticmethod
    def degenerate_cone(dim: int) -> "Cone":
        return Cone(dim=dim)

    @staticmethod
    def full_space(dim: int) -> "Cone":
        return Cone(dim=dim, full=True)

    @staticmethod
    def half_line(which: str) -> "Cone":
        return Cone(dim=1, rays=frozenset({which}))

    @staticmethod
    def from_arcs(arcs, dim: int = 2) -> "Cone":
        if dim != 2:
            raise DomainError("arc cones are two-dimensional")
        return Cone(dim=2, arcs=tuple(arcs))

    @staticmethod
    def ray2(angle: float, closed: bool = True) -> "Cone":
        return Cone(dim=2, arcs=(arc(angle, angle, closed),))

    @staticmethod
    def from_directions(dim: int, dirs, closed: bool = True) -> "Cone":
        if dim <= 2:
            raise DomainError("sampled cones are for k > 2")
        out = []
        for d in dirs:
            v = np.asarray(d, dtype=float)
            if v.shape != (dim,):
                raise DimensionMismatch("direction has wrong length")
            m = np.max(np.abs(v))
            if m == 0:
                raise DomainError("zero vector is not a direction")
            out.append(tuple(v / m))
        return Cone(dim=dim, directions=tuple(out), directions_closed=closed)


# ---------------------------------------------------------------------------
# membership and distance
# ---------------------------------------------------------------------------

def _check_point(U: Cone, x) -> np.ndarray:
    pts = np.asarray(x, dtype=float)
    squeeze = pts.ndim == 1
    if squeeze:
        pts = pts[None, :]
    if pts.ndim != 2 or pts.shape[1] != U.dim:
        raise DimensionMismatch(
            f"point of dim {pts.shape[-1] if pts.ndim else 0} vs cone dim {U.dim}")
    return pts, squeeze


def cone_membership(U: Cone, x) -> bool:
    """True iff x lies in U; the origin belongs to every cone."""
    pts, squeeze = _check_point(U, x)
    out = np.zeros(len(pts), dtype=bool)
    zero = np.all(pts == 0.0, axis=1)
    out[zero] = True
    rest = ~zero
    if U.full:
        out[rest] = True
    elif U.degenerate:
        pass
    elif U.dim == 1:
        v = pts[rest, 0]
        ok = np.zeros(v.shape, dtype=bool)
        if "positive" in U.rays:
            ok |= v > 0
        if "negative" in U.rays:
            ok |= v < 0
        out[rest] = ok
    elif U.dim == 2:
        idx = np.nonzero(rest)[0]
        for i in idx:
            theta = math.atan2(pts[i, 1], pts[i, 0]) % TWO_PI
            out[i] = any(a.contains_angle(theta) for a in U.arcs)
    else:
        idx = np.nonzero(rest)[0]
        for i in idx:
            v = pts[i] / np.max(np.abs(pts[i]))
            out[i] = any(np.max(np.abs(v - np.asarray(d))) <= 1e-12
                         for d in U.directions)
    if squeeze:
        return bool(out[0])
    return out


def _ray_distance_many(pts: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Exact min over t >= 0 of max_j |x_j - t*u_j| for each row x of pts."""
    n, k = pts.shape
    cands = [np.zeros(n)]
    for j in range(k):
        if abs(u[j]) > 1e-300:
            cands.append(pts[:, j] / u[j])
    for i in range(k):
        for j in range(i + 1, k):
            for sgn in (1.0, -1.0):
                den = u[i] + sgn * u[j]
                if abs(den) > 1e-300:
                    cands.append((pts[:, i] + sgn * pts[:, j]) / den)
    t = np.stack(cands, axis=1)
    t = np.where(t > 0.0, t, 0.0)
    g = np.max(np.abs(pts[:, None, :] - t[:, :, None] * u[None, None, :]), axis=2)
    return np.min(g, axis=1)


def _boundary_ray_angles(U: Cone) -> list[float]:
    angles = []
    for a in U.arcs:
        angles.append(_norm_angle(a.lo))
        angles.append(_norm_angle(a.hi))
    out = []
    for t in angles:
        if not any(_eq(t, s) for s in out):
            out.append(t)
    return out


def cone_distance(U: Cone, x):
    """Distance delta_U(x) = inf over x' in U of max_j |x_j - x'_j|.

    Exact for k <= 2; for k > 2 an upper estimate using the sampled
    directions (min over sampled rays and the origin).  Homogeneous of
    degree one and 1-Lipschitz in the uniform norm.
    """
    pts, squeeze = _check_point(U, x)
    out = np.zeros(len(pts))
    if U.full:
        pass
    elif U.degenerate:
        out = np.max(np.abs(pts), axis=1)
    elif U.dim == 1:
        v = pts[:, 0]
        if U.rays == {"positive"}:
            out = np.maximum(-v, 0.0)
        elif U.rays == {"negative"}:
            out = np.maximum(v, 0.0)
        else:  # pragma: no cover - degenerate/full already handled
            raise DomainError("unreachable ray set")
    elif U.dim == 2:
        if any(a.width >= TWO_PI - ANGLE_SNAP for a in U.arcs):
            pass  # closure is the whole plane
        else:
            theta = np.mod(np.arctan2(pts[:, 1], pts[:, 0]), TWO_PI)
            member = np.all(pts == 0.0, axis=1)
            for a in U.arcs:
                d = np.mod(theta - a.lo, TWO_PI)
                member |= d <= a.width + ANGLE_SNAP
                member |= d >= TWO_PI - ANGLE_SNAP
            idx = ~member
            if np.any(idx):
                sub = pts[idx]
                best = np.full(len(sub), np.inf)
                for ang in _boundary_ray_angles(U):
                    u = np.array([math.cos(ang), math.sin(ang)])
                    best = np.minimum(best, _ray_distance_many(sub, u))
                out[idx] = best
    else:
        best = np.max(np.abs(pts), axis=1)  # the origin is always available
        for d in U.directions:
            best = np.minimum(best, _ray_distance_many(pts, np.asarray(d)))
        out = best
    if squeeze:
        return float(out[0])
    return out


# ---------------------------------------------------------------------------
# set arithmetic
# ---------------------------------------------------------------------------

def _require_same_dim(A: Cone, B: Cone):
    if A.dim != B.dim:
        raise DimensionMismatch("cones of different dimension")


def closure(U: Cone) -> Cone:
    if U.dim == 2 and U.arcs:
        return Cone(dim=2, arcs=tuple(Arc(a.lo, a.hi, True, True) for a in U.arcs))
    if U.dim > 2:
        return Cone(dim=U.dim, directions=U.directions, directions_closed=True)
    return U


def is_closed(U: Cone) -> bool:
    if U.full or U.degenerate or U.dim == 1:
        return True
    if U.dim == 2:
        return all(a.closed_lo and a.closed_hi for a in U.arcs)
    return U.directions_closed


def is_projection_open(U: Cone) -> bool:
    """Open projection on the sphere; {0} has an open (empty) projection."""
    if U.full or U.degenerate:
        return True
    if U.dim == 1:
        return True  # S_0 is discrete
    if U.dim == 2:
        return all(not a.closed_lo and not a.closed_hi for a in U.arcs)
    return not U.directions_closed


def cone_union(A: Cone, B: Cone) -> Cone:
    _require_same_dim(A, B)
    if A.full or B.full:
        return Cone.full_space(A.dim)
    if A.degenerate:
        return B
    if B.degenerate:
        return A
    if A.dim == 1:
        return Cone(dim=1, rays=A.rays | B.rays)
    if A.dim == 2:
        return Cone(dim=2, arcs=A.arcs + B.arcs)
    return Cone(dim=A.dim, directions=tuple(dict.fromkeys(A.directions + B.directions)),
                directions_closed=A.directions_closed and B.directions_closed)


def _line_intervals(U: Cone):
    """Arcs lifted to [0, 4*pi) line intervals (wrap kept, not split)."""
    return [(a.lo, a.hi, a.closed_lo, a.closed_hi) for a in U.arcs]


def _intersect_intervals(i1, i2):
    lo1, hi1, c1l, c1h = i1
    lo2, hi2, c2l, c2h = i2

    def flag_at(t, lo, hi, cl, ch):
        if _eq(t, lo) and _eq(t, hi):
            return cl and ch
        if _eq(t, lo):
            return cl
        if _eq(t, hi):
            return ch
        return True

    lo = max(lo1, lo2)
    hi = min(hi1, hi2)
    if lo > hi + ANGLE_SNAP:
        return None
    clo = flag_at(lo, lo1, hi1, c1l, c1h) and flag_at(lo, lo2, hi2, c2l, c2h)
    chi = flag_at(hi, lo1, hi1, c1l, c1h) and flag_at(hi, lo2, hi2, c2l, c2h)
    if _eq(lo, hi) and not (clo and chi):
        return None
    return (lo, min(hi, lo + TWO_PI), clo, chi)


def cone_intersection(A: Cone, B: Cone) -> Cone:
    """Exact intersection for k <= 2."""
    _require_same_dim(A, B)
    if A.full:
        return B
    if B.full:
        return A
    if A.degenerate or B.degenerate:
        return Cone.degenerate_cone(A.dim)
    if A.dim == 1:
        return Cone(dim=1, rays=A.rays & B.rays)
    if A.dim > 2:
        raise DomainError("exact intersection requires k <= 2")
    pieces = []
    for i1 in _line_intervals(A):
        for i2 in _line_intervals(B):
            for shift in (-TWO_PI, 0.0, TWO_PI):
                j2 = (i2[0] + shift, i2[1] + shift, i2[2], i2[3])
                got = _intersect_intervals(i1, j2)
                if got is not None:
                    pieces.append(Arc(_norm_angle(got[0]),
                                      _norm_angle(got[0]) + (got[1] - got[0]),
                                      got[2], got[3]))
    return Cone(dim=2, arcs=tuple(pieces))


def cone_complement(U: Cone) -> Cone:
    """(R^k minus U) plus the origin; exact for k <= 2."""
    if U.full:
        return Cone.degenerate_cone(U.dim)
    if U.degenerate:
        return Cone.full_space(U.dim)
    if U.dim == 1:
        return Cone(dim=1, rays=frozenset(_RAY_NAMES) - U.rays)
    if U.dim > 2:
        raise DomainError("exact complement requires k <= 2")
    arcs = sorted(U.arcs, key=lambda a: a.lo)
    if len(arcs) == 1:
        a = arcs[0]
        gaps = [Arc(_norm_angle(a.hi),
                    _norm_angle(a.hi) + (TWO_PI - a.width),
                    not a.closed_hi, not a.closed_lo)]
    else:
        gaps = []
        for cur, nxt in zip(arcs, arcs[1:] + arcs[:1]):
            lo = cur.hi  # may exceed 2*pi for a wrap arc
            hi = nxt.lo
            while hi < lo - ANGLE_SNAP:
                hi += TWO_PI
            gaps.append(Arc(_norm_angle(lo), _norm_angle(lo) + (hi - lo),
                            not cur.closed_hi, not nxt.closed_lo))
    return Cone(dim=2, arcs=tuple(gaps))


def cone_contains(A: Cone, B: Cone) -> bool:
    """True iff A contains B as a set; exact for k <= 2."""
    _require_same_dim(A, B)
    if B.degenerate or A.full:
        return True
    if A.degenerate:
        return B.degenerate
    if B.full:
        return A.full
    if A.dim == 1:
        return B.rays <= A.rays
    if A.dim > 2:
        return set(B.directions) <= set(A.directions)
    leftover = cone_intersection(B, cone_complement(A))
    return leftover.degenerate


def cones_equal(A: Cone, B: Cone) -> bool:
    return cone_contains(A, B) and cone_contains(B, A)


# ---------------------------------------------------------------------------
# conic neighborhoods, separation, splitting
# ---------------------------------------------------------------------------

def conic_neighborhood(U: Cone, margin: float) -> Cone:
    """Dilate U into a cone with open projection containing it.

    {0} is a conic neighborhood of itself and is returned unchanged; at
    k = 1 every cone already has an open projection.
    """
    if not 0.0 < margin < math.pi:
        raise DomainError("margin must lie in (0, pi)")
    if U.dim > 2:
        raise DomainError("conic neighborhoods require k <= 2")
    if U.degenerate or U.full or U.dim == 1:
        return U
    dilated = [Arc(a.lo - margin, a.lo - margin + min(a.width + 2 * margin, TWO_PI),
                   False, False) for a in U.arcs]
    return Cone(dim=2, arcs=tuple(dilated))


def _square_point(angle: float) -> np.ndarray:
    u = np.array([math.cos(angle), math.sin(angle)])
    return u / np.max(np.abs(u))


def _corner_split(lo: float, hi: float):
    """Split [lo, hi] at the square-corner angles pi/4 + m*pi/2."""
    m0 = math.ceil((lo - math.pi / 4) / (math.pi / 2))
    cuts = []
    m = m0
    while True:
        c = math.pi / 4 + m * math.pi / 2
        if c >= hi - ANGLE_SNAP:
            break
        if c > lo + ANGLE_SNAP:
            cuts.append(c)
        m += 1
    pts = [lo] + cuts + [hi]
    return list(zip(pts[:-1], pts[1:]))


def _segment_ray_min(P: np.ndarray, Q: np.ndarray, u: np.ndarray) -> float:
    """Exact min over the segment [P, Q] and t >= 0 of max(|f1|, |f2|),
    f_j(s, t) = P_j + s*(Q_j - P_j) - t*u_j.

    The objective is convex piecewise linear in (s, t); its minimum over
    the strip [0, 1] x [0, inf) is attained where two of the kink or
    boundary lines meet, so enumerating all pairwise intersections of
    {f1 = 0, f2 = 0, f1 = f2, f1 = -f2, s = 0, s = 1, t = 0} is exact.
    """
    d = Q - P
    lines = [
        (d[0], -u[0], P[0]),
        (d[1], -u[1], P[1]),
        (d[0] - d[1], -(u[0] - u[1]), P[0] - P[1]),
        (d[0] + d[1], -(u[0] + u[1]), P[0] + P[1]),
        (1.0, 0.0, 0.0),
        (1.0, 0.0, -1.0),
        (0.0, 1.0, 0.0),
    ]
    best = math.inf
    npts = len(lines)
    for i in range(npts):
        a1, b1, c1 = lines[i]
        for j in range(i + 1, npts):
            a2, b2, c2 = lines[j]
            det = a1 * b2 - a2 * b1
            if abs(det) < 1e-14:
                continue
            s = (-c1 * b2 + c2 * b1) / det
            t = (-a1 * c2 + a2 * c1) / det
            if -1e-12 <= s <= 1.0 + 1e-12 and t >= -1e-12:
                s = min(max(s, 0.0), 1.0)
                t = max(t, 0.0)
                x = P + s * d
                val = max(abs(x[0] - t * u[0]), abs(x[1] - t * u[1]))
                best = min(best, val)
    return best


def separation_constant(K1: Cone, K2: Cone) -> float:
    """theta = inf over x in K2 with |x| = 1 of delta_{K1}(x); exact, k <= 2.

    Requires closed cones meeting only at the origin.  delta_{K1}(x) >=
    theta*|x| then holds for every x in K2 by homogeneity.  K2 = {0}
    admits every positive theta; 1 is returned by convention.
    """
    _require_same_dim(K1, K2)
    if K1.dim > 2:
        raise DomainError("separation constants require k <= 2")
    if not (is_closed(K1) and is_closed(K2)):
        raise PreconditionError("separation requires closed cones")
    if K2.degenerate:
        return 1.0
    inter = cone_intersection(K1, K2)
    if not inter.degenerate:
        raise ConesIntersect("cones share a ray; no positive separation")
    if K1.degenerate:
        return 1.0  # delta_{0}(x) = |x| = 1 on the unit sphere

    if K1.dim == 1:
        best = math.inf
        if "positive" in K2.rays:
            best = min(best, cone_distance(K1, np.array([1.0])))
        if "negative" in K2.rays:
            best = min(best, cone_distance(K1, np.array([-1.0])))
        return float(best)

    rays = [np.array([math.cos(t), math.sin(t)])
            for t in _boundary_ray_angles(K1)]
    best = math.inf
    for a in K2.arcs:
        for lo, hi in _corner_split(a.lo, a.hi):
            P, Q = _square_point(lo), _square_point(hi)
            if np.max(np.abs(P - Q)) <= 1e-14:
                best = min(best, cone_distance(K1, P))
                continue
            for u in rays:
                best = min(best, _segment_ray_min(P, Q, u))
    if not best > 0:
        raise ConesIntersect("separation degenerated to zero")
    return float(best)


def split_neighborhoods(K1: Cone, K2: Cone, W: Cone,
                        start_margin: float = math.pi / 3):
    """Conic neighborhoods V1 of K1 and V2 of K2 with cl(V1) & cl(V2) in W.

    The dilation margin is halved until arc interval arithmetic verifies
    the closure condition exactly; failure below MARGIN_FLOOR raises.
    """
    _require_same_dim(K1, K2)
    _require_same_dim(K1, W)
    if K1.dim > 2:
        raise DomainError("split_neighborhoods requires k <= 2")
    if not (is_closed(K1) and is_closed(K2)):
        raise PreconditionError("split_neighborhoods requires closed cones")
    inter = cone_intersection(K1, K2)
    if not is_projection_open(W):
        raise PreconditionError("W must have an open projection")
    if not cone_contains(W, inter):
        raise PreconditionError("W must contain the intersection of the cones")

    if K1.dim == 1:
        V1, V2 = K1, K2
        meet = cone_intersection(closure(V1), closure(V2))
        if not cone_contains(W, meet):  # pragma: no cover - impossible for k=1
            raise PreconditionError("k=1 closures meet outside W")
        return V1, V2

    margin = start_margin
    while margin >= MARGIN_FLOOR:
        V1 = conic_neighborhood(K1, margin)
        V2 = conic_neighborhood(K2, margin)
        meet = cone_intersection(closure(V1), closure(V2))
        if cone_contains(W, meet):
            return V1, V2
        margin *= 0.5
    raise PreconditionError(
        f"no dilation margin down to {MARGIN_FLOOR} rad separates the cones inside W")


# ---------------------------------------------------------------------------
# sampling and serialization
# ---------------------------------------------------------------------------

def sample_points(U: Cone, n: int, rng: np.random.Generator,
                  rmin: float = 0.1, rmax: float = 10.0) -> np.ndarray:
    """Random points of U (excluding the origin when U is nondegenerate)."""
    radii = rng.uniform(rmin, rmax, size=n)
    if U.degenerate:
        return np.zeros((n, U.dim))
    if U.dim == 1:
        if U.full:
            signs = rng.choice([-1.0, 1.0], size=n)
        else:
            opts = [1.0 if r == "positive" else -1.0 for r in sorted(U.rays)]
            signs = rng.choice(opts, size=n)
        return (radii * signs)[:, None]
    if U.dim == 2:
        if U.full:
            angles = rng.uniform(0.0, TWO_PI, size=n)
        else:
            widths = np.array([max(a.width, 0.0) for a in U.arcs])
            if widths.sum() <= 0:
                probs = np.full(len(U.arcs), 1.0 / len(U.arcs))
            else:
                probs = widths / widths.sum()
            which = rng.choice(len(U.arcs), size=n, p=probs)
            angles = np.array([
                U.arcs[i].lo + rng.uniform(0.0, 1.0) * U.arcs[i].width
                for i in which])
        pts = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        return pts * radii[:, None]
    dirs = np.asarray(U.directions)
    which = rng.integers(0, len(dirs), size=n)
    return dirs[which] * radii[:, None]


def cone_to_text(U: Cone) -> str:
    """Structured-text block: dim plus rays / arcs in radians with flags."""
    lines = [f"dim = {U.dim}"]
    if U.full:
        lines.append("full = true")
    elif U.dim == 1:
        names = ", ".join(f'"{r}"' for r in sorted(U.rays))
        lines.append(f"rays = [{names}]")
    elif U.dim == 2:
        rows = ", ".join(
            f"[{a.lo!r}, {a.hi!r}, {'true' if a.closed_lo else 'false'}, "
            f"{'true' if a.closed_hi else 'false'}]" for a in U.arcs)
        lines.append(f"arcs = [{rows}]")
    else:
        rows = ", ".join("[" + ", ".join(repr(c) for c in d) + "]"
                         for d in U.directions)
        lines.append(f"directions = [{rows}]")
        lines.append(f"directions_closed = {'true' if U.directions_closed else 'false'}")
    return "\n".join(lines) + "\n"


def cone_from_dict(d: dict) -> Cone:
    try:
        dim = int(d["dim"])
    except KeyError as exc:
        raise ConfigError("cone block needs a 'dim' key") from exc
    if d.get("full"):
        return Cone.full_space(dim)
    if dim == 1:
        return Cone(dim=1, rays=frozenset(d.get("rays", ())))
    if dim == 2:
        arcs = []
        for row in d.get("arcs", ()):
            if len(row) == 3 and isinstance(row[2], str):
                closed = row[2] == "closed"
                arcs.append(Arc(float(row[0]), float(row[1]), closed, closed))
            elif len(row) == 4:
                arcs.append(Arc(float(row[0]), float(row[1]),
                                bool(row[2]), bool(row[3])))
            elif len(row) == 2:
                arcs.append(arc(float(row[0]), float(row[1])))
            else:
                raise ConfigError(f"bad arc row {row!r}")
        return Cone(dim=2, arcs=tuple(arcs))
    return Cone.from_directions(dim, d.get("directions", ()),
                                closed=bool(d.get("directions_closed", True)))


def cone_from_text(text: str) -> Cone:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        data = tomllib.loads(text)
    except Exception as exc:
        raise ConfigError(f"bad cone block: {exc}") from exc
    return cone_from_dict(data)
