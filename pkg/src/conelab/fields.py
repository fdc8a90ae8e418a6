"""Rectangular grids on C^k = R^{2k} and immutable sampled complex fields.

Axis convention: a k-variable complex grid has 2k real axes ordered
(x_1, ..., x_k, y_1, ..., y_k).  Points are enumerated row-major (last
axis fastest), matching ``numpy.meshgrid(..., indexing="ij")``.
"""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, DomainError

DEFAULT_BUDGET = 2 ** 24

_BINARY_MAGIC = b"CLF1"


@dataclass(frozen=True)
class GridSpec:
    """Per-axis bounds and point counts for a uniform rectangular grid."""

    lo: tuple
    hi: tuple
    counts: tuple
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(float(v) for v in self.lo))
        object.__setattr__(self, "hi", tuple(float(v) for v in self.hi))
        object.__setattr__(self, "counts", tuple(int(n) for n in self.counts))
        if not (len(self.lo) == len(self.hi) == len(self.counts)):
            raise DomainError("lo/hi/counts must have equal lengths")
        if any(h <= l for l, h in zip(self.lo, self.hi)):
            raise DomainError("grid bounds must be ordered lo < hi")
        if any(n < 2 for n in self.counts):
            raise DomainError("each axis needs at least 2 points")

    @property
    def naxes(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        n = 1
        for c in self.counts:
            n *= c
        return n

    @property
    def steps(self) -> tuple:
        return tuple((h - l) / (n - 1)
                     for l, h, n in zip(self.lo, self.hi, self.counts))


def make_grid(spec: GridSpec) -> list[np.ndarray]:
    """Per-axis coordinate arrays (endpoints included)."""
    if spec.total > spec.budget:
        raise BudgetExceeded(
            f"grid of {spec.total} points exceeds budget {spec.budget}")
    return [np.linspace(l, h, n)
            for l, h, n in zip(spec.lo, spec.hi, spec.counts)]


def grid_points(spec: GridSpec) -> np.ndarray:
    """All grid points as an (N, naxes) array in row-major order."""
    axes = make_grid(spec)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def midpoint_grid(spec: GridSpec) -> tuple[list[np.ndarray], float]:
    """Cell-center coordinates plus the cell volume, for midpoint quadrature.

    Each axis with n points contributes n - 1 cells.
    """
    if spec.total > spec.budget:
        raise BudgetExceeded(
            f"grid of {spec.total} points exceeds budget {spec.budget}")
    axes = []
    vol = 1.0
    for l, h, n in zip(spec.lo, spec.hi, spec.counts):
        step = (h - l) / (n - 1)
        axes.append(l + step * (0.5 + np.arange(n - 1)))
        vol *= step
    return axes, vol


def complex_grid(spec: GridSpec) -> np.ndarray:
    """Grid points as complex vectors, shape (N, k); needs naxes = 2k."""
    if spec.naxes % 2 != 0:
        raise DimensionMismatch("complex grids need an even number of axes")
    k = spec.naxes // 2
    pts = grid_points(spec)
    return pts[:, :k] + 1j * pts[:, k:]


@dataclass(frozen=True)
class SampledField:
    """Complex samples of a function of k complex variables on a grid."""

    grid: GridSpec
    values: np.ndarray
    meta: str = ""

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).reshape(-1)
        if vals.size != self.grid.total:
            raise DimensionMismatch(
                f"{vals.size} values for a grid of {self.grid.total} points")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def k(self) -> int:
        if self.grid.naxes % 2 != 0:
            raise DimensionMismatch("field grid does not represent C^k")
        return self.grid.naxes // 2

    def as_array(self) -> np.ndarray:
        """Values reshaped to the grid shape (read-only view)."""
        return self.values.reshape(self.grid.counts)

    def points(self) -> np.ndarray:
        return grid_points(self.grid)

    def complex_points(self) -> np.ndarray:
        return complex_grid(self.grid)


def field_from_function(spec: GridSpec, fn, meta: str = "") -> SampledField:
    """Sample ``fn`` over the complex grid of ``spec``."""
    z = complex_grid(spec)
    vals = np.asarray(fn(z), dtype=complex).reshape(-1)
    return SampledField(grid=spec, values=vals, meta=meta)


# ---------------------------------------------------------------------------
# persistence: CSV and a flat binary with a 16-byte header
# ---------------------------------------------------------------------------

def save_field_csv(field: SampledField, path) -> None:
    """Columns: one coordinate per axis, then re, im."""
    pts = field.points()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"c{i}" for i in range(field.grid.naxes)] + ["re", "im"])
        for row, v in zip(pts, field.values):
            writer.writerow([repr(c) for c in row] + [repr(v.real), repr(v.imag)])


def load_field_csv(path, grid: GridSpec, meta: str = "") -> SampledField:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        ncoord = len(header) - 2
        if ncoord != grid.naxes:
            raise DimensionMismatch("CSV axis count does not match the grid")
        vals = [complex(float(row[-2]), float(row[-1])) for row in reader]
    return SampledField(grid=grid, values=np.array(vals), meta=meta)


def save_field_binary(field: SampledField, path) -> None:
    """Header: magic (4s), version (u16), naxes (u16), count (u64) = 16 bytes.

    Followed by naxes blocks of (lo: f64, hi: f64, count: u32), then the
    values as little-endian complex128.
    """
    with open(path, "wb") as fh:
        fh.write(struct.pack("<4sHHQ", _BINARY_MAGIC, 1, field.grid.naxes,
                             field.grid.total))
        for l, h, n in zip(field.grid.lo, field.grid.hi, field.grid.counts):
            fh.write(struct.pack("<ddI", l, h, n))
        fh.write(np.ascontiguousarray(field.values, dtype="<c16").tobytes())


def load_field_binary(path, meta: str = "") -> SampledField:
    with open(path, "rb") as fh:
        magic, version, naxes, count = struct.unpack("<4sHHQ", fh.read(16))
        if magic != _BINARY_MAGIC:
            raise DomainError(f"not a field file (magic {magic!r})")
        if version != 1:
            raise DomainError(f"unsupported field file version {version}")
        lo, hi, counts = [], [], []
        for _ in range(naxes):
            l, h, n = struct.unpack("<ddI", fh.read(20))
            lo.append(l)
            hi.append(h)
            counts.append(n)
        raw = fh.read(16 * count)
    vals = np.frombuffer(raw, dtype="<c16")
    spec = GridSpec(lo=tuple(lo), hi=tuple(hi), counts=tuple(counts))
    return SampledField(grid=spec, values=vals, meta=meta)
