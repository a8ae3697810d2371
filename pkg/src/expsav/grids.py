"""Uniform periodic grids, sampled fields, and discrete inner products.

Grids live on [a, b) per axis with N equispaced nodes x_j = a + j*h,
h = (b - a)/N; the right endpoint is identified with the left one.
2D grids are tensor products, flattened row-major with axis 0 slowest.
The discrete inner product carries the cell measure:

    <u, v> = h * sum_j u_j * conj(v_j)        (h -> hx*hy in 2D)

which makes norms and energies direct analogues of their integrals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic tensor grid in 1 or 2 dimensions."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    n: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b) or len(self.a) != len(self.n):
            raise ValueError("a, b, n must have one entry per axis")
        if self.dim not in (1, 2):
            raise ValueError(f"only 1D and 2D grids supported, got dim={self.dim}")
        for lo, hi, num in zip(self.a, self.b, self.n):
            if hi <= lo:
                raise ValueError(f"domain endpoints must satisfy b > a, got [{lo}, {hi}]")
            if num < 2 or num % 2 != 0:
                raise ValueError(f"node count must be an even integer >= 2, got {num}")

    @property
    def dim(self) -> int:
        return len(self.n)

    @property
    def h(self) -> tuple[float, ...]:
        return tuple((hi - lo) / num for lo, hi, num in zip(self.a, self.b, self.n))

    @property
    def cell(self) -> float:
        """Measure of one grid cell: h in 1D, hx*hy in 2D."""
        return float(np.prod(self.h))

    @property
    def size(self) -> int:
        """Total node count."""
        return int(np.prod(self.n))

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    def axis_nodes(self, axis: int) -> np.ndarray:
        """Node coordinates along one axis (right endpoint excluded)."""
        lo = self.a[axis]
        return lo + self.h[axis] * np.arange(self.n[axis])

    def coords(self) -> tuple[np.ndarray, ...]:
        """Per-axis coordinate arrays broadcast over the full grid shape."""
        axes = [self.axis_nodes(k) for k in range(self.dim)]
        if self.dim == 1:
            return (axes[0],)
        return tuple(np.meshgrid(*axes, indexing="ij"))


def make_grid(a: float, b: float, n: int, dim: int = 1) -> GridSpec:
    """Build a periodic grid on [a, b) with n nodes per axis (square in 2D)."""
    if dim not in (1, 2):
        raise ValueError(f"dim must be 1 or 2, got {dim}")
    return GridSpec(a=(float(a),) * dim, b=(float(b),) * dim, n=(int(n),) * dim)


@dataclass(frozen=True, eq=False)
class Field:
    """Real samples over a grid, flat in node order."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64).ravel()
        object.__setattr__(self, "values", vals)
        _check_values(self.grid, vals)


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Complex samples over a grid, flat in node order."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128).ravel()
        object.__setattr__(self, "values", vals)
        _check_values(self.grid, vals)


def _check_values(grid: GridSpec, vals: np.ndarray):
    if vals.size != grid.size:
        raise ValueError(f"field has {vals.size} values, grid has {grid.size} nodes")
    if not np.all(np.isfinite(vals)):
        raise ValueError("field contains non-finite values")


def sample(grid: GridSpec, fn, t: float | None = None) -> np.ndarray:
    """Evaluate fn on the grid nodes, flat row-major.

    fn takes the per-axis coordinate arrays (x in 1D, x, y in 2D) and
    optionally the time t as a final argument.
    """
    args = grid.coords() if t is None else (*grid.coords(), t)
    out = np.asarray(fn(*args))
    return np.broadcast_to(out, grid.shape).ravel().copy()


def fd_laplacian_eigenvalues(grid: GridSpec) -> np.ndarray:
    """Eigenvalues of the periodic second-difference Laplacian, in mode order.

    Along one axis: lam_j = -(4/h^2) sin^2(j*pi/N), j = 0..N-1; in 2D the
    tensor-product operator has eigenvalue lam_j + lam_k at mode (j, k).
    """
    per_axis = []
    for axis in range(grid.dim):
        N = grid.n[axis]
        h = grid.h[axis]
        j = np.arange(N)
        per_axis.append(-(4.0 / h**2) * np.sin(j * np.pi / N) ** 2)
    if grid.dim == 1:
        return per_axis[0]
    return np.add.outer(per_axis[0], per_axis[1]).ravel()


def spectral_laplacian_eigenvalues(grid: GridSpec) -> np.ndarray:
    """Fourier symbol of the Laplacian: -( (2*pi/(b-a)) * k )^2 in DFT mode order."""
    per_axis = []
    for axis in range(grid.dim):
        N = grid.n[axis]
        length = grid.b[axis] - grid.a[axis]
        k = np.fft.fftfreq(N, d=1.0 / N)  # signed wavenumbers 0, 1, ..., -1
        per_axis.append(-((2.0 * np.pi / length) * k) ** 2)
    if grid.dim == 1:
        return per_axis[0]
    return np.add.outer(per_axis[0], per_axis[1]).ravel()


def inner_l2(u: Field | ComplexField, v: Field | ComplexField):
    """Discrete L2 inner product <u, v> = cell * sum u_j conj(v_j)."""
    if u.grid != v.grid:
        raise ValueError("inner product requires matching grids")
    out = u.grid.cell * np.vdot(v.values, u.values)  # vdot conjugates first arg
    if np.isrealobj(u.values) and np.isrealobj(v.values):
        return float(out.real)
    return complex(out)


def norm_l2(u: Field | ComplexField) -> float:
    return float(np.sqrt(u.grid.cell * np.vdot(u.values, u.values).real))


def norm_inf(u: Field | ComplexField) -> float:
    return float(np.max(np.abs(u.values)))


def forward_diff_norm(u: Field | ComplexField) -> float:
    """Periodic forward-difference seminorm ||d+ u||.

    1D: sqrt(h * sum |(u_{j+1} - u_j)/h|^2); in 2D both axis contributions
    are summed under the cell measure.
    """
    vals = u.values.reshape(u.grid.shape)
    acc = 0.0
    for axis in range(u.grid.dim):
        diff = (np.roll(vals, -1, axis=axis) - vals) / u.grid.h[axis]
        acc += np.sum(np.abs(diff) ** 2)
    return float(np.sqrt(u.grid.cell * acc))
