"""Sampled periodic fields and the spectral machinery acting on them.

The torus is ``[-L/2, L/2)^dim`` sampled at ``N`` points per axis, ``h = L/N``.
Mode ``k`` carries the physical frequency ``xi = 2*pi*k/L``.

Transform convention: the forward transform carries the ``1/N^dim`` factor,

    c_k = N^-dim * sum_x f(x) exp(-i xi_k . x),      f(x) = sum_k c_k exp(i xi_k . x),

with ``x`` the physical sample positions (so a pure mode ``exp(i xi_1 x)`` has
coefficient exactly 1 at ``k = 1``).  Coefficient arrays are stored in numpy's
FFT ordering; ``Spectrum.modes`` gives the integer mode of every entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "GridSpec",
    "SampledField",
    "Spectrum",
    "forward_transform",
    "inverse_transform",
    "apply_multiplier",
    "fractional_derivative",
    "dilate",
    "pointwise_product",
]


@dataclass(frozen=True)
class GridSpec:
    dim: int = 1
    n: int = 1024
    period: float = 2 * np.pi

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if self.n < 16 or self.n & (self.n - 1):
            raise ValueError(f"points per axis must be a power of two >= 16, got {self.n}")
        if not self.period > 0:
            raise ValueError(f"period must be positive, got {self.period}")

    @property
    def spacing(self) -> float:
        return self.period / self.n

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dim

    def axis(self) -> np.ndarray:
        return -self.period / 2 + self.spacing * np.arange(self.n)

    def coords(self) -> tuple[np.ndarray, ...]:
        """Physical sample positions, one broadcastable array per axis."""
        ax = self.axis()
        if self.dim == 1:
            return (ax,)
        return tuple(np.meshgrid(ax, ax, indexing="ij"))

    def mode_axis(self) -> np.ndarray:
        return np.fft.fftfreq(self.n, d=1.0 / self.n).astype(int)

    def modes(self) -> tuple[np.ndarray, ...]:
        m = self.mode_axis()
        if self.dim == 1:
            return (m,)
        return tuple(np.meshgrid(m, m, indexing="ij"))

    def frequencies(self) -> tuple[np.ndarray, ...]:
        scale = 2 * np.pi / self.period
        return tuple(scale * k for k in self.modes())

    def frequency_magnitude(self) -> np.ndarray:
        return np.sqrt(sum(xi ** 2 for xi in self.frequencies()))

    @property
    def nyquist(self) -> float:
        """Largest frequency magnitude present on the grid."""
        return np.pi * self.n / self.period * np.sqrt(self.dim)

    @property
    def fundamental(self) -> float:
        return 2 * np.pi / self.period


class SampledField:
    """Complex samples of a periodic function on a :class:`GridSpec`."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: GridSpec, values):
        values = np.asarray(values, dtype=complex)
        if values.size != grid.n ** grid.dim:
            raise ValueError(
                f"expected {grid.n ** grid.dim} samples for {grid}, got {values.size}")
        self.grid = grid
        self.values = values.reshape(grid.shape)

    @classmethod
    def from_function(cls, grid: GridSpec, func: Callable[..., np.ndarray]) -> "SampledField":
        return cls(grid, np.broadcast_to(func(*grid.coords()), grid.shape))

    @classmethod
    def constant(cls, grid: GridSpec, c: complex) -> "SampledField":
        return cls(grid, np.full(grid.shape, c, dtype=complex))

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    def mean(self) -> complex:
        return complex(self.values.mean())

    def sup(self) -> float:
        return float(np.abs(self.values).max())

    def l1(self) -> float:
        return float(np.abs(self.values).sum() * self.grid.cell_volume)

    def copy(self) -> "SampledField":
        return SampledField(self.grid, self.values.copy())

    def _check(self, other: "SampledField"):
        if self.grid != other.grid:
            raise ValueError(f"grid mismatch: {self.grid} vs {other.grid}")

    def __add__(self, other):
        if isinstance(other, SampledField):
            self._check(other)
            return SampledField(self.grid, self.values + other.values)
        return SampledField(self.grid, self.values + other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, SampledField):
            self._check(other)
            return SampledField(self.grid, self.values - other.values)
        return SampledField(self.grid, self.values - other)

    def __neg__(self):
        return SampledField(self.grid, -self.values)

    def __mul__(self, scalar):
        if isinstance(scalar, SampledField):
            return pointwise_product(self, scalar)
        return SampledField(self.grid, self.values * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return SampledField(self.grid, self.values / scalar)

    def __repr__(self):
        return f"SampledField({self.grid}, sup={self.sup():.4g})"


@dataclass
class Spectrum:
    grid: GridSpec
    coeffs: np.ndarray  # FFT ordering, see module docstring

    @property
    def modes(self) -> tuple[np.ndarray, ...]:
        return self.grid.modes()

    def coeff(self, *k: int) -> complex:
        """Coefficient of integer mode ``k`` (one index per axis)."""
        n = self.grid.n
        if len(k) != self.grid.dim:
            raise ValueError(f"need {self.grid.dim} mode indices")
        for ki in k:
            if not -n // 2 <= ki < n // 2:
                raise IndexError(f"mode {ki} outside [{-n // 2}, {n // 2})")
        return complex(self.coeffs[tuple(ki % n for ki in k)])


def _phase(grid: GridSpec) -> np.ndarray:
    # exp(-i xi_k x_0) with x_0 = -L/2 is (-1)^k per axis
    sign = np.where(grid.mode_axis() % 2 == 0, 1.0, -1.0)
    if grid.dim == 1:
        return sign
    return np.multiply.outer(sign, sign)


def forward_transform(f: SampledField) -> Spectrum:
    g = f.grid
    coeffs = np.fft.fftn(f.values) * (_phase(g) / g.n ** g.dim)
    return Spectrum(g, coeffs)


def inverse_transform(spec: Spectrum) -> SampledField:
    g = spec.grid
    values = np.fft.ifftn(spec.coeffs * (_phase(g) * g.n ** g.dim))
    return SampledField(g, values)


def _multiplier_values(grid: GridSpec, symbol, zero_value) -> np.ndarray:
    xis = grid.frequencies()
    mag = grid.frequency_magnitude()
    nonzero = mag > 0
    out = np.empty(grid.shape, dtype=complex)
    vals = np.asarray(symbol(*(xi[nonzero] for xi in xis)), dtype=complex)
    out[nonzero] = np.broadcast_to(vals, out[nonzero].shape)
    out[~nonzero] = zero_value
    bad = ~np.isfinite(out)
    if bad.any():
        where = tuple(xi[bad][0] for xi in xis)
        raise ValueError(f"symbol is not finite at frequency {where}")
    return out


def apply_multiplier(f: SampledField, symbol: Callable[..., np.ndarray] | np.ndarray,
                     zero_value: complex | None = None) -> SampledField:
    """Apply the Fourier multiplier ``symbol(D)`` to ``f``.

    ``symbol`` is called with one frequency array per axis, restricted to the
    nonzero grid frequencies; its value at ``xi = 0`` is ``zero_value`` and
    must be given explicitly.  A precomputed array of multiplier values on the
    grid (FFT ordering) is also accepted, in which case ``zero_value`` is
    ignored.
    """
    if isinstance(symbol, np.ndarray):
        mult = symbol
        if not np.all(np.isfinite(mult)):
            idx = np.argwhere(~np.isfinite(mult))[0]
            where = tuple(xi[tuple(idx)] for xi in f.grid.frequencies())
            raise ValueError(f"symbol is not finite at frequency {where}")
    else:
        if zero_value is None:
            raise ValueError("the multiplier value at xi = 0 must be supplied")
        mult = _multiplier_values(f.grid, symbol, zero_value)
    return SampledField(f.grid, np.fft.ifftn(np.fft.fftn(f.values) * mult))


def fractional_derivative(f: SampledField, s: float) -> SampledField:
    """``D^s f``, the multiplier ``|xi|^s`` with the zero mode sent to 0."""
    if s < 0:
        raise ValueError(f"order must be nonnegative, got {s}")
    mag = f.grid.frequency_magnitude()
    mult = np.zeros_like(mag)
    nz = mag > 0
    mult[nz] = mag[nz] ** s
    return apply_multiplier(f, mult)


def dilate(f: SampledField, j: int) -> SampledField:
    """Return ``g(x) = f(2^j x)`` by reindexing modes ``k -> 2^j k``.

    For ``j > 0`` modes pushed outside ``[-N/2, N/2)`` are dropped.  For
    ``j < 0`` only modes divisible by ``2^|j|`` give an ``L``-periodic result;
    the others are dropped.
    """
    g = f.grid
    jmax = int(np.log2(g.n)) - 2
    if abs(j) > jmax:
        raise ValueError(f"|j| must be <= {jmax} for N={g.n}, got {j}")
    if j == 0:
        return f.copy()
    c = forward_transform(f).coeffs
    out = np.zeros_like(c)
    n = g.n
    k = g.mode_axis()
    if j > 0:
        target = k * 2 ** j
        keep = (target >= -n // 2) & (target < n // 2)
    else:
        step = 2 ** (-j)
        keep = k % step == 0
        target = k // step
    src = np.nonzero(keep)[0]
    dst = target[keep] % n
    if g.dim == 1:
        out[dst] = c[src]
    else:
        out[np.ix_(dst, dst)] = c[np.ix_(src, src)]
    return inverse_transform(Spectrum(g, out))


def pointwise_product(f: SampledField, g: SampledField) -> SampledField:
    f._check(g)
    return SampledField(f.grid, f.values * g.values)


def band_limit(f: SampledField, kmax: int) -> SampledField:
    """Zero every mode with some ``|k_i| >= kmax``."""
    keep = np.ones(f.grid.shape, dtype=bool)
    for k in f.grid.modes():
        keep &= np.abs(k) < kmax
    c = np.fft.fftn(f.values)
    return SampledField(f.grid, np.fft.ifftn(np.where(keep, c, 0)))
