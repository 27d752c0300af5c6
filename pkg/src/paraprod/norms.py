"""Sampled estimators for BMO-type, Hardy, Morrey and Carleson norms.

Cubes are periodic and grid aligned with dyadic side ``h * 2^k``, and every
grid position is used as a corner in 1D.  In 2D the corners step by
``max(1, side // cube_stride_divisor)`` cells per axis to keep the cost
near ``O(N^2 log N)``.  All suprema are over these finite families, so the
reported values are lower bounds for the continuum quantities.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.ndimage import maximum_filter, maximum_filter1d

from .calderon import BumpPair, ScaleGrid, pt_sup_ratio, scale_stack
from .field import GridSpec, SampledField, apply_multiplier
from .profiles import cutoff
from .symbol import SigmaSymbol, apply_I_inv_sigma

__all__ = [
    "LowPass",
    "NormConfig",
    "bmo_seminorm",
    "bmo_local_norm",
    "xw_norm",
    "bmo_sigma_norm",
    "h1_norm",
    "hardy_maximal_norm",
    "morrey_norm",
    "weighted_average_sup",
    "carleson_norm",
    "carleson_norm_general",
    "lowpass_average_gap",
]


@dataclass(frozen=True)
class LowPass:
    """Radial bump ``theta_hat``: 1 on ``|xi| <= inner``, 0 for ``|xi| >= outer``."""

    inner: float = 0.5
    outer: float = 1.0
    profile: str = "bump"

    def theta_hat(self, rho):
        return cutoff(np.abs(rho), self.inner, self.outer, self.profile)


@dataclass(frozen=True)
class NormConfig:
    grid: GridSpec
    scales: ScaleGrid
    theta: LowPass = LowPass()
    cube_stride_divisor: int | None = None

    @classmethod
    def for_grid(cls, grid: GridSpec, pair: BumpPair, theta: LowPass = LowPass()) -> "NormConfig":
        return cls(grid, ScaleGrid.covering(grid, pair), theta,
                   None if grid.dim == 1 else 8)

    @property
    def cube_scales(self) -> list[int]:
        """Cube sides in cells, ``2^k`` for ``0 <= k <= log2 N``; the last is the torus."""
        return [2 ** k for k in range(int(np.log2(self.grid.n)) + 1)]

    def stride(self, side: int) -> int:
        if self.cube_stride_divisor is None:
            return 1
        return max(1, side // self.cube_stride_divisor)


_CHUNK_ELEMS = 1 << 22


def _window_sums(v: np.ndarray, side: int, stride: int) -> np.ndarray:
    """Periodic sums over all cubes of ``side`` cells whose corners step by ``stride``."""
    out = v
    for ax in range(v.ndim):
        n = out.shape[ax]
        ext = np.concatenate([out, np.take(out, range(side), axis=ax)], axis=ax)
        cs = np.cumsum(ext, axis=ax)
        zero = np.zeros_like(np.take(cs, [0], axis=ax))
        cs = np.concatenate([zero, cs], axis=ax)
        starts = np.arange(0, n, stride)
        out = np.take(cs, starts + side, axis=ax) - np.take(cs, starts, axis=ax)
    return out


def _cube_means(v: np.ndarray, side: int, stride: int) -> np.ndarray:
    return _window_sums(v, side, stride) / side ** v.ndim


def _max_oscillation(v: np.ndarray, side: int, stride: int) -> float:
    """Max over cubes of ``mean_Q |v - mean_Q v|``."""
    n = v.shape[0]
    if side == 1:
        return 0.0
    if side == n:
        return float(np.abs(v - v.mean()).mean())
    means = _cube_means(v, side, stride)
    if v.ndim == 1:
        ext = np.concatenate([v, v[:side - 1]])
        win = sliding_window_view(ext, side)[::stride]
        best = 0.0
        rows = max(1, _CHUNK_ELEMS // side)
        for s in range(0, win.shape[0], rows):
            blk = win[s:s + rows]
            osc = np.abs(blk - means[s:s + rows, None]).mean(axis=1)
            best = max(best, float(osc.max()))
        return best
    ext = np.pad(v, ((0, side - 1), (0, side - 1)), mode="wrap")
    win = sliding_window_view(ext, (side, side))[::stride, ::stride]
    best = 0.0
    rows = max(1, _CHUNK_ELEMS // (side * side * win.shape[1]))
    for s in range(0, win.shape[0], rows):
        blk = win[s:s + rows]
        osc = np.abs(blk - means[s:s + rows, :, None, None]).mean(axis=(2, 3))
        best = max(best, float(osc.max()))
    return best


def bmo_seminorm(f: SampledField, cfg: NormConfig) -> float:
    """Max over positioned dyadic cubes of the mean oscillation ``mean_Q |f - f_Q|``."""
    v = f.values
    return max(_max_oscillation(v, s, cfg.stride(s)) for s in cfg.cube_scales)


def _lowpass_sup(f: SampledField, cfg: NormConfig) -> float:
    out = apply_multiplier(f, cfg.theta.theta_hat(f.grid.frequency_magnitude()).astype(complex))
    return out.sup()


def bmo_local_norm(f: SampledField, cfg: NormConfig) -> float:
    """``||f||_BMO + ||theta_hat(D) f||_inf``."""
    return bmo_seminorm(f, cfg) + _lowpass_sup(f, cfg)


def xw_norm(f: SampledField, w, pair: BumpPair, cfg: NormConfig) -> float:
    """``||f||_BMO + max_t ||P_t f||_inf / w(t)``."""
    return bmo_seminorm(f, cfg) + pt_sup_ratio(pair, f, w, cfg.scales)


def bmo_sigma_norm(f: SampledField, sym: SigmaSymbol, cfg: NormConfig) -> float:
    return bmo_seminorm(apply_I_inv_sigma(sym, f), cfg)


def local_riesz(f: SampledField, j: int, cfg: NormConfig) -> SampledField:
    """``r_j f``: multiplier ``-i xi_j/|xi| (1 - theta_hat(xi))``, zero at ``xi = 0``."""
    xi = f.grid.frequencies()[j]
    mag = f.grid.frequency_magnitude()
    mult = np.zeros(f.grid.shape, dtype=complex)
    nz = mag > 0
    mult[nz] = -1j * xi[nz] / mag[nz] * (1.0 - cfg.theta.theta_hat(mag[nz]))
    return apply_multiplier(f, mult)


def h1_norm(f: SampledField, cfg: NormConfig) -> float:
    """``||f||_1 + sum_j ||r_j f||_1`` with the local Riesz transforms."""
    return f.l1() + sum(local_riesz(f, j, cfg).l1() for j in range(f.grid.dim))


def hardy_maximal_norm(f: SampledField, cfg: NormConfig) -> float:
    """``int max_t max_{|x-y|<t} |theta_hat(tD) f(y)| dx`` over the scale nodes.

    In 2D the ball ``|x - y| < t`` is replaced by the square of half-width ``t``.
    """
    g = f.grid
    h = g.spacing
    t = cfg.scales.t_values
    best = np.zeros(g.shape)
    for sl, block in scale_stack("theta_hat", cfg.theta, cfg.scales, f):
        mags = np.abs(block)
        for i, tt in zip(range(sl.start, sl.stop), mags):
            half = min(int(np.ceil(t[i] / h)) - 1, g.n)
            size = 2 * max(half, 0) + 1
            if size >= g.n:
                local = np.full(g.shape, tt.max())
            elif g.dim == 1:
                local = maximum_filter1d(tt, size, mode="wrap")
            else:
                local = maximum_filter(tt, size=size, mode="wrap")
            np.maximum(best, local, out=best)
    return float(best.sum() * g.cell_volume)


def morrey_norm(f: SampledField, eta, cfg: NormConfig) -> float:
    """``max_Q eta(side) / |Q| * int_Q |f|``."""
    v = np.abs(f.values)
    h = f.grid.spacing
    best = 0.0
    for s in cfg.cube_scales:
        e = float(eta(s * h))
        if not e > 0:
            raise ValueError(f"eta must be positive on the cube sides; eta({s * h:g}) = {e}")
        best = max(best, e * float(_cube_means(v, s, cfg.stride(s)).max()))
    return best


def weighted_average_sup(f: SampledField, w, cfg: NormConfig) -> float:
    """``max_Q |f_Q| / w(r)`` with ``r = side/2`` the inscribed radius of ``Q``."""
    h = f.grid.spacing
    best = 0.0
    for s in cfg.cube_scales:
        avg = np.abs(_cube_means(f.values, s, cfg.stride(s))).max()
        best = max(best, float(avg) / float(w(s * h / 2)))
    return best


def carleson_norm_general(family, cfg: NormConfig) -> float:
    """Carleson norm of ``|R_t b(x)|^2 dx dt/t`` for a family indexed by the scale nodes.

    ``family`` is an array of shape ``(len(cfg.scales), *grid.shape)`` or a
    sequence of :class:`SampledField` on a common grid.  The box over a cube
    ``Q`` collects the nodes with ``t <= side(Q)``.
    """
    if not isinstance(family, np.ndarray):
        grids = {fld.grid for fld in family}
        if len(grids) != 1:
            raise ValueError("family members live on different grids")
        family = np.stack([fld.values for fld in family])
    if family.shape[0] != len(cfg.scales) or family.shape[1:] != cfg.grid.shape:
        raise ValueError(
            f"family shape {family.shape} does not match {len(cfg.scales)} nodes on {cfg.grid}")
    energy = np.abs(family) ** 2 * cfg.scales.log_step
    return _carleson_from_energy(energy, cfg)


def _carleson_from_energy(energy: np.ndarray, cfg: NormConfig) -> float:
    cum = np.cumsum(energy, axis=0)
    t = cfg.scales.t_values
    h = cfg.grid.spacing
    best = 0.0
    for s in cfg.cube_scales:
        j = int(np.searchsorted(t, s * h * (1 + 1e-12), side="right")) - 1
        if j < 0:
            continue
        best = max(best, float(_cube_means(cum[j], s, cfg.stride(s)).max()))
    return best


def carleson_norm(b: SampledField, pair: BumpPair, cfg: NormConfig) -> float:
    """Carleson norm of ``|Q_t b(x)|^2 dx dt/t``."""
    energy = np.empty((len(cfg.scales),) + b.grid.shape)
    for sl, block in scale_stack("psi_hat", pair, cfg.scales, b):
        energy[sl] = np.abs(block) ** 2
    energy *= cfg.scales.log_step
    return _carleson_from_energy(energy, cfg)


def lowpass_average_gap(f: SampledField, pair: BumpPair, cfg: NormConfig) -> float:
    """``max_t ||P_t f - c Avg_{B_t} f||_inf`` with ``c = phi_hat(0) = 1`` (1D only)."""
    g = f.grid
    if g.dim != 1:
        raise ValueError("ball averages are implemented for dim 1")
    h = g.spacing
    t = cfg.scales.t_values
    c = float(pair.phi_hat(0.0))
    best = 0.0
    for sl, block in scale_stack("phi_hat", pair, cfg.scales, f):
        for i, pt in zip(range(sl.start, sl.stop), block):
            half = int(np.ceil(t[i] / h)) - 1
            size = 2 * max(half, 0) + 1
            if size >= g.n:
                avg = np.full(g.shape, f.values.mean())
            else:
                avg = np.roll(_window_sums(f.values, size, 1) / size, half)
            best = max(best, float(np.abs(pt - c * avg).max()))
    return best
