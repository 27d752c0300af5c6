"""Brute-force reference implementations for small grids.

Every routine here avoids the FFT: transforms are explicit ``O(N^2)``
exponential sums, linear multipliers are spatial convolutions with a
materialized kernel, and bilinear operators are double sums.  They exist to
cross-check the fast paths and are only practical for ``N <= 128`` in 1D.
"""
from __future__ import annotations

import numpy as np

from .calderon import BumpPair, ScaleGrid
from .field import GridSpec, SampledField, Spectrum

__all__ = [
    "dft_matrix",
    "direct_forward",
    "direct_inverse",
    "direct_multiplier",
    "direct_paraproduct_const",
    "direct_paraproduct_var",
    "direct_bilinear_multiplier",
    "direct_commutator_l1",
    "direct_dilate",
    "direct_bmo_seminorm",
]

MAX_ORACLE_N = 128


def _guard(grid: GridSpec):
    if grid.dim != 1 and grid.n > 32:
        raise ValueError("2D oracles are limited to N <= 32")
    if grid.n > MAX_ORACLE_N:
        raise ValueError(f"oracles are limited to N <= {MAX_ORACLE_N}")


def dft_matrix(grid: GridSpec) -> np.ndarray:
    """``E[i, k] = exp(i xi_k x_i)`` over one axis, modes in FFT ordering."""
    x = grid.axis()
    xi = 2 * np.pi / grid.period * grid.mode_axis()
    return np.exp(1j * np.outer(x, xi))


def direct_forward(f: SampledField) -> Spectrum:
    _guard(f.grid)
    e = dft_matrix(f.grid).conj() / f.grid.n
    c = f.values
    for ax in range(f.grid.dim):
        c = np.moveaxis(np.tensordot(e.T, np.moveaxis(c, ax, 0), axes=(1, 0)), 0, ax)
    return Spectrum(f.grid, c)


def direct_inverse(spec: Spectrum) -> SampledField:
    _guard(spec.grid)
    e = dft_matrix(spec.grid)
    v = spec.coeffs
    for ax in range(spec.grid.dim):
        v = np.moveaxis(np.tensordot(e, np.moveaxis(v, ax, 0), axes=(1, 0)), 0, ax)
    return SampledField(spec.grid, v)


def _kernel(grid: GridSpec, mult: np.ndarray) -> np.ndarray:
    """``K(z) = N^-dim sum_k m(xi_k) exp(i xi_k z)`` at lags ``z = i h``."""
    lag = grid.spacing * np.arange(grid.n)
    xi = 2 * np.pi / grid.period * grid.mode_axis()
    e = np.exp(1j * np.outer(lag, xi)) / grid.n
    k = mult.astype(complex)
    for ax in range(grid.dim):
        k = np.moveaxis(np.tensordot(e, np.moveaxis(k, ax, 0), axes=(1, 0)), 0, ax)
    return k


def direct_multiplier(f: SampledField, mult: np.ndarray) -> SampledField:
    """``m(D) f`` as the periodic convolution ``sum_y K(x - y) f(y)``."""
    g = f.grid
    _guard(g)
    k = _kernel(g, mult)
    n = g.n
    i = np.arange(n)
    lag = (i[:, None] - i[None, :]) % n
    if g.dim == 1:
        return SampledField(g, k[lag] @ f.values)
    kk = k[lag[:, None, :, None], lag[None, :, None, :]]
    out = np.einsum("abcd,cd->ab", kk, f.values)
    return SampledField(g, out)


def _radial_table(fn, scales: ScaleGrid, grid: GridSpec) -> np.ndarray:
    xi = np.abs(2 * np.pi / grid.period * grid.mode_axis())
    return fn(np.multiply.outer(scales.t_values, xi))


def direct_paraproduct_const(f: SampledField, g: SampledField, m_values: np.ndarray,
                             pair: BumpPair, scales: ScaleGrid) -> SampledField:
    """Frequency double sum with the scale quadrature folded into ``S(k, l)``.

    The output coefficient at ``kappa`` collects ``k + l = kappa (mod N)``,
    matching the pointwise product on the grid.  1D only.
    """
    grid = f.grid
    if grid.dim != 1:
        raise ValueError("the paraproduct oracle is 1D")
    _guard(grid)
    fh = direct_forward(f).coeffs
    gh = direct_forward(g).coeffs
    psi = _radial_table(pair.psi_hat, scales, grid)
    phi = _radial_table(pair.phi_hat, scales, grid)
    s = np.einsum("j,jk,jl->kl", np.asarray(m_values, dtype=complex) * scales.log_step, psi, phi)
    n = grid.n
    k = grid.mode_axis()
    out = np.zeros(n, dtype=complex)
    for a in range(n):
        for b in range(n):
            out[(k[a] + k[b]) % n] += s[a, b] * fh[a] * gh[b]
    return direct_inverse(Spectrum(grid, out))


def direct_paraproduct_var(f: SampledField, g: SampledField, m_table: np.ndarray,
                           pair: BumpPair, scales: ScaleGrid) -> SampledField:
    """``sum_j m(t_j, x) Q_{t_j} f(x) P_{t_j} g(x) log_step`` with explicit sums.

    ``m_table[j, i]`` holds ``m(t_j, x_i)``.  1D only.
    """
    grid = f.grid
    if grid.dim != 1:
        raise ValueError("the paraproduct oracle is 1D")
    _guard(grid)
    e = dft_matrix(grid)
    fh = direct_forward(f).coeffs
    gh = direct_forward(g).coeffs
    qf = np.einsum("ik,jk,k->ji", e, _radial_table(pair.psi_hat, scales, grid), fh)
    pg = np.einsum("ik,jk,k->ji", e, _radial_table(pair.phi_hat, scales, grid), gh)
    return SampledField(grid, np.einsum("ji,ji,ji->i", m_table, qf, pg) * scales.log_step)


def direct_bilinear_multiplier(f: SampledField, g: SampledField, bsym) -> SampledField:
    """Spatial double sum ``sum_{y,z} K(x - y, x - z) f(y) g(z)``.

    ``K`` is the inverse transform of ``sigma`` over all mode pairs, so the
    result agrees with the band-limited frequency sum only when every
    ``k + l`` stays inside the band, e.g. for inputs limited to ``|k| < N/4``.
    1D only.
    """
    grid = f.grid
    if grid.dim != 1:
        raise ValueError("the bilinear oracle is 1D")
    _guard(grid)
    n = grid.n
    xi = 2 * np.pi / grid.period * grid.mode_axis()
    a, b = np.meshgrid(xi, xi, indexing="ij")
    sig = np.asarray(bsym(a[None], b[None]), dtype=complex)
    lag = grid.spacing * np.arange(n)
    e = np.exp(1j * np.outer(lag, xi)) / n
    kern = e @ sig @ e.T
    i = np.arange(n)
    out = np.empty(n, dtype=complex)
    for x in range(n):
        ly = (x - i) % n
        out[x] = f.values @ kern[np.ix_(ly, ly)] @ g.values
    return SampledField(grid, out)


def direct_commutator_l1(m_values: np.ndarray, pair: BumpPair, t: float,
                         probe: SampledField) -> float:
    """``||P_t(m H) - m P_t H||_1 / ||H||_1`` with ``P_t`` as an explicit kernel matrix."""
    grid = probe.grid
    if grid.dim != 1:
        raise ValueError("the commutator oracle is 1D")
    _guard(grid)
    mult = pair.phi_hat(t * np.abs(2 * np.pi / grid.period * grid.mode_axis()))
    k = _kernel(grid, mult)
    i = np.arange(grid.n)
    kmat = k[(i[:, None] - i[None, :]) % grid.n]
    # [P_t, M_m] has kernel K(x - y) (m(y) - m(x))
    comm = kmat * (m_values[None, :] - m_values[:, None])
    out = comm @ probe.values
    return float(np.abs(out).sum() / np.abs(probe.values).sum())


def direct_dilate(f: SampledField, j: int) -> SampledField:
    """Evaluate the trigonometric interpolant of ``f`` at ``2^j x``.

    Exact for ``dilate`` when no mode is dropped; 1D only.
    """
    grid = f.grid
    _guard(grid)
    if grid.dim != 1:
        raise ValueError("the dilation oracle is 1D")
    c = direct_forward(f).coeffs
    xi = 2 * np.pi / grid.period * grid.mode_axis()
    x = grid.axis() * 2.0 ** j
    return SampledField(grid, np.exp(1j * np.outer(x, xi)) @ c)


def direct_bmo_seminorm(f: SampledField) -> float:
    """Mean oscillation maximized over every periodic dyadic-side window, by loops (1D)."""
    grid = f.grid
    if grid.dim != 1:
        raise ValueError("the BMO oracle is 1D")
    _guard(grid)
    v = f.values
    n = grid.n
    best = 0.0
    side = 2
    while side <= n:
        starts = range(n) if side < n else range(1)
        for s in starts:
            idx = [(s + i) % n for i in range(side)]
            seg = v[idx]
            best = max(best, float(np.mean(np.abs(seg - seg.mean()))))
        side *= 2
    return best
