"""Bilinear operators on sampled fields.

Paraproducts are evaluated scale by scale, in ascending ``t``, as
``sum_j Q_{t_j} f * P_{t_j} g * m(t_j) * log_step``.  Bilinear Fourier
multipliers ``sigma(D)(f, g)`` are evaluated by the exact frequency double
sum: output mode ``kappa`` collects every pair ``k + l = kappa`` with
integer sums inside the band, and out-of-band pairs are dropped (never
aliased).

Bilinear symbols take ``(xi, eta)`` as arrays of shape ``(dim, ...)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb
from pathlib import Path
from typing import Callable, NamedTuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .calderon import AuxiliaryFamily, BumpPair, ScaleGrid, multiplier_rows, scale_stack
from .field import (GridSpec, SampledField, Spectrum, apply_multiplier, forward_transform,
                    inverse_transform)
from .profiles import cutoff

__all__ = [
    "ScalarSymbol",
    "VariableSymbol",
    "BilinearSymbol",
    "paraproduct_const",
    "paraproduct_split",
    "paraproduct_var",
    "commutator_l1_norm",
    "coifman_meyer_apply",
    "cm_split",
    "hm_symbol_check",
    "kato_ponce_decompose",
    "kato_ponce_apply",
    "duality_pairing",
    "named_bilinear_symbol",
    "read_symbol_table",
]


@dataclass(frozen=True)
class ScalarSymbol:
    m: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    m_bound: float = 1.0

    def values(self, scales: ScaleGrid) -> np.ndarray:
        v = np.asarray(self.m(scales.t_values), dtype=complex)
        v = np.broadcast_to(v, (len(scales),))
        if np.abs(v).max(initial=0.0) > self.m_bound * (1 + 1e-12):
            raise ValueError(f"|m(t)| exceeds the declared bound {self.m_bound}")
        return v

    @classmethod
    def constant(cls, c: complex = 1.0) -> "ScalarSymbol":
        return cls(lambda t: np.full(np.shape(t), c, dtype=complex), abs(c))


@dataclass(frozen=True)
class VariableSymbol:
    """``m(t, x)``; ``m`` is called as ``m(t, *coords)`` with scalar ``t``."""

    m: Callable[..., np.ndarray] = field(compare=False)
    m_bound: float = 1.0
    grad_bound: float = 1.0

    def sample(self, t: float, grid: GridSpec) -> np.ndarray:
        return np.broadcast_to(np.asarray(self.m(t, *grid.coords()), dtype=complex), grid.shape)

    def certify(self, grid: GridSpec, scales: ScaleGrid) -> tuple[float, float]:
        """Measured ``sup_t ||m||_inf`` and ``sup_t ||grad_x m||_inf`` (spectral gradient).

        Raises when either exceeds the declared bound by more than 1e-6 relative.
        """
        sup_m = sup_g = 0.0
        for t in scales.t_values:
            v = SampledField(grid, self.sample(float(t), grid))
            sup_m = max(sup_m, v.sup())
            grad2 = np.zeros(grid.shape)
            for xi in grid.frequencies():
                d = apply_multiplier(v, 1j * xi)
                grad2 += np.abs(d.values) ** 2
            sup_g = max(sup_g, float(np.sqrt(grad2.max())))
        if sup_m > self.m_bound * (1 + 1e-6) or sup_g > self.grad_bound * (1 + 1e-6):
            raise ValueError(
                f"symbol exceeds its bounds: sup|m|={sup_m:.6g} (bound {self.m_bound}), "
                f"sup|grad m|={sup_g:.6g} (bound {self.grad_bound})")
        return sup_m, sup_g


@dataclass(frozen=True)
class BilinearSymbol:
    sigma: Callable[[np.ndarray, np.ndarray], np.ndarray] = field(compare=False)
    name: str = "sigma"
    derivative_order_checked: int = 0
    constant: complex | None = None

    def __call__(self, xi, eta):
        return self.sigma(np.asarray(xi, dtype=float), np.asarray(eta, dtype=float))

    @classmethod
    def one(cls) -> "BilinearSymbol":
        return cls(lambda xi, eta: np.ones(np.broadcast_shapes(xi.shape[1:], eta.shape[1:])),
                   "cm_one", constant=1.0)


def read_symbol_table(path) -> BilinearSymbol:
    """A 1D symbol sampled on a regular ``(xi, eta)`` grid, interpolated multilinearly.

    The CSV has the header ``xi,eta,sigma_re,sigma_im`` and one row per grid
    node; every combination of the distinct ``xi`` and ``eta`` values must
    appear exactly once.  Evaluation outside the tabulated rectangle raises.
    """
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 4:
        raise ValueError(f"{path}: expected columns xi,eta,sigma_re,sigma_im")
    xs, ys = np.unique(data[:, 0]), np.unique(data[:, 1])
    if xs.size < 2 or ys.size < 2 or data.shape[0] != xs.size * ys.size:
        raise ValueError(f"{path}: samples do not form a complete regular grid")
    vals = np.full((xs.size, ys.size), np.nan, dtype=complex)
    vals[np.searchsorted(xs, data[:, 0]), np.searchsorted(ys, data[:, 1])] = data[:, 2] + 1j * data[:, 3]
    if np.isnan(vals).any():
        raise ValueError(f"{path}: duplicate nodes leave part of the grid empty")
    interp = RegularGridInterpolator((xs, ys), vals, method="linear", bounds_error=True)

    def sigma(xi, eta):
        if xi.shape[0] != 1:
            raise ValueError("tabulated symbols are one-dimensional")
        xi, eta = np.broadcast_arrays(xi[0], eta[0])
        pts = np.stack([xi.ravel(), eta.ravel()], axis=-1)
        return interp(pts).reshape(xi.shape)

    return BilinearSymbol(sigma, f"table({Path(path).name})")


def named_bilinear_symbol(name: str, s: float = 5.5) -> BilinearSymbol:
    """``cm_one``, ``kato_ponce_1``/``_2``/``_3`` (order ``s``) or a path to a ``.csv`` table."""
    if name == "cm_one":
        return BilinearSymbol.one()
    if name in ("kato_ponce_1", "kato_ponce_2", "kato_ponce_3"):
        return kato_ponce_decompose(s)[int(name[-1]) - 1]
    if name.endswith(".csv"):
        return read_symbol_table(name)
    raise ValueError(f"unknown bilinear symbol {name!r}")


def _norm(v: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(v * v, axis=0))


# -- paraproducts ------------------------------------------------------------

def paraproduct_const(f: SampledField, g: SampledField, sym: ScalarSymbol, pair: BumpPair,
                      scales: ScaleGrid) -> SampledField:
    """``sum_j Q_{t_j} f * P_{t_j} g * m(t_j) * log_step``."""
    f._check(g)
    mw = sym.values(scales) * scales.log_step
    acc = np.zeros(f.grid.shape, dtype=complex)
    qs = scale_stack("psi_hat", pair, scales, f)
    ps = scale_stack("phi_hat", pair, scales, g)
    for (sl, qf), (_, pg) in zip(qs, ps):
        acc += np.tensordot(mw[sl], qf * pg, axes=(0, 0))
    return SampledField(f.grid, acc)


class Split(NamedTuple):
    pi1: SampledField
    pi2: SampledField
    clipped: float  # largest relative spectral mass of a product outside its plateau


def paraproduct_split(f: SampledField, g: SampledField, sym: ScalarSymbol, pair: BumpPair,
                      aux: AuxiliaryFamily, scales: ScaleGrid) -> Split:
    """The two pieces of the paraproduct.

    ``pi1 = sum_j Q2_t[(Q_t f)(P1_t g)] m(t) dt/t`` and
    ``pi2 = sum_j P2_t[(Q_t f)(Q1_t g)] m(t) dt/t``.  Their sum equals the
    paraproduct whenever every product spectrum sits on the plateau of the
    outer multiplier; ``clipped`` measures the worst violation.
    """
    f._check(g)
    if aux.pair != pair:
        raise ValueError("auxiliary family was built from a different bump pair")
    grid = f.grid
    axes = tuple(range(1, grid.dim + 1))
    mw = sym.values(scales) * scales.log_step
    hat1 = np.zeros(grid.shape, dtype=complex)
    hat2 = np.zeros(grid.shape, dtype=complex)
    clipped = 0.0
    ghat = np.fft.fftn(g.values)
    for sl, qf in scale_stack("psi_hat", pair, scales, f):
        p1g = np.fft.ifftn(multiplier_rows("phi1_hat", aux, scales, grid, sl) * ghat, axes=axes)
        q1g = np.fft.ifftn(multiplier_rows("psi1_hat", aux, scales, grid, sl) * ghat, axes=axes)
        prod1 = np.fft.fftn(qf * p1g, axes=axes)
        prod2 = np.fft.fftn(qf * q1g, axes=axes)
        outer1 = multiplier_rows("psi2_hat", aux, scales, grid, sl)
        outer2 = multiplier_rows("phi2_hat", aux, scales, grid, sl)
        hat1 += np.tensordot(mw[sl], outer1 * prod1, axes=(0, 0))
        hat2 += np.tensordot(mw[sl], outer2 * prod2, axes=(0, 0))
        for prod, outer in ((prod1, outer1), (prod2, outer2)):
            total = np.sum(np.abs(prod) ** 2, axis=axes)
            lost = np.sum(np.abs((1 - outer) * prod) ** 2, axis=axes)
            ok = total > 0
            if ok.any():
                clipped = max(clipped, float(np.sqrt(lost[ok] / total[ok]).max()))
    return Split(SampledField(grid, np.fft.ifftn(hat1)), SampledField(grid, np.fft.ifftn(hat2)),
                 clipped)


def paraproduct_var(f: SampledField, g: SampledField, vsym: VariableSymbol, pair: BumpPair,
                    scales_unit: ScaleGrid) -> SampledField:
    """``sum_j Q_{t_j} f * P_{t_j} g * m(t_j, x) * log_step`` over nodes ``t <= 1``."""
    f._check(g)
    if scales_unit.t_max > 1 + 1e-12:
        raise ValueError(f"variable paraproduct integrates t <= 1; grid reaches {scales_unit.t_max:g}")
    t = scales_unit.t_values
    acc = np.zeros(f.grid.shape, dtype=complex)
    qs = scale_stack("psi_hat", pair, scales_unit, f)
    ps = scale_stack("phi_hat", pair, scales_unit, g)
    for (sl, qf), (_, pg) in zip(qs, ps):
        prod = qf * pg
        for i, row in zip(range(sl.start, sl.stop), prod):
            acc += row * vsym.sample(float(t[i]), f.grid)
    return SampledField(f.grid, acc * scales_unit.log_step)


def commutator_l1_norm(vsym: VariableSymbol, pair: BumpPair, t: float, probes) -> float:
    """``max_H ||P_t(m H) - m P_t H||_1 / ||H||_1`` over the probe fields."""
    best = 0.0
    for h in probes:
        grid = h.grid
        mult = pair.phi_hat(t * grid.frequency_magnitude()).astype(complex)
        m = vsym.sample(t, grid)
        comm = (apply_multiplier(SampledField(grid, m * h.values), mult).values
                - m * apply_multiplier(h, mult).values)
        norm_h = h.l1()
        if norm_h == 0:
            raise ValueError("probe fields must be nonzero")
        best = max(best, float(np.abs(comm).sum() * grid.cell_volume / norm_h))
    return best


# -- bilinear Fourier multipliers ---------------------------------------------

def _sorted_modes(grid: GridSpec) -> np.ndarray:
    return np.arange(-grid.n // 2, grid.n // 2)


def coifman_meyer_apply(f: SampledField, g: SampledField, bsym: BilinearSymbol,
                        with_dropped: bool = False):
    """``sigma(D)(f, g)`` by the band-limited frequency double sum.

    With ``with_dropped`` the relative spectral mass of the dropped
    out-of-band output is returned alongside the field.
    """
    f._check(g)
    grid = f.grid
    if grid.dim == 1 and grid.n > 4096:
        raise ValueError("dim 1 bilinear multipliers are limited to N <= 4096")
    if grid.dim == 2 and grid.n > 256:
        raise ValueError("dim 2 bilinear multipliers are limited to N <= 256")
    n = grid.n
    fh = np.fft.fftshift(forward_transform(f).coeffs)
    gh = np.fft.fftshift(forward_transform(g).coeffs)
    k = _sorted_modes(grid)
    w0 = 2 * np.pi / grid.period
    if bsym.constant is not None:
        full = _full_convolution(fh, gh) * bsym.constant
    elif grid.dim == 1:
        full = np.zeros(2 * n - 1, dtype=complex)
        rows = max(1, (1 << 20) // n)
        for s in range(0, n, rows):
            kk = k[s:s + rows]
            xi = (w0 * kk)[None, :, None]
            eta = (w0 * k)[None, None, :]
            xi, eta = np.broadcast_arrays(xi, eta)
            vals = _weighted(bsym, xi, eta, fh[s:s + rows, None] * gh[None, :])
            idx = (kk[:, None] + k[None, :]) + n
            full += np.bincount(idx.ravel(), weights=vals.real.ravel(), minlength=2 * n - 1)[:2 * n - 1]
            full += 1j * np.bincount(idx.ravel(), weights=vals.imag.ravel(), minlength=2 * n - 1)[:2 * n - 1]
    else:
        full = np.zeros((2 * n - 1, 2 * n - 1), dtype=complex)
        k1, k2 = np.meshgrid(k, k, indexing="ij")
        eta = np.stack([w0 * k1, w0 * k2])
        for a in range(n):
            for b in range(n):
                c = fh[a, b]
                if c == 0:
                    continue
                xi = np.broadcast_to(np.array([w0 * k[a], w0 * k[b]])[:, None, None], eta.shape)
                full[a:a + n, b:b + n] += _weighted(bsym, xi, eta, c * gh)
    # full[i] holds mode i - n (per axis); the band is [-n/2, n/2)
    band = slice(n // 2, n // 2 + n)
    sl = (band,) * grid.dim
    kept = full[sl]
    total = float(np.sum(np.abs(full) ** 2))
    dropped = float(np.sqrt(max(total - np.sum(np.abs(kept) ** 2), 0.0) / total)) if total > 0 else 0.0
    out = inverse_transform(Spectrum(grid, np.fft.ifftshift(kept)))
    return (out, dropped) if with_dropped else out


def _weighted(bsym, xi, eta, coef):
    """``sigma * coef``; pairs with zero coefficient are skipped, and a symbol left
    undefined at ``(0, 0)`` acts there as 0, as linear multipliers do on the DC mode."""
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.asarray(bsym(xi, eta), dtype=complex)
    origin = np.all(xi == 0, axis=0) & np.all(eta == 0, axis=0)
    vals = np.where(origin & ~np.isfinite(vals), 0.0, vals)
    out = np.where(coef == 0, 0.0, vals * coef)
    bad = ~np.isfinite(out)
    if bad.any():
        i = np.argwhere(bad)[0]
        where = (xi[(slice(None),) + tuple(i)].tolist(), eta[(slice(None),) + tuple(i)].tolist())
        raise ValueError(f"symbol {bsym.name} is not finite at (xi, eta) = {where}")
    return out


def _full_convolution(fh: np.ndarray, gh: np.ndarray) -> np.ndarray:
    """Linear (non-cyclic) convolution of centred coefficient arrays."""
    shape = tuple(2 * s - 1 for s in fh.shape)
    size = tuple(2 * s for s in fh.shape)
    axes = tuple(range(fh.ndim))
    out = np.fft.ifftn(np.fft.fftn(fh, size, axes) * np.fft.fftn(gh, size, axes), axes=axes)
    return out[tuple(slice(0, s) for s in shape)]


def cm_split(bsym: BilinearSymbol, inner: float = 10.0, outer: float = 20.0,
             profile: str = "bump") -> tuple[BilinearSymbol, BilinearSymbol]:
    """Split ``sigma = sigma1 + sigma2`` along the cone ratio ``r = |eta|/|xi|``.

    ``sigma1`` vanishes where ``|xi| < |eta|/outer`` and ``sigma2`` vanishes
    unless ``inner |xi| <= |eta|``.
    """

    def factor(xi, eta):
        a, b = _norm(xi), _norm(eta)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(a > 0, b / np.where(a > 0, a, 1.0), np.inf)
        r = np.where((a == 0) & (b == 0), 0.0, r)
        return cutoff(np.where(np.isinf(r), 2 * outer, r), inner, outer, profile)

    s1 = BilinearSymbol(lambda xi, eta: bsym(xi, eta) * factor(xi, eta), bsym.name + "_1")
    s2 = BilinearSymbol(lambda xi, eta: bsym(xi, eta) * (1.0 - factor(xi, eta)), bsym.name + "_2")
    return s1, s2


@dataclass
class HMReport:
    """``sup |d_xi^a d_eta^b sigma| (|xi| + |eta|)^(a+b)`` per derivative order ``(a, b)``."""

    name: str
    sups: dict[tuple[int, int], float]
    by_radius: dict[float, float]
    max_order: int
    converged: bool
    refinements: int

    def order_sup(self, order: int) -> float:
        return max(v for (a, b), v in self.sups.items() if a + b == order)

    @property
    def finite(self) -> bool:
        return all(np.isfinite(v) for v in self.sups.values())

    def as_dict(self) -> dict:
        return {"name": self.name, "max_order": self.max_order, "converged": self.converged,
                "refinements": self.refinements,
                "sups": {f"{a},{b}": v for (a, b), v in self.sups.items()},
                "by_radius": {repr(r): v for r, v in self.by_radius.items()}}


def _hm_sups(bsym, max_order, radii, n_angles, step):
    theta = (np.arange(n_angles) + 0.5) * (2 * np.pi / n_angles)
    rho = np.asarray(radii, dtype=float)
    R, T = np.meshgrid(rho, theta, indexing="ij")
    xi0, eta0 = R * np.cos(T), R * np.sin(T)
    h = step * R
    cache = {}

    def at(p, q):  # offsets in half steps
        if (p, q) not in cache:
            cache[p, q] = np.asarray(bsym((xi0 + p * h / 2)[None], (eta0 + q * h / 2)[None]),
                                     dtype=complex)
        return cache[p, q]

    sups, by_radius = {}, {r: 0.0 for r in rho.tolist()}
    for a in range(max_order + 1):
        for b in range(max_order + 1 - a):
            acc = np.zeros(R.shape, dtype=complex)
            for i, j in product(range(a + 1), range(b + 1)):
                c = (-1) ** (i + j) * comb(a, i) * comb(b, j)
                acc += c * at(a - 2 * i, b - 2 * j)
            deriv = acc / h ** (a + b)
            val = np.abs(deriv) * (np.abs(xi0) + np.abs(eta0)) ** (a + b)
            sups[a, b] = float(val.max())
            for r, row in zip(rho.tolist(), val):
                by_radius[r] = max(by_radius[r], float(row.max()))
    return sups, by_radius


def hm_symbol_check(bsym: BilinearSymbol, max_order: int = 5, radii=(1.0,),
                    n_angles: int = 2880, step: float = 2e-3, rtol: float = 0.1) -> HMReport:
    """Sampled Coifman-Meyer condition for a 1D bilinear symbol.

    Mixed central differences of step ``step * |(xi, eta)|`` are evaluated on
    circles of the given radii.  The check is repeated with half the step;
    when the two disagree by more than ``rtol`` on some order it is refined
    once more (denser angles, smaller step) and ``converged`` records whether
    the last two passes agreed.
    """
    if not 0 <= max_order <= 5:
        raise ValueError(f"max_order must be at most 5, got {max_order}")

    def agree(s1, s2):
        return all(abs(s1[k] - s2[k]) <= rtol * max(abs(s2[k]), 1e-6) for k in s1)

    prev, _ = _hm_sups(bsym, max_order, radii, n_angles, step)
    cur, by_r = _hm_sups(bsym, max_order, radii, n_angles, step / 2)
    refinements = 0
    if not agree(prev, cur):
        refinements = 1
        prev = cur
        cur, by_r = _hm_sups(bsym, max_order, radii, 2 * n_angles, step / 4)
    return HMReport(bsym.name, cur, by_r, max_order, agree(prev, cur), refinements)


def kato_ponce_decompose(s: float, profile: str = "bump"
                         ) -> tuple[BilinearSymbol, BilinearSymbol, BilinearSymbol]:
    """Symbols with ``D^s(fg) = s1(D)(D^s f, g) + s2(D)(f, D^s g) + s3(D)(f, D^s g)``.

    With ``r = |eta|/|xi|``: ``chi1 = 1`` for ``r <= 1/2`` and 0 for ``r >= 1``;
    ``chi3 = (1 - chi1) c`` and ``chi2 = (1 - chi1)(1 - c)`` where ``c`` drops
    from 1 at ``r = 1`` to 0 at ``r = 2``.
    """
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")

    def parts(xi, eta):
        a, b = _norm(xi), _norm(eta)
        tot = _norm(xi + eta) ** s
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(a > 0, b / np.where(a > 0, a, 1.0), 1e300)
        r = np.where((a == 0) & (b == 0), 0.0, r)
        rr = np.minimum(r, 1e6)
        chi1 = cutoff(rr, 0.5, 1.0, profile)
        c = cutoff(rr, 1.0, 2.0, profile)
        return a, b, tot, chi1, (1 - chi1) * (1 - c), (1 - chi1) * c

    def safe_div(num, den):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(num == 0, 0.0, num / np.where(den > 0, den, 1.0))

    def s1(xi, eta):
        a, _, tot, chi1, _, _ = parts(xi, eta)
        return safe_div(tot * chi1, a ** s)

    def s2(xi, eta):
        _, b, tot, _, chi2, _ = parts(xi, eta)
        return safe_div(tot * chi2, b ** s)

    def s3(xi, eta):
        _, b, tot, _, _, chi3 = parts(xi, eta)
        return safe_div(tot * chi3, b ** s)

    return (BilinearSymbol(s1, f"kato_ponce_1(s={s:g})"),
            BilinearSymbol(s2, f"kato_ponce_2(s={s:g})"),
            BilinearSymbol(s3, f"kato_ponce_3(s={s:g})"))


def kato_ponce_apply(f: SampledField, g: SampledField, s: float) -> SampledField:
    """Right-hand side of the three-term decomposition of ``D^s(fg)``."""
    from .field import fractional_derivative

    s1, s2, s3 = kato_ponce_decompose(s)
    dsf = fractional_derivative(f, s)
    dsg = fractional_derivative(g, s)
    return (coifman_meyer_apply(dsf, g, s1) + coifman_meyer_apply(f, dsg, s2)
            + coifman_meyer_apply(f, dsg, s3))


def duality_pairing(u: SampledField, v: SampledField) -> complex:
    """Discrete ``int u conj(v) dx``."""
    u._check(v)
    return complex(np.sum(u.values * np.conj(v.values)) * u.grid.cell_volume)


# -- spot checks ---------------------------------------------------------------

def kernel_decay_fit(sym, aux: AuxiliaryFamily, t: float) -> dict:
    """Materialize ``K_t(z) = w(t) int psi2_hat(t xi)/sigma_w(xi) e^{i z xi} dxi/2pi``.

    Returns ``A = max_z t |K_t(z)|`` and the least-squares slope of
    ``log |K_t|`` against ``log(1 + |z|/t)`` on ``2t <= |z| <= L/4`` (1D).
    """
    grid = sym.grid
    mag = grid.frequency_magnitude()
    mult = np.zeros(grid.shape)
    nz = mag > 0
    mult[nz] = float(sym.weight(t)) * aux.psi2_hat(t * mag[nz]) / sym.values[nz]
    coeffs = mult / grid.period
    z = grid.axis()
    # kernel centred at z = 0, which is the sample with index n/2
    kern = inverse_transform(Spectrum(grid, coeffs.astype(complex))).values
    amp = float(t * np.abs(kern).max())
    sel = (np.abs(z) >= 2 * t) & (np.abs(z) <= grid.period / 4)
    kv = np.abs(kern[sel])
    keep = kv > 1e-14 * np.abs(kern).max()
    slope = float("nan")
    if keep.sum() >= 4:
        x = np.log1p(np.abs(z[sel][keep]) / t)
        slope = float(np.polyfit(x, np.log(kv[keep]), 1)[0])
    return {"t": t, "A": amp, "decay_slope": slope}


def modulated_bump_constant(pair: BumpPair, grid: GridSpec, shifts, delta: float = 0.5) -> float:
    """``max_u max_x |psi(x+u)| (1+|x|)^(1+delta) / (1+|u|)^(1+delta)`` (1D)."""
    z = grid.axis()
    coeffs = pair.psi_hat(grid.frequency_magnitude()).astype(complex) / grid.period
    psi = inverse_transform(Spectrum(grid, coeffs)).values
    best = 0.0
    for u in shifts:
        shift = int(round(u / grid.spacing))
        shifted = np.roll(psi, -shift)
        val = np.abs(shifted) * (1 + np.abs(z)) ** (1 + delta) / (1 + abs(u)) ** (1 + delta)
        best = max(best, float(val.max()))
    return best
