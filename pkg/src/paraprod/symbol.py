"""The radial symbol ``sigma_w`` and the multipliers ``I_sigma``, ``I_{1/sigma}``.

``sigma_w(xi)^2 = int_0^inf |psi_hat(t xi)|^2 w(t)^2 dt/t``, discretized on the
scale nodes of a :class:`~paraprod.calderon.ScaleGrid`.
"""
from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field

import numpy as np

from .calderon import BumpPair, ScaleGrid
from .field import GridSpec, SampledField, apply_multiplier
from .weights import AdmissibleWeight

__all__ = [
    "SigmaSymbol",
    "MikhlinReport",
    "compute_sigma",
    "sigma_values",
    "apply_I_sigma",
    "apply_I_inv_sigma",
    "check_mikhlin",
]


def sigma_values(w: AdmissibleWeight, pair: BumpPair, scales: ScaleGrid, xi_mag,
                 chunk: int = 4096) -> np.ndarray:
    """Vectorized ``sigma_w`` at positive magnitudes, with coverage checks."""
    xi = np.atleast_1d(np.asarray(xi_mag, dtype=float))
    if np.any(xi <= 0):
        raise ValueError("sigma_w is only defined for nonzero frequencies")
    lo, hi = xi.min(), xi.max()
    if not (scales.covers(lo, pair.alpha, pair.beta) and scales.covers(hi, pair.alpha, pair.beta)):
        need = (pair.alpha / hi, pair.beta / lo)
        raise ValueError(
            f"scale grid [{scales.t_min:.4g}, {scales.t_max:.4g}] does not cover the "
            f"annulus window; need [{need[0]:.4g}, {need[1]:.4g}]")
    t = scales.t_values
    w2 = np.asarray(w(t), dtype=float) ** 2
    out = np.empty_like(xi)
    for start in range(0, xi.size, chunk):
        part = xi[start:start + chunk]
        psi2 = pair.psi_hat(np.multiply.outer(t, part)) ** 2
        out[start:start + chunk] = np.sqrt(scales.log_step * (w2 @ psi2))
    return out


def compute_sigma(w: AdmissibleWeight, pair: BumpPair, scales: ScaleGrid,
                  xi_mag: float) -> float:
    return float(sigma_values(w, pair, scales, [xi_mag])[0])


@dataclass
class SigmaSymbol:
    """``sigma_w`` cached at every frequency magnitude of ``grid``."""

    weight: AdmissibleWeight
    pair: BumpPair
    scales: ScaleGrid
    grid: GridSpec
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        # equal |k|^2 (an exact integer) share one quadrature, so the cache is exactly radial
        key = sum(k.astype(np.int64) ** 2 for k in self.grid.modes())
        uniq, inv = np.unique(key, return_inverse=True)
        radii = self.grid.fundamental * np.sqrt(uniq)
        vals = np.zeros(radii.shape)
        nz = radii > 0
        vals[nz] = sigma_values(self.weight, self.pair, self.scales, radii[nz])
        self.values = vals[inv].reshape(self.grid.shape)
        self.values.setflags(write=False)

    @property
    def key(self) -> str:
        text = repr((self.weight.label, self.weight.n_growth, self.pair, self.scales, self.grid))
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def multiplier(self, inverse: bool = False) -> np.ndarray:
        out = np.zeros(self.grid.shape, dtype=complex)
        nz = self.grid.frequency_magnitude() > 0
        out[nz] = 1.0 / self.values[nz] if inverse else self.values[nz]
        return out

    def __call__(self, xi_mag):
        return sigma_values(self.weight, self.pair, self.scales, xi_mag)

    def to_csv(self, path):
        """Radial profile ``|xi|, sigma_w, w(1/|xi|)`` at the grid magnitudes."""
        mag = self.grid.frequency_magnitude().ravel()
        vals = self.values.ravel()
        order = np.argsort(mag, kind="stable")
        seen = set()
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["xi", "sigma_w", "w_inv_xi"])
            for i in order:
                if mag[i] == 0 or mag[i] in seen:
                    continue
                seen.add(mag[i])
                wr.writerow([repr(float(mag[i])), repr(float(vals[i])),
                             repr(float(self.weight(1.0 / mag[i])))])


def apply_I_sigma(sym: SigmaSymbol, f: SampledField) -> SampledField:
    return apply_multiplier(f, sym.multiplier())


def apply_I_inv_sigma(sym: SigmaSymbol, f: SampledField) -> SampledField:
    return apply_multiplier(f, sym.multiplier(inverse=True))


@dataclass
class MikhlinReport:
    """Sup over sampled radii of the normalized radial derivatives.

    ``sigma_ratios[k] = sup |d^k sigma| rho^k / w(1/rho)`` and
    ``inverse_ratios[k] = sup |d^k (1/sigma)| rho^k w(1/rho)``.
    """

    weight: str
    sigma_ratios: dict[int, float]
    inverse_ratios: dict[int, float]
    sup_inverse: float
    rho_range: tuple[float, float]
    n_samples: int

    def as_dict(self) -> dict:
        return {"weight": self.weight,
                "sigma_ratios": {str(k): v for k, v in self.sigma_ratios.items()},
                "inverse_ratios": {str(k): v for k, v in self.inverse_ratios.items()},
                "sup_inverse": self.sup_inverse, "rho_range": list(self.rho_range),
                "n_samples": self.n_samples}


MIKHLIN_REFINEMENT = 8


def check_mikhlin(sym: SigmaSymbol, max_order: int = 2) -> MikhlinReport:
    """Finite-difference check of the derivative bounds on ``sigma_w`` and ``1/sigma_w``.

    Radial derivatives are sampled at ``MIKHLIN_REFINEMENT`` times the grid's
    frequency resolution, between the fundamental and the Nyquist radius.
    """
    if not 0 <= max_order <= 2:
        raise ValueError(f"max_order must be 0, 1 or 2, got {max_order}")
    g = sym.grid
    d = g.fundamental / MIKHLIN_REFINEMENT
    lo = g.fundamental + d
    hi = np.pi * g.n / g.period - d
    rho = np.arange(lo, hi + d / 2, d)
    if rho.size < 16:
        raise ValueError(f"only {rho.size} radial samples; refine the grid")
    s_m, s_0, s_p = (sym(rho - d), sym(rho), sym(rho + d))
    inv_m, inv_0, inv_p = 1 / s_m, 1 / s_0, 1 / s_p
    wr = np.asarray(sym.weight(1.0 / rho), dtype=float)
    derivs = {0: (s_0, inv_0),
              1: ((s_p - s_m) / (2 * d), (inv_p - inv_m) / (2 * d)),
              2: ((s_p - 2 * s_0 + s_m) / d ** 2, (inv_p - 2 * inv_0 + inv_m) / d ** 2)}
    sig, inv = {}, {}
    for k in range(max_order + 1):
        ds, di = derivs[k]
        sig[k] = float(np.max(np.abs(ds) * rho ** k / wr))
        inv[k] = float(np.max(np.abs(di) * rho ** k * wr))
    return MikhlinReport(sym.weight.label, sig, inv, float(inv_0.max()),
                         (float(rho[0]), float(rho[-1])), int(rho.size))
