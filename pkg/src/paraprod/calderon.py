"""Spectral bumps, the Calderon normalization and the localization operators.

``P_t = phi_hat(tD)`` is the low-pass at scale ``t`` and ``Q_t = psi_hat(tD)``
the band-pass.  Integrals ``int_0^inf (.) dt/t`` are discretized on a
:class:`ScaleGrid` of nodes ``t = 2^(m/p)`` (``p`` nodes per octave) with the
constant weight ``ln2/p`` per node.  The nodes are aligned so that ``t = 1``
is always one of them and dyadic dilations map nodes onto nodes.
"""
from __future__ import annotations

import csv
import functools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .field import GridSpec, SampledField, apply_multiplier
from .profiles import cutoff, window

__all__ = [
    "ScaleGrid",
    "BumpPair",
    "AuxiliaryFamily",
    "make_bump_pair",
    "apply_Pt",
    "apply_Qt",
    "make_auxiliary_family",
    "pt_sup_ratio",
    "calderon_sum",
    "scale_stack",
]

DEFAULT_NODES_PER_OCTAVE = 64


@dataclass(frozen=True)
class ScaleGrid:
    """Log-uniform nodes ``2^(m/p)`` for ``m_min <= m <= m_max``."""

    m_min: int
    m_max: int
    nodes_per_octave: int = DEFAULT_NODES_PER_OCTAVE

    def __post_init__(self):
        if self.m_max < self.m_min:
            raise ValueError("empty scale grid")

    @classmethod
    def from_range(cls, t_min: float, t_max: float,
                   nodes_per_octave: int = DEFAULT_NODES_PER_OCTAVE) -> "ScaleGrid":
        """Smallest aligned grid containing ``[t_min, t_max]``."""
        if not 0 < t_min <= t_max:
            raise ValueError(f"need 0 < t_min <= t_max, got {t_min}, {t_max}")
        p = nodes_per_octave
        # the 1e-9 guard keeps exact powers of two from gaining an extra node
        lo = math.floor(p * math.log2(t_min) + 1e-9)
        hi = math.ceil(p * math.log2(t_max) - 1e-9)
        return cls(lo, hi, p)

    @classmethod
    def covering(cls, grid: GridSpec, pair: "BumpPair") -> "ScaleGrid":
        """Grid on which every nonzero frequency of ``grid`` sees the whole annulus.

        Besides the annulus window this enforces ``t_min <= h/beta`` and
        ``t_max >= L``.
        """
        t_min = min(grid.spacing / pair.beta, pair.alpha / grid.nyquist)
        t_max = max(grid.period, pair.beta / grid.fundamental,
                    pair.phi_radius / grid.fundamental)
        return cls.from_range(t_min, t_max, pair.nodes_per_octave)

    @property
    def log_step(self) -> float:
        return math.log(2.0) / self.nodes_per_octave

    @property
    def t_values(self) -> np.ndarray:
        m = np.arange(self.m_min, self.m_max + 1)
        return np.exp2(m / self.nodes_per_octave)

    @property
    def quad_weights(self) -> np.ndarray:
        return np.full(len(self), self.log_step)

    @property
    def t_min(self) -> float:
        return 2.0 ** (self.m_min / self.nodes_per_octave)

    @property
    def t_max(self) -> float:
        return 2.0 ** (self.m_max / self.nodes_per_octave)

    def __len__(self) -> int:
        return self.m_max - self.m_min + 1

    def restrict(self, t_max: float) -> "ScaleGrid":
        """Nodes with ``t <= t_max``."""
        hi = min(self.m_max, math.floor(self.nodes_per_octave * math.log2(t_max) + 1e-9))
        return ScaleGrid(self.m_min, hi, self.nodes_per_octave)

    def covers(self, xi_mag: float, lo: float, hi: float) -> bool:
        """True when ``[lo/xi, hi/xi]`` lies inside ``[t_min, t_max]``."""
        return self.t_min <= lo / xi_mag and hi / xi_mag <= self.t_max


@dataclass(frozen=True)
class BumpPair:
    """Radial profiles ``psi_hat`` (annulus ``alpha <= |xi| <= beta``) and ``phi_hat``.

    ``phi_hat`` equals 1 on ``|xi| <= r0`` and vanishes for ``|xi| >= phi_radius``.
    ``normalization_constant`` is the raw Calderon sum that ``psi_hat`` is
    divided by (in square) so that the discrete Calderon sum equals one.
    """

    alpha: float
    beta: float
    r0: float
    phi_radius: float
    profile: str
    nodes_per_octave: int
    normalization_constant: float

    def _raw_psi(self, rho):
        rho = np.asarray(rho, dtype=float)
        out = np.zeros_like(rho)
        inside = (rho > self.alpha) & (rho < self.beta)
        la, lb = math.log(self.alpha), math.log(self.beta)
        u = (2 * np.log(rho[inside]) - la - lb) / (lb - la)
        out[inside] = window(u, self.profile)
        return out

    def psi_hat(self, rho):
        return self._raw_psi(rho) / math.sqrt(self.normalization_constant)

    def phi_hat(self, rho):
        return cutoff(np.abs(rho), self.r0, self.phi_radius, self.profile)

    def phi_mass(self, grid: GridSpec) -> float:
        """Discrete ``L^1`` norm of the kernel ``phi`` at ``t = 1`` on ``grid``."""
        kernel = apply_multiplier(_delta(grid), self.phi_hat(grid.frequency_magnitude()))
        return float(np.abs(kernel.values).sum())


def _delta(grid: GridSpec) -> SampledField:
    v = np.zeros(grid.shape, dtype=complex)
    v[(grid.n // 2,) * grid.dim] = 1.0
    return SampledField(grid, v)


def _raw_calderon(alpha, beta, profile, nodes_per_octave, xi=1.0):
    p = nodes_per_octave
    lo = math.floor(p * math.log2(alpha / xi)) - 1
    hi = math.ceil(p * math.log2(beta / xi)) + 1
    t = np.exp2(np.arange(lo, hi + 1) / p)
    la, lb = math.log(alpha), math.log(beta)
    rho = t * xi
    inside = (rho > alpha) & (rho < beta)
    u = (2 * np.log(rho[inside]) - la - lb) / (lb - la)
    return float(np.sum(window(u, profile) ** 2) * math.log(2.0) / p)


def make_bump_pair(alpha: float = 1.0, beta: float = 4.0, profile: str = "bump",
                   r0: float | None = None, phi_radius: float | None = None,
                   nodes_per_octave: int = DEFAULT_NODES_PER_OCTAVE) -> BumpPair:
    """Build a normalized bump pair.

    Parameters
    ----------
    alpha, beta : float
        Inner and outer radii of the annulus carrying ``psi_hat``.
    profile : {"bump", "quintic"}
        Smoothness class of the transitions.
    r0 : float, optional
        Plateau radius of ``phi_hat``; defaults to ``alpha/2``.
    phi_radius : float, optional
        Support radius of ``phi_hat``; defaults to ``beta``.
    nodes_per_octave : int
        Density of the scale quadrature the normalization is computed for.
    """
    if not 0 < alpha < beta:
        raise ValueError(f"need 0 < alpha < beta, got alpha={alpha}, beta={beta}")
    r0 = alpha / 2 if r0 is None else r0
    phi_radius = beta if phi_radius is None else phi_radius
    if not 0 < r0 < phi_radius:
        raise ValueError(f"need 0 < r0 < phi_radius, got r0={r0}, phi_radius={phi_radius}")
    const = _raw_calderon(alpha, beta, profile, nodes_per_octave)
    return BumpPair(alpha, beta, r0, phi_radius, profile, nodes_per_octave, const)


def calderon_sum(pair: BumpPair, scales: ScaleGrid, xi_mag) -> np.ndarray:
    """``sum_j |psi_hat(t_j xi)|^2 * log_step`` for each magnitude in ``xi_mag``."""
    xi = np.atleast_1d(np.asarray(xi_mag, dtype=float))
    t = scales.t_values
    vals = pair.psi_hat(np.multiply.outer(t, xi)) ** 2
    return vals.sum(axis=0) * scales.log_step


def apply_Pt(pair: BumpPair, t: float, f: SampledField) -> SampledField:
    if t <= 0:
        raise ValueError(f"scale must be positive, got {t}")
    return apply_multiplier(f, pair.phi_hat(t * f.grid.frequency_magnitude()).astype(complex))


def apply_Qt(pair: BumpPair, t: float, f: SampledField) -> SampledField:
    if t <= 0:
        raise ValueError(f"scale must be positive, got {t}")
    return apply_multiplier(f, pair.psi_hat(t * f.grid.frequency_magnitude()).astype(complex))


# Tables of multipliers over (scale node, grid frequency) are reused by every
# paraproduct and norm evaluation; they are read-only and keyed by frozen values.
_TABLE_LIMIT = 4_000_000


@functools.lru_cache(maxsize=64)
def _table(profile_fn_name: str, owner, scales: ScaleGrid, grid: GridSpec) -> np.ndarray:
    fn = getattr(owner, profile_fn_name)
    t = scales.t_values
    mag = grid.frequency_magnitude()
    tab = fn(np.multiply.outer(t, mag))
    tab.setflags(write=False)
    return tab


def multiplier_rows(fn_name: str, owner, scales: ScaleGrid, grid: GridSpec,
                    sl: slice) -> np.ndarray:
    if len(scales) * grid.n ** grid.dim <= _TABLE_LIMIT:
        return _table(fn_name, owner, scales, grid)[sl]
    fn = getattr(owner, fn_name)
    return fn(np.multiply.outer(scales.t_values[sl], grid.frequency_magnitude()))


def scale_stack(fn_name: str, owner, scales: ScaleGrid, f: SampledField,
                chunk: int | None = None) -> Iterator[tuple[slice, np.ndarray]]:
    """Yield ``(slice, A)`` with ``A[i] = a(t_i D) f`` for a chunk of scale nodes.

    ``fn_name`` names a radial profile method of ``owner`` (for instance
    ``"psi_hat"`` on a :class:`BumpPair`).
    """
    grid = f.grid
    axes = tuple(range(1, grid.dim + 1))
    if chunk is None:
        chunk = max(1, _TABLE_LIMIT // (grid.n ** grid.dim))
    fhat = np.fft.fftn(f.values)
    for start in range(0, len(scales), chunk):
        sl = slice(start, min(start + chunk, len(scales)))
        mult = multiplier_rows(fn_name, owner, scales, grid, sl)
        yield sl, np.fft.ifftn(mult * fhat, axes=axes)


@dataclass(frozen=True)
class AuxiliaryFamily:
    """Auxiliary profiles splitting the paraproduct into two pieces.

    ``phi_hat = psi1_hat + phi1_hat`` with ``psi1_hat = 0`` on ``|xi| <= alpha/8``
    and ``phi1_hat`` supported in ``|xi| <= alpha/4``; ``psi2_hat`` is 1 on
    ``[alpha/4, B]``, ``phi2_hat`` is 1 on ``|xi| <= B`` and ``psi3_hat`` is 1
    on the support of ``psi2_hat``.  ``B = beta + phi_radius`` (``2 beta`` for
    the default pair) bounds the spectrum of the products in both pieces.
    """

    pair: BumpPair

    @property
    def plateau(self) -> float:
        return self.pair.beta + self.pair.phi_radius

    def phi1_hat(self, rho):
        a = self.pair.alpha
        return self.pair.phi_hat(rho) * cutoff(rho, a / 8, a / 4, self.pair.profile)

    def psi1_hat(self, rho):
        phi = self.pair.phi_hat(rho)
        return phi - phi * cutoff(rho, self.pair.alpha / 8, self.pair.alpha / 4,
                                  self.pair.profile)

    def psi2_hat(self, rho):
        a, b, p = self.pair.alpha, self.plateau, self.pair.profile
        return (1.0 - cutoff(rho, a / 8, a / 4, p)) * cutoff(rho, b, 2 * b, p)

    def phi2_hat(self, rho):
        b = self.plateau
        return cutoff(rho, b, 2 * b, self.pair.profile)

    def psi3_hat(self, rho):
        a, b, p = self.pair.alpha, self.plateau, self.pair.profile
        return (1.0 - cutoff(rho, a / 16, a / 8, p)) * cutoff(rho, 2 * b, 4 * b, p)


def make_auxiliary_family(pair: BumpPair) -> AuxiliaryFamily:
    if pair.r0 < pair.alpha / 4:
        raise ValueError("phi_hat plateau must reach alpha/4 for the split")
    return AuxiliaryFamily(pair)


def pt_sup_ratio(pair: BumpPair, f: SampledField, w, scales: ScaleGrid) -> float:
    """``max_t ||P_t f||_inf / w(t)`` over the scale nodes."""
    wt = np.asarray(w(scales.t_values), dtype=float)
    best = 0.0
    red = tuple(range(1, f.grid.dim + 1))
    for sl, block in scale_stack("phi_hat", pair, scales, f):
        sup = np.abs(block).max(axis=red)
        best = max(best, float((sup / wt[sl]).max()))
    return best


def export_profiles_csv(pair: BumpPair, path, rho_max: float | None = None, n: int = 512):
    """Write ``rho, psi_hat, phi_hat`` columns for plotting."""
    rho_max = 1.25 * max(pair.beta, pair.phi_radius) if rho_max is None else rho_max
    rho = np.linspace(0.0, rho_max, n)
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["rho", "psi_hat", "phi_hat"])
        for r, a, b in zip(rho, pair.psi_hat(rho), pair.phi_hat(rho)):
            wr.writerow([repr(float(r)), repr(float(a)), repr(float(b))])
