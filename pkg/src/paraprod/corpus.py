"""Deterministic test-function corpus.

Each entry is a ``2 pi``-periodic profile ``F`` on the unit torus together
with a centre ``x_c`` (a grid midpoint).  On a grid of period ``L`` the
entry is sampled at dilation level ``j`` as ``F(lam (x - x_c))`` with
``lam = 2^(j0 + j) * 2 pi / L``; consecutive levels differ by an exact factor
two, and singular points always fall halfway between samples.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bilinear import ScalarSymbol, VariableSymbol
from .field import GridSpec, SampledField, band_limit

__all__ = [
    "TAGS",
    "CorpusEntry",
    "generate_corpus",
    "random_scalar_symbol",
    "random_variable_symbol",
    "GENERATORS",
]

TAGS = frozenset({"Linf", "BMO", "bmo", "Xw", "H1-atom"})

# base compression 2^BASE_LEVEL so that levels -BASE_LEVEL..BASE_LEVEL stay periodic
BASE_LEVEL = 3


def _pdist(x):
    """Periodic distance to 0 on the unit torus, in every coordinate."""
    return np.abs((x + np.pi) % (2 * np.pi) - np.pi)


def _chord(coords):
    # |2 sin(x/2)| per axis, combined in the Euclidean way
    return np.sqrt(sum((2 * np.sin(c / 2)) ** 2 for c in coords))


def _log_periodic(coords, scale):
    return scale * np.log(_chord(coords))


def _truncated_log(coords, radius):
    d = np.sqrt(sum(_pdist(c) ** 2 for c in coords))
    return np.log(np.maximum(radius / d, 1.0))


def _smoothed_steps(coords, jumps, heights, width):
    x = coords[0]
    out = np.zeros_like(x)
    # each jump a_i contributes a periodic smoothed step of the given height
    for a, hgt in zip(jumps, heights):
        out += hgt * 0.5 * (1 + np.tanh(np.sin((x - a) / 2) / np.sin(width / 2)))
    if len(coords) > 1:
        out = out * (1 + 0.5 * np.tanh(np.sin(coords[1]) / width))
    return out


def _band_series(coords, amps, phases):
    out = 0.0
    for i, c in enumerate(coords):
        k = np.arange(1, amps.shape[1] + 1)
        out = out + (amps[i][:, None] * np.cos(np.multiply.outer(k, c.ravel())
                                                + phases[i][:, None])).sum(0).reshape(c.shape)
    return out


def _atom(coords, radius):
    """Derivative of a compact bump at scale ``radius``; mean zero and ``L^1`` norm O(1)."""
    u = ((coords[0] + np.pi) % (2 * np.pi) - np.pi) / radius
    inside = np.abs(u) < 1
    out = np.zeros_like(u)
    v = 1 - u[inside] ** 2
    out[inside] = -2 * u[inside] / v ** 2 * np.exp(1 - 1 / v) / radius
    for c in coords[1:]:
        w = _pdist(c) / radius
        out = out * np.where(w < 1, np.exp(1 - 1 / np.maximum(1 - w ** 2, 1e-300)), 0.0) / radius
    return out


GENERATORS = {
    "log_periodic": (_log_periodic, ("BMO", "bmo", "Xw")),
    "truncated_log": (_truncated_log, ("BMO", "bmo", "Xw")),
    "smoothed_steps": (_smoothed_steps, ("Linf", "BMO", "bmo", "Xw")),
    "band_series": (_band_series, ("Linf", "BMO", "bmo", "Xw")),
    "atom": (_atom, ("Linf", "BMO", "bmo", "Xw", "H1-atom")),
}


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    generator: str
    params: dict = field(compare=False, hash=False)
    tags: frozenset
    center_cell: int

    def __post_init__(self):
        bad = set(self.tags) - TAGS
        if bad:
            raise ValueError(f"unknown space tags {sorted(bad)}")
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}")

    def profile(self, coords):
        return GENERATORS[self.generator][0](coords, **self.params)

    def sample(self, grid: GridSpec, j: int = 0, kmax: int | None = None) -> SampledField:
        """The entry at dilation level ``j``; ``kmax`` band-limits to ``|k| < kmax``."""
        if abs(j) > BASE_LEVEL:
            raise ValueError(f"dilation level must lie in [-{BASE_LEVEL}, {BASE_LEVEL}]")
        lam = 2.0 ** (BASE_LEVEL + j) * 2 * np.pi / grid.period
        # centre at a cell midpoint; per-axis offset keeps 2D centres off the grid too
        xc = -grid.period / 2 + (self.center_cell % grid.n + 0.5) * grid.spacing
        vals = self.profile(tuple(lam * (c - xc) for c in grid.coords()))
        f = SampledField(grid, np.asarray(vals, dtype=float))
        return band_limit(f, kmax) if kmax is not None else f


def _entry(rng, i, name):
    if name == "log_periodic":
        params = {"scale": float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 1.5))}
    elif name == "truncated_log":
        params = {"radius": float(rng.uniform(0.3, 1.5))}
    elif name == "smoothed_steps":
        k = int(rng.integers(2, 5))
        params = {"jumps": tuple(float(a) for a in np.sort(rng.uniform(-np.pi, np.pi, k))),
                  "heights": tuple(float(hh) for hh in rng.uniform(-1, 1, k)),
                  "width": float(rng.uniform(0.02, 0.1))}
    elif name == "band_series":
        # three harmonics keep level +3 below a quarter of the band at N = 1024
        amps = rng.choice([-1.0, 1.0], (2, 3)) * rng.uniform(0.2, 1.0, (2, 3))
        params = {"amps": amps, "phases": rng.uniform(0, 2 * np.pi, (2, 3))}
    else:
        params = {"radius": float(rng.uniform(0.2, 0.8))}
    return CorpusEntry(f"{name}-{i:03d}", name, params, frozenset(GENERATORS[name][1]),
                       int(rng.integers(0, 1 << 20)))


def generate_corpus(size: int, seed: int, kinds=None) -> list[CorpusEntry]:
    """``size`` entries cycling through the generator kinds, reproducible from ``seed``."""
    kinds = list(GENERATORS) if kinds is None else list(kinds)
    rng = np.random.default_rng(seed)
    return [_entry(rng, i, kinds[i % len(kinds)]) for i in range(size)]


def random_scalar_symbol(rng: np.random.Generator, octaves_per_piece: int = 2,
                         span: int = 40) -> ScalarSymbol:
    """``m(t)`` constant on blocks of ``octaves_per_piece`` octaves, values in the unit disk."""
    n = 2 * span // octaves_per_piece + 1
    r = np.sqrt(rng.uniform(0, 1, n))
    vals = r * np.exp(1j * rng.uniform(0, 2 * np.pi, n))

    def m(t):
        idx = np.floor(np.log2(np.asarray(t, dtype=float)) / octaves_per_piece).astype(int)
        return vals[np.clip(idx + n // 2, 0, n - 1)]

    return ScalarSymbol(m, 1.0)


def random_variable_symbol(rng: np.random.Generator, harmonics: int = 3) -> VariableSymbol:
    """``m(t, x) = sum_k a_k cos(k x_1 + b_k log t + c_k)`` scaled so ``sup |m| <= 1``.

    The gradient bound ``sum_k k |a_k|`` is exact for the first coordinate.
    """
    a = rng.uniform(-1, 1, harmonics)
    a = a / np.abs(a).sum()
    b = rng.uniform(-1, 1, harmonics)
    c = rng.uniform(0, 2 * np.pi, harmonics)
    k = np.arange(1, harmonics + 1)

    def m(t, *coords):
        x = coords[0]
        lt = np.log(t)
        return sum(a[i] * np.cos(k[i] * x + b[i] * lt + c[i]) for i in range(harmonics))

    return VariableSymbol(m, 1.0, float(np.sum(k * np.abs(a))))
