"""Admissible weights and sampled checks of the four admissibility axioms.

A weight ``w`` on ``(0, inf)`` is admissible when

(A1) ``0 < inf_t w(st)/w(t) <= sup_t w(st)/w(t) < inf`` for every ``s > 0``,
(A2) ``w(t) >= 1``,
(A3) ``sup_t w(t) (1 + 1/t)^(-N) < inf`` for some ``N > 0``,
(A4) the ratio bounds of (A1) stay inside ``(0, inf)`` uniformly over ``s`` in
     any closed interval.

All checks here are sampled on a :class:`~paraprod.calderon.ScaleGrid`, so
they certify the axioms on the sampled range only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .calderon import ScaleGrid

__all__ = [
    "AdmissibleWeight",
    "RatioCertificate",
    "ValidationReport",
    "builtin_weight",
    "ratio_bounds",
    "validate_admissible",
    "axiom_scale_grid",
]

BUILTINS = ("unit", "log", "log_power")


@dataclass(frozen=True)
class AdmissibleWeight:
    eval: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    label: str
    n_growth: float

    def __call__(self, t):
        return self.eval(np.asarray(t, dtype=float))


def _unit(t):
    return np.ones_like(t, dtype=float)


def _log(t):
    return 1.0 + np.log(1.0 / np.minimum(t, 1.0))


def builtin_weight(name: str, alpha: float = 1.0) -> AdmissibleWeight:
    """``unit`` (w = 1), ``log`` (1 + log+(1/t)) or ``log_power`` ((1 + log+(1/t))^alpha)."""
    if name == "unit":
        return AdmissibleWeight(_unit, "unit", 1.0)
    if name == "log":
        return AdmissibleWeight(_log, "log", 1.0)
    if name == "log_power":
        if not alpha > 0:
            raise ValueError(f"log_power needs alpha > 0, got {alpha}")
        return AdmissibleWeight(lambda t: _log(t) ** alpha, f"log_power({alpha:g})",
                                float(alpha))
    raise ValueError(f"unknown weight {name!r}; choose from {BUILTINS}")


def axiom_scale_grid(nodes_per_octave: int = 64) -> ScaleGrid:
    """The default sampling range ``[2^-20, 2^20]``."""
    return ScaleGrid.from_range(2.0 ** -20, 2.0 ** 20, nodes_per_octave)


@dataclass
class RatioCertificate:
    s: float
    inf_ratio: float
    sup_ratio: float
    t_range: tuple[float, float]
    argmin_t: float = float("nan")
    argmax_t: float = float("nan")

    def as_dict(self) -> dict:
        return {"s": self.s, "inf_ratio": self.inf_ratio, "sup_ratio": self.sup_ratio,
                "t_range": list(self.t_range), "argmin_t": self.argmin_t,
                "argmax_t": self.argmax_t}


def ratio_bounds(w: AdmissibleWeight, s: float, scale_grid: ScaleGrid) -> RatioCertificate:
    """Sampled ``inf`` and ``sup`` over ``t`` of ``w(s t) / w(t)``."""
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")
    t = scale_grid.t_values
    num = w(s * t)
    den = w(t)
    if not (np.all(np.isfinite(num)) and np.all(np.isfinite(den))):
        bad = t[~(np.isfinite(num) & np.isfinite(den))][0]
        raise ValueError(f"weight {w.label} is not finite near t={bad:g}")
    r = num / den
    i_min, i_max = int(np.argmin(r)), int(np.argmax(r))
    return RatioCertificate(float(s), float(r[i_min]), float(r[i_max]),
                            (scale_grid.t_min, scale_grid.t_max),
                            float(t[i_min]), float(t[i_max]))


@dataclass
class ValidationReport:
    label: str
    n_growth: float
    t_range: tuple[float, float]
    s_range: tuple[float, float]
    passed: dict[str, bool]
    witnesses: dict[str, dict]

    @property
    def admissible(self) -> bool:
        return all(self.passed.values())

    def as_dict(self) -> dict:
        return {"weight": self.label, "n_growth": self.n_growth,
                "t_range": list(self.t_range), "s_range": list(self.s_range),
                "admissible": self.admissible, "passed": self.passed,
                "witnesses": self.witnesses}


# (A3) is read as "the product saturates": its sup over the full sampled range
# may exceed the sup over the middle half (in log t) by at most this factor.
A3_SATURATION = 1.01


def validate_admissible(w: AdmissibleWeight, s_samples, scale_grid: ScaleGrid | None = None
                        ) -> ValidationReport:
    scale_grid = axiom_scale_grid() if scale_grid is None else scale_grid
    s_samples = np.asarray(list(s_samples), dtype=float)
    t = scale_grid.t_values
    passed: dict[str, bool] = {}
    wit: dict[str, dict] = {}

    certs = [ratio_bounds(w, s, scale_grid) for s in s_samples]
    infs = np.array([c.inf_ratio for c in certs])
    sups = np.array([c.sup_ratio for c in certs])
    a1_ok = bool(np.all(infs > 0) and np.all(np.isfinite(sups)) and np.all(infs <= sups))
    passed["A1"] = a1_ok
    worst = int(np.argmin(infs))
    wit["A1"] = {"certificates": [c.as_dict() for c in certs],
                 "worst_inf": certs[worst].as_dict()}

    vals = w(t)
    k = int(np.argmin(vals))
    passed["A2"] = bool(vals[k] >= 1.0 - 1e-12)
    wit["A2"] = {"min_w": float(vals[k]), "at_t": float(t[k])}

    prod = vals * (1.0 + 1.0 / t) ** (-w.n_growth)
    logt = np.log(t)
    lo, hi = logt[0], logt[-1]
    middle = (logt >= lo + (hi - lo) / 4) & (logt <= hi - (hi - lo) / 4)
    sup_all = float(prod.max())
    sup_mid = float(prod[middle].max())
    passed["A3"] = bool(np.isfinite(sup_all) and sup_all <= A3_SATURATION * sup_mid)
    wit["A3"] = {"N": w.n_growth, "sup_full_range": sup_all, "sup_middle_range": sup_mid,
                 "at_t": float(t[int(np.argmax(prod))])}

    a4_inf = float(infs.min())
    a4_sup = float(sups.max())
    passed["A4"] = bool(0 < a4_inf <= a4_sup < math.inf)
    wit["A4"] = {"inf_over_s": a4_inf, "sup_over_s": a4_sup,
                 "s_interval": [float(s_samples.min()), float(s_samples.max())]}

    return ValidationReport(w.label, w.n_growth, (scale_grid.t_min, scale_grid.t_max),
                            (float(s_samples.min()), float(s_samples.max())), passed, wit)


def default_s_samples(n: int = 49) -> np.ndarray:
    """Log-uniform samples of the closed interval ``[1/8, 8]``."""
    return np.exp2(np.linspace(-3.0, 3.0, n))
