"""Smooth one-dimensional building blocks for spectral bumps and cutoffs."""
from __future__ import annotations

import numpy as np

PROFILES = ("bump", "quintic")


def _exp_kernel(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def smooth_step(x, profile: str = "bump"):
    """Nondecreasing step: 0 for ``x <= 0``, 1 for ``x >= 1``.

    ``bump`` is C-infinity (built from ``exp(-1/x)``); ``quintic`` is the C2
    polynomial ``6x^5 - 15x^4 + 10x^3``.
    """
    x = np.asarray(x, dtype=float)
    if profile == "bump":
        a = _exp_kernel(x)
        b = _exp_kernel(1.0 - x)
        return a / (a + b)
    if profile == "quintic":
        y = np.clip(x, 0.0, 1.0)
        return y ** 3 * (10 - 15 * y + 6 * y ** 2)
    raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")


def cutoff(r, inner: float, outer: float, profile: str = "bump"):
    """Equal to 1 for ``r <= inner`` and 0 for ``r >= outer``."""
    r = np.asarray(r, dtype=float)
    return 1.0 - smooth_step((r - inner) / (outer - inner), profile)


def window(u, profile: str = "bump"):
    """Bump on ``[-1, 1]`` with peak 1 at ``u = 0``, zero outside."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1
    v = 1.0 - u[inside] ** 2
    if profile == "bump":
        out[inside] = np.exp(1.0 - 1.0 / v)
    elif profile == "quintic":
        out[inside] = v ** 3
    else:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    return out
