"""Smooth cutoff chi: 0 for t <= 2, 1 for t >= 3, C-infinity in between.

The transition is the classical exponential smoothstep
``sigma(u) = g(u) / (g(u) + g(1-u))`` with ``g(u) = exp(-1/u)``, shifted so
that chi(t) = sigma(t - 2).  First and second derivatives are closed forms;
their suprema (attained inside (2, 3)) are published as module constants for
use in the comparability-bound reports.
"""

from __future__ import annotations

import numpy as np

CUTOFF_LO = 2.0
CUTOFF_HI = 3.0

# Measured suprema of |chi'| and |chi''| on [2, 3] (fine scan + local refine;
# |chi'| peaks exactly at t = 2.5 with value 2).
CHI_D1_MAX = 2.0
CHI_D2_MAX = 9.8415


def _transition_masks(t: np.ndarray):
    u = t - CUTOFF_LO
    mid = (u > 0.0) & (u < 1.0)
    return u, mid


def chi(t):
    """Cutoff value, vectorized; exact 0 below 2 and exact 1 above 3."""
    t = np.asarray(t, dtype=float)
    u, mid = _transition_masks(t)
    out = np.where(u >= 1.0, 1.0, 0.0)
    um = u[mid]
    ga = np.exp(-1.0 / um)
    gb = np.exp(-1.0 / (1.0 - um))
    out[mid] = ga / (ga + gb)
    return out


def chi_d1(t):
    """First derivative of chi; identically 0 outside (2, 3)."""
    t = np.asarray(t, dtype=float)
    u, mid = _transition_masks(t)
    out = np.zeros_like(u)
    um = u[mid]
    ga = np.exp(-1.0 / um)
    gb = np.exp(-1.0 / (1.0 - um))
    h = um**-2 + (1.0 - um) ** -2
    out[mid] = ga * gb * h / (ga + gb) ** 2
    return out


def chi_d2(t):
    """Second derivative of chi; identically 0 outside (2, 3)."""
    t = np.asarray(t, dtype=float)
    u, mid = _transition_masks(t)
    out = np.zeros_like(u)
    um = u[mid]
    ga = np.exp(-1.0 / um)
    gb = np.exp(-1.0 / (1.0 - um))
    h = um**-2 + (1.0 - um) ** -2
    hp = -2.0 * um**-3 + 2.0 * (1.0 - um) ** -3
    k = um**-2 - (1.0 - um) ** -2
    num = ga * gb * h
    nump = ga * gb * (k * h + hp)
    den = (ga + gb) ** 2
    denp = 2.0 * (ga + gb) * (ga / um**2 - gb / (1.0 - um) ** 2)
    out[mid] = (nump * den - num * denp) / den**2
    return out


def smoothstep01(u):
    """The underlying step on [0, 1] (used for patch blending elsewhere)."""
    return chi(np.asarray(u, dtype=float) + CUTOFF_LO)
