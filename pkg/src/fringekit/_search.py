"""Scalar search helpers: vectorised sampling and golden-section refinement."""

from __future__ import annotations

import math

import numpy as np

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def sample_values(fringe, positions: np.ndarray) -> np.ndarray:
    """Evaluate ``fringe`` on an array, falling back to a scalar loop."""
    try:
        out = np.asarray(fringe(positions), dtype=float)
        if out.shape == positions.shape:
            return out
    except Exception:
        pass
    return np.array([float(fringe(x)) for x in positions])


def golden_max(f, lo: float, hi: float, *, tol: float = 1e-12, max_iter: int = 300):
    """Golden-section maximization on [lo, hi].

    Assumes f is unimodal on the bracket; returns (x, f(x)) with the final
    bracket width at most tol (or the iteration cap, whichever hits first).
    """
    a, b = float(lo), float(hi)
    h = b - a
    if h <= 0.0:
        return a, float(f(a))
    c = b - _INVPHI * h
    d = a + _INVPHI * h
    fc = float(f(c))
    fd = float(f(d))
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INVPHI * h
            fc = float(f(c))
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = float(f(d))
    x = 0.5 * (a + b)
    return x, float(f(x))


def golden_min(f, lo: float, hi: float, *, tol: float = 1e-12, max_iter: int = 300):
    """Golden-section minimization on [lo, hi]; returns (x, f(x))."""
    x, _ = golden_max(lambda t: -float(f(t)), lo, hi, tol=tol, max_iter=max_iter)
    return x, float(f(x))
