"""Brute-force reference for the envelope sign recovery.

Independent of the zero-crossing classifier: the signed channel is chosen to
be as smooth as possible.  Every local minimum of a modulus channel may keep
the sign, flip it starting at the minimum sample, or flip it starting one
sample later.  The cost of a full assignment is the sum of squared second
differences of the signed channel; only stencils touching a minimum depend
on the choice, so each minimum contributes a local cost table.  Assignments
over the half-period signs are enumerated exhaustively when there are at most
``max_exhaustive`` minima and chosen greedily otherwise.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .polar import DEFAULT_PHASE_INIT, axis_normalize, envelope_moduli, initial_signs, local_minima
from .series import ComplexSeries, QuaternionSeries

MAX_SAMPLES = 10_000
MAX_EXHAUSTIVE = 20
_HALF_WINDOW = 3


class OracleFallbackWarning(UserWarning):
    pass


@dataclass(frozen=True)
class OracleChannel:
    signs: np.ndarray
    minima: np.ndarray
    flips: np.ndarray
    exhaustive: bool


def _local_costs(m, minima):
    """``costs[k] = (keep, flip at n, flip at n+1)`` over the stencils near minimum ``k``."""
    costs = np.empty((minima.size, 3))
    for k, n in enumerate(minima):
        lo = max(0, n - _HALF_WINDOW)
        hi = min(m.size, n + _HALF_WINDOW + 1)
        w = m[lo:hi]
        idx = np.arange(lo, hi)
        for opt, start in enumerate((None, n, n + 1)):
            x = w if start is None else np.where(idx >= start, -w, w)
            costs[k, opt] = np.sum(np.diff(x, 2) ** 2) if x.size >= 3 else 0.0
    return costs


def _enumerate(keep, flip, chunk=1 << 16):
    """Exhaustive search over all flip patterns (bit ``k`` = flip at minimum ``k``)."""
    m = keep.size
    bits = np.arange(m)
    best, best_cost = None, np.inf
    for lo in range(0, 1 << m, chunk):
        codes = np.arange(lo, min(lo + chunk, 1 << m))
        patterns = ((codes[:, None] >> bits) & 1).astype(bool)
        cost = np.where(patterns, flip, keep).sum(axis=1)
        k = int(np.argmin(cost))
        if cost[k] < best_cost:
            best, best_cost = patterns[k], float(cost[k])
    return best


def oracle_channel(m, init_sign=1, max_exhaustive=MAX_EXHAUSTIVE) -> OracleChannel:
    m = np.asarray(m, dtype=float)
    minima = local_minima(m)
    costs = _local_costs(m, minima)
    keep = costs[:, 0]
    flip = np.minimum(costs[:, 1], costs[:, 2])
    # windows that overlap break the separable cost; treat that like too many minima
    crowded = minima.size > 1 and np.min(np.diff(minima)) <= 2 * _HALF_WINDOW
    exhaustive = minima.size <= max_exhaustive and not crowded

    if exhaustive and minima.size:
        flips = _enumerate(keep, flip)
    else:
        if minima.size:
            warnings.warn(
                f"oracle fell back to greedy sign selection ({minima.size} minima)",
                OracleFallbackWarning,
                stacklevel=2,
            )
        flips = flip < keep

    signs = np.empty(m.size)
    current = 1 if init_sign >= 0 else -1
    start = 0
    for k, n in enumerate(minima):
        if flips[k]:
            stop = n if costs[k, 1] < costs[k, 2] else n + 1
            signs[start:stop] = current
            current = -current
            start = stop
    signs[start:] = current
    return OracleChannel(signs, minima, np.asarray(flips, dtype=bool), exhaustive)


def oracle_channels(s: QuaternionSeries, phase_init_range=DEFAULT_PHASE_INIT, max_exhaustive=MAX_EXHAUSTIVE):
    if len(s) > MAX_SAMPLES:
        raise InputError(f"oracle is limited to {MAX_SAMPLES} samples, got {len(s)}")
    magnitude, axis = axis_normalize(s)
    sa, sb = initial_signs(phase_init_range)
    mod_a, mod_b = envelope_moduli(magnitude, axis)
    return mod_a, mod_b, oracle_channel(mod_a, sa, max_exhaustive), oracle_channel(mod_b, sb, max_exhaustive)


def oracle_sign_assignment(
    s: QuaternionSeries, phase_init_range=DEFAULT_PHASE_INIT, max_exhaustive=MAX_EXHAUSTIVE
) -> ComplexSeries:
    """Reference complex envelope chosen by exhaustive smoothness search."""
    mod_a, mod_b, ch_a, ch_b = oracle_channels(s, phase_init_range, max_exhaustive)
    return ComplexSeries(ch_a.signs * mod_a + 1j * ch_b.signs * mod_b, s.dt, s.t0)


def half_period_signs(signs, minima) -> np.ndarray:
    """Sign of each half-period, read at the midpoint between its bounding minima."""
    signs = np.asarray(signs)
    bounds = np.concatenate([[0], np.asarray(minima, dtype=int), [signs.size - 1]])
    mids = (bounds[:-1] + bounds[1:]) // 2
    return signs[mids].astype(int)
