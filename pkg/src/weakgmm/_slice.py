"""Coordinate-wise slice sampler with stepping-out and shrinkage (Neal, 2003)."""

from __future__ import annotations

import math

import numpy as np

_MAX_SHRINK = 1000


def slice_sweep(
    x: np.ndarray,
    log_px: float,
    log_density,
    widths: np.ndarray,
    rng: np.random.Generator,
) -> float:
    """One full sweep over the coordinates of ``x`` (updated in place).

    Returns the log density at the final state.  ``log_px`` must equal
    ``log_density(x)`` on entry.
    """
    for d in range(x.size):
        log_u = log_px + math.log(rng.random())
        w = widths[d]
        x0 = x[d]
        r = rng.random()
        left = x0 - r * w
        right = left + w
        # Step out until both ends are outside the slice.
        x[d] = left
        while log_density(x) > log_u:
            left -= w
            x[d] = left
        x[d] = right
        while log_density(x) > log_u:
            right += w
            x[d] = right
        # Shrink toward x0 until an in-slice point is found.
        for _ in range(_MAX_SHRINK):
            xp = left + rng.random() * (right - left)
            x[d] = xp
            log_px = log_density(x)
            if log_px > log_u:
                break
            if xp > x0:
                right = xp
            elif xp < x0:
                left = xp
            else:
                raise RuntimeError("slice sampler shrank to the current point")
        else:
            raise RuntimeError("slice sampler failed to find an in-slice point")
    return log_px


def slice_chain(
    log_density,
    init: np.ndarray,
    n_iter: int,
    burn_in: int,
    thin: int,
    widths: np.ndarray,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Run a chain and return ``(draws, logdens)`` of the thinned retained part.

    ``n_iter`` sweeps follow ``burn_in`` sweeps; every ``thin``-th post-burn-in
    state is retained.
    """
    x = np.array(init, dtype=float, copy=True)
    log_px = float(log_density(x))
    if not np.isfinite(log_px):
        raise ValueError("slice sampler initial point has non-finite log density")
    n_keep = n_iter // thin
    draws = np.empty((n_keep, x.size))
    logdens = np.empty(n_keep)
    kept = 0
    for it in range(burn_in + n_iter):
        log_px = slice_sweep(x, log_px, log_density, widths, rng)
        if it >= burn_in and (it - burn_in) % thin == thin - 1:
            draws[kept] = x
            logdens[kept] = log_px
            kept += 1
    return draws[:kept], logdens[:kept]
